//! Distance codes and (weak total) resolving set predicates.
//!
//! Two independent routes decide whether a set is a WTR-set:
//! [`is_wtr_set`] follows the definition (some other member separates every
//! inside/outside pair), [`is_wtr_set_via_lemma1`] compares whole codes and
//! requires inside and outside codes to differ in at least two coordinates.
//! [`EquidistanceTable`] is the bitmask form of the second route and is what
//! the exhaustive solvers call.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subsets;

/// Ordered set of distinct vertices. The member order fixes coordinate order
/// of [`Code`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSet {
    members: Vec<usize>,
    #[serde(skip)]
    contains: Vec<bool>,
}

impl VertexSet {
    pub fn new(n: usize, members: Vec<usize>) -> Result<VertexSet> {
        let mut contains = vec![false; n];
        for &v in &members {
            if v >= n {
                return Err(Error::InvalidVertexSet(format!(
                    "vertex {v} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut contains[v], true) {
                return Err(Error::InvalidVertexSet(format!("vertex {v} repeated")));
            }
        }
        Ok(VertexSet { members, contains })
    }

    pub fn full(n: usize) -> VertexSet {
        VertexSet {
            members: (0..n).collect(),
            contains: vec![true; n],
        }
    }

    pub fn from_mask(n: usize, mask: u64) -> VertexSet {
        debug_assert!(n <= 64 && mask & !subsets::full_mask(n) == 0);
        let members = subsets::members(mask);
        let mut contains = vec![false; n];
        for &v in &members {
            contains[v] = true;
        }
        VertexSet { members, contains }
    }

    pub fn to_mask(&self) -> Option<u64> {
        (self.contains.len() <= 64).then(|| self.members.iter().fold(0, |m, &v| m | 1 << v))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.contains.get(v).copied().unwrap_or(false)
    }

    pub fn ground_size(&self) -> usize {
        self.contains.len()
    }

    /// Members in ascending order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }

    pub fn outside(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.contains.len()).filter(|&v| !self.contains[v])
    }
}

/// Distance vector of a vertex with respect to a [`VertexSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Code(pub Vec<u32>);

impl Code {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Number of coordinates in which two codes differ.
    pub fn hamming(&self, other: &Code) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

pub fn code_of(g: &Graph, w: &VertexSet, v: usize) -> Code {
    Code(w.members().iter().map(|&u| g.distance(v, u)).collect())
}

pub fn is_resolving_set(g: &Graph, w: &VertexSet) -> bool {
    let mut seen = HashSet::with_capacity(g.order());
    (0..g.order()).all(|v| seen.insert(code_of(g, w, v)))
}

/// Definition-based WTR test.
pub fn is_wtr_set(g: &Graph, w: &VertexSet) -> bool {
    is_resolving_set(g, w)
        && w.members().iter().all(|&v| {
            w.outside().all(|u| {
                w.members()
                    .iter()
                    .any(|&x| x != v && g.distance(u, x) != g.distance(v, x))
            })
        })
}

/// Code-comparison WTR test: every outside code differs from every inside
/// code in at least two coordinates.
pub fn is_wtr_set_via_lemma1(g: &Graph, w: &VertexSet) -> bool {
    if !is_resolving_set(g, w) {
        return false;
    }
    let inside: Vec<Code> = w.members().iter().map(|&v| code_of(g, w, v)).collect();
    w.outside().all(|x| {
        let cx = code_of(g, w, x);
        inside.iter().all(|cw| cx.hamming(cw) >= 2)
    })
}

/// `W` fails plain resolution; the listed pairs share a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotResolving {
    pub collisions: Vec<(usize, usize)>,
}

/// Inside/outside pairs `(v, u)` with no resolver in `W - {v}`, in
/// lexicographic order. Empty exactly when `W` is a WTR-set.
pub fn wtr_violations(g: &Graph, w: &VertexSet) -> Result<Vec<(usize, usize)>, NotResolving> {
    let n = g.order();
    let codes: Vec<Code> = (0..n).map(|v| code_of(g, w, v)).collect();
    let collisions: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| codes[x] == codes[y])
        .collect();
    if !collisions.is_empty() {
        return Err(NotResolving { collisions });
    }
    let mut out = Vec::new();
    for v in w.sorted() {
        for u in w.outside() {
            if !w
                .members()
                .iter()
                .any(|&x| x != v && g.distance(u, x) != g.distance(v, x))
            {
                out.push((v, u));
            }
        }
    }
    Ok(out)
}

/// For every ordered pair `(x, y)`, the mask of vertices equidistant from
/// `x` and `y`. A vertex `w` separates `x` and `y` iff its bit is clear.
/// Needs `n <= 64`.
#[derive(Debug, Clone)]
pub struct EquidistanceTable {
    n: usize,
    eq: Vec<u64>,
}

impl EquidistanceTable {
    pub fn new(g: &Graph) -> Result<EquidistanceTable> {
        let n = g.order();
        if n > 64 {
            return Err(Error::TooLarge {
                what: "bitmask subset search",
                n,
                limit: 64,
            });
        }
        let mut eq = vec![0u64; n * n];
        for x in 0..n {
            for y in x + 1..n {
                let (rx, ry) = (g.distances().row(x), g.distances().row(y));
                let m = (0..n)
                    .filter(|&w| rx[w] == ry[w])
                    .fold(0u64, |m, w| m | 1 << w);
                eq[x * n + y] = m;
                eq[y * n + x] = m;
            }
        }
        Ok(EquidistanceTable { n, eq })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn equidistant(&self, x: usize, y: usize) -> u64 {
        self.eq[x * self.n + y]
    }

    #[inline]
    pub fn is_resolving(&self, w: u64) -> bool {
        // a pair containing a member is always separated by that member
        let outside = subsets::members(!w & subsets::full_mask(self.n));
        outside.iter().enumerate().all(|(i, &x)| {
            outside[i + 1..]
                .iter()
                .all(|&y| w & !self.equidistant(x, y) != 0)
        })
    }

    /// WTR test on a mask via the two-coordinate criterion.
    #[inline]
    pub fn is_wtr(&self, w: u64) -> bool {
        if w == 0 {
            return false;
        }
        let all = subsets::full_mask(self.n);
        let mut outside = !w & all;
        while outside != 0 {
            let x = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            // other outside vertices: one separating coordinate suffices
            let mut rest = outside;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if w & !self.equidistant(x, y) == 0 {
                    return false;
                }
            }
            let mut inside = w;
            while inside != 0 {
                let y = inside.trailing_zeros() as usize;
                inside &= inside - 1;
                if (w & !self.equidistant(x, y)).count_ones() < 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Largest `|S(u, v)|` over pairs, where `S(u, v)` is the set of vertices
    /// equidistant from `u` and `v`; returns the maximising pair.
    pub fn widest_equidistant_pair(&self) -> (usize, usize, usize) {
        let mut best = (0, 0, 1);
        for x in 0..self.n {
            for y in x + 1..self.n {
                let size = self.equidistant(x, y).count_ones() as usize;
                if size > best.0 {
                    best = (size, x, y);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        g(n, &edges)
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &edges)
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        g(n, &edges)
    }

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn vertex_set_validation() {
        assert!(VertexSet::new(3, vec![0, 3]).is_err());
        assert!(VertexSet::new(3, vec![1, 1]).is_err());
        let s = set(5, &[3, 1]);
        assert_eq!(s.to_mask(), Some(0b1010));
        assert_eq!(s.sorted(), vec![1, 3]);
        assert_eq!(s.outside().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(VertexSet::from_mask(5, 0b1010).members(), &[1, 3]);
    }

    #[test]
    fn codes() {
        let p4 = path(4);
        assert_eq!(code_of(&p4, &set(4, &[0, 3]), 1), Code(vec![1, 2]));
        assert_eq!(code_of(&p4, &set(4, &[3, 0]), 1), Code(vec![2, 1]));
        assert_eq!(code_of(&p4, &set(4, &[2, 1]), 2), Code(vec![0, 1]));
        assert_eq!(code_of(&cycle(5), &set(5, &[0, 2]), 4), Code(vec![1, 2]));
    }

    #[test]
    fn resolving_examples() {
        assert!(is_resolving_set(&path(7), &set(7, &[0])));
        assert!(is_resolving_set(&path(7), &set(7, &[6])));
        assert!(!is_resolving_set(&path(7), &set(7, &[3])));
        let k4 = complete(4);
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(!is_resolving_set(&k4, &set(4, &[a, b])));
            }
        }
        let c6 = cycle(6);
        assert!(!is_resolving_set(&c6, &set(6, &[0, 3])));
        assert_eq!(code_of(&c6, &set(6, &[0, 3]), 1), Code(vec![1, 2]));
        assert_eq!(code_of(&c6, &set(6, &[0, 3]), 5), Code(vec![1, 2]));
    }

    #[test]
    fn wtr_examples() {
        let p4 = path(4);
        for pred in [is_wtr_set, is_wtr_set_via_lemma1] {
            assert!(pred(&p4, &set(4, &[0, 3])));
            assert!(!pred(&p4, &set(4, &[0, 1])));
            let k3 = complete(3);
            assert!(!pred(&k3, &set(3, &[0, 1])));
            assert!(pred(&k3, &set(3, &[0, 1, 2])));
            let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
            assert!(pred(&star, &set(4, &[1, 2, 3])));
        }
        let p4_codes = (
            code_of(&p4, &set(4, &[0, 3]), 0),
            code_of(&p4, &set(4, &[0, 3]), 1),
        );
        assert_eq!(p4_codes.0.hamming(&p4_codes.1), 2);
    }

    #[test]
    fn violations() {
        let p4 = path(4);
        // 0 and 2 both sit at distance 1 from 1, so only 0 itself separates them
        assert_eq!(wtr_violations(&p4, &set(4, &[0, 1])), Ok(vec![(0, 2)]));
        assert_eq!(wtr_violations(&p4, &set(4, &[0, 3])), Ok(vec![]));
        let c6 = cycle(6);
        assert_eq!(
            wtr_violations(&c6, &set(6, &[0, 3])),
            Err(NotResolving {
                collisions: vec![(1, 5), (2, 4)]
            })
        );
        // K_2 + (K_1 u K_2): 0,1 = K_r; 2 = K_1; 3,4 = K_s
        let join = g(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (3, 4),
            ],
        );
        let v = wtr_violations(&join, &set(5, &[0, 2, 3, 4])).unwrap();
        assert_eq!(v, vec![(0, 1)]);
    }

    #[test]
    fn mask_route_agrees_on_c5() {
        let c5 = cycle(5);
        let t = EquidistanceTable::new(&c5).unwrap();
        for mask in 1u64..32 {
            let w = VertexSet::from_mask(5, mask);
            assert_eq!(t.is_resolving(mask), is_resolving_set(&c5, &w), "{mask:b}");
            assert_eq!(t.is_wtr(mask), is_wtr_set(&c5, &w), "{mask:b}");
        }
        assert!(!t.is_wtr(0));
    }
}
