//! Exact solvers: metric dimension, weak total metric dimension, weak total
//! resolving number, plus the chromatic and clique numbers used by bound
//! checks.
//!
//! Subsets are enumerated size-ascending and lexicographically within a size,
//! so every returned witness is the lexicographically first one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{find_twins, Graph};
use crate::resolve::{EquidistanceTable, VertexSet};
use crate::subsets::{full_mask, Combinations};

/// Size caps per solver family. Exceeding one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub dim: usize,
    pub res: usize,
    pub color: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim: 20,
            res: 16,
            color: 16,
        }
    }
}

impl Limits {
    pub fn uniform(n: usize) -> Limits {
        Limits {
            dim: n,
            res: n,
            color: n,
        }
    }

    fn check(limit: usize, what: &'static str, g: &Graph) -> Result<()> {
        if g.order() > limit {
            Err(Error::TooLarge {
                what,
                n: g.order(),
                limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_dim(&self, g: &Graph) -> Result<()> {
        Self::check(self.dim.min(64), "dim/dim_wt search", g)
    }

    pub fn check_res(&self, g: &Graph) -> Result<()> {
        Self::check(self.res.min(64), "res_wt search", g)
    }

    pub fn check_color(&self, g: &Graph) -> Result<()> {
        Self::check(self.color.min(64), "chromatic/clique search", g)
    }
}

/// Whether the WTR search fixes every twin inside the candidate set (every
/// WTR-set contains all twins) or enumerates all subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    TwinPruned,
    Reference,
}

/// Per-graph search state shared by the exhaustive solvers.
#[derive(Debug, Clone)]
pub struct Searcher<'g> {
    g: &'g Graph,
    table: EquidistanceTable,
    twins: u64,
}

impl<'g> Searcher<'g> {
    pub fn new(g: &'g Graph) -> Result<Searcher<'g>> {
        let table = EquidistanceTable::new(g)?;
        let twins = find_twins(g).vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        Ok(Searcher { g, table, twins })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn table(&self) -> &EquidistanceTable {
        &self.table
    }

    pub fn twin_mask(&self) -> u64 {
        self.twins
    }

    fn n(&self) -> usize {
        self.g.order()
    }

    fn set(&self, mask: u64) -> VertexSet {
        VertexSet::from_mask(self.n(), mask)
    }

    pub fn metric_dimension(&self) -> (usize, VertexSet) {
        let all = full_mask(self.n());
        for k in 1..=self.n() {
            if let Some(m) = Combinations::new(all, k).find(|&m| self.table.is_resolving(m)) {
                return (k, self.set(m));
            }
        }
        unreachable!("V(G) resolves every graph")
    }

    /// All resolving sets of size `k`, at most `limit` of them.
    pub fn resolving_sets_of_size(&self, k: usize, limit: usize) -> Vec<VertexSet> {
        Combinations::new(full_mask(self.n()), k)
            .filter(|&m| self.table.is_resolving(m))
            .take(limit)
            .map(|m| self.set(m))
            .collect()
    }

    fn wtr_candidates(&self, k: usize, mode: SearchMode) -> Box<dyn Iterator<Item = u64> + '_> {
        let all = full_mask(self.n());
        match mode {
            SearchMode::Reference => Box::new(Combinations::new(all, k)),
            SearchMode::TwinPruned => {
                let forced = self.twins;
                let Some(free) = k.checked_sub(forced.count_ones() as usize) else {
                    return Box::new(std::iter::empty());
                };
                Box::new(Combinations::new(all & !forced, free).map(move |m| m | forced))
            }
        }
    }

    pub fn weak_total_metric_dimension(&self, mode: SearchMode) -> (usize, VertexSet) {
        let start = match mode {
            SearchMode::Reference => 1,
            SearchMode::TwinPruned => (self.twins.count_ones() as usize).max(1),
        };
        for k in start..=self.n() {
            if let Some(m) = self.wtr_candidates(k, mode).find(|&m| self.table.is_wtr(m)) {
                return (k, self.set(m));
            }
        }
        unreachable!("V(G) is always a WTR-set")
    }

    /// All WTR-sets of size `k`, at most `limit` of them.
    pub fn wtr_sets_of_size(&self, k: usize, limit: usize) -> Vec<VertexSet> {
        self.wtr_candidates(k, SearchMode::TwinPruned)
            .filter(|&m| self.table.is_wtr(m))
            .take(limit)
            .map(|m| self.set(m))
            .collect()
    }

    /// A largest subset that is not a WTR-set.
    ///
    /// Any non-WTR set either leaves some pair `x, y` unresolved, so it lies
    /// inside `S(x, y)` (the vertices equidistant from both), or has a member
    /// `v` and an outsider `u` with `W - {v}` inside `S(u, v)`. Both are
    /// bounded by `S(u, v) + {v}`, which is itself non-WTR, so a widest
    /// equidistant pair gives the maximum directly.
    pub fn largest_non_wtr_set(&self) -> VertexSet {
        let (_, u, v) = self.table.widest_equidistant_pair();
        self.set(self.table.equidistant(u, v) | 1 << v)
    }

    /// Smallest `r` such that every `r`-set is a WTR-set. WTR-sets are closed
    /// under supersets, so this is one more than the largest non-WTR set.
    pub fn weak_total_resolving_number(&self) -> usize {
        self.largest_non_wtr_set().len() + 1
    }

    /// Literal definition: the first `r` for which every `r`-subset passes.
    pub fn res_wt_by_definition(&self) -> usize {
        let all = full_mask(self.n());
        (1..=self.n())
            .find(|&r| Combinations::new(all, r).all(|m| self.table.is_wtr(m)))
            .expect("V(G) is always a WTR-set")
    }

    /// One more than the largest non-WTR subset found by scanning all subsets.
    pub fn res_wt_by_enumeration(&self) -> usize {
        assert!(
            self.n() <= 30,
            "exhaustive subset scan is for small graphs only"
        );
        let all = full_mask(self.n());
        (0..=all)
            .filter(|&m| !self.table.is_wtr(m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
            + 1
    }
}

pub fn metric_dimension(g: &Graph) -> Result<(usize, VertexSet)> {
    Ok(Searcher::new(g)?.metric_dimension())
}

pub fn weak_total_metric_dimension(g: &Graph) -> Result<(usize, VertexSet)> {
    Ok(Searcher::new(g)?.weak_total_metric_dimension(SearchMode::TwinPruned))
}

pub fn weak_total_resolving_number(g: &Graph) -> Result<usize> {
    Ok(Searcher::new(g)?.weak_total_resolving_number())
}

/// `(dim_wt == res_wt, dim_wt)`.
pub fn is_randomly_weak_total_k(g: &Graph) -> Result<(bool, usize)> {
    let s = Searcher::new(g)?;
    let (k, _) = s.weak_total_metric_dimension(SearchMode::TwinPruned);
    Ok((k == s.weak_total_resolving_number(), k))
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    clique_number_capped(g, Limits::default().color)
}

pub fn clique_number_capped(g: &Graph, cap: usize) -> Result<usize> {
    Limits::uniform(cap).check_color(g)?;
    let adj: Vec<u64> = (0..g.order()).map(|v| g.neighbor_mask(v)).collect();
    let mut best = 0;
    bron_kerbosch(&adj, 0, full_mask(g.order()), 0, &mut best);
    Ok(best)
}

fn bron_kerbosch(adj: &[u64], size: usize, mut p: u64, mut x: u64, best: &mut usize) {
    if p == 0 {
        if x == 0 {
            *best = (*best).max(size);
        }
        return;
    }
    if size + p.count_ones() as usize <= *best {
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, size + 1, p & adj[v], x & adj[v], best);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_capped(g, Limits::default().color)
}

/// Exact chromatic number by backtracking over colour classes, starting at
/// the clique number.
pub fn chromatic_number_capped(g: &Graph, cap: usize) -> Result<usize> {
    let omega = clique_number_capped(g, cap)?;
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let adj: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    for k in omega..=n {
        let mut classes = vec![0u64; k];
        if color(&adj, &order, 0, &mut classes, 0) {
            return Ok(k);
        }
    }
    unreachable!("n colours always suffice")
}

fn color(adj: &[u64], order: &[usize], i: usize, classes: &mut [u64], used: usize) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    // opening a fresh class is only tried once, at index `used`
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if classes[c] & adj[v] == 0 {
            classes[c] |= 1 << v;
            if color(adj, order, i + 1, classes, used.max(c + 1)) {
                return true;
            }
            classes[c] &= !(1 << v);
        }
    }
    false
}

/// Exact parameters of one graph together with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvabilityProfile {
    pub order: usize,
    pub size: usize,
    pub dim: usize,
    pub dim_wt: usize,
    pub res_wt: usize,
    /// Set when the value lies outside the range the theory addresses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub res_wt_note: Option<String>,
    pub metric_bases: Vec<Vec<usize>>,
    pub metric_bases_truncated: bool,
    pub wtmbs: Vec<Vec<usize>>,
    pub wtmbs_truncated: bool,
    pub largest_non_wtr_set: Vec<usize>,
    pub twins: Vec<usize>,
    pub randomly_weak_total: bool,
    pub k: usize,
}

pub const N2_RES_WT_NOTE: &str =
    "res_wt for n = 2 follows the definition; the general bound 3 <= res_wt needs n >= 3";

/// Computes every parameter, listing at most `max_witnesses` bases of each kind.
pub fn resolvability_profile(
    g: &Graph,
    limits: &Limits,
    max_witnesses: usize,
) -> Result<ResolvabilityProfile> {
    limits.check_dim(g)?;
    limits.check_res(g)?;
    let s = Searcher::new(g)?;
    let (dim, _) = s.metric_dimension();
    let (dim_wt, _) = s.weak_total_metric_dimension(SearchMode::TwinPruned);
    let res_wt = s.weak_total_resolving_number();
    let cap = max_witnesses.max(1);
    let bases = s.resolving_sets_of_size(dim, cap + 1);
    let wtmbs = s.wtr_sets_of_size(dim_wt, cap + 1);
    let listing = |sets: &[VertexSet]| -> Vec<Vec<usize>> {
        sets.iter().take(cap).map(VertexSet::sorted).collect()
    };
    Ok(ResolvabilityProfile {
        order: g.order(),
        size: g.size(),
        dim,
        dim_wt,
        res_wt,
        res_wt_note: (g.order() == 2).then(|| N2_RES_WT_NOTE.to_string()),
        metric_bases: listing(&bases),
        metric_bases_truncated: bases.len() > cap,
        wtmbs: listing(&wtmbs),
        wtmbs_truncated: wtmbs.len() > cap,
        largest_non_wtr_set: s.largest_non_wtr_set().sorted(),
        twins: find_twins(g).vertices,
        randomly_weak_total: dim_wt == res_wt,
        k: dim_wt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::{is_resolving_set, is_wtr_set};

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        g(n, &e)
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &e)
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        g(n, &e)
    }

    fn star(a: usize) -> Graph {
        let e: Vec<_> = (1..=a).map(|i| (0, i)).collect();
        g(a + 1, &e)
    }

    /// Brute-force oracle over all subsets, smallest first.
    fn min_size(gr: &Graph, pred: fn(&Graph, &VertexSet) -> bool) -> usize {
        let n = gr.order();
        (1..=n)
            .find(|&k| {
                Combinations::new(full_mask(n), k).any(|m| pred(gr, &VertexSet::from_mask(n, m)))
            })
            .unwrap()
    }

    #[test]
    fn metric_dimension_examples() {
        for n in 2..8 {
            let (d, basis) = metric_dimension(&path(n)).unwrap();
            assert_eq!(d, 1);
            assert_eq!(basis.members(), &[0]);
        }
        assert_eq!(metric_dimension(&cycle(5)).unwrap().0, 2);
        assert_eq!(min_size(&cycle(5), is_resolving_set), 2);
        assert_eq!(metric_dimension(&complete(5)).unwrap().0, 4);
    }

    #[test]
    fn weak_total_examples() {
        for n in 2..7 {
            assert_eq!(weak_total_metric_dimension(&complete(n)).unwrap().0, n);
        }
        for a in 3..7 {
            assert_eq!(weak_total_metric_dimension(&star(a)).unwrap().0, a);
        }
        let (k, w) = weak_total_metric_dimension(&path(5)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(w.members(), &[0, 3]);
        assert!(is_wtr_set(&path(5), &w));
        assert_eq!(min_size(&cycle(7), is_wtr_set), 3);
        assert_eq!(weak_total_metric_dimension(&cycle(7)).unwrap().0, 3);
    }

    #[test]
    fn pruned_and_reference_search_agree() {
        let graphs = [path(2), path(6), cycle(4), cycle(6), complete(4), star(4)];
        for gr in &graphs {
            let s = Searcher::new(gr).unwrap();
            assert_eq!(
                s.weak_total_metric_dimension(SearchMode::TwinPruned),
                s.weak_total_metric_dimension(SearchMode::Reference)
            );
        }
    }

    #[test]
    fn res_wt_examples() {
        assert_eq!(weak_total_resolving_number(&cycle(5)).unwrap(), 3);
        for n in 3..9 {
            assert_eq!(weak_total_resolving_number(&path(n)).unwrap(), 3);
        }
        assert_eq!(weak_total_resolving_number(&path(2)).unwrap(), 2);
        // graphs with a twin
        assert_eq!(weak_total_resolving_number(&star(4)).unwrap(), 5);
        assert_eq!(weak_total_resolving_number(&cycle(4)).unwrap(), 4);
        assert_eq!(weak_total_resolving_number(&complete(5)).unwrap(), 5);
        for gr in [cycle(6), cycle(7), star(3), path(5)] {
            let s = Searcher::new(&gr).unwrap();
            let r = s.weak_total_resolving_number();
            assert_eq!(r, s.res_wt_by_definition());
            assert_eq!(r, s.res_wt_by_enumeration());
            let big = s.largest_non_wtr_set();
            assert!(!is_wtr_set(&gr, &big));
            assert_eq!(big.len() + 1, r);
        }
    }

    #[test]
    fn randomly_weak_total() {
        assert_eq!(is_randomly_weak_total_k(&cycle(7)).unwrap(), (true, 3));
        assert!(!is_randomly_weak_total_k(&cycle(6)).unwrap().0);
        assert_eq!(is_randomly_weak_total_k(&complete(5)).unwrap(), (true, 5));
    }

    #[test]
    fn chromatic_and_clique() {
        assert_eq!(chromatic_number(&complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(clique_number(&complete(5)).unwrap(), 5);
        assert_eq!(clique_number(&cycle(6)).unwrap(), 2);
        let k4_minus_e = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(clique_number(&k4_minus_e).unwrap(), 3);
        let big = path(17);
        assert!(matches!(
            chromatic_number(&big),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(chromatic_number_capped(&big, 17).unwrap(), 2);
    }

    #[test]
    fn petersen_chromatic_number() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let p = g(10, &edges);
        // oracle: no proper 2-colouring exists (odd outer cycle), and a
        // proper 3-colouring is found by exhausting all 3^10 assignments
        let proper = |colors: &[usize]| p.edges().all(|(u, v)| colors[u] != colors[v]);
        let three = (0..3usize.pow(10)).any(|mut code| {
            let colors: Vec<usize> = (0..10)
                .map(|_| {
                    let c = code % 3;
                    code /= 3;
                    c
                })
                .collect();
            proper(&colors)
        });
        assert!(three);
        assert_eq!(chromatic_number(&p).unwrap(), 3);
        assert_eq!(clique_number(&p).unwrap(), 2);
    }

    #[test]
    fn profile_of_p2_is_annotated() {
        let p = resolvability_profile(&path(2), &Limits::default(), 8).unwrap();
        assert_eq!((p.dim, p.dim_wt, p.res_wt), (1, 2, 2));
        assert!(p.res_wt_note.is_some());
        assert!(p.randomly_weak_total);
    }

    #[test]
    fn limits_are_enforced() {
        let gr = path(21);
        assert!(matches!(
            resolvability_profile(&gr, &Limits::default(), 1),
            Err(Error::TooLarge { limit: 20, .. })
        ));
        assert!(resolvability_profile(&path(17), &Limits::default(), 1).is_err());
        assert!(resolvability_profile(&gr, &Limits::uniform(21), 1).is_ok());
    }
}
