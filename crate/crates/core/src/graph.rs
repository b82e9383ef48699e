//! Simple connected graphs, their distance matrices and the basic vertex
//! vocabulary (twins, complete vertices, major and terminal vertices).

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// All-pairs shortest path lengths, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// A finite simple connected graph on vertices `0..n` with `n >= 2`.
///
/// The distance matrix is computed once at construction; everything
/// downstream only reads it.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    dist: DistanceMatrix,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl Graph {
    /// Validates an edge list and builds the graph.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n < 2 {
            return Err(Error::TooSmall { n });
        }
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            let bit = &mut rows[u * words + v / 64];
            if *bit >> (v % 64) & 1 == 1 {
                return Err(Error::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            *bit |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let components = count_components(&adj);
        if components > 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        let dist = bfs_distances(&adj);
        Ok(Graph {
            n,
            words,
            rows,
            adj,
            edge_count: edges.len(),
            dist,
        })
    }

    /// Builds a graph from edges over arbitrary labels. Labels are mapped to
    /// `0..n` in sorted order; the returned vector maps ids back to labels.
    pub fn from_labeled_edges<L: Ord + Clone>(edges: &[(L, L)]) -> Result<(Graph, Vec<L>)> {
        let mut ids: BTreeMap<L, usize> = BTreeMap::new();
        for (a, b) in edges {
            ids.entry(a.clone()).or_insert(0);
            ids.entry(b.clone()).or_insert(0);
        }
        let labels: Vec<L> = ids.keys().cloned().collect();
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let mapped: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (ids[a], ids[b])).collect();
        Ok((Graph::new(labels.len(), &mapped)?, labels))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist.get(u, v)
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn diameter(&self) -> u32 {
        self.dist.diameter()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Adjacency row of `v` as a bitmask. Only valid for `n <= 64`.
    #[inline]
    pub(crate) fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v]
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `N(u) - {v} == N(v) - {u}`.
    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let (ru, rv) = (self.row(u), self.row(v));
        (0..self.words).all(|w| {
            let mut a = ru[w];
            let mut b = rv[w];
            if v / 64 == w {
                a &= !(1 << (v % 64));
            }
            if u / 64 == w {
                b &= !(1 << (u % 64));
            }
            a == b
        })
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count == self.n - 1
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.edge_count == self.n && (0..self.n).all(|v| self.degree(v) == 2)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    /// Number of distinct shortest `u`-`v` paths.
    pub fn geodesic_count(&self, u: usize, v: usize) -> u64 {
        let du = self.dist.row(u);
        let mut order: Vec<usize> = (0..self.n).filter(|&x| du[x] <= du[v]).collect();
        order.sort_by_key(|&x| du[x]);
        let mut count = vec![0u64; self.n];
        count[u] = 1;
        for &x in &order {
            if x == u {
                continue;
            }
            count[x] = self.adj[x]
                .iter()
                .filter(|&&y| du[y] + 1 == du[x])
                .map(|&y| count[y])
                .sum();
        }
        count[v]
    }

    /// Vertices lying on some shortest `u`-`v` path.
    pub fn geodesic_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        let d = self.distance(u, v);
        (0..self.n)
            .filter(|&x| self.distance(u, x) + self.distance(x, v) == d)
            .collect()
    }
}

fn count_components(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    components
}

fn bfs_distances(adj: &[Vec<usize>]) -> DistanceMatrix {
    let n = adj.len();
    let mut d = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if row[y] == u32::MAX {
                    row[y] = row[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// Breadth-first distances from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    bfs_distances(&g.adj)
}

/// Twin vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Twins {
    /// Every unordered twin pair `(u, v)` with `u < v`.
    pub pairs: Vec<(usize, usize)>,
    /// Sorted vertices having at least one twin partner.
    pub vertices: Vec<usize>,
}

impl Twins {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn find_twins(g: &Graph) -> Twins {
    let n = g.order();
    let mut pairs = Vec::new();
    let mut is_twin = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            if g.are_twins(u, v) {
                pairs.push((u, v));
                is_twin[u] = true;
                is_twin[v] = true;
            }
        }
    }
    let vertices = (0..n).filter(|&v| is_twin[v]).collect();
    Twins { pairs, vertices }
}

/// Per-vertex flags and graph-level counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub degree: Vec<usize>,
    pub is_leaf: Vec<bool>,
    pub is_major: Vec<bool>,
    pub is_twin: Vec<bool>,
    pub is_complete_vertex: Vec<bool>,
    /// `td(v)` for major vertices, zero elsewhere.
    pub terminal_degree: Vec<usize>,
    /// For each leaf, the major vertex it is terminal for, if any.
    pub terminal_of: Vec<Option<usize>>,
    pub max_degree: usize,
    pub diameter: u32,
    pub sigma: usize,
    pub ex: usize,
}

impl VertexClassification {
    pub fn exterior_majors(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree.len()).filter(|&v| self.terminal_degree[v] > 0)
    }
}

pub fn is_complete_vertex(g: &Graph, v: usize) -> bool {
    let nb = g.neighbors(v);
    nb.iter()
        .enumerate()
        .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

pub fn classify_vertices(g: &Graph) -> VertexClassification {
    let n = g.order();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let is_leaf: Vec<bool> = degree.iter().map(|&d| d == 1).collect();
    let is_major: Vec<bool> = degree.iter().map(|&d| d >= 3).collect();
    let twins = find_twins(g);
    let is_twin = (0..n).map(|v| twins.contains(v)).collect();
    let is_complete_vertex = (0..n).map(|v| is_complete_vertex(g, v)).collect();

    let majors: Vec<usize> = (0..n).filter(|&v| is_major[v]).collect();
    let mut terminal_degree = vec![0; n];
    let mut terminal_of = vec![None; n];
    for leaf in (0..n).filter(|&v| is_leaf[v]) {
        let Some(best) = majors.iter().copied().min_by_key(|&m| g.distance(leaf, m)) else {
            break;
        };
        let d = g.distance(leaf, best);
        // strict: a leaf tied between two majors belongs to neither
        if majors.iter().filter(|&&m| g.distance(leaf, m) == d).count() == 1 {
            terminal_degree[best] += 1;
            terminal_of[leaf] = Some(best);
        }
    }
    let sigma = terminal_degree.iter().sum();
    let ex = terminal_degree.iter().filter(|&&t| t > 0).count();
    VertexClassification {
        max_degree: degree.iter().copied().max().unwrap_or(0),
        degree,
        is_leaf,
        is_major,
        is_twin,
        is_complete_vertex,
        terminal_degree,
        terminal_of,
        diameter: g.diameter(),
        sigma,
        ex,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn builds_small_graphs() {
        let p2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.size(), 1);
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(k3.is_complete());
        assert!(k3.is_cycle());
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(
            Graph::new(4, &[(0, 1), (2, 3)]),
            Err(Error::DisconnectedGraph { components: 2 })
        );
        assert_eq!(Graph::new(1, &[]), Err(Error::TooSmall { n: 1 }));
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop { vertex: 0 }));
        assert_eq!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn labeled_edges_are_remapped() {
        let (g, labels) = Graph::from_labeled_edges(&[("b", "c"), ("a", "b")]).unwrap();
        assert_eq!(labels, vec!["a", "b", "c"]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn path_and_cycle_distances() {
        let p4 = path(4);
        assert_eq!(p4.distance(0, 3), 3);
        assert_eq!(cycle(5).diameter(), 2);
        assert_eq!(all_pairs_distances(&p4), *p4.distances());
    }

    #[test]
    fn twins_of_basic_graphs() {
        assert_eq!(find_twins(&complete(4)).vertices, vec![0, 1, 2, 3]);
        let p3 = find_twins(&path(3));
        assert_eq!(p3.vertices, vec![0, 2]);
        assert_eq!(p3.pairs, vec![(0, 2)]);
        assert!(find_twins(&cycle(6)).is_empty());
        // adjacent and non-adjacent twins in C_4
        assert_eq!(find_twins(&cycle(4)).pairs, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn geodesics() {
        let c6 = cycle(6);
        assert_eq!(c6.geodesic_count(0, 3), 2);
        assert_eq!(c6.geodesic_count(0, 2), 1);
        assert_eq!(c6.geodesic_vertices(0, 2), vec![0, 1, 2]);
        assert_eq!(c6.geodesic_vertices(0, 3).len(), 6);
    }

    #[test]
    fn star_classification() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let c = classify_vertices(&star);
        assert_eq!(c.terminal_degree[0], 4);
        assert_eq!((c.sigma, c.ex), (4, 1));
        assert!(c.is_major[0] && !c.is_major[1]);
        assert!(c.is_leaf[1] && c.is_complete_vertex[1] && !c.is_complete_vertex[0]);
    }

    #[test]
    fn path_has_no_major_vertex() {
        let c = classify_vertices(&path(6));
        assert_eq!((c.sigma, c.ex), (0, 0));
        assert!(c.terminal_of.iter().all(Option::is_none));
    }

    #[test]
    fn spider_terminal_degree() {
        // center 0, legs 0-1, 0-2-3, 0-4-5-6
        let g = Graph::new(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        let c = classify_vertices(&g);
        assert_eq!(c.terminal_degree[0], 3);
        assert_eq!(c.ex, 1);
        assert_eq!(c.terminal_of[6], Some(0));
    }

    #[test]
    fn leaf_reaches_major_through_degree_two_chain() {
        // K_4 on {0,1,2,3} with the chain 0-4-5 hanging off vertex 0
        let g = Graph::new(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (4, 5),
            ],
        )
        .unwrap();
        let c = classify_vertices(&g);
        assert_eq!(c.terminal_of[5], Some(0));
        assert_eq!((c.sigma, c.ex), (1, 1));
        assert!(c.is_complete_vertex[1] && !c.is_complete_vertex[0]);
    }
}
