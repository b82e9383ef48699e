//! Graph families used in constructions and realizations, plus exhaustive
//! and random corpora.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph family with its parameters. Parses from `name:p1,p2,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    /// `K_{1,a}`.
    Star(usize),
    Complete(usize),
    /// `K_r + (K_1 u K_s)`.
    JoinKrK1Ks {
        r: usize,
        s: usize,
    },
    /// Two triangles joined by a path on `a` vertices, each with a pendant leaf.
    DoubleK3Path {
        a: usize,
    },
    /// Graph with `dim_wt = a`, `res_wt = b`.
    Thm9 {
        a: usize,
        b: usize,
    },
    /// Graph of order `b` with `dim_wt = a`.
    Thm6 {
        a: usize,
        b: usize,
    },
    DoubleSpider {
        r: usize,
    },
    /// Legs given as edge counts from a common center.
    Spider(Vec<usize>),
    AllLabeledTrees(usize),
    AllConnectedGraphs(usize),
    RandomTrees {
        n: usize,
        count: usize,
    },
}

pub type GraphStream = Box<dyn Iterator<Item = Graph> + Send>;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let params: Vec<usize> = args
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(|a| {
                a.parse()
                    .map_err(|_| bad(format!("`{a}` is not an integer")))
            })
            .collect::<Result<_>>()?;
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let family = match name {
            "path" => arity(1).map(|_| Family::Path(params[0])),
            "cycle" => arity(1).map(|_| Family::Cycle(params[0])),
            "star" => arity(1).map(|_| Family::Star(params[0])),
            "complete" => arity(1).map(|_| Family::Complete(params[0])),
            "join" => arity(2).map(|_| Family::JoinKrK1Ks {
                r: params[0],
                s: params[1],
            }),
            "double-k3-path" => arity(1).map(|_| Family::DoubleK3Path { a: params[0] }),
            "thm9" => arity(2).map(|_| Family::Thm9 {
                a: params[0],
                b: params[1],
            }),
            "thm6" => arity(2).map(|_| Family::Thm6 {
                a: params[0],
                b: params[1],
            }),
            "double-spider" => arity(1).map(|_| Family::DoubleSpider { r: params[0] }),
            "spider" => Ok(Family::Spider(params.clone())),
            "all-trees" => arity(1).map(|_| Family::AllLabeledTrees(params[0])),
            "all-connected" => arity(1).map(|_| Family::AllConnectedGraphs(params[0])),
            "random-tree" => match params.len() {
                1 => Ok(Family::RandomTrees {
                    n: params[0],
                    count: 1,
                }),
                2 => Ok(Family::RandomTrees {
                    n: params[0],
                    count: params[1],
                }),
                k => Err(bad(format!(
                    "`random-tree` takes 1 or 2 parameters, got {k}"
                ))),
            },
            other => Err(bad(format!("unknown family `{other}`"))),
        }?;
        family.validate()?;
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Star(a) => write!(f, "star:{a}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::JoinKrK1Ks { r, s } => write!(f, "join:{r},{s}"),
            Family::DoubleK3Path { a } => write!(f, "double-k3-path:{a}"),
            Family::Thm9 { a, b } => write!(f, "thm9:{a},{b}"),
            Family::Thm6 { a, b } => write!(f, "thm6:{a},{b}"),
            Family::DoubleSpider { r } => write!(f, "double-spider:{r}"),
            Family::Spider(legs) => {
                let legs: Vec<String> = legs.iter().map(usize::to_string).collect();
                write!(f, "spider:{}", legs.join(","))
            }
            Family::AllLabeledTrees(n) => write!(f, "all-trees:{n}"),
            Family::AllConnectedGraphs(n) => write!(f, "all-connected:{n}"),
            Family::RandomTrees { n, count } => write!(f, "random-tree:{n},{count}"),
        }
    }
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(bad(format!("{self}: {msg}")))
            }
        };
        match *self {
            Family::Path(n) => check(n >= 2, "needs n >= 2"),
            Family::Cycle(n) => check(n >= 3, "needs n >= 3"),
            Family::Star(a) => check(a >= 1, "needs a >= 1"),
            Family::Complete(n) => check(n >= 2, "needs n >= 2"),
            Family::JoinKrK1Ks { r, s } => check(r >= 2 && s >= 2, "needs r, s >= 2"),
            Family::DoubleK3Path { a } => check(a >= 2, "needs a >= 2"),
            Family::Thm9 { a, b } => check(3 <= a && a <= b, "needs 3 <= a <= b"),
            Family::Thm6 { a, b } => check(2 <= a && a <= b, "needs 2 <= a <= b"),
            Family::DoubleSpider { r } => check(r >= 3, "needs r >= 3"),
            Family::Spider(ref legs) => check(
                !legs.is_empty() && legs.iter().all(|&l| l >= 1),
                "needs at least one leg, each of length >= 1",
            ),
            Family::AllLabeledTrees(n) => check((2..=16).contains(&n), "needs 2 <= n <= 16"),
            Family::AllConnectedGraphs(n) => check((2..=8).contains(&n), "needs 2 <= n <= 8"),
            Family::RandomTrees { n, .. } => check(n >= 2, "needs n >= 2"),
        }
    }

    /// Whether the family yields exactly one graph.
    pub fn is_single(&self) -> bool {
        !matches!(
            self,
            Family::AllLabeledTrees(_) | Family::AllConnectedGraphs(_) | Family::RandomTrees { .. }
        )
    }

    /// Streams the family's graphs. `seed` only affects random families.
    pub fn generate(&self, seed: u64) -> Result<GraphStream> {
        self.validate()?;
        Ok(match *self {
            Family::AllLabeledTrees(n) => Box::new(all_labeled_trees(n)),
            Family::AllConnectedGraphs(n) => Box::new(all_connected_graphs(n)),
            Family::RandomTrees { n, count } => Box::new(random_trees(n, count, seed)),
            _ => Box::new(std::iter::once(self.build()?)),
        })
    }

    /// The single graph of a non-corpus family.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            Family::Path(n) => Ok(path(n)),
            Family::Cycle(n) => Ok(cycle(n)),
            Family::Star(a) => Ok(star(a)),
            Family::Complete(n) => Ok(complete(n)),
            Family::JoinKrK1Ks { r, s } => Ok(join_kr_k1_ks(r, s)),
            Family::DoubleK3Path { a } => Ok(double_k3_path(a)),
            Family::Thm9 { a, b } => thm9_realization(a, b),
            Family::Thm6 { a, b } => thm6_realization(a, b),
            Family::DoubleSpider { r } => double_spider(r),
            Family::Spider(ref legs) => Ok(spider(legs)),
            _ => Err(bad(format!("{self} is a corpus, not a single graph"))),
        }
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("family generators emit valid graphs")
}

/// Appends a path of `len` new vertices hanging off `from`.
fn hang_path(edges: &mut Vec<(usize, usize)>, next: &mut usize, from: usize, len: usize) {
    let mut prev = from;
    for _ in 0..len {
        edges.push((prev, *next));
        prev = *next;
        *next += 1;
    }
}

fn clique_edges(vertices: impl Iterator<Item = usize> + Clone) -> Vec<(usize, usize)> {
    let vs: Vec<usize> = vertices.collect();
    let mut edges = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            edges.push((u, v));
        }
    }
    edges
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

pub fn star(a: usize) -> Graph {
    let edges: Vec<_> = (1..=a).map(|i| (0, i)).collect();
    build(a + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    build(n, &clique_edges(0..n))
}

/// `K_r` on `0..r`, the isolated `K_1` at `r`, `K_s` on `r+1..=r+s`, with
/// every `K_r` vertex joined to everything else.
pub fn join_kr_k1_ks(r: usize, s: usize) -> Graph {
    let n = r + s + 1;
    let mut edges = clique_edges(0..r);
    edges.extend(clique_edges(r + 1..n));
    for u in 0..r {
        edges.extend((r..n).map(|v| (u, v)));
    }
    build(n, &edges)
}

/// Triangles `{0,1,2}` and `{3,4,5}`; pendant leaves 6 (at 0) and 7 (at 3);
/// a path on `a` vertices whose ends are 1 and 4.
pub fn double_k3_path(a: usize) -> Graph {
    let mut edges = vec![
        (0, 1),
        (0, 2),
        (1, 2),
        (3, 4),
        (3, 5),
        (4, 5),
        (0, 6),
        (3, 7),
    ];
    let mut next = 8;
    let mut prev = 1;
    for _ in 0..a - 2 {
        edges.push((prev, next));
        prev = next;
        next += 1;
    }
    edges.push((prev, 4));
    build(next, &edges)
}

/// Center 0 with one path per entry of `legs` (edge counts).
pub fn spider(legs: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        hang_path(&mut edges, &mut next, 0, len);
    }
    build(next, &edges)
}

/// `x = 0` and `y = 1` adjacent; `x` carries two branches of `r` vertices
/// (counting `x`), `y` two branches of 3 vertices. Order `2r + 4`.
pub fn double_spider(r: usize) -> Result<Graph> {
    Family::DoubleSpider { r }.validate()?;
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for (root, len) in [(0, r - 1), (0, r - 1), (1, 2), (1, 2)] {
        hang_path(&mut edges, &mut next, root, len);
    }
    Ok(build(next, &edges))
}

/// A graph with weak total metric dimension `a` and weak total resolving
/// number `b`, for `3 <= a <= b`.
pub fn thm9_realization(a: usize, b: usize) -> Result<Graph> {
    Family::Thm9 { a, b }.validate()?;
    Ok(if a == b {
        complete(b)
    } else if a == 3 {
        // triangle {0,1,2} with a path of b - 3 further vertices at 2
        let mut edges = vec![(0, 1), (0, 2), (1, 2)];
        let mut next = 3;
        hang_path(&mut edges, &mut next, 2, b - 3);
        build(next, &edges)
    } else if a == b - 1 {
        star(a)
    } else {
        // K_4 - e on w=0, x=1, y=2, z=3 without y-z; a-2 leaves at w; path at x
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
        let mut next = 4;
        for _ in 0..a - 2 {
            edges.push((0, next));
            next += 1;
        }
        hang_path(&mut edges, &mut next, 1, b - a - 2);
        build(next, &edges)
    })
}

/// A graph of order `b` with weak total metric dimension `a`, for
/// `2 <= a <= b`: `K_b` when `a = b`, otherwise a broom.
pub fn thm6_realization(a: usize, b: usize) -> Result<Graph> {
    Family::Thm6 { a, b }.validate()?;
    Ok(if a == b {
        complete(b)
    } else {
        // path 0..=b-a, with a-1 leaves attached at 0
        let handle = b - a + 1;
        let mut edges: Vec<_> = (1..handle).map(|i| (i - 1, i)).collect();
        edges.extend((handle..b).map(|leaf| (0, leaf)));
        build(b, &edges)
    })
}

/// Tree with the given Prüfer sequence over `0..seq.len() + 2`.
pub fn tree_from_prufer(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad_label) = seq.iter().find(|&&v| v >= n) {
        return Err(bad(format!("Prüfer label {bad_label} out of range 0..{n}")));
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Ok(build(n, &edges))
}

/// Every labeled tree on `n` vertices (`n^(n-2)` of them), in odometer order
/// of their Prüfer sequences.
pub fn all_labeled_trees(n: usize) -> impl Iterator<Item = Graph> + Send {
    let len = n.saturating_sub(2);
    let mut seq = vec![0usize; len];
    let mut done = n < 2;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let g = tree_from_prufer(&seq).expect("labels in range");
        done = true;
        for d in seq.iter_mut().rev() {
            *d += 1;
            if *d < n {
                done = false;
                break;
            }
            *d = 0;
        }
        Some(g)
    })
}

/// Every connected labeled graph on `n` vertices, by edge-subset enumeration.
pub fn all_connected_graphs(n: usize) -> impl Iterator<Item = Graph> + Send {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total: u64 = if n >= 2 { 1 << pairs.len() } else { 0 };
    (0..total).filter_map(move |mask| {
        let mut adj = vec![0u64; n];
        let mut edges = Vec::new();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
                edges.push((u, v));
            }
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        (seen.count_ones() as usize == n).then(|| build(n, &edges))
    })
}

/// Uniform random labeled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    tree_from_prufer(&seq).expect("labels in range")
}

/// `count` uniform random trees, reproducible from `seed`.
pub fn random_trees(n: usize, count: usize, seed: u64) -> impl Iterator<Item = Graph> + Send {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| random_tree(n, &mut rng))
}

/// Canonical graph6 string, identical for isomorphic graphs. Exhaustive over
/// the orderings left by colour refinement, so meant for small graphs only.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > 11 {
        return Err(Error::TooLarge {
            what: "canonical form",
            n,
            limit: 11,
        });
    }
    // colour refinement: the colour of a vertex is the rank of
    // (previous colour, sorted neighbour colours) among all vertices
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut keys = sig.clone();
        keys.sort();
        keys.dedup();
        let next: Vec<usize> = sig.iter().map(|s| keys.binary_search(s).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if classes(&next) == classes(&color) {
            color = next;
            break;
        }
        color = next;
    }
    let mut cells: Vec<usize> = color.clone();
    cells.sort_unstable();
    let mut best: Option<u64> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_orderings(g, &color, &cells, &mut perm, &mut used, &mut best);
    let best = best.expect("at least one ordering");
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if best >> (63 - k) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(crate::format::to_graph6(&build(n, &edges)))
}

fn search_orderings(
    g: &Graph,
    color: &[usize],
    cells: &[usize],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<u64>,
) {
    let n = g.order();
    if perm.len() == n {
        let mut bits = 0u64;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if g.has_edge(perm[i], perm[j]) {
                    bits |= 1 << (63 - k);
                }
                k += 1;
            }
        }
        if best.is_none_or(|b| bits > b) {
            *best = Some(bits);
        }
        return;
    }
    let want = cells[perm.len()];
    for v in 0..n {
        if !used[v] && color[v] == want {
            used[v] = true;
            perm.push(v);
            search_orderings(g, color, cells, perm, used, best);
            perm.pop();
            used[v] = false;
        }
    }
}

/// Keeps the first graph of every isomorphism class.
pub fn dedup_isomorphic(graphs: impl Iterator<Item = Graph>) -> Result<Vec<Graph>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        if seen.insert(canonical_graph6(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}
