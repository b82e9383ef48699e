//! Empirical checks of the structural statements about weak total
//! resolvability, run over graph corpora or parameter sweeps.
//!
//! Each checker is a pure predicate of one graph and its exact parameters, so
//! any counterexample can be re-checked alone with [`check_graph`].

use std::cell::OnceCell;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{self, Family, GraphStream};
use crate::error::{Error, Result};
use crate::format::to_graph6;
use crate::graph::{find_twins, is_complete_vertex, Graph, Twins};
use crate::resolve::{is_resolving_set, is_wtr_set, is_wtr_set_via_lemma1, VertexSet};
use crate::solve::{chromatic_number_capped, clique_number_capped, Limits, SearchMode, Searcher};
use crate::subsets::{full_mask, Combinations};
use crate::tree::{analyze_tree, Branch, TreeAnalysis, TreeDecomposition};

/// Result of one checker on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    NotApplicable,
    /// `tight` is set by bound checkers: whether equality held.
    Holds {
        tight: Option<bool>,
    },
    /// Disagreement confined to a known ambiguity in the statement's scope.
    ScopeNote(String),
    Violated(String),
}

impl Outcome {
    const HOLDS: Outcome = Outcome::Holds { tight: None };

    fn bound(tight: bool) -> Outcome {
        Outcome::Holds { tight: Some(tight) }
    }
}

macro_rules! require {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Outcome::Violated(format!($($fmt)+));
        }
    };
}

macro_rules! applies {
    ($cond:expr) => {
        if !$cond {
            return Outcome::NotApplicable;
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ScopeNote,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub assertion: String,
}

/// How often a bound held with equality.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tightness {
    pub checked: usize,
    pub tight: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub statement: String,
    pub corpus: String,
    pub graphs: usize,
    /// Graphs the statement's hypotheses applied to.
    pub applicable: usize,
    pub verdict: Verdict,
    pub violations: usize,
    /// First violations, up to the configured cap.
    pub counterexamples: Vec<Counterexample>,
    pub scope_note_count: usize,
    pub scope_notes: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<Tightness>,
    pub runtime_secs: f64,
}

/// Tunables of a suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOptions {
    pub limits: Limits,
    /// Largest order for checks that scan every vertex subset with bitmasks.
    pub subset_scan_max_n: usize,
    /// Largest order for checks that evaluate the WTR definition on every subset.
    pub definition_scan_max_n: usize,
    pub thm9_max_b: usize,
    pub thm6_max_b: usize,
    pub double_spider_max_r: usize,
    pub max_counterexamples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            limits: Limits::default(),
            subset_scan_max_n: 10,
            definition_scan_max_n: 6,
            thm9_max_b: 8,
            thm6_max_b: 9,
            double_spider_max_r: 5,
            max_counterexamples: 20,
        }
    }
}

/// A described, possibly lazy, stream of graphs.
pub struct Corpus {
    pub description: String,
    graphs: GraphStream,
}

impl Corpus {
    pub fn new(
        description: impl Into<String>,
        graphs: impl Iterator<Item = Graph> + Send + 'static,
    ) -> Corpus {
        Corpus {
            description: description.into(),
            graphs: Box::new(graphs),
        }
    }

    pub fn from_family(family: &Family, seed: u64) -> Result<Corpus> {
        Ok(Corpus {
            description: family.to_string(),
            graphs: family.generate(seed)?,
        })
    }

    pub fn chain(self, other: Corpus) -> Corpus {
        Corpus {
            description: format!("{}; {}", self.description, other.description),
            graphs: Box::new(self.graphs.chain(other.graphs)),
        }
    }

    /// All connected labeled graphs of order `2..=max_n`.
    pub fn connected_graphs(max_n: usize) -> Corpus {
        Corpus::new(
            format!("all connected labeled graphs, 2 <= n <= {max_n}"),
            (2..=max_n).flat_map(construct::all_connected_graphs),
        )
    }

    /// All labeled trees of order `2..=max_n`.
    pub fn labeled_trees(max_n: usize) -> Corpus {
        Corpus::new(
            format!("all labeled trees, 2 <= n <= {max_n}"),
            (2..=max_n).flat_map(construct::all_labeled_trees),
        )
    }

    /// `per_n` uniform random trees for each order in `lo..=hi`. Each order
    /// draws from its own stream seeded with `seed + n`.
    pub fn random_trees(lo: usize, hi: usize, per_n: usize, seed: u64) -> Corpus {
        Corpus::new(
            format!("{per_n} random trees per n, {lo} <= n <= {hi}, seed {seed}"),
            (lo..=hi)
                .flat_map(move |n| construct::random_trees(n, per_n, seed.wrapping_add(n as u64))),
        )
    }

    /// Default graph corpus: connected graphs up to order 6 (7 if asked).
    pub fn default_graphs(include_n7: bool) -> Corpus {
        Corpus::connected_graphs(if include_n7 { 7 } else { 6 })
    }

    /// Default tree corpus: all trees up to order 8 and 10,000 random trees
    /// of each order 9 to 14.
    pub fn default_trees(seed: u64) -> Corpus {
        Corpus::labeled_trees(8).chain(Corpus::random_trees(9, 14, 10_000, seed))
    }

    pub fn default_suite(seed: u64, include_n7: bool) -> Corpus {
        Corpus::default_graphs(include_n7).chain(Corpus::default_trees(seed))
    }
}

impl std::fmt::Debug for Corpus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Corpus")
            .field("description", &self.description)
            .finish_non_exhaustive()
    }
}

/// Everything a checker may ask about one graph, computed on first use.
struct Ctx<'g> {
    g: &'g Graph,
    opts: &'g SuiteOptions,
    s: Searcher<'g>,
    dim: OnceCell<usize>,
    dim_wt: OnceCell<usize>,
    res_wt: OnceCell<usize>,
    twins: OnceCell<Twins>,
    wtmbs: OnceCell<Vec<VertexSet>>,
    tree: OnceCell<Option<TreeAnalysis>>,
    chromatic: OnceCell<Option<usize>>,
    clique: OnceCell<Option<usize>>,
}

impl<'g> Ctx<'g> {
    fn new(g: &'g Graph, opts: &'g SuiteOptions) -> Result<Ctx<'g>> {
        opts.limits.check_dim(g)?;
        opts.limits.check_res(g)?;
        Ok(Ctx {
            g,
            opts,
            s: Searcher::new(g)?,
            dim: OnceCell::new(),
            dim_wt: OnceCell::new(),
            res_wt: OnceCell::new(),
            twins: OnceCell::new(),
            wtmbs: OnceCell::new(),
            tree: OnceCell::new(),
            chromatic: OnceCell::new(),
            clique: OnceCell::new(),
        })
    }

    fn n(&self) -> usize {
        self.g.order()
    }

    fn all(&self) -> u64 {
        full_mask(self.n())
    }

    fn scan(&self) -> bool {
        self.n() <= self.opts.subset_scan_max_n
    }

    fn dim(&self) -> usize {
        *self.dim.get_or_init(|| self.s.metric_dimension().0)
    }

    fn dim_wt(&self) -> usize {
        *self
            .dim_wt
            .get_or_init(|| self.s.weak_total_metric_dimension(SearchMode::TwinPruned).0)
    }

    fn res_wt(&self) -> usize {
        *self
            .res_wt
            .get_or_init(|| self.s.weak_total_resolving_number())
    }

    fn twins(&self) -> &Twins {
        self.twins.get_or_init(|| find_twins(self.g))
    }

    fn all_twins(&self) -> bool {
        self.twins().vertices.len() == self.n()
    }

    /// Every minimum WTR-set.
    fn wtmbs(&self) -> &[VertexSet] {
        self.wtmbs
            .get_or_init(|| self.s.wtr_sets_of_size(self.dim_wt(), usize::MAX))
    }

    fn tree(&self) -> Option<&TreeAnalysis> {
        self.tree.get_or_init(|| analyze_tree(self.g).ok()).as_ref()
    }

    fn non_path_tree(&self) -> Option<&TreeDecomposition> {
        match self.tree() {
            Some(TreeAnalysis::NonPath(d)) => Some(d),
            _ => None,
        }
    }

    fn chromatic(&self) -> Option<usize> {
        *self
            .chromatic
            .get_or_init(|| chromatic_number_capped(self.g, self.opts.limits.color).ok())
    }

    fn clique(&self) -> Option<usize> {
        *self
            .clique
            .get_or_init(|| clique_number_capped(self.g, self.opts.limits.color).ok())
    }

    fn is_odd_cycle(&self) -> bool {
        self.g.is_cycle() && self.n() % 2 == 1
    }

    /// Masks of every subset (when small enough to scan) passing `keep`,
    /// otherwise the given fallback sets.
    fn scan_or(&self, keep: impl Fn(u64) -> bool, fallback: &[VertexSet]) -> Vec<u64> {
        if self.scan() {
            (0..=self.all()).filter(|&m| keep(m)).collect()
        } else {
            fallback.iter().filter_map(VertexSet::to_mask).collect()
        }
    }
}

fn branch_mask(b: &Branch) -> u64 {
    b.vertices[1..].iter().fold(0, |m, &v| m | 1 << v)
}

fn fmt_mask(m: u64) -> String {
    format!("{:?}", crate::subsets::members(m))
}

fn wtmb_pair(w: &VertexSet) -> (usize, usize) {
    (w.members()[0], w.members()[1])
}

type GraphCheck = fn(&Ctx) -> Outcome;
type SweepCheck = fn(&SuiteOptions) -> Result<Sweep>;

struct Sweep {
    description: String,
    cases: Vec<(Graph, Outcome)>,
}

enum Kind {
    PerGraph(GraphCheck),
    Sweep(SweepCheck),
}

struct Checker {
    id: &'static str,
    statement: &'static str,
    kind: Kind,
}

const ROSTER: &[Checker] = &[
    Checker {
        id: "lemma1",
        statement: "a resolving set W is a WTR-set iff every outside code differs from every inside code in at least two coordinates",
        kind: Kind::PerGraph(lemma1),
    },
    Checker {
        id: "remark1",
        statement: "every WTR-set contains every twin",
        kind: Kind::PerGraph(remark1),
    },
    Checker {
        id: "ineq1",
        statement: "dim(G) <= dim_wt(G)",
        kind: Kind::PerGraph(ineq1),
    },
    Checker {
        id: "ineq1-examples",
        statement: "double triangle with a connecting path has dim = dim_wt = 2 with the two pendant leaves as basis; K_r + (K_1 u K_s) has dim = n - 2 and dim_wt = n - 1",
        kind: Kind::Sweep(ineq1_examples),
    },
    Checker {
        id: "reswt-ge-dimwt",
        statement: "dim_wt(G) <= res_wt(G)",
        kind: Kind::PerGraph(reswt_ge_dimwt),
    },
    Checker {
        id: "prop1",
        statement: "with m = dim_wt(G) and D = diam(G): n <= D^m + m, max degree <= 3^m - 1, chromatic number <= 2^m",
        kind: Kind::PerGraph(prop1),
    },
    Checker {
        id: "prop3",
        statement: "adjacent u, v satisfy |d(u,w) - d(v,w)| <= 1 for every w",
        kind: Kind::PerGraph(prop3),
    },
    Checker {
        id: "prop4",
        statement: "n >= 3 and {u,v} a WTMB imply u, v non-adjacent",
        kind: Kind::PerGraph(prop4),
    },
    Checker {
        id: "cor-k2",
        statement: "dim_wt(G) = 2 with WTMB {u,v}: u ~ v iff G is K_2",
        kind: Kind::PerGraph(cor_k2),
    },
    Checker {
        id: "prop5",
        statement: "n >= 4 and dim_wt(G) = 2: no WTMB consists of twins and G is twin-free",
        kind: Kind::PerGraph(prop5),
    },
    Checker {
        id: "cor1",
        statement: "dim_wt(G) = 2: G has twins iff G is P_2 or P_3",
        kind: Kind::PerGraph(cor1),
    },
    Checker {
        id: "thm2",
        statement: "dim_wt(G) = 2: both WTMB vertices have degree at most 2",
        kind: Kind::PerGraph(thm2),
    },
    Checker {
        id: "thm3-1",
        statement: "dim_wt(G) = 2: the geodesic between the WTMB vertices is unique",
        kind: Kind::PerGraph(thm3_geodesic),
    },
    Checker {
        id: "thm3-2",
        statement: "dim_wt(G) = 2: every neighbor of a WTMB vertex has degree at most 3",
        kind: Kind::PerGraph(thm3_neighbor_degree),
    },
    Checker {
        id: "thm3-3",
        statement: "dim_wt(G) = 2: geodesic vertices other than the WTMB vertices and their neighbors have degree at most 5",
        kind: Kind::PerGraph(thm3_geodesic_degree),
    },
    Checker {
        id: "thm3-4",
        statement: "dim_wt(G) = 2: max degree at most 8",
        kind: Kind::PerGraph(thm3_max_degree),
    },
    Checker {
        id: "thm3-5",
        statement: "dim_wt(G) = 2: no WTMB vertex w lies on a triangle, i.e. r !~ w for z in N(w), r in N(z) - {w}",
        kind: Kind::PerGraph(thm3_triangle_free),
    },
    Checker {
        id: "thm4",
        statement: "dim_wt(G) = 2: no complete vertex of degree more than 3",
        kind: Kind::PerGraph(thm4),
    },
    Checker {
        id: "cor2",
        statement: "dim_wt(G) = 2: chromatic number <= 4 and clique number <= 4",
        kind: Kind::PerGraph(cor2),
    },
    Checker {
        id: "thm5",
        statement: "n >= 2: dim_wt(G) = n iff every vertex is a twin",
        kind: Kind::PerGraph(thm5),
    },
    Checker {
        id: "res-lower",
        statement: "n >= 3: res_wt(G) >= 3",
        kind: Kind::PerGraph(res_lower),
    },
    Checker {
        id: "twins-res",
        statement: "n >= 3: res_wt(G) = n iff G contains a twin",
        kind: Kind::PerGraph(twins_res),
    },
    Checker {
        id: "common-neighbors",
        statement: "res_wt(G) = k: any two vertices share at most k - 2 neighbors",
        kind: Kind::PerGraph(common_neighbors),
    },
    Checker {
        id: "res3-classification",
        statement: "res_wt(G) = 3 iff G is an odd cycle or a path with n >= 3",
        kind: Kind::PerGraph(res3_classification),
    },
    Checker {
        id: "cor3",
        statement: "G is randomly weak total n-dimensional iff every vertex is a twin",
        kind: Kind::PerGraph(cor3),
    },
    Checker {
        id: "cor4",
        statement: "G is randomly weak total 3-dimensional iff G is an odd cycle",
        kind: Kind::PerGraph(cor4),
    },
    Checker {
        id: "cor-n-minus-1",
        statement: "n >= 3: G is randomly weak total (n-1)-dimensional iff dim_wt(G) = n - 1 and G is twin-free",
        kind: Kind::PerGraph(cor_n_minus_1),
    },
    Checker {
        id: "cycle-dimwt-3",
        statement: "dim_wt(C_n) = 3",
        kind: Kind::PerGraph(cycle_dimwt_3),
    },
    Checker {
        id: "thm8",
        statement: "res_wt(G) = k implies max degree <= 2^(k-1) + k - 1",
        kind: Kind::PerGraph(thm8),
    },
    Checker {
        id: "reswt-shortcut",
        statement: "least r with every r-set WTR equals one plus the largest non-WTR set",
        kind: Kind::PerGraph(reswt_shortcut),
    },
    Checker {
        id: "thm9-realization",
        statement: "for 3 <= a <= b the realization graph has dim_wt = a, res_wt = b",
        kind: Kind::Sweep(thm9_sweep),
    },
    Checker {
        id: "thm6-realization",
        statement: "for 2 <= a <= b the realization graph has order b and dim_wt = a",
        kind: Kind::Sweep(thm6_sweep),
    },
    Checker {
        id: "terminal-paths",
        statement: "non-path tree: every resolving set has a non-owner vertex in at least t - 1 branches of each exterior major with t >= 2 branches",
        kind: Kind::PerGraph(terminal_paths),
    },
    Checker {
        id: "prop2",
        statement: "non-path tree: a WTR-set meeting a branch meets every strictly longer branch of the same exterior major",
        kind: Kind::PerGraph(prop2),
    },
    Checker {
        id: "wtmb-unique-branch",
        statement: "non-path tree: with a unique shortest branch P_1, every WTMB has exactly one vertex in each other branch, at a position beyond l_1",
        kind: Kind::PerGraph(wtmb_unique_branch),
    },
    Checker {
        id: "wtmb-no-unique-branch",
        statement: "non-path tree: without a unique shortest branch, every WTMB has exactly one non-owner vertex in each branch",
        kind: Kind::PerGraph(wtmb_no_unique_branch),
    },
    Checker {
        id: "cor-dimwt-ge-t",
        statement: "non-path tree: an exterior major with t branches and no unique shortest one forces dim >= t - 1 and dim_wt >= t",
        kind: Kind::PerGraph(cor_dimwt_ge_t),
    },
    Checker {
        id: "cor-all-branches",
        statement: "non-path tree: a set with a non-owner vertex in every branch is a WTR-set",
        kind: Kind::PerGraph(cor_all_branches),
    },
    Checker {
        id: "dimwt-formula",
        statement: "tree: dim = sigma - ex and dim_wt = dim + mu (paths: 1 and 2)",
        kind: Kind::PerGraph(dimwt_formula),
    },
    Checker {
        id: "construct-wtmb",
        statement: "tree: the constructed set is a WTR-set of size dim_wt",
        kind: Kind::PerGraph(construct_wtmb),
    },
    Checker {
        id: "tree-dimwt2",
        statement: "non-path tree: dim_wt = 2 iff every exterior major has at most three branches with a unique shortest one, and either one has three and none two, or exactly two have two and none three",
        kind: Kind::PerGraph(tree_dimwt2),
    },
    Checker {
        id: "theta-upper",
        statement: "non-path tree, n >= 4: every (n - theta + 2)-set meets every branch and is a WTR-set, so res_wt <= n - theta + 2",
        kind: Kind::PerGraph(theta_upper),
    },
    Checker {
        id: "prop7-lower",
        statement: "non-path tree: sum over branches of (l - 1) <= res_wt",
        kind: Kind::PerGraph(prop7_lower),
    },
    Checker {
        id: "double-spider",
        statement: "double spider with long branches of r vertices: mu = 2, dim_wt = 4, res_wt = 2(r + 1) = sum of (l - 1)",
        kind: Kind::Sweep(double_spider_sweep),
    },
];

/// Every theorem id, in report order.
pub fn theorem_ids() -> Vec<&'static str> {
    ROSTER.iter().map(|c| c.id).collect()
}

/// `(id, statement)` pairs, in report order.
pub fn theorem_statements() -> Vec<(&'static str, &'static str)> {
    ROSTER.iter().map(|c| (c.id, c.statement)).collect()
}

fn lookup(id: &str) -> Result<&'static Checker> {
    ROSTER
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownTheoremId(id.to_string()))
}

/// Runs one per-graph checker on one graph, e.g. to re-check a counterexample.
pub fn check_graph(id: &str, g: &Graph, opts: &SuiteOptions) -> Result<Outcome> {
    match lookup(id)?.kind {
        Kind::PerGraph(f) => Ok(f(&Ctx::new(g, opts)?)),
        Kind::Sweep(_) => Err(Error::BadParameters(format!(
            "`{id}` checks a parameter sweep, not a given graph"
        ))),
    }
}

/// Runs the selected checkers with default options.
pub fn run_suite<S: AsRef<str>>(corpus: Corpus, selection: &[S]) -> Result<Vec<TheoremReport>> {
    run_suite_with(corpus, selection, &SuiteOptions::default())
}

const CHUNK: usize = 2048;

/// Runs the selected checkers; reports follow roster order and are
/// independent of the number of worker threads.
pub fn run_suite_with<S: AsRef<str>>(
    corpus: Corpus,
    selection: &[S],
    opts: &SuiteOptions,
) -> Result<Vec<TheoremReport>> {
    if selection.is_empty() {
        return Err(Error::BadParameters("empty theorem selection".into()));
    }
    let mut chosen = Vec::new();
    for id in selection {
        chosen.push(lookup(id.as_ref())?.id);
    }
    let chosen: Vec<&Checker> = ROSTER.iter().filter(|c| chosen.contains(&c.id)).collect();
    let per_graph: Vec<(usize, GraphCheck)> = chosen
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c.kind {
            Kind::PerGraph(f) => Some((i, f)),
            Kind::Sweep(_) => None,
        })
        .collect();

    let mut acc: Vec<Accumulator> = chosen
        .iter()
        .map(|c| Accumulator::new(c, &corpus.description))
        .collect();

    if !per_graph.is_empty() {
        let mut graphs = corpus.graphs;
        loop {
            let chunk: Vec<Graph> = graphs.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let results: Vec<Result<Vec<(Outcome, f64)>>> = chunk
                .par_iter()
                .map(|g| {
                    let ctx = Ctx::new(g, opts)?;
                    Ok(per_graph
                        .iter()
                        .map(|&(_, f)| {
                            let start = Instant::now();
                            let out = f(&ctx);
                            (out, start.elapsed().as_secs_f64())
                        })
                        .collect())
                })
                .collect();
            for (g, res) in chunk.iter().zip(results) {
                for (&(i, _), (out, secs)) in per_graph.iter().zip(res?) {
                    acc[i].record(g, out, secs, opts.max_counterexamples);
                }
            }
        }
    }

    for (i, c) in chosen.iter().enumerate() {
        if let Kind::Sweep(f) = c.kind {
            let start = Instant::now();
            let sweep = f(opts)?;
            let secs = start.elapsed().as_secs_f64();
            acc[i].corpus = sweep.description;
            for (g, out) in &sweep.cases {
                acc[i].record(g, out.clone(), 0.0, opts.max_counterexamples);
            }
            acc[i].runtime += secs;
        }
    }
    Ok(acc.into_iter().map(Accumulator::finish).collect())
}

struct Accumulator {
    report: TheoremReport,
    corpus: String,
    runtime: f64,
    tight: Tightness,
}

impl Accumulator {
    fn new(c: &Checker, corpus: &str) -> Accumulator {
        Accumulator {
            report: TheoremReport {
                theorem_id: c.id.to_string(),
                statement: c.statement.to_string(),
                corpus: String::new(),
                graphs: 0,
                applicable: 0,
                verdict: Verdict::Pass,
                violations: 0,
                counterexamples: Vec::new(),
                scope_note_count: 0,
                scope_notes: Vec::new(),
                tightness: None,
                runtime_secs: 0.0,
            },
            corpus: corpus.to_string(),
            runtime: 0.0,
            tight: Tightness::default(),
        }
    }

    fn record(&mut self, g: &Graph, out: Outcome, secs: f64, cap: usize) {
        let r = &mut self.report;
        r.graphs += 1;
        self.runtime += secs;
        let example = |assertion: String| Counterexample {
            graph6: to_graph6(g),
            assertion,
        };
        match out {
            Outcome::NotApplicable => {}
            Outcome::Holds { tight } => {
                r.applicable += 1;
                if let Some(t) = tight {
                    self.tight.checked += 1;
                    self.tight.tight += usize::from(t);
                }
            }
            Outcome::ScopeNote(msg) => {
                r.applicable += 1;
                r.scope_note_count += 1;
                if r.scope_notes.len() < cap {
                    r.scope_notes.push(example(msg));
                }
            }
            Outcome::Violated(msg) => {
                r.applicable += 1;
                r.violations += 1;
                if r.counterexamples.len() < cap {
                    r.counterexamples.push(example(msg));
                }
            }
        }
    }

    fn finish(mut self) -> TheoremReport {
        let r = &mut self.report;
        r.corpus = self.corpus;
        r.runtime_secs = self.runtime;
        r.tightness = (self.tight.checked > 0).then_some(self.tight);
        r.verdict = if r.violations > 0 {
            Verdict::Fail
        } else if r.scope_note_count > 0 {
            Verdict::ScopeNote
        } else {
            Verdict::Pass
        };
        self.report
    }
}

// ---- general graphs ----

fn lemma1(c: &Ctx) -> Outcome {
    applies!(c.n() <= c.opts.definition_scan_max_n);
    for m in 0..=c.all() {
        let w = VertexSet::from_mask(c.n(), m);
        let by_def = is_wtr_set(c.g, &w);
        let by_codes = is_wtr_set_via_lemma1(c.g, &w);
        let by_mask = c.s.table().is_wtr(m);
        require!(
            by_def == by_codes && by_codes == by_mask,
            "W = {:?}: definition {by_def}, two-coordinate test {by_codes}, bitmask test {by_mask}",
            w.members()
        );
    }
    Outcome::HOLDS
}

fn remark1(c: &Ctx) -> Outcome {
    let twins = c.s.twin_mask();
    let table = c.s.table();
    for m in c.scan_or(|m| table.is_wtr(m), c.wtmbs()) {
        require!(
            m & twins == twins,
            "WTR-set {} misses twins {}",
            fmt_mask(m),
            fmt_mask(twins & !m)
        );
    }
    Outcome::HOLDS
}

fn ineq1(c: &Ctx) -> Outcome {
    let (d, dw) = (c.dim(), c.dim_wt());
    require!(d <= dw, "dim = {d} > dim_wt = {dw}");
    Outcome::bound(d == dw)
}

fn reswt_ge_dimwt(c: &Ctx) -> Outcome {
    let (dw, r) = (c.dim_wt(), c.res_wt());
    require!(dw <= r, "dim_wt = {dw} > res_wt = {r}");
    Outcome::bound(dw == r)
}

fn prop1(c: &Ctx) -> Outcome {
    let m = c.dim_wt() as u32;
    let d = c.g.diameter() as u128;
    let n = c.n() as u128;
    let order_bound = d.saturating_pow(m).saturating_add(m as u128);
    require!(
        n <= order_bound,
        "n = {n} > D^m + m = {order_bound} (D = {d}, m = {m})"
    );
    let delta = c.g.max_degree() as u128;
    let degree_bound = 3u128.saturating_pow(m) - 1;
    require!(
        delta <= degree_bound,
        "max degree {delta} > 3^m - 1 = {degree_bound}"
    );
    if let Some(chi) = c.chromatic() {
        let color_bound = 2u128.saturating_pow(m);
        require!(
            chi as u128 <= color_bound,
            "chromatic number {chi} > 2^m = {color_bound}"
        );
    }
    Outcome::HOLDS
}

fn prop3(c: &Ctx) -> Outcome {
    for (u, v) in c.g.edges() {
        for w in 0..c.n() {
            let (du, dv) = (c.g.distance(u, w), c.g.distance(v, w));
            require!(
                du.abs_diff(dv) <= 1,
                "edge {u}-{v}: d({u},{w}) = {du}, d({v},{w}) = {dv}"
            );
        }
    }
    Outcome::HOLDS
}

fn prop4(c: &Ctx) -> Outcome {
    applies!(c.n() >= 3 && c.dim_wt() == 2);
    for w in c.wtmbs() {
        let (u, v) = wtmb_pair(w);
        require!(!c.g.has_edge(u, v), "WTMB {{{u}, {v}}} is an edge");
    }
    Outcome::HOLDS
}

fn cor_k2(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    let is_k2 = c.n() == 2;
    for w in c.wtmbs() {
        let (u, v) = wtmb_pair(w);
        let adjacent = c.g.has_edge(u, v);
        require!(
            adjacent == is_k2,
            "WTMB {{{u}, {v}}}: adjacent = {adjacent}, G = K_2: {is_k2}"
        );
    }
    Outcome::HOLDS
}

fn prop5(c: &Ctx) -> Outcome {
    applies!(c.n() >= 4 && c.dim_wt() == 2);
    for w in c.wtmbs() {
        let (u, v) = wtmb_pair(w);
        require!(!c.g.are_twins(u, v), "WTMB {{{u}, {v}}} are twins");
    }
    require!(c.twins().is_empty(), "twins {:?}", c.twins().pairs);
    Outcome::HOLDS
}

fn cor1(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    let has_twins = !c.twins().is_empty();
    let small_path = c.g.is_path() && c.n() <= 3;
    require!(
        has_twins == small_path,
        "has twins: {has_twins}, is P_2 or P_3: {small_path}"
    );
    Outcome::HOLDS
}

fn thm2(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    for w in c.wtmbs() {
        for &x in w.members() {
            require!(
                c.g.degree(x) <= 2,
                "WTMB vertex {x} has degree {}",
                c.g.degree(x)
            );
        }
    }
    Outcome::HOLDS
}

fn thm3_geodesic(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    for w in c.wtmbs() {
        let (u, v) = wtmb_pair(w);
        let count = c.g.geodesic_count(u, v);
        require!(count == 1, "{count} geodesics between {u} and {v}");
    }
    Outcome::HOLDS
}

fn thm3_neighbor_degree(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    for w in c.wtmbs() {
        for &x in w.members() {
            for &z in c.g.neighbors(x) {
                let d = c.g.degree(z);
                require!(d <= 3, "neighbor {z} of WTMB vertex {x} has degree {d}");
            }
        }
    }
    Outcome::HOLDS
}

fn thm3_geodesic_degree(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    for w in c.wtmbs() {
        let (u, v) = wtmb_pair(w);
        if c.g.geodesic_count(u, v) != 1 {
            // uniqueness is its own check
            continue;
        }
        for y in c.g.geodesic_vertices(u, v) {
            if c.g.distance(y, u) <= 1 || c.g.distance(y, v) <= 1 {
                continue;
            }
            let d = c.g.degree(y);
            require!(d <= 5, "vertex {y} on the {u}-{v} geodesic has degree {d}");
        }
    }
    Outcome::HOLDS
}

fn thm3_max_degree(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    let d = c.g.max_degree();
    require!(d <= 8, "max degree {d}");
    Outcome::HOLDS
}

fn thm3_triangle_free(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    for w in c.wtmbs() {
        for &x in w.members() {
            for &z in c.g.neighbors(x) {
                for &r in c.g.neighbors(z) {
                    require!(
                        r == x || !c.g.has_edge(r, x),
                        "WTMB vertex {x} lies on triangle {x}-{z}-{r}"
                    );
                }
            }
        }
    }
    Outcome::HOLDS
}

fn thm4(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    for v in 0..c.n() {
        require!(
            c.g.degree(v) <= 3 || !is_complete_vertex(c.g, v),
            "complete vertex {v} of degree {}",
            c.g.degree(v)
        );
    }
    Outcome::HOLDS
}

fn cor2(c: &Ctx) -> Outcome {
    applies!(c.dim_wt() == 2);
    if let Some(chi) = c.chromatic() {
        require!(chi <= 4, "chromatic number {chi}");
    }
    if let Some(omega) = c.clique() {
        require!(omega <= 4, "clique number {omega}");
    }
    Outcome::HOLDS
}

fn thm5(c: &Ctx) -> Outcome {
    let full = c.dim_wt() == c.n();
    let all = c.all_twins();
    require!(
        full == all,
        "dim_wt = n: {full}, every vertex a twin: {all}"
    );
    Outcome::HOLDS
}

fn res_lower(c: &Ctx) -> Outcome {
    applies!(c.n() >= 3);
    let r = c.res_wt();
    require!(r >= 3, "res_wt = {r}");
    Outcome::bound(r == 3)
}

fn twins_res(c: &Ctx) -> Outcome {
    applies!(c.n() >= 3);
    let full = c.res_wt() == c.n();
    let twin = !c.twins().is_empty();
    require!(full == twin, "res_wt = n: {full}, has a twin: {twin}");
    Outcome::HOLDS
}

fn common_neighbors(c: &Ctx) -> Outcome {
    let k = c.res_wt();
    let mut most = 0;
    for u in 0..c.n() {
        for v in u + 1..c.n() {
            let common = c.g.common_neighbors(u, v);
            require!(
                common + 2 <= k,
                "{u} and {v} share {common} neighbors, res_wt = {k}"
            );
            most = most.max(common);
        }
    }
    Outcome::bound(most + 2 == k)
}

fn res3_classification(c: &Ctx) -> Outcome {
    let three = c.res_wt() == 3;
    let family = c.is_odd_cycle() || (c.g.is_path() && c.n() >= 3);
    require!(
        three == family,
        "res_wt = 3: {three}, odd cycle or path of order >= 3: {family}"
    );
    Outcome::HOLDS
}

fn cor3(c: &Ctx) -> Outcome {
    let randomly_n = c.dim_wt() == c.res_wt() && c.res_wt() == c.n();
    let all = c.all_twins();
    require!(
        randomly_n == all,
        "randomly weak total n-dimensional: {randomly_n}, every vertex a twin: {all}"
    );
    Outcome::HOLDS
}

fn cor4(c: &Ctx) -> Outcome {
    let randomly_3 = c.dim_wt() == 3 && c.res_wt() == 3;
    let odd = c.is_odd_cycle();
    require!(
        randomly_3 == odd,
        "randomly weak total 3-dimensional: {randomly_3}, odd cycle: {odd}"
    );
    Outcome::HOLDS
}

fn cor_n_minus_1(c: &Ctx) -> Outcome {
    applies!(c.n() >= 3);
    let k = c.n() - 1;
    let randomly = c.dim_wt() == k && c.res_wt() == k;
    let rhs = c.dim_wt() == k && c.twins().is_empty();
    require!(
        randomly == rhs,
        "randomly weak total (n-1)-dimensional: {randomly}, dim_wt = n - 1 and twin-free: {rhs}"
    );
    Outcome::HOLDS
}

fn cycle_dimwt_3(c: &Ctx) -> Outcome {
    applies!(c.g.is_cycle());
    let dw = c.dim_wt();
    if dw == 3 {
        return Outcome::HOLDS;
    }
    if c.n() == 4 {
        // every vertex of C_4 is a twin, which forces dim_wt = n
        return Outcome::ScopeNote(format!("dim_wt(C_4) = {dw}: all four vertices are twins"));
    }
    Outcome::Violated(format!("dim_wt(C_{}) = {dw}", c.n()))
}

fn thm8(c: &Ctx) -> Outcome {
    let k = c.res_wt() as u32;
    let bound = 2u128.saturating_pow(k - 1) + k as u128 - 1;
    let delta = c.g.max_degree() as u128;
    require!(
        delta <= bound,
        "max degree {delta} > 2^(k-1) + k - 1 = {bound}, k = {k}"
    );
    Outcome::bound(delta == bound)
}

fn reswt_shortcut(c: &Ctx) -> Outcome {
    applies!(c.scan());
    let shortcut = c.res_wt();
    let by_def = c.s.res_wt_by_definition();
    let by_scan = c.s.res_wt_by_enumeration();
    require!(
        shortcut == by_def && by_def == by_scan,
        "shortcut {shortcut}, definition {by_def}, largest non-WTR scan {by_scan}"
    );
    Outcome::HOLDS
}

// ---- trees ----

fn terminal_paths(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    let table = c.s.table();
    let fallback = c.s.resolving_sets_of_size(c.dim(), usize::MAX);
    for m in c.scan_or(|m| table.is_resolving(m), &fallback) {
        for major in t.exterior_majors.iter().filter(|x| x.branches.len() >= 2) {
            let met = major
                .branches
                .iter()
                .filter(|b| branch_mask(b) & m != 0)
                .count();
            let need = major.branches.len() - 1;
            require!(
                met >= need,
                "resolving set {} meets {met} of {} branches of {}",
                fmt_mask(m),
                major.branches.len(),
                major.vertex
            );
        }
    }
    Outcome::HOLDS
}

fn prop2(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    let table = c.s.table();
    for m in c.scan_or(|m| table.is_wtr(m), c.wtmbs()) {
        for major in &t.exterior_majors {
            for short in &major.branches {
                for long in major.branches.iter().filter(|b| b.len() > short.len()) {
                    require!(
                        branch_mask(short) & m == 0 || branch_mask(long) & m != 0,
                        "WTR-set {} meets branch to {} but not longer branch to {}",
                        fmt_mask(m),
                        short.terminal(),
                        long.terminal()
                    );
                }
            }
        }
    }
    Outcome::HOLDS
}

fn wtmb_unique_branch(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    for w in c.wtmbs() {
        for major in t.exterior_majors.iter().filter(|x| x.unique_shortest) {
            let l1 = major.branches[0].len();
            for b in &major.branches[1..] {
                let hits = b.hits(w);
                require!(
                    hits.len() == 1 && hits[0] > l1,
                    "WTMB {:?} hits branch to {} at positions {hits:?}, shortest branch has {l1} vertices",
                    w.members(),
                    b.terminal()
                );
            }
        }
    }
    Outcome::HOLDS
}

fn wtmb_no_unique_branch(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    for w in c.wtmbs() {
        for major in t
            .exterior_majors
            .iter()
            .filter(|x| x.lacks_unique_shortest())
        {
            for b in &major.branches {
                let hits = b.hits(w);
                require!(
                    hits.len() == 1,
                    "WTMB {:?} hits branch to {} at positions {hits:?}",
                    w.members(),
                    b.terminal()
                );
            }
        }
    }
    Outcome::HOLDS
}

fn cor_dimwt_ge_t(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    for major in t
        .exterior_majors
        .iter()
        .filter(|x| x.lacks_unique_shortest())
    {
        let tb = major.branches.len();
        require!(
            c.dim() + 1 >= tb,
            "dim = {} < t - 1 at {}",
            c.dim(),
            major.vertex
        );
        require!(
            c.dim_wt() >= tb,
            "dim_wt = {} < t = {tb} at {}",
            c.dim_wt(),
            major.vertex
        );
    }
    Outcome::HOLDS
}

fn cor_all_branches(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    let masks: Vec<u64> = t.branches().map(branch_mask).collect();
    let meets_all = |m: u64| masks.iter().all(|&b| b & m != 0);
    let terminals = VertexSet::new(c.n(), t.branches().map(Branch::terminal).collect())
        .expect("terminals are distinct");
    let table = c.s.table();
    for m in c.scan_or(meets_all, std::slice::from_ref(&terminals)) {
        require!(
            table.is_wtr(m),
            "{} meets every branch but is not a WTR-set",
            fmt_mask(m)
        );
    }
    Outcome::HOLDS
}

fn dimwt_formula(c: &Ctx) -> Outcome {
    let Some(t) = c.tree() else {
        return Outcome::NotApplicable;
    };
    let (fd, fw) = (t.metric_dimension(), t.weak_total_dimension());
    require!(fd == c.dim(), "formula dim {fd}, exact {}", c.dim());
    require!(
        fw == c.dim_wt(),
        "formula dim_wt {fw}, exact {}",
        c.dim_wt()
    );
    Outcome::HOLDS
}

fn construct_wtmb(c: &Ctx) -> Outcome {
    let Some(t) = c.tree() else {
        return Outcome::NotApplicable;
    };
    let w = t.construct_wtmb();
    require!(
        is_wtr_set(c.g, &w),
        "constructed {:?} is not a WTR-set",
        w.members()
    );
    require!(
        w.len() == c.dim_wt(),
        "constructed {:?} has size {}, dim_wt = {}",
        w.members(),
        w.len(),
        c.dim_wt()
    );
    Outcome::HOLDS
}

fn tree_dimwt2(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    let predicted = t.dimwt2_characterization();
    let actual = c.dim_wt() == 2;
    require!(
        predicted == actual,
        "characterization {predicted}, dim_wt = {}",
        c.dim_wt()
    );
    Outcome::HOLDS
}

/// Branches of exterior majors with two or more branches.
fn multi_branches(t: &TreeDecomposition) -> impl Iterator<Item = &Branch> {
    t.exterior_majors
        .iter()
        .filter(|m| m.branches.len() >= 2)
        .flat_map(|m| m.branches.iter())
}

fn theta_upper(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    applies!(c.n() >= 4);
    let size = c.n() + 2 - t.theta;
    if c.scan() {
        let masks: Vec<u64> = t.branches().map(branch_mask).collect();
        let table = c.s.table();
        for m in Combinations::new(c.all(), size) {
            require!(
                masks.iter().all(|&b| b & m != 0),
                "{}-set {} misses a branch",
                size,
                fmt_mask(m)
            );
            require!(
                table.is_wtr(m),
                "{}-set {} is not a WTR-set",
                size,
                fmt_mask(m)
            );
        }
    }
    let r = c.res_wt();
    if r > size {
        let theta_multi = multi_branches(t).map(Branch::len).min().unwrap_or(t.theta);
        let alt = c.n() + 2 - theta_multi;
        if r <= alt {
            return Outcome::ScopeNote(format!(
                "res_wt = {r} > n - theta + 2 = {size} with single-branch majors in theta, <= {alt} without"
            ));
        }
        return Outcome::Violated(format!("res_wt = {r} > n - theta + 2 = {size}"));
    }
    Outcome::bound(r == size)
}

fn prop7_lower(c: &Ctx) -> Outcome {
    let Some(t) = c.non_path_tree() else {
        return Outcome::NotApplicable;
    };
    let lower = t.reswt_bounds().lower;
    let r = c.res_wt();
    if lower > r {
        let alt: usize = multi_branches(t).map(|b| b.len() - 1).sum();
        if alt <= r {
            return Outcome::ScopeNote(format!(
                "sum of (l - 1) = {lower} > res_wt = {r} with single-branch majors, {alt} without"
            ));
        }
        return Outcome::Violated(format!("sum of (l - 1) = {lower} > res_wt = {r}"));
    }
    Outcome::bound(lower == r)
}

// ---- parameter sweeps ----

fn exact(g: &Graph, opts: &SuiteOptions) -> Result<(usize, usize, usize)> {
    opts.limits.check_dim(g)?;
    opts.limits.check_res(g)?;
    let s = Searcher::new(g)?;
    Ok((
        s.metric_dimension().0,
        s.weak_total_metric_dimension(SearchMode::TwinPruned).0,
        s.weak_total_resolving_number(),
    ))
}

fn outcome(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::HOLDS
    } else {
        Outcome::Violated(msg())
    }
}

fn thm9_sweep(opts: &SuiteOptions) -> Result<Sweep> {
    let mut cases = Vec::new();
    for b in 3..=opts.thm9_max_b {
        for a in 3..=b {
            let g = construct::thm9_realization(a, b)?;
            let (_, dw, r) = exact(&g, opts)?;
            let n = g.order();
            cases.push((
                g,
                outcome(dw == a && r == b && n == b, || {
                    format!("(a, b) = ({a}, {b}): order {n}, dim_wt {dw}, res_wt {r}")
                }),
            ));
        }
    }
    Ok(Sweep {
        description: format!("realization family, 3 <= a <= b <= {}", opts.thm9_max_b),
        cases,
    })
}

fn thm6_sweep(opts: &SuiteOptions) -> Result<Sweep> {
    let mut cases = Vec::new();
    for b in 2..=opts.thm6_max_b {
        for a in 2..=b {
            let g = construct::thm6_realization(a, b)?;
            let (_, dw, _) = exact(&g, opts)?;
            let n = g.order();
            cases.push((
                g,
                outcome(dw == a && n == b, || {
                    format!("(a, b) = ({a}, {b}): order {n}, dim_wt {dw}")
                }),
            ));
        }
    }
    Ok(Sweep {
        description: format!("order-b family, 2 <= a <= b <= {}", opts.thm6_max_b),
        cases,
    })
}

fn double_spider_sweep(opts: &SuiteOptions) -> Result<Sweep> {
    let mut cases = Vec::new();
    for r in 3..=opts.double_spider_max_r {
        let g = construct::double_spider(r)?;
        let (_, dw, res) = exact(&g, opts)?;
        let t = analyze_tree(&g)?;
        let TreeAnalysis::NonPath(t) = t else {
            unreachable!("a double spider has major vertices")
        };
        let lower = t.reswt_bounds().lower;
        let want = 2 * (r + 1);
        cases.push((
            g,
            outcome(t.mu == 2 && dw == 4 && res == want && lower == want, || {
                format!(
                    "r = {r}: mu {}, dim_wt {dw}, res_wt {res}, sum (l - 1) {lower}, expected {want}",
                    t.mu
                )
            }),
        ));
    }
    Ok(Sweep {
        description: format!("double spiders, 3 <= r <= {}", opts.double_spider_max_r),
        cases,
    })
}

fn ineq1_examples(opts: &SuiteOptions) -> Result<Sweep> {
    let mut cases = Vec::new();
    for a in 2..=5 {
        let g = construct::double_k3_path(a);
        let (d, dw, _) = exact(&g, opts)?;
        let leaves = VertexSet::new(g.order(), vec![6, 7])?;
        let ok = d == 2 && dw == 2 && is_resolving_set(&g, &leaves) && is_wtr_set(&g, &leaves);
        cases.push((
            g,
            outcome(ok, || {
                format!(
                    "double triangle path a = {a}: dim {d}, dim_wt {dw}, pendant leaves checked"
                )
            }),
        ));
    }
    for r in 2..=3 {
        for s in 2..=3 {
            let g = construct::join_kr_k1_ks(r, s);
            let (d, dw, _) = exact(&g, opts)?;
            let n = g.order();
            cases.push((
                g,
                outcome(d == n - 2 && dw == n - 1, || {
                    format!("K_{r} + (K_1 u K_{s}): dim {d}, dim_wt {dw}, n {n}")
                }),
            ));
        }
    }
    Ok(Sweep {
        description: "double triangle paths 2 <= a <= 5; joins 2 <= r, s <= 3".into(),
        cases,
    })
}
