//! Serializable records and the json / csv / table renderers.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

use wtdim_core::format::to_graph6;
use wtdim_core::tree::Branch;
use wtdim_core::{
    analyze_tree, classify_vertices, is_wtr_set, resolvability_profile, Graph, Limits,
    ResolvabilityProfile, SearchMode, Searcher, TheoremReport, TreeAnalysis, TreeBounds, Verdict,
};

pub const COMPUTE_SCHEMA: &str = "wtdim.compute/1";
pub const TREE_SCHEMA: &str = "wtdim.tree/1";
pub const VERIFY_SCHEMA: &str = "wtdim.verify/1";
pub const THEOREMS_SCHEMA: &str = "wtdim.theorems/1";

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchRow {
    pub major: usize,
    pub terminal: usize,
    /// Vertex count, major included.
    pub length: usize,
    pub vertices: Vec<usize>,
}

impl From<&Branch> for BranchRow {
    fn from(b: &Branch) -> Self {
        BranchRow {
            major: b.owner(),
            terminal: b.terminal(),
            length: b.len(),
            vertices: b.vertices.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeSummary {
    pub kind: &'static str,
    pub mu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<usize>,
    pub sigma: usize,
    pub ex: usize,
    pub formula_dim: usize,
    pub formula_dim_wt: usize,
    pub branches: Vec<BranchRow>,
    pub constructed_wtmb: Vec<usize>,
    pub constructed_is_wtr: bool,
    /// Present when an exact dim_wt was available to compare against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructed_is_minimum: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<TreeBounds>,
}

impl TreeSummary {
    /// `None` for graphs that are not trees.
    fn new(g: &Graph, exact_dim_wt: Option<usize>) -> Option<TreeSummary> {
        let analysis = analyze_tree(g).ok()?;
        let w = analysis.construct_wtmb();
        let classes = classify_vertices(g);
        let (kind, mu, theta, branches, bounds) = match &analysis {
            TreeAnalysis::Path { .. } => ("path", 0, None, Vec::new(), None),
            TreeAnalysis::NonPath(td) => (
                "non-path",
                td.mu,
                Some(td.theta),
                td.branches().map(BranchRow::from).collect(),
                Some(td.reswt_bounds()),
            ),
        };
        Some(TreeSummary {
            kind,
            mu,
            theta,
            sigma: classes.sigma,
            ex: classes.ex,
            formula_dim: analysis.metric_dimension(),
            formula_dim_wt: analysis.weak_total_dimension(),
            branches,
            constructed_is_wtr: is_wtr_set(g, &w),
            constructed_is_minimum: exact_dim_wt.map(|k| k == w.len()),
            constructed_wtmb: w.sorted(),
            bounds,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeRecord {
    pub index: usize,
    pub graph6: String,
    #[serde(flatten)]
    pub profile: ResolvabilityProfile,
    /// `k` when the graph is randomly weak total k-dimensional.
    pub randomly_wt_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeSummary>,
}

impl ComputeRecord {
    pub fn new(
        index: usize,
        g: &Graph,
        limits: &Limits,
        max_witnesses: usize,
    ) -> wtdim_core::Result<Self> {
        let profile = resolvability_profile(g, limits, max_witnesses)?;
        Ok(ComputeRecord {
            index,
            graph6: to_graph6(g),
            randomly_wt_k: profile.randomly_weak_total.then_some(profile.k),
            tree: TreeSummary::new(g, Some(profile.dim_wt)),
            profile,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactValues {
    pub dim: usize,
    pub dim_wt: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub res_wt: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeRecord {
    pub index: usize,
    pub graph6: String,
    pub order: usize,
    #[serde(flatten)]
    pub tree: TreeSummary,
    /// Exhaustive values, when the order is within the solver limits.
    pub exact: Option<ExactValues>,
    pub formula_matches_exact: Option<bool>,
}

impl TreeRecord {
    pub fn new(index: usize, g: &Graph, limits: &Limits) -> wtdim_core::Result<Self> {
        let exact = if limits.check_dim(g).is_ok() {
            let s = Searcher::new(g)?;
            Some(ExactValues {
                dim: s.metric_dimension().0,
                dim_wt: s.weak_total_metric_dimension(SearchMode::TwinPruned).0,
                res_wt: limits
                    .check_res(g)
                    .is_ok()
                    .then(|| s.weak_total_resolving_number()),
            })
        } else {
            None
        };
        let tree = TreeSummary::new(g, exact.as_ref().map(|e| e.dim_wt))
            .ok_or(wtdim_core::Error::NotATree)?;
        Ok(TreeRecord {
            index,
            graph6: to_graph6(g),
            order: g.order(),
            formula_matches_exact: exact
                .as_ref()
                .map(|e| e.dim == tree.formula_dim && e.dim_wt == tree.formula_dim_wt),
            exact,
            tree,
        })
    }
}

fn set(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn sets(v: &[Vec<usize>], truncated: bool) -> String {
    let mut items: Vec<String> = v.iter().map(|s| set(s)).collect();
    if truncated {
        items.push("...".into());
    }
    items.join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Top-level JSON document: the schema tag first, then the payload fields.
#[derive(Serialize)]
struct Document<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize>(out: &mut impl Write, schema: &'static str, body: T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, &Document { schema, body })?;
    writeln!(out)?;
    Ok(())
}

fn write_tree_table(out: &mut impl Write, t: &TreeSummary) -> Result<()> {
    write!(out, "  tree ({}): mu {}", t.kind, t.mu)?;
    if let Some(theta) = t.theta {
        write!(out, "  theta {theta}")?;
    }
    writeln!(
        out,
        "  sigma {}  ex {}  formula dim {}  formula dim_wt {}",
        t.sigma, t.ex, t.formula_dim, t.formula_dim_wt
    )?;
    if !t.branches.is_empty() {
        writeln!(
            out,
            "    {:>6} {:>8} {:>6}  vertices",
            "major", "terminal", "length"
        )?;
        for b in &t.branches {
            writeln!(
                out,
                "    {:>6} {:>8} {:>6}  {}",
                b.major,
                b.terminal,
                b.length,
                set(&b.vertices)
            )?;
        }
    }
    write!(
        out,
        "  constructed WTMB {}  WTR: {}",
        set(&t.constructed_wtmb),
        yes_no(t.constructed_is_wtr)
    )?;
    if let Some(min) = t.constructed_is_minimum {
        write!(out, "  minimum: {}", yes_no(min))?;
    }
    writeln!(out)?;
    if let Some(b) = t.bounds {
        writeln!(
            out,
            "  bounds: sum(l - 1) = {}, n - theta + 2 = {}",
            b.lower, b.upper
        )?;
    }
    Ok(())
}

pub fn write_compute(
    out: &mut impl Write,
    format: Output,
    limits: &Limits,
    records: &[ComputeRecord],
) -> Result<()> {
    match format {
        Output::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                limits: &'a Limits,
                results: &'a [ComputeRecord],
            }
            write_json(
                out,
                COMPUTE_SCHEMA,
                Body {
                    limits,
                    results: records,
                },
            )
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "index",
                "graph6",
                "n",
                "m",
                "dim",
                "dim_wt",
                "res_wt",
                "randomly_wt_k",
                "twins",
                "metric_basis",
                "wtmb",
                "largest_non_wtr_set",
                "mu",
                "theta",
                "sigma",
                "ex",
                "constructed_wtmb",
                "constructed_is_wtr",
            ])?;
            for r in records {
                let p = &r.profile;
                let t = r.tree.as_ref();
                w.write_record([
                    r.index.to_string(),
                    r.graph6.clone(),
                    p.order.to_string(),
                    p.size.to_string(),
                    p.dim.to_string(),
                    p.dim_wt.to_string(),
                    p.res_wt.to_string(),
                    opt(r.randomly_wt_k),
                    set(&p.twins),
                    p.metric_bases.first().map_or_else(String::new, |s| set(s)),
                    p.wtmbs.first().map_or_else(String::new, |s| set(s)),
                    set(&p.largest_non_wtr_set),
                    opt(t.map(|t| t.mu)),
                    opt(t.and_then(|t| t.theta)),
                    opt(t.map(|t| t.sigma)),
                    opt(t.map(|t| t.ex)),
                    t.map_or_else(String::new, |t| set(&t.constructed_wtmb)),
                    opt(t.map(|t| t.constructed_is_wtr)),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Table => {
            for r in records {
                let p = &r.profile;
                writeln!(
                    out,
                    "graph {}  n {}  m {}  graph6 {}",
                    r.index, p.order, p.size, r.graph6
                )?;
                writeln!(
                    out,
                    "  dim {}  dim_wt {}  res_wt {}  randomly weak total: {}",
                    p.dim,
                    p.dim_wt,
                    p.res_wt,
                    r.randomly_wt_k
                        .map_or("no".to_string(), |k| format!("yes (k = {k})"))
                )?;
                if let Some(note) = &p.res_wt_note {
                    writeln!(out, "  note: {note}")?;
                }
                writeln!(
                    out,
                    "  metric bases {}",
                    sets(&p.metric_bases, p.metric_bases_truncated)
                )?;
                writeln!(out, "  WTMBs {}", sets(&p.wtmbs, p.wtmbs_truncated))?;
                writeln!(out, "  twins {}", set(&p.twins))?;
                writeln!(out, "  largest non-WTR set {}", set(&p.largest_non_wtr_set))?;
                if let Some(t) = &r.tree {
                    write_tree_table(out, t)?;
                }
            }
            Ok(())
        }
    }
}

pub fn write_tree(out: &mut impl Write, format: Output, records: &[TreeRecord]) -> Result<()> {
    match format {
        Output::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                results: &'a [TreeRecord],
            }
            write_json(out, TREE_SCHEMA, Body { results: records })
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "index",
                "graph6",
                "n",
                "kind",
                "mu",
                "theta",
                "sigma",
                "ex",
                "formula_dim",
                "formula_dim_wt",
                "constructed_wtmb",
                "constructed_is_wtr",
                "exact_dim",
                "exact_dim_wt",
                "exact_res_wt",
                "lower",
                "upper",
            ])?;
            for r in records {
                let t = &r.tree;
                let e = r.exact.as_ref();
                w.write_record([
                    r.index.to_string(),
                    r.graph6.clone(),
                    r.order.to_string(),
                    t.kind.to_string(),
                    t.mu.to_string(),
                    opt(t.theta),
                    t.sigma.to_string(),
                    t.ex.to_string(),
                    t.formula_dim.to_string(),
                    t.formula_dim_wt.to_string(),
                    set(&t.constructed_wtmb),
                    t.constructed_is_wtr.to_string(),
                    opt(e.map(|e| e.dim)),
                    opt(e.map(|e| e.dim_wt)),
                    opt(e.and_then(|e| e.res_wt)),
                    opt(t.bounds.map(|b| b.lower)),
                    opt(t.bounds.map(|b| b.upper)),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Table => {
            for r in records {
                writeln!(out, "tree {}  n {}  graph6 {}", r.index, r.order, r.graph6)?;
                write_tree_table(out, &r.tree)?;
                match &r.exact {
                    Some(e) => writeln!(
                        out,
                        "  exact dim {}  dim_wt {}  res_wt {}  formula matches: {}",
                        e.dim,
                        e.dim_wt,
                        opt(e.res_wt),
                        yes_no(r.formula_matches_exact == Some(true))
                    )?,
                    None => writeln!(out, "  exact values skipped (order above the solver limit)")?,
                }
            }
            Ok(())
        }
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::ScopeNote => "scope-note",
    }
}

pub fn write_verify(
    out: &mut impl Write,
    format: Output,
    seed: u64,
    passed: bool,
    reports: &[TheoremReport],
) -> Result<()> {
    match format {
        Output::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                seed: u64,
                passed: bool,
                reports: &'a [TheoremReport],
            }
            write_json(
                out,
                VERIFY_SCHEMA,
                Body {
                    seed,
                    passed,
                    reports,
                },
            )
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "theorem_id",
                "verdict",
                "corpus",
                "graphs",
                "applicable",
                "violations",
                "scope_notes",
                "tight",
                "tight_checked",
                "runtime_secs",
                "first_counterexample",
            ])?;
            for r in reports {
                let first = r.counterexamples.first().or(r.scope_notes.first());
                w.write_record([
                    r.theorem_id.clone(),
                    verdict_name(r.verdict).to_string(),
                    r.corpus.clone(),
                    r.graphs.to_string(),
                    r.applicable.to_string(),
                    r.violations.to_string(),
                    r.scope_note_count.to_string(),
                    opt(r.tightness.map(|t| t.tight)),
                    opt(r.tightness.map(|t| t.checked)),
                    format!("{:.3}", r.runtime_secs),
                    first.map_or_else(String::new, |c| format!("{}: {}", c.graph6, c.assertion)),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Table => {
            writeln!(
                out,
                "{:<24} {:<10} {:>10} {:>10} {:>10} {:>6} {:>9}",
                "theorem", "verdict", "graphs", "applicable", "violations", "notes", "secs"
            )?;
            for r in reports {
                writeln!(
                    out,
                    "{:<24} {:<10} {:>10} {:>10} {:>10} {:>6} {:>9.2}",
                    r.theorem_id,
                    verdict_name(r.verdict),
                    r.graphs,
                    r.applicable,
                    r.violations,
                    r.scope_note_count,
                    r.runtime_secs
                )?;
                if let Some(c) = r.counterexamples.first().or(r.scope_notes.first()) {
                    writeln!(out, "    e.g. {}: {}", c.graph6, c.assertion)?;
                }
            }
            let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
            writeln!(
                out,
                "{} checkers: {} pass, {} fail, {} scope-note",
                reports.len(),
                count(Verdict::Pass),
                count(Verdict::Fail),
                count(Verdict::ScopeNote)
            )?;
            Ok(())
        }
    }
}

pub fn write_theorem_list(
    out: &mut impl Write,
    format: Output,
    list: &[(&str, &str)],
) -> Result<()> {
    match format {
        Output::Json => {
            #[derive(Serialize)]
            struct Item<'a> {
                id: &'a str,
                statement: &'a str,
            }
            #[derive(Serialize)]
            struct Body<'a> {
                theorems: Vec<Item<'a>>,
            }
            let theorems = list
                .iter()
                .map(|&(id, statement)| Item { id, statement })
                .collect();
            write_json(out, THEOREMS_SCHEMA, Body { theorems })
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "statement"])?;
            for (id, statement) in list {
                w.write_record([id, statement])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Table => {
            let width = list.iter().map(|(id, _)| id.len()).max().unwrap_or(0);
            for (id, statement) in list {
                writeln!(out, "{id:<width$}  {statement}")?;
            }
            Ok(())
        }
    }
}
