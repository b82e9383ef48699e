//! `wtdim`: exact weak total resolvability parameters from the command line.

mod report;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use wtdim_core::format::{read_edge_lists, read_graph6, to_graph6, write_edge_list};
use wtdim_core::theorems::theorem_statements;
use wtdim_core::{run_suite_with, Corpus, Family, Graph, Limits, SuiteOptions, Verdict};

use report::{ComputeRecord, Output, TreeRecord};

const DEFAULT_SEED: u64 = 2024;

#[derive(Parser, Debug)]
#[command(
    name = "wtdim",
    version,
    about = "Weak total metric dimension and related parameters of small graphs"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "WTDIM_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim, dim_wt, res_wt and witnesses of each input graph.
    Compute(ComputeArgs),
    /// Run theorem checkers over a corpus; exits 1 if any checker fails.
    Verify(VerifyArgs),
    /// Emit the graphs of a family.
    Generate(GenerateArgs),
    /// Branch structure, closed forms and constructed WTMB of trees.
    Tree(TreeArgs),
    /// List checker ids with their statements.
    ListTheorems(ListArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Graph file, `-` for stdin.
    #[arg(long, short, conflicts_with = "family")]
    input: Option<String>,

    /// Family such as `cycle:6`, `join:2,3`, `spider:1,2,2` or `all-trees:6`.
    #[arg(long, short)]
    family: Option<Family>,

    /// Input encoding.
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,

    /// Seed for random families.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Largest order accepted by every exact solver.
    #[arg(long)]
    max_n: Option<usize>,

    /// Allow limits above the defaults.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, short, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Witness sets listed per kind.
    #[arg(long, default_value_t = 16)]
    max_witnesses: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Corpus file; without it and `--family` the default corpus is used.
    #[arg(long, short, conflicts_with = "family")]
    input: Option<String>,
    #[arg(long, short)]
    family: Option<Family>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated checker ids, or `all`.
    #[arg(long, short, value_delimiter = ',', default_value = "all")]
    theorems: Vec<String>,
    /// Add the connected graphs of order 7 to the default corpus.
    #[arg(long)]
    include_n7: bool,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, short, value_enum, default_value_t = Output::Table)]
    output: Output,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, short)]
    family: Family,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    format: GraphFormat,
}

#[derive(Args, Debug)]
struct TreeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, short, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long, short, value_enum, default_value_t = Output::Table)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputFormat {
    /// Edge list if the first content line is two integers, graph6 otherwise.
    Auto,
    Edgelist,
    Graph6,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Edgelist,
    Graph6,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("starting worker pool")?;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Compute(args) => compute(args, &mut out)?,
        Command::Verify(args) => verify(args, &mut out)?,
        Command::Generate(args) => generate(args, &mut out)?,
        Command::Tree(args) => tree(args, &mut out)?,
        Command::ListTheorems(args) => list_theorems(args, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

/// Defaults, then `WTDIM_MAX_N_{DIM,RES,COLOR}`, then `--max-n`.
fn limits(args: &LimitArgs) -> Result<Limits> {
    let defaults = Limits::default();
    let env = |name: &str, fallback: usize| -> Result<usize> {
        match std::env::var(name) {
            Ok(v) => v
                .trim()
                .parse()
                .with_context(|| format!("{name} must be a non-negative integer, got `{v}`")),
            Err(_) => Ok(fallback),
        }
    };
    let mut l = Limits {
        dim: env("WTDIM_MAX_N_DIM", defaults.dim)?,
        res: env("WTDIM_MAX_N_RES", defaults.res)?,
        color: env("WTDIM_MAX_N_COLOR", defaults.color)?,
    };
    if let Some(n) = args.max_n {
        l = Limits::uniform(n);
    }
    let raised = l.dim > defaults.dim || l.res > defaults.res || l.color > defaults.color;
    if raised && !args.allow_large {
        bail!(
            "limits above the defaults (dim {}, res {}, color {}) need --allow-large; exhaustive search grows exponentially",
            defaults.dim,
            defaults.res,
            defaults.color
        );
    }
    if l.dim.max(l.res).max(l.color) > 64 {
        bail!("solver limits cannot exceed 64 vertices");
    }
    Ok(l)
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
    } else {
        text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| {
            let toks: Vec<&str> = l.split_whitespace().collect();
            toks.len() == 2 && toks.iter().all(|t| t.parse::<usize>().is_ok())
        })
}

fn parse_graphs(text: &str, format: InputFormat) -> Result<Vec<Graph>> {
    let edge_list = match format {
        InputFormat::Edgelist => true,
        InputFormat::Graph6 => false,
        InputFormat::Auto => looks_like_edge_list(text),
    };
    Ok(if edge_list {
        read_edge_lists(text)?
    } else {
        read_graph6(text)?
    })
}

fn load_graphs(input: &InputArgs) -> Result<Vec<Graph>> {
    match (&input.input, &input.family) {
        (Some(path), _) => parse_graphs(&read_input(path)?, input.format),
        (None, Some(family)) => Ok(family.generate(input.seed)?.collect()),
        (None, None) => bail!("give --input or --family"),
    }
}

fn compute(args: ComputeArgs, out: &mut impl Write) -> Result<ExitCode> {
    let limits = limits(&args.limits)?;
    let graphs = load_graphs(&args.input)?;
    let records: Vec<ComputeRecord> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| ComputeRecord::new(i, g, &limits, args.max_witnesses))
        .collect::<wtdim_core::Result<_>>()?;
    report::write_compute(out, args.output, &limits, &records)?;
    Ok(ExitCode::SUCCESS)
}

fn tree(args: TreeArgs, out: &mut impl Write) -> Result<ExitCode> {
    let limits = limits(&args.limits)?;
    let graphs = load_graphs(&args.input)?;
    let records: Vec<TreeRecord> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| TreeRecord::new(i, g, &limits))
        .collect::<wtdim_core::Result<_>>()?;
    report::write_tree(out, args.output, &records)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> Result<ExitCode> {
    let opts = SuiteOptions {
        limits: limits(&args.limits)?,
        ..SuiteOptions::default()
    };
    let corpus = match (&args.input, &args.family) {
        (Some(path), _) => {
            let graphs = parse_graphs(&read_input(path)?, args.format)?;
            Corpus::new(
                format!("{} ({} graphs)", path, graphs.len()),
                graphs.into_iter(),
            )
        }
        (None, Some(family)) => Corpus::from_family(family, args.seed)?,
        (None, None) => Corpus::default_suite(args.seed, args.include_n7),
    };
    let selection: Vec<String> = if args.theorems.iter().any(|t| t == "all") {
        wtdim_core::theorem_ids()
            .into_iter()
            .map(String::from)
            .collect()
    } else {
        args.theorems.clone()
    };
    let reports = run_suite_with(corpus, &selection, &opts)?;
    let passed = reports.iter().all(|r| r.verdict != Verdict::Fail);
    report::write_verify(out, args.output, args.seed, passed, &reports)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn generate(args: GenerateArgs, out: &mut impl Write) -> Result<ExitCode> {
    for g in args.family.generate(args.seed)? {
        match args.format {
            GraphFormat::Graph6 => writeln!(out, "{}", to_graph6(&g))?,
            GraphFormat::Edgelist => writeln!(out, "{}", write_edge_list(&g))?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn list_theorems(args: ListArgs, out: &mut impl Write) -> Result<ExitCode> {
    report::write_theorem_list(out, args.output, &theorem_statements())?;
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wtdim_core::format::parse_graph6_line;

    #[test]
    fn auto_format_detection() {
        assert!(looks_like_edge_list("# c\n3 2\n0 1\n1 2\n"));
        assert!(!looks_like_edge_list("Bw\n"));
        let gs = parse_graphs("Bw\nCF\n", InputFormat::Auto).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0], parse_graph6_line("Bw", 1).unwrap());
    }

    #[test]
    fn limits_need_acknowledgement_to_grow() {
        let args = |max_n, allow_large| LimitArgs { max_n, allow_large };
        assert_eq!(limits(&args(None, false)).unwrap(), Limits::default());
        assert_eq!(limits(&args(Some(8), false)).unwrap(), Limits::uniform(8));
        assert!(limits(&args(Some(24), false)).is_err());
        assert_eq!(limits(&args(Some(24), true)).unwrap(), Limits::uniform(24));
        assert!(limits(&args(Some(65), true)).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
