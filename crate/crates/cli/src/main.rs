//! `rbt-lab`: command-line front end for rainbow-triangle-free systems.
//!
//! Exit status: 0 when every check passed or a search completed, 1 when a
//! bound was violated or a rainbow triangle was found, 2 on usage or input
//! errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rbt_core::certify::{
    certify_nearly_matchable, certify_product_nested, certify_sum_t, certify_sum_t3,
    certify_weighted, conjecture_margin, prop31_bounds, scan_ineq31, scan_ineq32, ScanSummary,
    INEQ31_L_MAX, INEQ31_Q_MAX, INEQ32_DENOMINATOR, INEQ32_NUMERATOR_MAX,
};
use rbt_core::io::{emit, read_system, SystemFormat};
use rbt_core::partition::{mantel_edge_bound, mantel_partition, verify_partition};
use rbt_core::rainbow::{find_rainbow_triangle, nest_reduce_traced};
use rbt_core::search::{
    balanced_bipartite_system, bipartite_triple, exhaustive_max_product, exhaustive_max_sum,
    local_search_product, two_complete_one_empty, Objective, SearchConfig, SearchReport,
    DEFAULT_BUDGET,
};
use rbt_core::{CertError, CertReport, GraphSystem};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "rbt-lab",
    version,
    about = "Rainbow-triangle-free graph systems"
)]
struct Cli {
    /// System file; `-` or absent reads standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Json,
    Hex,
}

impl From<InputFormat> for SystemFormat {
    fn from(f: InputFormat) -> SystemFormat {
        match f {
            InputFormat::Auto => SystemFormat::Auto,
            InputFormat::Json => SystemFormat::Json,
            InputFormat::Hex => SystemFormat::Hex,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a rainbow triangle.
    CheckRbt,
    /// Mantel partition and edge bound of one (triangle-free) graph.
    Partition {
        /// Index of the graph in the system.
        #[arg(long, default_value_t = 0)]
        graph: usize,
    },
    /// Turn the system into a nested chain with the same edge multiplicities.
    Reduce {
        /// Format of the emitted system.
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        emit: EmitFormat,
    },
    /// Check one bound on the input system (graphs taken as B, C, D).
    Certify {
        #[arg(long, value_enum)]
        claim: ClaimArg,
    },
    /// Maximize the edge sum or product over RBT-free systems.
    Search(SearchArgs),
    /// Emit an extremal construction.
    Extremal {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        emit: EmitFormat,
    },
    /// Grid scans of the two auxiliary inequalities.
    IneqScan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Json,
    Hex,
}

impl From<EmitFormat> for SystemFormat {
    fn from(f: EmitFormat) -> SystemFormat {
        match f {
            EmitFormat::Json => SystemFormat::Json,
            EmitFormat::Hex => SystemFormat::Hex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    SumT3,
    SumT,
    Weighted,
    NearlyMatchable,
    ProductNested,
    Conjecture,
    Prop31,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    TwoComplete,
    BipartiteK,
    BipartiteTriple,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Sum,
    Product,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    t: usize,
    #[arg(long, conflicts_with = "local", required_unless_present = "local")]
    exhaustive: bool,
    #[arg(long, requires = "seed")]
    local: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Moves per restart.
    #[arg(long)]
    iters: Option<u64>,
    #[arg(long)]
    restarts: Option<u32>,
    /// Non-improving moves tolerated before a restart ends.
    #[arg(long)]
    patience: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Resumable progress file (exhaustive mode).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Enumerate the first graph over all labelings instead of up to isomorphism.
    #[arg(long)]
    no_iso: bool,
    /// Disable branch-and-bound (with --no-iso: plain enumeration).
    #[arg(long)]
    no_bound: bool,
    #[arg(long, default_value_t = 64)]
    witness_cap: usize,
    /// Largest permitted t * C(n,2).
    #[arg(long, env = "RBT_LAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = ["31", "32"])]
    which: String,
    #[arg(long, default_value_t = 1)]
    l_min: u64,
    #[arg(long, default_value_t = INEQ31_L_MAX)]
    l_max: u64,
    #[arg(long, default_value_t = INEQ31_Q_MAX)]
    q_max: u64,
    /// Largest grid numerator: alpha, beta range over k/den for 0 <= k <= num_max.
    #[arg(long, default_value_t = INEQ32_NUMERATOR_MAX)]
    num_max: u64,
    #[arg(long, default_value_t = INEQ32_DENOMINATOR)]
    den: u64,
}

/// Whether every check passed.
enum Verdict {
    Ok,
    Violation,
}

impl Verdict {
    fn from_ok(ok: bool) -> Verdict {
        if ok {
            Verdict::Ok
        } else {
            Verdict::Violation
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(cli: &Cli) -> anyhow::Result<GraphSystem> {
    let format = cli.input_format.into();
    let system = match &cli.input {
        Some(path) if path.as_os_str() != "-" => {
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            read_system(file, format)
        }
        _ => read_system(io::stdin().lock(), format),
    };
    system.context("invalid system")
}

fn print_json(value: &impl Serialize) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Edge lists in colex order, one graph per line.
fn system_lines(s: &GraphSystem) -> String {
    let mut text = format!("n = {}\n", s.order());
    for (i, g) in s.graphs().iter().enumerate() {
        let edges: Vec<String> = g
            .edges()
            .map(|e| format!("({},{})", e.u(), e.v()))
            .collect();
        text += &format!(
            "G{}: [{}] ({} edges)\n",
            i + 1,
            edges.join(" "),
            g.edge_count()
        );
    }
    text
}

fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    let json = cli.output == Output::Json;
    match &cli.command {
        Command::CheckRbt => {
            let s = load(cli)?;
            let witness = find_rainbow_triangle(&s);
            if json {
                print_json(&json!({ "rbt_free": witness.is_none(), "witness": witness }))?;
            } else {
                match &witness {
                    Some(w) => println!("rainbow triangle: {w}"),
                    None => println!("RBT-free ({} graphs on {} vertices)", s.len(), s.order()),
                }
            }
            Ok(Verdict::from_ok(witness.is_none()))
        }
        Command::Partition { graph } => {
            let s = load(cli)?;
            let g = s
                .graphs()
                .get(*graph)
                .with_context(|| format!("no graph {graph} in a system of {}", s.len()))?;
            let p = mantel_partition(g)?;
            let verified = verify_partition(g, &p);
            let bound = mantel_edge_bound(g)?;
            if json {
                print_json(&json!({ "partition": p, "verified": verified, "bound": bound }))?;
            } else {
                println!("X = {:?}", p.x_side);
                println!("Y = {:?}", p.y_side);
                println!("Z = {:?}", p.z_side.iter().collect::<Vec<_>>());
                println!("verified: {verified}");
                println!("{bound}");
            }
            Ok(Verdict::from_ok(verified && bound.holds()))
        }
        Command::Reduce { emit: format } => {
            let s = load(cli)?;
            let trace = nest_reduce_traced(&s);
            let replacements = trace.potentials.len() - 1;
            if json {
                let doc: serde_json::Value =
                    serde_json::from_str(&emit(&trace.system, (*format).into()))?;
                print_json(&json!({ "system": doc, "replacements": replacements }))?;
            } else {
                print!("{}", system_lines(&trace.system));
                println!("{replacements} replacement(s)");
            }
            Ok(Verdict::Ok)
        }
        Command::Certify { claim } => certify(cli, *claim, json),
        Command::Search(args) => search(args, json),
        Command::Extremal {
            kind,
            n,
            t,
            emit: format,
        } => {
            let s = match kind {
                Kind::TwoComplete => two_complete_one_empty(*n),
                Kind::BipartiteK => balanced_bipartite_system(*n, *t),
                Kind::BipartiteTriple => bipartite_triple(*n),
            }?;
            if json {
                println!("{}", emit(&s, (*format).into()));
            } else {
                print!("{}", system_lines(&s));
                println!("sum {}, product {}", s.total_edges(), s.edge_product());
            }
            Ok(Verdict::Ok)
        }
        Command::IneqScan(args) => ineq_scan(args, json),
    }
}

fn certify(cli: &Cli, claim: ClaimArg, json: bool) -> anyhow::Result<Verdict> {
    let s = load(cli)?;
    let triple = || -> anyhow::Result<_> {
        if s.len() != 3 {
            bail!("claim needs exactly 3 graphs (B, C, D), got {}", s.len());
        }
        Ok((s.graph(0), s.graph(1), s.graph(2)))
    };
    let outcome: Result<Vec<CertReport>, CertError> = match claim {
        ClaimArg::SumT3 => certify_sum_t3(&s).map(|r| vec![r]),
        ClaimArg::SumT => certify_sum_t(&s).map(|r| vec![r]),
        ClaimArg::Weighted => {
            let (b, c, d) = triple()?;
            certify_weighted(b, c, d).map(|r| vec![r])
        }
        ClaimArg::NearlyMatchable => {
            let (b, c, d) = triple()?;
            certify_nearly_matchable(b, c, d).map(|r| vec![r])
        }
        ClaimArg::ProductNested => {
            let (b, c, d) = triple()?;
            certify_product_nested(b, c, d).map(|r| vec![r])
        }
        ClaimArg::Conjecture => {
            let (b, c, d) = triple()?;
            conjecture_margin(b, c, d).map(|r| vec![r])
        }
        ClaimArg::Prop31 => {
            let (b, c, d) = triple()?;
            match prop31_bounds(b, c, d) {
                Ok(r) => {
                    if !json {
                        let p = &r.params;
                        println!(
                            "l = {}, p = {}, q = {}, alpha = {}, beta = {}",
                            p.l,
                            p.p,
                            p.q,
                            ratio_string(&p.alpha),
                            ratio_string(&p.beta)
                        );
                    }
                    Ok(vec![r.edges, r.pair])
                }
                Err(e) => Err(e),
            }
        }
    };
    match outcome {
        Ok(reports) => {
            if json {
                match reports.as_slice() {
                    [one] => print_json(one)?,
                    many => print_json(&many)?,
                }
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            Ok(Verdict::from_ok(reports.iter().all(CertReport::holds)))
        }
        // A rainbow triangle where freeness is asserted is a failed check.
        Err(CertError::NotRbtFree(w)) => {
            if json {
                print_json(&json!({ "rbt_free": false, "witness": w }))?;
            } else {
                println!("not RBT-free: {w}");
            }
            Ok(Verdict::Violation)
        }
        Err(e) => Err(e.into()),
    }
}

fn search(args: &SearchArgs, json: bool) -> anyhow::Result<Verdict> {
    let report: SearchReport = if args.local {
        if args.objective != ObjectiveArg::Product || args.t != 3 {
            bail!(
                "local search maximizes the product of three graphs (--objective product, --t 3)"
            );
        }
        let base = SearchConfig::local(args.seed.expect("clap requires --seed"));
        let cfg = SearchConfig {
            iterations: args.iters.unwrap_or(base.iterations),
            restarts: args.restarts.unwrap_or(base.restarts),
            patience: args.patience.unwrap_or(base.patience),
            threads: args.threads,
            budget: args.budget,
            ..base
        };
        local_search_product(args.n, &cfg)?
    } else {
        if args.iters.is_some()
            || args.restarts.is_some()
            || args.patience.is_some()
            || args.seed.is_some()
        {
            bail!("--seed, --iters, --restarts and --patience apply to --local only");
        }
        let cfg = SearchConfig {
            iso_pruning: !args.no_iso,
            branch_and_bound: !args.no_bound,
            witness_cap: args.witness_cap,
            budget: args.budget,
            checkpoint: args.checkpoint.clone(),
            threads: args.threads,
            ..SearchConfig::exhaustive()
        };
        match args.objective {
            ObjectiveArg::Sum => exhaustive_max_sum(args.n, args.t, &cfg)?,
            ObjectiveArg::Product if args.t == 3 => exhaustive_max_product(args.n, &cfg)?,
            ObjectiveArg::Product => bail!("the product objective needs --t 3"),
        }
    };
    if json {
        print_json(&report)?;
    } else {
        print_search(&report);
    }
    Ok(Verdict::from_ok(!report.exceeds_bound))
}

fn print_search(r: &SearchReport) {
    let kind = if r.exhaustive {
        "maximum"
    } else {
        "best found"
    };
    println!(
        "{} {kind} for n = {}, t = {}: {}",
        r.objective, r.n, r.t, r.best
    );
    match r.bound {
        Some(b) => println!(
            "bound {b}{}",
            if r.exceeds_bound { " EXCEEDED" } else { "" }
        ),
        None => println!("no bound stated"),
    }
    println!("constructor value {}", r.constructor_value);
    println!(
        "nodes {}, pruned by bound {}, pruned by rainbow {}, {} ms",
        r.nodes, r.pruned_bound, r.pruned_rainbow, r.elapsed_ms
    );
    let more = if r.witness_overflow { " (capped)" } else { "" };
    println!("{} witness(es){more}", r.witnesses.len());
    for w in &r.witnesses {
        print!("{}", system_lines(w));
    }
    if r.objective == Objective::Product && !r.exhaustive {
        println!("(lower bound only; local search is not exhaustive)");
    }
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    which: &'a str,
    holds: bool,
    checked: String,
    tight: String,
    violations: &'a [Vec<String>],
}

fn ineq_scan(args: &ScanArgs, json: bool) -> anyhow::Result<Verdict> {
    let summary: ScanSummary = match args.which.as_str() {
        "31" => scan_ineq31(args.l_min, args.l_max, args.q_max)?,
        _ => scan_ineq32(args.num_max, args.den)?,
    };
    if json {
        print_json(&ScanDoc {
            which: &args.which,
            holds: summary.holds(),
            checked: summary.checked.to_string(),
            tight: summary.tight.to_string(),
            violations: &summary.violations,
        })?;
    } else {
        println!(
            "({}) checked {} points, {} tight, {} violation(s)",
            args.which,
            summary.checked,
            summary.tight,
            summary.violations.len()
        );
        for v in &summary.violations {
            println!("violation at {}", v.join(", "));
        }
    }
    Ok(Verdict::from_ok(summary.holds()))
}

fn ratio_string<T: std::fmt::Display>(r: &Option<T>) -> String {
    r.as_ref()
        .map_or_else(|| "undefined".to_string(), ToString::to_string)
}
