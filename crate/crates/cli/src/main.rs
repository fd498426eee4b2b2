use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use treecone::conespace::{
    sample_points, solve_coefficients_with_points, space_dimension_with_bound, verify_decomposition, Sampling,
    VerificationReport, DEFAULT_BOUND,
};
use treecone::linalg::{parse_point_list, Rational};
use treecone::poset::{count_linear_extensions, linear_extensions};
use treecone::polyalg::{self, SymbolicBasis};
use treecone::{decompose, enumerate_spanning_trees, path_tree, Error, Permutation, SpanningTree};

mod figure;

#[derive(Parser)]
#[command(name = "treecone", version, about = "Path-tree decompositions of spanning-tree cones")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for point sampling.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Sampling range for point coordinates / edge weights.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SamplingArg {
    Uniform,
    TreeCones,
}

#[derive(Subcommand)]
enum Command {
    /// List every spanning tree with distortion, path flag and extension count.
    Enumerate {
        #[arg(value_name = "N")]
        n_pos: Option<usize>,
        #[arg(long = "n", conflicts_with = "n_pos")]
        n: Option<usize>,
    },
    /// Expand one tree cone in the path-cone basis.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tree: String,
    },
    /// Check decompositions pointwise at sampled generic points.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        tree: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = SamplingArg::TreeCones)]
        sampling: SamplingArg,
        /// Read points from a file (one per line) instead of sampling.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Self-test: flip the sign of the first coefficient of each decomposition.
        #[arg(long)]
        mutate: bool,
    },
    /// Compare the sampled rank, the symbolic rank and n!.
    Dim {
        #[arg(long)]
        n: usize,
        /// Sample points (default 4·n!).
        #[arg(long)]
        points: Option<usize>,
    },
    /// Print the dual polynomial M_s and basis polynomial P_s.
    Dual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
    },
    /// Compare the formula, the geometric oracle and the symbolic route.
    Crosscheck {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        tree: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Emit cross-section data for plotting (n = 2 or 3).
    Figure {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Degenerate => 2,
            Error::NotSpanning(_) | Error::MixedN { .. } | Error::BoundaryPoint { .. } => 3,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command hands back for printing.
struct Outcome {
    command: &'static str,
    n: usize,
    payload: Value,
    text: String,
    pass: Option<bool>,
}

impl Outcome {
    fn json(&self) -> Value {
        let mut v = json!({ "command": self.command, "n": self.n, "payload": self.payload });
        if let Some(pass) = self.pass {
            v["pass"] = json!(pass);
        }
        v
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn check_n(n: usize, max: usize) -> Result<(), Failure> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Failure::usage(format!("n must be in 1..={max}, got {n}")))
    }
}

fn parse_tree(n: usize, text: &str) -> Result<SpanningTree, Failure> {
    Ok(SpanningTree::parse(n, text)?)
}

fn selected_trees(n: usize, tree: Option<&str>) -> Result<Vec<SpanningTree>, Failure> {
    match tree {
        Some(t) => Ok(vec![parse_tree(n, t)?]),
        None => Ok(enumerate_spanning_trees(n)?),
    }
}

fn coefficient_map_json(map: &std::collections::BTreeMap<Permutation, Rational>) -> Value {
    Value::Array(
        map.iter()
            .map(|(s, c)| json!({ "perm": s.to_string(), "c": c.to_string() }))
            .collect(),
    )
}

fn format_expansion(map: &std::collections::BTreeMap<Permutation, Rational>) -> String {
    if map.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (s, c)) in map.iter().enumerate() {
        let neg = *c < Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let sign = match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let coef = if mag == Rational::from_integer(1.into()) { String::new() } else { format!("{mag}·") };
        let _ = write!(out, "{sign}{coef}χ[{s}]");
    }
    out
}

fn cmd_enumerate(n: usize) -> Result<Outcome, Failure> {
    check_n(n, 6)?;
    let trees = enumerate_spanning_trees(n)?;
    let expected = (n + 1).pow(n as u32 - 1);
    let mut text = String::new();
    let rows: Vec<Value> = trees
        .iter()
        .map(|t| {
            let path = t.as_path();
            let ext = count_linear_extensions(t);
            let _ = writeln!(
                text,
                "{:<24} d={} ext={:<4} {}",
                t.to_string(),
                t.distortion(),
                ext,
                path.as_ref().map(|s| format!("path [{s}]")).unwrap_or_default()
            );
            json!({
                "tree": t.to_string(),
                "distortion": t.distortion(),
                "path": path.map(|s| s.to_string()),
                "extensions": ext as u64,
            })
        })
        .collect();
    let paths = trees.iter().filter(|t| t.as_path().is_some()).count();
    let pass = trees.len() == expected;
    let _ = writeln!(
        text,
        "{} trees ((n+1)^(n-1) = {expected}: {}), {paths} path trees",
        trees.len(),
        if pass { "ok" } else { "MISMATCH" }
    );
    Ok(Outcome {
        command: "enumerate",
        n,
        payload: json!({ "trees": rows, "count": trees.len(), "expected": expected, "paths": paths }),
        text,
        pass: Some(pass),
    })
}

fn cmd_decompose(n: usize, tree: &str) -> Result<Outcome, Failure> {
    check_n(n, 9)?;
    let t = parse_tree(n, tree)?;
    let d = decompose(&t);
    let compat: Vec<Value> = linear_extensions(&t)
        .iter()
        .map(|s| json!({ "perm": s.to_string(), "distortion": path_tree(s).distortion() }))
        .collect();
    let mut payload = d.to_json();
    payload["distortion"] = json!(t.distortion());
    payload["compatible"] = Value::Array(compat);
    let mut text = format!("tree {t}  d(T) = {}\nχ_T = {}\n", t.distortion(), format_expansion(&d.coefficients));
    for s in d.support() {
        let _ = writeln!(text, "  [{s}]  d(T_s) = {}", path_tree(s).distortion());
    }
    Ok(Outcome {
        command: "decompose",
        n,
        payload,
        text,
        pass: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    g: &Global,
    n: usize,
    tree: Option<&str>,
    samples: usize,
    sampling: SamplingArg,
    points_file: Option<&PathBuf>,
    mutate: bool,
) -> Result<Outcome, Failure> {
    check_n(n, 5)?;
    let trees = selected_trees(n, tree)?;
    let points = match points_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let pts = parse_point_list(&text)?;
            if let Some(p) = pts.iter().find(|p| p.dim() != n) {
                return Err(Failure::usage(format!("point {p} is not in dimension {n}")));
            }
            pts
        }
        None => {
            let sampling = match sampling {
                SamplingArg::Uniform => Sampling::Uniform,
                SamplingArg::TreeCones => Sampling::TreeCones,
            };
            sample_points(n, g.seed, g.bound, samples, sampling)?
        }
    };
    let reports: Vec<VerificationReport> = trees
        .par_iter()
        .map(|t| {
            let mut d = decompose(t);
            if mutate {
                let first = d.support().next().cloned();
                if let Some(s) = first {
                    let c = d.coefficient(&s);
                    d.set(s, -c);
                }
            }
            verify_decomposition(t, &d, &points)
        })
        .collect::<Result<_, Error>>()?;
    let failing = reports.iter().filter(|r| !r.pass()).count();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "{:<5} {:<24} {} points, {} in cone, {} failures",
            if r.pass() { "PASS" } else { "FAIL" },
            r.tree.to_string(),
            r.points,
            r.target_hits,
            r.failures.len()
        );
    }
    let _ = writeln!(text, "{} trees, {failing} failing", reports.len());
    let payload = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({
            "trees": reports.len(),
            "failing": failing,
            "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        })
    };
    Ok(Outcome {
        command: "verify",
        n,
        payload,
        text,
        pass: Some(failing == 0),
    })
}

fn cmd_dim(g: &Global, n: usize, points: Option<usize>) -> Result<Outcome, Failure> {
    check_n(n, 4)?;
    let count = points.unwrap_or(4 * factorial(n));
    let geo = space_dimension_with_bound(n, g.seed, count, g.bound)?;
    let sym = polyalg::soc_dimension(n)?;
    let fact = factorial(n);
    let pass = geo.rank == fact && sym == fact && geo.stable();
    let text = format!(
        "geometric rank {} ({} points; {} on {} points: {}), symbolic rank {sym}, n! = {fact}\n{}\n",
        geo.rank,
        geo.points,
        geo.doubled_rank,
        2 * geo.points,
        if geo.stable() { "stable" } else { "unstable" },
        if pass { "pass" } else { "FAIL" }
    );
    Ok(Outcome {
        command: "dim",
        n,
        payload: json!({
            "geometric_rank": geo.rank,
            "doubled_rank": geo.doubled_rank,
            "points": geo.points,
            "stable": geo.stable(),
            "symbolic_rank": sym,
            "factorial": fact,
        }),
        text,
        pass: Some(pass),
    })
}

fn cmd_dual(n: usize, perm: &str) -> Result<Outcome, Failure> {
    check_n(n, 5)?;
    let s: Permutation = perm.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    if s.n() != n {
        return Err(Failure::usage(format!("permutation {s} is not in S_{n}")));
    }
    let m = polyalg::dual_for(&s)?;
    let p = polyalg::p_basis(&s);
    let pairing = polyalg::pairing(&p, &m);
    let pass = pairing == Rational::from_integer(1.into());
    Ok(Outcome {
        command: "dual",
        n,
        text: format!("M = {m}\nP = {p}\n<P, M> = {pairing}\n"),
        payload: json!({ "perm": s.to_string(), "M": m.to_string(), "P": p.to_string(), "pairing": pairing.to_string() }),
        pass: Some(pass),
    })
}

fn cmd_crosscheck(g: &Global, n: usize, tree: Option<&str>) -> Result<Outcome, Failure> {
    check_n(n, 4)?;
    let trees = selected_trees(n, tree)?;
    let basis = SymbolicBasis::new(n)?;
    let points = sample_points(n, g.seed, g.bound, 8 * factorial(n), Sampling::TreeCones)?;
    let rows = trees
        .par_iter()
        .map(|t| {
            let formula = decompose(t).coefficients;
            let geometric = solve_coefficients_with_points(t, &points)?;
            let symbolic = basis.crosscheck(t)?;
            Ok((t, formula, geometric, symbolic))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut text = String::new();
    let mut all_pass = true;
    let entries: Vec<Value> = rows
        .iter()
        .map(|(t, f, geo, sym)| {
            let pass = f == geo && f == sym;
            all_pass &= pass;
            let _ = writeln!(text, "{:<5} {:<24} {}", if pass { "PASS" } else { "FAIL" }, t.to_string(), format_expansion(f));
            if !pass {
                let _ = writeln!(text, "      geometric {}\n      symbolic  {}", format_expansion(geo), format_expansion(sym));
            }
            json!({
                "tree": t.to_string(),
                "formula": coefficient_map_json(f),
                "geometric": coefficient_map_json(geo),
                "symbolic": coefficient_map_json(sym),
                "pass": pass,
            })
        })
        .collect();
    let _ = writeln!(text, "{} trees, {}", rows.len(), if all_pass { "all three routes agree" } else { "MISMATCH" });
    Ok(Outcome {
        command: "crosscheck",
        n,
        payload: json!({ "trees": entries }),
        text,
        pass: Some(all_pass),
    })
}

fn cmd_figure(n: usize, tree: Option<&str>, out: Option<&PathBuf>) -> Result<Outcome, Failure> {
    if n != 2 && n != 3 {
        return Err(Failure::usage("figure data is available for n = 2 and n = 3 only"));
    }
    let trees = selected_trees(n, tree)?;
    let data = figure::figure_data(n, &trees);
    let mut text = String::new();
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&data).expect("json serializes");
        std::fs::write(path, body + "\n")
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(text, "wrote {} cones to {}", trees.len(), path.display());
    } else {
        text = serde_json::to_string_pretty(&data).expect("json serializes") + "\n";
    }
    Ok(Outcome {
        command: "figure",
        n,
        payload: data,
        text,
        pass: None,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Enumerate { n_pos, n } => {
            let n = n_pos.or(*n).ok_or_else(|| Failure::usage("missing n"))?;
            cmd_enumerate(n)
        }
        Command::Decompose { n, tree } => cmd_decompose(*n, tree),
        Command::Verify {
            n,
            tree,
            samples,
            sampling,
            points,
            mutate,
            ..
        } => cmd_verify(g, *n, tree.as_deref(), *samples, *sampling, points.as_ref(), *mutate),
        Command::Dim { n, points } => cmd_dim(g, *n, *points),
        Command::Dual { n, perm } => cmd_dual(*n, perm),
        Command::Crosscheck { n, tree, .. } => cmd_crosscheck(g, *n, tree.as_deref()),
        Command::Figure { n, tree, out } => cmd_figure(*n, tree.as_deref(), out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            match cli.global.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.json()).expect("json serializes")),
                Format::Text => print!("{}", outcome.text),
            }
            if outcome.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
