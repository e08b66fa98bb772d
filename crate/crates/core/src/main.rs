use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use bridgewalk::constants::GrowthCounts;
use bridgewalk::decompose::{build_bridge_pair, decompose_hsw, find_nu_walks};
use bridgewalk::enumerate::{count_bridges_by_span, count_walks, Direction, EnumConfig, EnumError, Partial, WalkClass};
use bridgewalk::gf::{bridge_constant_exact, bridge_gfs, threshold_rational, ConstantInterval};
use bridgewalk::graph::{apply_steps, HeightGraph, ModelKind};
use bridgewalk::partitions::{distinct_partitions, hr_ratio_of};
use bridgewalk::verify::{all_pass, run_suite, CheckReport, NU_SEARCH_BOUND};
use bridgewalk::with_model;

#[derive(Parser, Debug)]
#[command(name = "bridgewalk", version, about = "Exact walk enumeration and bridge constants")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true, env = "BRIDGEWALK_WORKERS")]
    workers: Option<usize>,

    /// Write a JSON run manifest (command line, parameters, output digest) to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count walks of one class by length (and optionally by span).
    Count(CountArgs),
    /// Decompose a half-space walk given by its step labels.
    Decompose(DecomposeArgs),
    /// Partitions of an integer into distinct parts.
    Partitions(PartitionArgs),
    /// Exact Grandparent bridge constants from the generating-function recursion.
    GpExact(GpArgs),
    /// Fekete brackets for the connective and bridge constants.
    Constants(ConstantsArgs),
    /// Run the inequality and identity checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CountArgs {
    /// One of z1, z2, z3, t3, gp, honeycomb.
    #[arg(long, value_parser = parse_model)]
    graph: ModelKind,
    /// One of saw, bridge, reversed_bridge, hsw, reversed_hsw.
    #[arg(long, value_parser = parse_class)]
    class: WalkClass,
    /// Largest walk length.
    #[arg(long)]
    n_max: usize,
    /// Split bridge counts by span (bridge and reversed-bridge classes only).
    #[arg(long)]
    spans: bool,
    /// Orbit of the start vertex.
    #[arg(long, default_value_t = 0)]
    orbit: usize,
    /// Soft time limit; an overrun returns a partial table.
    #[arg(long)]
    budget_seconds: Option<f64>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// One of z1, z2, z3, t3, gp, honeycomb.
    #[arg(long, value_parser = parse_model)]
    graph: ModelKind,
    /// Comma-separated step labels, e.g. E,E,N,W.
    #[arg(long)]
    labels: String,
    /// Orbit of the walk's root.
    #[arg(long, default_value_t = 0)]
    orbit: usize,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    /// The integer to partition.
    #[arg(long)]
    a: usize,
    /// Also report ln P_D(A) / (π √(A/3)).
    #[arg(long)]
    ratio: bool,
}

#[derive(Args, Debug)]
struct GpArgs {
    /// Report the reversed constant as the primary result.
    #[arg(long)]
    reversed: bool,
    /// Root interval width is 2^-bits.
    #[arg(long, default_value_t = 64)]
    precision_bits: u32,
    /// Include B_0..B_6 and the threshold rational functions.
    #[arg(long)]
    show_polynomials: bool,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    /// One of z1, z2, z3, t3, gp, honeycomb.
    #[arg(long, value_parser = parse_model)]
    graph: ModelKind,
    /// Largest walk length used for the brackets.
    #[arg(long)]
    n_max: usize,
    /// Soft time limit; an overrun returns a partial table.
    #[arg(long)]
    budget_seconds: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A model name or "all".
    #[arg(long, default_value = "all")]
    graph: String,
    /// Largest walk length checked.
    #[arg(long, default_value_t = 7)]
    n_max: usize,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_class(s: &str) -> Result<WalkClass, String> {
    s.parse()
}

/// Result of a subcommand before formatting.
struct Outcome {
    json: Value,
    csv: String,
    ok: bool,
    model: Option<String>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn budget(seconds: Option<f64>) -> Result<Option<Duration>, CliError> {
    match seconds {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(CliError::Usage(format!("--budget-seconds must be positive (got {s})"))),
    }
}

fn start_vertex<G: HeightGraph>(g: &G, orbit: usize) -> Result<G::Vertex, CliError> {
    g.representatives().get(orbit).cloned().ok_or_else(|| {
        CliError::Usage(format!(
            "{} has {} orbit(s); --orbit {orbit} is out of range",
            g.name(),
            g.orbit_count()
        ))
    })
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn run_count<G: HeightGraph>(g: &G, args: &CountArgs, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    let v = start_vertex(g, args.orbit)?;
    let mut json = json!({
        "graph": g.name(),
        "class": args.class.as_str(),
        "start_orbit": args.orbit,
    });
    let mut csv = String::new();
    let mut partial = None;
    if args.spans {
        let dir = match args.class {
            WalkClass::Bridge => Direction::Forward,
            WalkClass::ReversedBridge => Direction::Reversed,
            other => return Err(CliError::Usage(format!("--spans needs a bridge class, not {other}"))),
        };
        let table = match count_bridges_by_span(g, &v, dir, args.n_max, cfg) {
            Ok(t) => t,
            Err(EnumError::BudgetExceeded { high_water, partial: p }) => match *p {
                Partial::Spans(t) => {
                    partial = Some(high_water);
                    t
                }
                _ => return Ok(partial_outcome(json, g.name())),
            },
            Err(e) => return Err(e.into()),
        };
        let counts: Vec<String> = (0..=table.n_max()).map(|n| table.row_sum(n).to_string()).collect();
        let spans: Vec<Value> = table.entries().map(|(n, a, c)| json!([n, a, c.to_string()])).collect();
        csv.push_str("n,a,count\n");
        for (n, a, c) in table.entries() {
            let _ = writeln!(csv, "{n},{a},{c}");
        }
        json["counts"] = json!(counts);
        json["spans"] = json!(spans);
    } else {
        let table = match count_walks(g, &v, args.class, args.n_max, cfg) {
            Ok(t) => t,
            Err(EnumError::BudgetExceeded { high_water, partial: p }) => match *p {
                Partial::Counts(t) => {
                    partial = Some(high_water);
                    t
                }
                _ => return Ok(partial_outcome(json, g.name())),
            },
            Err(e) => return Err(e.into()),
        };
        csv.push_str("n,count\n");
        for (n, c) in table.counts.iter().enumerate() {
            let _ = writeln!(csv, "{n},{c}");
        }
        json["counts"] = json!(strings(&table.counts));
    }
    if let Some(hw) = partial {
        json["partial"] = json!(true);
        json["high_water"] = json!(hw);
    }
    Ok(Outcome {
        json,
        csv,
        ok: true,
        model: Some(g.name().to_string()),
    })
}

/// Budget ran out before even length 0 finished.
fn partial_outcome(mut json: Value, model: &str) -> Outcome {
    json["counts"] = json!([]);
    json["partial"] = json!(true);
    json["high_water"] = Value::Null;
    Outcome {
        json,
        csv: "n,count\n".into(),
        ok: true,
        model: Some(model.to_string()),
    }
}

fn run_decompose<G: HeightGraph>(g: &G, args: &DecomposeArgs) -> Result<Outcome, CliError> {
    let v = start_vertex(g, args.orbit)?;
    let labels = args
        .labels
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| g.parse_label(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let walk = apply_steps(g, &v, &labels).map_err(|e| CliError::Usage(e.to_string()))?;
    let dec = decompose_hsw(&walk).map_err(|e| CliError::Usage(e.to_string()))?;
    let nu = if g.is_transitive() {
        None
    } else {
        Some(find_nu_walks(g, NU_SEARCH_BOUND)?)
    };
    let pair = build_bridge_pair(g, &walk, nu.as_ref())?;
    let json = json!({
        "graph": g.name(),
        "spans": dec.spans,
        "cuts": dec.cuts,
        "pi_plus_labels": strings(pair.plus.steps()),
        "pi_minus_labels": strings(pair.minus.steps()),
        "nu_used": pair.nu_used,
    });
    let mut csv = String::from("j,span,cut\n");
    for (j, (a, i)) in dec.spans.iter().zip(&dec.cuts).enumerate() {
        let _ = writeln!(csv, "{},{a},{i}", j + 1);
    }
    Ok(Outcome {
        json,
        csv,
        ok: true,
        model: Some(g.name().to_string()),
    })
}

fn run_partitions(args: &PartitionArgs) -> Result<Outcome, CliError> {
    let pd = distinct_partitions(args.a);
    let mut json = json!({ "a": args.a, "count": pd.to_string() });
    let mut csv = String::from(if args.ratio { "a,count,ratio\n" } else { "a,count\n" });
    if args.ratio {
        if args.a == 0 {
            return Err(CliError::Usage("--ratio needs A >= 1".into()));
        }
        let r = hr_ratio_of(args.a, &pd);
        json["ratio"] = json!(format!("{r:.12}"));
        let _ = writeln!(csv, "{},{pd},{r:.12}", args.a);
    } else {
        let _ = writeln!(csv, "{},{pd}", args.a);
    }
    Ok(Outcome {
        json,
        csv,
        ok: true,
        model: None,
    })
}

fn ratio_str(r: &BigRational) -> String {
    r.to_string()
}

fn approx(r: &BigRational) -> String {
    format!("{:.10}", r.to_f64().unwrap_or(f64::NAN))
}

fn constant_json(dir: Direction, c: &ConstantInterval) -> Value {
    let quartic = threshold_rational(dir).integer_numerator();
    json!({
        "direction": dir,
        "quartic_coefficients": strings(&quartic),
        "root_interval": [ratio_str(&c.root.lower), ratio_str(&c.root.upper)],
        "root_certificate": c.root.certificate,
        "constant_interval": [ratio_str(&c.lower), ratio_str(&c.upper)],
        "constant_approx": [approx(&c.lower), approx(&c.upper)],
    })
}

fn run_gp_exact(args: &GpArgs) -> Result<Outcome, CliError> {
    if args.precision_bits < 8 {
        return Err(CliError::Usage("--precision-bits must be at least 8".into()));
    }
    let fwd = bridge_constant_exact(Direction::Forward, args.precision_bits)?;
    let rev = bridge_constant_exact(Direction::Reversed, args.precision_bits)?;
    let (primary, pdir) = if args.reversed {
        (&rev, Direction::Reversed)
    } else {
        (&fwd, Direction::Forward)
    };
    let (mu, mu_dir) = if fwd.lower > rev.upper {
        (&fwd, Direction::Forward)
    } else {
        (&rev, Direction::Reversed)
    };
    let mut json = constant_json(pdir, primary);
    json["forward"] = constant_json(Direction::Forward, &fwd);
    json["reversed"] = constant_json(Direction::Reversed, &rev);
    json["mu"] = json!({
        "from": mu_dir,
        "interval": [ratio_str(&mu.lower), ratio_str(&mu.upper)],
        "approx": [approx(&mu.lower), approx(&mu.upper)],
    });
    if args.show_polynomials {
        for dir in Direction::BOTH {
            let key = match dir {
                Direction::Forward => "bridge_gfs_forward",
                Direction::Reversed => "bridge_gfs_reversed",
            };
            json[key] = json!(strings(&bridge_gfs(6, dir)));
            let t = threshold_rational(dir);
            json[format!("threshold_{}", key.trim_start_matches("bridge_gfs_"))] =
                json!({"numerator": t.numerator().to_string(), "denominator": t.denominator().to_string()});
        }
    }
    let mut csv = String::from("direction,constant_lower,constant_upper\n");
    for (d, c) in [("forward", &fwd), ("reversed", &rev)] {
        let _ = writeln!(csv, "{d},{},{}", approx(&c.lower), approx(&c.upper));
    }
    Ok(Outcome {
        json,
        csv,
        ok: true,
        model: Some("gp".into()),
    })
}

/// Deepens one length at a time until `n_max` or the budget runs out, keeping
/// the deepest complete counts.
fn growth_counts_within<G: HeightGraph>(
    g: &G,
    n_max: usize,
    total: Duration,
    cfg: &EnumConfig,
) -> Result<(GrowthCounts, bool), CliError> {
    let started = Instant::now();
    let mut best = None;
    for n in 1..=n_max {
        let Some(left) = total.checked_sub(started.elapsed()) else {
            break;
        };
        let cfg = EnumConfig {
            budget: Some(left),
            ..*cfg
        };
        match GrowthCounts::compute(g, n, &cfg) {
            Ok(c) => best = Some(c),
            Err(EnumError::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e.into()),
        }
    }
    match best {
        Some(c) => {
            let partial = c.n_max() < n_max;
            Ok((c, partial))
        }
        None => Err(CliError::Failed("time budget exhausted before n = 1 completed".into())),
    }
}

fn run_constants<G: HeightGraph>(g: &G, args: &ConstantsArgs, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    if args.n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    let (counts, partial) = match budget(args.budget_seconds)? {
        None => (GrowthCounts::compute(g, args.n_max, cfg)?, false),
        Some(total) => growth_counts_within(g, args.n_max, total, cfg)?,
    };
    let n = counts.n_max();
    let brackets = vec![
        counts.mu_bracket(n),
        counts.beta_bracket(n, Direction::Forward),
        counts.beta_bracket(n, Direction::Reversed),
    ];
    let mut csv = String::from("quantity,lower,upper,n\n");
    for b in &brackets {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            serde_json::to_value(b.quantity)?.as_str().unwrap_or(""),
            b.lower,
            b.upper,
            n
        );
    }
    let mut json = json!({
        "graph": g.name(),
        "n_max": n,
        "brackets": brackets,
        "heuristic_ratio_estimate": counts.ratio_estimate().map(|r| format!("{r:.6}")),
    });
    if partial {
        json["partial"] = json!(true);
        json["high_water"] = json!(n);
    }
    Ok(Outcome {
        json,
        csv,
        ok: true,
        model: Some(g.name().to_string()),
    })
}

fn run_verify(args: &VerifyArgs, cfg: &EnumConfig) -> Result<Outcome, CliError> {
    let models: Vec<ModelKind> = if args.graph == "all" {
        vec![ModelKind::Z1, ModelKind::Z2, ModelKind::Gp, ModelKind::Honeycomb]
    } else {
        vec![parse_model(&args.graph).map_err(CliError::Usage)?]
    };
    let mut reports: Vec<CheckReport> = Vec::new();
    for kind in models {
        let r = with_model!(kind, |g| run_suite(g, args.n_max, cfg))?;
        reports.extend(r);
    }
    let mut csv = String::from("name,model,range,pass,worst_margin,instances,counterexample\n");
    for r in &reports {
        let _ = writeln!(
            csv,
            "{},{},\"{}\",{},{},{},\"{}\"",
            r.name,
            r.model,
            r.range,
            r.pass,
            r.worst_margin.as_ref().map(|m| m.to_string()).unwrap_or_default(),
            r.instances,
            r.counterexample.clone().unwrap_or_default()
        );
    }
    Ok(Outcome {
        json: serde_json::to_value(&reports)?,
        ok: all_pass(&reports),
        csv,
        model: Some(args.graph.clone()),
    })
}

#[derive(Serialize)]
struct RunManifest {
    command_line: Vec<String>,
    model: Option<String>,
    parameters: String,
    tool_version: &'static str,
    wall_time_seconds: f64,
    output_sha256: String,
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let cfg = EnumConfig {
        workers: cli.workers,
        budget: None,
    };
    match &cli.command {
        Command::Count(a) => {
            let cfg = EnumConfig {
                budget: budget(a.budget_seconds)?,
                ..cfg
            };
            with_model!(a.graph, |g| run_count(g, a, &cfg))
        }
        Command::Decompose(a) => with_model!(a.graph, |g| run_decompose(g, a)),
        Command::Partitions(a) => run_partitions(a),
        Command::GpExact(a) => run_gp_exact(a),
        Command::Constants(a) => with_model!(a.graph, |g| run_constants(g, a, &cfg)),
        Command::Verify(a) => run_verify(a, &cfg),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Csv => outcome.csv,
    };
    print!("{text}");
    if outcome.json.get("partial") == Some(&Value::Bool(true)) {
        eprintln!("warning: time budget exhausted; results are partial");
    }
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            command_line: std::env::args().collect(),
            model: outcome.model,
            parameters: format!("{:?}", cli.command),
            tool_version: env!("CARGO_PKG_VERSION"),
            wall_time_seconds: started.elapsed().as_secs_f64(),
            output_sha256: format!("{:x}", Sha256::digest(text.as_bytes())),
        };
        let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        if let Err(e) = std::fs::write(path, body + "\n") {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
