//! `tiling-lab`: command-line front end for tiling-core.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde_json::{json, Value};

use tiling_core::balancer::{self, BalancerError};
use tiling_core::constructions::{self, BottleSpec, ConstructionError, PatternParams, ScaleOverride};
use tiling_core::experiment::{self, csv_field, ExperimentError, ExperimentId, ExperimentSpec, Outcome};
use tiling_core::graph::{parse_graph, to_graph6, to_json};
use tiling_core::scalar::parse_ratio;
use tiling_core::thresholds::{self, MainParams, ThresholdError, ThresholdVerdict};
use tiling_core::tiling::{self, Budget, PerfectOutcome};
use tiling_core::{BigRational, DegreeSequence, Graph, Rational};

const EXIT_ASSERTION: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "tiling-lab", version, about = "Invariants, degree thresholds, constructions and exact tiling search")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit for searches; results may then vary between runs.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// key=value file; entries fill in flags not given on the command line.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
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
    /// Chromatic and divisibility invariants of a pattern graph.
    Describe { graph: String },
    /// Check a degree sequence against one of the threshold conditions.
    CheckDegseq(CheckArgs),
    /// Emit a construction and its certificate.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Perfect or maximum H-tilings, or copy enumeration.
    Tile(TileArgs),
    /// Solve the remainder congruence for a pattern.
    Balance {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        no_trace: bool,
    },
    /// Run a reproducible experiment and emit its report.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConditionArg {
    Main,
    Ay,
    Kothm,
    MinDegree,
    Chvatal,
    Bkt,
    /// Print the threshold curve for the sloped condition instead of checking.
    Curve,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum)]
    condition: ConditionArg,
    /// Comma-separated degrees (any order).
    #[arg(long, conflicts_with = "graph")]
    degrees: Option<String>,
    /// Take the degree sequence of this graph.
    #[arg(long)]
    graph: Option<String>,
    /// Pattern for `kothm`; also supplies h, r and σ(H) for `main`/`curve` when those are omitted.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, default_value = "0")]
    eta: String,
    /// Fraction of n for `min-degree`.
    #[arg(long)]
    bound: Option<String>,
    /// Host order for `curve`.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    /// Complete r-partite bottle, either explicit or the base bottle of a pattern.
    Bottle {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        neck: Option<usize>,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long, conflicts_with_all = ["r", "neck", "width"])]
        pattern: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
        /// With --pattern: modified bottle with this λ and width s.
        #[arg(long, requires = "s")]
        lambda: Option<String>,
        #[arg(long)]
        s: Option<usize>,
        /// Solver-verify the tiling property of the emitted bottle.
        #[arg(long)]
        verify: bool,
    },
    Prop22 {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<usize>,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "stars")]
        c: Option<usize>,
        #[arg(long)]
        stars: Option<usize>,
        /// Also run the anchored-enumeration check for v.
        #[arg(long)]
        verify: bool,
    },
    Prop23 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        neck: usize,
        #[arg(long)]
        width: usize,
        /// Omit n, eta and k to use the smallest feasible instance.
        #[arg(long)]
        eta: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    Prop24 {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TileMode {
    Perfect,
    Max,
    Enumerate,
}

#[derive(Args, Debug)]
struct TileArgs {
    #[arg(long)]
    host: String,
    #[arg(long)]
    pattern: String,
    #[arg(long, value_enum, default_value_t = TileMode::Perfect)]
    mode: TileMode,
    /// Only copies through this vertex (enumerate mode).
    #[arg(long)]
    anchor: Option<usize>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    budget_nodes: Option<u64>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    id: String,
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    /// Also write the report to this path.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failure carrying its exit code.
struct Exit {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Exit {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = if error.is::<BudgetError>() { EXIT_BUDGET } else { EXIT_INFEASIBLE };
        Exit { code, error }
    }
}

#[derive(Debug)]
struct BudgetError;

impl std::fmt::Display for BudgetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("search budget exhausted without a verdict")
    }
}

impl std::error::Error for BudgetError {}

/// What a command produced: the text to print and its exit status.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let argv = match with_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INFEASIBLE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INFEASIBLE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.code)
        }
        Err(Exit { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

/// Appends `--key=value` for each config entry whose flag is not already on
/// the command line. Lines are `key=value`; `#` starts a comment.
fn with_config(mut argv: Vec<String>) -> Result<Vec<String>> {
    let path = argv.iter().enumerate().find_map(|(i, a)| {
        a.strip_prefix("--config=").map(str::to_string).or_else(|| (a == "--config").then(|| argv.get(i + 1).cloned()).flatten())
    });
    let Some(path) = path else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| anyhow!("{path}:{}: expected key=value", lineno + 1))?;
        let flag = format!("--{}", key.trim().replace('_', "-"));
        if !argv.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}="))) {
            let value = value.trim();
            argv.push(if value == "true" { flag } else { format!("{flag}={value}") });
        }
    }
    Ok(argv)
}

/// A graph from a file path, inline JSON, a shorthand such as `K2,2,3`, or graph6.
fn load_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        let body = if first.starts_with('{') { text.trim() } else { first };
        return parse_graph(body).with_context(|| format!("parsing graph in {arg}"));
    }
    parse_graph(arg).with_context(|| format!("parsing graph {arg:?}"))
}

fn rational(s: &str) -> Result<Rational> {
    parse_ratio(s).ok_or_else(|| anyhow!("not a rational number: {s:?}"))
}

fn big_rational(s: &str) -> Result<BigRational> {
    parse_ratio(s).ok_or_else(|| anyhow!("not a rational number: {s:?}"))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn budget(cli: &Cli, nodes: Option<u64>) -> Budget {
    Budget { max_nodes: nodes, time_limit: cli.budget_ms.map(std::time::Duration::from_millis) }
}

fn run(cli: &Cli) -> Result<Output, Exit> {
    match &cli.command {
        Command::Describe { graph } => describe(cli, &load_graph(graph)?),
        Command::CheckDegseq(args) => check_degseq(cli, args),
        Command::Construct { kind } => construct(cli, kind),
        Command::Tile(args) => tile(cli, args),
        Command::Balance { pattern, p, no_trace } => balance(cli, &load_graph(pattern)?, *p, *no_trace),
        Command::Experiment(args) => run_experiment(cli, args),
    }
}

fn key_value_csv(pairs: &[(&str, String)]) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in pairs {
        out.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
    }
    out
}

fn describe(cli: &Cli, g: &Graph) -> Result<Output, Exit> {
    let d = experiment::describe(g);
    let v = serde_json::to_value(&d)?;
    Ok(Output::ok(match cli.format {
        Format::Json => pretty(&v),
        Format::Csv => {
            let pairs: Vec<(&str, String)> = v
                .as_object()
                .expect("description is an object")
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str().map_or_else(|| v.to_string(), str::to_string)))
                .collect();
            key_value_csv(&pairs)
        }
    }))
}

fn degree_sequence(args: &CheckArgs) -> Result<DegreeSequence> {
    match (&args.degrees, &args.graph) {
        (Some(d), None) => {
            let values: Vec<usize> = d
                .split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse().with_context(|| format!("bad degree {s:?}")))
                .collect::<Result<_>>()?;
            Ok(DegreeSequence::new(values)?)
        }
        (None, Some(g)) => Ok(load_graph(g)?.degree_sequence()),
        _ => bail!("give --degrees or --graph"),
    }
}

/// `(h, r, σ)` from explicit flags, falling back to the pattern's `(|H|, χ, σ(H))`.
fn main_shape(args: &CheckArgs) -> Result<(usize, usize, BigRational)> {
    let from_pattern = match &args.pattern {
        Some(p) => {
            let d = experiment::describe(&load_graph(p)?);
            let hcf = d.hcf.ok_or_else(|| anyhow!("pattern has no edges"))?;
            Some((d.order, hcf.chi, hcf.sigma))
        }
        None => None,
    };
    let h = args.h.or(from_pattern.map(|p| p.0)).ok_or_else(|| anyhow!("--h or --pattern required"))?;
    let r = args.r.or(from_pattern.map(|p| p.1)).ok_or_else(|| anyhow!("--r or --pattern required"))?;
    let sigma = match (&args.sigma, from_pattern) {
        (Some(s), _) => big_rational(s)?,
        (None, Some(p)) => Ratio::from_integer(BigInt::from(p.2)),
        (None, None) => bail!("--sigma or --pattern required"),
    };
    Ok((h, r, sigma))
}

fn verdict_output(cli: &Cli, verdict: &ThresholdVerdict<BigInt>) -> Result<Output, Exit> {
    let v = serde_json::to_value(verdict)?;
    let text = match cli.format {
        Format::Json => pretty(&v),
        Format::Csv => {
            let mut out = String::from("condition,passes,index,required,actual\n");
            let cond = v["condition"].as_str().unwrap_or_default();
            match &verdict.first_violation {
                Some(f) => out.push_str(&format!("{cond},false,{},{},{}\n", f.index, f.required, f.actual)),
                None => out.push_str(&format!("{cond},true,,,\n")),
            }
            out
        }
    };
    Ok(Output { text, code: if verdict.passes { 0 } else { EXIT_ASSERTION } })
}

fn check_degseq(cli: &Cli, args: &CheckArgs) -> Result<Output, Exit> {
    let eta = big_rational(&args.eta)?;
    if args.condition == ConditionArg::Curve {
        let (h, r, sigma) = main_shape(args)?;
        let n = match args.n {
            Some(n) => n,
            None => degree_sequence(args).map(|d| d.len()).map_err(|_| anyhow!("--n required for the curve"))?,
        };
        let curve = thresholds::threshold_curve(h, r, &sigma, &eta, n).map_err(threshold_err)?;
        return Ok(Output::ok(match cli.format {
            Format::Csv => thresholds::curve_csv(&curve),
            Format::Json => pretty(&json!({"h": h, "r": r, "sigma": sigma.to_string(), "eta": eta.to_string(), "n": n, "curve": curve})),
        }));
    }
    let dseq = degree_sequence(args)?;
    let verdict = match args.condition {
        ConditionArg::Main => {
            let (h, r, sigma) = main_shape(args)?;
            let p = MainParams::new(h, r, sigma, eta).map_err(threshold_err)?;
            thresholds::check_main_params(&dseq, &p)
        }
        ConditionArg::Ay => thresholds::check_ay_degseq(&dseq, args.r.ok_or_else(|| anyhow!("--r required"))?, &eta).map_err(threshold_err)?,
        ConditionArg::Kothm => {
            let pattern = load_graph(args.pattern.as_deref().ok_or_else(|| anyhow!("--pattern required"))?)?;
            thresholds::check_kothm_dispatch(&dseq, &pattern, &eta).map_err(threshold_err)?
        }
        ConditionArg::MinDegree => {
            let bound = big_rational(args.bound.as_deref().ok_or_else(|| anyhow!("--bound required"))?)?;
            thresholds::check_min_degree(&dseq, &bound).map_err(threshold_err)?
        }
        ConditionArg::Chvatal => thresholds::check_chvatal(&dseq),
        ConditionArg::Bkt => thresholds::check_bkt_conjecture(&dseq, args.r.ok_or_else(|| anyhow!("--r required"))?).map_err(threshold_err)?,
        ConditionArg::Curve => unreachable!("handled above"),
    };
    verdict_output(cli, &verdict)
}

fn threshold_err(e: ThresholdError) -> Exit {
    Exit { code: EXIT_INFEASIBLE, error: e.into() }
}

fn construction_err(e: ConstructionError) -> Exit {
    Exit { code: EXIT_INFEASIBLE, error: e.into() }
}

fn graph_value(g: &Graph) -> Value {
    json!({"graph6": to_graph6(g), "graph": serde_json::from_str::<Value>(&to_json(g)).expect("graph json")})
}

fn construction_output(cli: &Cli, g: &Graph, cert: &constructions::ConstructionCertificate, extra: Value) -> Result<Output, Exit> {
    let code = if cert.recheck(g) { 0 } else { EXIT_ASSERTION };
    let text = match cli.format {
        Format::Json => {
            let mut v = graph_value(g);
            v["certificate"] = serde_json::to_value(cert)?;
            if !extra.is_null() {
                v["checks"] = extra;
            }
            pretty(&v)
        }
        Format::Csv => {
            let mut out = String::from("construction,assertion,holds\n");
            for a in &cert.assertions {
                out.push_str(&format!("{},{},{}\n", cert.construction, csv_field(&a.name), a.claim.check(g)));
            }
            out
        }
    };
    Ok(Output { text, code })
}

fn construct(cli: &Cli, kind: &ConstructKind) -> Result<Output, Exit> {
    match kind {
        ConstructKind::Bottle { r, neck, width, pattern, sigma, lambda, s, verify } => {
            let mut extra = json!({});
            let spec = match (pattern, r, neck, width) {
                (Some(p), None, None, None) => {
                    let h = load_graph(p)?;
                    let d = experiment::describe(&h);
                    let hcf = d.hcf.ok_or_else(|| anyhow!("pattern has no edges"))?;
                    let sigma = match sigma {
                        Some(s) => rational(s)?,
                        None => Ratio::from_integer(hcf.sigma as i64),
                    };
                    let base = constructions::base_bottle_detail(&h, &sigma).map_err(construction_err)?;
                    extra["c_hat"] = json!(base.c_hat);
                    extra["scale"] = json!(base.scale);
                    match (lambda, s) {
                        (Some(l), Some(s)) => {
                            let hat = constructions::modified_bottle(d.order, hcf.chi, &sigma, &rational(l)?, *s).map_err(construction_err)?;
                            if *verify {
                                let found = constructions::modified_bottle_tiling(&hat, &base.spec).map_err(construction_err)?;
                                extra["tiles_by_base_bottle"] = json!(found.is_some());
                                extra["tiling"] = json!(found);
                            }
                            extra["base_bottle"] = serde_json::to_value(base.spec)?;
                            hat
                        }
                        _ => {
                            if *verify {
                                let g = constructions::bottle_graph(&base.spec).map_err(construction_err)?;
                                let found = tiling::perfect_tiling(&g, &h)?;
                                extra["tiles_by_pattern"] = json!(found.is_some());
                                extra["tiling"] = json!(found);
                            }
                            base.spec
                        }
                    }
                }
                (None, Some(r), Some(neck), Some(width)) => BottleSpec::new(*r, *neck, *width).map_err(construction_err)?,
                _ => return Err(anyhow!("give --r, --neck and --width, or --pattern").into()),
            };
            let g = constructions::bottle_graph(&spec).map_err(construction_err)?;
            let failed_verify = [&extra["tiles_by_pattern"], &extra["tiles_by_base_bottle"]].iter().any(|v| **v == json!(false));
            let text = match cli.format {
                Format::Json => {
                    let mut v = graph_value(&g);
                    v["bottle"] = serde_json::to_value(spec)?;
                    v["checks"] = extra;
                    pretty(&v)
                }
                Format::Csv => key_value_csv(&[
                    ("r", spec.r.to_string()),
                    ("neck", spec.neck.to_string()),
                    ("width", spec.width.to_string()),
                    ("graph6", to_graph6(&g)),
                ]),
            };
            Ok(Output { text, code: if failed_verify { EXIT_ASSERTION } else { 0 } })
        }
        ConstructKind::Prop22 { t, sigma, n, c, stars, verify } => {
            let scale = c.zip(*stars).map(|(c, stars)| ScaleOverride { c, stars });
            let (g, cert) = constructions::prop22_graph(t, &rational(sigma)?, *n, scale).map_err(construction_err)?;
            let mut out = construction_output(cli, &g, &cert, Value::Null)?;
            if *verify {
                let claim = constructions::prop22_solver_claim(&g, t).map_err(construction_err)?;
                if !claim.holds {
                    out.code = EXIT_ASSERTION;
                }
                if cli.format == Format::Json {
                    let mut v: Value = serde_json::from_str(&out.text)?;
                    v["checks"] = serde_json::to_value(&claim)?;
                    out.text = pretty(&v);
                } else {
                    out.text.push_str(&format!("prop22,{},{}\n", csv_field(&claim.name), claim.holds));
                }
            }
            Ok(out)
        }
        ConstructKind::Prop23 { r, neck, width, eta, k, n } => {
            let spec = BottleSpec::new(*r, *neck, *width).map_err(construction_err)?;
            let inst = match (eta, n) {
                (Some(eta), Some(n)) => constructions::Prop23Instance { n: *n, eta: rational(eta)?, k: k.unwrap_or(1) },
                (None, None) => constructions::prop23_minimal_instance(&spec)
                    .ok_or_else(|| anyhow!("no feasible instance up to {} vertices", constructions::MAX_VERTICES))?,
                _ => return Err(anyhow!("give both --eta and --n, or neither").into()),
            };
            let (g, cert) = constructions::prop23_graph(&spec, &inst.eta, inst.k, inst.n).map_err(construction_err)?;
            construction_output(cli, &g, &cert, serde_json::to_value(&inst)?)
        }
        ConstructKind::Prop24 { pattern, eta, n } => {
            let params = PatternParams::of(&load_graph(pattern)?).map_err(construction_err)?;
            let (g, cert) = constructions::prop24_graph(&params, &rational(eta)?, *n).map_err(construction_err)?;
            construction_output(cli, &g, &cert, Value::Null)
        }
    }
}

fn tile(cli: &Cli, args: &TileArgs) -> Result<Output, Exit> {
    let g = load_graph(&args.host)?;
    let h = load_graph(&args.pattern)?;
    let budget = budget(cli, args.budget_nodes);
    let (value, code, rows) = match args.mode {
        TileMode::Enumerate => {
            let list = tiling::enumerate_copies(&g, &h, args.anchor, args.cap);
            let rows: Vec<String> = list.copies.iter().map(|c| join(&c.map)).collect();
            (json!({"copies": list.copies, "count": list.copies.len(), "truncated": list.truncated}), 0, rows)
        }
        TileMode::Perfect => {
            let cap = args.cap.unwrap_or(tiling::DEFAULT_COPY_CAP);
            match tiling::perfect_tiling_search(&g, &h, budget, cap)? {
                PerfectOutcome::Found(cert) => {
                    let ok = tiling::verify_certificate(&g, &h, &cert);
                    let rows = cert.copies.iter().map(|c| join(&c.map)).collect();
                    (json!({"status": "found", "certificate": cert, "verified": ok}), if ok { 0 } else { EXIT_ASSERTION }, rows)
                }
                PerfectOutcome::Infeasible => (json!({"status": "none"}), EXIT_ASSERTION, vec![]),
                PerfectOutcome::BudgetExhausted => (json!({"status": "budget_exhausted"}), EXIT_BUDGET, vec![]),
            }
        }
        TileMode::Max => {
            let cap = args.cap.unwrap_or(tiling::DEFAULT_COPY_CAP);
            let best = tiling::max_tiling_with_cap(&g, &h, budget, cap)?;
            let ok = tiling::verify_certificate(&g, &h, &best.certificate);
            let rows = best.certificate.copies.iter().map(|c| join(&c.map)).collect();
            let code = if !ok {
                EXIT_ASSERTION
            } else if !best.optimal {
                EXIT_BUDGET
            } else {
                0
            };
            (
                json!({"copies": best.certificate.size(), "covered": best.certificate.covered.len(), "optimal": best.optimal, "certificate": best.certificate, "verified": ok}),
                code,
                rows,
            )
        }
    };
    let text = match cli.format {
        Format::Json => pretty(&value),
        Format::Csv => {
            let mut out = String::from("copy,map\n");
            for (i, r) in rows.iter().enumerate() {
                out.push_str(&format!("{i},{}\n", csv_field(r)));
            }
            out
        }
    };
    Ok(Output { text, code })
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn balance(cli: &Cli, h: &Graph, p: Option<usize>, no_trace: bool) -> Result<Output, Exit> {
    let (input, mut sol) = balancer::balance_for_graph(h, p).map_err(|e: BalancerError| Exit { code: EXIT_INFEASIBLE, error: e.into() })?;
    let verified = balancer::verify_solution(&sol, &input);
    if no_trace {
        sol.trace = None;
    }
    let text = match cli.format {
        Format::Json => pretty(&json!({
            "mode": sol.mode,
            "h": sol.modulus,
            "p": sol.p,
            "coefficients": sol.terms,
            "a_bar": sol.a_bar,
            "congruence_check": {"residue": sol.residue(), "verified": verified},
            "trace": sol.trace,
        })),
        Format::Csv => {
            let mut out = String::from("profile,indices,value,coefficient\n");
            for t in &sol.terms {
                let profile = t.profile.as_ref().map(|p| join(p.sizes())).unwrap_or_default();
                out.push_str(&format!("{},{},{},{}\n", csv_field(&profile), join(&t.indices.iter().map(|i| i + 1).collect::<Vec<_>>()), t.value, t.coefficient));
            }
            out
        }
    };
    Ok(Output { text, code: if verified { 0 } else { EXIT_ASSERTION } })
}

fn run_experiment(cli: &Cli, args: &ExperimentArgs) -> Result<Output, Exit> {
    let id: ExperimentId = args.id.parse().map_err(|e: ExperimentError| Exit { code: EXIT_INFEASIBLE, error: e.into() })?;
    let mut spec = ExperimentSpec::new(id);
    spec.pattern = args.pattern.as_deref().map(load_graph).transpose()?;
    spec.n = args.n;
    spec.eta = args.eta.as_deref().map(rational).transpose()?;
    spec.sigma = args.sigma.as_deref().map(rational).transpose()?;
    spec.k = args.k;
    spec.r = args.r;
    spec.seed = cli.seed;
    spec.count = args.count;
    spec.max_order = args.max_order;
    spec.budget_ms = cli.budget_ms;
    spec.budget_nodes = args.budget_nodes;
    spec.timings = args.timings;
    let report = experiment::run_experiment(&spec).map_err(|e| Exit { code: EXIT_INFEASIBLE, error: e.into() })?;
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    if let Some(path) = &args.output {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    let code = match report.status {
        Outcome::Pass | Outcome::Info => 0,
        Outcome::Fail => EXIT_ASSERTION,
        Outcome::Inconclusive => EXIT_BUDGET,
    };
    Ok(Output { text, code })
}
