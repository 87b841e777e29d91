//! `terracini`: Terracini defects, membership, witness construction, probes
//! and verification suites from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a counterexample or a
//! failed check is found (the witness is in the report), 2 on input errors.

mod report;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use terracini_core::curvekit::file::{parse_curve_json, parse_divisor_json, parse_points, CurveSpec};
use terracini_core::curvekit::{Curve, Divisor, LinearSystem};
use terracini_core::qlinalg::parse_rational;
use terracini_core::searchlab::{
    bitangent_search, coplanar_tangent_locus, emptiness_probe, generic_rank_probe,
    weierstrass_subset_sample, weierstrass_subset_suite, SubsetCaps, Verdict,
};
use terracini_core::suites::{self, SuiteOptions, DEFAULT_SEED};
use terracini_core::terracini::{defect_report, scheme_report};
use terracini_core::witness::{construct, find_rational_fiber, RECIPES};
use terracini_core::Error;

use report::{Envelope, Format, InputDigest, Status, TOOL, VERSION};

#[derive(Parser)]
#[command(name = "terracini", version, about = "Exact Terracini loci of projective curves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "structured")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Hyperplane,
    Canonical,
}

impl From<SystemArg> for LinearSystem {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Hyperplane => LinearSystem::Hyperplane,
            SystemArg::Canonical => LinearSystem::Canonical,
        }
    }
}

#[derive(Args)]
struct CurveArgs {
    /// Curve file (JSON).
    #[arg(long)]
    curve: String,
    /// Linear system; defaults to canonical on hyperelliptic curves and
    /// hyperplane otherwise.
    #[arg(long, value_enum)]
    system: Option<SystemArg>,
}

#[derive(Args)]
struct SetArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Point list, e.g. "0,1" or "(1:0:1);(-1:0:1)" or "0*2".
    #[arg(long, conflicts_with = "divisor", required_unless_present = "divisor")]
    points: Option<String>,
    /// Divisor file (JSON).
    #[arg(long)]
    divisor: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Terracini report of a reduced set S.
    Defect(SetArgs),
    /// Membership of a reduced set S (same report, verdict first).
    Member(SetArgs),
    /// Scheme membership of a curvilinear scheme Z (hyperplane system).
    SchemeMember(SetArgs),
    /// Builds a witness recipe, verifies it and emits its curve file and report.
    Construct {
        /// Recipe name.
        recipe: String,
        /// Recipe parameters as key=value.
        params: Vec<String>,
        /// Also write the curve file here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Seeded probes: emptiness with --x, generic rank with --lengths.
    Probe {
        #[command(flatten)]
        curve: CurveArgs,
        /// Size of the random sets (emptiness probe).
        #[arg(long, conflicts_with = "lengths", required_unless_present = "lengths")]
        x: Option<usize>,
        /// Multiplicities e1,...,es (generic-rank probe).
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<u32>>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Sets checked before the random draws (repeatable point lists).
        #[arg(long)]
        planted: Vec<String>,
    },
    /// Bounded searches.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// Named verification suites.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
}

#[derive(Subcommand)]
enum ScanKind {
    /// Coplanar tangent pairs of a rational curve in P^3.
    Coplanar {
        #[arg(long)]
        curve: String,
    },
    /// Bitangent pairs and hyperflexes of a plane curve.
    Bitangent {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 2)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Subsets of the Weierstrass points of a split hyperelliptic curve.
    Weierstrass {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        x: usize,
        /// x-coordinate of a rational fiber pair to mix in, or `search`.
        #[arg(long)]
        fiber: Option<String>,
        /// Sample this many random subsets instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = SubsetCaps::default().max_g)]
        max_g: usize,
        #[arg(long, default_value_t = SubsetCaps::default().max_x)]
        max_x: usize,
    },
}

#[derive(Subcommand)]
enum SuiteAction {
    /// Lists the suites and their checks.
    List,
    /// Runs a suite, or every suite with `all`.
    Run {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Overrides every trial count of the suite.
        #[arg(long)]
        trials: Option<usize>,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SelfCheck(m) => Failure::Math(format!("self-check failed: {m}")),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(Status, Value), Failure>;

struct Ctx {
    digest: InputDigest,
}

impl Ctx {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
        self.digest.file(path, &bytes);
        String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{path}: not valid UTF-8")))
    }

    fn curve(&mut self, path: &str) -> Result<(CurveSpec, Curve), Failure> {
        let text = self.read(path)?;
        parse_curve_json(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }

    fn set(&mut self, args: &SetArgs, curve: &Curve) -> Result<Divisor, Failure> {
        match (&args.points, &args.divisor) {
            (Some(p), _) => parse_points(p, curve).map_err(|e| Failure::Input(format!("--points: {e}"))),
            (None, Some(path)) => {
                let text = self.read(path)?;
                parse_divisor_json(&text, curve).map_err(|e| Failure::Input(format!("{path}: {e}")))
            }
            (None, None) => Err(Failure::Input("one of --points or --divisor is required".into())),
        }
    }
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn system_for(curve: &Curve, arg: Option<SystemArg>) -> LinearSystem {
    match arg {
        Some(s) => s.into(),
        None if curve.as_hyperelliptic().is_some() => LinearSystem::Canonical,
        None => LinearSystem::Hyperplane,
    }
}

fn ok(v: Value) -> Outcome {
    Ok((Status::Ok, v))
}

fn set_query(ctx: &mut Ctx, args: &SetArgs, verb: &str) -> Outcome {
    let (spec, curve) = ctx.curve(&args.curve.curve)?;
    let s = ctx.set(args, &curve)?;
    let system = system_for(&curve, args.curve.system);
    let report = match verb {
        "scheme-member" => scheme_report(&curve, &s)?,
        _ => defect_report(&curve, system, &s)?,
    };
    let mut out = serde_json::Map::new();
    match verb {
        "member" => {
            out.insert("member".into(), json!(report.member));
        }
        "scheme-member" => {
            out.insert("member_scheme".into(), json!(report.member_scheme));
        }
        _ => {}
    }
    out.insert("curve".into(), json!(spec.name().unwrap_or(curve.kind())));
    out.insert("system".into(), value(&system));
    out.insert("S".into(), json!(s.to_string()));
    out.insert("records".into(), json!([{ "S": s.to_string(), "x": report.x, "dim_v": report.dim_v, "rank": report.rank, "h0_v_minus_2s": report.h0_v_minus_2s, "defect": report.defect, "span_dim": report.span_dim, "member": report.member, "member_scheme": report.member_scheme }]));
    out.insert("report".into(), value(&report));
    ok(Value::Object(out))
}

fn construct_cmd(recipe: &str, params: &[String], out: Option<&str>) -> Outcome {
    let mut args = BTreeMap::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("parameter `{p}` is not key=value")))?;
        args.insert(k.trim().to_string(), v.trim().to_string());
    }
    if !RECIPES.contains(&recipe) {
        return Err(Failure::Input(format!(
            "unknown recipe `{recipe}` (expected one of {})",
            RECIPES.join(", ")
        )));
    }
    let w = construct(recipe, &args)?;
    let spec = CurveSpec::from_curve(&w.curve, Some(w.name.clone()));
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&spec).expect("curve spec serializes") + "\n";
        fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {path}: {e}")))?;
    }
    ok(json!({
        "recipe": value(&w),
        "records": [{ "S": w.divisor.to_string(), "rank": w.report.rank, "defect": w.report.defect, "span_dim": w.report.span_dim, "member": w.report.member, "member_scheme": w.report.member_scheme }],
    }))
}

#[allow(clippy::too_many_arguments)]
fn probe_cmd(
    ctx: &mut Ctx,
    args: &CurveArgs,
    x: Option<usize>,
    lengths: Option<&[u32]>,
    trials: usize,
    seed: u64,
    planted: &[String],
) -> Outcome {
    let (_, curve) = ctx.curve(&args.curve)?;
    let system = system_for(&curve, args.system);
    let result = match (x, lengths) {
        (Some(x), _) => {
            let sets = planted
                .iter()
                .map(|p| parse_points(p, &curve).map_err(|e| Failure::Input(format!("--planted: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            emptiness_probe(&curve, system, x, trials, seed, &sets)?
        }
        (None, Some(l)) => generic_rank_probe(&curve, system, l, trials, seed)?,
        (None, None) => return Err(Failure::Input("one of --x or --lengths is required".into())),
    };
    let status = match result.verdict {
        Verdict::AllPassed => Status::Ok,
        Verdict::CounterexampleFound => Status::CounterexampleFound,
    };
    let mut v = value(&result);
    v["system"] = value(&system);
    v["seed"] = json!(seed);
    Ok((status, v))
}

fn scan_cmd(ctx: &mut Ctx, kind: &ScanKind) -> Outcome {
    match kind {
        ScanKind::Coplanar { curve } => {
            let (_, c) = ctx.curve(curve)?;
            let Curve::Parametric(p) = &c else {
                return Err(Failure::Input(format!(
                    "coplanar scan needs a parametric curve, got {}",
                    c.kind()
                )));
            };
            let l = coplanar_tangent_locus(p)?;
            let mut v = value(&l);
            v["records"] = json!(l
                .hits
                .iter()
                .map(|h| json!({"S": format!("{{{}, {}}}", h.s, h.t), "rank": h.report.rank, "defect": h.report.defect, "member": h.report.member}))
                .collect::<Vec<_>>());
            ok(v)
        }
        ScanKind::Bitangent { curve, trials, seed } => {
            let (_, c) = ctx.curve(curve)?;
            let Curve::Plane(p) = &c else {
                return Err(Failure::Input(format!("bitangent scan needs a plane curve, got {}", c.kind())));
            };
            let f = bitangent_search(p, *trials, *seed)?;
            let mut records: Vec<Value> = f
                .pairs
                .iter()
                .map(|b| json!({"S": format!("{{{}, {}}}", b.p, b.q), "kind": "bitangent", "line": b.line.to_string(), "rank": b.report.rank, "member": b.report.member}))
                .collect();
            records.extend(f.hyperflexes.iter().map(|h| {
                json!({"S": format!("2{}", h.p), "kind": "hyperflex", "line": h.line.to_string(), "rank": h.report.rank, "member": h.report.member_scheme})
            }));
            let mut v = value(&f);
            v["records"] = json!(records);
            ok(v)
        }
        ScanKind::Weierstrass {
            curve,
            x,
            fiber,
            sample,
            seed,
            max_g,
            max_x,
        } => {
            let (_, c) = ctx.curve(curve)?;
            let h = c
                .as_hyperelliptic()
                .ok_or_else(|| Failure::Input(format!("weierstrass scan needs a hyperelliptic curve, got {}", c.kind())))?;
            let fiber_x = match fiber.as_deref() {
                None => None,
                Some("search") => Some(find_rational_fiber(h.f()).ok_or_else(|| {
                    Failure::Input("no rational fiber pair found in the search window".into())
                })?),
                Some(s) => Some(parse_rational(s).map_err(|m| Failure::Input(format!("--fiber: {m}")))?),
            };
            let table = match sample {
                Some(n) => weierstrass_subset_sample(h, *x, *n, *seed)?,
                None => weierstrass_subset_suite(
                    h,
                    *x,
                    SubsetCaps {
                        max_g: *max_g,
                        max_x: *max_x,
                    },
                    fiber_x.as_ref(),
                )?,
            };
            let mut v = value(&table);
            let rows = v["rows"].take();
            if let Some(obj) = v.as_object_mut() {
                obj.remove("rows");
            }
            v["records"] = rows;
            ok(v)
        }
    }
}

fn suite_cmd(action: &SuiteAction) -> Outcome {
    match action {
        SuiteAction::List => ok(json!({"records": suites::manifest()
            .iter()
            .map(|s| json!({"name": s.name, "checks": s.checks.len(), "summary": s.summary}))
            .collect::<Vec<_>>(),
            "suites": value(&suites::manifest())})),
        SuiteAction::Run { name, seed, trials } => {
            let opts = SuiteOptions {
                seed: *seed,
                trials: *trials,
            };
            let names: Vec<&str> = if name == "all" {
                suites::manifest().iter().map(|s| s.name).collect()
            } else {
                vec![name.as_str()]
            };
            let mut reports = Vec::new();
            for n in names {
                reports.push(suites::run(n, opts)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            let status = if passed { Status::Ok } else { Status::CounterexampleFound };
            let checks: Vec<Value> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        json!({"suite": r.suite, "check": c.name, "basis": value(&c.basis), "expected": c.expected, "observed": c.observed, "passed": c.passed})
                    })
                })
                .collect();
            let v = if reports.len() == 1 {
                let mut v = value(&reports[0]);
                v["checks"] = json!(checks);
                v
            } else {
                json!({"passed": passed, "checks": checks, "suites": value(&reports)})
            };
            Ok((status, v))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Defect(_) => "defect",
        Command::Member(_) => "member",
        Command::SchemeMember(_) => "scheme-member",
        Command::Construct { .. } => "construct",
        Command::Probe { .. } => "probe",
        Command::Scan { .. } => "scan",
        Command::Suite { .. } => "suite",
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mut ctx = Ctx {
        digest: InputDigest::new(&argv),
    };
    let verb = command_name(&cli.command);
    let outcome = match &cli.command {
        Command::Defect(a) => set_query(&mut ctx, a, "defect"),
        Command::Member(a) => set_query(&mut ctx, a, "member"),
        Command::SchemeMember(a) => set_query(&mut ctx, a, "scheme-member"),
        Command::Construct { recipe, params, out } => construct_cmd(recipe, params, out.as_deref()),
        Command::Probe {
            curve,
            x,
            lengths,
            trials,
            seed,
            planted,
        } => probe_cmd(&mut ctx, curve, *x, lengths.as_deref(), *trials, *seed, planted),
        Command::Scan { kind } => scan_cmd(&mut ctx, kind),
        Command::Suite { action } => suite_cmd(action),
    };
    match outcome {
        Ok((status, result)) => {
            let env = Envelope {
                tool: TOOL,
                version: VERSION,
                command: verb.into(),
                input_digest: ctx.digest.hex(),
                status,
                result,
            };
            print!("{}", env.render(cli.format));
            match status {
                Status::Ok => ExitCode::SUCCESS,
                Status::CounterexampleFound => ExitCode::from(1),
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
