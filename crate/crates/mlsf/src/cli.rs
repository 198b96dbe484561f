//! Command-line front end: point evaluation, table generation and the
//! identity suite.
//!
//! Exit codes: 0 success, 1 malformed invocation, 2 non-convergence,
//! 3 domain error, 4 suite ran with skips (no failures), 5 suite
//! failures.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classical::{beta_fn, gamma_fn, gauss_2f1, kummer_1f1, HypArgs};
use crate::error::{Error, Result};
use crate::gamma_beta::{ml_beta_p, ml_gamma_mellin, ml_gamma_p, BetaArgs, BetaRepresentation};
use crate::hyp::{ml_1f1, ml_2f1, MLHypPoint, Ml1f1Method, Ml2f1Method};
use crate::ml::{ml3, MLParams};
use crate::plan::parse_plan;
use crate::quad::Estimate;
use crate::report::{CheckStatus, SuiteReport};
use crate::verify::{check_identity, default_plan, run_suite, PlanEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NON_CONVERGENCE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_SKIPS: i32 = 4;
pub const EXIT_FAILURES: i32 = 5;

#[derive(Parser)]
#[command(
    name = "mlsf",
    version,
    about = "Mittag-Leffler generalized gamma, beta and hypergeometric functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Sweep up to two flags over ranges and emit one row per point.
    Table(TableArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

#[derive(Args)]
struct PointFlags {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<u32>,
}

#[derive(Args)]
struct EvalArgs {
    /// One of: ml3, ml-gamma, ml-beta, ml-2f1, ml-1f1, gamma, beta,
    /// 2f1, 1f1, ml-gamma-mellin.
    function: String,
    #[command(flatten)]
    point: PointFlags,
    /// Require the error estimate to fall below `tol * |value|`.
    #[arg(long)]
    tol: Option<f64>,
    /// Evaluation path for ml-2f1 (series, unit, semi-infinite, trig,
    /// tanh) or ml-1f1 (series, direct, reflected).
    #[arg(long)]
    method: Option<String>,
    /// Beta representation (unit, trig, semi-infinite, symmetric, or
    /// affine:<lo>:<hi>).
    #[arg(long)]
    rep: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Function name, as for `eval`.
    function: String,
    /// Swept or fixed flags: a plain number fixes a flag, the form
    /// `start:stop:count` sweeps it (at most two sweeps).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    rep: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to a plan file.
    #[arg(long, conflicts_with = "default")]
    plan: Option<std::path::PathBuf>,
    /// Run the shipped default plan covering the whole catalog.
    #[arg(long)]
    default: bool,
    /// Stop at the first failing check.
    #[arg(long)]
    fail_fast: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
    format: OutputFormat,
}

/// Parse the process arguments and execute; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes, not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Table(args) => cmd_table(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn req(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Domain(format!("missing required flag --{name}")))
}

fn params_of(pt: &PointFlags) -> Result<MLParams> {
    MLParams::new(
        req(pt.alpha, "alpha")?,
        req(pt.beta, "beta")?,
        req(pt.gamma, "gamma")?,
    )
}

fn parse_rep(rep: Option<&str>) -> Result<BetaRepresentation> {
    let Some(rep) = rep else {
        return Ok(BetaRepresentation::UnitInterval);
    };
    if let Some(spec) = rep.strip_prefix("affine:") {
        let parts: Vec<&str> = spec.split(':').collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Domain(format!("invalid affine bound `{s}`")))
        };
        if parts.len() != 2 {
            return Err(Error::Domain(
                "affine representation needs the form affine:<lo>:<hi>".into(),
            ));
        }
        return Ok(BetaRepresentation::Affine {
            lo: parse(parts[0])?,
            hi: parse(parts[1])?,
        });
    }
    match rep {
        "unit" => Ok(BetaRepresentation::UnitInterval),
        "trig" => Ok(BetaRepresentation::Trigonometric),
        "semi-infinite" => Ok(BetaRepresentation::SemiInfinite),
        "symmetric" => Ok(BetaRepresentation::Symmetric),
        other => Err(Error::Domain(format!("unknown representation `{other}`"))),
    }
}

fn parse_2f1_method(method: Option<&str>) -> Result<Option<Ml2f1Method>> {
    Ok(Some(match method {
        None => return Ok(None),
        Some("series") => Ml2f1Method::Series,
        Some("unit") => Ml2f1Method::IntegralUnit,
        Some("semi-infinite") => Ml2f1Method::IntegralSemiInfinite,
        Some("trig") => Ml2f1Method::IntegralTrig,
        Some("tanh") => Ml2f1Method::IntegralTanh,
        Some(other) => return Err(Error::Domain(format!("unknown method `{other}`"))),
    }))
}

fn parse_1f1_method(method: Option<&str>) -> Result<Ml1f1Method> {
    Ok(match method {
        None | Some("series") => Ml1f1Method::Series,
        Some("direct") => Ml1f1Method::IntegralDirect,
        Some("reflected") => Ml1f1Method::IntegralReflected,
        Some(other) => return Err(Error::Domain(format!("unknown method `{other}`"))),
    })
}

/// Evaluate `function` at the flagged point.
fn evaluate(
    function: &str,
    pt: &PointFlags,
    method: Option<&str>,
    rep: Option<&str>,
) -> Result<Estimate> {
    match function {
        "ml3" => Ok(ml3(&params_of(pt)?, req(pt.z, "z")?)),
        "ml-gamma" => ml_gamma_p(req(pt.x, "x")?, req(pt.p, "p")?, &params_of(pt)?),
        "ml-beta" => ml_beta_p(
            &BetaArgs::new(req(pt.x, "x")?, req(pt.y, "y")?, req(pt.p, "p")?)?,
            &params_of(pt)?,
            parse_rep(rep)?,
        ),
        "ml-2f1" => {
            let point = MLHypPoint::new(
                HypArgs::new(req(pt.a, "a")?, req(pt.b, "b")?, req(pt.c, "c")?)?,
                req(pt.z, "z")?,
                req(pt.p, "p")?,
                params_of(pt)?,
            )?;
            let method =
                parse_2f1_method(method)?.unwrap_or_else(|| Ml2f1Method::default_for(point.z));
            ml_2f1(&point, method)
        }
        "ml-1f1" => ml_1f1(
            req(pt.b, "b")?,
            req(pt.c, "c")?,
            req(pt.z, "z")?,
            req(pt.p, "p")?,
            &params_of(pt)?,
            parse_1f1_method(method)?,
        ),
        "gamma" => Ok(Estimate::exact(gamma_fn(req(pt.x, "x")?)?)),
        "beta" => Ok(Estimate::exact(beta_fn(req(pt.x, "x")?, req(pt.y, "y")?)?)),
        "2f1" => gauss_2f1(
            &HypArgs::new(req(pt.a, "a")?, req(pt.b, "b")?, req(pt.c, "c")?)?,
            req(pt.z, "z")?,
        ),
        "1f1" => kummer_1f1(req(pt.b, "b")?, req(pt.c, "c")?, req(pt.z, "z")?),
        "ml-gamma-mellin" => {
            let v = ml_gamma_mellin(req(pt.s, "s")?, &params_of(pt)?)?;
            let mut est = Estimate::exact(v);
            est.err_estimate = 1e-14 * v.abs();
            Ok(est)
        }
        other => Err(Error::Domain(format!("unknown function `{other}`"))),
    }
}

/// 17-significant-digit rendering used by csv output.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_eval(args: &EvalArgs) -> i32 {
    match evaluate(
        &args.function,
        &args.point,
        args.method.as_deref(),
        args.rep.as_deref(),
    ) {
        Ok(est) => {
            match args.format {
                OutputFormat::Csv => {
                    println!("value,err_estimate,evaluations");
                    println!("{},{},{}", num(est.value), num(est.err_estimate), est.evaluations);
                }
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "value": est.value,
                            "err_estimate": est.err_estimate,
                            "evaluations": est.evaluations,
                            "converged": est.converged,
                        })
                    );
                }
                OutputFormat::Markdown => {
                    println!("| value | err_estimate | evaluations |");
                    println!("|---|---|---|");
                    println!(
                        "| {} | {} | {} |",
                        num(est.value),
                        num(est.err_estimate),
                        est.evaluations
                    );
                }
            }
            let tight_enough = args
                .tol
                .map_or(est.converged, |t| est.err_estimate <= t * est.value.abs());
            if tight_enough {
                EXIT_OK
            } else {
                eprintln!("warning: evaluation did not converge to the requested accuracy");
                EXIT_NON_CONVERGENCE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}

/// A table axis: the flag name and its value list.
struct Axis {
    name: &'static str,
    values: Vec<f64>,
    swept: bool,
}

fn parse_axis(name: &'static str, spec: &Option<String>) -> Result<Option<Axis>> {
    let Some(spec) = spec else { return Ok(None) };
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Domain(format!("--{name}: invalid number `{s}`")))
    };
    if let Some((start, rest)) = spec.split_once(':') {
        let (stop, count) = rest
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("--{name}: sweep needs start:stop:count")))?;
        let (start, stop) = (parse(start)?, parse(stop)?);
        let count: usize = count
            .parse()
            .map_err(|_| Error::Domain(format!("--{name}: invalid count `{count}`")))?;
        if count < 1 {
            return Err(Error::Domain(format!("--{name}: count must be >= 1")));
        }
        let values = if count == 1 {
            vec![start]
        } else {
            (0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect()
        };
        Ok(Some(Axis {
            name,
            values,
            swept: count > 1,
        }))
    } else {
        Ok(Some(Axis {
            name,
            values: vec![parse(spec)?],
            swept: false,
        }))
    }
}

fn cmd_table(args: &TableArgs) -> i32 {
    let axes: Result<Vec<Axis>> = [
        parse_axis("alpha", &args.alpha),
        parse_axis("beta", &args.beta),
        parse_axis("gamma", &args.gamma),
        parse_axis("p", &args.p),
        parse_axis("x", &args.x),
        parse_axis("y", &args.y),
        parse_axis("a", &args.a),
        parse_axis("b", &args.b),
        parse_axis("c", &args.c),
        parse_axis("z", &args.z),
        parse_axis("s", &args.s),
    ]
    .into_iter()
    .filter_map(|r| r.transpose())
    .collect();
    let axes = match axes {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if axes.iter().filter(|a| a.swept).count() > 2 {
        eprintln!("error: at most two flags may be swept");
        return EXIT_USAGE;
    }
    // lexicographic order over sweep indices, flags in declaration order
    let mut rows: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in &axes {
        let mut next = Vec::with_capacity(rows.len() * axis.values.len());
        for row in &rows {
            for &v in &axis.values {
                let mut r = row.clone();
                r.push(v);
                next.push(r);
            }
        }
        rows = next;
    }
    let mut records: Vec<(Vec<f64>, Result<Estimate>)> = Vec::with_capacity(rows.len());
    let mut any_ok = false;
    for row in rows {
        let mut pt = PointFlags {
            alpha: None,
            beta: None,
            gamma: None,
            p: None,
            x: None,
            y: None,
            a: None,
            b: None,
            c: None,
            z: None,
            s: None,
            n: None,
        };
        for (axis, &v) in axes.iter().zip(&row) {
            match axis.name {
                "alpha" => pt.alpha = Some(v),
                "beta" => pt.beta = Some(v),
                "gamma" => pt.gamma = Some(v),
                "p" => pt.p = Some(v),
                "x" => pt.x = Some(v),
                "y" => pt.y = Some(v),
                "a" => pt.a = Some(v),
                "b" => pt.b = Some(v),
                "c" => pt.c = Some(v),
                "z" => pt.z = Some(v),
                "s" => pt.s = Some(v),
                _ => unreachable!(),
            }
        }
        let res = evaluate(&args.function, &pt, args.method.as_deref(), args.rep.as_deref());
        any_ok |= res.is_ok();
        records.push((row, res));
    }
    let header: Vec<&str> = axes.iter().map(|a| a.name).collect();
    match args.format {
        OutputFormat::Csv | OutputFormat::Markdown => {
            let md = args.format == OutputFormat::Markdown;
            let (sep, pre, post) = if md { (" | ", "| ", " |") } else { (",", "", "") };
            println!(
                "{pre}{}{}value{sep}err_estimate{sep}status{post}",
                header.join(sep),
                if header.is_empty() { "" } else { sep }
            );
            if md {
                println!("{}", "|---".repeat(header.len() + 3) + "|");
            }
            for (row, res) in &records {
                let mut cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
                match res {
                    Ok(est) => {
                        cells.push(num(est.value));
                        cells.push(num(est.err_estimate));
                        cells.push("ok".to_string());
                    }
                    Err(e) => {
                        cells.push(String::new());
                        cells.push(String::new());
                        cells.push(format!("\"{}\"", e.to_string().replace('"', "'")));
                    }
                }
                println!("{pre}{}{post}", cells.join(sep));
            }
        }
        OutputFormat::Json => {
            let objects: Vec<serde_json::Value> = records
                .iter()
                .map(|(row, res)| {
                    let mut obj = serde_json::Map::new();
                    for (axis, &v) in axes.iter().zip(row) {
                        obj.insert(axis.name.to_string(), serde_json::json!(v));
                    }
                    match res {
                        Ok(est) => {
                            obj.insert("value".into(), serde_json::json!(est.value));
                            obj.insert("err_estimate".into(), serde_json::json!(est.err_estimate));
                            obj.insert("status".into(), serde_json::json!("ok"));
                        }
                        Err(e) => {
                            obj.insert("status".into(), serde_json::json!(e.to_string()));
                        }
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            println!("{}", serde_json::Value::Array(objects));
        }
    }
    if any_ok {
        EXIT_OK
    } else {
        eprintln!("error: no grid point evaluated successfully");
        EXIT_DOMAIN
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let plan: Vec<PlanEntry> = if args.default {
        default_plan()
    } else if let Some(path) = &args.plan {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read plan {}: {e}", path.display());
                return EXIT_USAGE;
            }
        };
        match parse_plan(&text) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    } else {
        eprintln!("error: pass --default or --plan <file>");
        return EXIT_USAGE;
    };
    let suite = if args.fail_fast {
        // sequential execution so the first failure is well-defined
        let mut checks = Vec::new();
        for entry in &plan {
            let report = check_identity(entry.identity, &entry.point, entry.tolerance)
                .unwrap_or_else(|e| {
                    crate::report::CheckReport::skipped(
                        entry.identity,
                        entry.point,
                        entry.tolerance,
                        e.to_string(),
                    )
                });
            let failed = report.status == CheckStatus::Fail;
            checks.push(report);
            if failed {
                break;
            }
        }
        SuiteReport::from_checks(checks)
    } else {
        run_suite(&plan)
    };
    match args.format {
        OutputFormat::Markdown => print!("{}", suite.to_markdown()),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&suite).unwrap()),
        OutputFormat::Csv => {
            println!("identity,status,lhs,rhs,rel_diff,tolerance");
            for c in &suite.checks {
                let opt = |v: Option<f64>| v.map_or(String::new(), num);
                println!(
                    "{},{},{},{},{},{}",
                    c.identity,
                    c.status,
                    opt(c.lhs),
                    opt(c.rhs),
                    opt(c.rel_diff),
                    num(c.tolerance)
                );
            }
        }
    }
    if suite.failed > 0 {
        EXIT_FAILURES
    } else if suite.skipped > 0 {
        EXIT_SKIPS
    } else {
        EXIT_OK
    }
}
