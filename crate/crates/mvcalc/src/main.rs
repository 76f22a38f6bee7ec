//! `mvcalc`: evaluate, differentiate, and probe multivector curves.
//!
//! Exit codes are part of the interface: 0 success, 1 usage/parse/domain
//! error, 2 law violation or tolerance breach, 3 divergence verdict,
//! 4 inconclusive verdict.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use curve_calculus::{default_fd_step, limit_probe, CurveExpr, ProbeConfig, Verdict};
use expr_dsl::parse_curve;
use mvcalc::checks::{run_check, Law, Tolerances};
use mvcalc::output;

#[derive(Parser)]
#[command(name = "mvcalc", version, about = "Multivector curve calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at a point
    Eval(EvalArgs),
    /// Differentiate an expression (symbolic, dual-number, finite-difference)
    Diff(DiffArgs),
    /// Probe the limit of an expression at a point
    Limit(LimitArgs),
    /// Run a seeded law-checking suite
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Method {
    Sym,
    Ad,
    Fd,
    #[default]
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Sym => "sym",
            Method::Ad => "ad",
            Method::Fd => "fd",
            Method::All => "all",
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Curve expression, e.g. "cos(t) + sin(t)*e12"
    expression: String,
    /// Algebra dimension (1..=12)
    #[arg(long)]
    dim: usize,
    /// Evaluation point λ
    #[arg(long, allow_negative_numbers = true)]
    at: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct DiffArgs {
    expression: String,
    #[arg(long)]
    dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    at: f64,
    #[arg(long, value_enum, default_value_t)]
    method: Method,
    /// Absolute tolerance for the sym/ad comparison
    #[arg(long, default_value_t = 1e-9)]
    atol: f64,
    /// Relative tolerance for the sym/fd comparison
    #[arg(long, default_value_t = 1e-6)]
    rtol: f64,
    /// Central-difference step (default max(1,|λ|)·ε^⅓)
    #[arg(long, allow_negative_numbers = true)]
    fd_step: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct LimitArgs {
    expression: String,
    #[arg(long)]
    dim: usize,
    /// Probe target λ₀
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Convergence tolerance on successive estimates
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Law: leibniz:<wedge|scalar|lcontr|rcontr|geometric>, sum-rule,
    /// chain-rule, cauchy-schwarz, triangle, limit-laws, remainder,
    /// continuity
    law: String,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Master seed (falls back to MVCALC_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Trial dimensions cycle through 1..=dim
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = 1e-9)]
    atol: f64,
    #[arg(long, default_value_t = 1e-6)]
    rtol: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (e.g. `mvcalc ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Diff(args) => cmd_diff(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Check(args) => cmd_check(args),
    };
    ExitCode::from(code)
}

fn parse_or_report(expression: &str, dim: usize) -> Result<CurveExpr, u8> {
    if !(1..=12).contains(&dim) {
        eprintln!("error[dim] dimension {dim} out of range 1..=12");
        return Err(1);
    }
    parse_curve(expression, dim).map_err(|e| {
        eprintln!(
            "error[{}] span {}..{}: {}",
            e.code.name(),
            e.span.start,
            e.span.end,
            e.message
        );
        1
    })
}

fn cmd_eval(args: EvalArgs) -> u8 {
    let curve = match parse_or_report(&args.expression, args.dim) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let value = match curve.eval(args.at) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error[domain] {e}");
            return 1;
        }
    };
    match args.format {
        Format::Json => {
            let config = json!({
                "expression": args.expression,
                "dim": args.dim,
                "at": args.at,
            });
            let envelope = output::envelope("eval", config, output::multivector_json(&value));
            println!("{envelope}");
        }
        Format::Csv => print!("{}", output::multivector_csv(&value)),
        Format::Text => println!("{}", output::multivector_text(&value)),
    }
    0
}

fn cmd_diff(args: DiffArgs) -> u8 {
    if args.atol <= 0.0 || args.rtol <= 0.0 {
        eprintln!("error[usage] tolerances must be positive");
        return 1;
    }
    let curve = match parse_or_report(&args.expression, args.dim) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let step = args.fd_step.unwrap_or_else(|| default_fd_step(args.at));

    let engines: Vec<Method> = match args.method {
        Method::All => vec![Method::Sym, Method::Ad, Method::Fd],
        single => vec![single],
    };
    let mut computed = Vec::new();
    for engine in engines {
        let result = match engine {
            Method::Sym => curve.derivative_symbolic().eval(args.at),
            Method::Ad => curve.derivative_ad(args.at),
            Method::Fd => curve.derivative_fd(args.at, step),
            Method::All => unreachable!(),
        };
        match result {
            Ok(v) => computed.push((engine, v)),
            Err(e) => {
                eprintln!("error[domain] {}: {e}", engine.name());
                return 1;
            }
        }
    }

    if args.method != Method::All {
        let (_, value) = &computed[0];
        match args.format {
            Format::Json => {
                let config = json!({
                    "expression": args.expression,
                    "dim": args.dim,
                    "at": args.at,
                    "method": args.method.name(),
                    "fd_step": step,
                });
                let envelope =
                    output::envelope("diff", config, output::multivector_json(value));
                println!("{envelope}");
            }
            Format::Csv => {
                println!("method,blade,coefficient");
                for (mask, coeff) in value.terms() {
                    println!("{},{},{coeff:?}", args.method.name(), mask.label());
                }
            }
            Format::Text => println!("{}", output::multivector_text(value)),
        }
        return 0;
    }

    let sym = &computed[0].1;
    let ad = &computed[1].1;
    let fd = &computed[2].1;
    let gap_sym_ad = (sym - ad).norm();
    let gap_sym_fd = (sym - fd).norm();
    let gap_ad_fd = (ad - fd).norm();
    let within = gap_sym_ad <= args.atol && gap_sym_fd <= args.rtol * (1.0 + sym.norm());

    match args.format {
        Format::Json => {
            let config = json!({
                "expression": args.expression,
                "dim": args.dim,
                "at": args.at,
                "method": "all",
                "atol": args.atol,
                "rtol": args.rtol,
                "fd_step": step,
            });
            let result = json!({
                "sym": output::multivector_json(sym),
                "ad": output::multivector_json(ad),
                "fd": output::multivector_json(fd),
                "gaps": {
                    "sym_ad": gap_sym_ad,
                    "sym_fd": gap_sym_fd,
                    "ad_fd": gap_ad_fd,
                },
                "within_tolerance": within,
            });
            println!("{}", output::envelope("diff", config, result));
        }
        Format::Csv => {
            println!("method,blade,coefficient");
            for (engine, value) in &computed {
                for (mask, coeff) in value.terms() {
                    println!("{},{},{coeff:?}", engine.name(), mask.label());
                }
            }
        }
        Format::Text => {
            println!("sym: {sym}");
            println!("ad:  {ad}");
            println!("fd:  {fd}");
            println!("gap sym-ad: {gap_sym_ad:e}");
            println!("gap sym-fd: {gap_sym_fd:e}");
            println!("gap ad-fd:  {gap_ad_fd:e}");
            println!("within tolerance: {within}");
        }
    }
    if within {
        0
    } else {
        eprintln!(
            "error[tolerance] sym-ad gap {gap_sym_ad:e} (atol {:e}), sym-fd gap {gap_sym_fd:e} (rtol {:e})",
            args.atol, args.rtol
        );
        2
    }
}

fn cmd_limit(args: LimitArgs) -> u8 {
    let curve = match parse_or_report(&args.expression, args.dim) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if args.tol <= 0.0 {
        eprintln!("error[usage] tolerances must be positive");
        return 1;
    }
    let config = ProbeConfig {
        tol: args.tol,
        ..ProbeConfig::default()
    };
    let report = limit_probe(&curve, args.to, &config);
    match args.format {
        Format::Json => {
            let config_json = json!({
                "expression": args.expression,
                "dim": args.dim,
                "to": args.to,
                "tol": args.tol,
            });
            println!(
                "{}",
                output::envelope("limit", config_json, output::probe_report_json(&report))
            );
        }
        Format::Csv => print!("{}", output::probe_report_csv(&report)),
        Format::Text => print!("{}", output::probe_report_text(&report)),
    }
    match report.verdict {
        Verdict::LimitExists => 0,
        Verdict::Diverges => 3,
        Verdict::Inconclusive => 4,
    }
}

fn cmd_check(args: CheckArgs) -> u8 {
    let Some(law) = Law::parse(&args.law) else {
        eprintln!(
            "error[usage] unknown law `{}`; expected one of leibniz:<wedge|scalar|lcontr|rcontr|geometric>, \
             sum-rule, chain-rule, cauchy-schwarz, triangle, limit-laws, remainder, continuity",
            args.law
        );
        return 1;
    };
    if args.trials < 1 {
        eprintln!("error[usage] trials must be at least 1");
        return 1;
    }
    if args.atol <= 0.0 || args.rtol <= 0.0 {
        eprintln!("error[usage] tolerances must be positive");
        return 1;
    }
    if !(1..=12).contains(&args.dim) {
        eprintln!("error[dim] dimension {} out of range 1..=12", args.dim);
        return 1;
    }
    let seed = args.seed.or_else(env_seed).unwrap_or(0);
    let tol = Tolerances {
        atol: args.atol,
        rtol: args.rtol,
    };
    let summary = run_check(law, args.dim, args.trials, seed, tol);

    match args.format {
        Format::Json => {
            let config = json!({
                "law": summary.law,
                "trials": args.trials,
                "dim": args.dim,
                "seed": seed,
                "atol": args.atol,
                "rtol": args.rtol,
            });
            let failures: Vec<Value> = summary
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "trial": f.trial,
                        "trial_seed": f.trial_seed,
                        "expressions": f.expressions,
                        "lambda": f.lambda,
                        "lhs": output::multivector_json(&f.lhs),
                        "rhs": output::multivector_json(&f.rhs),
                        "gap": f.gap,
                        "detail": f.detail,
                    })
                })
                .collect();
            let result = json!({
                "law": summary.law,
                "trials": summary.trials,
                "failures": failures,
                "failure_count": summary.failures.len(),
                "max_gap": summary.max_gap,
            });
            println!("{}", output::envelope("check", config, result));
        }
        Format::Csv => {
            println!("trial,gap");
            for (trial, gap) in summary.trial_gaps.iter().enumerate() {
                println!("{trial},{gap:?}");
            }
        }
        Format::Text => {
            println!(
                "law={} trials={} seed={} failures={} max_gap={:e}",
                summary.law,
                summary.trials,
                summary.seed,
                summary.failures.len(),
                summary.max_gap
            );
            for f in &summary.failures {
                println!(
                    "  trial {} (seed {}): λ={} gap={:e} {} | {}",
                    f.trial,
                    f.trial_seed,
                    f.lambda,
                    f.gap,
                    f.detail,
                    f.expressions.join(" ; ")
                );
            }
        }
    }
    if summary.failures.is_empty() {
        0
    } else {
        2
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("MVCALC_SEED").ok()?.parse().ok()
}
