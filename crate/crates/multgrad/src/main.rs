//! Thin command-line front end over the library: every subcommand parses its
//! inputs, calls one library operation and emits the result once.
//!
//! Exit codes: 0 success, 1 verification failure, 2 resource/cap exceeded,
//! 3 numerical precondition violated, 4 infeasible request or unusable input.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use multgrad::error::Error;
use multgrad::gradient::{self, relative_difference};
use multgrad::independence::{self, OrbitSignature};
use multgrad::json::parse_complex;
use multgrad::monomial::{self, UnityPoint};
use multgrad::periodic::{self, Orbit};
use multgrad::polynomial::MonicPoly;
use multgrad::verify;
use multgrad::RunConfig;

#[derive(Parser)]
#[command(name = "multgrad", version, about = "Multiplier gradients of periodic orbits of polynomial maps")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// JSON config file with tolerances/caps; explicit flags win over it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file (atomically) instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Tuple budget before membership scans switch to sampling
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for sampled scans and perturbations
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on explicit polynomial degrees
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Relative rank tolerance for independence tests
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    /// Residual target for accepted roots
    #[arg(long, global = true)]
    root_residual: Option<f64>,
    /// Root-pair distance that flags a multiple root
    #[arg(long, global = true)]
    multiplicity_tol: Option<f64>,
    /// Analytic-vs-difference agreement tolerance
    #[arg(long, global = true)]
    gradient_tol: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of the r-fold composition of a polynomial
    Iterate {
        /// Polynomial JSON file ("-" for stdin)
        #[arg(long)]
        poly: String,
        #[arg(short, long)]
        r: u32,
    },
    /// Periodic orbits of period dividing r, with the square-freeness verdict
    Spectrum {
        #[arg(long)]
        poly: String,
        #[arg(short, long)]
        r: u32,
    },
    /// Gradient of the multiplier of the orbit through a point
    Gradient {
        #[arg(long)]
        poly: String,
        /// Seed point "re,im" near the periodic orbit
        #[arg(long)]
        point: String,
        #[arg(short, long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        /// Base step for the finite-difference method
        #[arg(long, default_value_t = gradient::DEFAULT_FD_STEP)]
        fd_step: f64,
    },
    /// Closed-form gradient at the pure power map, by root-of-unity index
    MonomialGradient {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        r: u32,
        /// Index k of the point exp(2 pi i k / (n^r - 1))
        #[arg(short, long, conflicts_with = "zero")]
        index: Option<u64>,
        /// The distinguished fixed point 0 instead of a root of unity
        #[arg(long)]
        zero: bool,
    },
    /// Canonical orbit representatives of z -> z^n on the period-r locus
    Orbits {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        r: u32,
    },
    /// Exact-period point count and orbit count for a generic degree-n map
    Nu {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        m: u32,
    },
    /// Membership scan: are all orbit-choice gradient tuples independent?
    Z0 {
        #[arg(long)]
        poly: String,
        /// Comma-separated exact periods, e.g. "2,3"
        #[arg(long)]
        periods: String,
        /// Adjoin the distinguished fixed-point gradient at 0
        #[arg(long)]
        include_zero: bool,
    },
    /// Independence sweep over exact cyclotomic orbits at g = x^n
    Theorem31 {
        #[arg(short, long)]
        n: u32,
        #[arg(long)]
        periods: String,
        #[arg(long)]
        include_zero: bool,
    },
    /// Does membership survive random coefficient perturbations?
    OpennessProxy {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        periods: String,
        #[arg(long)]
        include_zero: bool,
        #[arg(long, default_value_t = 1e-8)]
        epsilon: f64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Run the built-in verification suite
    VerifyPaper {
        /// Run a single named check
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Analytic,
    Fd,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegreeCapExceeded { .. } | Error::Overflow(_) => 2,
            Error::NoConvergence { .. }
            | Error::AmbiguousGrouping { .. }
            | Error::SimpleRootViolation { .. }
            | Error::NewtonDivergence { .. }
            | Error::IllConditioned { .. } => 3,
            Error::NotInZ { .. } | Error::SignatureInfeasible { .. } | Error::InvalidInput(_) => 4,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_config(opts: &GlobalOpts) -> Result<RunConfig, Failure> {
    let mut cfg = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(4, format!("cannot read config {path:?}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::new(4, format!("malformed config {path:?}: {e}")))?
        }
        None => RunConfig::default(),
    };
    if let Some(v) = opts.budget {
        cfg.budget = v;
    }
    if opts.seed.is_some() {
        cfg.seed = opts.seed;
    }
    if let Some(v) = opts.degree_cap {
        cfg.degree_cap = v;
    }
    if let Some(v) = opts.rank_tol {
        cfg.rank_tol = v;
    }
    if let Some(v) = opts.root_residual {
        cfg.root_residual = v;
    }
    if let Some(v) = opts.multiplicity_tol {
        cfg.multiplicity_tol = v;
    }
    if let Some(v) = opts.gradient_tol {
        cfg.gradient_tol = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_poly(source: &str) -> Result<MonicPoly, Failure> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new(4, format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(Path::new(source))
            .map_err(|e| Failure::new(4, format!("cannot read {source}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::new(4, format!("malformed polynomial: {e}")))
}

fn parse_periods(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| Failure::new(4, format!("bad period {part:?}: {e}")))
        })
        .collect()
}

fn emit(opts: &GlobalOpts, body: String) -> Result<(), Failure> {
    match &opts.output {
        None => {
            println!("{body}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().unwrap_or_else(|| Path::new("."));
            let tmp = dir.join(format!(
                ".{}.tmp",
                path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
            ));
            std::fs::write(&tmp, body.as_bytes())
                .and_then(|()| std::fs::rename(&tmp, path))
                .map_err(|e| Failure::new(4, format!("cannot write {path:?}: {e}")))
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

fn complex_cell(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn entries_line(entries: &[Complex64]) -> String {
    let body: Vec<String> = entries
        .iter()
        .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
        .collect();
    format!("({})", body.join(", "))
}

fn gradient_csv(label: &str, entries: &[Complex64]) -> String {
    let mut out = String::from("index,re,im,source\n");
    for (i, z) in entries.iter().enumerate() {
        out.push_str(&format!("{i},{},{},{label}\n", z.re, z.im));
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let cfg = load_config(&cli.global)?;
    let format = cli.global.format;
    let reject_csv = |what: &str| -> Result<(), Failure> {
        if format == Format::Csv {
            return Err(Failure::new(
                4,
                format!("csv output is not defined for {what}; use --format json"),
            ));
        }
        Ok(())
    };

    let body = match &cli.command {
        Command::Iterate { poly, r } => {
            reject_csv("iterate")?;
            let g = read_poly(poly)?;
            // emit in the shared monic schema so the output pipes back in
            let iterate = g.iterate(*r, cfg.degree_cap)?.to_monic()?;
            match format {
                Format::Human => format!(
                    "degree {} composition of a degree-{} map",
                    iterate.degree(),
                    g.degree(),
                ),
                _ => to_json(&iterate),
            }
        }
        Command::Spectrum { poly, r } => {
            reject_csv("spectrum")?;
            let g = read_poly(poly)?;
            let spectrum = periodic::periodic_spectrum(&g, *r, &cfg)?;
            match format {
                Format::Human => {
                    let mut lines = vec![format!(
                        "r = {}: {} orbits over {} points; square-free: {} (min separation {:.3e})",
                        spectrum.r,
                        spectrum.orbits.len(),
                        spectrum.point_count(),
                        spectrum.in_znr,
                        spectrum.min_separation
                    )];
                    for orbit in &spectrum.orbits {
                        lines.push(format!(
                            "  period {}: rep {} multiplier {}",
                            orbit.exact_period(),
                            complex_cell(orbit.representative()),
                            complex_cell(orbit.multiplier())
                        ));
                    }
                    lines.join("\n")
                }
                _ => to_json(&spectrum),
            }
        }
        Command::Gradient {
            poly,
            point,
            r,
            method,
            fd_step,
        } => {
            let g = read_poly(poly)?;
            let seed = parse_complex(point).map_err(|e| Failure::new(4, e))?;
            let orbit = Orbit::locate(&g, seed, *r)?;
            match method {
                Method::Analytic => {
                    let grad = gradient::multiplier_gradient(&g, &orbit, *r)?;
                    match format {
                        Format::Csv => gradient_csv("analytic", grad.entries()),
                        Format::Human => format!(
                            "orbit rep {} period {}: gradient {}",
                            complex_cell(grad.orbit_rep()),
                            grad.period(),
                            entries_line(grad.entries())
                        ),
                        Format::Json => to_json(&grad),
                    }
                }
                Method::Fd => {
                    let grad = gradient::finite_difference_gradient(&g, &orbit, *r, *fd_step)?;
                    match format {
                        Format::Csv => gradient_csv("finite_difference", grad.entries()),
                        Format::Human => format!(
                            "orbit rep {} period {}: difference gradient {}",
                            complex_cell(grad.orbit_rep()),
                            grad.period(),
                            entries_line(grad.entries())
                        ),
                        Format::Json => to_json(&grad),
                    }
                }
                Method::Both => {
                    let analytic = gradient::multiplier_gradient(&g, &orbit, *r)?;
                    let fd = gradient::finite_difference_gradient(&g, &orbit, *r, *fd_step)?;
                    let rel = relative_difference(analytic.entries(), fd.entries());
                    match format {
                        Format::Csv => {
                            let mut out = gradient_csv("analytic", analytic.entries());
                            for (i, z) in fd.entries().iter().enumerate() {
                                out.push_str(&format!(
                                    "{i},{},{},finite_difference\n",
                                    z.re, z.im
                                ));
                            }
                            out
                        }
                        Format::Human => format!("relative discrepancy {rel:.3e}"),
                        Format::Json => to_json(&json!({
                            "analytic": analytic,
                            "finite_difference": fd,
                            "relative_discrepancy": rel,
                        })),
                    }
                }
            }
        }
        Command::MonomialGradient { n, r, index, zero } => {
            let point = if *zero {
                UnityPoint::zero(*n, *r)?
            } else {
                let index = index.ok_or_else(|| {
                    Failure::new(4, "either --index or --zero must be given")
                })?;
                UnityPoint::new(*n, *r, index)?
            };
            let grad = monomial::gradient_at(&point, *r)?;
            match format {
                Format::Csv => gradient_csv("closed_form", grad.entries()),
                Format::Human => format!(
                    "point index {} (period {}): gradient {}",
                    grad.point().index(),
                    grad.point().exact_period(),
                    entries_line(grad.entries())
                ),
                Format::Json => to_json(&grad),
            }
        }
        Command::Orbits { n, r } => {
            let orbits = monomial::unity_orbits(*n, *r)?;
            match format {
                Format::Csv => {
                    let mut out = String::from("index,modulus,period,zero\n");
                    for p in &orbits {
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            p.index(),
                            p.modulus(),
                            p.exact_period(),
                            p.is_zero()
                        ));
                    }
                    out
                }
                Format::Human => format!(
                    "{} orbit representatives on the period-{r} locus of z -> z^{n}",
                    orbits.len()
                ),
                Format::Json => to_json(&orbits),
            }
        }
        Command::Nu { n, m } => {
            let count = periodic::nu(*n, *m)?;
            let orbits = periodic::orbit_count(*n, *m)?;
            match format {
                Format::Csv => format!("n,m,nu,orbit_count\n{n},{m},{count},{orbits}\n"),
                Format::Human => {
                    format!("nu({n},{m}) = {count} exact-period-{m} points in {orbits} orbits")
                }
                Format::Json => to_json(&json!({
                    "n": n, "m": m, "nu": count, "orbit_count": orbits,
                })),
            }
        }
        Command::Z0 {
            poly,
            periods,
            include_zero,
        } => {
            reject_csv("z0")?;
            let g = read_poly(poly)?;
            let signature = OrbitSignature::new(parse_periods(periods)?, *include_zero)?;
            let report = independence::z0_membership(&g, &signature, &cfg)?;
            match format {
                Format::Human => format!(
                    "verdict: {:?} after {} choices ({} dependent)",
                    report.verdict,
                    report.choices_tested,
                    report.dependent_choices.len()
                ),
                _ => to_json(&report),
            }
        }
        Command::Theorem31 {
            n,
            periods,
            include_zero,
        } => {
            reject_csv("theorem31")?;
            let signature = OrbitSignature::new(parse_periods(periods)?, *include_zero)?;
            let all_independent =
                independence::all_monomial_tuples_independent(*n, &signature, &cfg)?;
            match format {
                Format::Human => format!("all tested tuples independent: {all_independent}"),
                _ => to_json(&json!({
                    "n": n,
                    "periods": signature.periods,
                    "include_zero_fixed_point": signature.include_zero_fixed_point,
                    "all_independent": all_independent,
                    "budget": cfg.budget,
                    "seed": cfg.seed,
                })),
            }
        }
        Command::OpennessProxy {
            poly,
            periods,
            include_zero,
            epsilon,
            trials,
        } => {
            reject_csv("openness-proxy")?;
            let g = read_poly(poly)?;
            let signature = OrbitSignature::new(parse_periods(periods)?, *include_zero)?;
            let stable = independence::openness_proxy(&g, &signature, *epsilon, *trials, &cfg)?;
            match format {
                Format::Human => format!(
                    "membership stable under {trials} perturbations of size {epsilon:.1e}: {stable}"
                ),
                _ => to_json(&json!({
                    "stable": stable, "epsilon": epsilon, "trials": trials,
                })),
            }
        }
        Command::VerifyPaper { only } => {
            reject_csv("verify-paper")?;
            let summary = verify::run(&cfg, only.as_deref());
            if summary.checks.is_empty() {
                return Err(Failure::new(
                    4,
                    format!(
                        "no check named {:?}; known checks: {}",
                        only.as_deref().unwrap_or(""),
                        verify::CHECK_NAMES.join(", ")
                    ),
                ));
            }
            let body = match format {
                Format::Human => summary
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{} [{:>8.2}s] {} — {}",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.seconds,
                            c.name,
                            c.details
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
                _ => to_json(&summary),
            };
            emit(&cli.global, body)?;
            return Ok(if summary.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    };
    emit(&cli.global, body)?;
    Ok(ExitCode::SUCCESS)
}
