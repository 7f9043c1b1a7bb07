//! `swt`: count and classify swallowtail singularities of polynomial maps.

mod mapfile;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use swt_core::numoracle::{oracle_count, solve_with_retries, OracleTolerances};
use swt_core::polycore::Rational;
use swt_core::singularity::classify_point;
use swt_core::traceforms::{
    analyze, check_genericity, count_from, Analysis, CountOptions, CountReport, CountStatus,
};
use swt_core::MonomialOrder;

use mapfile::MapFile;

const EXIT_GENERICITY: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_INFINITE: u8 = 4;
const EXIT_DISAGREE: u8 = 5;
const EXIT_NUMERIC: u8 = 6;
const EXIT_USAGE: u8 = 64;

const SOLVE_ATTEMPTS: usize = 4;

#[derive(Parser)]
#[command(
    name = "swt",
    version,
    about = "Signed swallowtail counts of polynomial maps R^3 -> R^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Map file with lines `f1 = ...`, `f2 = ...`, `f3 = ...` and optionally `u = ...`
    file: PathBuf,
    /// Monomial order for the Gröbner computations
    #[arg(long, default_value = "degrevlex")]
    order: MonomialOrder,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the genericity ideals I1, I2, I3 are the whole ring
    Genericity {
        #[command(flatten)]
        common: Common,
    },
    /// Count swallowtails exactly from trace-form signatures
    Count {
        #[command(flatten)]
        common: Common,
        /// Also count inside the region {u > 0} given by the `u` key
        #[arg(long)]
        region: bool,
        /// Weights for the pairs 12, 13, 23
        #[arg(long, value_parser = parse_triple, default_value = "1,1,1")]
        alphas: [Rational; 3],
        /// Seed for replacement weights when a form is degenerate
        #[arg(long, env = "SWT_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Classify a single point
    Classify {
        #[command(flatten)]
        common: Common,
        /// Point as three comma-separated rationals
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        point: [Rational; 3],
    },
    /// Locate the swallowtails numerically and compare with the exact count
    Solve {
        #[command(flatten)]
        common: Common,
        /// Relative residual a point must reach
        #[arg(long, default_value_t = OracleTolerances::default().residual)]
        tol: f64,
        /// Relative imaginary part below which an eigenvalue is real
        #[arg(long, default_value_t = OracleTolerances::default().imag)]
        imag_tol: f64,
        /// Relative distance under which points are merged
        #[arg(long, default_value_t = OracleTolerances::default().cluster)]
        cluster_tol: f64,
        /// Relative size of g below which a sign is unresolved
        #[arg(long, default_value_t = OracleTolerances::default().sign)]
        sign_tol: f64,
        /// Seed for the random combination of multiplication matrices
        #[arg(long, env = "SWT_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn parse_triple(s: &str) -> Result<[Rational; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated rationals, got `{s}`"
        ));
    }
    let mut out: [Rational; 3] = Default::default();
    for (slot, part) in out.iter_mut().zip(&parts) {
        let r: Rational = part
            .strip_prefix('+')
            .unwrap_or(part)
            .parse()
            .map_err(|_| format!("`{part}` is not a rational number"))?;
        *slot = r;
    }
    Ok(out)
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("swt: {msg}");
    ExitCode::from(EXIT_USAGE)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: serde::Serialize>(value: &T) {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    emit(&text);
}

fn status_code(status: CountStatus) -> u8 {
    match status {
        CountStatus::Ok => 0,
        CountStatus::GenericityFailed(_) => EXIT_GENERICITY,
        CountStatus::DegenerateForm(_) => EXIT_DEGENERATE,
        CountStatus::InfiniteDimensional => EXIT_INFINITE,
    }
}

fn exact_count(
    analysis: &Analysis,
    region: Option<&swt_core::Polynomial>,
    alphas: &[Rational; 3],
    order: MonomialOrder,
    seed: u64,
) -> Result<CountReport, ExitCode> {
    let opts = CountOptions {
        order,
        seed,
        ..CountOptions::default()
    };
    count_from(analysis, region, alphas, &opts).map_err(usage)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Genericity { common } => {
            let file = match MapFile::read(&common.file) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            let g = &check_genericity(&file.map, common.order);
            if common.json {
                print_json(&render::GenericityJson::from(g));
            } else {
                emit(&render::genericity_text(g));
            }
            ExitCode::from(if g.passed() { 0 } else { EXIT_GENERICITY })
        }
        Command::Count {
            common,
            region,
            alphas,
            seed,
        } => {
            if alphas.iter().any(Signed::is_negative) || alphas.iter().all(Zero::is_zero) {
                return usage("alphas must be non-negative with at least one positive");
            }
            let file = match MapFile::read(&common.file) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            let u = match (region, &file.region) {
                (true, None) => return usage("--region needs a `u = ...` line in the map file"),
                (true, Some(u)) => Some(u),
                (false, _) => None,
            };
            let analysis = analyze(&file.map, common.order);
            let report = match exact_count(&analysis, u, &alphas, common.order, seed) {
                Ok(r) => r,
                Err(code) => return code,
            };
            if common.json {
                print_json(&render::CountJson::new(&report, common.order.name(), seed));
            } else {
                emit(&render::count_text(&report));
            }
            ExitCode::from(status_code(report.status))
        }
        Command::Classify { common, point } => {
            let file = match MapFile::read(&common.file) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            let c = classify_point(&file.map, &point);
            if common.json {
                print_json(&render::ClassifyJson::new(&point, &c));
            } else {
                emit(&render::classify_text(&point, &c));
            }
            ExitCode::SUCCESS
        }
        Command::Solve {
            common,
            tol,
            imag_tol,
            cluster_tol,
            sign_tol,
            seed,
        } => {
            let file = match MapFile::read(&common.file) {
                Ok(f) => f,
                Err(e) => return usage(e),
            };
            let tol = OracleTolerances {
                imag: imag_tol,
                residual: tol,
                cluster: cluster_tol,
                sign: sign_tol,
            };
            let analysis = analyze(&file.map, common.order);
            let u = file.region.as_ref();
            let ones: [Rational; 3] = std::array::from_fn(|_| Rational::from_integer(1.into()));
            let exact = match exact_count(&analysis, u, &ones, common.order, seed) {
                Ok(r) => r,
                Err(code) => return code,
            };
            if !exact.is_ok() {
                eprintln!("swt: exact count unavailable: {}", exact.status);
                return ExitCode::from(status_code(exact.status));
            }
            let qa = analysis
                .algebra()
                .expect("status OK implies a finite algebra");
            let gens = swt_core::singularity::generators_from(&analysis.data).swallowtail;
            let points = match solve_with_retries(qa, &gens, &tol, seed, SOLVE_ATTEMPTS) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("swt: {e}");
                    return ExitCode::from(EXIT_NUMERIC);
                }
            };
            let oracle = oracle_count(&analysis.data, &points, u, &tol);
            let agreement = oracle.agreement(&exact);
            if common.json {
                let exact_json = render::CountJson::new(&exact, common.order.name(), seed);
                print_json(&render::SolveJson::new(&oracle, exact_json, &agreement));
            } else {
                emit(&render::solve_text(&oracle, &exact, &agreement));
            }
            ExitCode::from(if agreement.agrees { 0 } else { EXIT_DISAGREE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli)
}
