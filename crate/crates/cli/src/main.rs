//! Command-line front end: probe single closed-form values, dump truncated
//! Hamiltonians, run convergence sweeps to CSV/SVG, and self-test the closed
//! forms against the quadrature oracle.

mod config;
mod output;
mod selftest;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rug::Integer;

use galbox_core::basis::{coeff_dirichlet_exact, coeff_neumann_exact, coeff_periodic_exact};
use galbox_core::error::Error;
use galbox_core::legendre::{norm_assoc_legendre_sqr_exact, AssocLegendreIndex};
use galbox_core::numerics::{PiSum, PrecisionContext};
use galbox_core::operator::{raw_matrix_element_exact, truncated_hamiltonian};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "galbox",
    about = "Galerkin truncations of the particle-in-a-box Laplacian in arbitrary precision",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matrix element <P_l^m, -(P_k^m)''> (exact; --normalized
    /// divides by the norms).
    Element {
        l: u32,
        k: u32,
        m: u32,
        #[arg(long)]
        normalized: bool,
        #[arg(long, default_value_t = 500)]
        digits: u32,
    },
    /// Print the expansion coefficient <P_l^m, psi_j> for the given
    /// eigenfunction family (dirichlet, neumann or periodic).
    Coeff {
        family: String,
        l: u32,
        m: u32,
        j: i64,
        #[arg(long, default_value_t = 500)]
        digits: u32,
    },
    /// Dump the truncated Hamiltonian over the normalized basis as CSV.
    Hamiltonian {
        /// legendre | eigen | augmented-constant | augmented-cosine
        #[arg(long, default_value = "legendre")]
        basis: String,
        #[arg(long, default_value_t = 4)]
        m: u32,
        /// boundary condition for eigenbases
        #[arg(long, default_value = "dirichlet")]
        bc: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        digits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a convergence sweep and write CSV (plus an optional SVG plot).
    Sweep {
        /// JSON config file; flags override its values
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        basis: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        bc: Option<String>,
        #[arg(long)]
        j: Option<i64>,
        /// comma-separated truncation sizes, e.g. 8,16,24
        #[arg(long, value_delimiter = ',')]
        n_values: Option<Vec<usize>>,
        /// comma-separated times (decimals or p/q/pi tokens)
        #[arg(long, value_delimiter = ',')]
        t_values: Option<Vec<String>>,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long)]
        workers: Option<usize>,
        /// CSV output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG plot path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check the closed forms against the quadrature oracle.
    Selftest {
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_)
            | Error::UnsupportedPair(_)
            | Error::UnsupportedTime
            | Error::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            Error::NonConvergence(_)
            | Error::BudgetExceeded(_)
            | Error::DegenerateBasis { .. }
            | Error::SingularTruncation(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

/// Print an exact pi-power sum: exact rationals verbatim, anything else in
/// scientific notation at the working precision.
fn format_pisum(v: &PiSum, digits: u32) -> Result<String, CliError> {
    if v.is_rational() {
        return Ok(v.rational_part().to_string());
    }
    let ctx = PrecisionContext::new(digits)?;
    Ok(v.eval(&ctx).to_scientific(digits as usize))
}

/// Exact square root of a rational if it is a perfect square.
fn exact_sqrt(q: &rug::Rational) -> Option<rug::Rational> {
    if *q < 0 {
        return None;
    }
    let (num, den) = (q.numer().clone(), q.denom().clone());
    if num.is_perfect_square() && den.is_perfect_square() {
        Some(rug::Rational::from((
            Integer::from(num.sqrt_ref()),
            Integer::from(den.sqrt_ref()),
        )))
    } else {
        None
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Element {
            l,
            k,
            m,
            normalized,
            digits,
        } => {
            let raw = raw_matrix_element_exact(l, k, m)?;
            if !normalized {
                println!("{raw}");
                return Ok(());
            }
            let norm_sqr = norm_assoc_legendre_sqr_exact(AssocLegendreIndex::new(l, m)?)
                * norm_assoc_legendre_sqr_exact(AssocLegendreIndex::new(k, m)?);
            match exact_sqrt(&norm_sqr) {
                Some(norm) => println!("{}", raw / norm),
                None => {
                    let ctx = PrecisionContext::new(digits)?;
                    let v = ctx.from_rational(&raw) / ctx.from_rational(&norm_sqr).sqrt();
                    println!("{}", v.to_scientific(digits as usize));
                }
            }
        }
        Command::Coeff {
            family,
            l,
            m,
            j,
            digits,
        } => match family.as_str() {
            "dirichlet" => {
                let j = u32::try_from(j)
                    .map_err(|_| CliError::Usage("dirichlet modes start at j = 1".into()))?;
                println!("{}", format_pisum(&coeff_dirichlet_exact(l, m, j)?, digits)?);
            }
            "neumann" => {
                let j = u32::try_from(j)
                    .map_err(|_| CliError::Usage("neumann modes start at j = 0".into()))?;
                println!("{}", format_pisum(&coeff_neumann_exact(l, m, j)?, digits)?);
            }
            "periodic" => {
                let (re, im) = coeff_periodic_exact(l, m, j)?;
                match (re.is_zero(), im.is_zero()) {
                    (_, true) => println!("{}", format_pisum(&re, digits)?),
                    (true, false) => println!("{}i", format_pisum(&im, digits)?),
                    (false, false) => println!(
                        "{}+{}i",
                        format_pisum(&re, digits)?,
                        format_pisum(&im, digits)?
                    ),
                }
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown family {other:?} (expected dirichlet, neumann or periodic)"
                )))
            }
        },
        Command::Hamiltonian {
            basis,
            m,
            bc,
            n,
            digits,
            out,
        } => {
            let cfg = RunConfig {
                basis: Some(basis),
                m: Some(m),
                bc: Some(bc),
                ..RunConfig::default()
            };
            let spec = cfg.to_experiment()?.basis;
            let ctx = PrecisionContext::new(digits)?;
            let ham = truncated_hamiltonian(&spec, n, &ctx)?;
            let mut text = String::new();
            for i in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|j| ham.matrix.get(i, j).re.to_scientific(output::CSV_DIGITS))
                    .collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            write_or_print(&text, out.as_deref())?;
        }
        Command::Sweep {
            config,
            basis,
            m,
            bc,
            j,
            n_values,
            t_values,
            digits,
            workers,
            out,
            svg,
        } => {
            let file_cfg = match config {
                Some(path) => RunConfig::from_json(&fs::read_to_string(&path)?)?,
                None => RunConfig::default(),
            };
            let flag_cfg = RunConfig {
                basis,
                m,
                bc,
                j,
                n_values,
                t_values,
                digits,
                workers,
                out,
                svg,
            };
            let cfg = file_cfg.merged_with(flag_cfg);
            let spec = cfg.to_experiment()?;
            let ctx = PrecisionContext::new(spec.digits)?;

            let (rows, failures) = match cfg.workers() {
                Some(workers) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(workers)
                        .build()
                        .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
                    pool.install(|| galbox_core::experiment::run_sweep_partial(&spec))?
                }
                None => galbox_core::experiment::run_sweep_partial(&spec)?,
            };

            let csv = output::render_csv(&rows, &ctx, !failures.is_empty());
            write_or_print(&csv, cfg.out.as_deref())?;
            if let Some(path) = &cfg.svg {
                fs::write(path, output::render_svg(&rows, &ctx))?;
            }
            if !failures.is_empty() {
                for (n, e) in &failures {
                    eprintln!("sweep point n = {n} failed: {e}");
                }
                return Err(CliError::Numerical(format!(
                    "{} sweep point(s) failed; partial CSV flushed with # INCOMPLETE trailer",
                    failures.len()
                )));
            }
        }
        Command::Selftest { digits } => {
            selftest::run(digits).map_err(CliError::Numerical)?;
        }
    }
    Ok(())
}

fn write_or_print(text: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
