//! `hc` — command-line interface to the exact harmonic-tensor toolkit.
//!
//! Verbs construct symbolic objects (`state`, `momentum`, `tensor`,
//! `decompose`, `stark`, `resolvent`) or run verification sweeps (`ladder`,
//! `verify`).  Output is a text rendering, JSON with exact `"p/q"` rational
//! strings, or CSV for the numeric comparison tables.
//!
//! Exit codes: 0 on success, 1 when at least one verification line fails,
//! 2 on usage errors.

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hc_core::harmonic::{decompose_power, harmonic_tensor};
use hc_core::hydrogen::{momentum_state, psi_coordinate, RadiusConvention};
use hc_core::numeric::{resolvent, resolvent_series_route, ResolventQuery};
use hc_core::radial::short_display;
use hc_core::stark::{stark_reference, stark_result};

use hc_cli::verify::{self, Line};
use hc_cli::wire::{WireForm, WireResolvent, WireStark, WireState, WireTensor};

const DEFAULT_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "hc",
    version,
    about = "Exact harmonic tensors, Coulomb bound states, and their verification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Emit a coordinate-space bound state as a harmonic-tensor wavefunction.
    State {
        /// Principal quantum number (n ≥ 1).
        #[arg(long)]
        n: u32,
        /// Orbital quantum number (l < n).
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a momentum-space radial state (polynomial over powers of 1+p²).
    Momentum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit the traceless harmonic tensor of the given rank.
    Tensor {
        /// Coordinate dimension (3 or 4).
        #[arg(long)]
        dim: usize,
        /// Tensor rank.
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coefficients of the coordinate-power decomposition into harmonic
    /// tensors with delta symmetrizations.
    Decompose {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the ladder-operator identities on all monomials up to a degree.
    Ladder {
        #[arg(long)]
        dim: usize,
        /// Maximum monomial degree to sweep.
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Second-order response of the circular state: energy and dipole
    /// coefficients with their closed-form references.
    Stark {
        #[arg(long)]
        n: u32,
        /// Magnetic number for the reference formula (defaults to n-1).
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite (or "all").
    Verify {
        /// One of: schrodinger, momentum, tensors, ladders, correspondence,
        /// stark, fock — or "all".
        suite: String,
        /// Upper bound for the swept principal number / rank / degree.
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        /// Sweep bound override (alias for --n-max in single-family runs).
        #[arg(long)]
        n: Option<u32>,
        /// Quadrature level override for the numeric checks.
        #[arg(long)]
        level: Option<u32>,
        /// Worker threads for the numeric sweep (values are unchanged).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Truncated spectral resolvent at a kernel angle, with the two
    /// summation routes compared.
    Resolvent {
        /// Spectral parameter (poles at positive integers are rejected).
        #[arg(long)]
        lambda: f64,
        /// Cosine of the kernel angle.
        #[arg(long)]
        cos: f64,
        /// Truncation order of the spectral sum.
        #[arg(long, default_value_t = 400)]
        terms: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn seed_from_env() -> Result<u64> {
    match std::env::var("HC_SEED") {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .with_context(|| format!("HC_SEED must be an unsigned integer, got {raw:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Render verification lines in the chosen format and report overall success.
fn emit_lines(lines: &[Line], format: Format) -> Result<bool> {
    match format {
        Format::Text => print!("{}", verify::render_text(lines)),
        Format::Json => println!("{}", verify::render_json(lines)?),
        Format::Csv => print!("{}", verify::render_csv(lines)),
    }
    Ok(verify::all_pass(lines))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.verb {
        Verb::State { n, l, format } => {
            let tensor = psi_coordinate(n, l, RadiusConvention::UnitOrbit)?;
            match format {
                Format::Json => {
                    let state = WireState {
                        n,
                        l,
                        convention: "unit".into(),
                        tensor: WireTensor::from_tensor(&tensor),
                    };
                    println!("{}", serde_json::to_string_pretty(&state)?);
                }
                Format::Text => {
                    println!("bound state n={n} l={l} (unit-orbit radius)");
                    print!("{tensor}");
                }
                Format::Csv => bail!("state supports --format text or json"),
            }
            Ok(true)
        }
        Verb::Momentum { n, l, format } => {
            let form = momentum_state(n, l)?;
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&WireForm::from_form(&form))?)
                }
                Format::Text => {
                    println!("momentum radial state n={n} l={l}");
                    println!("{}", short_display(&form));
                }
                Format::Csv => bail!("momentum supports --format text or json"),
            }
            Ok(true)
        }
        Verb::Tensor { dim, rank, format } => {
            let tensor = harmonic_tensor(dim, rank)?;
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&WireTensor::from_tensor(&tensor))?)
                }
                Format::Text => {
                    println!("harmonic tensor d={dim} rank={rank}");
                    print!("{tensor}");
                }
                Format::Csv => bail!("tensor supports --format text or json"),
            }
            Ok(true)
        }
        Verb::Decompose { dim, rank, format } => {
            let coeffs = decompose_power(dim, rank)?;
            match format {
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Out {
                        dim: usize,
                        rank: usize,
                        coefficients: Vec<String>,
                    }
                    let out = Out {
                        dim,
                        rank,
                        coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
                    };
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
                Format::Text => {
                    println!("coordinate-power decomposition d={dim} rank={rank}");
                    for (k, c) in coeffs.iter().enumerate() {
                        println!("  r^{:<2} (delta^{k} block): {c}", 2 * k);
                    }
                }
                Format::Csv => {
                    println!("k,coefficient");
                    for (k, c) in coeffs.iter().enumerate() {
                        println!("{k},{c}");
                    }
                }
            }
            Ok(true)
        }
        Verb::Ladder { dim, n_max, format } => {
            if dim != 3 && dim != 4 {
                bail!("--dim must be 3 or 4");
            }
            let degree = u16::try_from(n_max.min(16)).unwrap_or(16);
            let mut lines = Vec::new();
            for check in hc_core::ladder::identity_report(dim, degree)? {
                lines.push(Line {
                    identity: format!("ladder-{}", check.name),
                    index: format!("d={dim} deg<={degree}"),
                    scale: String::new(),
                    lhs: format!("{} cases", check.cases),
                    rhs: "all pass".into(),
                    rel_error: if check.pass { 0.0 } else { 1.0 },
                    pass: check.pass,
                });
            }
            emit_lines(&lines, format)
        }
        Verb::Stark { n, m, format } => {
            let mut result = stark_result(n)?;
            let reference_m = m.unwrap_or(i64::from(n) - 1);
            result.reference_dipole = stark_reference(n, reference_m)?;
            let consistent = result.dipole_coefficient
                == -(result.e2_coefficient.clone() + result.e2_coefficient.clone())
                && result.dipole_coefficient == result.dipole_closed_form
                && (reference_m != i64::from(n) - 1
                    || result.dipole_closed_form == result.reference_dipole);
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&WireStark::from_result(&result))?)
                }
                Format::Text => {
                    println!("quadratic response of the circular state n={n}");
                    println!("  ansatz coefficients: c1 = {}, c2 = {}", result.c1, result.c2);
                    println!("  e2 = {}  (second-order energy per field squared)", result.e2_coefficient);
                    println!("  polarizability = {}  (dipole per field)", result.dipole_coefficient);
                    println!("  closed form     = {}", result.dipole_closed_form);
                    println!("  reference (m={reference_m}) = {}", result.reference_dipole);
                }
                Format::Csv => bail!("stark supports --format text or json"),
            }
            Ok(consistent)
        }
        Verb::Verify { suite, n_max, n, level, threads, format } => {
            if let Some(t) = threads {
                if t == 0 {
                    bail!("--threads must be at least 1");
                }
                // Ignore the error if a pool already exists: values do not
                // depend on the thread count.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            let seed = seed_from_env()?;
            let bound = n.unwrap_or(n_max);
            let lines = if suite == "all" {
                verify::run_all(bound, level, seed)?
            } else {
                verify::run_suite(&suite, bound, level, seed)?
            };
            emit_lines(&lines, format)
        }
        Verb::Resolvent { lambda, cos, terms, format } => {
            let query = ResolventQuery { cos_angle: cos, lambda, terms };
            let evaluation = resolvent(&query)?;
            let series = resolvent_series_route(&query)?;
            let lines = verify::resolvent_lines(lambda, cos, terms)?;
            match format {
                Format::Json => {
                    let wire = WireResolvent {
                        lambda,
                        cos_angle: cos,
                        terms,
                        smooth_sum: evaluation.smooth_sum,
                        assembled_value: evaluation.assembled_value,
                        tail_bound: evaluation.tail_bound,
                        delta_coefficient: evaluation.delta_coefficient,
                        series_route: series,
                    };
                    println!("{}", serde_json::to_string_pretty(&wire)?);
                }
                Format::Text => {
                    println!("resolvent at lambda={lambda}, cos={cos}, {terms} terms");
                    println!("  smooth sum      = {:.12e}", evaluation.smooth_sum);
                    println!("  assembled value = {:.12e}", evaluation.assembled_value);
                    println!("  tail bound      = {:.3e}", evaluation.tail_bound);
                    println!(
                        "  delta term      = {} x delta(x-y)  (kept symbolic)",
                        evaluation.delta_coefficient
                    );
                    print!("{}", verify::render_text(&lines));
                }
                Format::Csv => print!("{}", verify::render_csv(&lines)),
            }
            Ok(verify::all_pass(&lines))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
