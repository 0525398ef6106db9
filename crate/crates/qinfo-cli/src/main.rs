//! `qinfo` — command-line front end for the quantum information toolkit.
//!
//! Exit codes: 0 success, 1 failed golden check, 2 usage error (bad flags,
//! malformed or invalid input), 3 I/O error.

mod checks;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qinfo::bits;
use qinfo::classical::{decode_fraction, encode_fraction, transmit_average_with, NoiseModel};
use qinfo::encode::{decode_success_ladder, misalignment_sweep, TableCode};
use qinfo::entropy::entropy_report;
use qinfo::measure::tomography_experiment;
use qinfo::protocols::{run_bb84, run_three_stage};
use qinfo::rng::seeded_stream;
use qinfo::{ComplexMatrix, DensityMatrix, PureState};

/// Default cap on loaded matrix sizes, qubits; override with QINFO_MAX_QUBITS.
const DEFAULT_MAX_QUBITS: usize = qinfo::qcore::MAX_QUBITS;

#[derive(Parser)]
#[command(
    name = "qinfo",
    version,
    about = "Entropy measures, tomography, amplitude-coded messaging and protocol toys for few-qubit systems",
    after_help = "Every command honors --seed: identical invocations produce identical output."
)]
struct Cli {
    /// Master seed for all randomized experiments.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format; tables default to csv, transcripts to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NamedState {
    /// |0><0|
    Zero,
    /// |1><1|
    One,
    /// |+><+|
    Plus,
    /// |-><-|
    Minus,
    /// I/2
    Mixed,
}

impl NamedState {
    fn density(self) -> DensityMatrix {
        match self {
            NamedState::Zero => PureState::basis(1, 0).expect("valid").density(),
            NamedState::One => PureState::basis(1, 1).expect("valid").density(),
            NamedState::Plus => PureState::plus().density(),
            NamedState::Minus => PureState::minus().density(),
            NamedState::Mixed => DensityMatrix::maximally_mixed(1),
        }
    }
}

#[derive(Args)]
struct StateInput {
    /// Path to a density matrix file: { "dim": d, "entries": [[re, im], ...] }.
    #[arg(long, conflicts_with = "state")]
    matrix: Option<PathBuf>,

    /// A built-in single-qubit state.
    #[arg(long, value_enum)]
    state: Option<NamedState>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    /// Basis-misalignment sweep over sender angles.
    Sweep,
    /// Decode success over a doubling ladder of copy budgets.
    Ladder,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseKind {
    Uniform,
    Gaussian,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy report (informational, von Neumann, gap) for a state.
    Entropy(StateInput),

    /// Tomography convergence table over a ladder of copy budgets.
    Tomography {
        #[command(flatten)]
        input: StateInput,

        /// Copies per basis, ascending, e.g. 64,256,1024.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,

        /// Trials per copy budget.
        #[arg(long, default_value_t = 50)]
        trials: u32,
    },

    /// Amplitude-encoding experiments.
    Encode {
        #[arg(long, value_enum, default_value_t = Experiment::Sweep)]
        experiment: Experiment,

        /// Sweep angles in radians (default: 9 steps over [0, pi/2]).
        #[arg(long, value_delimiter = ',')]
        thetas: Option<Vec<f64>>,

        /// Copies per sweep angle.
        #[arg(long, default_value_t = 4096)]
        copies: u64,

        /// Bits per table symbol (ladder).
        #[arg(long, default_value_t = 3)]
        k: u32,

        /// Symbol to decode (ladder); defaults to the worst-case grid point.
        #[arg(long)]
        j: Option<u32>,

        /// Smallest copy budget of the ladder.
        #[arg(long, default_value_t = 16)]
        n_start: u64,

        /// How many times the ladder doubles the budget.
        #[arg(long, default_value_t = 7)]
        doublings: u32,

        /// Decode trials per rung.
        #[arg(long, default_value_t = 200)]
        trials: u32,
    },

    /// Classical noisy-averaging analogue.
    Classical {
        /// Bit string to encode as a binary fraction.
        #[arg(long)]
        bits: String,

        #[arg(long, value_enum, default_value_t = NoiseKind::Uniform)]
        noise: NoiseKind,

        /// Noise scale: half-width (uniform) or standard deviation (gaussian).
        #[arg(long, default_value_t = 0.5)]
        scale: f64,

        /// Copy counts, e.g. 100,1000,10000.
        #[arg(long, value_delimiter = ',', default_values_t = [100u64, 1000, 10_000, 100_000])]
        ns: Vec<u64>,

        /// Trials per copy count.
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },

    /// BB84 key distribution session.
    Bb84 {
        /// Qubits to send.
        #[arg(long, default_value_t = 4096)]
        n: u64,

        /// Insert an intercept-resend eavesdropper.
        #[arg(long)]
        eavesdrop: bool,
    },

    /// Three-stage commuting-rotation exchange.
    ThreeStage {
        /// Message bits, e.g. 10110.
        #[arg(long)]
        message: String,
    },

    /// Run every golden-value check; exits 1 if any fail.
    PaperCheck,
}

enum CliError {
    Usage(String),
    Io(String),
    CheckFailure(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::CheckFailure(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let seed = cli.seed;
    let format = cli.format;
    match cli.command {
        Command::Entropy(input) => {
            let rho = load_state(&input)?;
            let report = entropy_report(&rho, None)
                .map_err(|e| CliError::Usage(format!("entropy computation failed: {e}")))?;
            let content = match format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("s_inf_bits,s_n_bits,gap_bits\n");
                    let _ = writeln!(
                        out,
                        "{:.6},{:.6},{:.6}",
                        report.s_inf, report.s_n, report.gap
                    );
                    out
                }
            };
            emit(cli.output.as_deref(), &content)
        }

        Command::Tomography { input, n, trials } => {
            let rho = load_state(&input)?;
            let rows = tomography_experiment(&rho, &n, trials, seed)
                .map_err(|e| CliError::Usage(format!("tomography failed: {e}")))?;
            let content = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&serde_json::json!({ "seed": seed, "rows": rows }))?,
                Format::Csv => {
                    let mut out = String::from(
                        "n_per_basis,mean_trace_distance,std_trace_distance,trials,seed\n",
                    );
                    for row in &rows {
                        let _ = writeln!(
                            out,
                            "{},{:.6},{:.6},{},{}",
                            row.n_per_basis,
                            row.mean_trace_distance,
                            row.std_trace_distance,
                            row.trials,
                            seed
                        );
                    }
                    out
                }
            };
            emit(cli.output.as_deref(), &content)
        }

        Command::Encode {
            experiment,
            thetas,
            copies,
            k,
            j,
            n_start,
            doublings,
            trials,
        } => {
            // Both experiments share one table schema; the first column is an
            // angle for the sweep and a copy budget for the ladder.
            let rows: Vec<(f64, f64, f64, u64)> = match experiment {
                Experiment::Sweep => {
                    let thetas = thetas.unwrap_or_else(|| {
                        (0..=8)
                            .map(|i| i as f64 * std::f64::consts::FRAC_PI_2 / 8.0)
                            .collect()
                    });
                    let rows = misalignment_sweep(&thetas, copies, seed)
                        .map_err(|e| CliError::Usage(format!("sweep failed: {e}")))?;
                    rows.iter()
                        .map(|r| (r.theta, r.s_inf_bits, r.success_rate, r.copies))
                        .collect()
                }
                Experiment::Ladder => {
                    let j = j.unwrap_or(1 << (k.saturating_sub(1)));
                    let code = TableCode::new(k, j)
                        .map_err(|e| CliError::Usage(format!("bad table code: {e}")))?;
                    let budgets: Vec<u64> = (0..=doublings)
                        .map(|d| n_start.saturating_mul(1 << d))
                        .collect();
                    let rows = decode_success_ladder(&code, &budgets, trials, seed)
                        .map_err(|e| CliError::Usage(format!("ladder failed: {e}")))?;
                    rows.iter()
                        .map(|r| (r.copies as f64, r.s_inf_bits, r.success_rate, r.copies))
                        .collect()
                }
            };
            let content = match format.unwrap_or(Format::Csv) {
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(x, s, rate, copies)| {
                            serde_json::json!({
                                "theta_or_n": x,
                                "s_inf_bits": s,
                                "success_rate": rate,
                                "copies": copies,
                            })
                        })
                        .collect();
                    to_json(&serde_json::json!({ "seed": seed, "rows": rows }))?
                }
                Format::Csv => {
                    let mut out = String::from("theta_or_n,s_inf_bits,success_rate,copies,seed\n");
                    for (x, s, rate, copies) in &rows {
                        let _ = writeln!(out, "{x:.6},{s:.6},{rate:.6},{copies},{seed}");
                    }
                    out
                }
            };
            emit(cli.output.as_deref(), &content)
        }

        Command::Classical {
            bits: bit_string,
            noise,
            scale,
            ns,
            trials,
        } => {
            let message = bits::parse(&bit_string)
                .map_err(|e| CliError::Usage(format!("bad bit string: {e}")))?;
            let signal = encode_fraction(&message)
                .map_err(|e| CliError::Usage(format!("cannot encode: {e}")))?;
            let noise = match noise {
                NoiseKind::Uniform => NoiseModel::uniform(scale),
                NoiseKind::Gaussian => NoiseModel::gaussian(scale),
            }
            .map_err(|e| CliError::Usage(format!("bad noise model: {e}")))?;
            if ns.is_empty() || ns.contains(&0) || trials == 0 {
                return Err(CliError::Usage(
                    "copy counts and trials must be positive".into(),
                ));
            }

            struct Row {
                n: u64,
                mean_abs_error: f64,
                bits_recovered: usize,
            }
            let mut rows = Vec::new();
            for (idx, &n) in ns.iter().enumerate() {
                let mut total_error = 0.0;
                let mut worst_leading = signal.len();
                for trial in 0..trials {
                    let stream = idx as u64 * trials as u64 + trial as u64;
                    let mut rng = seeded_stream(seed, stream);
                    let w = transmit_average_with(&signal, &noise, n, &mut rng);
                    total_error += (w - signal.value()).abs();
                    let decoded = decode_fraction(w, signal.len())
                        .map_err(|e| CliError::Usage(format!("decode failed: {e}")))?;
                    worst_leading =
                        worst_leading.min(bits::leading_matches(signal.bits(), &decoded));
                }
                rows.push(Row {
                    n,
                    mean_abs_error: total_error / trials as f64,
                    bits_recovered: worst_leading,
                });
            }
            let kind = noise.kind_label();
            let content = match format.unwrap_or(Format::Csv) {
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "n": r.n,
                                "mean_abs_error": r.mean_abs_error,
                                "bits_recovered": r.bits_recovered,
                                "noise_kind": kind,
                                "scale": scale,
                            })
                        })
                        .collect();
                    to_json(&serde_json::json!({ "seed": seed, "rows": rows }))?
                }
                Format::Csv => {
                    let mut out =
                        String::from("n,mean_abs_error,bits_recovered,noise_kind,scale,seed\n");
                    for r in &rows {
                        let _ = writeln!(
                            out,
                            "{},{:.6},{},{},{},{}",
                            r.n, r.mean_abs_error, r.bits_recovered, kind, scale, seed
                        );
                    }
                    out
                }
            };
            emit(cli.output.as_deref(), &content)
        }

        Command::Bb84 { n, eavesdrop } => {
            let transcript = run_bb84(n, eavesdrop, seed)
                .map_err(|e| CliError::Usage(format!("session failed: {e}")))?;
            let content = match format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut s = transcript.to_json_string();
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let mut out = String::from("n_sent,sifted_length,qber,eavesdropped,seed\n");
                    let _ = writeln!(
                        out,
                        "{},{},{:.6},{},{}",
                        transcript.n_sent,
                        transcript.sifted_key_a.len(),
                        transcript.qber,
                        transcript.eavesdropped,
                        seed
                    );
                    out
                }
            };
            emit(cli.output.as_deref(), &content)
        }

        Command::ThreeStage { message } => {
            let message =
                bits::parse(&message).map_err(|e| CliError::Usage(format!("bad message: {e}")))?;
            let transcript = run_three_stage(&message, seed)
                .map_err(|e| CliError::Usage(format!("exchange failed: {e}")))?;
            let content = match format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut s = transcript.to_json_string();
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let mut out = String::from("message,decoded,bits_ok,seed\n");
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        bits::format(&transcript.message),
                        bits::format(&transcript.decoded),
                        transcript.message == transcript.decoded,
                        seed
                    );
                    out
                }
            };
            emit(cli.output.as_deref(), &content)
        }

        Command::PaperCheck => {
            let report = checks::paper_check(seed);
            let content = match format.unwrap_or(Format::Csv) {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut out = String::from("name,expected,computed,tolerance,pass\n");
                    for c in &report.checks {
                        let _ = writeln!(
                            out,
                            "{},{:.9},{:.9},{:.0e},{}",
                            c.name, c.expected, c.computed, c.tolerance, c.pass
                        );
                    }
                    out
                }
            };
            emit(cli.output.as_deref(), &content)?;
            if report.all_pass {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name.as_str())
                    .collect();
                Err(CliError::CheckFailure(format!(
                    "{} of {} golden checks failed: {}",
                    failed.len(),
                    report.checks.len(),
                    failed.join(", ")
                )))
            }
        }
    }
}

fn max_qubits() -> Result<usize, CliError> {
    match std::env::var("QINFO_MAX_QUBITS") {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "QINFO_MAX_QUBITS must be a positive integer, got {raw:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_QUBITS),
    }
}

fn load_state(input: &StateInput) -> Result<DensityMatrix, CliError> {
    match (&input.matrix, input.state) {
        (Some(path), None) => load_matrix(path),
        (None, Some(named)) => Ok(named.density()),
        _ => Err(CliError::Usage(
            "provide exactly one of --matrix or --state".into(),
        )),
    }
}

fn load_matrix(path: &Path) -> Result<DensityMatrix, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let matrix = ComplexMatrix::from_json_str(&raw)
        .map_err(|e| CliError::Usage(format!("malformed matrix file {}: {e}", path.display())))?;
    let cap = max_qubits()?;
    if matrix.dim() > (1usize << cap) {
        return Err(CliError::Usage(format!(
            "matrix dimension {} exceeds the {cap}-qubit cap (set QINFO_MAX_QUBITS to raise it)",
            matrix.dim()
        )));
    }
    DensityMatrix::new(matrix)
        .map_err(|e| CliError::Usage(format!("not a valid density matrix: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
