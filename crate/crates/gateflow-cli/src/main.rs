//! Command-line front end: every analysis as a reproducible,
//! file-emitting command.
//!
//! Exit codes: 0 success, 2 unknown catalog entity, 3 invalid argument
//! or unsupported combination. Identical invocations produce
//! byte-identical payloads; the environment variable `GATEFLOW_TOL`
//! overrides the default verdict tolerance of 1e-10.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gateflow::bloch::{bloch_point, latitude_residual, qubit_from_angles, sample_trajectory};
use gateflow::entanglement::{bell_prepare, concurrence};
use gateflow::gates::{catalog, gate_at_time, GateError, GateSpec};
use gateflow::io::{
    basis_report_json, bell_csv, bell_json, embed_report_json, fmt_f64, matrix_csv, matrix_json,
    trajectory_csv, trajectory_json, BasisReport, BellRow, EmbedReport,
};
use gateflow::realspace::Convention;

const DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "gateflow",
    version,
    about = "Continuous-time gate evolution, Bloch trajectories, Bell sweeps, \
             real embeddings, and operator-basis reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a catalog gate's interpolated evolution U(t).
    Evolve {
        /// Catalog gate name (I, X, Y, Z, S, T, H, CNOT, BELL).
        #[arg(long)]
        gate: String,
        /// Evaluation time; defaults to tau, reproducing the gate itself.
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Sample a Bloch-sphere trajectory under a single-qubit gate.
    Trajectory {
        /// Catalog gate name; must be 2x2.
        #[arg(long)]
        gate: String,
        /// Initial polar angle in radians.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Initial azimuthal angle in radians.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        /// Number of samples, at least 2.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// End of the sampled interval; defaults to 2*tau (one full orbit).
        #[arg(long)]
        t_max: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the Bell-preparation circuit over t in [0, tau].
    Bell {
        /// Which Bell state to target (0..=3).
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Number of samples, at least 2.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Embed a gate's evolution into real matrices and judge the result.
    Embed {
        /// Catalog gate name.
        #[arg(long)]
        gate: String,
        /// Evaluation time; defaults to tau.
        #[arg(long)]
        t: Option<f64>,
        /// Which tensor slot carries the complex plane.
        #[arg(long, value_enum, default_value_t = ConventionArg::AFirst)]
        convention: ConventionArg,
        /// Judge the raw complex gate matrix instead of its embedding.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Report on the Pauli-tensor basis of End(R^{2^n}).
    Endo {
        /// Tensor order, 1..=3.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Convention used for the image-dimension computation.
        #[arg(long, value_enum, default_value_t = ConventionArg::AFirst)]
        convention: ConventionArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Characteristic time over which each gate unfolds.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Write the payload here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Payload format; defaults to json for matrices and reports,
    /// csv for trajectory and bell sweeps.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    AFirst,
    JFirst,
}

impl From<ConventionArg> for Convention {
    fn from(arg: ConventionArg) -> Self {
        match arg {
            ConventionArg::AFirst => Convention::AFirst,
            ConventionArg::JFirst => Convention::JFirst,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn unknown(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else
            // is an argument error.
            let code = if err.use_stderr() { 3 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var("GATEFLOW_TOL") {
        Ok(raw) => {
            let tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| invalid(format!("GATEFLOW_TOL is not a number: {raw:?}")))?;
            if !tol.is_finite() || tol <= 0.0 {
                return Err(invalid(format!("GATEFLOW_TOL must be positive, got {raw:?}")));
            }
            Ok(tol)
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOL),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(invalid("GATEFLOW_TOL is not valid unicode"))
        }
    }
}

fn lookup(gate: &str, tau: f64) -> Result<GateSpec, Failure> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(invalid(format!("tau must be positive and finite, got {tau}")));
    }
    let spec = catalog(gate).map_err(|err| match err {
        GateError::UnknownGate(name) => unknown(format!("unknown gate {name:?}")),
        other => invalid(other.to_string()),
    })?;
    spec.with_tau(tau).map_err(|err| invalid(err.to_string()))
}

/// Write the payload to the requested sink with a trailing newline, so
/// file and stdout renderings are byte-identical.
fn emit(common: &Common, payload: &str) -> Result<(), Failure> {
    let mut text = payload.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| invalid(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_or(common: &Common, default: Format) -> Format {
    common.format.unwrap_or(default)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = tolerance()?;
    match cli.command {
        Command::Evolve { gate, t, common } => {
            let spec = lookup(&gate, common.tau)?;
            let t = t.unwrap_or(common.tau);
            if !t.is_finite() {
                return Err(invalid(format!("t must be finite, got {t}")));
            }
            let u = gate_at_time(&spec, t);
            let payload = match format_or(&common, Format::Json) {
                Format::Json => matrix_json(&u),
                Format::Csv => matrix_csv(&u),
            };
            emit(&common, &payload)
        }
        Command::Trajectory {
            gate,
            theta,
            phi,
            samples,
            t_max,
            common,
        } => {
            let spec = lookup(&gate, common.tau)?;
            if spec.dim() != 2 {
                return Err(invalid(format!(
                    "trajectory requires a single-qubit gate; {} is {}x{}",
                    spec.name,
                    spec.dim(),
                    spec.dim()
                )));
            }
            if !(theta.is_finite() && phi.is_finite()) {
                return Err(invalid("theta and phi must be finite"));
            }
            let t_max = t_max.unwrap_or(2.0 * common.tau);
            let initial = qubit_from_angles(theta, phi);
            let traj = sample_trajectory(&spec, &initial, samples, t_max)
                .map_err(|err| invalid(err.to_string()))?;
            // The orbit axis is the gate's phase-zero eigenvector.
            let axis_col = (0..spec.dim())
                .min_by(|&a, &b| {
                    spec.eigenphases[a]
                        .abs()
                        .total_cmp(&spec.eigenphases[b].abs())
                })
                .expect("nonempty spectrum");
            let axis = bloch_point(&spec.eigenvectors.column(axis_col))
                .map_err(|err| invalid(err.to_string()))?;
            let residual = latitude_residual(&traj, &axis);
            let max_imag = traj
                .samples
                .iter()
                .map(|s| s.imag_residue)
                .fold(0.0f64, f64::max);
            let payload = match format_or(&common, Format::Csv) {
                Format::Csv => trajectory_csv(&traj),
                Format::Json => trajectory_json(&traj),
            };
            emit(&common, &payload)?;
            let summary = format!(
                "latitude_residual={} max_imag_residue={}",
                fmt_f64(residual),
                fmt_f64(max_imag)
            );
            // Keep the payload parseable when it goes to stdout.
            if common.output.is_some() {
                println!("{summary}");
            } else {
                eprintln!("{summary}");
            }
            Ok(())
        }
        Command::Bell {
            index,
            samples,
            common,
        } => {
            if !(common.tau.is_finite() && common.tau > 0.0) {
                return Err(invalid(format!(
                    "tau must be positive and finite, got {}",
                    common.tau
                )));
            }
            if samples < 2 {
                return Err(invalid(format!("need at least 2 samples, got {samples}")));
            }
            let mut rows = Vec::with_capacity(samples);
            for k in 0..samples {
                let t = common.tau * k as f64 / (samples - 1) as f64;
                let state =
                    bell_prepare(index, t, common.tau).map_err(|err| invalid(err.to_string()))?;
                rows.push(BellRow {
                    t,
                    concurrence: concurrence(&state),
                    state,
                });
            }
            let payload = match format_or(&common, Format::Csv) {
                Format::Csv => bell_csv(&rows),
                Format::Json => bell_json(&rows),
            };
            emit(&common, &payload)
        }
        Command::Embed {
            gate,
            t,
            convention,
            raw,
            common,
        } => {
            if format_or(&common, Format::Json) != Format::Json {
                return Err(invalid("embed emits a JSON report; csv is not supported"));
            }
            let spec = lookup(&gate, common.tau)?;
            let t = t.unwrap_or(common.tau);
            if !t.is_finite() {
                return Err(invalid(format!("t must be finite, got {t}")));
            }
            let report = EmbedReport::analyze(&spec, t, convention.into(), raw, tol);
            emit(&common, &embed_report_json(&report))
        }
        Command::Endo {
            n,
            convention,
            common,
        } => {
            if format_or(&common, Format::Json) != Format::Json {
                return Err(invalid("endo emits a JSON report; csv is not supported"));
            }
            if !(1..=3).contains(&n) {
                return Err(invalid(format!("n must be in 1..=3, got {n}")));
            }
            let report = BasisReport::analyze(n, tol, convention.into())
                .map_err(|err| invalid(err.to_string()))?;
            emit(&common, &basis_report_json(&report))
        }
    }
}
