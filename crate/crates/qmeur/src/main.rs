use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmeur::{load_state, parse_bases, report_csv, sweep_csv, write_atomic, ScenarioSummary};
use qmeur_core::scenario::{
    run_one_memory_case, run_two_memory_case, Axis, Ensemble, Sweep, ALPHA_RANGE, BETA_RANGE, DEFAULT_GRID_STEPS,
    DEFAULT_SAMPLES, FULL_SAMPLES, P_RANGE,
};
use qmeur_core::{BOrder, BoundOptions, WuVariant};

#[derive(Parser)]
#[command(name = "qmeur", about = "Entropic uncertainty bounds with multiple quantum memories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound for a state read from a JSON file.
    Compute {
        /// State file: {"dims": [...], "matrix": [[[re, im], ...], ...]}.
        #[arg(long)]
        state: PathBuf,
        /// Comma-separated built-in basis names or basis files.
        #[arg(long)]
        bases: String,
        /// Measurement-to-memory assignment, e.g. "1:1;2,3:2".
        #[arg(long)]
        partition: String,
        /// Also write the report as a quantity,value CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        options: OptionArgs,
    },
    /// Run one of the built-in case studies and write a CSV.
    Scenario {
        #[command(subcommand)]
        scenario: Scenario,
    },
    /// Print the version.
    Version,
}

#[derive(Subcommand)]
enum Scenario {
    /// Mixed two-qubit family, all Pauli measurements guessed by one memory.
    OneMemory {
        #[command(flatten)]
        p: PAxis,
        #[command(flatten)]
        alpha: AlphaAxis,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generalised W state, σ_x guessed by B and σ_y, σ_z by C.
    WState {
        #[command(flatten)]
        alpha: AlphaAxis,
        #[command(flatten)]
        beta: BetaAxis,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Random four-qubit states, σ_x, σ_y, σ_z guessed by B, C, D.
    RandomEnsemble {
        #[arg(long, default_value_t = DEFAULT_SAMPLES, conflicts_with = "full")]
        samples: usize,
        /// Use the full-scale sample count.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sort rows by the Wu bound before writing.
        #[arg(long)]
        sort_by_wu: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct OptionArgs {
    #[arg(long, value_enum, default_value_t = WuArg::Corrected)]
    wu_variant: WuArg,
    #[arg(long, value_enum, default_value_t = BOrderArg::Given)]
    b_order: BOrderArg,
}

impl OptionArgs {
    fn options(&self) -> BoundOptions {
        BoundOptions {
            wu_variant: match self.wu_variant {
                WuArg::Corrected => WuVariant::Corrected,
                WuArg::Original => WuVariant::Original,
            },
            b_order: match self.b_order {
                BOrderArg::Given => BOrder::Given,
                BOrderArg::Minimized => BOrder::Minimized,
            },
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    options: OptionArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum WuArg {
    Corrected,
    Original,
}

#[derive(Clone, Copy, ValueEnum)]
enum BOrderArg {
    Given,
    Minimized,
}

macro_rules! axis_args {
    ($name:ident, $field:ident, $steps:ident, $min:ident, $max:ident, $range:expr) => {
        #[derive(Args)]
        struct $name {
            /// Fixed value; the axis is swept when omitted.
            #[arg(long, allow_negative_numbers = true)]
            $field: Option<f64>,
            #[arg(long, default_value_t = DEFAULT_GRID_STEPS)]
            $steps: usize,
            #[arg(long, allow_negative_numbers = true, default_value_t = $range.0)]
            $min: f64,
            #[arg(long, allow_negative_numbers = true, default_value_t = $range.1)]
            $max: f64,
        }

        impl $name {
            fn axis(&self) -> Axis {
                match self.$field {
                    Some(v) => Axis::Fixed(v),
                    None => Axis::grid((self.$min, self.$max), self.$steps),
                }
            }
        }
    };
}

axis_args!(PAxis, p, p_steps, p_min, p_max, P_RANGE);
axis_args!(AlphaAxis, alpha, alpha_steps, alpha_min, alpha_max, ALPHA_RANGE);
axis_args!(BetaAxis, beta, beta_steps, beta_min, beta_max, BETA_RANGE);

fn emit(sweep: &Sweep, out: Option<&PathBuf>) -> qmeur::Result<()> {
    let csv = sweep_csv(sweep)?;
    match out {
        Some(path) => write_atomic(path, |f| f.write_all(&csv))?,
        None => std::io::stdout().lock().write_all(&csv).map_err(|e| qmeur::Error::Io { path: "<stdout>".into(), source: e })?,
    }
    eprintln!("{}", ScenarioSummary::of(sweep));
    Ok(())
}

fn run(cli: Cli) -> qmeur::Result<()> {
    match cli.command {
        Command::Compute { state, bases, partition, out, options } => {
            let rho = load_state(&state)?;
            let ms = parse_bases(&bases)?;
            let report = qmeur::compute(&rho, &ms, &partition, options.options())?;
            if let Some(path) = out {
                let csv = report_csv(&report)?;
                write_atomic(path, |f| f.write_all(&csv))?;
            }
            println!("{}", report.summary());
        }
        Command::Scenario { scenario } => match scenario {
            Scenario::OneMemory { p, alpha, common } => {
                let sweep = run_one_memory_case(p.axis(), alpha.axis(), common.options.options())?;
                emit(&sweep, common.out.as_ref())?;
            }
            Scenario::WState { alpha, beta, common } => {
                let sweep = run_two_memory_case(alpha.axis(), beta.axis(), common.options.options())?;
                emit(&sweep, common.out.as_ref())?;
            }
            Scenario::RandomEnsemble { samples, full, seed, sort_by_wu, common } => {
                let ensemble = Ensemble::three_memory(common.options.options());
                let samples = if full { FULL_SAMPLES } else { samples };
                let mut sweep = qmeur::run_ensemble(&ensemble, samples, seed)?;
                if sort_by_wu {
                    sweep.sort_by_bound("wu");
                }
                emit(&sweep, common.out.as_ref())?;
            }
        },
        Command::Version => println!("qmeur {}", env!("CARGO_PKG_VERSION")),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
