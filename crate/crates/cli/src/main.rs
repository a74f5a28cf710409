use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qread::discrimination::Mode;
use qread_cli::{
    build_tradeoff, resolve_phase, run_design, run_verify, CliError, CoherentBaseline, Spacing,
    DEFAULT_VERIFY_GRID,
};

/// Designs minimum-energy probes for reading unitary optical memories and
/// compares them against coherent-probe strategies.
#[derive(Parser)]
#[command(name = "qread", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    /// Minimum-error reading: bound the error probability by q.
    Ambiguous,
    /// Error-free reading: bound the inconclusive-outcome probability by q.
    Unambiguous,
}

impl From<CliMode> for Mode {
    fn from(mode: CliMode) -> Self {
        match mode {
            CliMode::Ambiguous => Mode::Ambiguous,
            CliMode::Unambiguous => Mode::Unambiguous,
        }
    }
}

#[derive(clap::Args)]
struct DeviceArgs {
    /// Device eigenphase in radians; accepts fractions of pi like `pi/12`.
    #[arg(long)]
    delta: Option<String>,

    /// JSON file with the first scattering matrix (four [re, im] pairs).
    #[arg(long)]
    u1: Option<PathBuf>,

    /// JSON file with the second scattering matrix.
    #[arg(long)]
    u2: Option<PathBuf>,
}

impl DeviceArgs {
    fn phase(&self) -> Result<f64, CliError> {
        resolve_phase(self.delta.as_deref(), self.u1.as_deref(), self.u2.as_deref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Design the minimum-energy probe and print it as JSON.
    Design {
        #[command(flatten)]
        device: DeviceArgs,

        /// Discrimination mode.
        #[arg(long, value_enum, default_value_t = CliMode::Ambiguous)]
        mode: CliMode,

        /// Error (ambiguous) or failure (unambiguous) budget.
        #[arg(long)]
        q: f64,
    },

    /// Sweep the budget and write an energy-tradeoff CSV.
    Tradeoff {
        #[command(flatten)]
        device: DeviceArgs,

        #[arg(long, value_enum, default_value_t = CliMode::Ambiguous)]
        mode: CliMode,

        /// Number of grid points.
        #[arg(long, default_value_t = 200)]
        points: usize,

        /// Smallest budget on the grid.
        #[arg(long, default_value_t = 1e-6)]
        q_min: f64,

        /// Largest budget on the grid.
        #[arg(long, default_value_t = 0.49)]
        q_max: f64,

        /// Output CSV path.
        #[arg(long, default_value = "tradeoff.csv")]
        out: PathBuf,

        /// Space the grid linearly instead of logarithmically.
        #[arg(long)]
        linear: bool,

        /// Fill the coherent column with the Helstrom bound on coherent
        /// outputs instead of the homodyne strategy.
        #[arg(long)]
        helstrom: bool,
    },

    /// Check the closed-form energies against the brute-force search.
    Verify {
        #[command(flatten)]
        device: DeviceArgs,

        #[arg(long, value_enum, default_value_t = CliMode::Ambiguous)]
        mode: CliMode,

        /// Budget point; repeat for several. Defaults to a small grid.
        #[arg(long = "q")]
        q: Vec<f64>,

        /// Largest photon-number difference the search explores.
        #[arg(long)]
        d_max: Option<u32>,

        /// Random distributions to sample.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,

        /// Seed for the sampling stage.
        #[arg(long, default_value_t = qread::DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Design { device, mode, q } => {
            let delta = device.phase()?;
            println!("{}", run_design(delta, mode.into(), q)?);
            Ok(0)
        }
        Command::Tradeoff { device, mode, points, q_min, q_max, out, linear, helstrom } => {
            let delta = device.phase()?;
            let spacing = if linear { Spacing::Linear } else { Spacing::Log };
            let baseline =
                if helstrom { CoherentBaseline::Helstrom } else { CoherentBaseline::Homodyne };
            let curve = build_tradeoff(delta, mode.into(), points, q_min, q_max, spacing, baseline)?;
            curve.write_csv(&out)?;
            Ok(0)
        }
        Command::Verify { device, mode, q, d_max, samples, seed } => {
            let delta = device.phase()?;
            let budgets = if q.is_empty() { DEFAULT_VERIFY_GRID.to_vec() } else { q };
            let outcome = run_verify(delta, mode.into(), &budgets, d_max, samples, seed)?;
            print!("{}", outcome.render());
            Ok(if outcome.all_pass() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("qread: {}", err.message());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
