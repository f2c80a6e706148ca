use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nacalc::verify::{SuiteConfig, DEFAULT_SEED};
use spec_calc::{Format, EXIT_INPUT, EXIT_OK};

/// Exact spectral calculus over Q(t).
#[derive(Parser)]
#[command(name = "spec-calc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the queries of a scenario file.
    Run {
        scenario: PathBuf,
        /// Seed for verify queries that do not set their own.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Run one randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Largest rank / number of spectrum points drawn.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        format: FormatArgs,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct FormatArgs {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    text: bool,
}

impl FormatArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Text
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::Run { scenario, seed, format } => spec_calc::run_scenario(&scenario, seed, format.format()),
        Command::Verify {
            suite,
            n,
            trials,
            seed,
            format,
        } => spec_calc::verify(&suite, &SuiteConfig { rank: n, trials, seed }, format.format()),
    };
    match &result {
        Ok((report, _)) => print!("{report}"),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(spec_calc::exit_status(&result) as u8)
}
