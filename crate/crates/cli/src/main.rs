//! `poincare`: exact discrete Poincaré constants and their bounds.
//!
//! Exit status: 0 on success, 1 for bad input, 2 when a computed result is
//! internally inconsistent (a failed check, or a solver postcondition).

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use poincare_cli::error::{EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK};
use poincare_cli::spec::default_tail_eps;
use poincare_cli::{
    cmd_analyze, cmd_reproduce, cmd_verify, render, CliError, DistSpec, Format, RunResult,
};

#[derive(Parser)]
#[command(
    name = "poincare",
    version,
    about = "Discrete Poincaré constants, bounds and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the constant and every bound for one distribution.
    Analyze {
        /// e.g. `poisson:2`, `binomial:10:0.3`, `file:pm.txt`, `convolve:[poisson:1]:[poisson:2]`
        #[arg(long)]
        dist: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall-clock time (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Recompute a worked example and compare with its published values.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(poincare_cli::reproduce::CASES))]
        case: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
    /// Run the randomized property suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
}

fn execute(command: Command) -> Result<(RunResult, Format), CliError> {
    let (mut run, format, timing) = match command {
        Command::Analyze {
            dist,
            format,
            timing,
        } => {
            let spec: DistSpec = dist.parse()?;
            (cmd_analyze(&spec, default_tail_eps()?)?, format, timing)
        }
        Command::Reproduce {
            case,
            format,
            timing,
        } => (cmd_reproduce(&case, default_tail_eps()?)?, format, timing),
        Command::Verify {
            seed,
            trials,
            format,
            timing,
        } => (cmd_verify(seed, trials as usize), format, timing),
    };
    if !timing {
        run.timing_ms = None;
    }
    Ok((run, format))
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors; here 2 is reserved for inconsistencies.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let outcome =
        execute(cli.command).and_then(|(run, format)| Ok((render(&run, format)?, run.ok)));
    match outcome {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_INCONSISTENT);
            }
            ExitCode::from(if ok { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
