mod args;
mod commands;
mod error;
mod output;
mod suites;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Verify};
use error::CliError;
use output::{emit, Case, Report};

fn verify(args: &Verify) -> Result<(), CliError> {
    let reports = suites::run(args.suite)?;
    let report = Report { suite: suites::name(args.suite).to_string(), cases: reports.iter().map(Case::from).collect() };
    emit(args.output.as_deref(), |w| report.write(args.format, w))?;
    if report.passed() {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .cases
            .iter()
            .filter(|c| c.verdict != hyperkg::verify::Verdict::Pass)
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Verification(failed.join("; ")))
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::EvalLinear(a) => commands::eval_linear(a),
        Command::EvalNd(a) => commands::eval_nd(a),
        Command::EvalNonlinear(a) => commands::eval_nonlinear(a),
        Command::EvalDamped(a) => commands::eval_damped(a),
        Command::Verify(a) => verify(a),
        Command::EkTable(a) => commands::ek_table(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hyperkg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
