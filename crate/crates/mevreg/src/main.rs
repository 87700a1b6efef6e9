use clap::Parser;
use mevreg::cli::{precision_from_env, run, Cli, RunConfig};
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = precision_from_env().and_then(|warning| {
        if let Some(w) = warning {
            eprintln!("warning: {w}");
        }
        let cfg = RunConfig::from_cli(cli)?;
        let outcome = run(&cfg)?;
        match &cfg.output_path {
            Some(p) => std::fs::write(p, &outcome.report)?,
            None => print!("{}", outcome.report),
        }
        Ok(outcome.success)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
