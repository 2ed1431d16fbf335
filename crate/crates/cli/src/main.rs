use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use conlat_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let result = run(&args);
    // reparse only for the output flags; run() already validated the line
    let common = Cli::try_parse_from(std::iter::once("conlat".to_string()).chain(args.iter().cloned()))
        .map(|c| c.common)
        .unwrap_or_default();
    let code = match result {
        Ok(report) => {
            print!("{}", report.render());
            if let Some(dir) = &common.dot {
                if let Err(e) = report.write_artifacts(dir) {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code());
                }
            }
            report.exit_code()
        }
        Err(CliError::Args(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if common.timings {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}
