use std::io::Write;
use std::process::ExitCode;

use autfree::commands::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok(outcome) => {
            let text = if cli.json { autfree::format::to_json(&outcome.json) } else { outcome.text };
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(failure) => {
            if cli.json {
                let _ =
                    stdout.write_all(autfree::format::to_json(&serde_json::json!({ "error": failure.0 })).as_bytes());
            }
            eprintln!("error: {}", failure.0);
            ExitCode::from(2)
        }
    }
}
