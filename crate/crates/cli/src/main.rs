mod cli;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;
use ybd_core::par::Exec;

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    let exec = if args.sequential { Exec::Sequential } else { Exec::default() };
    match commands::run(&args.command, exec) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &args.out {
                let body = serde_json::to_string_pretty(&out.report).expect("reports are plain JSON") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code as u8)
        }
    }
}
