use std::fs;
use std::process::ExitCode;

use clap::Parser;
use twheis_cli::args::Cli;
use twheis_cli::{commands, exit_code};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match commands::run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    match &cli.out_dir {
        Some(dir) => {
            let ext = if cli.json || cli.command.name() == "extend" { "json" } else { "txt" };
            let path = dir.join(format!("{}.{ext}", cli.command.name()));
            if let Err(e) = fs::create_dir_all(dir).and_then(|_| fs::write(&path, &out.body)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", out.body),
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
