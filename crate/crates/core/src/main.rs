use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use genera::cli::{run, Cli};

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("GENERA_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                {
                    eprintln!("error: cannot configure {n} threads: {e}");
                    return ExitCode::from(1);
                }
            }
            _ => {
                eprintln!("error: GENERA_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    let outcome = run(Cli::parse());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
