use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use gct::args::Cli;
use gct::{exit_code, run};

fn main() -> ExitCode {
    let cli = Cli::parse();

    // GCT_THREADS fixes the worker count; results do not depend on it
    if let Some(n) = std::env::var("GCT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("gct: cannot size thread pool: {e}");
        }
    }

    let start = Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gct: {e:#}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    eprintln!("config: {}", report.config);
    eprintln!("runtime: {:.3} s", start.elapsed().as_secs_f64());

    let text = report.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("gct: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
