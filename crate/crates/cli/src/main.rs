use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use caretlab_cli::{run, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match try_main(&config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn try_main(config: &RunConfig) -> anyhow::Result<i32> {
    if let Some(n) = config.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot start the thread pool")?;
    }
    let report = run(config)?;
    let mut err = std::io::stderr().lock();
    for (k, v) in &report.metadata {
        writeln!(err, "{k} = {v}")?;
    }
    match &config.global.out {
        Some(path) => std::fs::write(path, &report.payload)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout()
            .lock()
            .write_all(report.payload.as_bytes())?,
    }
    Ok(report.exit_code)
}
