pub mod commands;
pub mod config;
pub mod doc;
pub mod validate;

use std::time::Instant;

pub use config::RunConfig;

/// Everything one invocation produces.
#[derive(Debug, Clone)]
pub struct Report {
    /// Run facts for stderr: command, seed, timing, and records the CSV
    /// payload had no room for.
    pub metadata: Vec<(String, String)>,
    pub payload: String,
    pub exit_code: i32,
}

pub fn run(config: &RunConfig) -> anyhow::Result<Report> {
    let start = Instant::now();
    let outcome = commands::dispatch(config)?;
    let (payload, rest) = outcome.doc.render(config.global.format);
    let mut metadata = vec![
        ("command".to_string(), format!("{:?}", config.command)),
        ("seed".to_string(), config.global.seed.to_string()),
        (
            "format".to_string(),
            format!("{:?}", config.global.format).to_lowercase(),
        ),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        (
            "wall_time_ms".to_string(),
            start.elapsed().as_millis().to_string(),
        ),
    ];
    metadata.extend(rest.into_iter().map(|(k, v)| (format!("summary.{k}"), v)));
    Ok(Report {
        metadata,
        payload,
        exit_code: outcome.exit_code,
    })
}
