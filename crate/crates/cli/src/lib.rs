//! Command-line front end: parses a [`RunConfig`], runs the library and
//! writes tables plus a `manifest.json` that records the parsed config.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::json;

pub use config::RunConfig;
pub use error::CliError;

use config::{Command, Format};
use table::{json_bytes, write_file};

/// What a completed run wrote.
#[derive(Debug)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
}

/// Runs one command and writes its outputs. A verification failure still
/// writes everything before returning its error.
pub fn run(cfg: &RunConfig) -> Result<RunSummary, CliError> {
    let start = Instant::now();
    let outcome = match &cfg.command {
        Command::Bands(a) => commands::bands(a),
        Command::Flat(a) => commands::flat(a),
        Command::Boundstates(a) => commands::boundstates(a),
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::Pointlimit(a) => commands::pointlimit(a),
        Command::Verify(a) => commands::verify(a),
    }?;
    let compute = start.elapsed().as_secs_f64();

    fs::create_dir_all(&cfg.out).map_err(|e| CliError::Io(format!("{}: {e}", cfg.out.display())))?;
    let mut files = Vec::new();
    for t in &outcome.tables {
        files.push(t.write(&cfg.out, cfg.format)?);
    }
    for (name, doc) in &outcome.documents {
        let path = cfg.out.join(format!("{name}.json"));
        write_file(&path, &json_bytes(doc)?)?;
        files.push(path);
    }
    let names: Vec<String> = files
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .collect();
    let manifest = json!({
        "tool": "pseudospin",
        "command": cfg.command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "library_version": pseudospin_core::VERSION,
        "config": cfg,
        "units": "energies and strengths in m, lengths in 1/m",
        "format": match cfg.format { Format::Csv => "csv", Format::Json => "json" },
        "outputs": names,
        "report": outcome.report,
        "passed": outcome.failure.is_none(),
        "timings": { "compute_s": compute, "total_s": start.elapsed().as_secs_f64() },
    });
    let path = cfg.out.join("manifest.json");
    write_file(&path, &json_bytes(&manifest)?)?;
    files.push(path);

    match outcome.failure {
        Some(e) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            Err(e)
        }
        None => Ok(RunSummary {
            files,
            lines: outcome.summary,
        }),
    }
}
