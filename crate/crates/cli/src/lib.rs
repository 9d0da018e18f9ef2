//! Command-line surface of cyclotome: argument handling, reports, the result
//! cache and the verification suites.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod sphere;
pub mod suites;

use std::time::Instant;

use cyclotome_core::cyclic::DEFAULT_MAX_CELLS;

use crate::args::Cli;
use crate::cache::{Cache, CacheEntry};
use crate::error::{CliResult, EXIT_CHECK_FAILED, EXIT_OK};
use crate::report::{render, Invocation, Status};

/// Result of one invocation: bytes for stdout and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
    /// Whether the output came from the cache.
    pub cached: bool,
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let files = commands::inputs(&cli.command)?;
    let inv = Invocation {
        command: commands::name(&cli.command).into(),
        parameters: commands::parameters(&cli.command),
        inputs: files.iter().map(|f| f.digest()).collect(),
        format: cli.global.format,
    };
    let key = inv.key();
    let cache = match &cli.global.cache_dir {
        Some(dir) if !cli.global.timing => Some(Cache::new(dir).map_err(|e| {
            crate::error::CliError::Input(format!("cache directory {}: {e}", dir.display()))
        })?),
        _ => None,
    };
    if let (Some(cache), false) = (&cache, cli.global.refresh) {
        if let Some(hit) = cache.get(&key) {
            return Ok(Outcome { stdout: hit.stdout, exit_code: hit.exit_code, cached: true });
        }
    }
    let cap = cli.global.max_cells.unwrap_or(DEFAULT_MAX_CELLS);
    let start = Instant::now();
    let out = commands::execute(&cli.command, &files, cap)?;
    let wall = cli.global.timing.then(|| start.elapsed().as_millis());
    let stdout = render(&inv, &out, wall)?;
    let exit_code = if out.status == Status::Fail { EXIT_CHECK_FAILED } else { EXIT_OK };
    if let Some(cache) = &cache {
        cache
            .put(&key, &CacheEntry { exit_code, stdout: stdout.clone() })
            .map_err(|e| crate::error::CliError::Input(format!("cache write: {e}")))?;
    }
    Ok(Outcome { stdout, exit_code, cached: false })
}
