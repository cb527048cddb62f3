mod check;
mod fit;
mod prox;
mod recovery;
mod simulate;

pub use check::run_check;
pub use fit::run_fit;
pub use prox::run_prox;
pub use recovery::run_recovery_curve;
pub use simulate::run_simulate;

use std::path::{Path, PathBuf};

use crate::{io, CliResult};

/// Print to stdout or write to a file.
pub(crate) fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => io::write_text(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// --out-dir flag, falling back to $SLOPE_OUT_DIR, then ./slope-out.
pub(crate) fn resolve_out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("SLOPE_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("slope-out"))
}

/// Parses "20@100,20@80" into cluster specs.
pub(crate) fn parse_clusters(s: &str) -> CliResult<Vec<slope_core::sim::ClusterSpec>> {
    if s.trim().is_empty() || s.trim() == "none" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (count, mag) = part
                .split_once('@')
                .ok_or_else(|| crate::CliError::Input(format!("bad cluster '{part}'; use COUNT@MAGNITUDE")))?;
            let count = count
                .trim()
                .parse::<usize>()
                .map_err(|_| crate::CliError::Input(format!("bad cluster count in '{part}'")))?;
            let magnitude = mag
                .trim()
                .parse::<f64>()
                .map_err(|_| crate::CliError::Input(format!("bad cluster magnitude in '{part}'")))?;
            Ok(slope_core::sim::ClusterSpec { count, magnitude })
        })
        .collect()
}

/// Parses "100,1000,10000".
pub(crate) fn parse_usize_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| crate::CliError::Input(format!("bad integer '{}' in list", part.trim())))
        })
        .collect()
}
