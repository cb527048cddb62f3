//! Headerless CSV interchange: matrices are comma-separated rows, vectors
//! are single-column files.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::{CliError, CliResult};

fn parse_field(raw: &str, path: &Path, row: usize, col: usize) -> CliResult<f64> {
    raw.trim().parse::<f64>().map_err(|_| {
        CliError::Input(format!(
            "{}: row {}, column {}: cannot parse '{}' as a number",
            path.display(),
            row + 1,
            col + 1,
            raw.trim()
        ))
    })
}

fn read_rows(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
            _ => CliError::Input(format!("{}: {e}", path.display())),
        })?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut row = Vec::with_capacity(record.len());
        for (j, field) in record.iter().enumerate() {
            row.push(parse_field(field, path, i, j)?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!("{}: file is empty", path.display())));
    }
    Ok(rows)
}

/// A single-column vector file.
pub fn read_vector(path: &Path) -> CliResult<Vec<f64>> {
    let rows = read_rows(path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != 1 {
            return Err(CliError::Input(format!(
                "{}: row {} has {} fields; vectors are single-column files",
                path.display(),
                i + 1,
                row.len()
            )));
        }
        out.push(row[0]);
    }
    Ok(out)
}

/// A row-major rectangular matrix file.
pub fn read_matrix(path: &Path) -> CliResult<DMatrix<f64>> {
    let rows = read_rows(path)?;
    let width = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(CliError::Input(format!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                i + 1,
                row.len(),
                width
            )));
        }
    }
    let n = rows.len();
    Ok(DMatrix::from_fn(n, width, |i, j| rows[i][j]))
}

pub fn read_response(path: &Path) -> CliResult<DVector<f64>> {
    Ok(DVector::from_vec(read_vector(path)?))
}

pub fn write_text(path: &Path, content: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, content)?;
    Ok(())
}
