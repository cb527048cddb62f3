//! The tuning mini-language:
//!
//! - `const:4.0` (or a bare number) — constant sequence,
//! - `arith:a` or `arith:a,b` — `λᵢ = a·(p+1−i) + b`,
//! - `n23` or `n23:N` — `λᵢ = (p+1−i)·N^{2/3}` (N defaults to the context
//!   sample size; for a bare vector it is the vector length),
//! - `file:path` — a single-column CSV holding `λ₁ ≥ … ≥ λ_p`.

use std::path::PathBuf;
use std::str::FromStr;

use slope_core::theory::TuningSchedule;
use slope_core::TuningVector;

use crate::{io, CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum TuningSpec {
    Const(f64),
    Arith { a: f64, b: f64 },
    N23 { n: Option<usize> },
    File(PathBuf),
}

impl FromStr for TuningSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if let Ok(v) = s.parse::<f64>() {
            return Ok(TuningSpec::Const(v));
        }
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, Some(r)),
            None => (s, None),
        };
        match kind {
            "const" => {
                let r = rest.ok_or_else(|| CliError::input("const: needs a value, e.g. const:4.0"))?;
                let v = r.parse::<f64>().map_err(|_| CliError::Input(format!("bad const value '{r}'")))?;
                Ok(TuningSpec::Const(v))
            }
            "arith" => {
                let r = rest.ok_or_else(|| CliError::input("arith: needs a slope, e.g. arith:3.5 or arith:3.5,0.1"))?;
                let mut parts = r.splitn(2, ',');
                let a = parts
                    .next()
                    .unwrap()
                    .parse::<f64>()
                    .map_err(|_| CliError::Input(format!("bad arith slope in '{r}'")))?;
                let b = match parts.next() {
                    Some(x) => x.parse::<f64>().map_err(|_| CliError::Input(format!("bad arith offset in '{r}'")))?,
                    None => 0.0,
                };
                Ok(TuningSpec::Arith { a, b })
            }
            "n23" => match rest {
                None => Ok(TuningSpec::N23 { n: None }),
                Some(r) => {
                    let n = r.parse::<usize>().map_err(|_| CliError::Input(format!("bad n23 sample size '{r}'")))?;
                    Ok(TuningSpec::N23 { n: Some(n) })
                }
            },
            "file" => {
                let r = rest.ok_or_else(|| CliError::input("file: needs a path, e.g. file:lambda.csv"))?;
                Ok(TuningSpec::File(PathBuf::from(r)))
            }
            other => Err(CliError::Input(format!(
                "unknown tuning spec '{other}'; use const:v, arith:a[,b], n23[:N] or file:path"
            ))),
        }
    }
}

impl TuningSpec {
    /// Materializes the spec for dimension `p` in a context with sample
    /// size `n`.
    pub fn resolve(&self, p: usize, n: usize) -> CliResult<TuningVector> {
        match self {
            TuningSpec::Const(v) => Ok(TuningVector::constant(*v, p)?),
            TuningSpec::Arith { a, b } => Ok(TuningVector::arithmetic(*a, *b, p)?),
            TuningSpec::N23 { n: explicit } => {
                let schedule = TuningSchedule::arithmetic_n23(p)?;
                Ok(schedule.tuning_for(explicit.unwrap_or(n))?)
            }
            TuningSpec::File(path) => Ok(TuningVector::new(io::read_vector(path)?)?),
        }
    }

    /// The scalar penalty level, for LASSO-style methods.
    pub fn as_scalar(&self) -> CliResult<f64> {
        match self {
            TuningSpec::Const(v) => Ok(*v),
            _ => Err(CliError::input("this method needs a scalar penalty; use a number or const:v")),
        }
    }
}
