//! Benchmark sweeps over generated complexes and log–log growth fits.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::boundary_matrix;
use crate::generators::{generate, GeneratorError, Variant};
use crate::reduction::{reduce, Algorithm, ReductionError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("need at least {MIN_FIT_ROWS} rows with positive counts for a fit, {0}")]
    InsufficientRows(String),
}

pub const MIN_FIT_ROWS: usize = 4;

/// Which additions a record counts: all of them, or only those whose
/// target column is a `p`-simplex (`d1`, `d2`). The reduction always runs on
/// the full matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    #[default]
    Full,
    D1,
    D2,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::Full => "full",
            Scope::D1 => "d1",
            Scope::D2 => "d2",
        }
    }

    pub fn target_dimension(self) -> Option<usize> {
        match self {
            Scope::Full => None,
            Scope::D1 => Some(1),
            Scope::D2 => Some(2),
        }
    }
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Scope::Full),
            "d1" => Ok(Scope::D1),
            "d2" => Ok(Scope::D2),
            other => Err(format!("unknown scope {other:?} (expected full, d1 or d2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    #[serde(rename = "N")]
    pub simplices: usize,
    pub algorithm: Algorithm,
    pub scope: Scope,
    pub column_additions: u64,
    pub field_additions: u64,
    /// Wall clock of the reduction only; informational.
    pub elapsed_ns: u64,
}

impl BenchRecord {
    /// Everything except the elapsed time.
    pub fn counters(&self) -> (usize, usize, Algorithm, Scope, u64, u64) {
        (
            self.n,
            self.simplices,
            self.algorithm,
            self.scope,
            self.column_additions,
            self.field_additions,
        )
    }
}

pub fn run_cell(variant: Variant, n: usize, algorithm: Algorithm, scope: Scope) -> Result<BenchRecord, BenchError> {
    let labeled = generate(variant, n)?;
    let complex = &labeled.complex;
    let matrix = boundary_matrix(complex);
    let start = Instant::now();
    let result = reduce(algorithm, &matrix, complex)?;
    let elapsed_ns = start.elapsed().as_nanos() as u64;
    let counter = match scope.target_dimension() {
        None => result.counter,
        Some(p) => result.counter_for_targets(|j| complex.dimension_of(j) == p),
    };
    Ok(BenchRecord {
        n,
        simplices: complex.len(),
        algorithm,
        scope,
        column_additions: counter.column_additions,
        field_additions: counter.field_additions,
        elapsed_ns,
    })
}

/// `min_n, min_n + step, …` up to `max_n`.
pub fn sweep_sizes(min_n: usize, max_n: usize, step: usize) -> Result<Vec<usize>, BenchError> {
    if min_n == 0 || min_n > max_n || step == 0 {
        return Err(BenchError::InvalidSweep(format!(
            "need 1 <= min_n <= max_n and step >= 1 (got {min_n}, {max_n}, {step})"
        )));
    }
    Ok((min_n..=max_n).step_by(step).collect())
}

/// Runs every `(n, algorithm)` cell in parallel; records come back sorted
/// by `n`, then by algorithm in the order given.
pub fn run_sweep(
    variant: Variant,
    sizes: &[usize],
    algorithms: &[Algorithm],
    scope: Scope,
) -> Result<Vec<BenchRecord>, BenchError> {
    let cells: Vec<(usize, usize)> = sizes
        .iter()
        .flat_map(|&n| (0..algorithms.len()).map(move |a| (n, a)))
        .collect();
    let mut records = cells
        .par_iter()
        .map(|&(n, a)| run_cell(variant, n, algorithms[a], scope).map(|r| ((n, a), r)))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|(key, _)| *key);
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

pub fn to_csv(records: &[BenchRecord]) -> Result<String, BenchError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in records {
        writer.serialize(r)?;
    }
    if records.is_empty() {
        writer.write_record(["n", "N", "algorithm", "scope", "column_additions", "field_additions", "elapsed_ns"])?;
    }
    let bytes = writer.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>, BenchError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(BenchError::from)
}

pub fn to_json(records: &[BenchRecord]) -> String {
    serde_json::to_string_pretty(records).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub algorithm: Algorithm,
    pub scope: Scope,
    pub rows: usize,
    /// Exponent `b` in `field_additions ≈ a · n^b`.
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in natural-log units.
    pub residual: f64,
}

/// Least-squares line through `(xs, ys)`: `(slope, intercept, rms residual)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, intercept, (sse / k).sqrt())
}

/// Fits `log(field_additions)` against `log(n)` for a set of records.
/// Rows with a zero count are skipped.
pub fn fit_log_log(records: &[&BenchRecord]) -> Result<(f64, f64, f64), BenchError> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = records
        .iter()
        .filter(|r| r.field_additions > 0)
        .map(|r| ((r.n as f64).ln(), (r.field_additions as f64).ln()))
        .unzip();
    if xs.len() < MIN_FIT_ROWS {
        return Err(BenchError::InsufficientRows(format!("got {}", xs.len())));
    }
    Ok(least_squares(&xs, &ys))
}

/// One fit per `(algorithm, scope)` group that has enough rows. Fails if
/// no group qualifies.
pub fn fit(records: &[BenchRecord]) -> Result<Vec<FitReport>, BenchError> {
    let mut groups: BTreeMap<(Algorithm, Scope), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.algorithm, r.scope)).or_default().push(r);
    }
    let reports: Vec<FitReport> = groups
        .into_iter()
        .filter_map(|((algorithm, scope), rows)| {
            let (slope, intercept, residual) = fit_log_log(&rows).ok()?;
            Some(FitReport {
                algorithm,
                scope,
                rows: rows.len(),
                slope,
                intercept,
                residual,
            })
        })
        .collect();
    if reports.is_empty() {
        return Err(BenchError::InsufficientRows("no (algorithm, scope) group qualifies".into()));
    }
    Ok(reports)
}
