//! Sparse F2 columns, field-addition accounting and boundary matrices.
//!
//! Cost model: adding a column `u` into a column `v` costs
//! `nnz(u) + nnz(v)` field additions, both sizes taken before the addition.

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::FilteredComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension {p} out of range 1..={max}")]
    DimensionOutOfRange { p: usize, max: usize },
    #[error("row indices must be strictly increasing and 1-based, got {0:?}")]
    BadRows(Vec<usize>),
}

/// An F2 vector stored as its strictly increasing list of 1-based row
/// indices. The empty list is the zero vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseColumn {
    rows: Vec<usize>,
}

impl SparseColumn {
    pub fn zero() -> Self {
        SparseColumn { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<usize>) -> Result<Self, MatrixError> {
        if rows.first() == Some(&0) || rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MatrixError::BadRows(rows));
        }
        Ok(SparseColumn { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Largest row index carrying a 1, or 0 for the zero column.
    pub fn low(&self) -> usize {
        self.rows.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, row: usize) -> bool {
        self.rows.binary_search(&row).is_ok()
    }

    pub fn clear(&mut self) {
        self.rows.clear();
    }

    /// `self += other` over F2, charging the addition to `counter`.
    /// Returns the charged cost.
    pub fn add_assign(&mut self, other: &SparseColumn, counter: &mut AdditionCounter) -> u64 {
        let cost = counter.record(other.nnz(), self.nnz());
        self.rows = symmetric_difference(&other.rows, &self.rows);
        cost
    }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Low of a column; free-function form of [`SparseColumn::low`].
pub fn low(col: &SparseColumn) -> usize {
    col.low()
}

/// Returns `u + v` and charges `nnz(u) + nnz(v)` to the counter.
pub fn add_into(u: &SparseColumn, v: &SparseColumn, counter: &mut AdditionCounter) -> SparseColumn {
    let mut out = v.clone();
    out.add_assign(u, counter);
    out
}

/// Running totals for a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdditionCounter {
    pub column_additions: u64,
    pub field_additions: u64,
}

impl AdditionCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one column addition between columns of the given sizes.
    pub fn record(&mut self, source_nnz: usize, target_nnz: usize) -> u64 {
        let cost = (source_nnz + target_nnz) as u64;
        self.column_additions += 1;
        self.field_additions += cost;
        cost
    }
}

impl std::ops::AddAssign for AdditionCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.column_additions += rhs.column_additions;
        self.field_additions += rhs.field_additions;
    }
}

/// Whether a matrix is the full boundary matrix or the block of a single
/// boundary map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixScope {
    Full,
    /// Block of `∂_p`: rows are (p-1)-simplices, columns p-simplices.
    Dimension(usize),
}

/// Column-sparse F2 matrix whose rows and columns are tagged with simplex
/// indices of the complex it was built from.
///
/// Rows and columns are addressed by 1-based position. For the full matrix
/// positions coincide with simplex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub columns: Vec<SparseColumn>,
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
    pub scope: MatrixScope,
}

impl BoundaryMatrix {
    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    /// Column at 1-based position `j`.
    pub fn column(&self, j: usize) -> &SparseColumn {
        &self.columns[j - 1]
    }

    pub fn lows(&self) -> Vec<usize> {
        self.columns.iter().map(SparseColumn::low).collect()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseColumn::nnz).sum()
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(k, c)| c.rows().iter().all(|&r| r < k + 1))
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut grid = vec![vec![0u8; self.n_cols()]; self.n_rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &r in col.rows() {
                grid[r - 1][j] = 1;
            }
        }
        grid
    }

    /// Dense 0/1 grid with row and column headers, one row per line.
    /// `name` maps a simplex index to its display label.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        let col_names: Vec<String> = self.col_labels.iter().map(|&s| name(s)).collect();
        let row_names: Vec<String> = self.row_labels.iter().map(|&s| name(s)).collect();
        let row_w = row_names.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = col_names.iter().map(|n| n.len().max(1)).collect();
        let mut out = String::new();
        let _ = write!(out, "{:row_w$}", "");
        for (n, w) in col_names.iter().zip(&widths) {
            let _ = write!(out, " {n:>w$}");
        }
        out.push('\n');
        for (r, row) in self.to_dense().iter().enumerate() {
            let _ = write!(out, "{:>row_w$}", row_names[r]);
            for (bit, w) in row.iter().zip(&widths) {
                let _ = write!(out, " {bit:>w$}");
            }
            out.push('\n');
        }
        out
    }
}

/// Full N×N boundary matrix: column `j` holds the indices of the facets of
/// simplex `j`.
pub fn boundary_matrix(complex: &FilteredComplex) -> BoundaryMatrix {
    let index = complex.index_map();
    let columns = complex
        .simplices()
        .iter()
        .map(|s| {
            if s.dimension() == 0 {
                return SparseColumn::zero();
            }
            let mut rows: Vec<usize> = s
                .facets()
                .expect("dimension >= 1")
                .iter()
                .map(|f| index[f])
                .collect();
            rows.sort_unstable();
            SparseColumn { rows }
        })
        .collect();
    let labels: Vec<usize> = (1..=complex.len()).collect();
    BoundaryMatrix {
        columns,
        row_labels: labels.clone(),
        col_labels: labels,
        scope: MatrixScope::Full,
    }
}

/// Block of `∂_p`, rows and columns in complex order restricted to each
/// dimension.
pub fn boundary_submatrix(complex: &FilteredComplex, p: usize) -> Result<BoundaryMatrix, MatrixError> {
    let max = complex.max_dimension().unwrap_or(0);
    if p == 0 || p > max.max(1) {
        return Err(MatrixError::DimensionOutOfRange { p, max });
    }
    let row_labels: Vec<usize> = complex
        .iter()
        .filter(|(_, s, _)| s.dimension() == p - 1)
        .map(|(i, _, _)| i)
        .collect();
    let col_labels: Vec<usize> = complex
        .iter()
        .filter(|(_, s, _)| s.dimension() == p)
        .map(|(i, _, _)| i)
        .collect();
    let index = complex.index_map();
    let mut position = vec![0usize; complex.len() + 1];
    for (k, &label) in row_labels.iter().enumerate() {
        position[label] = k + 1;
    }
    let columns = col_labels
        .iter()
        .map(|&j| {
            let mut rows: Vec<usize> = complex
                .simplex(j)
                .facets()
                .expect("p >= 1")
                .iter()
                .map(|f| position[index[f]])
                .collect();
            rows.sort_unstable();
            SparseColumn { rows }
        })
        .collect();
    Ok(BoundaryMatrix {
        columns,
        row_labels,
        col_labels,
        scope: MatrixScope::Dimension(p),
    })
}

/// Rank over F2 by Gauss-Jordan elimination on dense bit-packed rows.
///
/// Deliberately unrelated to the column reduction code; it is the oracle the
/// reductions are checked against.
pub fn rank_f2(matrix: &BoundaryMatrix) -> usize {
    let n_rows = matrix.n_rows();
    let n_cols = matrix.n_cols();
    if n_rows == 0 || n_cols == 0 {
        return 0;
    }
    let words = n_cols.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n_rows];
    for (j, col) in matrix.columns.iter().enumerate() {
        for &r in col.rows() {
            rows[r - 1][j / 64] |= 1u64 << (j % 64);
        }
    }
    let mut rank = 0;
    for c in 0..n_cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pivot) = (rank..n_rows).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}
