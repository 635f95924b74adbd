//! Standard, twist and look-ahead column reduction with exact operation
//! counting, plus persistence pairs, diagrams and a rank-based Betti oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{FilteredComplex, Level};
use crate::f2::{boundary_submatrix, rank_f2, AdditionCounter, BoundaryMatrix, MatrixScope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("pairs require full matrix")]
    NotFullMatrix,
    #[error("matrix has {matrix} columns but complex has {complex} simplices")]
    SizeMismatch { matrix: usize, complex: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Standard,
    Twist,
    Lookahead,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Standard, Algorithm::Twist, Algorithm::Lookahead];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Standard => "standard",
            Algorithm::Twist => "twist",
            Algorithm::Lookahead => "lookahead",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Algorithm::Standard),
            "twist" => Ok(Algorithm::Twist),
            "lookahead" | "look-ahead" => Ok(Algorithm::Lookahead),
            other => Err(format!("unknown algorithm {other:?} (expected standard, twist or lookahead)")),
        }
    }
}

/// One step of a reduction, in execution order. Positions are 1-based column
/// positions of the reduced matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStep {
    /// Column `source` was added into column `target` at the given cost.
    Add { source: usize, target: usize, cost: u64 },
    /// Twist only: column zeroed without any additions.
    Clear { column: usize },
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub reduced: BoundaryMatrix,
    /// Row position `i` ↦ column position `j` with `low(R_j) = i`.
    pub pivots: BTreeMap<usize, usize>,
    pub counter: AdditionCounter,
    pub algorithm: Algorithm,
    pub steps: Vec<ReductionStep>,
}

impl ReductionResult {
    pub fn clears(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ReductionStep::Clear { .. }))
            .count()
    }

    /// Totals restricted to additions whose target column satisfies `keep`.
    pub fn counter_for_targets(&self, keep: impl Fn(usize) -> bool) -> AdditionCounter {
        let mut counter = AdditionCounter::new();
        for step in &self.steps {
            if let ReductionStep::Add { target, cost, .. } = *step {
                if keep(target) {
                    counter.column_additions += 1;
                    counter.field_additions += cost;
                }
            }
        }
        counter
    }

    /// One line per step, `C<i>+C<j> → C<j>` with the running cost.
    pub fn trace_lines(&self) -> Vec<String> {
        let mut total = 0;
        self.steps
            .iter()
            .map(|step| match *step {
                ReductionStep::Add { source, target, cost } => {
                    total += cost;
                    format!("C{source}+C{target} → C{target}  cost {cost}  total {total}")
                }
                ReductionStep::Clear { column } => format!("clear C{column}  total {total}"),
            })
            .collect()
    }
}

/// Adds column `source` into column `target` (`source < target`).
fn add_column(
    columns: &mut [crate::f2::SparseColumn],
    source: usize,
    target: usize,
    counter: &mut AdditionCounter,
    steps: &mut Vec<ReductionStep>,
) {
    debug_assert!(source < target);
    let (head, tail) = columns.split_at_mut(target - 1);
    let cost = tail[0].add_assign(&head[source - 1], counter);
    steps.push(ReductionStep::Add { source, target, cost });
}

/// Reduces column `j` against the columns already recorded in `pivot_of_row`
/// and registers its low, if any.
fn reduce_column(
    columns: &mut [crate::f2::SparseColumn],
    j: usize,
    pivot_of_row: &mut [usize],
    counter: &mut AdditionCounter,
    steps: &mut Vec<ReductionStep>,
) -> usize {
    loop {
        let i = columns[j - 1].low();
        if i == 0 {
            return 0;
        }
        match pivot_of_row[i] {
            0 => {
                pivot_of_row[i] = j;
                return i;
            }
            p => add_column(columns, p, j, counter, steps),
        }
    }
}

fn finish(
    matrix: BoundaryMatrix,
    pivot_of_row: Vec<usize>,
    counter: AdditionCounter,
    algorithm: Algorithm,
    steps: Vec<ReductionStep>,
) -> ReductionResult {
    let pivots = pivot_of_row
        .into_iter()
        .enumerate()
        .filter(|&(_, j)| j != 0)
        .collect();
    ReductionResult {
        reduced: matrix,
        pivots,
        counter,
        algorithm,
        steps,
    }
}

/// Left-to-right reduction: each column is reduced by adding the earlier
/// column that owns its current low, until its low is new or it vanishes.
pub fn reduce_standard(matrix: &BoundaryMatrix) -> ReductionResult {
    let mut r = matrix.clone();
    let mut pivot_of_row = vec![0usize; r.n_rows() + 1];
    let mut counter = AdditionCounter::new();
    let mut steps = Vec::new();
    for j in 1..=r.n_cols() {
        reduce_column(&mut r.columns, j, &mut pivot_of_row, &mut counter, &mut steps);
    }
    finish(r, pivot_of_row, counter, Algorithm::Standard, steps)
}

/// Reduction with clearing. Dimensions are processed from the top down; a
/// column that settles with low `i` zeroes column `i` at no cost.
///
/// Within one dimension columns are processed in ascending order.
pub fn reduce_twist(
    matrix: &BoundaryMatrix,
    complex: &FilteredComplex,
) -> Result<ReductionResult, ReductionError> {
    if matrix.scope != MatrixScope::Full {
        return Err(ReductionError::NotFullMatrix);
    }
    if matrix.n_cols() != complex.len() {
        return Err(ReductionError::SizeMismatch {
            matrix: matrix.n_cols(),
            complex: complex.len(),
        });
    }
    let mut r = matrix.clone();
    let mut pivot_of_row = vec![0usize; r.n_rows() + 1];
    let mut counter = AdditionCounter::new();
    let mut steps = Vec::new();
    let top = complex.max_dimension().unwrap_or(0);
    for dim in (1..=top).rev() {
        for j in 1..=r.n_cols() {
            if complex.dimension_of(r.col_labels[j - 1]) != dim {
                continue;
            }
            let i = reduce_column(&mut r.columns, j, &mut pivot_of_row, &mut counter, &mut steps);
            if i != 0 && !r.columns[i - 1].is_zero() {
                r.columns[i - 1].clear();
                steps.push(ReductionStep::Clear { column: i });
            }
        }
    }
    Ok(finish(r, pivot_of_row, counter, Algorithm::Twist, steps))
}

/// Look-ahead reduction: once column `j` has low `i`, row `i` is eliminated
/// from every later column immediately.
pub fn reduce_lookahead(matrix: &BoundaryMatrix) -> ReductionResult {
    let mut r = matrix.clone();
    let mut pivot_of_row = vec![0usize; r.n_rows() + 1];
    let mut counter = AdditionCounter::new();
    let mut steps = Vec::new();
    let n = r.n_cols();
    for j in 1..=n {
        let i = r.columns[j - 1].low();
        if i == 0 {
            continue;
        }
        debug_assert_eq!(pivot_of_row[i], 0, "look-ahead left a duplicate low");
        pivot_of_row[i] = j;
        for later in j + 1..=n {
            if r.columns[later - 1].contains(i) {
                add_column(&mut r.columns, j, later, &mut counter, &mut steps);
            }
        }
    }
    finish(r, pivot_of_row, counter, Algorithm::Lookahead, steps)
}

/// Runs the named algorithm on a full boundary matrix.
pub fn reduce(
    algorithm: Algorithm,
    matrix: &BoundaryMatrix,
    complex: &FilteredComplex,
) -> Result<ReductionResult, ReductionError> {
    match algorithm {
        Algorithm::Standard => Ok(reduce_standard(matrix)),
        Algorithm::Twist => reduce_twist(matrix, complex),
        Algorithm::Lookahead => Ok(reduce_lookahead(matrix)),
    }
}

/// Death time of a persistence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(Level),
    Infinite,
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::Finite(l) => write!(f, "{l}"),
            Death::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Death {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Death::Finite(l) => s.serialize_u64(*l),
            Death::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PersistencePair {
    pub dimension: usize,
    pub birth_index: usize,
    /// `None` for an essential class.
    pub death_index: Option<usize>,
    pub birth_level: Level,
    pub death_level: Death,
}

/// Reads the pairing off a reduced full boundary matrix. Pairs come out in
/// ascending birth index.
pub fn extract_pairs(
    result: &ReductionResult,
    complex: &FilteredComplex,
) -> Result<Vec<PersistencePair>, ReductionError> {
    if result.reduced.scope != MatrixScope::Full {
        return Err(ReductionError::NotFullMatrix);
    }
    if result.reduced.n_cols() != complex.len() {
        return Err(ReductionError::SizeMismatch {
            matrix: result.reduced.n_cols(),
            complex: complex.len(),
        });
    }
    let mut pairs = Vec::new();
    for i in 1..=complex.len() {
        let death_index = result.pivots.get(&i).copied();
        if death_index.is_none() && !result.reduced.column(i).is_zero() {
            // destroys a class; reported from the birth side
            continue;
        }
        pairs.push(PersistencePair {
            dimension: complex.dimension_of(i),
            birth_index: i,
            death_index,
            birth_level: complex.level(i),
            death_level: death_index.map_or(Death::Infinite, |j| Death::Finite(complex.level(j))),
        });
    }
    Ok(pairs)
}

/// Per-dimension multisets of `(birth, death)` levels, each sorted.
/// Diagonal points are kept.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct PersistenceDiagram {
    pub dimensions: BTreeMap<usize, Vec<(Level, Death)>>,
}

impl PersistenceDiagram {
    pub fn points(&self, dim: usize) -> &[(Level, Death)] {
        self.dimensions.get(&dim).map_or(&[], Vec::as_slice)
    }

    /// Number of classes of dimension `dim` alive at `level`
    /// (`birth <= level < death`).
    pub fn alive_at(&self, dim: usize, level: Level) -> usize {
        self.points(dim)
            .iter()
            .filter(|&&(b, d)| b <= level && Death::Finite(level) < d)
            .count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (dim, points) in &self.dimensions {
            out.push_str(&format!("dgm{dim}:"));
            for (b, d) in points {
                out.push_str(&format!(" ({b},{d})"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn diagram(pairs: &[PersistencePair], dimension_filter: Option<usize>) -> PersistenceDiagram {
    let mut dimensions: BTreeMap<usize, Vec<(Level, Death)>> = BTreeMap::new();
    for p in pairs {
        if dimension_filter.is_some_and(|d| d != p.dimension) {
            continue;
        }
        dimensions
            .entry(p.dimension)
            .or_default()
            .push((p.birth_level, p.death_level));
    }
    for points in dimensions.values_mut() {
        points.sort_unstable();
    }
    PersistenceDiagram { dimensions }
}

/// Betti numbers `b_0 ..= b_top` of the subcomplex of simplices with level
/// at most `level`, from ranks computed by dense Gaussian elimination.
pub fn betti_numbers(complex: &FilteredComplex, level: Level) -> Vec<usize> {
    let sub = complex.restrict_to_level(level);
    let top = complex.max_dimension().unwrap_or(0);
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|p| {
            if p == 0 || sub.count_dimension(p) == 0 {
                0
            } else {
                rank_f2(&boundary_submatrix(&sub, p).expect("dimension present"))
            }
        })
        .collect();
    (0..=top)
        .map(|p| sub.count_dimension(p) - ranks[p] - ranks[p + 1])
        .collect()
}

/// `(b_0, b_1)` at the given level.
pub fn betti_oracle(complex: &FilteredComplex, level: Level) -> (usize, usize) {
    let b = betti_numbers(complex, level);
    (b[0], b.get(1).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::example_triangle;
    use crate::f2::boundary_matrix;

    #[test]
    fn standard_on_triangle_example() {
        let c = example_triangle();
        let r = reduce_standard(&boundary_matrix(&c));
        assert_eq!(r.reduced.column(6).rows(), &[] as &[usize]);
        assert_eq!(r.reduced.lows(), vec![0, 0, 0, 2, 3, 0, 6]);
        assert_eq!(r.counter.column_additions, 2);
        assert_eq!(
            r.steps,
            vec![
                ReductionStep::Add { source: 5, target: 6, cost: 4 },
                ReductionStep::Add { source: 4, target: 6, cost: 4 },
            ]
        );
        let pairs = extract_pairs(&r, &c).unwrap();
        let by_index: Vec<(usize, Option<usize>)> =
            pairs.iter().map(|p| (p.birth_index, p.death_index)).collect();
        assert_eq!(by_index, vec![(1, None), (2, Some(4)), (3, Some(5)), (6, Some(7))]);
        let dgm = diagram(&pairs, None);
        assert_eq!(
            dgm.points(0),
            &[(1, Death::Infinite), (2, Death::Finite(4)), (3, Death::Finite(5))]
        );
        assert_eq!(dgm.points(1), &[(6, Death::Finite(7))]);
        assert!(dgm.points(2).is_empty());
    }

    #[test]
    fn twist_on_triangle_example_clears_column_six() {
        let c = example_triangle();
        let r = reduce_twist(&boundary_matrix(&c), &c).unwrap();
        assert_eq!(r.counter.column_additions, 0);
        assert_eq!(r.steps, vec![ReductionStep::Clear { column: 6 }]);
        assert_eq!(r.pivots, reduce_standard(&boundary_matrix(&c)).pivots);
    }

    #[test]
    fn lookahead_on_triangle_example() {
        let c = example_triangle();
        let r = reduce_lookahead(&boundary_matrix(&c));
        assert_eq!(
            r.steps,
            vec![
                ReductionStep::Add { source: 4, target: 6, cost: 4 },
                ReductionStep::Add { source: 5, target: 6, cost: 4 },
            ]
        );
        assert_eq!(r.counter.field_additions, 8);
        assert_eq!(r.reduced, reduce_standard(&boundary_matrix(&c)).reduced);
    }

    #[test]
    fn twist_and_pairs_need_the_full_matrix() {
        let c = example_triangle();
        let sub = boundary_submatrix(&c, 2).unwrap();
        assert_eq!(reduce_twist(&sub, &c).unwrap_err(), ReductionError::NotFullMatrix);
        let r = reduce_standard(&sub);
        assert_eq!(
            extract_pairs(&r, &c).unwrap_err().to_string(),
            "pairs require full matrix"
        );
    }

    #[test]
    fn single_vertex_pairs() {
        let c = crate::complex::parse_text("1 1\n").unwrap();
        let r = reduce_standard(&boundary_matrix(&c));
        let pairs = extract_pairs(&r, &c).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].death_level, Death::Infinite);
        assert_eq!(pairs[0].dimension, 0);
    }

    #[test]
    fn betti_examples() {
        let c = example_triangle();
        assert_eq!(betti_oracle(&c, 6), (1, 1));
        assert_eq!(betti_oracle(&c, 7), (1, 0));
        assert_eq!(betti_oracle(&c, 3), (3, 0));
        let vertices = crate::complex::parse_text("1 1\n1 2\n1 5\n").unwrap();
        assert_eq!(betti_oracle(&vertices, 1), (3, 0));
    }

    #[test]
    fn trace_mentions_every_step() {
        let c = example_triangle();
        let r = reduce_standard(&boundary_matrix(&c));
        let lines = r.trace_lines();
        assert_eq!(lines[0], "C5+C6 → C6  cost 4  total 4");
        assert_eq!(lines[1], "C4+C6 → C6  cost 4  total 8");
    }

    #[test]
    fn algorithm_names_parse() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("gauss".parse::<Algorithm>().is_err());
    }
}
