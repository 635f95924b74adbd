//! Strip worst-case complexes `X(n)` and their subdivided flag variants
//! `Y(n)`, with the naming scheme used to talk about their simplices.
//!
//! Geometry (the base strip is drawn left to right): `v_1` sits at the top
//! centre, `v_2` and `v_3` on the bottom line; odd-numbered base vertices grow
//! to the right and even-numbered ones to the left. Base triangle `i` is
//! `{v_{i-2}, v_i, v_{i+2}}` (with `①` and `②` special), its horizontal edge
//! `i'` joins the two outer vertices, and vertical edge `i` joins
//! `v_{i-1}, v_{i+1}`. Fin triangle `-i` hangs from vertical edge `i` at the
//! apex `f_i`.
//!
//! In `Y(n)` each horizontal edge is split at `w_i` and each fin edge `-i`
//! at `g_i`. `i'`/`i''` are the left/right halves, the boxed triangle is the
//! left half of base triangle `i`, and the circled one is the right half.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::complex::{FilteredComplex, Level, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("n must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("closed form {name}({n}) is not an integer: numerator {numerator}")]
    NotDivisible { name: &'static str, n: usize, numerator: i128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Strip,
    Modified,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Strip => "strip",
            Variant::Modified => "modified",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strip" => Ok(Variant::Strip),
            "modified" => Ok(Variant::Modified),
            other => Err(format!("unknown variant {other:?} (expected strip or modified)")),
        }
    }
}

/// Name of a simplex in a strip complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    /// Fin apex `f_i`.
    F(usize),
    /// Fin midpoint `g_i` (modified only).
    G(usize),
    /// Base vertex `v_i`.
    V(usize),
    /// Horizontal midpoint `w_i` (modified only).
    W(usize),
    /// Horizontal edge `i'` of `X(n)`, or its left half in `Y(n)`.
    Horizontal(usize),
    /// Right half `i''` of the horizontal edge (modified only).
    HorizontalRight(usize),
    /// Edge `0'`, i.e. vertical edge `n+1`.
    ZeroPrime,
    /// Fin edge `-i*`.
    FinStar(usize),
    /// Fin edge `-i` of `X(n)`.
    Fin(usize),
    /// Apex half `-i'` of fin edge `-i` (modified only).
    FinOuter(usize),
    /// Base half `-i''` of fin edge `-i` (modified only).
    FinInner(usize),
    /// Vertical edge `i`.
    Vertical(usize),
    /// Midline `e_i^b` of base triangle `i` (modified only).
    BaseMidline(usize),
    /// Midline `e_i^f` of fin triangle `-i` (modified only).
    FinMidline(usize),
    /// Base triangle `ⓘ` of `X(n)`, or the right half of it in `Y(n)`.
    Base(usize),
    /// Left half of base triangle `i` (modified only).
    BoxedBase(usize),
    /// Fin triangle `-i` of `X(n)`, or its base-side half in `Y(n)`.
    FinTriangle(usize),
    /// Apex-side half of fin triangle `-i` (modified only).
    BoxedFin(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::F(i) => write!(f, "f{i}"),
            Label::G(i) => write!(f, "g{i}"),
            Label::V(i) => write!(f, "v{i}"),
            Label::W(i) => write!(f, "w{i}"),
            Label::Horizontal(i) => write!(f, "{i}'"),
            Label::HorizontalRight(i) => write!(f, "{i}''"),
            Label::ZeroPrime => write!(f, "0'"),
            Label::FinStar(i) => write!(f, "-{i}*"),
            Label::Fin(i) => write!(f, "-{i}"),
            Label::FinOuter(i) => write!(f, "-{i}'"),
            Label::FinInner(i) => write!(f, "-{i}''"),
            Label::Vertical(i) => write!(f, "{i}"),
            Label::BaseMidline(i) => write!(f, "e{i}b"),
            Label::FinMidline(i) => write!(f, "e{i}f"),
            Label::Base(i) => write!(f, "({i})"),
            Label::BoxedBase(i) => write!(f, "[{i}]"),
            Label::FinTriangle(i) => write!(f, "(-{i})"),
            Label::BoxedFin(i) => write!(f, "[-{i}]"),
        }
    }
}

/// A generated complex together with the name of every simplex.
#[derive(Debug, Clone)]
pub struct LabeledComplex {
    pub complex: FilteredComplex,
    pub labels: Vec<Label>,
    pub variant: Variant,
    pub n: usize,
    index: HashMap<Label, usize>,
}

impl LabeledComplex {
    /// 1-based index of the simplex called `label`.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn label(&self, index: usize) -> Label {
        self.labels[index - 1]
    }

    pub fn name(&self, index: usize) -> String {
        self.label(index).to_string()
    }

    /// Header lines describing the vertex numbering and the simplex names,
    /// for [`crate::complex::serialize_text_with_comments`].
    pub fn comments(&self) -> Vec<String> {
        let title = match self.variant {
            Variant::Strip => "strip complex X",
            Variant::Modified => "modified strip complex Y",
        };
        let mut vertex_map = String::from("vertices:");
        for (i, s, _) in self.complex.iter() {
            if s.dimension() == 0 {
                vertex_map.push_str(&format!(" {}={}", self.name(i), s.vertices()[0]));
            }
        }
        let order: Vec<String> = self.labels.iter().map(Label::to_string).collect();
        vec![
            format!("{title}({}) with {} simplices", self.n, self.complex.len()),
            vertex_map,
            format!("order: {}", order.join(" ")),
        ]
    }
}

struct Builder {
    simplices: Vec<Simplex>,
    levels: Vec<Level>,
    labels: Vec<Label>,
    next_level: Level,
}

impl Builder {
    fn new() -> Self {
        Builder {
            simplices: Vec::new(),
            levels: Vec::new(),
            labels: Vec::new(),
            next_level: 1,
        }
    }

    /// Adds a simplex at the given level.
    fn push_at(&mut self, label: Label, vertices: &[usize], level: Level) {
        self.simplices
            .push(Simplex::from_unsorted(vertices.to_vec()).expect("distinct vertices"));
        self.levels.push(level);
        self.labels.push(label);
    }

    /// Adds a simplex at a fresh level of its own.
    fn push(&mut self, label: Label, vertices: &[usize]) {
        let level = self.take_level();
        self.push_at(label, vertices, level);
    }

    fn take_level(&mut self) -> Level {
        let level = self.next_level;
        self.next_level += 1;
        level
    }

    fn finish(self, variant: Variant, n: usize) -> LabeledComplex {
        let index = self
            .labels
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, k + 1))
            .collect();
        LabeledComplex {
            complex: FilteredComplex::new(self.simplices, self.levels).expect("parallel lists"),
            labels: self.labels,
            variant,
            n,
            index,
        }
    }
}

/// Base triangle `i` as `(apex, left, right)` base vertex numbers, where
/// left/right are the endpoints of its horizontal edge.
fn base_triangle(i: usize) -> (usize, usize, usize) {
    match i {
        1 => (1, 2, 3),
        2 => (2, 4, 1),
        _ if i % 2 == 1 => (i, i - 2, i + 2),
        _ => (i, i + 2, i - 2),
    }
}

/// Endpoints of vertical edge `i` (`1 <= i <= n + 1`).
fn vertical_edge(i: usize) -> (usize, usize) {
    if i == 1 {
        (1, 2)
    } else {
        (i - 1, i + 1)
    }
}

/// Base vertex joined to `f_i` by fin edge `-i*`.
fn fin_star_foot(i: usize) -> usize {
    if i == 1 {
        1
    } else {
        i - 1
    }
}

/// The strip worst-case complex `X(n)`. Every simplex gets its own level,
/// equal to its index.
///
/// Vertex numbering: `f_i ↦ i`, `v_i ↦ n + i`.
pub fn strip(n: usize) -> Result<LabeledComplex, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::InvalidSize(n));
    }
    let f = |i: usize| i;
    let v = |i: usize| n + i;
    let mut b = Builder::new();

    for i in 1..=n {
        b.push(Label::F(i), &[f(i)]);
    }
    for i in 1..=n + 2 {
        b.push(Label::V(i), &[v(i)]);
    }
    for i in (1..=n).rev() {
        let (_, left, right) = base_triangle(i);
        b.push(Label::Horizontal(i), &[v(left), v(right)]);
    }
    b.push(Label::ZeroPrime, &[v(n), v(n + 2)]);
    for i in (1..=n).rev() {
        b.push(Label::FinStar(i), &[f(i), v(fin_star_foot(i))]);
    }
    for i in (1..=n).rev() {
        b.push(Label::Fin(i), &[f(i), v(i + 1)]);
    }
    for i in (1..=n).rev() {
        let (a, c) = vertical_edge(i);
        b.push(Label::Vertical(i), &[v(a), v(c)]);
    }
    for i in 1..=n {
        let (apex, left, right) = base_triangle(i);
        b.push(Label::Base(i), &[v(apex), v(left), v(right)]);
    }
    for i in 1..=n {
        let (a, c) = vertical_edge(i);
        b.push(Label::FinTriangle(i), &[f(i), v(a), v(c)]);
    }
    Ok(b.finish(Variant::Strip, n))
}

/// The modified strip complex `Y(n)`: horizontal and fin edges subdivided,
/// base and fin triangles split in two by a midline. Each midline enters
/// together with its two half triangles at one shared level; every other
/// simplex has a level of its own.
///
/// Vertex numbering: `f_i ↦ i`, `g_i ↦ n + i`, `v_i ↦ 2n + i`,
/// `w_i ↦ 3n + 2 + i`.
pub fn modified_strip(n: usize) -> Result<LabeledComplex, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::InvalidSize(n));
    }
    let f = |i: usize| i;
    let g = |i: usize| n + i;
    let v = |i: usize| 2 * n + i;
    let w = |i: usize| 3 * n + 2 + i;
    let mut b = Builder::new();

    for i in 1..=n {
        b.push(Label::F(i), &[f(i)]);
    }
    for i in 1..=n {
        b.push(Label::G(i), &[g(i)]);
    }
    for i in 1..=n + 2 {
        b.push(Label::V(i), &[v(i)]);
    }
    for i in 1..=n {
        b.push(Label::W(i), &[w(i)]);
    }
    for i in (1..=n).rev() {
        let (_, _, right) = base_triangle(i);
        b.push(Label::HorizontalRight(i), &[w(i), v(right)]);
    }
    for i in (1..=n).rev() {
        let (_, left, _) = base_triangle(i);
        b.push(Label::Horizontal(i), &[v(left), w(i)]);
    }
    b.push(Label::ZeroPrime, &[v(n), v(n + 2)]);
    for i in (1..=n).rev() {
        b.push(Label::FinStar(i), &[f(i), v(fin_star_foot(i))]);
    }
    for i in (1..=n).rev() {
        b.push(Label::FinInner(i), &[g(i), v(i + 1)]);
    }
    for i in (1..=n).rev() {
        b.push(Label::FinOuter(i), &[f(i), g(i)]);
    }
    for i in (1..=n).rev() {
        let (a, c) = vertical_edge(i);
        b.push(Label::Vertical(i), &[v(a), v(c)]);
    }
    for i in 1..=n {
        let (apex, left, right) = base_triangle(i);
        let level = b.take_level();
        b.push_at(Label::BaseMidline(i), &[v(apex), w(i)], level);
        b.push_at(Label::BoxedBase(i), &[v(apex), w(i), v(left)], level);
        b.push_at(Label::Base(i), &[v(apex), w(i), v(right)], level);
    }
    for i in 1..=n {
        let (a, c) = vertical_edge(i);
        let level = b.take_level();
        b.push_at(Label::FinMidline(i), &[g(i), v(a)], level);
        b.push_at(Label::BoxedFin(i), &[f(i), g(i), v(a)], level);
        b.push_at(Label::FinTriangle(i), &[g(i), v(a), v(c)], level);
    }
    Ok(b.finish(Variant::Modified, n))
}

pub fn generate(variant: Variant, n: usize) -> Result<LabeledComplex, GeneratorError> {
    match variant {
        Variant::Strip => strip(n),
        Variant::Modified => modified_strip(n),
    }
}

/// Simplex counts by dimension and in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub total: usize,
}

pub fn strip_sizes(variant: Variant, n: usize) -> Sizes {
    let (vertices, edges, triangles) = match variant {
        Variant::Strip => (2 * n + 2, 4 * n + 1, 2 * n),
        Variant::Modified => (4 * n + 2, 8 * n + 1, 4 * n),
    };
    Sizes {
        vertices,
        edges,
        triangles,
        total: vertices + edges + triangles,
    }
}

pub fn measured_sizes(complex: &FilteredComplex) -> Sizes {
    Sizes {
        vertices: complex.count_dimension(0),
        edges: complex.count_dimension(1),
        triangles: complex.count_dimension(2),
        total: complex.len(),
    }
}

fn exact_third(name: &'static str, n: usize, numerator: i128) -> Result<u64, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::InvalidSize(n));
    }
    if numerator % 3 != 0 || numerator < 0 {
        return Err(GeneratorError::NotDivisible { name, n, numerator });
    }
    Ok((numerator / 3) as u64)
}

/// Closed-form field-addition count for reducing the `∂₂` block of `X(n)`
/// under the chain-at-a-time accounting: `(n³ + 6n² + 26n − 15) / 3`.
///
/// Measured counts are at least this large; the closed form does not charge
/// the intermediate additions a column-by-column reduction performs.
pub fn predicted_additions_strip(n: usize) -> Result<u64, GeneratorError> {
    let m = n as i128;
    exact_third("S", n, m * m * m + 6 * m * m + 26 * m - 15)
}

/// Closed form `(2n³ + 9n² + 37n − 18) / 3` for the `∂₂` block of `Y(n)`.
/// Advisory only; see [`modified_prediction_components`].
pub fn predicted_additions_modified(n: usize) -> Result<u64, GeneratorError> {
    let m = n as i128;
    exact_third("S'", n, 2 * m * m * m + 9 * m * m + 37 * m - 18)
}

/// The three terms the `Y(n)` count is assembled from: forming the midline
/// chains (`12n`), the base chains (`n² + 5n − 6`) and the fin chains
/// (`(2/3) n (n² + 3n + 8)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModifiedPrediction {
    pub formation: u64,
    pub base: u64,
    pub fin: u64,
}

impl ModifiedPrediction {
    /// `(2n³ + 9n² + 67n − 18) / 3`; differs from
    /// [`predicted_additions_modified`] by `10n`.
    pub fn total(&self) -> u64 {
        self.formation + self.base + self.fin
    }
}

pub fn modified_prediction_components(n: usize) -> Result<ModifiedPrediction, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::InvalidSize(n));
    }
    let m = n as i128;
    Ok(ModifiedPrediction {
        formation: 12 * n as u64,
        base: (m * m + 5 * m - 6) as u64,
        fin: exact_third("fin", n, 2 * m * (m * m + 3 * m + 8))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::boundary_submatrix;

    fn names(c: &LabeledComplex, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| c.name(i)).collect()
    }

    #[test]
    fn strip_two_matches_worked_matrix() {
        let x = strip(2).unwrap();
        let b = boundary_submatrix(&x.complex, 2).unwrap();
        assert_eq!(
            names(&x, &b.row_labels),
            ["2'", "1'", "0'", "-2*", "-1*", "-2", "-1", "2", "1"]
        );
        assert_eq!(names(&x, &b.col_labels), ["(1)", "(2)", "(-1)", "(-2)"]);
        let expected: [[u8; 4]; 9] = [
            [0, 1, 0, 0],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [1, 0, 0, 1],
            [1, 1, 1, 0],
        ];
        let dense = b.to_dense();
        for r in 0..9 {
            assert_eq!(dense[r], expected[r], "row {}", x.name(b.row_labels[r]));
        }
    }

    #[test]
    fn strip_two_edge_block() {
        let x = strip(2).unwrap();
        let b = boundary_submatrix(&x.complex, 1).unwrap();
        assert_eq!(names(&x, &b.row_labels), ["f1", "f2", "v1", "v2", "v3", "v4"]);
        assert_eq!(
            names(&x, &b.col_labels),
            ["2'", "1'", "0'", "-2*", "-1*", "-2", "-1", "2", "1"]
        );
        let expected: [[u8; 9]; 6] = [
            [0, 0, 0, 0, 1, 0, 1, 0, 0],
            [0, 0, 0, 1, 0, 1, 0, 0, 0],
            [1, 0, 0, 1, 1, 0, 0, 1, 1],
            [0, 1, 1, 0, 0, 0, 1, 0, 1],
            [0, 1, 0, 0, 0, 1, 0, 1, 0],
            [1, 0, 1, 0, 0, 0, 0, 0, 0],
        ];
        let dense = b.to_dense();
        for r in 0..6 {
            assert_eq!(dense[r], expected[r], "row {}", x.name(b.row_labels[r]));
        }
    }

    #[test]
    fn strip_one_by_hand() {
        let x = strip(1).unwrap();
        let order: Vec<String> = x.labels.iter().map(Label::to_string).collect();
        assert_eq!(
            order,
            ["f1", "v1", "v2", "v3", "1'", "0'", "-1*", "-1", "1", "(1)", "(-1)"]
        );
        let verts = |l: Label| x.complex.simplex(x.index_of(l).unwrap()).vertices().to_vec();
        // f1 = 1, v_i = 1 + i
        assert_eq!(verts(Label::Horizontal(1)), [3, 4]);
        assert_eq!(verts(Label::ZeroPrime), [2, 4]);
        assert_eq!(verts(Label::FinStar(1)), [1, 2]);
        assert_eq!(verts(Label::Fin(1)), [1, 3]);
        assert_eq!(verts(Label::Vertical(1)), [2, 3]);
        assert_eq!(verts(Label::Base(1)), [2, 3, 4]);
        assert_eq!(verts(Label::FinTriangle(1)), [1, 2, 3]);
        assert_eq!(x.complex.levels(), (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn sizes_and_validity() {
        for n in 1..=30 {
            for variant in [Variant::Strip, Variant::Modified] {
                let c = generate(variant, n).unwrap();
                assert!(c.complex.validate().is_ok(), "{variant} {n}");
                assert_eq!(measured_sizes(&c.complex), strip_sizes(variant, n));
                assert_eq!(c.complex.euler_characteristic(), 1);
                assert_eq!(c.labels.len(), c.complex.len());
            }
        }
        assert_eq!(
            strip_sizes(Variant::Strip, 2),
            Sizes { vertices: 6, edges: 9, triangles: 4, total: 19 }
        );
        assert_eq!(
            strip_sizes(Variant::Modified, 2),
            Sizes { vertices: 10, edges: 17, triangles: 8, total: 35 }
        );
        assert_eq!(strip_sizes(Variant::Strip, 1).total, 11);
        assert!(strip(0).is_err());
        assert!(modified_strip(0).is_err());
    }

    #[test]
    fn modified_boundaries_match_worked_example() {
        let y = modified_strip(2).unwrap();
        let boundary = |l: Label| -> Vec<String> {
            let idx = y.index_of(l).unwrap();
            let index = y.complex.index_map();
            let mut faces: Vec<usize> = y
                .complex
                .simplex(idx)
                .facets()
                .unwrap()
                .iter()
                .map(|f| index[f])
                .collect();
            faces.sort_unstable();
            faces.reverse();
            faces.iter().map(|&i| y.name(i)).collect()
        };
        assert_eq!(boundary(Label::BoxedBase(1)), ["e1b", "1", "1'"]);
        assert_eq!(boundary(Label::Base(1)), ["e1b", "2", "1''"]);
        assert_eq!(boundary(Label::BoxedBase(2)), ["e2b", "0'", "2'"]);
        assert_eq!(boundary(Label::Base(2)), ["e2b", "1", "2''"]);
        assert_eq!(boundary(Label::BoxedFin(1)), ["e1f", "-1'", "-1*"]);
        assert_eq!(boundary(Label::FinTriangle(1)), ["e1f", "1", "-1''"]);
        assert_eq!(boundary(Label::BoxedFin(2)), ["e2f", "-2'", "-2*"]);
        assert_eq!(boundary(Label::FinTriangle(2)), ["e2f", "2", "-2''"]);
    }

    #[test]
    fn modified_triples_share_levels() {
        let y = modified_strip(3).unwrap();
        for i in 1..=3 {
            let l = |label| y.complex.level(y.index_of(label).unwrap());
            assert_eq!(l(Label::BaseMidline(i)), l(Label::BoxedBase(i)));
            assert_eq!(l(Label::BaseMidline(i)), l(Label::Base(i)));
            assert_eq!(l(Label::FinMidline(i)), l(Label::BoxedFin(i)));
            assert_eq!(l(Label::FinMidline(i)), l(Label::FinTriangle(i)));
        }
        // stages (1)-(7): 4n+2 vertices and 6n+1 edges, then 2n shared levels
        assert_eq!(*y.complex.levels().last().unwrap(), (12 * 3 + 3) as Level);
    }

    #[test]
    fn predictor_values() {
        assert_eq!(predicted_additions_strip(1).unwrap(), 6);
        assert_eq!(predicted_additions_strip(2).unwrap(), 23);
        assert_eq!(predicted_additions_strip(10).unwrap(), 615);
        assert_eq!(predicted_additions_modified(1).unwrap(), 10);
        assert_eq!(predicted_additions_modified(2).unwrap(), 36);
        assert_eq!(predicted_additions_modified(3).unwrap(), 76);
        assert!(predicted_additions_strip(0).is_err());
        for n in 1..=50 {
            let c = modified_prediction_components(n).unwrap();
            let m = n as u64;
            assert_eq!(3 * c.total(), 2 * m * m * m + 9 * m * m + 67 * m - 18);
            assert_eq!(c.total(), predicted_additions_modified(n).unwrap() + 10 * m);
        }
    }

    #[test]
    fn comments_name_every_simplex() {
        let x = strip(2).unwrap();
        let c = x.comments();
        assert!(c[0].contains("X(2)"));
        assert!(c[1].contains("f1=1") && c[1].contains("v4=6"));
        assert_eq!(c[2].split_whitespace().count(), 1 + 19);
    }
}
