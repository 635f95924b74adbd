//! Clique-complex filtrations of filtered graphs and their realization as
//! Vietoris–Rips filtrations of point clouds.
//!
//! A filtered graph on `n` vertices is embedded by building the Gram matrix
//! `K` with unit diagonal and `K_ij = δ_{ℓ(i,j)}`, where `ℓ` is the edge's
//! appearance level and `δ` is strictly decreasing with `δ_{m+1} = 0`. The
//! Cholesky factor of `K` gives unit vectors with
//! `‖p_i − p_j‖² = 2 − 2δ_{ℓ(i,j)}`, so the threshold graph at any radius
//! strictly between `d_t = √(2 − 2δ_t)` and `d_{t+1}` is exactly `G_t`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{FilteredComplex, Level, Simplex};
use crate::f2::boundary_matrix;
use crate::reduction::{diagram, extract_pairs, reduce_standard, Death};

/// Smallest accepted gap `d_{t+1} − d_t` between consecutive level distances.
pub const MIN_THRESHOLD_GAP: f64 = 1e-7;
/// Smallest accepted distance between any pairwise distance and any radius.
pub const MIN_DECISION_MARGIN: f64 = 1e-8;
pub const NORM_TOLERANCE: f64 = 1e-10;
pub const DISTANCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizationError {
    #[error("need at least 2 vertices, got {0}")]
    TooFewPoints(usize),
    #[error("dimension cap must be 1 or 2, got {0}")]
    BadDimCap(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("refusing m = {m} levels: smallest threshold gap {gap:e} is below {MIN_THRESHOLD_GAP:e}")]
    ThresholdUnderflow { m: usize, gap: f64 },
    #[error("not a flag complex: {0}")]
    NotFlag(String),
}

/// A graph on a fixed vertex set whose edges carry appearance levels.
///
/// Vertices are addressed by position `0..n`; `vertex_ids` keeps the
/// original identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredGraph {
    vertex_ids: Vec<usize>,
    edges: BTreeMap<(usize, usize), Level>,
}

impl FilteredGraph {
    pub fn new(
        vertex_ids: Vec<usize>,
        edges: impl IntoIterator<Item = ((usize, usize), Level)>,
    ) -> Result<Self, RealizationError> {
        let n = vertex_ids.len();
        if vertex_ids.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(RealizationError::InvalidGraph("repeated vertex id".into()));
        }
        let mut map = BTreeMap::new();
        for ((a, b), level) in edges {
            if a == b {
                return Err(RealizationError::InvalidGraph(format!("self-loop at {a}")));
            }
            if a >= n || b >= n {
                return Err(RealizationError::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if level == 0 {
                return Err(RealizationError::InvalidGraph(format!("edge ({a},{b}) at level 0")));
            }
            if map.insert((a.min(b), a.max(b)), level).is_some() {
                return Err(RealizationError::InvalidGraph(format!("edge ({a},{b}) repeated")));
            }
        }
        Ok(FilteredGraph { vertex_ids, edges: map })
    }

    /// Graph on vertices `0..n` with ids equal to positions.
    pub fn with_positions(
        n: usize,
        edges: impl IntoIterator<Item = ((usize, usize), Level)>,
    ) -> Result<Self, RealizationError> {
        Self::new((0..n).collect(), edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    /// Edges as `(a, b) ↦ level` with `a < b` vertex positions.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), Level> {
        &self.edges
    }

    pub fn level(&self, a: usize, b: usize) -> Option<Level> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    /// Number of filtration stages, i.e. the largest edge level.
    pub fn stages(&self) -> Level {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// Edges present at stage `t`.
    pub fn edges_up_to(&self, t: Level) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .filter(|(_, &l)| l <= t)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Renumbers the distinct edge levels to `1..=m`, preserving order.
    /// `level_map[t - 1]` is the original level of new level `t`.
    pub fn compress_levels(&self) -> (FilteredGraph, Vec<Level>) {
        let level_map: Vec<Level> = self
            .edges
            .values()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rank: HashMap<Level, Level> = level_map
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, k as Level + 1))
            .collect();
        let edges = self.edges.iter().map(|(&e, l)| (e, rank[l])).collect();
        (
            FilteredGraph {
                vertex_ids: self.vertex_ids.clone(),
                edges,
            },
            level_map,
        )
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n_vertices()];
        for &(a, b) in self.edges.keys() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// All 3-cliques `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for &(a, b) in self.edges.keys() {
            for &c in adj[a].intersection(&adj[b]) {
                if c > b {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}

/// Vertices and edges of a complex with their levels. Vertex positions
/// follow the complex order of the 0-simplices.
pub fn one_skeleton(complex: &FilteredComplex) -> FilteredGraph {
    let vertex_ids: Vec<usize> = complex
        .simplices()
        .iter()
        .filter(|s| s.dimension() == 0)
        .map(|s| s.vertices()[0])
        .collect();
    let position: HashMap<usize, usize> =
        vertex_ids.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let edges = complex
        .iter()
        .filter(|(_, s, _)| s.dimension() == 1)
        .map(|(_, s, l)| {
            let (a, b) = (position[&s.vertices()[0]], position[&s.vertices()[1]]);
            ((a.min(b), a.max(b)), l)
        })
        .collect();
    FilteredGraph { vertex_ids, edges }
}

/// Clique complex filtration up to dimension `dim_cap`.
///
/// Vertices sit at level 1 (all present from the start), edges at their
/// level, triangles at the largest level of their edges. Ties are ordered
/// by dimension, then lexicographically by vertex ids.
pub fn clique_complex(graph: &FilteredGraph, dim_cap: usize) -> Result<FilteredComplex, RealizationError> {
    if !(1..=2).contains(&dim_cap) {
        return Err(RealizationError::BadDimCap(dim_cap));
    }
    let ids = graph.vertex_ids();
    let mut entries: Vec<(Level, usize, Simplex)> = ids
        .iter()
        .map(|&v| (1, 0, Simplex::vertex(v)))
        .collect();
    for (&(a, b), &l) in graph.edges() {
        entries.push((l, 1, Simplex::from_unsorted(vec![ids[a], ids[b]]).expect("no loops")));
    }
    if dim_cap == 2 {
        for [a, b, c] in graph.triangles() {
            let l = [(a, b), (a, c), (b, c)]
                .iter()
                .map(|&(x, y)| graph.level(x, y).expect("clique edge"))
                .max()
                .expect("three edges");
            entries.push((l, 2, Simplex::from_unsorted(vec![ids[a], ids[b], ids[c]]).expect("distinct")));
        }
    }
    entries.sort();
    let (simplices, levels) = entries.into_iter().map(|(l, _, s)| (s, l)).unzip();
    Ok(FilteredComplex::new(simplices, levels).expect("parallel lists"))
}

/// A 3-clique that is not filled in when its last edge arrives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagCounterexample {
    /// Level at which the clique's last edge appears.
    pub level: Level,
    pub vertices: [usize; 3],
    /// Level of the triangle in the complex, if it exists at all.
    pub triangle_level: Option<Level>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagCheck {
    pub is_flag: bool,
    /// The violation at the lowest level, if any.
    pub counterexample: Option<FlagCounterexample>,
}

/// Whether every sublevel complex equals the clique complex (up to
/// dimension 2) of its own 1-skeleton.
pub fn flag_check(complex: &FilteredComplex) -> FlagCheck {
    let graph = one_skeleton(complex);
    let ids = graph.vertex_ids();
    let triangle_levels: HashMap<&Simplex, Level> = complex
        .iter()
        .filter(|(_, s, _)| s.dimension() == 2)
        .map(|(_, s, l)| (s, l))
        .collect();
    let mut worst: Option<FlagCounterexample> = None;
    for [a, b, c] in graph.triangles() {
        let level = [(a, b), (a, c), (b, c)]
            .iter()
            .map(|&(x, y)| graph.level(x, y).expect("clique edge"))
            .max()
            .expect("three edges");
        let simplex = Simplex::from_unsorted(vec![ids[a], ids[b], ids[c]]).expect("distinct");
        let triangle_level = triangle_levels.get(&simplex).copied();
        if triangle_level != Some(level) && worst.as_ref().is_none_or(|w| level < w.level) {
            let mut vertices = [ids[a], ids[b], ids[c]];
            vertices.sort_unstable();
            worst = Some(FlagCounterexample {
                level,
                vertices,
                triangle_level,
            });
        }
    }
    FlagCheck {
        is_flag: worst.is_none(),
        counterexample: worst,
    }
}

/// How the off-diagonal Gram entries `δ_1 > … > δ_m > δ_{m+1} = 0` are chosen.
/// Both keep `(n − 1) δ_1 <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaSchedule {
    /// `δ_t = 2^{−t} / (n − 1)`. Consecutive distances collapse below f64
    /// resolution after a few dozen levels.
    Geometric,
    /// `δ_t = (m + 1 − t) / (2m (n − 1))`: evenly spaced, same `δ_1`.
    #[default]
    Linear,
}

impl DeltaSchedule {
    pub fn deltas(self, n: usize, m: usize) -> Vec<f64> {
        let eps = 1.0 / (n as f64 - 1.0);
        let mut deltas: Vec<f64> = (1..=m)
            .map(|t| match self {
                DeltaSchedule::Geometric => eps * 0.5f64.powi(t as i32),
                DeltaSchedule::Linear => eps * (m + 1 - t) as f64 / (2 * m) as f64,
            })
            .collect();
        deltas.push(0.0);
        deltas
    }
}

impl std::str::FromStr for DeltaSchedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "geometric" => Ok(DeltaSchedule::Geometric),
            "linear" => Ok(DeltaSchedule::Linear),
            other => Err(format!("unknown schedule {other:?} (expected linear or geometric)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub k: Vec<Vec<f64>>,
    /// `deltas[t - 1] = δ_t` for `t = 1..=m + 1`; the last entry is 0.
    pub deltas: Vec<f64>,
}

impl GramMatrix {
    pub fn max_off_diagonal_row_sum(&self) -> f64 {
        self.k
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, x)| x.abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Gram matrix for a graph whose levels are `1..=m` (see
/// [`FilteredGraph::compress_levels`]). Missing edges get `δ_{m+1} = 0`.
pub fn gram_matrix(graph: &FilteredGraph, schedule: DeltaSchedule) -> Result<GramMatrix, RealizationError> {
    let n = graph.n_vertices();
    if n < 2 {
        return Err(RealizationError::TooFewPoints(n));
    }
    let m = graph.stages() as usize;
    let deltas = schedule.deltas(n, m);
    let mut k = vec![vec![0.0; n]; n];
    for (i, row) in k.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (&(a, b), &l) in graph.edges() {
        let d = deltas[l as usize - 1];
        k[a][b] = d;
        k[b][a] = d;
    }
    Ok(GramMatrix { k, deltas })
}

/// Rows of the lower Cholesky factor of `k`: `n` points in `R^n` whose
/// inner products reproduce `k`.
pub fn embed(k: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, RealizationError> {
    let n = k.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let dot: f64 = (0..j).map(|s| l[i][s] * l[j][s]).sum();
            if i == j {
                let pivot = k[i][i] - dot;
                if pivot <= 0.0 || !pivot.is_finite() {
                    return Err(RealizationError::NotPositiveDefinite { row: i, pivot });
                }
                l[i][i] = pivot.sqrt();
            } else {
                l[i][j] = (k[i][j] - dot) / l[j][j];
            }
        }
    }
    Ok(l)
}

/// Level distances `d_t = √(2 − 2δ_t)` for `t = 1..=m + 1` and midpoint
/// radii `r_t = (d_t + d_{t+1}) / 2` for `t = 1..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Thresholds {
    pub distances: Vec<f64>,
    pub radii: Vec<f64>,
}

impl Thresholds {
    /// Smallest `d_{t+1} − d_t`; infinite when there are no levels.
    pub fn min_gap(&self) -> f64 {
        self.distances
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Refuses level sets whose distances are too close to separate reliably.
    pub fn check_separation(&self) -> Result<(), RealizationError> {
        let gap = self.min_gap();
        if gap > MIN_THRESHOLD_GAP {
            Ok(())
        } else {
            Err(RealizationError::ThresholdUnderflow {
                m: self.radii.len(),
                gap,
            })
        }
    }
}

pub fn thresholds(deltas: &[f64]) -> Thresholds {
    let distances: Vec<f64> = deltas.iter().map(|d| (2.0 - 2.0 * d).sqrt()).collect();
    let radii = distances.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    Thresholds { distances, radii }
}

pub fn distance(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Threshold graph filtration: edge `(i, j)` appears at the smallest `t`
/// with `‖p_i − p_j‖ <= r_t`.
pub fn vietoris_rips_graph(points: &[Vec<f64>], radii: &[f64], vertex_ids: Vec<usize>) -> FilteredGraph {
    let n = points.len();
    let mut edges = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(&points[i], &points[j]);
            let t = radii.partition_point(|&r| r < d);
            if t < radii.len() {
                edges.insert((i, j), t as Level + 1);
            }
        }
    }
    FilteredGraph { vertex_ids, edges }
}

/// Vietoris–Rips filtration at the given increasing radii. Vertex ids are
/// point positions `0..n`.
pub fn vietoris_rips(
    points: &[Vec<f64>],
    radii: &[f64],
    dim_cap: usize,
) -> Result<FilteredComplex, RealizationError> {
    clique_complex(&vietoris_rips_graph(points, radii, (0..points.len()).collect()), dim_cap)
}

/// An embedded point cloud with the radii that reproduce a filtered graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCloudRealization {
    pub vertex_ids: Vec<usize>,
    pub points: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
    /// `level_map[t - 1]` is the original graph level realized at radius `r_t`.
    pub level_map: Vec<Level>,
    #[serde(skip)]
    pub gram: Vec<Vec<f64>>,
    #[serde(skip)]
    pub deltas: Vec<f64>,
}

impl PointCloudRealization {
    /// Header `n m`, then the radii, then one point per line; numbers carry
    /// 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.points.len(), self.radii.len());
        let radii: Vec<String> = self.radii.iter().map(|&r| format_sig17(r)).collect();
        let _ = writeln!(out, "{}", radii.join(" "));
        for p in &self.points {
            let coords: Vec<String> = p.iter().map(|&x| format_sig17(x)).collect();
            let _ = writeln!(out, "{}", coords.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Parses the text written by [`PointCloudRealization::to_text`] back into
/// `(points, radii)`.
pub fn parse_point_cloud(text: &str) -> Result<(Vec<Vec<f64>>, Vec<f64>), String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("missing header")?;
    let mut fields = header.split_whitespace().map(str::parse::<usize>);
    let (Some(Ok(n)), Some(Ok(m))) = (fields.next(), fields.next()) else {
        return Err(format!("bad header {header:?}"));
    };
    let parse_row = |line: &str| {
        line.split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}")))
            .collect::<Result<Vec<f64>, String>>()
    };
    let radii = if m == 0 {
        lines.next();
        Vec::new()
    } else {
        parse_row(lines.next().ok_or("missing radii line")?)?
    };
    if radii.len() != m {
        return Err(format!("expected {m} radii, got {}", radii.len()));
    }
    let points = lines.take(n).map(parse_row).collect::<Result<Vec<_>, _>>()?;
    if points.len() != n {
        return Err(format!("expected {n} points, got {}", points.len()));
    }
    Ok((points, radii))
}

/// `%.17g`-style rendering: 17 significant digits, fixed notation for
/// moderate exponents.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp).max(0) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

/// Embeds a filtered graph (levels compressed first).
pub fn realize(graph: &FilteredGraph, schedule: DeltaSchedule) -> Result<PointCloudRealization, RealizationError> {
    let (compressed, level_map) = graph.compress_levels();
    let gram = gram_matrix(&compressed, schedule)?;
    let th = thresholds(&gram.deltas);
    th.check_separation()?;
    let points = embed(&gram.k)?;
    Ok(PointCloudRealization {
        vertex_ids: graph.vertex_ids().to_vec(),
        points,
        radii: th.radii,
        level_map,
        gram: gram.k,
        deltas: gram.deltas,
    })
}

/// An edge whose VR level differs from its graph level (`None` = absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMismatch {
    pub edge: (usize, usize),
    pub expected: Option<Level>,
    pub found: Option<Level>,
}

#[derive(Debug, Clone)]
pub struct RealizationReport {
    pub n_points: usize,
    pub stages: usize,
    pub gershgorin_row_sum: f64,
    pub max_norm_error: f64,
    pub max_distance_error: f64,
    pub min_threshold_gap: f64,
    /// Smallest `|‖p_i − p_j‖ − r_t|` over all pairs and radii.
    pub min_decision_margin: f64,
    /// `(t, edges of VR(r_t) that differ from G_t)` for every stage with a
    /// difference.
    pub level_mismatches: Vec<(Level, Vec<EdgeMismatch>)>,
    /// H₁ of the clique filtration and of the VR filtration, compressed levels.
    pub h1_clique: Vec<(Level, Death)>,
    pub h1_vietoris_rips: Vec<(Level, Death)>,
    /// H₁ of the source complex compared with the VR H₁ translated back to
    /// original levels; set by [`verify_complex_realization`].
    pub native_h1_match: Option<bool>,
    pub realization: PointCloudRealization,
}

impl RealizationReport {
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.gershgorin_row_sum > 0.5 + 1e-15 {
            out.push(format!("Gershgorin row sum {} exceeds 1/2", self.gershgorin_row_sum));
        }
        if self.max_norm_error > NORM_TOLERANCE {
            out.push(format!("norm error {:e}", self.max_norm_error));
        }
        if self.max_distance_error > DISTANCE_TOLERANCE {
            out.push(format!("squared-distance error {:e}", self.max_distance_error));
        }
        if self.min_decision_margin <= MIN_DECISION_MARGIN {
            out.push(format!("decision margin {:e}", self.min_decision_margin));
        }
        for (t, edges) in &self.level_mismatches {
            out.push(format!("level {t}: {} edge(s) differ", edges.len()));
        }
        if self.h1_clique != self.h1_vietoris_rips {
            out.push("H1 diagrams differ".to_string());
        }
        if self.native_h1_match == Some(false) {
            out.push("H1 differs from the source complex".to_string());
        }
        out
    }

    pub fn is_ok(&self) -> bool {
        self.mismatches().is_empty()
    }
}

fn h1(complex: &FilteredComplex) -> Vec<(Level, Death)> {
    let result = reduce_standard(&boundary_matrix(complex));
    let pairs = extract_pairs(&result, complex).expect("full matrix");
    diagram(&pairs, Some(1)).points(1).to_vec()
}

/// Realizes `graph` and checks the round trip: Gram identities, per-stage
/// edge sets of the VR filtration against the graph, and H₁ of the two
/// filtrations.
pub fn verify_realization(graph: &FilteredGraph, schedule: DeltaSchedule) -> Result<RealizationReport, RealizationError> {
    let n = graph.n_vertices();
    if n < 2 {
        return Err(RealizationError::TooFewPoints(n));
    }
    let realization = realize(graph, schedule)?;
    let (compressed, _) = graph.compress_levels();
    let m = realization.radii.len();
    let k = &realization.gram;
    let points = &realization.points;

    let mut max_norm_error = 0.0f64;
    let mut max_distance_error = 0.0f64;
    let mut min_decision_margin = f64::INFINITY;
    for i in 0..n {
        let norm = points[i].iter().map(|x| x * x).sum::<f64>().sqrt();
        max_norm_error = max_norm_error.max((norm - 1.0).abs());
        for j in i + 1..n {
            let d = distance(&points[i], &points[j]);
            max_distance_error = max_distance_error.max((d * d - (2.0 - 2.0 * k[i][j])).abs());
            for &r in &realization.radii {
                min_decision_margin = min_decision_margin.min((d - r).abs());
            }
        }
    }

    let vr = vietoris_rips_graph(points, &realization.radii, graph.vertex_ids().to_vec());
    let mut level_mismatches = Vec::new();
    for t in 1..=m as Level {
        let expected = compressed.edges_up_to(t);
        let found = vr.edges_up_to(t);
        let diff: Vec<EdgeMismatch> = expected
            .symmetric_difference(&found)
            .map(|&(a, b)| EdgeMismatch {
                edge: (graph.vertex_ids()[a], graph.vertex_ids()[b]),
                expected: compressed.level(a, b),
                found: vr.level(a, b),
            })
            .collect();
        if !diff.is_empty() {
            level_mismatches.push((t, diff));
        }
    }

    let gram_check = GramMatrix {
        k: k.clone(),
        deltas: realization.deltas.clone(),
    };
    Ok(RealizationReport {
        n_points: n,
        stages: m,
        gershgorin_row_sum: gram_check.max_off_diagonal_row_sum(),
        max_norm_error,
        max_distance_error,
        min_threshold_gap: thresholds(&realization.deltas).min_gap(),
        min_decision_margin,
        level_mismatches,
        h1_clique: h1(&clique_complex(&compressed, 2)?),
        h1_vietoris_rips: h1(&clique_complex(&vr, 2)?),
        native_h1_match: None,
        realization,
    })
}

/// Flag-gated round trip for a filtered complex: refuses non-flag input,
/// realizes its 1-skeleton and also compares H₁ against the complex's own
/// filtration (VR levels mapped back through the level map).
pub fn verify_complex_realization(
    complex: &FilteredComplex,
    schedule: DeltaSchedule,
) -> Result<RealizationReport, RealizationError> {
    let check = flag_check(complex);
    if let Some(c) = check.counterexample {
        return Err(RealizationError::NotFlag(format!(
            "clique {:?} complete at level {} but filled at {}",
            c.vertices,
            c.level,
            c.triangle_level.map_or("never".to_string(), |l| l.to_string())
        )));
    }
    let graph = one_skeleton(complex);
    let mut report = verify_realization(&graph, schedule)?;
    let map = &report.realization.level_map;
    let mut translated: Vec<(Level, Death)> = report
        .h1_vietoris_rips
        .iter()
        .map(|&(b, d)| {
            let d = match d {
                Death::Finite(l) => Death::Finite(map[l as usize - 1]),
                Death::Infinite => Death::Infinite,
            };
            (map[b as usize - 1], d)
        })
        .collect();
    translated.sort_unstable();
    report.native_h1_match = Some(translated == h1(complex));
    Ok(report)
}
