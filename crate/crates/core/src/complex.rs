//! Filtered simplicial complexes stored as a totally ordered simplex list.
//!
//! Indices are 1-based everywhere in this crate: the simplex at position `i`
//! of the total order has index `i`, and index 0 is reserved as the "no simplex"
//! sentinel (it is what `low` returns for a zero column).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Filtration value. Always a positive integer.
pub type Level = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex must have at least one vertex")]
    EmptySimplex,
    #[error("simplex vertices must be strictly increasing, got {0:?}")]
    UnsortedVertices(Vec<usize>),
    #[error("vertex has no facets")]
    VertexHasNoFacets,
    #[error("{simplices} simplices but {levels} levels")]
    LengthMismatch { simplices: usize, levels: usize },
}

/// A simplex given by its strictly increasing vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(vertices: Vec<usize>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::UnsortedVertices(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Sorts the vertices first; still rejects repeated vertices.
    pub fn from_unsorted(mut vertices: Vec<usize>) -> Result<Self, ComplexError> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-1 faces, obtained by deleting the first vertex, then the
    /// second, and so on.
    pub fn facets(&self) -> Result<Vec<Simplex>, ComplexError> {
        if self.0.len() < 2 {
            return Err(ComplexError::VertexHasNoFacets);
        }
        Ok((0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect())
    }

    /// All non-empty proper faces.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        let full = (1u64 << k) - 1;
        (1..full)
            .map(|mask| {
                Simplex(
                    (0..k)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| self.0[b])
                        .collect(),
                )
            })
            .collect()
    }
}

/// Free-function form of [`Simplex::facets`].
pub fn facets(simplex: &Simplex) -> Result<Vec<Simplex>, ComplexError> {
    simplex.facets()
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A totally ordered list of simplices with one filtration level per simplex.
///
/// Construction does not check the filtration invariants; call
/// [`FilteredComplex::validate`] for that. Everything produced by the
/// generators and by [`parse_text`] / [`parse_json`] is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    levels: Vec<Level>,
}

impl FilteredComplex {
    pub fn new(simplices: Vec<Simplex>, levels: Vec<Level>) -> Result<Self, ComplexError> {
        if simplices.len() != levels.len() {
            return Err(ComplexError::LengthMismatch {
                simplices: simplices.len(),
                levels: levels.len(),
            });
        }
        Ok(FilteredComplex { simplices, levels })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Simplex with 1-based index `index`.
    pub fn simplex(&self, index: usize) -> &Simplex {
        &self.simplices[index - 1]
    }

    /// Level of the simplex with 1-based index `index`.
    pub fn level(&self, index: usize) -> Level {
        self.levels[index - 1]
    }

    pub fn dimension_of(&self, index: usize) -> usize {
        self.simplex(index).dimension()
    }

    /// `(index, simplex, level)` triples in total order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Simplex, Level)> + '_ {
        self.simplices
            .iter()
            .zip(&self.levels)
            .enumerate()
            .map(|(k, (s, &l))| (k + 1, s, l))
    }

    pub fn max_dimension(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dimension).max()
    }

    pub fn count_dimension(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dimension() == dim).count()
    }

    /// Map from simplex to 1-based index. If a simplex is listed twice the
    /// first occurrence wins.
    pub fn index_map(&self) -> HashMap<&Simplex, usize> {
        let mut map = HashMap::with_capacity(self.simplices.len());
        for (k, s) in self.simplices.iter().enumerate() {
            map.entry(s).or_insert(k + 1);
        }
        map
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dimension() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Simplices with level at most `level`, in the original order.
    pub fn restrict_to_level(&self, level: Level) -> FilteredComplex {
        let (simplices, levels) = self
            .simplices
            .iter()
            .zip(&self.levels)
            .filter(|(_, &l)| l <= level)
            .map(|(s, &l)| (s.clone(), l))
            .unzip();
        FilteredComplex { simplices, levels }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// One broken filtration invariant. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingFace { face: Simplex, simplex: Simplex },
    FaceAfterCoface { face_index: usize, coface_index: usize },
    FaceLevelExceeds { face_index: usize, coface_index: usize },
    LevelDecreases { index: usize },
    NonPositiveLevel { index: usize },
    Duplicate { first: usize, second: usize },
}

impl Violation {
    /// Index of the simplex the violation is attributed to.
    fn offending_index(&self, complex: &FilteredComplex) -> Option<usize> {
        match self {
            Violation::MissingFace { simplex, .. } => complex.index_map().get(simplex).copied(),
            Violation::FaceAfterCoface { face_index, coface_index } => {
                Some((*face_index).max(*coface_index))
            }
            Violation::FaceLevelExceeds { coface_index, .. } => Some(*coface_index),
            Violation::LevelDecreases { index } | Violation::NonPositiveLevel { index } => {
                Some(*index)
            }
            Violation::Duplicate { second, .. } => Some(*second),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingFace { face, simplex } => {
                write!(f, "missing face {face} of {simplex}")
            }
            Violation::FaceAfterCoface { face_index, coface_index } => write!(
                f,
                "face at index {face_index} comes after its coface at index {coface_index}"
            ),
            Violation::FaceLevelExceeds { face_index, coface_index } => write!(
                f,
                "face at index {face_index} has a higher level than its coface at index {coface_index}"
            ),
            Violation::LevelDecreases { index } => {
                write!(f, "level decreases at index {index}")
            }
            Violation::NonPositiveLevel { index } => {
                write!(f, "level at index {index} is not positive")
            }
            Violation::Duplicate { first, second } => {
                write!(f, "simplex at index {second} repeats index {first}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(complex: &FilteredComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen: HashMap<&Simplex, usize> = HashMap::new();
    for (index, simplex, _) in complex.iter() {
        if let Some(&first) = seen.get(simplex) {
            violations.push(Violation::Duplicate { first, second: index });
        } else {
            seen.insert(simplex, index);
        }
    }

    let mut previous: Option<Level> = None;
    for (index, simplex, level) in complex.iter() {
        if level == 0 {
            violations.push(Violation::NonPositiveLevel { index });
        }
        if previous.is_some_and(|p| level < p) {
            violations.push(Violation::LevelDecreases { index });
        }
        previous = Some(level);

        for face in simplex.proper_faces() {
            match seen.get(&face) {
                None => violations.push(Violation::MissingFace {
                    face,
                    simplex: simplex.clone(),
                }),
                Some(&face_index) => {
                    if face_index > index {
                        violations.push(Violation::FaceAfterCoface {
                            face_index,
                            coface_index: index,
                        });
                    }
                    if complex.level(face_index) > level {
                        violations.push(Violation::FaceLevelExceeds {
                            face_index,
                            coface_index: index,
                        });
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

pub fn euler_characteristic(complex: &FilteredComplex) -> i64 {
    complex.euler_characteristic()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("entry {entry}: {message}")]
    Entry { entry: usize, message: String },
}

/// Parses the line format `<level> <v1> ... <vk>`. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_text(text: &str) -> Result<FilteredComplex, ParseError> {
    let mut simplices = Vec::new();
    let mut levels = Vec::new();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError::Line { line: line_no, message };
        let mut fields = line.split_whitespace();
        let level: Level = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|e| err(format!("bad level: {e}")))?;
        let vertices = fields
            .map(|t| t.parse::<usize>().map_err(|e| err(format!("bad vertex {t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let simplex = Simplex::new(vertices).map_err(|e| err(e.to_string()))?;
        simplices.push(simplex);
        levels.push(level);
        lines.push(line_no);
    }
    let complex = FilteredComplex { simplices, levels };
    check_parsed(&complex, |index| ParseError::Line {
        line: lines[index - 1],
        message: String::new(),
    })?;
    Ok(complex)
}

fn check_parsed(
    complex: &FilteredComplex,
    locate: impl Fn(usize) -> ParseError,
) -> Result<(), ParseError> {
    let report = complex.validate();
    if let Some(violation) = report.violations.first() {
        let index = violation.offending_index(complex).unwrap_or(1);
        return Err(match locate(index) {
            ParseError::Line { line, .. } => ParseError::Line {
                line,
                message: violation.to_string(),
            },
            ParseError::Entry { entry, .. } => ParseError::Entry {
                entry,
                message: violation.to_string(),
            },
            other => other,
        });
    }
    Ok(())
}

/// Canonical text form: one `<level> <vertices...>` line per simplex.
pub fn serialize_text(complex: &FilteredComplex) -> String {
    serialize_text_with_comments(complex, &[])
}

/// Like [`serialize_text`], with `# `-prefixed header lines first.
pub fn serialize_text_with_comments(complex: &FilteredComplex, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    for (_, simplex, level) in complex.iter() {
        out.push_str(&level.to_string());
        for v in simplex.vertices() {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEntry {
    level: Level,
    vertices: Vec<usize>,
}

pub fn serialize_json(complex: &FilteredComplex) -> String {
    let entries: Vec<JsonEntry> = complex
        .iter()
        .map(|(_, s, level)| JsonEntry {
            level,
            vertices: s.vertices().to_vec(),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<FilteredComplex, ParseError> {
    let entries: Vec<JsonEntry> =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut simplices = Vec::with_capacity(entries.len());
    let mut levels = Vec::with_capacity(entries.len());
    for (k, e) in entries.into_iter().enumerate() {
        let simplex = Simplex::new(e.vertices).map_err(|err| ParseError::Entry {
            entry: k + 1,
            message: err.to_string(),
        })?;
        simplices.push(simplex);
        levels.push(e.level);
    }
    let complex = FilteredComplex { simplices, levels };
    check_parsed(&complex, |entry| ParseError::Entry {
        entry,
        message: String::new(),
    })?;
    Ok(complex)
}
