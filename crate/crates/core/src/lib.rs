//! Persistent homology by boundary-matrix reduction over F2, with exact
//! counting of field additions.
//!
//! - [`complex`]: simplices, filtered complexes, validation and I/O.
//! - [`f2`]: sparse F2 columns and boundary matrices.
//! - [`reduction`]: standard, twist and look-ahead reduction; pairs and diagrams.
//! - [`generators`]: the strip complex `X(n)`, the modified strip `Y(n)` and
//!   closed-form addition counts.
//! - [`realization`]: clique complexes, flag checks and Vietoris–Rips
//!   realization of filtered graphs.
//! - [`bench`]: benchmark sweeps and growth fits.

pub mod bench;
pub mod complex;
pub mod f2;
pub mod generators;
pub mod realization;
pub mod reduction;

pub use complex::{FilteredComplex, Level, Simplex};
pub use f2::{boundary_matrix, boundary_submatrix, AdditionCounter, BoundaryMatrix, SparseColumn};
pub use generators::{generate, modified_strip, strip, LabeledComplex, Variant};
pub use reduction::{
    diagram, extract_pairs, reduce, reduce_lookahead, reduce_standard, reduce_twist, Algorithm, Death,
    PersistenceDiagram, PersistencePair, ReductionResult,
};
