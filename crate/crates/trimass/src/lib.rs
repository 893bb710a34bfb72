//! Modal basis machinery for triangular spectral elements with a sparse,
//! stage-solvable pseudo-mass matrix.
//!
//! The crate builds the classical vertex/edge/interior modal basis on the
//! reference triangle, constructs (in exact rational arithmetic) a change of
//! basis whose Gram-like matrix `L` is sparse and solvable in four staged
//! sweeps, certifies that no plain change of basis could have produced such an
//! `L`, and assembles the resulting projection operator on conforming
//! triangulations.
//!
//! `no_std` + `alloc`; all floating transcendentals go through `libm`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod changebasis;
pub mod construct;
pub mod dubiner;
pub mod exact;
pub mod jacobi;
pub mod linalg;
pub(crate) mod math;
pub mod mesh;
pub mod nonexistence;

use alloc::string::String;
use core::fmt;

/// Basis function orderings. Operations that combine indexed objects require
/// matching tags; a mismatch is a hard error, never a silent permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisOrdering {
    /// Vertices, then every mode of one edge before the next edge, then interior.
    EdgeMajor,
    /// Vertices, then mode 1 on all three edges, mode 2 on all three edges, ..., then interior.
    #[default]
    ModeMajor,
}

impl fmt::Display for BasisOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisOrdering::EdgeMajor => f.write_str("edge-major"),
            BasisOrdering::ModeMajor => f.write_str("mode-major"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Jacobi weight exponents must satisfy alpha > -1 and beta > -1.
    JacobiParams { alpha: f64, beta: f64 },
    /// Quadrature point counts must be at least 1.
    EmptyRule,
    /// Newton iteration for a quadrature node failed to reach tolerance.
    NodeSearchFailed { index: usize, order: usize },
    /// Point lies outside the reference triangle (beyond tolerance).
    OutsideDomain { r: f64, s: f64 },
    /// Polynomial degree outside the supported range for this operation.
    DegreeRange { p: usize, min: usize, max: usize },
    /// Interior index pair outside the admissible triangular range.
    InteriorIndex { m: usize, n: usize, p: usize },
    /// Two objects with different ordering tags were combined.
    OrderingMismatch {
        expected: BasisOrdering,
        found: BasisOrdering,
    },
    /// A structurally mandated zero or one entry was violated.
    Structure { row: usize, col: usize, value: f64 },
    /// A diagonal block that must be invertible is numerically singular.
    SingularBlock { block: String },
    /// An exact linear system had no unique solution.
    SingularSystem { context: String },
    /// Quadrature rule too weak for the requested integrand degree.
    QuadratureTooWeak { need: usize, have: usize },
    /// A matrix expected to be symmetric positive definite failed Cholesky.
    NotPositiveDefinite { pivot: usize },
    /// Conflicting values written to the same global matrix entry.
    AssemblyConflict {
        row: usize,
        col: usize,
        old: f64,
        new: f64,
    },
    /// Sparsity violating the staged lower-triangular ordering.
    StageStructure { row: usize, col: usize },
    /// Iterative solver did not converge.
    NoConvergence { context: String },
    /// An internal cross-check of the element construction failed.
    ConstructionCheck { what: String },
    /// Mesh connectivity is malformed (bad vertex id, degenerate or flipped triangle).
    BadMesh { detail: String },
    /// Physical point not covered by any element of the mesh.
    PointNotFound { x: f64, y: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::JacobiParams { alpha, beta } => {
                write!(f, "invalid Jacobi exponents alpha={alpha}, beta={beta}; both must exceed -1")
            }
            Error::EmptyRule => f.write_str("quadrature rule must have at least one point"),
            Error::NodeSearchFailed { index, order } => {
                write!(f, "root search for node {index} of the {order}-point rule did not converge")
            }
            Error::OutsideDomain { r, s } => {
                write!(f, "point (r={r}, s={s}) lies outside the reference triangle")
            }
            Error::DegreeRange { p, min, max } => {
                write!(f, "degree p={p} outside supported range {min}..={max}")
            }
            Error::InteriorIndex { m, n, p } => {
                write!(f, "interior index (m={m}, n={n}) inadmissible for degree p={p}")
            }
            Error::OrderingMismatch { expected, found } => {
                write!(f, "ordering mismatch: expected {expected}, found {found}")
            }
            Error::Structure { row, col, value } => {
                write!(f, "structure violation at ({row}, {col}): entry {value} breaks the mandated pattern")
            }
            Error::SingularBlock { block } => write!(f, "singular {block} block"),
            Error::SingularSystem { context } => write!(f, "singular linear system in {context}"),
            Error::QuadratureTooWeak { need, have } => {
                write!(f, "quadrature exactness {have} insufficient; integrand needs {need}")
            }
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (failed at pivot {pivot})")
            }
            Error::AssemblyConflict { row, col, old, new } => {
                write!(f, "inconsistent assembly at ({row}, {col}): {old} vs {new}")
            }
            Error::StageStructure { row, col } => {
                write!(f, "entry ({row}, {col}) violates the staged solve ordering")
            }
            Error::NoConvergence { context } => write!(f, "no convergence in {context}"),
            Error::ConstructionCheck { what } => {
                write!(f, "element construction self-check failed: {what}")
            }
            Error::BadMesh { detail } => write!(f, "bad mesh: {detail}"),
            Error::PointNotFound { x, y } => {
                write!(f, "point ({x}, {y}) is not inside any mesh element")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
