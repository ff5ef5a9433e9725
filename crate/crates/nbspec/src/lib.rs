//! Spectral toolkit for the non-backtracking matrix of a simple graph.
//!
//! For a graph G with m edges, the non-backtracking matrix B is the 2m x 2m
//! 0/1 matrix on directed edges with B[(u,v),(x,y)] = 1 iff v = x and u != y.
//! This crate builds B together with its companion operators (the edge
//! adjacency matrix C, the incidence factors S and T, the edge reversal tau,
//! and the 2n x 2n block matrix K = [A, D-I; -I, 0]), computes their spectra
//! with a self-contained dense eigensolver, and turns the classical theorems
//! relating them into executable checks:
//!
//! - the determinant identity det(I - uB) = (1-u^2)^(m-n) det(u^2(D-I) - uA + I),
//! - the intertwining B[S T'] = [S T']K and the block decomposition
//!   BX = X diag(K, I, -I),
//! - closed-form spectra for trees, cycles, regular graphs, and pinwheels,
//! - spectral-radius bounds and the |mu| >= 1 lower bound,
//! - recovery of component count, degree-1 count, and bipartiteness from
//!   spectra alone, compared against combinatorial ground truth,
//! - brute-force oracles (walk counts, exhaustive small-graph enumeration).
//!
//! The `nbspec` binary exposes the checks as `spectrum`, `verify`, and
//! `sweep` subcommands emitting deterministic JSON.

pub mod cli;
pub mod detect;
pub mod graph;
pub mod linalg;
pub mod nb;
pub mod oracle;
pub mod report;
pub mod spectra;

pub use graph::{DirectedEdgeIndex, Graph, StructureTruth};
pub use linalg::{CVector, Matrix, Spectrum};
pub use nb::{Decomposition, NbOperators};
pub use report::{BoundReport, Status, VerificationReport};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at vertex {v} on line {line}")]
    SelfLoop { line: usize, v: usize },
    #[error("vertex id {v} out of range (n = {n})")]
    VertexRange { v: usize, n: usize },
    #[error("{what} requires {requirement}, got {got}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        got: String,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the eigensolver cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("QR iteration did not converge after {iters} iterations ({found} of {dim} eigenvalues found)")]
    NonConvergence {
        iters: usize,
        found: usize,
        dim: usize,
        partial: Vec<num_complex::Complex64>,
    },
    #[error("{value} is not an eigenvalue within tolerance {tol}")]
    NotAnEigenvalue {
        value: num_complex::Complex64,
        tol: f64,
    },
    #[error("(mu, x) is not an eigenpair of K: residual {residual:.3e} exceeds {allowed:.3e}")]
    NotAnEigenpair { residual: f64, allowed: f64 },
    #[error("lifted eigenvector is numerically zero (norm {norm:.3e})")]
    LiftAnnihilated { norm: f64 },
    #[error("K is singular: graph has {count} degree-1 vertices")]
    DegreeOneSingular { count: usize },
    #[error("x and y are numerically orthogonal (|x'y| = {inner:.3e})")]
    OrthogonalPair { inner: f64 },
    #[error("structural failure: {msg}")]
    StructuralFailure { msg: String },
    #[error("budget exceeded: {msg}")]
    Budget { msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
