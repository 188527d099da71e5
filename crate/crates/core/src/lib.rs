//! Harmonic structures on level-1 networks of level-n Sierpinski gaskets.
//!
//! The crate builds the cell structure of the level-n gasket, assembles the
//! level-1 Laplacian from a boundary Laplacian `D` and cell weights `r`,
//! restricts it back to the boundary, extends boundary data harmonically and
//! certifies that every harmonic extension matrix `A_i` is invertible. All of
//! it runs either in exact rational arithmetic or in `f64`.
//!
//! The [`verify`] module turns the combinatorial facts behind non-degeneracy
//! (maximum principle, monotone chains, 2-connectivity, level-set cell
//! clusters) into executable checks.

pub mod cell;
pub mod error;
pub mod graph;
pub mod harmonic;
pub mod laplacian;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod verify;

pub use cell::{build_sg, build_star_toy, CellStructure, LatticePoint, OrbitPartition};
pub use error::{Error, NoChainReason, Result};
pub use graph::AdjacencyGraph;
pub use harmonic::{
    certify, evaluate_at_address, extension_matrices, homogeneous_structure, is_harmonic_structure,
    nondegeneracy_report, solve_homogeneous_ratio, solve_orbit_scale, Certification,
    ExtensionMatrices, HarmonicStructureCandidate, NondegeneracyReport, Verdict,
};
pub use laplacian::{
    assemble_h1, dirichlet_energy, harmonic_extend, schur_restriction, validate_laplacian,
    HarmonicExtender, LaplacianReport, Violation,
};
pub use matrix::{DenseMatrix, MatrixDoc, SymmetricMatrix, VertexFunction, WeightVector};
pub use scalar::{rat, Mode, Rational, Scalar, Tolerances};
