//! Variable-step finite differences via equidistribution.
//!
//! The pipeline: a positive weight function g describes the desired local
//! mesh density; 1D meshes come from inverting the cumulative integral of
//! 1/g at equal increments, separable nD meshes from one such solve per
//! axis, and general 2D meshes from the elliptic variable-diffusion
//! mapping. Three-point stencils on uneven spacing turn the meshes into
//! sparse derivative operators, a diagonal similarity makes those
//! symmetric, and a Lanczos/dense eigensolver extracts the lowest states.
//! The `schrodinger` module wires everything together for the 2D harmonic
//! oscillator benchmark comparing uniform and variable meshes at equal
//! matrix size.
//!
//! See the crate examples for one runnable entry point per capability,
//! and the `varmesh` binary for the config-driven command-line front end.

pub mod cli;
pub mod error;
pub mod mesh1d;
pub mod operators;
pub mod quadrature;
pub mod schrodinger;
pub mod sparse;
pub mod spectral;
pub mod stencil;
pub mod tensor;
pub mod weights;
pub mod winslow;

pub use error::{Error, Result};
pub use mesh1d::{cumulative_s, generate_mesh, invert_s, Mesh1D, MeshOptions};
pub use schrodinger::{compare_meshes, solve_ho, HOProblem, MeshKind, NodeCounting};
pub use sparse::{SparseMatrix, Triplets};
pub use spectral::{lowest_eigenpairs, EigenResult};
pub use stencil::{
    differentiate, first_derivative_coeffs, second_derivative_coeffs, DerivOrder, StencilCoeffs,
};
pub use tensor::{generate_tensor_mesh, TensorMesh};
pub use weights::{ValidationReport, WeightSpec};
pub use winslow::{solve_winslow, solve_winslow_product, MappedGrid2D, WinslowOptions};
