//! L1-norm principal-component analysis of complex-valued data.
//!
//! The crate is layered bottom-up:
//!
//! - [`cxkernel`]: complex sign, L1 and nuclear norms, thin SVD, polar factor.
//! - [`l1pca`]: the nuclear-norm fixed-point iteration for `K` components,
//!   the hollow-Gram iteration for a single component, and optimality
//!   diagnostics.
//! - [`oracle`]: exhaustive phase-grid search and an independent Hermitian
//!   eigensolver used as ground truth in tests.
//! - [`scenarios`]: seeded data generators and figures of merit for the
//!   corruption, cognitive-signature and direction-of-arrival studies.
//! - [`harness`]: experiment drivers that turn scenarios into tables.

pub mod cxkernel;
pub mod error;
pub mod harness;
pub mod l1pca;
pub mod matrix_io;
pub mod oracle;
pub mod rng;
pub mod scenarios;

pub use cxkernel::{ComplexMatrix, OrthonormalBasis, UnimodularMatrix, C64};
pub use error::{Error, Result};
pub use l1pca::{
    check_conditions, solve_l1pc_strong, solve_l1pca, solve_l1pca_reduced, Algorithm,
    ConditionReport, InitScheme, SolveReport, SolverConfig, Threshold,
};
pub use matrix_io::MatrixFile;
pub use rng::Rng;
