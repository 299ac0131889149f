//! Fixed-size complex linear algebra: 3×3 matrices, a closed-form cubic
//! eigen-solver, matrix exponential and logarithm, and SU(2,1) membership.

mod cubic;
mod eigen;
mod expm;
mod group;
mod matrix;

pub use cubic::{
    char_poly_su21, cubic_roots, root_order, solve_cubic, CubicSolution, RootPattern, CLUSTER_TOL,
};
pub use eigen::{char_poly, eig3, EigenSystem, Spectrum};
pub(crate) use eigen::{complement_basis, kernel, Kernel};
pub use expm::{exp_scaled, mat_exp, mat_log};
pub use group::{
    in_su21, random_su21, random_su21_generator, su21_algebra_residual, su21_residual, GROUP_TOL,
};
pub use matrix::{Mat3C, Vec3C};

use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("eigenvalue {eigenvalue} lies on the branch cut of the logarithm")]
    LogBranchFailure { eigenvalue: C64 },
    #[error("square-root iteration did not bring the matrix near the identity")]
    NonConvergent,
}
