//! Classification of PU(2,1) elements, Goldman's discriminant, elliptic
//! types, fixed points and normal forms.

mod classify;
mod fixed;
mod normal;
mod rational;

pub use classify::{classify, classify_with, goldman_f, IsometryClass, IsometryKind, Tolerances};
pub use fixed::{
    fixed_points, fixed_points_with, loxodromic_axis, loxodromic_axis_with, FixedPoint,
};
pub use normal::{heisenberg_translation, normal_form, NormalFamily, NormalForm};
pub use rational::{
    elliptic_type, elliptic_type_with, rationalize, EllipticType, DEFAULT_DENOM_BOUND,
    DEFAULT_TYPE_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum IsometryError {
    #[error("matrix is not in SU(2,1) for the given form (residual {residual:e})")]
    NotInGroup { residual: f64 },
    #[error("classification is ambiguous near the discriminant curve (f = {f:e}, eigenvalue gap {gap:e})")]
    AmbiguousNearBoundary { f: f64, gap: f64 },
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("rotation number {rotation} has no rational approximation within the bounds")]
    NotRationalType { rotation: f64 },
    #[error("the identity has no normal form")]
    IdentityInput,
    #[error("normal form construction left a residual of {residual:e}")]
    NormalFormFailed { residual: f64 },
}
