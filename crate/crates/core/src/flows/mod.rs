//! One-parameter flows `φ_t = exp(tX)` on the boundary sphere, their invariant
//! surfaces, and knot diagnostics for closed orbits.

mod family;
mod horotube;
mod knots;
mod surface;

use alloc::vec::Vec;

pub use family::FlowFamily;
pub use horotube::{horotube_boundary, Horotube};
pub use knots::{gauss_linking, winding_numbers, LinkingReport, WindingReport, MIN_SEGMENTS};
pub use surface::{surface_membership, surface_mesh, InvariantSurface, QuadMesh, SurfaceFamily};

use crate::isometry::IsometryError;
use crate::linalg::{exp_scaled, mat_log, su21_algebra_residual, LinalgError, Mat3C};
use crate::models::{
    cayley_matrix, cayley_point, heis_project, HeisPoint, Model, ModelError, ProjectivePoint,
};
use crate::C64;

/// Lie algebra membership threshold, relative to `max(1, ‖X‖)`.
pub const ALGEBRA_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("matrix is not in su(2,1) (residual {residual:e})")]
    NotInAlgebra { residual: f64 },
    #[error("unknown flow family")]
    UnknownFamily,
    #[error("expected {expected} parameters for this family, got {got}")]
    BadParameters { expected: usize, got: usize },
    #[error("orbit endpoints differ by {gap:e}")]
    NotClosed { gap: f64 },
    #[error("orbit leaves the torus (|Z| spread {spread:e})")]
    NotOnTorus { spread: f64 },
    #[error("consecutive samples turn by {step} rad; sample more densely")]
    UnderSampled { step: f64 },
    #[error("curves come within {distance:e} of each other")]
    CurvesTooClose { distance: f64 },
    #[error("a curve needs at least three vertices")]
    DegenerateCurve,
    #[error("element is not unipotent")]
    NotUnipotent,
    #[error("circle passes through the fixed point")]
    CircleHitsFixedPoint,
    #[error("surface passes through the point at infinity of the chart")]
    HitsInfinity,
    #[error("torus radius {r} is outside (0, 1)")]
    TorusRadius { r: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Isometry(#[from] IsometryError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An element of the Lie algebra together with the model it acts in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowGenerator {
    pub x: Mat3C,
    pub model: Model,
}

impl FlowGenerator {
    pub fn new(x: Mat3C, model: Model) -> Result<Self, FlowError> {
        let residual = su21_algebra_residual(&x, &model.form_matrix());
        if !(residual <= ALGEBRA_TOL * x.frobenius_norm().max(1.0)) {
            return Err(FlowError::NotInAlgebra { residual });
        }
        Ok(FlowGenerator { x, model })
    }

    /// The smallest traceless logarithm among the three lifts `ωᵏM`, so that
    /// `φ₁` acts as `[M]`.
    pub fn from_element(m: &Mat3C, model: Model) -> Result<Self, FlowError> {
        let mut best: Option<Mat3C> = None;
        let mut err = None;
        for k in 0..3 {
            let w = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * k as f64 / 3.0);
            match mat_log(&(*m * w)) {
                Ok(l) => {
                    let x = l - Mat3C::IDENTITY * (l.trace() / 3.0);
                    if best.map_or(true, |b| x.frobenius_norm() < b.frobenius_norm()) {
                        best = Some(x);
                    }
                }
                Err(e) => err = Some(e),
            }
        }
        match best {
            Some(x) => FlowGenerator::new(x, model),
            None => Err(err.unwrap_or(LinalgError::NonConvergent).into()),
        }
    }

    /// `exp(tX)`.
    pub fn exp(&self, t: f64) -> Mat3C {
        exp_scaled(&self.x, t)
    }

    /// The same generator expressed in another model.
    pub fn in_model(&self, model: Model) -> Self {
        FlowGenerator {
            x: cayley_matrix(&self.x, self.model, model),
            model,
        }
    }

    pub fn apply(&self, t: f64, p: &ProjectivePoint) -> ProjectivePoint {
        flow_apply(self, t, p)
    }
}

/// `φ_t(x) = exp(tX)·x`, returned in the model of `x`.
pub fn flow_apply(gen: &FlowGenerator, t: f64, x: &ProjectivePoint) -> ProjectivePoint {
    let g = gen.in_model(x.model);
    let v = g.exp(t) * x.rep;
    ProjectivePoint {
        rep: v.normalized(),
        model: x.model,
    }
}

/// Orbit samples on a uniform time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPolyline {
    pub t_values: Vec<f64>,
    pub samples: Vec<ProjectivePoint>,
}

impl OrbitPolyline {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Samples in Heisenberg coordinates.
    pub fn heisenberg(&self) -> Result<Vec<HeisPoint>, ModelError> {
        self.samples
            .iter()
            .map(|p| heis_project(&cayley_point(p, Model::Siegel)))
            .collect()
    }

    /// Samples as points of `R³ = C × R`; fails if the orbit meets `∞`.
    pub fn r3(&self) -> Result<Vec<[f64; 3]>, FlowError> {
        self.heisenberg()?
            .iter()
            .map(|h| h.to_r3().ok_or(FlowError::HitsInfinity))
            .collect()
    }
}

/// `steps` samples of `φ_t(x0)` for `t` evenly spaced in `[t_min, t_max]`.
pub fn sample_orbit(
    gen: &FlowGenerator,
    x0: &ProjectivePoint,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> OrbitPolyline {
    let steps = steps.max(2);
    let g = gen.in_model(x0.model);
    let mut t_values = Vec::with_capacity(steps);
    let mut samples = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = t_min + (t_max - t_min) * k as f64 / (steps - 1) as f64;
        t_values.push(t);
        samples.push(flow_apply(&g, t, x0));
    }
    OrbitPolyline { t_values, samples }
}
