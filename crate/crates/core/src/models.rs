//! Ball and Siegel models, the Cayley transfer between them, Heisenberg
//! coordinates on the Siegel boundary, and C-circles.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{complement_basis, Mat3C, Vec3C};
use crate::C64;

/// Relative `|Φ(v)|/‖v‖²` below which a vector counts as null.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Null tolerance accepted when reading Heisenberg coordinates off a point.
pub const HEIS_NULL_TOL: f64 = 1e-9;
/// Projective equality threshold after optimal phase alignment.
pub const PROJ_EQ_TOL: f64 = 1e-8;
/// Positive factor in `C*·J₂·C = s·J₁`, frozen from a direct computation.
pub const CAYLEY_FORM_SCALE: f64 = 1.0;

const O: C64 = C64::new(0.0, 0.0);
const I1: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Ball,
    Siegel,
}

impl Model {
    /// `J₁ = diag(1, 1, −1)` or `J₂ = antidiag(1, 1, 1)`.
    pub fn form_matrix(self) -> Mat3C {
        match self {
            Model::Ball => Mat3C::diag(I1, I1, -I1),
            Model::Siegel => Mat3C([[O, O, I1], [O, I1, O], [I1, O, O]]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Ball => "ball",
            Model::Siegel => "siegel",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "ball" => Some(Model::Ball),
            "siegel" => Some(Model::Siegel),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("point is not null: Φ/‖v‖² = {phi}")]
    NotNull { phi: f64 },
    #[error("operation needs a point in the Siegel model")]
    NotSiegel,
    #[error("Heisenberg product with the point at infinity")]
    InfiniteOperand,
    #[error("polar vector is not positive: Φ/‖v‖² = {phi}")]
    NotExterior { phi: f64 },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
}

/// `⟨w, z⟩ = w* J z` for an arbitrary Hermitian form `J`.
pub fn form_eval_with(w: &Vec3C, z: &Vec3C, j: &Mat3C) -> C64 {
    w.hdot(&(*j * *z))
}

pub fn form_eval(w: &Vec3C, z: &Vec3C, model: Model) -> C64 {
    form_eval_with(w, z, &model.form_matrix())
}

/// `Φ(v) = ⟨v, v⟩`, which is real.
pub fn phi_with(v: &Vec3C, j: &Mat3C) -> f64 {
    form_eval_with(v, v, j).re
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl Location {
    pub fn name(self) -> &'static str {
        match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
            Location::Exterior => "exterior",
        }
    }
}

/// Sign class of `Φ(v)/‖v‖²` against a tolerance.
pub fn locate_with(v: &Vec3C, j: &Mat3C, tol: f64) -> Location {
    let r = phi_with(v, j) / v.norm_sqr();
    if r < -tol {
        Location::Interior
    } else if r > tol {
        Location::Exterior
    } else {
        Location::Boundary
    }
}

/// `‖p/‖p‖ − e^{iφ} q/‖q‖‖` minimized over the phase `φ`.
pub fn projective_distance(p: &Vec3C, q: &Vec3C) -> f64 {
    let a = p.normalized();
    let b = q.normalized();
    let ip = b.hdot(&a);
    if ip.norm() == 0.0 {
        return core::f64::consts::SQRT_2;
    }
    let u = ip / ip.norm();
    (a - b.scale(u)).norm().min((a - b.scale(u.conj())).norm())
}

/// A nonzero vector up to complex scale, tagged with its model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectivePoint {
    pub rep: Vec3C,
    pub model: Model,
}

impl ProjectivePoint {
    pub fn new(rep: Vec3C, model: Model) -> Result<Self, ModelError> {
        if !(rep.norm() > 0.0) {
            return Err(ModelError::ZeroVector);
        }
        Ok(ProjectivePoint { rep, model })
    }

    pub fn phi(&self) -> f64 {
        phi_with(&self.rep, &self.model.form_matrix())
    }

    pub fn location(&self) -> Location {
        locate_with(&self.rep, &self.model.form_matrix(), BOUNDARY_TOL)
    }

    /// Projective equality; points in different models are compared after transfer.
    pub fn proj_eq(&self, other: &Self) -> bool {
        let o = cayley_point(other, self.model);
        projective_distance(&self.rep, &o.rep) <= PROJ_EQ_TOL
    }

    pub fn apply(&self, m: &Mat3C) -> Self {
        ProjectivePoint {
            rep: *m * self.rep,
            model: self.model,
        }
    }
}

/// The Cayley matrix `C`, an involution satisfying `C*J₂C = J₁`.
pub fn cayley() -> Mat3C {
    let a = C64::new(FRAC_1_SQRT_2, 0.0);
    Mat3C([[a, O, a], [O, I1, O], [a, O, -a]])
}

/// Conjugate a matrix from one model to another; the identity when the models agree.
pub fn cayley_matrix(m: &Mat3C, from: Model, to: Model) -> Mat3C {
    if from == to {
        return *m;
    }
    let c = cayley();
    c * *m * c
}

/// Map a point to the requested model; unchanged when it is already there.
pub fn cayley_point(p: &ProjectivePoint, to: Model) -> ProjectivePoint {
    if p.model == to {
        return *p;
    }
    ProjectivePoint {
        rep: cayley() * p.rep,
        model: to,
    }
}

/// Point of the Siegel boundary: `(z, t) ∈ C × R`, or `∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HeisPoint {
    Finite { z: C64, t: f64 },
    Infinity,
}

impl HeisPoint {
    pub const ORIGIN: HeisPoint = HeisPoint::Finite { z: O, t: 0.0 };

    pub fn finite(z: C64, t: f64) -> Self {
        HeisPoint::Finite { z, t }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, HeisPoint::Infinity)
    }

    /// Euclidean coordinates `(Re z, Im z, t)`.
    pub fn to_r3(&self) -> Option<[f64; 3]> {
        match *self {
            HeisPoint::Finite { z, t } => Some([z.re, z.im, t]),
            HeisPoint::Infinity => None,
        }
    }

    pub fn from_r3(x: [f64; 3]) -> Self {
        HeisPoint::Finite {
            z: C64::new(x[0], x[1]),
            t: x[2],
        }
    }

    pub fn inverse(&self) -> Result<Self, ModelError> {
        match *self {
            HeisPoint::Finite { z, t } => Ok(HeisPoint::Finite { z: -z, t: -t }),
            HeisPoint::Infinity => Err(ModelError::InfiniteOperand),
        }
    }
}

/// `(z, t) ↦ [−(|z|² + it)/2; z; 1]`, `∞ ↦ [1; 0; 0]`.
pub fn heis_embed(h: &HeisPoint) -> ProjectivePoint {
    let rep = match *h {
        HeisPoint::Finite { z, t } => Vec3C::new(-C64::new(z.norm_sqr(), t) * 0.5, z, I1),
        HeisPoint::Infinity => Vec3C::basis(0),
    };
    ProjectivePoint {
        rep,
        model: Model::Siegel,
    }
}

pub fn heis_project(p: &ProjectivePoint) -> Result<HeisPoint, ModelError> {
    if p.model != Model::Siegel {
        return Err(ModelError::NotSiegel);
    }
    let n2 = p.rep.norm_sqr();
    let phi = p.phi() / n2;
    if phi.abs() > HEIS_NULL_TOL {
        return Err(ModelError::NotNull { phi });
    }
    let z3 = p.rep.0[2];
    if z3.norm() <= 1e-12 * n2.sqrt() {
        return Ok(HeisPoint::Infinity);
    }
    let z1 = p.rep.0[0] / z3;
    let z = p.rep.0[1] / z3;
    Ok(HeisPoint::Finite { z, t: -2.0 * z1.im })
}

/// Heisenberg group law `(w,s)·(z,t) = (w + z, s + t + 2 Im(w z̄))`.
pub fn heis_mul(a: &HeisPoint, b: &HeisPoint) -> Result<HeisPoint, ModelError> {
    match (*a, *b) {
        (HeisPoint::Finite { z: w, t: s }, HeisPoint::Finite { z, t }) => Ok(HeisPoint::Finite {
            z: w + z,
            t: s + t + 2.0 * (w * z.conj()).im,
        }),
        _ => Err(ModelError::InfiniteOperand),
    }
}

/// Boundary of the complex line orthogonal to a positive vector.
///
/// Sampled as `θ ↦ neg + e^{iθ}·pos` with `Φ(pos) = 1`, `Φ(neg) = −1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CCircle {
    pub polar: ProjectivePoint,
    pub pos: Vec3C,
    pub neg: Vec3C,
}

fn fix_phase(v: Vec3C) -> Vec3C {
    let a = v.0[v.dominant_index()];
    if a.norm() == 0.0 {
        v
    } else {
        v.scale(a.conj() / a.norm())
    }
}

/// Eigen-decomposition of the 2×2 Hermitian matrix `[[a, b], [b̄, d]]`,
/// larger eigenvalue first.
fn hermitian2(a: f64, b: C64, d: f64) -> [(f64, [C64; 2]); 2] {
    let m = (a + d) / 2.0;
    let r = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    let vec_for = |mu: f64| -> [C64; 2] {
        let v1 = [b, C64::new(mu - a, 0.0)];
        let v2 = [C64::new(mu - d, 0.0), b.conj()];
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
        let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
        let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
        if n == 0.0 {
            [I1, O]
        } else {
            [v[0] / n, v[1] / n]
        }
    };
    if b.norm() == 0.0 {
        let (hi, lo) = if a >= d {
            ([I1, O], [O, I1])
        } else {
            ([O, I1], [I1, O])
        };
        return [(a.max(d), hi), (a.min(d), lo)];
    }
    [(m + r, vec_for(m + r)), (m - r, vec_for(m - r))]
}

/// Form-orthonormal basis `(pos, neg)` of a signature-(1,1) plane given by
/// a Euclidean orthonormal basis `(u, w)`.
pub(crate) fn split_indefinite_plane(u: &Vec3C, w: &Vec3C, j: &Mat3C) -> Option<(Vec3C, Vec3C)> {
    let a = phi_with(u, j);
    let d = phi_with(w, j);
    let b = form_eval_with(u, w, j);
    let [(mp, cp), (mn, cn)] = hermitian2(a, b, d);
    if !(mp > 0.0 && mn < 0.0) {
        return None;
    }
    let pos = (u.scale(cp[0]) + w.scale(cp[1])) * (1.0 / mp.sqrt());
    let neg = (u.scale(cn[0]) + w.scale(cn[1])) * (1.0 / (-mn).sqrt());
    Some((fix_phase(pos), fix_phase(neg)))
}

/// Orthogonal basis of a 2-plane adapted to the form, larger `Φ` first, each
/// scaled to `|Φ| = 1` unless null.
pub(crate) fn form_adapted_plane(u: &Vec3C, w: &Vec3C, j: &Mat3C) -> [(f64, Vec3C); 2] {
    let a = phi_with(u, j);
    let d = phi_with(w, j);
    let b = form_eval_with(u, w, j);
    hermitian2(a, b, d).map(|(mu, c)| {
        let v = u.scale(c[0]) + w.scale(c[1]);
        let s = mu.abs();
        let v = if s > 1e-12 { v * (1.0 / s.sqrt()) } else { v };
        (mu, fix_phase(v))
    })
}

pub fn c_circle_through(polar: &ProjectivePoint) -> Result<CCircle, ModelError> {
    let j = polar.model.form_matrix();
    let phi = polar.phi() / polar.rep.norm_sqr();
    if phi <= BOUNDARY_TOL {
        return Err(ModelError::NotExterior { phi });
    }
    let normal = (j * polar.rep).normalized();
    let (u, w) = complement_basis(&normal);
    let (pos, neg) = split_indefinite_plane(&u, &w, &j).ok_or(ModelError::NotExterior { phi })?;
    Ok(CCircle {
        polar: *polar,
        pos,
        neg,
    })
}

impl CCircle {
    pub fn point(&self, theta: f64) -> ProjectivePoint {
        let rep = self.neg + self.pos.scale(C64::from_polar(1.0, theta));
        ProjectivePoint {
            rep,
            model: self.polar.model,
        }
    }

    /// `n` points at `θ = 2πk/n`.
    pub fn sample(&self, n: usize) -> Vec<(f64, ProjectivePoint)> {
        (0..n)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / n as f64;
                (theta, self.point(theta))
            })
            .collect()
    }

    /// Samples in Heisenberg coordinates, in the Siegel model.
    pub fn heisenberg_samples(&self, n: usize) -> Vec<(f64, HeisPoint)> {
        self.sample(n)
            .into_iter()
            .filter_map(|(th, p)| {
                heis_project(&cayley_point(&p, Model::Siegel))
                    .ok()
                    .map(|h| (th, h))
            })
            .collect()
    }
}
