#[allow(unused_imports)]
use num_traits::Float;

use super::classify::{classify, IsometryKind};
use super::IsometryError;
use crate::linalg::{eig3, kernel, su21_residual, EigenSystem, Kernel, Mat3C, Spectrum, Vec3C};
use crate::models::{
    cayley_matrix, form_adapted_plane, form_eval_with, phi_with, split_indefinite_plane, Model,
};
use crate::C64;

const NORMAL_FORM_TOL: f64 = 1e-8;

/// Which displayed family a normal form belongs to, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormalFamily {
    /// `T_λ = diag(λ, λ̄/λ, 1/λ̄)` in the Siegel model, `|λ| > 1`.
    Loxodromic { lambda: C64 },
    /// `E_{α,β,γ} = diag(e^{iα}, e^{iβ}, e^{iγ})` in the ball model, angles in radians.
    Elliptic { alpha: f64, beta: f64, gamma: f64 },
    /// `c·P_{z,s}` in the Siegel model, with `c³ = 1`.
    Unipotent { z: C64, s: f64, scalar: C64 },
    /// `λ·[[1, 0, −iσ/2], [0, μ/λ, 0], [0, 0, 1]]` in the Siegel model.
    ElliptoParabolic { lambda: C64, mu: C64, sigma: f64 },
}

/// `P_{z,s}`, the Heisenberg translation by `(z, s)`.
pub fn heisenberg_translation(z: C64, s: f64) -> Mat3C {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Mat3C([
        [one, -z.conj(), -C64::new(z.norm_sqr(), s) * 0.5],
        [o, one, z],
        [o, o, one],
    ])
}

impl NormalFamily {
    pub fn model(&self) -> Model {
        match self {
            NormalFamily::Elliptic { .. } => Model::Ball,
            _ => Model::Siegel,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormalFamily::Loxodromic { .. } => "loxodromic",
            NormalFamily::Elliptic { .. } => "elliptic",
            NormalFamily::Unipotent { .. } => "unipotent",
            NormalFamily::ElliptoParabolic { .. } => "ellipto_parabolic",
        }
    }

    pub fn matrix(&self) -> Mat3C {
        let one = C64::new(1.0, 0.0);
        match *self {
            NormalFamily::Loxodromic { lambda } => {
                Mat3C::diag(lambda, lambda.conj() / lambda, one / lambda.conj())
            }
            NormalFamily::Elliptic { alpha, beta, gamma } => Mat3C::diag(
                C64::from_polar(1.0, alpha),
                C64::from_polar(1.0, beta),
                C64::from_polar(1.0, gamma),
            ),
            NormalFamily::Unipotent { z, s, scalar } => heisenberg_translation(z, s) * scalar,
            NormalFamily::ElliptoParabolic { lambda, mu, sigma } => {
                let mut m = Mat3C::diag(one, mu / lambda, one);
                m.0[0][2] = C64::new(0.0, -sigma / 2.0);
                m * lambda
            }
        }
    }
}

/// `conjugator · M · conjugator⁻¹ = representative`, everything in `model`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalForm {
    pub family: NormalFamily,
    pub representative: Mat3C,
    pub conjugator: Mat3C,
    pub model: Model,
    /// The input matrix transferred to `model`.
    pub source: Mat3C,
    pub residual: f64,
}

fn find(eig: &EigenSystem, l: C64) -> Vec3C {
    eig.pairs
        .iter()
        .find(|p| p.0 == l)
        .map(|p| p.1)
        .unwrap_or(eig.pairs[0].1)
}

fn unit_phase(d: C64) -> C64 {
    if d.norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        d.conj() / d.norm()
    }
}

fn with_col(b: Mat3C, k: usize, v: Vec3C) -> Mat3C {
    let mut cols = [b.col(0), b.col(1), b.col(2)];
    cols[k] = v;
    Mat3C::from_cols(cols)
}

/// Make `det = 1` by rotating the phase of column `k`.
fn fix_det_on(b: Mat3C, k: usize) -> Mat3C {
    let s = unit_phase(b.det());
    with_col(b, k, b.col(k).scale(s))
}

fn normalize_phi(v: &Vec3C, j: &Mat3C) -> Vec3C {
    *v * (1.0 / phi_with(v, j).abs().sqrt())
}

fn best_column(l: &Mat3C) -> Vec3C {
    let mut best = Vec3C::basis(0);
    let mut n = -1.0;
    for k in 0..3 {
        let e = Vec3C::basis(k);
        let v = (*l * e).norm();
        if v > n {
            n = v;
            best = e;
        }
    }
    best
}

/// Columns `(b1, b3)` with `L b3 = −(iσ/2) b1`, `⟨b1, b3⟩ = 1`, both null,
/// for a rank-one nilpotent `L` in the Lie algebra.
fn vertical_pair(l: &Mat3C, w: Vec3C, j: &Mat3C) -> (Vec3C, Vec3C, f64) {
    let kappa = form_eval_with(&(*l * w), &w, j).im;
    let sigma = if kappa >= 0.0 { 1.0 } else { -1.0 };
    let b3 = w * (1.0 / (2.0 * kappa.abs()).sqrt());
    let b1 = (*l * b3).scale(C64::new(0.0, 2.0 * sigma));
    let tau = -phi_with(&b3, j) / 2.0;
    (b1, b3 + b1 * tau, sigma)
}

/// Normal form of a non-identity element of SU(2,1).
pub fn normal_form(m: &Mat3C, model: Model) -> Result<NormalForm, IsometryError> {
    let cls = classify(m, model)?;
    let target = if cls.kind.is_elliptic() {
        Model::Ball
    } else {
        Model::Siegel
    };
    let mt = cayley_matrix(m, model, target);
    let j = target.form_matrix();
    let eig = eig3(&mt);
    let one = C64::new(1.0, 0.0);
    let scale = mt.frobenius_norm().max(1.0);

    let (b, family) = match cls.kind {
        IsometryKind::Identity => return Err(IsometryError::IdentityInput),
        IsometryKind::Loxodromic => {
            let mut order = [0usize, 1, 2];
            order.sort_by(|&a, &b| eig.pairs[b].0.norm().total_cmp(&eig.pairs[a].0.norm()));
            let (att, mid, rep) = (
                eig.pairs[order[0]],
                eig.pairs[order[1]],
                eig.pairs[order[2]],
            );
            let b1 = att.1;
            let b3 = rep.1 * (one / form_eval_with(&b1, &rep.1, &j));
            let b2 = normalize_phi(&mid.1, &j);
            (
                fix_det_on(Mat3C::from_cols([b1, b2, b3]), 1),
                NormalFamily::Loxodromic { lambda: att.0 },
            )
        }
        IsometryKind::RegularElliptic => {
            let k = eig
                .pairs
                .iter()
                .position(|(_, v)| phi_with(v, &j) < 0.0)
                .ok_or(IsometryError::NotElliptic)?;
            let lm = eig.pairs[k].0;
            let mut rest: [usize; 2] = match k {
                0 => [1, 2],
                1 => [0, 2],
                _ => [0, 1],
            };
            let turn = |i: usize| (eig.pairs[i].0 / lm).arg().abs();
            if turn(rest[1]) > turn(rest[0]) {
                rest.swap(0, 1);
            }
            let b1 = normalize_phi(&eig.pairs[rest[0]].1, &j);
            let b2 = normalize_phi(&eig.pairs[rest[1]].1, &j);
            let b3 = normalize_phi(&eig.pairs[k].1, &j);
            let family = NormalFamily::Elliptic {
                alpha: eig.pairs[rest[0]].0.arg(),
                beta: eig.pairs[rest[1]].0.arg(),
                gamma: lm.arg(),
            };
            (fix_det_on(Mat3C::from_cols([b1, b2, b3]), 0), family)
        }
        IsometryKind::ComplexReflection | IsometryKind::ReflectionOnPoint => {
            let Spectrum::Double { double, simple, .. } = eig.spectrum else {
                return Err(IsometryError::NormalFormFailed {
                    residual: f64::INFINITY,
                });
            };
            let Kernel::Plane(u, w) = kernel(&(mt - Mat3C::IDENTITY * double), scale) else {
                return Err(IsometryError::NormalFormFailed {
                    residual: f64::INFINITY,
                });
            };
            let vs = normalize_phi(&find(&eig, simple), &j);
            let (cols, angles) = if cls.kind == IsometryKind::ComplexReflection {
                let (pos, neg) =
                    split_indefinite_plane(&u, &w, &j).ok_or(IsometryError::NormalFormFailed {
                        residual: f64::INFINITY,
                    })?;
                ([pos, vs, neg], (double.arg(), simple.arg(), double.arg()))
            } else {
                let [(_, a), (_, c)] = form_adapted_plane(&u, &w, &j);
                ([a, c, vs], (double.arg(), double.arg(), simple.arg()))
            };
            let family = NormalFamily::Elliptic {
                alpha: angles.0,
                beta: angles.1,
                gamma: angles.2,
            };
            (fix_det_on(Mat3C::from_cols(cols), 0), family)
        }
        IsometryKind::HorizontalParabolic | IsometryKind::VerticalParabolic => {
            let Spectrum::Triple { value, .. } = eig.spectrum else {
                return Err(IsometryError::NormalFormFailed {
                    residual: f64::INFINITY,
                });
            };
            let u = mt * (one / value);
            let n = u - Mat3C::IDENTITY;
            let l = n - n * n * 0.5;
            if cls.kind == IsometryKind::HorizontalParabolic {
                let l2 = l * l;
                let w0 = best_column(&l2);
                let w = w0 * (1.0 / phi_with(&(l * w0), &j).sqrt());
                let lw = l * w;
                let a = -form_eval_with(&lw, &w, &j) / 2.0;
                let c =
                    (phi_with(&w, &j) + 2.0 * (a * form_eval_with(&w, &lw, &j)).re + a.norm_sqr())
                        / 2.0;
                let b3 = w + lw.scale(a) + (l * lw) * c;
                let b2 = l * b3;
                let b1 = -(l * b2);
                let b = Mat3C::from_cols([b1, b2, b3]);
                let s = C64::from_polar(1.0, -b.det().arg() / 3.0);
                let family = NormalFamily::Unipotent {
                    z: one,
                    s: 0.0,
                    scalar: value,
                };
                (b * s, family)
            } else {
                let (b1, b3, sigma) = vertical_pair(&l, best_column(&l), &j);
                let b2 = (j * b1).conj().cross(&(j * b3).conj());
                let b2 = normalize_phi(&b2, &j);
                let family = NormalFamily::Unipotent {
                    z: C64::new(0.0, 0.0),
                    s: sigma,
                    scalar: value,
                };
                (fix_det_on(Mat3C::from_cols([b1, b2, b3]), 1), family)
            }
        }
        IsometryKind::ElliptoParabolic => {
            let Spectrum::Double { double, simple, .. } = eig.spectrum else {
                return Err(IsometryError::NormalFormFailed {
                    residual: f64::INFINITY,
                });
            };
            let b2 = normalize_phi(&find(&eig, simple), &j);
            let mut proj = Mat3C::ZERO;
            let row = (j * b2).conj();
            for r in 0..3 {
                for c in 0..3 {
                    proj.0[r][c] = b2.0[r] * row.0[c];
                }
            }
            let l = (mt * (one / double) - Mat3C::IDENTITY) * (Mat3C::IDENTITY - proj);
            let w = best_column(&l);
            let w = w - proj * w;
            let (b1, b3, sigma) = vertical_pair(&l, w, &j);
            let family = NormalFamily::ElliptoParabolic {
                lambda: double,
                mu: simple,
                sigma,
            };
            (fix_det_on(Mat3C::from_cols([b1, b2, b3]), 1), family)
        }
    };

    let g = b.inverse().ok_or(IsometryError::NormalFormFailed {
        residual: f64::INFINITY,
    })?;
    let representative = family.matrix();
    let conj = g * mt * b;
    let residual = conj
        .projective_distance(&representative)
        .max(su21_residual(&g, &j));
    if !(residual <= NORMAL_FORM_TOL) {
        return Err(IsometryError::NormalFormFailed { residual });
    }
    Ok(NormalForm {
        family,
        representative,
        conjugator: g,
        model: target,
        source: mt,
        residual,
    })
}
