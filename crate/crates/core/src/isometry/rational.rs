use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::classify::{classify_with, IsometryKind, Tolerances};
use super::IsometryError;
use crate::linalg::{Mat3C, Spectrum};
use crate::models::{locate_with, Location, Model};
use crate::C64;

pub const DEFAULT_DENOM_BOUND: u64 = 512;
pub const DEFAULT_TYPE_TOL: f64 = 1e-6;

/// Rotation pair `(p/n, q/n)` in turns, with `|p| ≥ |q|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EllipticType {
    pub p: i64,
    pub q: i64,
    pub n: u64,
}

impl EllipticType {
    /// Builds a type from two reduced fractions, bringing them to a common
    /// denominator and ordering them so that `|p| ≥ |q|`.
    pub fn from_fractions((a1, b1): (i64, u64), (a2, b2): (i64, u64)) -> Self {
        let n = lcm(b1, b2);
        let mut p = a1 * (n / b1) as i64;
        let mut q = a2 * (n / b2) as i64;
        if q.abs() > p.abs() || (q.abs() == p.abs() && q > p) {
            core::mem::swap(&mut p, &mut q);
        }
        EllipticType { p, q, n }
    }

    /// Rotation numbers `(p/n, q/n)` in turns.
    pub fn rotations(&self) -> (f64, f64) {
        (self.p as f64 / self.n as f64, self.q as f64 / self.n as f64)
    }

    /// Type of the inverse element.
    pub fn inverse(&self) -> Self {
        EllipticType {
            p: -self.p,
            q: -self.q,
            n: self.n,
        }
    }

    /// The angles `(α, β, γ)` in radians of the diagonal model `E_{α,β,γ}`.
    pub fn angles(&self) -> (f64, f64, f64) {
        let n = self.n as f64;
        let a = 2.0 * PI * (2 * self.p - self.q) as f64 / (3.0 * n);
        let b = 2.0 * PI * (2 * self.q - self.p) as f64 / (3.0 * n);
        (a, b, -a - b)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// First continued-fraction convergent `h/k` of `x` with `k ≤ bound` and
/// `|x − h/k| ≤ tol`.
pub fn rationalize(x: f64, bound: u64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 as u64 > bound {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some((h2, k2 as u64));
        }
        let frac = y - a as f64;
        if frac <= 0.0 {
            return None;
        }
        y = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

/// `arg(λ/μ)/2π` folded into `(−1/2, 1/2]`.
fn rotation(l: C64, mu: C64) -> f64 {
    let r = (l / mu).arg() / (2.0 * PI);
    if r <= -0.5 {
        r + 1.0
    } else {
        r
    }
}

pub fn elliptic_type(
    m: &Mat3C,
    model: Model,
    denom_bound: u64,
    tol: f64,
) -> Result<EllipticType, IsometryError> {
    elliptic_type_with(m, &model.form_matrix(), denom_bound, tol)
}

/// Rotation pair measured against the eigenvalue `λ₋` of the negative eigenvector.
pub fn elliptic_type_with(
    m: &Mat3C,
    j: &Mat3C,
    denom_bound: u64,
    tol: f64,
) -> Result<EllipticType, IsometryError> {
    let tols = Tolerances::default();
    let cls = classify_with(m, j, &tols)?;
    let eig = cls.eigen;
    let (lm, others) = match (cls.kind, eig.spectrum) {
        (IsometryKind::RegularElliptic, _) => {
            let k = eig
                .pairs
                .iter()
                .position(|(_, v)| locate_with(v, j, tols.location) == Location::Interior)
                .ok_or(IsometryError::NotElliptic)?;
            let rest: [usize; 2] = match k {
                0 => [1, 2],
                1 => [0, 2],
                _ => [0, 1],
            };
            (eig.pairs[k].0, rest.map(|i| eig.pairs[i].0))
        }
        (IsometryKind::ComplexReflection, Spectrum::Double { double, simple, .. }) => {
            (double, [double, simple])
        }
        (IsometryKind::ReflectionOnPoint, Spectrum::Double { double, simple, .. }) => {
            (simple, [double, double])
        }
        _ => return Err(IsometryError::NotElliptic),
    };
    let r = others.map(|l| rotation(l, lm));
    let f1 = rationalize(r[0], denom_bound, tol)
        .ok_or(IsometryError::NotRationalType { rotation: r[0] })?;
    let f2 = rationalize(r[1], denom_bound, tol)
        .ok_or(IsometryError::NotRationalType { rotation: r[1] })?;
    Ok(EllipticType::from_fractions(half_turn(f1), half_turn(f2)))
}

/// A rotation within rounding of `−1/2` is reported as `1/2`.
fn half_turn((h, k): (i64, u64)) -> (i64, u64) {
    if 2 * h == -(k as i64) {
        (-h, k)
    } else {
        (h, k)
    }
}
