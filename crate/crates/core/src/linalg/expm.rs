#[allow(unused_imports)]
use num_traits::Float;

use super::eigen::eig3;
use super::matrix::Mat3C;
use super::LinalgError;
use crate::C64;

/// Nilpotency threshold for `(M − I)³`.
const NILPOTENT_TOL: f64 = 1e-10;
/// Eigenvector matrices worse conditioned than this take the series route.
const MAX_SPECTRAL_COND: f64 = 1e6;

/// Matrix exponential by scaling and squaring of the Taylor series.
pub fn mat_exp(x: &Mat3C) -> Mat3C {
    let norm = x.one_norm();
    let mut s = 0i32;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil() as i32;
    }
    let y = *x * 0.5f64.powi(s);
    let mut term = Mat3C::IDENTITY;
    let mut sum = Mat3C::IDENTITY;
    for k in 1..40 {
        term = term * y * (1.0 / k as f64);
        sum += term;
        if term.max_abs() <= 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}

/// Principal matrix logarithm.
///
/// Unipotent input gets the exact finite series, diagonalizable input the
/// spectral formula, and anything else inverse scaling and squaring.
pub fn mat_log(m: &Mat3C) -> Result<Mat3C, LinalgError> {
    let n = *m - Mat3C::IDENTITY;
    let nn = n * n;
    let scale = n.frobenius_norm().max(1.0);
    if (nn * n).frobenius_norm() <= NILPOTENT_TOL * scale * scale * scale {
        return Ok(n - nn * 0.5);
    }

    let eig = eig3(m);
    for l in eig.values() {
        if l.norm() == 0.0 || (l.re < 0.0 && l.im.abs() <= 1e-12 * l.norm()) {
            return Err(LinalgError::LogBranchFailure { eigenvalue: l });
        }
    }

    if !eig.defect_flag {
        let v = Mat3C::from_cols(eig.vectors());
        if let Some(vi) = v.inverse() {
            if v.frobenius_norm() * vi.frobenius_norm() <= MAX_SPECTRAL_COND {
                let [a, b, c] = eig.values().map(|l| l.ln());
                return Ok(v * Mat3C::diag(a, b, c) * vi);
            }
        }
    }
    log_by_square_roots(m)
}

fn log_by_square_roots(m: &Mat3C) -> Result<Mat3C, LinalgError> {
    let mut a = *m;
    let mut k = 0i32;
    while (a - Mat3C::IDENTITY).frobenius_norm() > 0.25 {
        if k >= 60 {
            return Err(LinalgError::NonConvergent);
        }
        a = sqrtm(&a)?;
        k += 1;
    }
    let n = a - Mat3C::IDENTITY;
    let mut power = n;
    let mut sum = Mat3C::ZERO;
    for j in 1..80 {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        let term = power * (sign / j as f64);
        sum += term;
        if term.max_abs() <= 1e-18 * sum.max_abs().max(1e-300) {
            break;
        }
        power = power * n;
    }
    Ok(sum * 2f64.powi(k))
}

/// Principal square root by the Denman–Beavers iteration.
fn sqrtm(a: &Mat3C) -> Result<Mat3C, LinalgError> {
    let mut y = *a;
    let mut z = Mat3C::IDENTITY;
    for _ in 0..100 {
        let yi = y.inverse().ok_or(LinalgError::NonConvergent)?;
        let zi = z.inverse().ok_or(LinalgError::NonConvergent)?;
        let ny = (y + zi) * 0.5;
        let nz = (z + yi) * 0.5;
        let delta = ny.distance(&y);
        y = ny;
        z = nz;
        if delta <= 1e-15 * y.frobenius_norm() {
            return Ok(y);
        }
    }
    if (y * y).distance(a) <= 1e-10 * a.frobenius_norm() {
        Ok(y)
    } else {
        Err(LinalgError::NonConvergent)
    }
}

/// `exp(tX)` applied as a one-parameter subgroup.
pub fn exp_scaled(x: &Mat3C, t: f64) -> Mat3C {
    mat_exp(&(*x * C64::new(t, 0.0)))
}
