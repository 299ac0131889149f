use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expm::mat_exp;
use super::matrix::Mat3C;
use crate::C64;

/// Membership threshold for both the form residual and `|det − 1|`.
pub const GROUP_TOL: f64 = 1e-9;

/// Whether `M*JM = J` and `det M = 1`, together with the larger residual.
pub fn in_su21(m: &Mat3C, j: &Mat3C) -> (bool, f64) {
    let r = su21_residual(m, j);
    (r <= GROUP_TOL, r)
}

pub fn su21_residual(m: &Mat3C, j: &Mat3C) -> f64 {
    let form = (m.adjoint() * *j * *m - *j).frobenius_norm();
    let det = (m.det() - C64::new(1.0, 0.0)).norm();
    form.max(det)
}

/// Residual of `X*J + JX = 0` and `tr X = 0`.
pub fn su21_algebra_residual(x: &Mat3C, j: &Mat3C) -> f64 {
    (x.adjoint() * *j + *j * *x)
        .frobenius_norm()
        .max(x.trace().norm())
}

/// Random element of the Lie algebra of `J` with entries of modulus at most one.
pub fn random_su21_generator(seed: u64, j: &Mat3C) -> Mat3C {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Mat3C::ZERO;
    for i in 0..3 {
        for k in 0..3 {
            a.0[i][k] = C64::new(rng.gen_range(-0.35..0.35), rng.gen_range(-0.35..0.35));
        }
    }
    let ji = j.inverse().expect("form must be invertible");
    let mut x = (a - ji * a.adjoint() * *j) * 0.5;
    x = x - Mat3C::IDENTITY * (x.trace() / 3.0);
    let m = x.max_abs();
    if m > 1.0 {
        x = x * (1.0 / m);
    }
    x
}

/// Reproducible random element of SU(J), the exponential of [`random_su21_generator`].
pub fn random_su21(seed: u64, j: &Mat3C) -> Mat3C {
    mat_exp(&random_su21_generator(seed, j))
}
