use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A vector of three complex homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3C(pub [C64; 3]);

impl Vec3C {
    pub const ZERO: Vec3C = Vec3C([ZERO; 3]);

    pub const fn new(a: C64, b: C64, c: C64) -> Self {
        Vec3C([a, b, c])
    }

    pub const fn from_real(a: f64, b: f64, c: f64) -> Self {
        Vec3C([C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0)])
    }

    /// Standard basis vector `e_{i+1}`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::ZERO;
        v.0[i] = ONE;
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Vec3C(self.0.map(|z| z.conj()))
    }

    /// Bilinear product `Σ aᵢbᵢ`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    /// Sesquilinear product `Σ conj(aᵢ)bᵢ`.
    pub fn hdot(&self, other: &Self) -> C64 {
        self.0[0].conj() * other.0[0]
            + self.0[1].conj() * other.0[1]
            + self.0[2].conj() * other.0[2]
    }

    /// Bilinear cross product; the result is bilinearly orthogonal to both factors.
    pub fn cross(&self, other: &Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = other.0;
        Vec3C([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(&self, c: C64) -> Self {
        Vec3C(self.0.map(|z| z * c))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }

    /// Unit Euclidean norm; the zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            *self
        } else {
            self.scale(C64::new(1.0 / n, 0.0))
        }
    }

    /// Unit norm with the largest-modulus entry made real and positive.
    pub fn canonical(&self) -> Self {
        let v = self.normalized();
        let k = v.dominant_index();
        let a = v.0[k];
        if a.norm() == 0.0 {
            return v;
        }
        v.scale(a.conj() / a.norm())
    }

    /// Index of the first entry of maximal modulus.
    pub fn dominant_index(&self) -> usize {
        let mut k = 0;
        for i in 1..3 {
            if self.0[i].norm() > self.0[k].norm() {
                k = i;
            }
        }
        k
    }
}

impl Index<usize> for Vec3C {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3C {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for Vec3C {
    type Output = Vec3C;
    fn add(self, o: Vec3C) -> Vec3C {
        Vec3C([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3C {
    type Output = Vec3C;
    fn sub(self, o: Vec3C) -> Vec3C {
        Vec3C([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3C {
    type Output = Vec3C;
    fn neg(self) -> Vec3C {
        Vec3C(self.0.map(|z| -z))
    }
}

impl Mul<C64> for Vec3C {
    type Output = Vec3C;
    fn mul(self, c: C64) -> Vec3C {
        self.scale(c)
    }
}

impl Mul<f64> for Vec3C {
    type Output = Vec3C;
    fn mul(self, c: f64) -> Vec3C {
        Vec3C(self.0.map(|z| z * c))
    }
}

/// A dense 3×3 complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3C(pub [[C64; 3]; 3]);

impl Mat3C {
    pub const ZERO: Mat3C = Mat3C([[ZERO; 3]; 3]);
    pub const IDENTITY: Mat3C = Mat3C([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]);

    pub const fn from_rows(rows: [[C64; 3]; 3]) -> Self {
        Mat3C(rows)
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Mat3C(rows.map(|r| r.map(|x| C64::new(x, 0.0))))
    }

    pub fn from_cols(cols: [Vec3C; 3]) -> Self {
        let mut m = Self::ZERO;
        for (j, c) in cols.iter().enumerate() {
            for i in 0..3 {
                m.0[i][j] = c.0[i];
            }
        }
        m
    }

    pub fn diag(a: C64, b: C64, c: C64) -> Self {
        let mut m = Self::ZERO;
        m.0[0][0] = a;
        m.0[1][1] = b;
        m.0[2][2] = c;
        m
    }

    pub fn row(&self, i: usize) -> Vec3C {
        Vec3C(self.0[i])
    }

    pub fn col(&self, j: usize) -> Vec3C {
        Vec3C([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    /// Conjugate transpose `M*`.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Inverse by the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if !(d.norm() > 0.0) || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        let cof = |a: usize, b: usize, c: usize, e: usize| m[a][b] * m[c][e] - m[a][e] * m[c][b];
        let adj = [
            [cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2)],
            [-cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2)],
            [cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1)],
        ];
        let inv = Mat3C(adj) * (C64::new(1.0, 0.0) / d);
        inv.is_finite().then_some(inv)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..3)
            .map(|j| (0..3).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { *self };
        let mut e = k.unsigned_abs();
        let mut acc = Self::IDENTITY;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        Some(acc)
    }

    /// How far `M` is from a scalar matrix: `min_c ‖M − cI‖ / ‖M‖`.
    pub fn projective_identity_residual(&self) -> f64 {
        self.projective_distance(&Self::IDENTITY)
    }

    /// `min_c ‖A − cB‖ / ‖A‖`, zero exactly when the matrices agree up to scale.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let na = self.frobenius_norm();
        let nb = other.frobenius_norm();
        if na == 0.0 || nb == 0.0 {
            return if na == nb { 0.0 } else { f64::INFINITY };
        }
        let mut ip = C64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                ip += other.0[i][j].conj() * self.0[i][j];
            }
        }
        let c = ip / (nb * nb);
        (*self - *other * c).frobenius_norm() / na
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }
}

impl Index<(usize, usize)> for Mat3C {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3C {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat3C {
    type Output = Mat3C;
    fn add(self, o: Mat3C) -> Mat3C {
        let mut m = self;
        m += o;
        m
    }
}

impl AddAssign for Mat3C {
    fn add_assign(&mut self, o: Mat3C) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += o.0[i][j];
            }
        }
    }
}

impl Sub for Mat3C {
    type Output = Mat3C;
    fn sub(self, o: Mat3C) -> Mat3C {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }
}

impl Neg for Mat3C {
    type Output = Mat3C;
    fn neg(self) -> Mat3C {
        Mat3C(self.0.map(|r| r.map(|z| -z)))
    }
}

impl Mul for Mat3C {
    type Output = Mat3C;
    fn mul(self, o: Mat3C) -> Mat3C {
        let mut m = Mat3C::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] =
                    self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        m
    }
}

impl Mul<Vec3C> for Mat3C {
    type Output = Vec3C;
    fn mul(self, v: Vec3C) -> Vec3C {
        Vec3C([
            self.row(0).dot(&v),
            self.row(1).dot(&v),
            self.row(2).dot(&v),
        ])
    }
}

impl Mul<C64> for Mat3C {
    type Output = Mat3C;
    fn mul(self, c: C64) -> Mat3C {
        Mat3C(self.0.map(|r| r.map(|z| z * c)))
    }
}

impl Mul<f64> for Mat3C {
    type Output = Mat3C;
    fn mul(self, c: f64) -> Mat3C {
        Mat3C(self.0.map(|r| r.map(|z| z * c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample() -> Mat3C {
        Mat3C([
            [c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0)],
            [c(0.0, 1.0), c(2.0, 0.5), c(-1.0, 1.0)],
            [c(1.5, 0.0), c(0.0, -2.0), c(0.25, 0.75)],
        ])
    }

    #[test]
    fn inverse_round_trip() {
        let m = sample();
        let inv = m.inverse().unwrap();
        assert!((m * inv).distance(&Mat3C::IDENTITY) < 1e-13);
        assert!((inv * m).distance(&Mat3C::IDENTITY) < 1e-13);
    }

    #[test]
    fn det_is_multiplicative() {
        let a = sample();
        let b = a.adjoint() + Mat3C::IDENTITY;
        assert!(((a * b).det() - a.det() * b.det()).norm() < 1e-11);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Mat3C::from_real([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn cross_is_bilinearly_orthogonal() {
        let a = Vec3C::new(c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5));
        let b = Vec3C::new(c(2.0, 0.0), c(1.0, -1.0), c(0.0, 3.0));
        let x = a.cross(&b);
        assert!(a.dot(&x).norm() < 1e-14);
        assert!(b.dot(&x).norm() < 1e-14);
    }

    #[test]
    fn powers() {
        let m = sample();
        let p3 = m.powi(3).unwrap();
        assert!(p3.distance(&(m * m * m)) < 1e-11);
        let pm2 = m.powi(-2).unwrap();
        assert!((pm2 * m * m).distance(&Mat3C::IDENTITY) < 1e-12);
        assert_eq!(m.powi(0).unwrap(), Mat3C::IDENTITY);
    }

    #[test]
    fn projective_distance_ignores_scale() {
        let m = sample();
        assert!(m.projective_distance(&(m * c(0.3, -2.0))) < 1e-15);
        assert!(m.projective_distance(&Mat3C::IDENTITY) > 0.1);
        assert!((Mat3C::IDENTITY * c(0.0, 2.0)).projective_identity_residual() < 1e-15);
    }

    #[test]
    fn canonical_phase() {
        let v = Vec3C::new(c(0.0, 0.0), c(0.0, -3.0), c(1.0, 0.0)).canonical();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!(v.0[1].im.abs() < 1e-15 && v.0[1].re > 0.0);
    }
}
