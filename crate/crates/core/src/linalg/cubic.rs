use core::cmp::Ordering;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::C64;

/// Depressed-cubic coefficients below this (relative to the coefficient
/// scale) make the three roots coincide.
const TRIPLE_TOL: f64 = 1e-12;
/// Relative size of the discriminant, against its own rounding budget,
/// below which two roots coincide.
const DOUBLE_TOL: f64 = 1e-14;
/// Roots closer than this (relative) are merged.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Multiplicity structure of a cubic's roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootPattern {
    Distinct,
    Double { double: C64, simple: C64 },
    Triple(C64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicSolution {
    /// Sorted lexicographically on `(Re, Im)`; merged roots are bitwise equal.
    pub roots: [C64; 3],
    pub pattern: RootPattern,
}

/// Total order used for every eigenvalue listing: real part, then imaginary part.
pub fn root_order(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Roots of `x³ + c2·x² + c1·x + c0`, sorted by [`root_order`].
pub fn cubic_roots(c2: C64, c1: C64, c0: C64) -> [C64; 3] {
    solve_cubic(c2, c1, c0).roots
}

/// Coefficients `(c2, c1, c0)` of the characteristic polynomial
/// `x³ − z x² + z̄ x − 1` of an element of SU(2,1) with trace `z`.
pub fn char_poly_su21(z: C64) -> (C64, C64, C64) {
    (-z, z.conj(), C64::new(-1.0, 0.0))
}

fn eval(x: C64, c2: C64, c1: C64, c0: C64) -> (C64, C64) {
    let p = ((x + c2) * x + c1) * x + c0;
    let dp = (x * 3.0 + c2 * 2.0) * x + c1;
    (p, dp)
}

fn polish(mut x: C64, c2: C64, c1: C64, c0: C64) -> C64 {
    for _ in 0..4 {
        let (p, dp) = eval(x, c2, c1, c0);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let nx = x - p / dp;
        if eval(nx, c2, c1, c0).0.norm() < p.norm() {
            x = nx;
        } else {
            break;
        }
    }
    x
}

/// Newton on the derivative, for a root of multiplicity two.
fn polish_double(mut x: C64, c2: C64, c1: C64) -> C64 {
    for _ in 0..4 {
        let dp = (x * 3.0 + c2 * 2.0) * x + c1;
        let ddp = x * 6.0 + c2 * 2.0;
        if dp.norm() == 0.0 || ddp.norm() == 0.0 {
            break;
        }
        let nx = x - dp / ddp;
        let ndp = (nx * 3.0 + c2 * 2.0) * nx + c1;
        if ndp.norm() < dp.norm() {
            x = nx;
        } else {
            break;
        }
    }
    x
}

fn depressed_roots(p: C64, q: C64, real: bool) -> [C64; 3] {
    if real && p.re < 0.0 {
        let disc = (q.re / 2.0).powi(2) + (p.re / 3.0).powi(3);
        if disc < 0.0 {
            let m = 2.0 * (-p.re / 3.0).sqrt();
            let arg = (3.0 * q.re / (2.0 * p.re) * (-3.0 / p.re).sqrt()).clamp(-1.0, 1.0);
            let phi = arg.acos() / 3.0;
            return [0, 1, 2].map(|k| C64::new(m * (phi - 2.0 * PI * k as f64 / 3.0).cos(), 0.0));
        }
    }
    let disc = q * q / 4.0 + p * p * p / 27.0;
    let s = disc.sqrt();
    let a = -q / 2.0 + s;
    let b = -q / 2.0 - s;
    let u3 = if a.norm() >= b.norm() { a } else { b };
    if u3.norm() == 0.0 {
        return [C64::new(0.0, 0.0); 3];
    }
    let u = u3.cbrt();
    let v = -p / (u * 3.0);
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let w2 = w * w;
    [u + v, w * u + w2 * v, w2 * u + w * v]
}

/// Full solver: roots plus the multiplicity pattern used by the eigen-solver.
pub fn solve_cubic(c2: C64, c1: C64, c0: C64) -> CubicSolution {
    let scale = 1.0 + c2.norm().max(c1.norm()).max(c0.norm());
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = c2 * c2 * c2 * (2.0 / 27.0) - c2 * c1 / 3.0 + c0;

    if p.norm() <= TRIPLE_TOL * scale * scale && q.norm() <= TRIPLE_TOL * scale * scale * scale {
        return triple(-shift);
    }

    let disc = -(p * p * p) * 4.0 - q * q * 27.0;
    let budget = p.norm_sqr() * 12.0 * scale * scale + q.norm() * 54.0 * scale * scale * scale;
    if disc.norm() <= DOUBLE_TOL * budget {
        let yd = -(q * 3.0) / (p * 2.0);
        let d = polish_double(yd - shift, c2, c1);
        let s = polish(-(yd * 2.0) - shift, c2, c1, c0);
        return double(d, s);
    }

    let real = c2.im == 0.0 && c1.im == 0.0 && c0.im == 0.0;
    let ys = depressed_roots(p, q, real);
    let xs = ys.map(|y| polish(y - shift, c2, c1, c0));
    merge_close(xs, scale, c2, c1, c0)
}

fn triple(x: C64) -> CubicSolution {
    CubicSolution {
        roots: [x; 3],
        pattern: RootPattern::Triple(x),
    }
}

fn double(d: C64, s: C64) -> CubicSolution {
    let mut roots = [d, d, s];
    roots.sort_by(root_order);
    CubicSolution {
        roots,
        pattern: RootPattern::Double {
            double: d,
            simple: s,
        },
    }
}

fn merge_close(xs: [C64; 3], scale: f64, c2: C64, c1: C64, c0: C64) -> CubicSolution {
    let tol = CLUSTER_TOL * scale;
    let close = |i: usize, j: usize| (xs[i] - xs[j]).norm() <= tol;
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let n_close = pairs.iter().filter(|(i, j, _)| close(*i, *j)).count();
    if n_close >= 2 {
        return triple(-c2 / 3.0);
    }
    for (i, j, k) in pairs {
        if close(i, j) {
            let d = polish_double((xs[i] + xs[j]) / 2.0, c2, c1);
            return double(d, polish(xs[k], c2, c1, c0));
        }
    }
    let mut roots = xs;
    roots.sort_by(root_order);
    CubicSolution {
        roots,
        pattern: RootPattern::Distinct,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn residual(r: C64, c2: C64, c1: C64, c0: C64) -> f64 {
        eval(r, c2, c1, c0).0.norm()
    }

    #[test]
    fn roots_of_unity() {
        let r = cubic_roots(c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let mut expected = [c(1.0, 0.0), w, w * w];
        expected.sort_by(root_order);
        for (a, b) in r.iter().zip(expected.iter()) {
            assert!((a - b).norm() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn unipotent_triple_root() {
        let s = solve_cubic(c(-3.0, 0.0), c(3.0, 0.0), c(-1.0, 0.0));
        assert_eq!(s.pattern, RootPattern::Triple(c(1.0, 0.0)));
        assert_eq!(s.roots, [c(1.0, 0.0); 3]);
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly_su21(c(3.0, 0.0)),
            (c(-3.0, 0.0), c(3.0, 0.0), c(-1.0, 0.0))
        );
        assert_eq!(
            char_poly_su21(c(0.0, 0.0)),
            (c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0))
        );
        assert_eq!(
            char_poly_su21(c(2.0, 1.0)),
            (c(-2.0, -1.0), c(2.0, -1.0), c(-1.0, 0.0))
        );
    }

    #[test]
    fn double_root_detected() {
        // (x − 2)²(x + 1)
        let s = solve_cubic(c(-3.0, 0.0), c(0.0, 0.0), c(4.0, 0.0));
        match s.pattern {
            RootPattern::Double { double, simple } => {
                assert!((double - c(2.0, 0.0)).norm() < 1e-14);
                assert!((simple - c(-1.0, 0.0)).norm() < 1e-14);
            }
            other => panic!("expected a double root, got {other:?}"),
        }
    }

    #[test]
    fn complex_double_root() {
        // (x − a)²(x − b) with a = e^{0.4i}, b = e^{−0.8i}
        let a = C64::from_polar(1.0, 0.4);
        let b = C64::from_polar(1.0, -0.8);
        let c2 = -(a * 2.0 + b);
        let c1 = a * a + a * b * 2.0;
        let c0 = -(a * a * b);
        let s = solve_cubic(c2, c1, c0);
        assert!(matches!(s.pattern, RootPattern::Double { .. }));
        assert!(s.roots.iter().filter(|r| (**r - a).norm() < 1e-12).count() == 2);
    }

    #[test]
    fn three_real_roots_use_trig_branch() {
        // (x − 1)(x − 2)(x − 3)
        let r = cubic_roots(c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0));
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - c(e, 0.0)).norm() < 1e-13);
            assert_eq!(x.im, 0.0);
        }
    }

    #[test]
    fn separated_roots_stay_distinct() {
        // roots 1, 1 + 1e-5, 5
        let (a, b, d) = (c(1.0, 0.0), c(1.0 + 1e-5, 0.0), c(5.0, 0.0));
        let s = solve_cubic(-(a + b + d), a * b + a * d + b * d, -(a * b * d));
        assert_eq!(s.pattern, RootPattern::Distinct);
    }

    #[test]
    fn residual_bound_on_fixed_samples() {
        let cases = [
            (c(0.3, -1.2), c(4.0, 0.5), c(-2.0, 2.0)),
            (c(100.0, 0.0), c(-3.0, 7.0), c(1e-3, 0.0)),
            (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        ];
        for (c2, c1, c0) in cases {
            let scale = 1.0 + c2.norm().max(c1.norm()).max(c0.norm());
            for r in cubic_roots(c2, c1, c0) {
                assert!(residual(r, c2, c1, c0) <= 1e-9 * scale);
            }
        }
    }
}
