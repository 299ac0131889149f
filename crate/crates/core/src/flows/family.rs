use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{FlowError, FlowGenerator};
use crate::linalg::{Mat3C, Vec3C};
use crate::models::{cayley_point, heis_embed, heis_project, HeisPoint, Model, ProjectivePoint};
use crate::C64;

/// The four normal-form flows, with angles in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FlowFamily {
    /// `Log E_{α,β,γ}` with `γ = −α − β`, ball model.
    Elliptic { alpha: f64, beta: f64 },
    /// `Log T_λ` with `λ = r e^{iα}`, Siegel model.
    Loxodromic { r: f64, alpha: f64 },
    /// `Log P_{z,s}`, Siegel model.
    Unipotent { z: C64, s: f64 },
    /// `Log` of `e^{iθ}[[1, 0, −i/2], [0, e^{−3iθ}, 0], [0, 0, 1]]`, Siegel model.
    EllipticParabolic { theta: f64 },
}

fn ci(x: f64) -> C64 {
    C64::new(0.0, x)
}

impl FlowFamily {
    pub const NAMES: [&'static str; 4] =
        ["elliptic", "loxodromic", "unipotent", "ellipto-parabolic"];

    /// Builds a family from its name and a flat parameter list:
    /// `[α, β]`, `[r, α]`, `[Re z, Im z, s]` or `[θ]`.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self, FlowError> {
        let need = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(FlowError::BadParameters {
                    expected: n,
                    got: params.len(),
                })
            }
        };
        match name {
            "elliptic" => need(2).map(|_| FlowFamily::Elliptic {
                alpha: params[0],
                beta: params[1],
            }),
            "loxodromic" => need(2).map(|_| FlowFamily::Loxodromic {
                r: params[0],
                alpha: params[1],
            }),
            "unipotent" => need(3).map(|_| FlowFamily::Unipotent {
                z: C64::new(params[0], params[1]),
                s: params[2],
            }),
            "ellipto-parabolic" | "ellipto_parabolic" => {
                need(1).map(|_| FlowFamily::EllipticParabolic { theta: params[0] })
            }
            _ => Err(FlowError::UnknownFamily),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FlowFamily::Elliptic { .. } => Self::NAMES[0],
            FlowFamily::Loxodromic { .. } => Self::NAMES[1],
            FlowFamily::Unipotent { .. } => Self::NAMES[2],
            FlowFamily::EllipticParabolic { .. } => Self::NAMES[3],
        }
    }

    pub fn model(&self) -> Model {
        match self {
            FlowFamily::Elliptic { .. } => Model::Ball,
            _ => Model::Siegel,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            FlowFamily::Elliptic { alpha, beta } => alloc::vec![alpha, beta],
            FlowFamily::Loxodromic { r, alpha } => alloc::vec![r, alpha],
            FlowFamily::Unipotent { z, s } => alloc::vec![z.re, z.im, s],
            FlowFamily::EllipticParabolic { theta } => alloc::vec![theta],
        }
    }

    /// The displayed logarithm of the family's normal form.
    pub fn log_matrix(&self) -> Mat3C {
        let o = C64::new(0.0, 0.0);
        match *self {
            FlowFamily::Elliptic { alpha, beta } => {
                Mat3C::diag(ci(alpha), ci(beta), ci(-alpha - beta))
            }
            FlowFamily::Loxodromic { r, alpha } => {
                let l = r.ln();
                Mat3C::diag(C64::new(l, alpha), ci(-2.0 * alpha), C64::new(-l, alpha))
            }
            FlowFamily::Unipotent { z, s } => {
                Mat3C([[o, -z.conj(), ci(-s / 2.0)], [o, o, z], [o, o, o]])
            }
            FlowFamily::EllipticParabolic { theta } => Mat3C([
                [ci(theta), o, ci(-0.5)],
                [o, ci(-2.0 * theta), o],
                [o, o, ci(theta)],
            ]),
        }
    }

    pub fn generator(&self) -> FlowGenerator {
        FlowGenerator {
            x: self.log_matrix(),
            model: self.model(),
        }
    }

    /// The group element `exp(Log)`, i.e. the time-one map.
    pub fn element(&self) -> Mat3C {
        self.generator().exp(1.0)
    }

    /// `φ_t(x)` from the explicit coordinate formulas, in the family's model.
    ///
    /// Ball points are read as `[Z₁; Z₂; 1]`, Siegel points in Heisenberg
    /// coordinates; `∞` is fixed by every Siegel family. The unipotent flow is
    /// right translation by `(tz, ts)`.
    pub fn closed_form(&self, t: f64, x: &ProjectivePoint) -> Result<ProjectivePoint, FlowError> {
        let x = cayley_point(x, self.model());
        match *self {
            FlowFamily::Elliptic { alpha, beta } => {
                let z3 = x.rep[2];
                let (z1, z2) = (x.rep[0] / z3, x.rep[1] / z3);
                let gamma = -alpha - beta;
                let w1 = C64::from_polar(1.0, t * (alpha - gamma)) * z1;
                let w2 = C64::from_polar(1.0, t * (beta - gamma)) * z2;
                Ok(ProjectivePoint {
                    rep: Vec3C::new(w1, w2, C64::new(1.0, 0.0)),
                    model: Model::Ball,
                })
            }
            _ => {
                let HeisPoint::Finite { z: w, t: s } = heis_project(&x)? else {
                    return Ok(heis_embed(&HeisPoint::Infinity));
                };
                let (w, s) = match *self {
                    FlowFamily::Loxodromic { r, alpha } => {
                        let mu = C64::from_polar(r.powf(t), -3.0 * alpha * t);
                        (mu * w, mu.norm_sqr() * s)
                    }
                    FlowFamily::Unipotent { z, s: s0 } => {
                        (w + z * t, s + t * s0 + 2.0 * t * (z.conj() * w).im)
                    }
                    FlowFamily::EllipticParabolic { theta } => {
                        (C64::from_polar(1.0, -3.0 * theta * t) * w, s + t)
                    }
                    FlowFamily::Elliptic { .. } => unreachable!(),
                };
                Ok(heis_embed(&HeisPoint::finite(w, s)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{mat_log, su21_algebra_residual};
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn families() -> [FlowFamily; 4] {
        [
            FlowFamily::Elliptic {
                alpha: 0.3,
                beta: -0.1,
            },
            FlowFamily::Loxodromic { r: 1.7, alpha: 0.2 },
            FlowFamily::Unipotent {
                z: c(0.7, -0.4),
                s: 1.3,
            },
            FlowFamily::EllipticParabolic { theta: 0.15 },
        ]
    }

    #[test]
    fn generators_lie_in_the_algebra() {
        for f in families() {
            assert!(
                su21_algebra_residual(&f.log_matrix(), &f.model().form_matrix()) < 1e-15,
                "{}",
                f.name()
            );
        }
    }

    #[test]
    fn log_of_element_recovers_generator() {
        for f in families() {
            let back = mat_log(&f.element()).unwrap();
            assert!(back.distance(&f.log_matrix()) < 1e-12, "{}", f.name());
        }
    }

    #[test]
    fn closed_form_matches_matrix_flow() {
        for f in families() {
            let p = match f.model() {
                Model::Ball => ProjectivePoint {
                    rep: Vec3C::new(c(0.6, 0.0), C64::from_polar(0.8, 1.0), c(1.0, 0.0)),
                    model: Model::Ball,
                },
                Model::Siegel => heis_embed(&HeisPoint::finite(c(0.4, 0.9), -0.7)),
            };
            for t in [-1.5, 0.0, 0.4, 2.0] {
                let a = f.closed_form(t, &p).unwrap();
                let b = f.generator().apply(t, &p);
                assert!(a.proj_eq(&b), "{} at t = {t}", f.name());
            }
        }
    }

    #[test]
    fn unipotent_flow_is_right_translation() {
        let (z, s) = (c(0.5, 1.0), -0.3);
        let f = FlowFamily::Unipotent { z, s };
        let h = HeisPoint::finite(c(-1.0, 0.25), 2.0);
        for t in [-1.0, 0.7] {
            let right = crate::models::heis_mul(&h, &HeisPoint::finite(z * t, s * t)).unwrap();
            let got = heis_project(&f.generator().apply(t, &heis_embed(&h))).unwrap();
            assert!(heis_embed(&got).proj_eq(&heis_embed(&right)));
        }
    }

    #[test]
    fn full_turn_returns_z1() {
        let (alpha, beta) = (0.4, 0.1);
        let f = FlowFamily::Elliptic { alpha, beta };
        let t = 2.0 * PI / (2.0 * alpha + beta);
        let p = ProjectivePoint {
            rep: Vec3C::new(c(0.6, 0.0), c(0.0, 0.8), c(1.0, 0.0)),
            model: Model::Ball,
        };
        let q = f.closed_form(t, &p).unwrap();
        assert!((q.rep[0] - p.rep[0]).norm() < 1e-12);
    }

    #[test]
    fn ellipto_parabolic_advances_height() {
        let f = FlowFamily::EllipticParabolic { theta: 0.2 };
        let p = heis_embed(&HeisPoint::finite(c(1.0, 0.0), 0.5));
        let q = heis_project(&f.closed_form(2.5, &p).unwrap()).unwrap();
        assert!(matches!(q, HeisPoint::Finite { t, .. } if (t - 3.0).abs() < 1e-12));
    }

    #[test]
    fn loxodromic_limits() {
        let f = FlowFamily::Loxodromic { r: 2.0, alpha: 0.1 };
        let p = heis_embed(&HeisPoint::finite(c(0.5, 0.5), 1.0));
        let fwd = f.generator().apply(60.0, &p);
        let back = f.generator().apply(-60.0, &p);
        let e1 = ProjectivePoint {
            rep: Vec3C::basis(0),
            model: Model::Siegel,
        };
        let e3 = ProjectivePoint {
            rep: Vec3C::basis(2),
            model: Model::Siegel,
        };
        assert!(fwd.proj_eq(&e1));
        assert!(back.proj_eq(&e3));
    }

    #[test]
    fn names_round_trip() {
        for f in families() {
            assert_eq!(FlowFamily::from_name(f.name(), &f.params()).unwrap(), f);
        }
        assert_eq!(
            FlowFamily::from_name("spiral", &[]),
            Err(FlowError::UnknownFamily)
        );
    }
}
