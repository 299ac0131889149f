use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::FlowError;
use crate::linalg::{Mat3C, Vec3C};
use crate::models::{cayley_point, heis_embed, heis_project, HeisPoint, Model, ProjectivePoint};
use crate::C64;

/// Centralizer orbits of the normal forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SurfaceFamily {
    /// `T_r`: `|Z₂| = r`, `|Z₁| = √(1 − r²)` in the ball.
    Torus { r: f64 },
    /// `P_r`: `s/|z|² = r` in Heisenberg coordinates.
    Paraboloid { r: f64 },
    /// `S_r`: `Im(w/z₀) = r` for the translation direction `z₀`.
    Plane { r: f64, direction: C64 },
    /// `|z| = radius`, around the vertical axis.
    EPCylinder { radius: f64 },
}

impl SurfaceFamily {
    pub fn model(&self) -> Model {
        match self {
            SurfaceFamily::Torus { .. } => Model::Ball,
            _ => Model::Siegel,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SurfaceFamily::Torus { .. } => "torus",
            SurfaceFamily::Paraboloid { .. } => "paraboloid",
            SurfaceFamily::Plane { .. } => "plane",
            SurfaceFamily::EPCylinder { .. } => "ep-cylinder",
        }
    }
}

/// A standard surface moved by `anchor`, an element of SU(2,1) in the
/// family's model: the surface is `anchor · S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSurface {
    pub family: SurfaceFamily,
    pub anchor: Mat3C,
}

impl InvariantSurface {
    pub fn standard(family: SurfaceFamily) -> Self {
        InvariantSurface {
            family,
            anchor: Mat3C::IDENTITY,
        }
    }
}

/// Quads over a vertex list, in Heisenberg coordinates `(Re z, Im z, t)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuadMesh {
    pub vertices: Vec<[f64; 3]>,
    pub quads: Vec<[usize; 4]>,
}

/// Signed distance-like residual; zero exactly on the surface.
///
/// Points where the defining quotient is undefined (`∞`, or `z = 0` for the
/// paraboloid) give `+∞`.
pub fn surface_membership(surface: &InvariantSurface, p: &ProjectivePoint) -> f64 {
    let model = surface.family.model();
    let p = cayley_point(p, model);
    let v = match surface.anchor.inverse() {
        Some(a) => a * p.rep,
        None => return f64::INFINITY,
    };
    let p = ProjectivePoint { rep: v, model };
    match surface.family {
        SurfaceFamily::Torus { r } => {
            if v[2].norm() == 0.0 {
                return f64::INFINITY;
            }
            (v[1] / v[2]).norm() - r
        }
        family => {
            let Ok(HeisPoint::Finite { z, t }) = heis_project(&p) else {
                return f64::INFINITY;
            };
            match family {
                SurfaceFamily::Paraboloid { r } => {
                    let n = z.norm_sqr();
                    if n == 0.0 {
                        f64::INFINITY
                    } else {
                        t / n - r
                    }
                }
                SurfaceFamily::Plane { r, direction } => (z / direction).im - r,
                SurfaceFamily::EPCylinder { radius } => z.norm() - radius,
                SurfaceFamily::Torus { .. } => unreachable!(),
            }
        }
    }
}

fn standard_point(family: SurfaceFamily, u: f64, v: f64) -> Vec3C {
    let one = C64::new(1.0, 0.0);
    match family {
        SurfaceFamily::Torus { r } => Vec3C::new(
            C64::from_polar((1.0 - r * r).sqrt(), u),
            C64::from_polar(r, v),
            one,
        ),
        SurfaceFamily::Paraboloid { r } => {
            let z = C64::from_polar(v, u);
            heis_embed(&HeisPoint::finite(z, r * v * v)).rep
        }
        SurfaceFamily::Plane { r, direction } => {
            heis_embed(&HeisPoint::finite(direction * C64::new(u, r), v)).rep
        }
        SurfaceFamily::EPCylinder { radius } => {
            heis_embed(&HeisPoint::finite(C64::from_polar(radius, u), v)).rep
        }
    }
}

/// A `resolution × resolution` grid on the surface, in Heisenberg coordinates.
///
/// `extent` bounds the non-compact directions: the paraboloid radius runs
/// over `[extent/resolution, extent]`, plane and cylinder heights over
/// `[−extent, extent]`. Periodic directions are closed up.
pub fn surface_mesh(
    surface: &InvariantSurface,
    resolution: usize,
    extent: f64,
) -> Result<QuadMesh, FlowError> {
    let n = resolution.max(4);
    let family = surface.family;
    if let SurfaceFamily::Torus { r } = family {
        if !(r > 0.0 && r < 1.0) {
            return Err(FlowError::TorusRadius { r });
        }
    }
    let (u_periodic, v_periodic) = match family {
        SurfaceFamily::Torus { .. } => (true, true),
        SurfaceFamily::Paraboloid { .. } | SurfaceFamily::EPCylinder { .. } => (true, false),
        SurfaceFamily::Plane { .. } => (false, false),
    };
    let grid = |k: usize, periodic: bool, lo: f64, hi: f64| {
        if periodic {
            lo + (hi - lo) * k as f64 / n as f64
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };
    let (u_lo, u_hi) = if u_periodic {
        (0.0, 2.0 * PI)
    } else {
        (-extent, extent)
    };
    let (v_lo, v_hi) = match family {
        SurfaceFamily::Torus { .. } => (0.0, 2.0 * PI),
        SurfaceFamily::Paraboloid { .. } => (extent / n as f64, extent),
        _ => (-extent, extent),
    };

    let mut vertices = Vec::with_capacity(n * n);
    for i in 0..n {
        let v = grid(i, v_periodic, v_lo, v_hi);
        for k in 0..n {
            let u = grid(k, u_periodic, u_lo, u_hi);
            let rep = surface.anchor * standard_point(family, u, v);
            let p = cayley_point(
                &ProjectivePoint {
                    rep,
                    model: family.model(),
                },
                Model::Siegel,
            );
            let h = heis_project(&p)?;
            vertices.push(h.to_r3().ok_or(FlowError::HitsInfinity)?);
        }
    }

    let mut quads = Vec::new();
    let rows = if v_periodic { n } else { n - 1 };
    let cols = if u_periodic { n } else { n - 1 };
    for i in 0..rows {
        for k in 0..cols {
            let (i2, k2) = ((i + 1) % n, (k + 1) % n);
            quads.push([i * n + k, i * n + k2, i2 * n + k2, i2 * n + k]);
        }
    }
    Ok(QuadMesh { vertices, quads })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::FlowFamily;
    use crate::linalg::random_su21;
    use crate::models::heis_embed;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn siegel_point(z: C64, t: f64) -> ProjectivePoint {
        heis_embed(&HeisPoint::finite(z, t))
    }

    #[test]
    fn torus_example() {
        let s = InvariantSurface::standard(SurfaceFamily::Torus { r: 0.8 });
        let p = ProjectivePoint {
            rep: Vec3C::new(
                C64::from_polar(0.6, 1.1),
                C64::from_polar(0.8, -2.0),
                c(1.0, 0.0),
            ),
            model: Model::Ball,
        };
        assert!(surface_membership(&s, &p).abs() < 1e-15);
        assert!(surface_membership(&s, &cayley_point(&p, Model::Siegel)).abs() < 1e-14);
    }

    #[test]
    fn paraboloid_and_plane_examples() {
        let par = InvariantSurface::standard(SurfaceFamily::Paraboloid { r: 1.0 });
        assert!(surface_membership(&par, &siegel_point(c(2.0, 0.0), 4.0)).abs() < 1e-12);
        let plane = InvariantSurface::standard(SurfaceFamily::Plane {
            r: 0.0,
            direction: c(1.0, 0.0),
        });
        assert!(surface_membership(&plane, &siegel_point(c(3.0, 0.0), -2.0)).abs() < 1e-15);
        assert!((surface_membership(&plane, &siegel_point(c(3.0, 0.5), -2.0)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn meshes_lie_on_their_surfaces() {
        let anchor = random_su21(11, &Model::Siegel.form_matrix());
        let cases = [
            InvariantSurface::standard(SurfaceFamily::Torus { r: 0.8 }),
            InvariantSurface::standard(SurfaceFamily::Paraboloid { r: -0.5 }),
            InvariantSurface::standard(SurfaceFamily::Plane {
                r: 1.5,
                direction: c(1.0, 1.0),
            }),
            InvariantSurface::standard(SurfaceFamily::EPCylinder { radius: 2.0 }),
            InvariantSurface {
                family: SurfaceFamily::EPCylinder { radius: 0.5 },
                anchor,
            },
        ];
        for s in cases {
            let mesh = surface_mesh(&s, 12, 2.0).unwrap();
            assert_eq!(mesh.vertices.len(), 144);
            for v in &mesh.vertices {
                let p = heis_embed(&HeisPoint::from_r3(*v));
                assert!(
                    surface_membership(&s, &p).abs() < 1e-8,
                    "{}",
                    s.family.name()
                );
            }
            assert!(mesh
                .quads
                .iter()
                .flatten()
                .all(|&i| i < mesh.vertices.len()));
        }
    }

    #[test]
    fn torus_radius_is_checked() {
        for r in [0.0, 1.0, 1.5, f64::NAN] {
            let s = InvariantSurface::standard(SurfaceFamily::Torus { r });
            assert!(matches!(surface_mesh(&s, 8, 1.0), Err(FlowError::TorusRadius { .. })));
        }
    }

    #[test]
    fn torus_mesh_is_closed() {
        let mesh = surface_mesh(
            &InvariantSurface::standard(SurfaceFamily::Torus { r: 0.5 }),
            6,
            1.0,
        )
        .unwrap();
        assert_eq!(mesh.quads.len(), 36);
        let plane = InvariantSurface::standard(SurfaceFamily::Plane {
            r: 0.0,
            direction: c(1.0, 0.0),
        });
        assert_eq!(surface_mesh(&plane, 6, 1.0).unwrap().quads.len(), 25);
    }

    #[test]
    fn flow_preserves_membership() {
        let lox = FlowFamily::Loxodromic { r: 1.5, alpha: 0.3 };
        let par = InvariantSurface::standard(SurfaceFamily::Paraboloid { r: 0.7 });
        let p = siegel_point(c(1.0, 1.0), 1.4);
        let m0 = surface_membership(&par, &p);
        for t in [-1.0, 0.5, 2.0] {
            let q = lox.generator().apply(t, &p);
            assert!((surface_membership(&par, &q) - m0).abs() < 1e-10);
        }
    }
}
