use super::cubic::{root_order, solve_cubic, RootPattern};
use super::matrix::{Mat3C, Vec3C};
use crate::C64;

/// Relative size of 2×2 minors below which `M − λI` is rank deficient.
const RANK_TOL: f64 = 1e-8;

/// Multiplicity structure of a spectrum together with eigenspace dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spectrum {
    Simple,
    Double {
        double: C64,
        simple: C64,
        eigenspace_dim: u8,
    },
    Triple {
        value: C64,
        eigenspace_dim: u8,
    },
}

/// Eigenpairs of a 3×3 matrix, sorted on `(Re λ, Im λ)`.
///
/// When an eigenspace is deficient, its eigenvector is repeated and
/// `defect_flag` is set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub pairs: [(C64, Vec3C); 3],
    pub defect_flag: bool,
    pub spectrum: Spectrum,
}

impl EigenSystem {
    pub fn values(&self) -> [C64; 3] {
        self.pairs.map(|p| p.0)
    }

    pub fn vectors(&self) -> [Vec3C; 3] {
        self.pairs.map(|p| p.1)
    }

    /// Largest `‖Mv − λv‖` over the pairs.
    pub fn residual(&self, m: &Mat3C) -> f64 {
        self.pairs
            .iter()
            .map(|(l, v)| (*m * *v - v.scale(*l)).norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficients `(c2, c1, c0)` of `det(xI − M)`.
pub fn char_poly(m: &Mat3C) -> (C64, C64, C64) {
    let a = &m.0;
    let minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    (-m.trace(), minors, -m.det())
}

/// Dimension of the null space of `A` and a basis for it.
pub(crate) enum Kernel {
    Line(Vec3C),
    Plane(Vec3C, Vec3C),
    Everything,
}

pub(crate) fn kernel(a: &Mat3C, scale: f64) -> Kernel {
    let rows = [a.row(0), a.row(1), a.row(2)];
    let crosses = [
        rows[0].cross(&rows[1]),
        rows[0].cross(&rows[2]),
        rows[1].cross(&rows[2]),
    ];
    let mut best = 0;
    for k in 1..3 {
        if crosses[k].norm() > crosses[best].norm() {
            best = k;
        }
    }
    if crosses[best].norm() > RANK_TOL * scale * scale {
        return Kernel::Line(crosses[best].canonical());
    }
    let mut r = 0;
    for k in 1..3 {
        if rows[k].norm() > rows[r].norm() {
            r = k;
        }
    }
    if rows[r].norm() <= RANK_TOL * scale {
        return Kernel::Everything;
    }
    let (u, w) = complement_basis(&rows[r].conj().normalized());
    Kernel::Plane(u, w)
}

/// Orthonormal basis of the Hermitian complement of the unit vector `n`.
pub(crate) fn complement_basis(n: &Vec3C) -> (Vec3C, Vec3C) {
    let mut k = 0;
    for i in 1..3 {
        if n.0[i].norm() < n.0[k].norm() {
            k = i;
        }
    }
    let e = Vec3C::basis(k);
    let u = (e - n.scale(n.0[k].conj())).canonical();
    let w = n.cross(&u).conj().canonical();
    (u, w)
}

fn inverse_iteration(m: &Mat3C, lambda: C64, scale: f64) -> Vec3C {
    let shift = lambda + C64::new(1e-10 * scale, 1e-10 * scale);
    let a = *m - Mat3C::IDENTITY * shift;
    let mut x = Vec3C::from_real(1.0, 0.7, 0.3).normalized();
    if let Some(inv) = a.inverse() {
        for _ in 0..4 {
            x = (inv * x).normalized();
        }
    }
    x.canonical()
}

/// Eigenvalues and eigenvectors of a 3×3 complex matrix.
pub fn eig3(m: &Mat3C) -> EigenSystem {
    let (c2, c1, c0) = char_poly(m);
    let sol = solve_cubic(c2, c1, c0);
    let scale = m.frobenius_norm().max(1.0);
    let shifted = |l: C64| *m - Mat3C::IDENTITY * l;

    let simple_vector = |l: C64| match kernel(&shifted(l), scale) {
        Kernel::Line(v) => v,
        _ => inverse_iteration(m, l, scale),
    };

    match sol.pattern {
        RootPattern::Distinct => {
            let mut pairs = sol.roots.map(|l| (l, simple_vector(l)));
            pairs.sort_by(|a, b| root_order(&a.0, &b.0));
            EigenSystem {
                pairs,
                defect_flag: false,
                spectrum: Spectrum::Simple,
            }
        }
        RootPattern::Double { double, simple } => {
            let s = (simple, simple_vector(simple));
            let (d1, d2, dim) = match kernel(&shifted(double), scale) {
                Kernel::Line(v) => (v, v, 1),
                Kernel::Plane(u, w) => (u, w, 2),
                Kernel::Everything => (Vec3C::basis(0), Vec3C::basis(1), 2),
            };
            let mut pairs = [(double, d1), (double, d2), s];
            pairs.sort_by(|a, b| root_order(&a.0, &b.0));
            EigenSystem {
                pairs,
                defect_flag: dim == 1,
                spectrum: Spectrum::Double {
                    double,
                    simple,
                    eigenspace_dim: dim,
                },
            }
        }
        RootPattern::Triple(value) => {
            let (vs, dim) = match kernel(&shifted(value), scale) {
                Kernel::Line(v) => ([v, v, v], 1),
                Kernel::Plane(u, w) => ([u, w, w], 2),
                Kernel::Everything => ([Vec3C::basis(0), Vec3C::basis(1), Vec3C::basis(2)], 3),
            };
            EigenSystem {
                pairs: vs.map(|v| (value, v)),
                defect_flag: dim < 3,
                spectrum: Spectrum::Triple {
                    value,
                    eigenspace_dim: dim,
                },
            }
        }
    }
}
