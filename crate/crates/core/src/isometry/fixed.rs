use alloc::vec::Vec;

use super::classify::{classify_with, IsometryKind, Tolerances};
use super::IsometryError;
use crate::linalg::{kernel, Kernel, Mat3C, Spectrum, Vec3C};
use crate::models::{
    c_circle_through, form_adapted_plane, locate_with, CCircle, Location, Model, ProjectivePoint,
};
use crate::C64;

/// A projectivized eigenvector with its eigenvalue and position relative to the ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoint {
    pub vector: Vec3C,
    pub eigenvalue: C64,
    pub location: Location,
    /// False when the point belongs to a line of fixed points.
    pub isolated: bool,
}

pub fn fixed_points(m: &Mat3C, model: Model) -> Result<Vec<FixedPoint>, IsometryError> {
    fixed_points_with(m, &model.form_matrix(), &Tolerances::default())
}

pub fn fixed_points_with(
    m: &Mat3C,
    j: &Mat3C,
    tol: &Tolerances,
) -> Result<Vec<FixedPoint>, IsometryError> {
    let cls = classify_with(m, j, tol)?;
    let eig = cls.eigen;
    let point = |v: Vec3C, l: C64, isolated: bool| FixedPoint {
        vector: v,
        eigenvalue: l,
        location: locate_with(&v, j, tol.location),
        isolated,
    };
    let scale = m.frobenius_norm().max(1.0);
    let plane = |l: C64| -> Vec<FixedPoint> {
        match kernel(&(*m - Mat3C::IDENTITY * l), scale) {
            Kernel::Plane(u, w) => form_adapted_plane(&u, &w, j)
                .iter()
                .map(|(_, v)| point(v.canonical(), l, false))
                .collect(),
            _ => Vec::new(),
        }
    };
    let mut out = Vec::new();
    match eig.spectrum {
        Spectrum::Simple => {
            for (l, v) in eig.pairs {
                out.push(point(v, l, true));
            }
        }
        Spectrum::Double {
            double,
            simple,
            eigenspace_dim,
        } => {
            if eigenspace_dim == 1 {
                let v = eig
                    .pairs
                    .iter()
                    .find(|p| p.0 == double)
                    .map(|p| p.1)
                    .unwrap_or(eig.pairs[0].1);
                out.push(point(v, double, true));
            } else {
                out.extend(plane(double));
            }
            let v = eig
                .pairs
                .iter()
                .find(|p| p.0 == simple)
                .map(|p| p.1)
                .unwrap_or(eig.pairs[2].1);
            out.push(point(v, simple, true));
        }
        Spectrum::Triple {
            value,
            eigenspace_dim,
        } => match eigenspace_dim {
            1 => out.push(point(eig.pairs[0].1, value, true)),
            2 => out.extend(plane(value)),
            _ => return Err(IsometryError::IdentityInput),
        },
    }
    Ok(out)
}

/// The C-circle through the two boundary fixed points of a loxodromic element.
pub fn loxodromic_axis(m: &Mat3C, model: Model) -> Result<CCircle, IsometryError> {
    loxodromic_axis_with(m, model, &Tolerances::default())
}

pub fn loxodromic_axis_with(
    m: &Mat3C,
    model: Model,
    tol: &Tolerances,
) -> Result<CCircle, IsometryError> {
    let j = model.form_matrix();
    let cls = classify_with(m, &j, tol)?;
    if cls.kind != IsometryKind::Loxodromic {
        return Err(IsometryError::NotLoxodromic);
    }
    let pts = fixed_points_with(m, &j, tol)?;
    let polar = pts
        .iter()
        .find(|p| p.location == Location::Exterior)
        .ok_or(IsometryError::NotLoxodromic)?;
    let polar = ProjectivePoint {
        rep: polar.vector,
        model,
    };
    c_circle_through(&polar).map_err(|_| IsometryError::NotLoxodromic)
}
