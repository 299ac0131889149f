use super::IsometryError;
use crate::linalg::{eig3, su21_residual, EigenSystem, Mat3C, Spectrum, GROUP_TOL};
use crate::models::{locate_with, Location, Model};
use crate::C64;

/// Numerical thresholds used by the classifier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Largest accepted `M*JM − J` / `det − 1` residual.
    pub group: f64,
    /// Eigenvalues with `||λ| − 1|` above this make the element loxodromic.
    pub unit_modulus: f64,
    /// `|f(tr)|` below this is too close to the discriminant curve to trust its sign.
    pub goldman: f64,
    /// Distinct eigenvalues closer than this are treated as an ambiguous cluster.
    pub gap: f64,
    /// Relative `|Φ(v)|/‖v‖²` below which an eigenvector is null.
    pub location: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            group: GROUP_TOL,
            unit_modulus: 1e-7,
            goldman: 1e-6,
            gap: 1e-5,
            location: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsometryKind {
    Loxodromic,
    RegularElliptic,
    ComplexReflection,
    ReflectionOnPoint,
    HorizontalParabolic,
    VerticalParabolic,
    ElliptoParabolic,
    Identity,
}

impl IsometryKind {
    pub fn name(self) -> &'static str {
        match self {
            IsometryKind::Loxodromic => "loxodromic",
            IsometryKind::RegularElliptic => "regular_elliptic",
            IsometryKind::ComplexReflection => "complex_reflection",
            IsometryKind::ReflectionOnPoint => "reflection_on_point",
            IsometryKind::HorizontalParabolic => "horizontal_parabolic",
            IsometryKind::VerticalParabolic => "vertical_parabolic",
            IsometryKind::ElliptoParabolic => "ellipto_parabolic",
            IsometryKind::Identity => "identity",
        }
    }

    pub fn is_elliptic(self) -> bool {
        matches!(
            self,
            IsometryKind::RegularElliptic
                | IsometryKind::ComplexReflection
                | IsometryKind::ReflectionOnPoint
        )
    }

    pub fn is_parabolic(self) -> bool {
        matches!(
            self,
            IsometryKind::HorizontalParabolic
                | IsometryKind::VerticalParabolic
                | IsometryKind::ElliptoParabolic
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub regular: bool,
    pub unipotent: bool,
    pub eigen: EigenSystem,
    pub trace: C64,
    pub f_of_trace: f64,
}

/// `f(z) = |z|⁴ − 8 Re(z³) + 18|z|² − 27`, the discriminant of `x³ − z x² + z̄ x − 1`.
pub fn goldman_f(z: C64) -> f64 {
    let n2 = z.norm_sqr();
    n2 * n2 - 8.0 * (z * z * z).re + 18.0 * n2 - 27.0
}

pub fn classify(m: &Mat3C, model: Model) -> Result<IsometryClass, IsometryError> {
    classify_with(m, &model.form_matrix(), &Tolerances::default())
}

fn min_gap(vals: &[C64; 3]) -> f64 {
    (vals[0] - vals[1])
        .norm()
        .min((vals[0] - vals[2]).norm())
        .min((vals[1] - vals[2]).norm())
}

/// Classify `M` as an isometry of the Hermitian form `J`.
pub fn classify_with(
    m: &Mat3C,
    j: &Mat3C,
    tol: &Tolerances,
) -> Result<IsometryClass, IsometryError> {
    let residual = su21_residual(m, j);
    if !(residual <= tol.group) {
        return Err(IsometryError::NotInGroup { residual });
    }
    let trace = m.trace();
    let f = goldman_f(trace);
    let eigen = eig3(m);
    let vals = eigen.values();
    let gap = min_gap(&vals);
    let ambiguous = Err(IsometryError::AmbiguousNearBoundary { f, gap });
    let lox = vals
        .iter()
        .any(|l| (l.norm() - 1.0).abs() > tol.unit_modulus);
    let loc = |v| locate_with(v, j, tol.location);

    let (kind, regular, unipotent) = match eigen.spectrum {
        Spectrum::Simple => {
            if f.abs() <= tol.goldman && gap <= tol.gap {
                return ambiguous;
            }
            let kind = if lox {
                IsometryKind::Loxodromic
            } else {
                let negatives = eigen
                    .pairs
                    .iter()
                    .filter(|(_, v)| loc(v) == Location::Interior)
                    .count();
                if negatives != 1 {
                    return ambiguous;
                }
                IsometryKind::RegularElliptic
            };
            if f > tol.goldman && kind != IsometryKind::Loxodromic
                || f < -tol.goldman && kind != IsometryKind::RegularElliptic
            {
                return ambiguous;
            }
            (kind, true, false)
        }
        Spectrum::Double {
            simple,
            eigenspace_dim,
            ..
        } => {
            if lox || f.abs() > tol.goldman {
                return ambiguous;
            }
            let kind = if eigenspace_dim == 1 {
                IsometryKind::ElliptoParabolic
            } else {
                let v = eigen
                    .pairs
                    .iter()
                    .find(|(l, _)| *l == simple)
                    .map(|p| p.1)
                    .unwrap_or(eigen.pairs[2].1);
                match loc(&v) {
                    Location::Exterior => IsometryKind::ComplexReflection,
                    Location::Interior => IsometryKind::ReflectionOnPoint,
                    Location::Boundary => return ambiguous,
                }
            };
            (kind, false, false)
        }
        Spectrum::Triple {
            value,
            eigenspace_dim,
        } => {
            if lox || f.abs() > tol.goldman {
                return ambiguous;
            }
            let unipotent =
                ((value * value * value) - C64::new(1.0, 0.0)).norm() <= tol.unit_modulus;
            let kind = match eigenspace_dim {
                3 => IsometryKind::Identity,
                2 => IsometryKind::VerticalParabolic,
                _ => IsometryKind::HorizontalParabolic,
            };
            (kind, false, unipotent)
        }
    };
    Ok(IsometryClass {
        kind,
        regular,
        unipotent,
        eigen,
        trace,
        f_of_trace: f,
    })
}
