//! The figure-eight knot group and its one-parameter family of SU(2,1)
//! representations through the unipotent representation `ρ₀`.

mod scan;
mod words;

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub use scan::{
    contour_segments, flag_component, scan_region, scan_row, ScanField, ScanGrid, ScanRecord,
    ScanSpec, SCAN_SEED,
};
pub use words::{Gen, Letter, Presentation, Word};

use crate::isometry::{
    classify_with, elliptic_type_with, EllipticType, IsometryClass, IsometryError, Tolerances,
    DEFAULT_DENOM_BOUND, DEFAULT_TYPE_TOL,
};
use crate::linalg::{su21_residual, Mat3C};
use crate::models::Model;
use crate::surgery::{
    change_marking, reconcile_elliptic_slope, surgery_outcome, Marking, Orientation, Slope,
    SlopeReconciliation, SurgeryError, SurgeryOutcome,
};
use crate::C64;

/// Residual allowed when a family member is built.
pub const FAMILY_TOL: f64 = 1e-7;
/// `Im Δ` above this signals a transcription bug.
pub const DELTA_IMAG_TOL: f64 = 1e-8;
const DENOMINATOR_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Fig8Error {
    #[error("Δ has imaginary part {imag:e}")]
    NonRealDelta { imag: f64 },
    #[error("Δ = {delta} is negative; the real square root is undefined")]
    NegativeDelta { delta: f64 },
    #[error("denominator {which} vanishes ({value:e})")]
    DegenerateDenominator { which: &'static str, value: f64 },
    #[error("family invariants fail: relator {relator:e}, form {form:e}, trace {trace:e}")]
    InvariantViolation { relator: f64, form: f64, trace: f64 },
    #[error("gcd({p}, {n}) ≠ 1 or n < 1")]
    NotCoprime { p: i64, n: i64 },
    #[error("cannot parse word token `{token}`")]
    BadWord { token: String },
    #[error(transparent)]
    Isometry(#[from] IsometryError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

/// Sign of the square root of `Δ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepParam {
    pub u: C64,
    pub v: C64,
    pub delta: f64,
    pub branch: Branch,
}

/// Images of the generators together with the preserved Hermitian form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig8Rep {
    /// `None` for the verbatim `ρ₀`.
    pub param: Option<RepParam>,
    pub g1: Mat3C,
    pub g2: Mat3C,
    pub g3: Mat3C,
    pub form: Mat3C,
}

/// Residuals of the defining properties of a representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepResiduals {
    /// Largest projective-identity residual of `r1`, `r2`.
    pub relator: f64,
    /// Largest `‖G*HG − H‖ / ‖H‖` over `g1`, `g3`.
    pub form: f64,
    /// `|tr ρ(m₀) − u|`, zero for `ρ₀`.
    pub trace: f64,
}

impl Fig8Rep {
    pub fn generator(&self, g: Gen) -> Mat3C {
        match g {
            Gen::G1 => self.g1,
            Gen::G2 => self.g2,
            Gen::G3 => self.g3,
        }
    }

    /// The form scaled to unit largest entry.
    pub fn normalized_form(&self) -> Mat3C {
        self.form * (1.0 / self.form.max_abs())
    }

    pub fn residuals(&self) -> RepResiduals {
        let relator = word_eval(&Presentation::r1(), self)
            .projective_identity_residual()
            .max(word_eval(&Presentation::r2(), self).projective_identity_residual());
        let h = self.normalized_form();
        let form = su21_form_only(&self.g1, &h).max(su21_form_only(&self.g3, &h));
        let trace = self.param.map_or(0.0, |p| (self.g3.trace() - p.u).norm());
        RepResiduals {
            relator,
            form,
            trace,
        }
    }

    /// Word-trace fingerprint used to compare representations up to conjugacy.
    pub fn fingerprint(&self) -> Vec<C64> {
        Presentation::fingerprint_words()
            .iter()
            .map(|w| word_eval(w, self).trace())
            .collect()
    }
}

fn su21_form_only(g: &Mat3C, h: &Mat3C) -> f64 {
    (g.adjoint() * *h * *g - *h).frobenius_norm() / h.frobenius_norm()
}

fn inv(m: &Mat3C) -> Mat3C {
    m.inverse().expect("generators are invertible")
}

/// Product of the assigned matrices along the word.
pub fn word_eval(word: &Word, rep: &Fig8Rep) -> Mat3C {
    let mut out = Mat3C::IDENTITY;
    for l in &word.0 {
        let g = rep.generator(l.gen);
        out = out * if l.inverse { inv(&g) } else { g };
    }
    out
}

fn g2_from(g1: &Mat3C, g3: &Mat3C) -> Mat3C {
    *g3 * inv(g1) * inv(g3) * *g1
}

/// The unipotent representation at `u = 3`, with the Siegel form.
pub fn rho0() -> Fig8Rep {
    let s7 = 7f64.sqrt();
    let c = C64::new;
    let g1 = Mat3C([
        [c(1.0, 0.0), c(1.0, 0.0), c(-0.5, -s7 / 2.0)],
        [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ]);
    let g3 = Mat3C([
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        [c(-0.5, s7 / 2.0), c(1.0, 0.0), c(1.0, 0.0)],
    ]);
    Fig8Rep {
        param: None,
        g1,
        g2: g2_from(&g1, &g3),
        g3,
        form: Model::Siegel.form_matrix(),
    }
}

/// `Δ(u) = 4u³ + 4v³ − u²v² − 16uv + 16` with `v = ū`.
pub fn delta(u: C64) -> Result<f64, Fig8Error> {
    let v = u.conj();
    let d = u * u * u * 4.0 + v * v * v * 4.0 - u * u * v * v - u * v * 16.0 + 16.0;
    if d.im.abs() > DELTA_IMAG_TOL * (1.0 + d.re.abs()) {
        return Err(Fig8Error::NonRealDelta { imag: d.im });
    }
    Ok(d.re)
}

/// `Δ(x, y) = −x⁴ − y⁴ − 2x²y² − 24xy² + 8x³ − 16x² − 16y² + 16`.
pub fn delta_xy(x: f64, y: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    -x2 * x2 - y2 * y2 - 2.0 * x2 * y2 - 24.0 * x * y2 + 8.0 * x2 * x - 16.0 * x2 - 16.0 * y2 + 16.0
}

/// The diagonal Hermitian form `H(u)` of the family.
pub fn family_form(u: C64, delta: f64, branch: Branch) -> Mat3C {
    let sd = branch.sign() * delta.sqrt();
    Mat3C::diag(
        C64::new((delta - 16.0) * (sd + u.norm_sqr() - 4.0) / 8.0, 0.0),
        C64::new(16.0 - delta, 0.0),
        C64::new(8.0 * (sd + 4.0), 0.0),
    )
}

/// `(ρ(a), ρ(b)) = (G₃⁻¹(u), G₁⁻¹(u))` as displayed.
fn displayed_inverses(u: C64, sd: f64) -> (Mat3C, Mat3C) {
    let v = u.conj();
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let (p, m) = (one + i, one - i);
    let num = v * u * 8.0 - v * v * v * 2.0 - 16.0 - 4.0 * sd;
    let den = u * u * 8.0 - u * v * v * 6.0 + v * v * v * v;
    let e31 = (v * v * v - u * v * 4.0 + 8.0 - 2.0 * sd) / 16.0;
    let e21 = p * (v * v - u * 2.0) / 8.0;
    let e32 = (v * v - u * 4.0) / 8.0;
    let a = Mat3C([
        [v / 2.0, one, -(m * num) / den],
        [e21, p * v / 4.0, one],
        [e31, e32, m * v / 4.0],
    ]);
    let b = Mat3C([
        [v / 2.0, i, p * num / den],
        [-e21, m * v / 4.0, i],
        [-e31, -i * e32, p * v / 4.0],
    ]);
    (a, b)
}

/// The representation with `tr ρ(m₀) = u`, built from the displayed formulas
/// and checked against every defining property.
pub fn family_rep(u: C64, branch: Branch) -> Result<Fig8Rep, Fig8Error> {
    let d = delta(u)?;
    if d < 0.0 {
        return Err(Fig8Error::NegativeDelta { delta: d });
    }
    let v = u.conj();
    let sd = branch.sign() * d.sqrt();
    let den = (u * u * 8.0 - u * v * v * 6.0 + v * v * v * v).norm();
    let checks = [
        ("8u² − 6uv² + v⁴", den),
        ("16 − Δ", (16.0 - d).abs()),
        ("√Δ + 4", (sd + 4.0).abs()),
    ];
    for (which, value) in checks {
        if value <= DENOMINATOR_TOL {
            return Err(Fig8Error::DegenerateDenominator { which, value });
        }
    }
    let (a, b) = displayed_inverses(u, sd);
    let g3 = a.inverse().ok_or(Fig8Error::DegenerateDenominator {
        which: "det ρ(a)",
        value: 0.0,
    })?;
    let g1 = b.inverse().ok_or(Fig8Error::DegenerateDenominator {
        which: "det ρ(b)",
        value: 0.0,
    })?;
    let rep = Fig8Rep {
        param: Some(RepParam {
            u,
            v,
            delta: d,
            branch,
        }),
        g1,
        g2: g2_from(&g1, &g3),
        g3,
        form: family_form(u, d, branch),
    };
    let r = rep.residuals();
    if !(r.relator <= FAMILY_TOL && r.form <= FAMILY_TOL && r.trace <= FAMILY_TOL) {
        return Err(Fig8Error::InvariantViolation {
            relator: r.relator,
            form: r.form,
            trace: r.trace,
        });
    }
    Ok(rep)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Angles `((−2p−1)/3n, (2+p)/3n, (p−1)/3n)` in turns.
pub fn pn_angles(p: i64, n: i64) -> (f64, f64, f64) {
    let d = 3.0 * n as f64;
    (
        (-2 * p - 1) as f64 / d,
        (2 + p) as f64 / d,
        (p - 1) as f64 / d,
    )
}

/// `u = e^{2πiα} + e^{2πiβ} + e^{2πiγ}` for the angles of [`pn_angles`].
pub fn u_from_pn(p: i64, n: i64) -> Result<C64, Fig8Error> {
    if n < 1 || gcd(p, n) != 1 {
        return Err(Fig8Error::NotCoprime { p, n });
    }
    let (a, b, g) = pn_angles(p, n);
    let tau = 2.0 * core::f64::consts::PI;
    Ok(C64::from_polar(1.0, tau * a)
        + C64::from_polar(1.0, tau * b)
        + C64::from_polar(1.0, tau * g))
}

/// Everything the surgery statement says about the holonomy at `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fig8Report {
    pub u: C64,
    pub delta: f64,
    pub branch: Branch,
    pub class: IsometryClass,
    pub elliptic_type: Option<EllipticType>,
    /// In the marking `(l, m)`; `None` for elliptics of irrational type.
    pub outcome: Option<SurgeryOutcome>,
    /// The filling slope rewritten in `(l₀, m₀)`.
    pub transported: Option<Slope>,
    /// For types `(p/n, ±1/n)`: the transported slope next to the printed one.
    pub reconciliation: Option<SlopeReconciliation>,
}

/// Classifies `ρ(m₀)` and derives the surgery outcome in both markings.
pub fn classify_at(
    u: C64,
    branch: Branch,
    orientation: Orientation,
) -> Result<Fig8Report, Fig8Error> {
    let rep = family_rep(u, branch)?;
    let h = rep.normalized_form();
    let class = classify_with(&rep.g3, &h, &Tolerances::default())?;
    let elliptic_type = if class.kind.is_elliptic() {
        elliptic_type_with(&rep.g3, &h, DEFAULT_DENOM_BOUND, DEFAULT_TYPE_TOL).ok()
    } else {
        None
    };
    let outcome = match surgery_outcome(&class, elliptic_type.as_ref(), orientation) {
        Ok(o) => Some(o),
        Err(SurgeryError::IrrationalElliptic) => None,
        Err(e) => return Err(e.into()),
    };
    let transported = match &outcome {
        Some(SurgeryOutcome::DehnFilling(s)) => Some(change_marking(s, &Marking::usual())?),
        _ => None,
    };
    let reconciliation = match elliptic_type {
        Some(t) if t.q.abs() == 1 && matches!(outcome, Some(SurgeryOutcome::DehnFilling(_))) => {
            Some(reconcile_elliptic_slope(t.p, t.n as i64, t.q.signum())?)
        }
        _ => None,
    };
    Ok(Fig8Report {
        u,
        delta: rep.param.map_or(0.0, |p| p.delta),
        branch,
        class,
        elliptic_type,
        outcome,
        transported,
        reconciliation,
    })
}

/// Largest group residual of the `ρ₀` generators against the Siegel form.
pub fn rho0_group_residual() -> f64 {
    let r = rho0();
    su21_residual(&r.g1, &r.form).max(su21_residual(&r.g3, &r.form))
}
