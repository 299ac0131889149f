//! Peripheral-torus markings, Dehn-surgery slopes, and the map from the
//! holonomy of the deformed peripheral generator to the surgered manifold.

use alloc::string::{String, ToString};

use crate::isometry::{EllipticType, IsometryClass, IsometryKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("slope (0, 0) is not a curve")]
    ZeroSlope,
    #[error("slope ({a}, {b}) is not primitive")]
    NotPrimitive { a: i64, b: i64 },
    #[error("change of basis has determinant {det}, expected ±1")]
    NonUnimodular { det: i64 },
    #[error("{p} has no inverse modulo {n}")]
    NotCoprime { p: i64, n: i64 },
    #[error("elliptic element without a rational type")]
    IrrationalElliptic,
    #[error("type ({p}/{n}, 0) has a rotation-free invariant circle; no surgery is attached")]
    DegenerateType { p: i64, n: u64 },
    #[error("the identity does not determine a surgery")]
    IdentityInput,
}

/// An ordered basis of the peripheral torus homology, written in a fixed
/// reference basis: the columns of `change` are the coordinates of the two
/// basis curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub name: String,
    pub change: [[i64; 2]; 2],
}

impl Marking {
    pub fn new(name: &str, change: [[i64; 2]; 2]) -> Result<Self, SurgeryError> {
        let m = Marking {
            name: name.to_string(),
            change,
        };
        let det = m.det();
        if det.abs() != 1 {
            return Err(SurgeryError::NonUnimodular { det });
        }
        Ok(m)
    }

    /// The usual longitude–meridian pair `(l₀, m₀)` of the knot, used as reference.
    pub fn usual() -> Self {
        Marking {
            name: "(l0,m0)".to_string(),
            change: [[1, 0], [0, 1]],
        }
    }

    /// `l = m₀`, `m = 3m₀ − l₀`: the marking adapted to the figure-eight holonomy.
    pub fn figure_eight() -> Self {
        Marking {
            name: "(l,m)".to_string(),
            change: [[0, -1], [1, 3]],
        }
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.change;
        a * d - b * c
    }

    fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let [[a, b], [c, d]] = self.change;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    fn apply_inverse(&self, v: [i64; 2]) -> [i64; 2] {
        let [[a, b], [c, d]] = self.change;
        let det = self.det();
        [(d * v[0] - b * v[1]) * det, (-c * v[0] + a * v[1]) * det]
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The curve `a·first + b·second` of a marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slope {
    pub a: i64,
    pub b: i64,
    pub marking: Marking,
}

impl Slope {
    /// Signs are kept as given.
    pub fn new(a: i64, b: i64, marking: Marking) -> Result<Self, SurgeryError> {
        if a == 0 && b == 0 {
            return Err(SurgeryError::ZeroSlope);
        }
        if gcd(a, b) != 1 {
            return Err(SurgeryError::NotPrimitive { a, b });
        }
        Ok(Slope { a, b, marking })
    }

    /// Representative with first nonzero coordinate positive.
    pub fn canonical(&self) -> (i64, i64) {
        if self.a < 0 || (self.a == 0 && self.b < 0) {
            (-self.a, -self.b)
        } else {
            (self.a, self.b)
        }
    }

    /// Equality as surgeries: same marking, pairs equal up to a global sign.
    pub fn same_surgery(&self, other: &Slope) -> bool {
        self.marking == other.marking && self.canonical() == other.canonical()
    }
}

/// Rewrites a slope in another marking sharing the same reference basis.
pub fn change_marking(s: &Slope, to: &Marking) -> Result<Slope, SurgeryError> {
    for m in [&s.marking, to] {
        if m.det().abs() != 1 {
            return Err(SurgeryError::NonUnimodular { det: m.det() });
        }
    }
    let v = to.apply_inverse(s.marking.apply([s.a, s.b]));
    Slope::new(v[0], v[1], to.clone())
}

/// Which of `[U₀]`, `[U₀]⁻¹` orients the curve `l`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    Direct,
    /// `l` is replaced by `−l`; the holonomy generator is inverted.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgeryOutcome {
    DehnFilling(Slope),
    /// Gluing with the complement `V(p, q, n)` of a torus knot in `L(n, α)`.
    Gluing {
        p: i64,
        q: i64,
        n: u64,
        lens: (u64, u64),
    },
    Thickening,
}

/// `p⁻¹ mod n` in `[0, n)`.
pub fn mod_inverse(p: i64, n: i64) -> Result<i64, SurgeryError> {
    if n < 1 {
        return Err(SurgeryError::NotCoprime { p, n });
    }
    let (mut r0, mut r1) = (p.rem_euclid(n), n);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 && n != 1 {
        return Err(SurgeryError::NotCoprime { p, n });
    }
    Ok(s0.rem_euclid(n))
}

/// Outcome for a classified peripheral generator, in the marking `(l, m)`.
pub fn surgery_outcome(
    cls: &IsometryClass,
    etype: Option<&EllipticType>,
    orientation: Orientation,
) -> Result<SurgeryOutcome, SurgeryError> {
    outcome_for_kind(cls.kind, etype, orientation)
}

pub fn outcome_for_kind(
    kind: IsometryKind,
    etype: Option<&EllipticType>,
    orientation: Orientation,
) -> Result<SurgeryOutcome, SurgeryError> {
    let natural = Marking::figure_eight();
    match kind {
        IsometryKind::Identity => Err(SurgeryError::IdentityInput),
        IsometryKind::Loxodromic => Ok(SurgeryOutcome::DehnFilling(Slope::new(0, 1, natural)?)),
        k if k.is_parabolic() => Ok(SurgeryOutcome::Thickening),
        _ => {
            let t = etype.ok_or(SurgeryError::IrrationalElliptic)?;
            let t = match orientation {
                Orientation::Direct => *t,
                Orientation::Reversed => t.inverse(),
            };
            let flip = |s: Slope| match orientation {
                Orientation::Direct => s,
                Orientation::Reversed => Slope { a: -s.a, ..s },
            };
            if t.q == 0 {
                return Err(SurgeryError::DegenerateType { p: t.p, n: t.n });
            }
            if t.q.abs() == 1 {
                let s = Slope::new(t.n as i64, t.q.signum() * t.p, natural)?;
                return Ok(SurgeryOutcome::DehnFilling(flip(s)));
            }
            let n = t.n as i64;
            let alpha = (mod_inverse(t.p, n)? * t.q).rem_euclid(n);
            Ok(SurgeryOutcome::Gluing {
                p: t.p,
                q: t.q,
                n: t.n,
                lens: (t.n, alpha as u64),
            })
        }
    }
}

/// The elliptic slope `(n, ±p)` transported to `(l₀, m₀)` next to the
/// printed `(−n, ±p + 3n)` for the figure-eight marking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeReconciliation {
    pub natural: Slope,
    pub transported: Slope,
    pub claimed: (i64, i64),
    /// Whether `transported` and `claimed` agree up to a global sign.
    pub agree: bool,
}

/// Compares both formulas for a type `(p/n, ±1/n)`; `sign` is the `±`.
pub fn reconcile_elliptic_slope(
    p: i64,
    n: i64,
    sign: i64,
) -> Result<SlopeReconciliation, SurgeryError> {
    let natural = Slope::new(n, sign * p, Marking::figure_eight())?;
    let transported = change_marking(&natural, &Marking::usual())?;
    let claimed = (-n, sign * p + 3 * n);
    let t = transported.canonical();
    let c = if claimed.0 < 0 || (claimed.0 == 0 && claimed.1 < 0) {
        (-claimed.0, -claimed.1)
    } else {
        claimed
    };
    Ok(SlopeReconciliation {
        natural,
        transported,
        claimed,
        agree: t == c,
    })
}
