use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::{FlowError, OrbitPolyline};
use crate::models::{cayley_point, projective_distance, Model};

/// Curves are refined until they have at least this many segments.
pub const MIN_SEGMENTS: usize = 256;
/// Closed curves must stay this far apart.
pub const MIN_CURVE_DISTANCE: f64 = 1e-3;
/// Endpoint mismatch tolerated for a closed orbit.
pub const CLOSURE_TOL: f64 = 1e-6;
/// Spread of `|Z₁|`, `|Z₂|` tolerated along a torus orbit.
pub const TORUS_TOL: f64 = 1e-7;

/// Winding of a closed orbit around the two core circles of its torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindingReport {
    /// Turns of the `Z₁` phase.
    pub w1: i64,
    /// Turns of the `Z₂` phase.
    pub w2: i64,
    /// A `(p, q)` torus knot is knotted unless `|p|` or `|q|` is at most one.
    pub knotted: bool,
}

/// Accumulated phases of `Z₁` and `Z₂` along a closed orbit in the ball
/// model, in whole turns. A component that vanishes identically winds zero
/// times.
pub fn winding_numbers(orbit: &OrbitPolyline) -> Result<WindingReport, FlowError> {
    let pts: Vec<[crate::C64; 2]> = orbit
        .samples
        .iter()
        .map(|p| {
            let v = cayley_point(p, Model::Ball).rep;
            [v[0] / v[2], v[1] / v[2]]
        })
        .collect();
    if pts.len() < 3 {
        return Err(FlowError::DegenerateCurve);
    }
    let first = orbit.samples[0];
    let last = orbit.samples[orbit.samples.len() - 1];
    let gap = projective_distance(
        &cayley_point(&first, Model::Ball).rep,
        &cayley_point(&last, Model::Ball).rep,
    );
    if !(gap <= CLOSURE_TOL) {
        return Err(FlowError::NotClosed { gap });
    }

    let mut turns = [0i64; 2];
    for k in 0..2 {
        let (lo, hi) = pts.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), z| {
            (lo.min(z[k].norm()), hi.max(z[k].norm()))
        });
        if !(hi - lo <= TORUS_TOL) {
            return Err(FlowError::NotOnTorus { spread: hi - lo });
        }
        if hi <= TORUS_TOL {
            continue;
        }
        let mut total = 0.0;
        for w in pts.windows(2) {
            let step = (w[1][k] / w[0][k]).arg();
            if step.abs() > PI / 2.0 {
                return Err(FlowError::UnderSampled { step });
            }
            total += step;
        }
        turns[k] = (total / (2.0 * PI)).round() as i64;
    }
    Ok(WindingReport {
        w1: turns[0],
        w2: turns[1],
        knotted: turns[0].abs() > 1 && turns[1].abs() > 1,
    })
}

/// Result of the discretized Gauss integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkingReport {
    pub linking: i64,
    pub raw: f64,
    /// Distance of `raw` from the nearest integer.
    pub error: f64,
    pub min_distance: f64,
}

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add_scaled(a: P3, b: P3, s: f64) -> P3 {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: P3) -> Option<P3> {
    let n = dot(a, a).sqrt();
    if n > 1e-300 {
        Some([a[0] / n, a[1] / n, a[2] / n])
    } else {
        None
    }
}

/// Refine a closed polyline by splitting every edge evenly until it has at
/// least `MIN_SEGMENTS` segments.
fn refine(curve: &[P3]) -> Vec<P3> {
    let n = curve.len();
    let split = MIN_SEGMENTS.div_ceil(n).max(1);
    let mut out = Vec::with_capacity(n * split);
    for i in 0..n {
        let a = curve[i];
        let d = sub(curve[(i + 1) % n], a);
        for k in 0..split {
            out.push(add_scaled(a, d, k as f64 / split as f64));
        }
    }
    out
}

/// Distance between segments `[p, p + d1]` and `[q, q + d2]`.
fn segment_distance(p: P3, d1: P3, q: P3, d2: P3) -> f64 {
    let r = sub(p, q);
    let a = dot(d1, d1);
    let e = dot(d2, d2);
    let f = dot(d2, r);
    let (s, t);
    if a <= 1e-300 && e <= 1e-300 {
        return dot(r, r).sqrt();
    }
    if a <= 1e-300 {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(d1, r);
        if e <= 1e-300 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(d1, d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 1e-300 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let x = add_scaled(p, d1, s);
    let y = add_scaled(q, d2, t);
    let d = sub(x, y);
    dot(d, d).sqrt()
}

/// Signed solid angle subtended by segment pair `(p1 → p2, p3 → p4)`.
fn pair_angle(p1: P3, p2: P3, p3: P3, p4: P3) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let (Some(n1), Some(n2), Some(n3), Some(n4)) = (
        unit(cross(r13, r14)),
        unit(cross(r14, r24)),
        unit(cross(r24, r23)),
        unit(cross(r23, r13)),
    ) else {
        return 0.0;
    };
    let asin = |x: f64| x.clamp(-1.0, 1.0).asin();
    let omega = asin(dot(n1, n2)) + asin(dot(n2, n3)) + asin(dot(n3, n4)) + asin(dot(n4, n1));
    let orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
    if orient > 0.0 {
        omega
    } else if orient < 0.0 {
        -omega
    } else {
        0.0
    }
}

/// Gauss linking number of two closed polylines in `R³` (closing edges
/// implied), by the exact solid-angle sum over segment pairs.
pub fn gauss_linking(a: &[P3], b: &[P3]) -> Result<LinkingReport, FlowError> {
    if a.len() < 3 || b.len() < 3 {
        return Err(FlowError::DegenerateCurve);
    }
    let a = refine(a);
    let b = refine(b);
    let mut min_distance = f64::INFINITY;
    let mut total = 0.0;
    for i in 0..a.len() {
        let p1 = a[i];
        let p2 = a[(i + 1) % a.len()];
        let d1 = sub(p2, p1);
        for j in 0..b.len() {
            let p3 = b[j];
            let p4 = b[(j + 1) % b.len()];
            min_distance = min_distance.min(segment_distance(p1, d1, p3, sub(p4, p3)));
            total += pair_angle(p1, p2, p3, p4);
        }
    }
    if !(min_distance > MIN_CURVE_DISTANCE) {
        return Err(FlowError::CurvesTooClose {
            distance: min_distance,
        });
    }
    let raw = total / (4.0 * PI);
    let linking = raw.round();
    Ok(LinkingReport {
        linking: linking as i64,
        raw,
        error: (raw - linking).abs(),
        min_distance,
    })
}
