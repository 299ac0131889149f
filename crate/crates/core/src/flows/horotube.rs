use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{FlowError, FlowGenerator, QuadMesh};
use crate::isometry::{classify, fixed_points, IsometryKind};
use crate::linalg::Mat3C;
use crate::models::{
    cayley_matrix, heis_embed, heis_project, projective_distance, HeisPoint, Model, ProjectivePoint,
};

/// Closest approach of the circle to the fixed point, in projective distance.
const FIXED_POINT_CLEARANCE: f64 = 1e-6;

/// The flow-swept cylinder `{φ_t(c)}` in Heisenberg coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Horotube {
    pub mesh: QuadMesh,
    pub generator: FlowGenerator,
    pub t_values: Vec<f64>,
    /// Largest Heisenberg distance between `P·φ_t(c)` and `φ_{t+1}(c)` over
    /// the rows with `t + 1` in range.
    pub invariance_residual: f64,
}

fn r3(p: &ProjectivePoint) -> Result<[f64; 3], FlowError> {
    heis_project(p)?.to_r3().ok_or(FlowError::HitsInfinity)
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Boundary of a horotube for the unipotent `p` (given in `model`), swept by
/// its flow from a closed circle of Heisenberg points.
///
/// Rows are `resolution` times evenly spaced in `t_range`; an empty range
/// gives the circle alone.
pub fn horotube_boundary(
    p: &Mat3C,
    model: Model,
    circle: &[HeisPoint],
    t_range: (f64, f64),
    resolution: usize,
) -> Result<Horotube, FlowError> {
    let cls = classify(p, model)?;
    let parabolic = matches!(
        cls.kind,
        IsometryKind::HorizontalParabolic | IsometryKind::VerticalParabolic
    );
    if !parabolic || !cls.unipotent {
        return Err(FlowError::NotUnipotent);
    }
    let ps = cayley_matrix(p, model, Model::Siegel);
    let fixed = fixed_points(&ps, Model::Siegel)?;
    let pts: Vec<ProjectivePoint> = circle.iter().map(heis_embed).collect();
    if pts.len() < 3 {
        return Err(FlowError::DegenerateCurve);
    }
    for q in &pts {
        if fixed
            .iter()
            .any(|f| projective_distance(&f.vector, &q.rep) <= FIXED_POINT_CLEARANCE)
        {
            return Err(FlowError::CircleHitsFixedPoint);
        }
    }

    let generator = FlowGenerator::from_element(&ps, Model::Siegel)?;
    let (t0, t1) = t_range;
    let rows = if t1 == t0 { 1 } else { resolution.max(2) };
    let t_values: Vec<f64> = (0..rows)
        .map(|k| {
            if rows == 1 {
                t0
            } else {
                t0 + (t1 - t0) * k as f64 / (rows - 1) as f64
            }
        })
        .collect();
    let m = pts.len();
    let mut vertices = Vec::with_capacity(rows * m);
    for &t in &t_values {
        let g = generator.exp(t);
        for q in &pts {
            vertices.push(r3(&q.apply(&g))?);
        }
    }
    let mut quads = Vec::new();
    for k in 0..rows.saturating_sub(1) {
        for i in 0..m {
            let i2 = (i + 1) % m;
            quads.push([k * m + i, k * m + i2, (k + 1) * m + i2, (k + 1) * m + i]);
        }
    }

    let mut invariance_residual: f64 = 0.0;
    for (k, &t) in t_values.iter().enumerate() {
        if t + 1.0 > t1.max(t0) + 1e-12 {
            continue;
        }
        let g = generator.exp(t + 1.0);
        for (i, q) in pts.iter().enumerate() {
            let moved = heis_embed(&HeisPoint::from_r3(vertices[k * m + i])).apply(&ps);
            invariance_residual = invariance_residual.max(dist(r3(&moved)?, r3(&q.apply(&g))?));
        }
    }
    Ok(Horotube {
        mesh: QuadMesh { vertices, quads },
        generator,
        t_values,
        invariance_residual,
    })
}
