//! Grid scan of the trace parameter plane: sign of `Δ`, sign of `f`, and the
//! connected component of `{Δ > 0}` containing the unipotent point.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::delta_xy;
use crate::isometry::goldman_f;
use crate::C64;

/// The flood fill starts from the grid point nearest to this one.
pub const SCAN_SEED: (f64, f64) = (3.0 - 1e-6, 0.0);
const ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    /// Grid points per axis.
    pub resolution: usize,
}

impl ScanSpec {
    fn res(&self) -> usize {
        self.resolution.max(2)
    }

    fn coord(range: (f64, f64), k: usize, n: usize) -> f64 {
        range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        Self::coord(self.x_range, i, self.res())
    }

    pub fn y(&self, j: usize) -> f64 {
        Self::coord(self.y_range, j, self.res())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRecord {
    pub x: f64,
    pub y: f64,
    pub delta: f64,
    pub f: f64,
    pub delta_sign: i8,
    pub f_sign: i8,
    pub in_component: bool,
}

fn sign(v: f64, scale: f64) -> i8 {
    if v.abs() <= ZERO_TOL * scale {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Row `j` (fixed `y`), with `in_component` unset.
pub fn scan_row(spec: &ScanSpec, j: usize) -> Vec<ScanRecord> {
    let y = spec.y(j);
    (0..spec.res())
        .map(|i| {
            let x = spec.x(i);
            let scale = 1.0 + (x * x + y * y).powi(2);
            let delta = delta_xy(x, y);
            let f = goldman_f(C64::new(x, y));
            ScanRecord {
                x,
                y,
                delta,
                f,
                delta_sign: sign(delta, scale),
                f_sign: sign(f, scale),
                in_component: false,
            }
        })
        .collect()
}

/// Marks the 4-connected component of `{Δ > 0}` containing the grid point
/// nearest [`SCAN_SEED`]. `records` is row-major.
pub fn flag_component(spec: &ScanSpec, records: &mut [ScanRecord]) {
    let n = spec.res();
    if records.len() != n * n {
        return;
    }
    let seed = (0..records.len())
        .filter(|&k| records[k].delta_sign > 0)
        .min_by(|&a, &b| {
            let d = |r: &ScanRecord| (r.x - SCAN_SEED.0).powi(2) + (r.y - SCAN_SEED.1).powi(2);
            d(&records[a]).total_cmp(&d(&records[b]))
        });
    let Some(seed) = seed else { return };
    let mut seen = vec![false; records.len()];
    let mut queue = VecDeque::from([seed]);
    seen[seed] = true;
    while let Some(k) = queue.pop_front() {
        records[k].in_component = true;
        let (i, j) = (k % n, k / n);
        let mut push = |ii: usize, jj: usize| {
            let kk = jj * n + ii;
            if !seen[kk] && records[kk].delta_sign > 0 {
                seen[kk] = true;
                queue.push_back(kk);
            }
        };
        if i > 0 {
            push(i - 1, j);
        }
        if i + 1 < n {
            push(i + 1, j);
        }
        if j > 0 {
            push(i, j - 1);
        }
        if j + 1 < n {
            push(i, j + 1);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    pub spec: ScanSpec,
    /// Row-major, `y` outer.
    pub records: Vec<ScanRecord>,
}

impl ScanGrid {
    pub fn from_rows(spec: ScanSpec, rows: Vec<Vec<ScanRecord>>) -> Self {
        let mut records: Vec<ScanRecord> = rows.into_iter().flatten().collect();
        flag_component(&spec, &mut records);
        ScanGrid { spec, records }
    }

    pub fn at(&self, i: usize, j: usize) -> &ScanRecord {
        &self.records[j * self.spec.res() + i]
    }

    pub fn component_len(&self) -> usize {
        self.records.iter().filter(|r| r.in_component).count()
    }
}

pub fn scan_region(spec: &ScanSpec) -> ScanGrid {
    let rows = (0..spec.res()).map(|j| scan_row(spec, j)).collect();
    ScanGrid::from_rows(*spec, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanField {
    Delta,
    F,
}

/// Zero-level segments of `Δ` or `f` by marching squares with linear
/// interpolation along cell edges.
pub fn contour_segments(grid: &ScanGrid, field: ScanField) -> Vec<[[f64; 2]; 2]> {
    let n = grid.spec.res();
    let val = |r: &ScanRecord| match field {
        ScanField::Delta => r.delta,
        ScanField::F => r.f,
    };
    let cross = |a: &ScanRecord, b: &ScanRecord| {
        let (va, vb) = (val(a), val(b));
        let t = if va == vb { 0.5 } else { va / (va - vb) };
        [a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)]
    };
    let mut out = Vec::new();
    for j in 0..n - 1 {
        for i in 0..n - 1 {
            let c = [
                grid.at(i, j),
                grid.at(i + 1, j),
                grid.at(i + 1, j + 1),
                grid.at(i, j + 1),
            ];
            let mut pts = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (c[e], c[(e + 1) % 4]);
                if (val(a) > 0.0) != (val(b) > 0.0) {
                    pts.push(cross(a, b));
                }
            }
            match pts.len() {
                2 => out.push([pts[0], pts[1]]),
                4 => {
                    let centre = c.iter().map(|r| val(r)).sum::<f64>() / 4.0;
                    if (centre > 0.0) == (val(c[0]) > 0.0) {
                        out.push([pts[0], pts[3]]);
                        out.push([pts[1], pts[2]]);
                    } else {
                        out.push([pts[0], pts[1]]);
                        out.push([pts[2], pts[3]]);
                    }
                }
                _ => {}
            }
        }
    }
    out
}
