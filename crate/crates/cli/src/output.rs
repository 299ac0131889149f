use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crkit_core::flows::QuadMesh;
use crkit_core::isometry::{EllipticType, FixedPoint, IsometryClass};
use crkit_core::models::HeisPoint;
use crkit_core::surgery::{Slope, SlopeReconciliation, SurgeryOutcome};
use crkit_core::{Mat3C, Vec3C, C64};
use serde_json::{json, Value};

use crate::error::CliError;

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn vector(v: &Vec3C) -> Value {
    Value::Array(v.0.iter().map(|z| complex(*z)).collect())
}

pub fn matrix(m: &Mat3C) -> Value {
    Value::Array(
        m.0.iter()
            .map(|row| Value::Array(row.iter().map(|z| complex(*z)).collect()))
            .collect(),
    )
}

pub fn parse_matrix(v: &Value) -> Result<Mat3C, CliError> {
    let bad = || CliError::usage("matrix JSON must be three rows of three [re, im] pairs");
    let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
    let mut m = Mat3C::ZERO;
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
        for (j, z) in row.iter().enumerate() {
            let pair = z.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let re = pair[0].as_f64().ok_or_else(bad)?;
            let im = pair[1].as_f64().ok_or_else(bad)?;
            m.0[i][j] = C64::new(re, im);
        }
    }
    Ok(m)
}

pub fn heis(h: &HeisPoint) -> Value {
    match *h {
        HeisPoint::Finite { z, t } => json!({"z": complex(z), "t": t}),
        HeisPoint::Infinity => json!({"inf": true}),
    }
}

pub fn elliptic_type(t: &EllipticType) -> Value {
    json!({"p": t.p, "q": t.q, "n": t.n})
}

pub fn fixed_point(f: &FixedPoint) -> Value {
    json!({
        "vector": vector(&f.vector),
        "eigenvalue": complex(f.eigenvalue),
        "location": f.location.name(),
        "isolated": f.isolated,
    })
}

pub fn class(c: &IsometryClass) -> Value {
    json!({
        "kind": c.kind.name(),
        "regular": c.regular,
        "unipotent": c.unipotent,
        "trace": complex(c.trace),
        "f_of_trace": c.f_of_trace,
        "eigenvalues": c.eigen.values().iter().map(|z| complex(*z)).collect::<Vec<_>>(),
    })
}

pub fn slope(s: &Slope) -> Value {
    json!({"slope": [s.a, s.b], "marking": s.marking.name})
}

pub fn outcome(o: &SurgeryOutcome) -> Value {
    match o {
        SurgeryOutcome::DehnFilling(s) => {
            json!({"variant": "dehn", "slope": [s.a, s.b], "marking": s.marking.name})
        }
        SurgeryOutcome::Gluing { p, q, n, lens } => {
            json!({"variant": "gluing", "p": p, "q": q, "n": n, "lens": [lens.0, lens.1]})
        }
        SurgeryOutcome::Thickening => json!({"variant": "thickening"}),
    }
}

pub fn reconciliation(r: &SlopeReconciliation) -> Value {
    json!({
        "natural": slope(&r.natural),
        "transported": slope(&r.transported),
        "claimed": [r.claimed.0, r.claimed.1],
        "agree": r.agree,
    })
}

pub fn obj(mesh: &QuadMesh) -> String {
    let mut s = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(s, "v {} {} {}", v[0], v[1], v[2]);
    }
    for q in &mesh.quads {
        let _ = writeln!(s, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
    }
    s
}

pub fn csv_string(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(CliError::io)?;
    for r in rows {
        w.write_record(&r).map_err(CliError::io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(e.into_error()))?;
    String::from_utf8(bytes).map_err(CliError::io)
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(CliError::io),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes()).map_err(CliError::io)
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
