use std::f64::consts::PI;
use std::path::Path;

use crkit_core::fig8::{
    classify_at, contour_segments, family_rep, pn_angles, rho0, rho0_group_residual, scan_row,
    u_from_pn, word_eval, Branch, Fig8Rep, ScanField, ScanGrid, ScanSpec, Word,
};
use crkit_core::flows::{
    gauss_linking, horotube_boundary, sample_orbit, surface_mesh, winding_numbers, FlowFamily,
    InvariantSurface, SurfaceFamily,
};
use crkit_core::isometry::{
    classify_with, elliptic_type_with, fixed_points_with, loxodromic_axis_with, normal_form,
    EllipticType, IsometryKind, NormalFamily, Tolerances, DEFAULT_DENOM_BOUND, DEFAULT_TYPE_TOL,
};
use crkit_core::linalg::random_su21;
use crkit_core::models::{
    cayley_point, heis_embed, heis_project, HeisPoint, Location, Model, ProjectivePoint,
};
use crkit_core::surgery::{change_marking, outcome_for_kind, Marking, Orientation, Slope};
use crkit_core::{Mat3C, C64};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::{
    BranchArg, Cli, Command, FieldArg, Global, KindArg, MarkingArg, MatrixInput, ModelArg,
    SurfaceArg,
};
use crate::error::CliError;
use crate::output::{self, complex, emit, pretty};

/// Environment variable overriding the group-membership tolerance.
pub const TOL_ENV: &str = "CRKIT_TOL";

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Classify {
            input,
            axis,
            axis_samples,
        } => classify_cmd(g, input, axis.as_deref(), *axis_samples),
        Command::NormalForm { input } => {
            let (m, model) = load_matrix(g, input)?;
            let nf = normal_form(&m, model)?;
            let v = json!({
                "family": nf.family.name(),
                "params": family_params(&nf.family),
                "model": model_name(nf.model),
                "representative": output::matrix(&nf.representative),
                "conjugator": output::matrix(&nf.conjugator),
                "residual": nf.residual,
            });
            emit(out, &pretty(&v))
        }
        Command::Orbit {
            family,
            params,
            point,
            t,
            steps,
            winding,
        } => orbit_cmd(g, family, params, point, t, *steps, *winding),
        Command::Surface {
            family,
            param,
            direction,
            res,
            extent,
        } => {
            let direction = pair(direction, "--direction")?;
            let family = match family {
                SurfaceArg::Torus => SurfaceFamily::Torus { r: *param },
                SurfaceArg::Paraboloid => SurfaceFamily::Paraboloid { r: *param },
                SurfaceArg::Plane => SurfaceFamily::Plane {
                    r: *param,
                    direction,
                },
                SurfaceArg::EpCylinder => SurfaceFamily::EPCylinder { radius: *param },
            };
            let mesh = surface_mesh(&InvariantSurface::standard(family), *res, *extent)?;
            emit(out, &output::obj(&mesh))
        }
        Command::Horotube {
            input,
            center,
            radius,
            samples,
            t,
            res,
        } => {
            let (m, model) = load_matrix(g, input)?;
            let [cx, cy, ct] = triple(center, "--center")?;
            let circle: Vec<HeisPoint> = (0..(*samples).max(3))
                .map(|k| {
                    let th = 2.0 * PI * k as f64 / (*samples).max(3) as f64;
                    HeisPoint::finite(C64::new(cx + radius * th.cos(), cy + radius * th.sin()), ct)
                })
                .collect();
            let tube = horotube_boundary(&m, model, &circle, range(t, "--t")?, *res)?;
            eprintln!(
                "{}",
                json!({"invariance_residual": tube.invariance_residual})
            );
            emit(out, &output::obj(&tube.mesh))
        }
        Command::Linking { a, b } => {
            let r = gauss_linking(&read_curve(a)?, &read_curve(b)?)?;
            let v = json!({"linking": r.linking, "raw": r.raw, "error": r.error, "min_distance": r.min_distance});
            emit(out, &pretty(&v))
        }
        Command::Fig8Rho0 => {
            let r = rho0();
            let mut v = rep_json(&r);
            v["group_residual"] = json!(rho0_group_residual());
            emit(out, &pretty(&v))
        }
        Command::Fig8Eval { word, u, branch } => {
            let w = Word::parse(word)?;
            let rep = if u.is_empty() {
                rho0()
            } else {
                family_rep(pair(u, "--u")?, branch_of(*branch))?
            };
            let m = word_eval(&w, &rep);
            let v = json!({
                "word": w.to_string(),
                "matrix": output::matrix(&m),
                "trace": complex(m.trace()),
                "identity_residual": m.projective_identity_residual(),
            });
            emit(out, &pretty(&v))
        }
        Command::Fig8Scan {
            x,
            y,
            res,
            contour,
            contour_out,
        } => scan_cmd(g, x, y, *res, *contour, contour_out.as_deref()),
        Command::Fig8Classify {
            u,
            p,
            n,
            branch,
            reversed,
        } => {
            let (u, pn) = match (p, n) {
                (Some(p), Some(n)) => (u_from_pn(*p, *n)?, Some((*p, *n))),
                _ if !u.is_empty() => (pair(u, "--u")?, None),
                _ => return Err(CliError::usage("give either --u re,im or --p P --n N")),
            };
            let orientation = if *reversed {
                Orientation::Reversed
            } else {
                Orientation::Direct
            };
            let r = classify_at(u, branch_of(*branch), orientation)?;
            let mut v = output::class(&r.class);
            v["u"] = complex(r.u);
            v["delta"] = json!(r.delta);
            v["branch"] = json!(branch_name(r.branch));
            v["elliptic_type"] = r
                .elliptic_type
                .as_ref()
                .map_or(Value::Null, output::elliptic_type);
            v["outcome"] = r.outcome.as_ref().map_or(Value::Null, output::outcome);
            v["transported"] = r.transported.as_ref().map_or(Value::Null, output::slope);
            v["reconciliation"] = r
                .reconciliation
                .as_ref()
                .map_or(Value::Null, output::reconciliation);
            if let Some((p, n)) = pn {
                let (a, b, c) = pn_angles(p, n);
                v["p"] = json!(p);
                v["n"] = json!(n);
                v["angles_turns"] = json!([a, b, c]);
            }
            emit(out, &pretty(&v))
        }
        Command::SlopeChange { slope, from, to } => {
            let [a, b] = <[i64; 2]>::try_from(slope.as_slice())
                .map_err(|_| CliError::usage("--slope takes two integers a,b"))?;
            let s = Slope::new(a, b, marking(*from))?;
            let t = change_marking(&s, &marking(*to))?;
            emit(
                out,
                &pretty(&json!({"from": output::slope(&s), "to": output::slope(&t)})),
            )
        }
        Command::Outcome {
            kind,
            etype,
            reversed,
        } => {
            let t = match etype.as_slice() {
                [] => None,
                [p, q, n] if *n > 0 => Some(EllipticType {
                    p: *p,
                    q: *q,
                    n: *n as u64,
                }),
                _ => {
                    return Err(CliError::usage(
                        "--type takes three integers p,q,n with n > 0",
                    ))
                }
            };
            let orientation = if *reversed {
                Orientation::Reversed
            } else {
                Orientation::Direct
            };
            let o = outcome_for_kind(kind_of(*kind), t.as_ref(), orientation)?;
            emit(out, &pretty(&output::outcome(&o)))
        }
    }
}

fn tolerances() -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Ok(s) = std::env::var(TOL_ENV) {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{TOL_ENV} must be a number")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::usage(format!("{TOL_ENV} must be positive")));
        }
        tol.group = v;
    }
    Ok(tol)
}

fn model_of(m: ModelArg) -> Model {
    match m {
        ModelArg::Ball => Model::Ball,
        ModelArg::Siegel => Model::Siegel,
    }
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Ball => "ball",
        Model::Siegel => "siegel",
    }
}

fn branch_of(b: BranchArg) -> Branch {
    match b {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    }
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
    }
}

fn marking(m: MarkingArg) -> Marking {
    match m {
        MarkingArg::Usual => Marking::usual(),
        MarkingArg::FigureEight => Marking::figure_eight(),
    }
}

fn kind_of(k: KindArg) -> IsometryKind {
    match k {
        KindArg::Loxodromic => IsometryKind::Loxodromic,
        KindArg::RegularElliptic => IsometryKind::RegularElliptic,
        KindArg::ComplexReflection => IsometryKind::ComplexReflection,
        KindArg::ReflectionOnPoint => IsometryKind::ReflectionOnPoint,
        KindArg::HorizontalParabolic => IsometryKind::HorizontalParabolic,
        KindArg::VerticalParabolic => IsometryKind::VerticalParabolic,
        KindArg::ElliptoParabolic => IsometryKind::ElliptoParabolic,
        KindArg::Identity => IsometryKind::Identity,
    }
}

fn family_params(f: &NormalFamily) -> Value {
    match *f {
        NormalFamily::Loxodromic { lambda } => json!({"lambda": complex(lambda)}),
        NormalFamily::Elliptic { alpha, beta, gamma } => {
            json!({"alpha": alpha, "beta": beta, "gamma": gamma})
        }
        NormalFamily::Unipotent { z, s, scalar } => {
            json!({"z": complex(z), "s": s, "scalar": complex(scalar)})
        }
        NormalFamily::ElliptoParabolic { lambda, mu, sigma } => {
            json!({"lambda": complex(lambda), "mu": complex(mu), "sigma": sigma})
        }
    }
}

fn pair(v: &[f64], flag: &str) -> Result<C64, CliError> {
    match v {
        [re, im] => Ok(C64::new(*re, *im)),
        _ => Err(CliError::usage(format!("{flag} takes two numbers re,im"))),
    }
}

fn triple(v: &[f64], flag: &str) -> Result<[f64; 3], CliError> {
    <[f64; 3]>::try_from(v)
        .map_err(|_| CliError::usage(format!("{flag} takes three numbers x,y,t")))
}

/// `a:b` as a pair of floats.
fn range(s: &str, flag: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::usage(format!("{flag} takes a range a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(bad());
    }
    Ok((a, b))
}

fn load_matrix(g: &Global, input: &MatrixInput) -> Result<(Mat3C, Model), CliError> {
    let model = model_of(input.model);
    let m = match (&input.matrix, input.random) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            output::parse_matrix(&v)?
        }
        (None, true) => random_su21(g.seed, &model.form_matrix()),
        (None, false) => return Err(CliError::usage("give --matrix FILE or --random")),
    };
    Ok((m, model))
}

fn classify_cmd(
    g: &Global,
    input: &MatrixInput,
    axis: Option<&Path>,
    samples: usize,
) -> Result<(), CliError> {
    let (m, model) = load_matrix(g, input)?;
    let form = model.form_matrix();
    let tol = tolerances()?;
    let cls = classify_with(&m, &form, &tol)?;
    let mut v = output::class(&cls);
    let fixed = if cls.kind == IsometryKind::Identity {
        Vec::new()
    } else {
        fixed_points_with(&m, &form, &tol)?
    };
    v["model"] = json!(model_name(model));
    let fixed_json = fixed.iter().map(|f| {
        let mut j = output::fixed_point(f);
        if f.location == Location::Boundary {
            let p = cayley_point(
                &ProjectivePoint {
                    rep: f.vector,
                    model,
                },
                Model::Siegel,
            );
            if let Ok(h) = heis_project(&p) {
                j["heisenberg"] = output::heis(&h);
            }
        }
        j
    });
    v["fixed_points"] = Value::Array(fixed_json.collect());
    if cls.kind.is_elliptic() {
        if let Ok(t) = elliptic_type_with(&m, &form, DEFAULT_DENOM_BOUND, DEFAULT_TYPE_TOL) {
            v["elliptic_type"] = output::elliptic_type(&t);
        }
    }
    if let Some(path) = axis {
        let circle = loxodromic_axis_with(&m, model, &tol)?;
        let rows = circle
            .heisenberg_samples(samples)
            .into_iter()
            .filter_map(|(th, h)| match h {
                HeisPoint::Finite { z, t } => Some(vec![
                    th.to_string(),
                    z.re.to_string(),
                    z.im.to_string(),
                    t.to_string(),
                ]),
                HeisPoint::Infinity => None,
            });
        emit(
            Some(path),
            &output::csv_string(&["theta", "z_re", "z_im", "t"], rows)?,
        )?;
    }
    emit(g.out.as_deref(), &pretty(&v))
}

fn orbit_cmd(
    g: &Global,
    family: &str,
    params: &[f64],
    point: &[f64],
    t: &str,
    steps: usize,
    winding: bool,
) -> Result<(), CliError> {
    let turn = if g.radians { 1.0 } else { 2.0 * PI };
    let angle_slots: &[usize] = match family {
        "elliptic" => &[0, 1],
        "loxodromic" => &[1],
        "ellipto-parabolic" => &[0],
        _ => &[],
    };
    let mut params = params.to_vec();
    for &i in angle_slots {
        if let Some(p) = params.get_mut(i) {
            *p *= turn;
        }
    }
    let fam = FlowFamily::from_name(family, &params)?;
    let [x, y, h] = triple(point, "--point")?;
    let x0 = heis_embed(&HeisPoint::finite(C64::new(x, y), h));
    let (t0, t1) = range(t, "--t")?;
    let orbit = sample_orbit(&fam.generator(), &x0, t0, t1, steps);
    if winding {
        let ball = sample_orbit(
            &fam.generator(),
            &cayley_point(&x0, Model::Ball),
            t0,
            t1,
            steps,
        );
        let w = winding_numbers(&ball)?;
        eprintln!("{}", json!({"w1": w.w1, "w2": w.w2, "knotted": w.knotted}));
    }
    let pts = orbit.r3()?;
    let rows = orbit.t_values.iter().zip(pts).map(|(t, p)| {
        vec![
            t.to_string(),
            p[0].to_string(),
            p[1].to_string(),
            p[2].to_string(),
        ]
    });
    emit(
        g.out.as_deref(),
        &output::csv_string(&["t", "x", "y", "z"], rows)?,
    )
}

fn scan_cmd(
    g: &Global,
    x: &str,
    y: &str,
    res: usize,
    contour: Option<FieldArg>,
    contour_out: Option<&Path>,
) -> Result<(), CliError> {
    if res < 2 {
        return Err(CliError::usage("--res must be at least 2"));
    }
    let spec = ScanSpec {
        x_range: range(x, "--x")?,
        y_range: range(y, "--y")?,
        resolution: res,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.threads.max(1))
        .build()
        .map_err(CliError::io)?;
    let rows: Vec<_> = pool.install(|| {
        (0..res)
            .into_par_iter()
            .map(|j| scan_row(&spec, j))
            .collect()
    });
    let grid = ScanGrid::from_rows(spec, rows);
    let rows = grid.records.iter().map(|r| {
        vec![
            r.x.to_string(),
            r.y.to_string(),
            r.delta.to_string(),
            r.f.to_string(),
            r.delta_sign.to_string(),
            r.f_sign.to_string(),
            u8::from(r.in_component).to_string(),
        ]
    });
    let header = [
        "x",
        "y",
        "delta",
        "f",
        "delta_sign",
        "f_sign",
        "in_component",
    ];
    emit(g.out.as_deref(), &output::csv_string(&header, rows)?)?;
    if let (Some(field), Some(path)) = (contour, contour_out) {
        let field = match field {
            FieldArg::Delta => ScanField::Delta,
            FieldArg::F => ScanField::F,
        };
        let segs = contour_segments(&grid, field).into_iter().map(|s| {
            vec![
                s[0][0].to_string(),
                s[0][1].to_string(),
                s[1][0].to_string(),
                s[1][1].to_string(),
            ]
        });
        emit(
            Some(path),
            &output::csv_string(&["x0", "y0", "x1", "y1"], segs)?,
        )?;
    }
    Ok(())
}

fn rep_json(r: &Fig8Rep) -> Value {
    let res = r.residuals();
    json!({
        "g1": output::matrix(&r.g1),
        "g2": output::matrix(&r.g2),
        "g3": output::matrix(&r.g3),
        "form": output::matrix(&r.form),
        "residuals": {"relator": res.relator, "form": res.form, "trace": res.trace},
    })
}

fn read_curve(path: &Path) -> Result<Vec<[f64; 3]>, CliError> {
    let err = |e: &dyn std::fmt::Display| CliError::usage(format!("{}: {e}", path.display()));
    let mut rdr = csv::Reader::from_path(path).map_err(|e| err(&e))?;
    let headers = rdr.headers().map_err(|e| err(&e))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| err(&format!("missing column {name}")))
    };
    let idx = [col("x")?, col("y")?, col("z")?];
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| err(&e))?;
        let mut p = [0.0; 3];
        for (k, &i) in idx.iter().enumerate() {
            p[k] = rec
                .get(i)
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|_| err(&"non-numeric coordinate"))?;
        }
        out.push(p);
    }
    Ok(out)
}
