//! Acceptance suite: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::process::ExitCode;

use crkit_core::fig8::{
    classify_at, delta, delta_xy, family_rep, rho0, u_from_pn, word_eval, Branch, Fig8Error,
    Presentation,
};
use crkit_core::flows::{
    gauss_linking, sample_orbit, surface_membership, surface_mesh, winding_numbers, FlowFamily,
    InvariantSurface, OrbitPolyline, SurfaceFamily,
};
use crkit_core::isometry::{
    classify, elliptic_type_with, goldman_f, heisenberg_translation, loxodromic_axis, IsometryKind,
    NormalFamily, DEFAULT_DENOM_BOUND, DEFAULT_TYPE_TOL,
};
use crkit_core::linalg::{eig3, mat_exp, mat_log, random_su21_generator};
use crkit_core::models::{
    cayley_point, heis_embed, heis_mul, heis_project, HeisPoint, Model, ProjectivePoint,
};
use crkit_core::surgery::{
    change_marking, outcome_for_kind, reconcile_elliptic_slope, Marking, Orientation,
    SurgeryOutcome,
};
use crkit_core::{Mat3C, Vec3C, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn heis_dist(a: &HeisPoint, b: &HeisPoint) -> f64 {
    match (a, b) {
        (HeisPoint::Finite { z, t }, HeisPoint::Finite { z: w, t: s }) => {
            (z - w).norm() + (t - s).abs()
        }
        (HeisPoint::Infinity, HeisPoint::Infinity) => 0.0,
        _ => f64::INFINITY,
    }
}

fn goldman() -> Outcome {
    let f3 = goldman_f(c(3.0, 0.0)).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let omega = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut sym = 0.0f64;
    for _ in 0..200 {
        let z = c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let scale = 1.0 + z.norm_sqr().powi(2);
        sym = sym.max((goldman_f(omega * z) - goldman_f(z)).abs() / scale);
    }
    let (mut used, mut disagree, mut seed) = (0, 0, 0u64);
    let j = Model::Ball.form_matrix();
    while used < 1000 {
        seed += 1;
        let mut x = random_su21_generator(seed, &j);
        x = x * (0.5 + 3.0 * (seed % 7) as f64 / 7.0);
        let m = mat_exp(&x);
        let f = goldman_f(m.trace());
        if f.abs() <= 1e-4 {
            continue;
        }
        let Ok(cls) = classify(&m, Model::Ball) else {
            continue;
        };
        used += 1;
        let expected = if f > 0.0 {
            IsometryKind::Loxodromic
        } else {
            IsometryKind::RegularElliptic
        };
        if cls.kind != expected {
            disagree += 1;
        }
    }
    check(
        f3 <= 1e-12 && sym <= 1e-9 && disagree == 0,
        format!("|f(3)| = {f3:.1e}, max rel |f(ωz) − f(z)| = {sym:.1e}, {disagree} disagreements on {used} elements"),
    )
}

fn rho0_validation() -> Outcome {
    let r = rho0();
    let mut unip = 0.0f64;
    for g in [r.g1, r.g3] {
        for l in eig3(&g).values() {
            unip = unip.max((l - c(1.0, 0.0)).norm());
        }
    }
    let rel = word_eval(&Presentation::r1(), &r)
        .projective_identity_residual()
        .max(word_eval(&Presentation::r2(), &r).projective_identity_residual());
    let m0 = word_eval(&Presentation::m0(), &r);
    let l0 = word_eval(&Presentation::l0(), &r);
    let cube = (m0 * m0 * m0).projective_distance(&l0);
    check(
        unip <= 1e-8 && rel <= 1e-9 && cube <= 1e-9,
        format!("eigenvalue spread {unip:.1e}, relators {rel:.1e}, ‖m0³ − l0‖ {cube:.1e}"),
    )
}

fn family_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut n, mut worst, mut failures) = (0, [0.0f64; 3], Vec::new());
    while n < 200 {
        let u = c(rng.gen_range(-1.5..4.5), rng.gen_range(-3.0..3.0));
        match delta(u) {
            Ok(d) if d > 1e-3 && (16.0 - d).abs() > 1e-3 => {}
            _ => continue,
        }
        n += 1;
        match family_rep(u, Branch::Plus) {
            Ok(rep) => {
                let r = rep.residuals();
                worst = [
                    worst[0].max(r.relator),
                    worst[1].max(r.form),
                    worst[2].max(r.trace),
                ];
            }
            Err(Fig8Error::DegenerateDenominator { .. }) => n -= 1,
            Err(e) => failures.push(format!("{u}: {e}")),
        }
    }
    let h = family_rep(c(3.0, 0.0), Branch::Plus)
        .map_err(|e| e.to_string())?
        .form;
    let d: Vec<f64> = (0..3).map(|i| h.0[i][i].re).collect();
    let sig = (
        d.iter().filter(|&&x| x > 0.0).count(),
        d.iter().filter(|&&x| x < 0.0).count(),
    );
    check(
        failures.is_empty() && worst[0] <= 1e-7 && worst[1] <= 1e-7 && worst[2] <= 1e-8 && sig == (2, 1),
        format!(
            "{n} points: relator {:.1e}, form {:.1e}, trace {:.1e}, H(3) signature {sig:?}, failures {failures:?}",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn type_computation() -> Outcome {
    let u = u_from_pn(3, 23).map_err(|e| e.to_string())?;
    let rep = family_rep(u, Branch::Plus).map_err(|e| e.to_string())?;
    let h = rep.normalized_form();
    let t = elliptic_type_with(&rep.g3, &h, DEFAULT_DENOM_BOUND, DEFAULT_TYPE_TOL)
        .map_err(|e| e.to_string())?;
    let inv = elliptic_type_with(
        &rep.g3.inverse().unwrap(),
        &h,
        DEFAULT_DENOM_BOUND,
        DEFAULT_TYPE_TOL,
    )
    .map_err(|e| e.to_string())?;
    check(
        (t.p, t.q, t.n) == (3, -1, 23),
        format!(
            "G3 has type ({}/{n}, {}/{n}); expected (3/23, −1/23), which is the type of G3⁻¹ = ({}/{n}, {}/{n})",
            t.p,
            t.q,
            inv.p,
            inv.q,
            n = t.n
        ),
    )
}

fn delta_cross_check() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let (x, y) = (-2.0 + 7.0 * i as f64 / 19.0, -3.5 + 7.0 * j as f64 / 19.0);
            let d = delta(c(x, y)).map_err(|e| e.to_string())?;
            worst = worst.max((d - delta_xy(x, y)).abs());
        }
    }
    let d3 = delta(c(3.0, 0.0)).map_err(|e| e.to_string())?;
    check(
        worst <= 1e-9 && (d3 - 7.0).abs() <= 1e-12,
        format!("max gap {worst:.1e} on 400 points, Δ(3) = {d3}"),
    )
}

fn slope_pipeline() -> Outcome {
    let out = outcome_for_kind(IsometryKind::Loxodromic, None, Orientation::Direct)
        .map_err(|e| e.to_string())?;
    let SurgeryOutcome::DehnFilling(s) = out else {
        return Err("loxodromic outcome is not a filling".into());
    };
    let t = change_marking(&s, &Marking::usual()).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for (p, n) in [(2, 5), (3, 23), (1, 4)] {
        for sign in [1, -1] {
            let r = reconcile_elliptic_slope(p, n, sign).map_err(|e| e.to_string())?;
            notes.push(format!(
                "(p,n,±)=({p},{n},{sign:+}) transported ({},{}) printed ({},{}) agree={}",
                r.transported.a, r.transported.b, r.claimed.0, r.claimed.1, r.agree
            ));
        }
    }
    let u = u_from_pn(3, 23).map_err(|e| e.to_string())?;
    if let Ok(rep) = classify_at(u, Branch::Plus, Orientation::Direct) {
        if let Some(tr) = rep.transported {
            notes.push(format!("u(3,23) fills ({},{}) in (l0,m0)", tr.a, tr.b));
        }
    }
    check(
        (s.a, s.b) == (0, 1) && (t.a, t.b) == (-1, 3),
        format!(
            "(0,1) in (l,m) -> ({},{}) in (l0,m0); reconciliation: {}",
            t.a,
            t.b,
            notes.join("; ")
        ),
    )
}

fn lattice_point(family: &FlowFamily, k: usize) -> ProjectivePoint {
    let (a, b) = ((k % 10) as f64 / 10.0, (k / 10) as f64 / 10.0);
    match family {
        FlowFamily::Elliptic { .. } => {
            let r = 0.1 + 0.8 * a;
            ProjectivePoint {
                rep: Vec3C::new(
                    C64::from_polar((1.0 - r * r).sqrt(), 2.0 * PI * b),
                    C64::from_polar(r, 1.3 + 2.0 * PI * a),
                    c(1.0, 0.0),
                ),
                model: Model::Ball,
            }
        }
        _ => heis_embed(&HeisPoint::finite(
            c(2.0 * a - 0.9, 1.6 * b - 0.7),
            3.0 * (a - b) + 0.2,
        )),
    }
}

fn flows() -> Outcome {
    let families = [
        FlowFamily::Elliptic {
            alpha: 0.7,
            beta: -0.3,
        },
        FlowFamily::Loxodromic { r: 1.5, alpha: 0.2 },
        FlowFamily::Unipotent {
            z: c(0.8, -0.4),
            s: 1.1,
        },
        FlowFamily::EllipticParabolic { theta: 0.35 },
    ];
    let surfaces = [
        SurfaceFamily::Torus { r: 0.6 },
        SurfaceFamily::Paraboloid { r: 0.7 },
        SurfaceFamily::Plane {
            r: 0.4,
            direction: c(0.8, -0.4),
        },
        SurfaceFamily::EPCylinder { radius: 1.2 },
    ];
    let (mut closed, mut law, mut member) = (0.0f64, 0.0f64, 0.0f64);
    for (fam, sf) in families.iter().zip(surfaces) {
        let gen = fam.generator();
        for k in 0..100 {
            let x = lattice_point(fam, k);
            let t = -1.5 + 3.0 * k as f64 / 99.0;
            let a = gen.apply(t, &x);
            let b = fam.closed_form(t, &x).map_err(|e| e.to_string())?;
            closed = closed.max(a.rep.normalized().projective_distance_to(&b.rep));
            let (s, u) = (0.37 * t, 0.8 - 0.2 * t);
            let two = gen.apply(s, &gen.apply(u, &x));
            let one = gen.apply(s + u, &x);
            law = law.max(two.rep.projective_distance_to(&one.rep));
        }
        let surface = InvariantSurface::standard(sf);
        let mesh = surface_mesh(&surface, 12, 2.0).map_err(|e| e.to_string())?;
        for v in &mesh.vertices {
            let p = heis_embed(&HeisPoint::from_r3(*v));
            for t in [-2.0, -0.5, 0.3, 1.7] {
                member = member.max(surface_membership(&surface, &gen.apply(t, &p)).abs());
            }
        }
    }
    check(
        closed <= 1e-8 && law <= 1e-8 && member <= 1e-7,
        format!("closed form {closed:.1e}, group law {law:.1e}, membership {member:.1e}"),
    )
}

fn torus_orbit(p: i64, q: i64, n: u64, r: f64, steps: usize) -> OrbitPolyline {
    let gen = FlowFamily::Elliptic {
        alpha: 2.0 * PI * (2 * p - q) as f64 / (3.0 * n as f64),
        beta: 2.0 * PI * (2 * q - p) as f64 / (3.0 * n as f64),
    }
    .generator();
    let x = ProjectivePoint {
        rep: Vec3C::new(c((1.0 - r * r).sqrt(), 0.0), c(0.0, r), c(1.0, 0.0)),
        model: Model::Ball,
    };
    sample_orbit(&gen, &x, 0.0, n as f64, steps)
}

fn ball_circle(f: impl Fn(f64) -> Vec3C, n: usize) -> Vec<ProjectivePoint> {
    (0..n)
        .map(|k| ProjectivePoint {
            rep: f(2.0 * PI * k as f64 / n as f64),
            model: Model::Ball,
        })
        .collect()
}

fn to_r3(points: &[ProjectivePoint], g: &Mat3C) -> Result<Vec<[f64; 3]>, String> {
    points
        .iter()
        .map(|p| {
            let q = ProjectivePoint {
                rep: *g * p.rep,
                model: Model::Ball,
            };
            heis_project(&cayley_point(&q, Model::Siegel))
                .map_err(|e| e.to_string())?
                .to_r3()
                .ok_or_else(|| "curve meets ∞".to_string())
        })
        .collect()
}

fn circle(center: [f64; 3], e1: [f64; 3], e2: [f64; 3], n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|k| {
            let (s, co) = (2.0 * PI * k as f64 / n as f64).sin_cos();
            [0, 1, 2].map(|i| center[i] + co * e1[i] + s * e2[i])
        })
        .collect()
}

fn knots() -> Outcome {
    let w = winding_numbers(&torus_orbit(7, 11, 30, 0.8, 3000)).map_err(|e| e.to_string())?;
    let u = winding_numbers(&torus_orbit(1, 3, 4, 0.6, 600)).map_err(|e| e.to_string())?;
    let a = circle([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 64);
    let b = circle([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 64);
    let far = circle([0.0, 0.0, 5.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 64);
    let hopf = gauss_linking(&a, &b).map_err(|e| e.to_string())?.linking;
    let split = gauss_linking(&a, &far).map_err(|e| e.to_string())?.linking;

    let (co, si) = (0.5f64.sqrt(), 0.5f64.sqrt());
    let mix = Mat3C([
        [c(co, 0.0), c(-si, 0.0), c(0.0, 0.0)],
        [c(si, 0.0), c(co, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ]);
    let c1 = ball_circle(
        |th| Vec3C::new(c(0.0, 0.0), C64::from_polar(1.0, th), c(1.0, 0.0)),
        400,
    );
    let c2 = ball_circle(
        |th| Vec3C::new(C64::from_polar(1.0, th), c(0.0, 0.0), c(1.0, 0.0)),
        400,
    );
    // Orientation of the Heisenberg chart relative to the boundary of the
    // ball, read off from the complex-oriented pair C1, C2 (linking +1 on S³).
    let chart = gauss_linking(&to_r3(&c1, &mix)?, &to_r3(&c2, &mix)?)
        .map_err(|e| e.to_string())?
        .linking;
    let mut lk = vec![format!("chart orientation {chart:+}")];
    let mut ok_axis = chart.abs() == 1;
    for (p, n) in [(2i64, 7u64), (3, 8), (5, 11)] {
        let orbit = torus_orbit(p, 1, n, 0.5, 1200);
        let mut samples = orbit.samples.clone();
        samples.pop();
        let l1 = gauss_linking(
            &to_r3(&samples, &Mat3C::IDENTITY)?,
            &to_r3(&c1, &Mat3C::IDENTITY)?,
        )
        .map_err(|e| e.to_string())?
        .linking;
        let l2 = gauss_linking(&to_r3(&samples, &mix)?, &to_r3(&c2, &mix)?)
            .map_err(|e| e.to_string())?
            .linking;
        let (l1, l2) = (chart * l1, chart * l2);
        ok_axis &= l1 == p && l2 == 1;
        lk.push(format!("p={p}: lk(C1)={l1} lk(C2)={l2}"));
    }
    check(
        (w.w1, w.w2, w.knotted) == (7, 11, true)
            && (u.w1, u.w2, u.knotted) == (1, 3, false)
            && hopf.abs() == 1
            && split == 0
            && ok_axis,
        format!(
            "windings ({},{}) knotted={} and ({},{}) knotted={}; Hopf {hopf}, split {split}; {}",
            w.w1,
            w.w2,
            w.knotted,
            u.w1,
            u.w2,
            u.knotted,
            lk.join(", ")
        ),
    )
}

fn exp_log() -> Outcome {
    let mut gen_err = 0.0f64;
    for seed in 0..200 {
        let j = if seed % 2 == 0 {
            Model::Ball
        } else {
            Model::Siegel
        }
        .form_matrix();
        let x = random_su21_generator(1000 + seed, &j);
        let l = mat_log(&mat_exp(&x)).map_err(|e| e.to_string())?;
        gen_err = gen_err.max((l - x).max_abs());
    }
    let normals = [
        NormalFamily::Loxodromic {
            lambda: C64::from_polar(1.8, 0.3),
        },
        NormalFamily::Elliptic {
            alpha: 0.4,
            beta: -1.1,
            gamma: 0.7,
        },
        NormalFamily::Unipotent {
            z: c(0.6, -1.2),
            s: 0.9,
            scalar: c(1.0, 0.0),
        },
        NormalFamily::ElliptoParabolic {
            lambda: C64::from_polar(1.0, 0.2),
            mu: C64::from_polar(1.0, -0.4),
            sigma: 1.3,
        },
    ];
    let mut nf_err = 0.0f64;
    for nf in normals {
        let m = nf.matrix();
        let l = mat_log(&m).map_err(|e| e.to_string())?;
        nf_err = nf_err.max((mat_exp(&l) - m).max_abs());
    }
    let mut uni_err = 0.0f64;
    for (z, s) in [
        (c(0.6, -1.2), 0.9),
        (c(-2.0, 0.5), -3.0),
        (c(0.0, 0.0), 1.0),
    ] {
        let l = mat_log(&heisenberg_translation(z, s)).map_err(|e| e.to_string())?;
        let o = c(0.0, 0.0);
        let shown = Mat3C([[o, -z.conj(), c(0.0, -s / 2.0)], [o, o, z], [o, o, o]]);
        uni_err = uni_err.max((l - shown).max_abs());
    }
    check(
        gen_err <= 1e-9 && nf_err <= 1e-9 && uni_err <= 1e-12,
        format!("generators {gen_err:.1e}, normal forms {nf_err:.1e}, Log P_(z,s) {uni_err:.1e}"),
    )
}

fn heisenberg() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pt = || {
        HeisPoint::finite(
            c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
            rng.gen_range(-3.0..3.0),
        )
    };
    let (mut assoc, mut ident, mut inv, mut trip) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let m = |a: &HeisPoint, b: &HeisPoint| heis_mul(a, b).unwrap();
    for _ in 0..100 {
        let (a, b, cc) = (pt(), pt(), pt());
        assoc = assoc.max(heis_dist(&m(&m(&a, &b), &cc), &m(&a, &m(&b, &cc))));
        ident = ident
            .max(heis_dist(&m(&a, &HeisPoint::ORIGIN), &a))
            .max(heis_dist(&m(&HeisPoint::ORIGIN, &a), &a));
        let ai = a.inverse().unwrap();
        inv = inv
            .max(heis_dist(&m(&a, &ai), &HeisPoint::ORIGIN))
            .max(heis_dist(&m(&ai, &a), &HeisPoint::ORIGIN));
        trip = trip.max(heis_dist(&heis_project(&heis_embed(&a)).unwrap(), &a));
    }
    let (x, y) = (
        HeisPoint::finite(c(1.0, 0.0), 0.0),
        HeisPoint::finite(c(0.0, 1.0), 0.0),
    );
    let gap = heis_dist(&m(&x, &y), &m(&y, &x));
    check(
        assoc <= 1e-9 && ident == 0.0 && inv <= 1e-12 && trip <= 1e-9 && gap > 1.0,
        format!("assoc {assoc:.1e}, identity {ident:.1e}, inverse {inv:.1e}, round trip {trip:.1e}, xy vs yx {gap}"),
    )
}

fn axis_escape() -> Outcome {
    let r = Mat3C::from_real([[0.0, 0.0, -1.0], [0.0, -1.0, 0.0], [-1.0, 0.0, 0.0]]);
    let log_p = mat_log(&heisenberg_translation(c(1.0, 0.0), 0.0)).map_err(|e| e.to_string())?;
    let limit = r * heisenberg_translation(c(1.0, 0.0), 0.0) * r;
    let mut radii = Vec::new();
    let mut hits = Vec::new();
    let mut dist = Vec::new();
    for n in 1..=20 {
        let d = Mat3C::from_real([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
            * (1.0 / n as f64);
        let u = r * mat_exp(&(log_p + d)) * r;
        dist.push(u.projective_distance(&limit));
        let axis = loxodromic_axis(&u, Model::Siegel).map_err(|e| e.to_string())?;
        let mut max = 0.0f64;
        let mut hit = false;
        for (_, h) in axis.heisenberg_samples(256) {
            let norm = match h.to_r3() {
                Some(x) => (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt(),
                None => f64::INFINITY,
            };
            hit |= (0.25..=4.0).contains(&norm);
            max = max.max(norm);
        }
        radii.push(max);
        hits.push(hit);
    }
    let escaped = hits[9..].iter().all(|h| !h);
    let shrinking = dist.windows(2).all(|w| w[1] < w[0]);
    check(
        hits[0] && escaped && shrinking && dist[19] < 0.2,
        format!(
            "annulus 0.25 ≤ |x| ≤ 4: met at n=1: {}, avoided for n ≥ 10: {escaped}; axis extent n=1 {:.3}, n=20 {:.3}; ‖U_20 − P‖ {:.3}",
            hits[0], radii[0], radii[19], dist[19]
        ),
    )
}

trait ProjDist {
    fn projective_distance_to(&self, other: &Self) -> f64;
}

impl ProjDist for Vec3C {
    fn projective_distance_to(&self, other: &Self) -> f64 {
        crkit_core::models::projective_distance(self, other)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Goldman curve", goldman),
        ("rho0 validation", rho0_validation),
        ("family validation", family_validation),
        ("type computation", type_computation),
        ("Delta cross-check", delta_cross_check),
        ("slope pipeline", slope_pipeline),
        ("flows", flows),
        ("knot diagnostics", knots),
        ("exp/log", exp_log),
        ("Heisenberg", heisenberg),
        ("axis escape", axis_escape),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("criterion {:>2} PASS {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {d}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
