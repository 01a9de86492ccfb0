//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Oracles (closed-form line sets, closest-approach geometry, finite
//! difference Frenet frames) are written out here rather than taken from the
//! library. Criteria that cannot hold as stated still print FAIL; the run
//! only fails when the set of red lines differs from `EXPECTED_RED`.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI, SQRT_2, TAU};
use std::time::Instant;

use dualruled::io::commands::{verify, AngleSpec, OffsetMode, RunOptions};
use dualruled::io::SurfaceConfig;
use dualruled::mannheim::{
    developability_condition, dual_pitch_relation, mannheim_angle, mannheim_condition_residual,
    mannheim_partner_check, projected_area_relations, rotate_offset, OffsetAngle, OffsetResult,
};
use dualruled::numerics::closed_integral;
use dualruled::{DualAngle, DualNumber, DualVector3, Line, QuadratureSpec, RuledSurfaceDef, Vec3};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Red lines that are expected; see the project notes for the analysis.
const EXPECTED_RED: &[&str] = &["7-zero-circulation", "8-partner"];

struct Check {
    id: &'static str,
    label: String,
    pass: bool,
    detail: String,
}

fn check(
    id: &'static str,
    label: impl Into<String>,
    pass: bool,
    detail: impl Into<String>,
) -> Check {
    Check {
        id,
        label: label.into(),
        pass,
        detail: detail.into(),
    }
}

fn surface(name: &str) -> RuledSurfaceDef {
    SurfaceConfig::parse(&format!("catalog = {name}"))
        .unwrap()
        .build()
        .unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::with_samples(256).unwrap()
}

fn plucker(p: Vec3, d: Vec3) -> (Vec3, Vec3) {
    let d = d.normalize();
    (d, p.cross(&d))
}

/// Largest direction and moment deviation between the offset and a
/// closed-form line set.
fn line_set_deviation(r: &OffsetResult, oracle: impl Fn(f64) -> (Vec3, Vec3)) -> (f64, f64) {
    let (mut dd, mut dm): (f64, f64) = (0.0, 0.0);
    for t in r.source.sample_params(256) {
        let l = r.line_at(t).unwrap();
        let (d, m) = oracle(t);
        dd = dd.max((l.direction() - d).amax());
        dm = dm.max((l.moment() - m).amax());
    }
    (dd, dm)
}

fn criterion_1() -> Vec<Check> {
    let start = Instant::now();
    let s = surface("paper-cone");
    let mut dev: f64 = 0.0;
    for t in s.sample_params(256) {
        let (sn, c) = t.sin_cos();
        let want = DualVector3::new(
            Vec3::new(c, sn, 1.0) * FRAC_1_SQRT_2,
            Vec3::new(1.0, 0.0, -c) * FRAC_1_SQRT_2,
        );
        let got = s.dual_jet(t).value();
        dev = dev.max((got - want).abs_max());
    }
    let elapsed = start.elapsed().as_secs_f64();
    vec![check(
        "1",
        "study map of the catalog cone, 256 samples",
        dev < 1e-9 && elapsed < 1.0,
        format!("max deviation {dev:.2e} (< 1e-9), {elapsed:.3} s (< 1 s)"),
    )]
}

fn cone_offset(theta: DualAngle) -> OffsetResult {
    rotate_offset(&surface("paper-cone"), &OffsetAngle::constant(theta)).unwrap()
}

fn criterion_2() -> Vec<Check> {
    let r = cone_offset(DualAngle::new(0.0, SQRT_2));
    let (dd, dm) = line_set_deviation(&r, |u| {
        let (s, c) = u.sin_cos();
        plucker(Vec3::new(-c, 1.0 - s, 1.0), Vec3::new(c, s, 1.0))
    });
    vec![check(
        "2",
        "oriented offset 0 + e sqrt2 reproduces the cone line set",
        dd < 1e-9 && dm < 1e-9,
        format!("direction {dd:.2e}, moment {dm:.2e} (< 1e-9)"),
    )]
}

fn criterion_3() -> Vec<Check> {
    let s = surface("paper-cone");
    let angle = OffsetAngle::from_jets(TAU, false, |t| {
        let mut j = dualruled::numerics::Taylor::constant(DualNumber::new(FRAC_PI_2, 0.0));
        j = j + dualruled::numerics::Taylor::variable(t).map(|x| DualNumber::new(0.0, SQRT_2 * x));
        j
    });
    let r = rotate_offset(&s, &angle).unwrap();
    let (dd, dm) = line_set_deviation(&r, |u| {
        let (s, c) = u.sin_cos();
        plucker(Vec3::new(-u * c, 1.0 - u * s, u), Vec3::new(-s, c, 0.0))
    });
    vec![check(
        "3",
        "right offset pi/2 + e sqrt2 u reproduces the helicoid line set",
        dd < 1e-9 && dm < 1e-9,
        format!("direction {dd:.2e}, moment {dm:.2e} (< 1e-9)"),
    )]
}

fn criterion_4() -> Vec<Check> {
    let r = cone_offset(DualAngle::new(FRAC_PI_3, SQRT_2));
    let k = 0.5 * FRAC_1_SQRT_2;
    let w = 3f64.sqrt() / 2.0;
    let (dd, dm) = line_set_deviation(&r, |u| {
        let (s, c) = u.sin_cos();
        plucker(
            Vec3::new(-c, 1.0 - s, 1.0),
            Vec3::new(k * c - w * s, k * s + w * c, k),
        )
    });
    let (pd, _) = line_set_deviation(&r, |u| {
        let (s, c) = u.sin_cos();
        plucker(
            Vec3::new(-c, 1.0 - s, 1.0),
            Vec3::new(k * c - w * s, k * s + w * s, k),
        )
    });
    let opts = RunOptions {
        tol: 1e-9,
        ..RunOptions::default()
    };
    let cfg = SurfaceConfig::parse("catalog = paper-cone").unwrap();
    let report = verify(
        &cfg,
        &AngleSpec::parse("pi/3", "sqrt(2)", OffsetMode::Constant).unwrap(),
        &opts,
    )
    .unwrap();
    let printed = report
        .entry("reference-hyperboloid-offset-printed")
        .unwrap();
    let flagged = !printed.asserted && !printed.pass && printed.note.is_some();
    vec![
        check(
            "4",
            "offset pi/3 + e sqrt2 reproduces the corrected hyperboloid line set",
            dd < 1e-9 && dm < 1e-9,
            format!("direction {dd:.2e}, moment {dm:.2e} (< 1e-9)"),
        ),
        check(
            "4-printed",
            "printed hyperboloid line set flagged inconsistent in the report",
            flagged && pd > 1e-2,
            format!("printed direction deviation {pd:.3}, not asserted, note present: {flagged}"),
        ),
    ]
}

fn criterion_5() -> Vec<Check> {
    let mut out = Vec::new();
    for name in ["paper-cone", "latitude-circle-director", "closed-skew"] {
        let s = surface(name);
        assert!(s.is_closed());
        let r = s.invariants(&spec()).unwrap();
        let route = (r.angle_of_pitch.frame_route - r.angle_of_pitch.steiner_route).abs();
        let dual = (r.dual_angle_of_pitch.dual + r.pitch).abs();
        out.push(check(
            "5",
            format!("{name}: angle of pitch by two routes, dual part = -pitch"),
            route < 1e-6 && dual < 1e-6,
            format!("route gap {route:.2e}, dual gap {dual:.2e} (< 1e-6)"),
        ));
        if name == "paper-cone" {
            let lam = r.angle_of_pitch.steiner_route;
            out.push(check(
                "5-cone",
                "cone: pitch 0, angle of pitch -sqrt2 pi",
                r.pitch.abs() < 1e-6 && (lam + SQRT_2 * PI).abs() < 1e-6,
                format!("pitch {:.2e}, angle of pitch {lam:.9}", r.pitch),
            ));
        }
    }
    out
}

fn criterion_6() -> Vec<Check> {
    let s = surface("closed-skew");
    let m = mannheim_angle(&s, DualAngle::new(0.4, 0.2), &spec()).unwrap();
    let rm = mannheim_condition_residual(&rotate_offset(&s, &m).unwrap(), &spec()).unwrap();
    let rc = mannheim_condition_residual(
        &rotate_offset(&s, &OffsetAngle::constant(DualAngle::new(0.4, 0.2))).unwrap(),
        &spec(),
    )
    .unwrap();
    vec![
        check(
            "6-mannheim",
            "Mannheim-angle offset keeps dq1 along a",
            rm.max_sine_deviation < 1e-6,
            format!("max sine {:.2e} (< 1e-6)", rm.max_sine_deviation),
        ),
        check(
            "6-constant",
            "constant-angle offset violates the condition",
            rc.max_sine_deviation > 1e-2,
            format!("max sine {:.3} (> 1e-2)", rc.max_sine_deviation),
        ),
    ]
}

const THETAS: [f64; 3] = [0.0, FRAC_PI_4, FRAC_PI_2];
const THETA_STARS: [f64; 2] = [0.0, 0.5];

fn criterion_7() -> Vec<Check> {
    let s = surface("closed-skew");
    let circulation = closed_integral(
        |t| s.dual_frame_jet(t).unwrap().k1.value(),
        s.period(),
        &spec(),
    );
    let mut out = vec![check(
        "7-zero-circulation",
        "closed skew surface with vanishing k1 integral",
        circulation.real.abs() < 1e-6 && circulation.dual.abs() < 1e-6,
        format!(
            "integral of k1 = {circulation}; its real part is the length of the spherical image"
        ),
    )];
    for th in THETAS {
        for ts in THETA_STARS {
            let r = rotate_offset(&s, &OffsetAngle::constant(DualAngle::new(th, ts))).unwrap();
            let rep = dual_pitch_relation(&r, &spec(), 1e-6).unwrap();
            let asserted: Vec<_> = rep.entries.iter().filter(|e| e.asserted).collect();
            let worst = asserted.iter().map(|e| e.residual).fold(0.0, f64::max);
            let ids: Vec<&str> = asserted.iter().map(|e| e.id.as_str()).collect();
            out.push(check(
                "7",
                format!("dual pitch relation, theta {th:.4}, theta* {ts}"),
                asserted.iter().all(|e| e.pass),
                format!(
                    "{} entries ({}), max residual {worst:.2e} (< 1e-6)",
                    ids.len(),
                    ids.join(" ")
                ),
            ));
        }
    }
    out
}

/// Frenet binormal and principal normal by central differences of points.
fn fd_frenet(f: &impl Fn(f64) -> Vec3, t: f64) -> (Vec3, Vec3) {
    let h = 1e-3;
    let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
    let d2 = (f(t + h) - f(t) * 2.0 + f(t - h)) / (h * h);
    let b = d1.cross(&d2).normalize();
    let n = b.cross(&d1).normalize();
    (b, n)
}

fn criterion_8() -> Vec<Check> {
    // helix (cos t, sin t, t): curvature = torsion = 1/2
    let s = surface("helix-tangent-developable");
    let tau = 0.5;
    let angle = OffsetAngle::constant(DualAngle::new(FRAC_PI_4, -1.0 / tau));
    let r = rotate_offset(&s, &angle).unwrap();
    let mut drall: f64 = 0.0;
    let mut cond: f64 = 0.0;
    for t in s.sample_params(256) {
        drall = drall.max(r.surface.distribution_parameter(t).unwrap().abs());
        let (sn, c) = FRAC_PI_4.sin_cos();
        cond = cond.max((sn + (-1.0 / tau) * tau * c).abs());
    }
    let dev = developability_condition(&s, &angle, &spec(), 1e-6).unwrap();
    let partner = mannheim_partner_check(&r, &spec(), 1e-6).unwrap();
    let mut oracle: f64 = 0.0;
    let alpha = |t: f64| s.striction_point(t).unwrap();
    let beta = |t: f64| r.surface.striction_point(t).unwrap();
    for t in s
        .sample_params(64)
        .into_iter()
        .filter(|&t| t > 0.01 && t < TAU - 0.01)
    {
        let (b_alpha, _) = fd_frenet(&alpha, t);
        let (_, n_beta) = fd_frenet(&beta, t);
        oracle = oracle.max(
            b_alpha
                .cross(&n_beta)
                .norm()
                .atan2(b_alpha.dot(&n_beta).abs()),
        );
    }
    vec![
        check(
            "8-drall",
            "offset pi/4 - e/tau of the helix tangent developable is developable",
            drall < 1e-6 && dev.max_direct_drall < 1e-6,
            format!("max |drall| {drall:.2e} (< 1e-6)"),
        ),
        check(
            "8-torsion",
            "torsion condition sin theta + theta* tau cos theta",
            cond < 1e-6 && dev.max_torsion_residual < 1e-6,
            format!(
                "max residual {:.2e} (< 1e-6)",
                dev.max_torsion_residual.max(cond)
            ),
        ),
        check(
            "8-partner",
            "binormal of the source striction is the principal normal of the offset striction",
            partner.max_angle < 1e-6,
            format!(
                "max angle {:.6} rad ({:.2} deg), finite-difference oracle {:.6} rad (< 1e-6)",
                partner.max_angle,
                partner.max_angle.to_degrees(),
                oracle
            ),
        ),
    ]
}

fn criterion_9() -> Vec<Check> {
    let s = surface("closed-skew");
    let mut out = Vec::new();
    let mut reported = Vec::new();
    for th in THETAS {
        for ts in THETA_STARS {
            let r = rotate_offset(&s, &OffsetAngle::constant(DualAngle::new(th, ts))).unwrap();
            let rep = projected_area_relations(&r, &spec(), 1e-6).unwrap();
            let asserted: Vec<_> = rep
                .entries
                .iter()
                .filter(|e| e.asserted && e.id.contains("projected-area"))
                .collect();
            let worst = asserted.iter().map(|e| e.residual).fold(0.0, f64::max);
            out.push(check(
                "9",
                format!("projected areas, theta {th:.4}, theta* {ts}"),
                asserted.iter().all(|e| e.pass),
                format!(
                    "{} entries, max residual {worst:.2e} (< 1e-6)",
                    asserted.len()
                ),
            ));
            let a = ["projected-area-a-real", "projected-area-a-dual"]
                .map(|id| rep.entries.iter().find(|e| e.id == id).unwrap().clone());
            out.push(check(
                "9-a",
                format!("projection on a equals -lambda_a, theta {th:.4}, theta* {ts}"),
                a.iter().all(|e| e.pass),
                format!("residuals {:.2e}, {:.2e}", a[0].residual, a[1].residual),
            ));
            if let Some(e) = rep
                .entries
                .iter()
                .find(|e| e.id == "angle-of-pitch-a-vanishes")
            {
                reported.push(e.lhs);
            }
        }
    }
    println!(
        "INFO [9] further claim lambda_a = 0 is reported, not asserted: lambda_a = {:.6}",
        reported.first().copied().unwrap_or(f64::NAN)
    );
    out
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
    )
}

/// Angle and signed closest-approach distance from elementary geometry.
fn closest_approach(p1: Vec3, d1: Vec3, p2: Vec3, d2: Vec3, parallel: bool) -> (f64, f64) {
    let theta = d1.cross(&d2).norm().atan2(d1.dot(&d2));
    let w = p2 - p1;
    if parallel {
        return (theta, (w - d1 * w.dot(&d1)).norm());
    }
    // minimize |p1 + s d1 − p2 − u d2|² over s, u
    let b = d1.dot(&d2);
    let (dw1, dw2) = (d1.dot(&w), d2.dot(&w));
    let den = 1.0 - b * b;
    let s = (dw1 - b * dw2) / den;
    let u = (b * dw1 - dw2) / den;
    let gap = (p2 + d2 * u) - (p1 + d1 * s);
    let sign = d1.cross(&d2).dot(&gap).signum();
    (theta, sign * gap.norm())
}

fn criterion_10() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut dt, mut dts): (f64, f64) = (0.0, 0.0);
    let mut parallel_count = 0;
    for i in 0..1000 {
        let parallel = i % 10 == 0;
        let (p1, d1, p2) = (
            random_point(&mut rng),
            random_unit(&mut rng),
            random_point(&mut rng),
        );
        let d2 = if parallel {
            parallel_count += 1;
            if rng.random_bool(0.5) {
                d1
            } else {
                -d1
            }
        } else {
            random_unit(&mut rng)
        };
        let l1 = Line::from_point_dir(p1, d1).unwrap();
        let l2 = Line::from_point_dir(p2, d2).unwrap();
        let got = l1.dual_angle_to(&l2);
        let (theta, theta_star) = closest_approach(p1, d1, p2, d2, parallel);
        dt = dt.max((got.theta - theta).abs());
        dts = dts.max((got.theta_star - theta_star).abs());
    }
    vec![check(
        "10",
        format!("dual angle vs closest approach, 1000 pairs ({parallel_count} parallel)"),
        dt < 1e-9 && dts < 1e-9,
        format!("max |d theta| {dt:.2e}, max |d theta*| {dts:.2e} (< 1e-9)"),
    )]
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn dual() -> impl Strategy<Value = DualNumber> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| DualNumber::new(a, b))
}

fn dvec() -> impl Strategy<Value = DualVector3> {
    prop::array::uniform6(-3.0..3.0f64)
        .prop_map(|c| DualVector3::new(Vec3::new(c[0], c[1], c[2]), Vec3::new(c[3], c[4], c[5])))
}

fn close(a: DualNumber, b: DualNumber, tol: f64) -> bool {
    (a - b).abs_max() <= tol
}

fn outcome(
    id: &'static str,
    label: &str,
    cases: u32,
    r: Result<(), impl std::fmt::Display>,
) -> Check {
    match r {
        Ok(()) => check(id, label, true, format!("{cases} random cases")),
        Err(e) => check(id, label, false, e.to_string()),
    }
}

fn criterion_11() -> Vec<Check> {
    let mut out = Vec::new();
    let eps = DualNumber::new(0.0, 1.0);
    out.push(outcome(
        "11-algebra",
        "dual algebra: eps^2 = 0, sin^2 + cos^2 = 1",
        512,
        runner(512).run(&dual(), |x| {
            prop_assert_eq!(eps * eps, DualNumber::ZERO);
            let (s, c) = (x.sin(), x.cos());
            prop_assert!(close(s * s + c * c, DualNumber::ONE, 1e-12));
            Ok(())
        }),
    ));
    out.push(outcome(
        "11-lagrange",
        "Lagrange identity for dual vectors",
        512,
        runner(512).run(&(dvec(), dvec()), |(a, b)| {
            let x = a.cross(&b);
            let lhs = x.dot(&x);
            let rhs = a.dot(&a) * b.dot(&b) - a.dot(&b) * a.dot(&b);
            prop_assert!(close(lhs, rhs, 1e-9), "{} vs {}", lhs, rhs);
            Ok(())
        }),
    ));
    let lines = (
        prop::array::uniform3(-10.0..10.0f64),
        prop::array::uniform3(-1.0..1.0f64),
    )
        .prop_filter("nonzero direction", |(_, d)| Vec3::from(*d).norm() > 1e-3);
    out.push(outcome(
        "11-study",
        "Study map round trip",
        512,
        runner(512).run(&lines, |(p, d)| {
            let l = Line::from_point_dir(Vec3::from(p), Vec3::from(d)).unwrap();
            let q = l.to_dual();
            prop_assert!((q.dot(&q) - DualNumber::ONE).abs_max() < 1e-12);
            let back = Line::from_dual(&q).unwrap();
            prop_assert!(back.plucker_distance(&l) < 1e-12);
            // the foot point lies on the original line
            let f = back.foot_point() - Vec3::from(p);
            prop_assert!(f.cross(&l.direction()).norm() < 1e-9);
            Ok(())
        }),
    ));
    let shapes = (
        1.0..3.0f64,
        0.5..2.0f64,
        -0.3..0.3f64,
        0.2..0.8f64,
        -0.3..0.3f64,
    );
    out.push(outcome(
        "11-frame",
        "moving frame orthonormal, frame equations hold on random closed surfaces",
        24,
        runner(24).run(&shapes, |(a, b, c, e, f)| {
            let cfg = format!(
                "base = ({a}*cos(t), {b}*sin(t) + {c}*cos(3*t), 0.4*sin(t))\ndirector = (cos(t), sin(t), {e} + {f}*sin(2*t))"
            );
            let s = SurfaceConfig::parse(&cfg).unwrap().build().unwrap();
            let field = s.moving_frame(&spec()).unwrap();
            prop_assert!(field.orthonormality_residual < 1e-9, "{}", field.orthonormality_residual);
            prop_assert!(field.structural_residual < 1e-6, "{}", field.structural_residual);
            for t in s.sample_params(32) {
                let j = s.dual_frame_jet(t).unwrap();
                let (k1, k2) = (j.k1.value(), j.k2.value());
                let r1 = j.q.derivative(1) - j.h.value() * k1;
                let r2 = j.h.derivative(1) + j.q.value() * k1 - j.a.value() * k2;
                let r3 = j.a.derivative(1) + j.h.value() * k2;
                let worst = r1.abs_max().max(r2.abs_max()).max(r3.abs_max());
                prop_assert!(worst < 1e-9, "t = {}: {}", t, worst);
            }
            Ok(())
        }),
    ));
    out
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [fn() -> Vec<Check>; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut red = BTreeSet::new();
    for c in criteria {
        for l in c() {
            println!(
                "{} [{}] {}: {}",
                if l.pass { "PASS" } else { "FAIL" },
                l.id,
                l.label,
                l.detail
            );
            if !l.pass {
                red.insert(l.id);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let fast = elapsed < 60.0;
    println!(
        "{} [11-runtime] acceptance run time: {elapsed:.2} s (< 60 s)",
        if fast { "PASS" } else { "FAIL" }
    );
    if !fast {
        red.insert("11-runtime");
    }
    let expected: BTreeSet<&str> = EXPECTED_RED.iter().copied().collect();
    assert_eq!(red, expected, "red criteria differ from the recorded set");
}
