//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. Failures are left red deliberately when a criterion is
//! not attainable as stated.

use std::time::Instant;

use assert_cmd::Command;
use inversive::sample::{generate_pair, random_ball, random_point, Structure};
use inversive::{
    absolute_cross_ratio, chordal_distance, classify_span, detect_common_boundary,
    full_cross_ratio_check, lift_ball, lift_point, lightray_cross_ratio, lorentz_inner,
    random_lorentz, solve_balls, solve_points, verify_correspondence, Configuration,
    ConfigurationKind, Error, ExtendedPoint, LorentzMap, MatchMode, OrientedBall, Side, SpanKind,
    Uniqueness,
};
use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(n: usize, name: &str, ok: bool) {
    println!("criterion {n:>2} ({name}): {}", if ok { "PASS" } else { "FAIL" });
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn acceptance_01_formula_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = true;
    for i in 0..1000 {
        let dim = 1 + i % 4;
        let b1 = random_ball(&mut rng, dim);
        let b2 = random_ball(&mut rng, dim);
        let lift_inner = lorentz_inner(&lift_ball(&b1), &lift_ball(&b2)).unwrap();
        let reported = inversive::signed_inversive_distance(&b1, &b2).unwrap();
        if (reported - lift_inner).abs() > 1e-10 * (1.0 + lift_inner.abs()) {
            ok = false;
        }
        if let (
            OrientedBall::Sphere { center: c1, radius: r1, side: Side::Inside },
            OrientedBall::Sphere { center: c2, radius: r2, side: Side::Inside },
        ) = (&b1, &b2)
        {
            let closed = (r1 * r1 + r2 * r2 - (c1 - c2).norm_squared()) / (2.0 * r1 * r2);
            if (reported - closed).abs() > 1e-12 * (1.0 + closed.abs()) {
                ok = false;
            }
        }
    }
    verdict(1, "formula equivalence", ok);
    assert!(ok);
}

fn distinct_tuple(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> Vec<ExtendedPoint> {
    let mut pts: Vec<ExtendedPoint> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = random_point(rng, dim);
        if pts.iter().all(|q| chordal_distance(q, &p).unwrap() > 1e-6) {
            pts.push(p);
        }
    }
    pts
}

#[test]
fn acceptance_02_square_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut ok = true;
    let mut saw_infinity = false;
    for i in 0..1000 {
        let dim = 1 + i % 4;
        let pts = distinct_tuple(&mut rng, dim, 4);
        saw_infinity |= pts.iter().any(ExtendedPoint::is_infinity);
        let rays: Vec<_> = pts.iter().map(lift_point).collect();
        let cr2 = lightray_cross_ratio(&rays[0], &rays[1], &rays[2], &rays[3]).unwrap();
        let cr = absolute_cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        if (cr * cr - cr2).abs() > 1e-10 * (1.0 + cr2.abs()) {
            ok = false;
        }
    }
    ok &= saw_infinity;
    verdict(2, "square law", ok);
    assert!(ok);
}

#[test]
fn acceptance_03_sphere_formula_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let e = |i: usize| {
        let mut v = DVector::zeros(3);
        v[i] = 1.0;
        ExtendedPoint::finite(v).unwrap()
    };
    let (p1, p2, p3) = (e(0), e(1), e(2));
    let mut ok = true;
    let mut done = 0;
    while done < 100 {
        let raw = DVector::from_fn(3, |_, _| rng.random_range(-1.0..1.0));
        if raw.norm() < 1e-2 {
            continue;
        }
        let x: DVector<f64> = &raw / raw.norm();
        // skip samples colliding with the reference points
        if (1.0 - x[1]).abs() < 1e-6 || (1.0 - x[2]).abs() < 1e-6 || (1.0 - x[0]).abs() < 1e-6 {
            continue;
        }
        done += 1;
        let px = ExtendedPoint::finite(x.clone()).unwrap();
        // |x - e3| |e2 - e1| / (|x - e2| |e3 - e1|) = sqrt((1 - x3)/(1 - x2))
        let cr = absolute_cross_ratio(&px, &p3, &p2, &p1).unwrap();
        let expected = ((1.0 - x[2]) / (1.0 - x[1])).sqrt();
        if (cr - expected).abs() > 1e-10 * (1.0 + expected) {
            ok = false;
        }
    }
    verdict(3, "sphere formula spot check", ok);
    assert!(ok);
}

#[test]
fn acceptance_04_ball_rigidity_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = true;
    for i in 0..200u64 {
        let dim = 1 + (i as usize) % 3;
        let n = rng.random_range(dim + 2..=50);
        let (a, b, _) = generate_pair(i, ConfigurationKind::Balls, n, dim, Structure::Full)
            .expect("generation");
        let out = solve_balls(&a, &b, None).expect("solve");
        let report = verify_correspondence(&a, &b, &out.map).unwrap();
        if !report.passes(1e-6) {
            ok = false;
        }
        let flipped = b.complemented().unwrap();
        let out2 = solve_balls(&a, &flipped, None).expect("flipped solve");
        if out2.mode != MatchMode::ComplementSwapped {
            ok = false;
        }
    }
    verdict(4, "ball rigidity round trip", ok);
    assert!(ok);
}

#[test]
fn acceptance_05_point_rigidity_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    let mut small = 0;
    for i in 0..200u64 {
        let dim = 1 + (i as usize) % 3;
        let n = if i % 5 < 2 { 1 + (i as usize % 3) } else { rng.random_range(4..=50) };
        if n <= 3 {
            small += 1;
        }
        let (a, b, _) = generate_pair(i, ConfigurationKind::Points, n, dim, Structure::Full)
            .expect("generation");
        let out = solve_points(&a, &b, None).expect("solve");
        if out.residual_match > 1e-7 {
            ok = false;
        }
    }
    ok &= small >= 40;
    verdict(5, "point rigidity round trip", ok);
    assert!(ok);
}

#[test]
fn acceptance_06_counterexample_fidelity() {
    // Example 3: square vs rectangle
    let load = |name: &str| {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let entries: Vec<(String, OrientedBall)> = v["items"]
            .as_array()
            .unwrap()
            .iter()
            .map(|item| {
                let label = item["label"].as_str().unwrap().to_string();
                let ball = if item["type"] == "sphere" {
                    let c: Vec<f64> =
                        item["center"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
                    let side =
                        if item["side"] == "inside" { Side::Inside } else { Side::Outside };
                    OrientedBall::sphere(DVector::from_vec(c), item["radius"].as_f64().unwrap(), side)
                        .unwrap()
                } else {
                    let n: Vec<f64> =
                        item["normal"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
                    OrientedBall::half_space(DVector::from_vec(n), item["offset"].as_f64().unwrap())
                        .unwrap()
                };
                (label, ball)
            })
            .collect();
        Configuration::balls(2, entries).unwrap()
    };

    let square = load("example3_square.json");
    let rect = load("example3_rectangle.json");
    let dev = (square.invariant_gram().unwrap() - rect.invariant_gram().unwrap())
        .iter()
        .fold(0.0f64, |a, x| a.max(x.abs()));
    let ex3_ok = dev < 1e-12
        && matches!(solve_balls(&square, &rect, None), Err(Error::CommonBoundaryPoint));
    println!("  6a example 3 gram equality + refusal: {}", if ex3_ok { "PASS" } else { "FAIL" });

    // Example 2: no side assignment matches the signed Grams
    let ex2_a = load("example2_a.json");
    let ex2_b = load("example2_b.json");
    let g_b = ex2_b.invariant_gram().unwrap();
    let balls = ex2_a.ball_items().unwrap().to_vec();
    let mut ex2_ok = true;
    for mask in 0..8u32 {
        let flipped: Vec<(String, OrientedBall)> = balls
            .iter()
            .enumerate()
            .map(|(i, ball)| {
                let b = if mask & (1 << i) != 0 { ball.complement() } else { ball.clone() };
                (format!("b{i}"), b)
            })
            .collect();
        let variant = Configuration::balls(2, flipped).unwrap();
        let dev = (variant.invariant_gram().unwrap() - &g_b)
            .iter()
            .fold(0.0f64, |a, x| a.max(x.abs()));
        if dev < 0.1 {
            ex2_ok = false;
        }
    }
    println!("  6b example 2 no side assignment: {}", if ex2_ok { "PASS" } else { "FAIL" });

    // Example 1: stated expectation is a LightLike span with a common
    // boundary point
    let ex1 = load("example1_a.json");
    let class = classify_span(&ex1.lifts()).unwrap();
    let (common, _) = detect_common_boundary(&ex1).unwrap();
    let ex1_ok = class.kind == SpanKind::LightLike && common;
    println!(
        "  6c example 1 LightLike span + common boundary: {} (span is {:?} dim {}, common = {common})",
        if ex1_ok { "PASS" } else { "FAIL" },
        class.kind,
        class.dim
    );

    let ok = ex3_ok && ex2_ok && ex1_ok;
    verdict(6, "counterexample fidelity", ok);
    assert!(ok);
}

#[test]
fn acceptance_07_uniqueness_classes() {
    let mut ok = true;
    for seed in 0..20u64 {
        let (a, b, _) =
            generate_pair(seed, ConfigurationKind::Balls, 7, 2, Structure::StronglySymmetric)
                .unwrap();
        let out = solve_balls(&a, &b, None).unwrap();
        let witness = match &out.uniqueness {
            Uniqueness::StronglySymmetric { witness: Some(w) } => w.clone(),
            _ => {
                ok = false;
                continue;
            }
        };
        let second = out.map.compose(&LorentzMap::reflection(&lift_ball(&witness)).unwrap());
        let diff = (out.map.matrix() - second.matrix())
            .iter()
            .fold(0.0f64, |a, x| a.max(x.abs()));
        ok &= diff >= 1e-3;
        ok &= verify_correspondence(&a, &b, &out.map).unwrap().passes(1e-6);
        ok &= verify_correspondence(&a, &b, &second).unwrap().passes(1e-6);

        let (fa, fb, _) = generate_pair(seed, ConfigurationKind::Balls, 8, 2, Structure::Full)
            .unwrap();
        let s1 = solve_balls(&fa, &fb, None).unwrap();
        let s2 = solve_balls(&fa, &fb, None).unwrap();
        ok &= s1.uniqueness == Uniqueness::Unique;
        let rep = (s1.map.matrix() - s2.map.matrix())
            .iter()
            .fold(0.0f64, |a, x| a.max(x.abs()));
        ok &= rep <= 1e-7;
    }
    verdict(7, "uniqueness classes", ok);
    assert!(ok);
}

#[test]
fn acceptance_08_lorentz_hygiene() {
    let mut ok = true;
    let mut check = |map: &LorentzMap| {
        let r = map.validate();
        if r.residual > 1e-8 || !r.positive {
            ok = false;
        }
    };
    for seed in 0..50u64 {
        let (a, b, g) = generate_pair(seed, ConfigurationKind::Balls, 6, 2, Structure::Full)
            .unwrap();
        check(&g);
        check(&solve_balls(&a, &b, None).unwrap().map);
        let (pa, pb, pg) = generate_pair(seed, ConfigurationKind::Points, 5, 3, Structure::Full)
            .unwrap();
        check(&pg);
        check(&solve_points(&pa, &pb, None).unwrap().map);
        check(&random_lorentz(seed, 3 + (seed as usize % 4)));
    }
    verdict(8, "lorentz hygiene", ok);
    assert!(ok);
}

#[test]
fn acceptance_09_negativity_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = true;
    for i in 0..1000 {
        let dim = 1 + i % 4;
        let pts = distinct_tuple(&mut rng, dim, 2);
        let u = lift_point(&pts[0]).into_vector();
        let v = lift_point(&pts[1]).into_vector();
        let scale = u.euclidean_norm() * v.euclidean_norm();
        if lorentz_inner(&u, &v).unwrap() >= -1e-15 * scale {
            ok = false;
        }
    }
    verdict(9, "negativity lemma", ok);
    assert!(ok);
}

#[test]
fn acceptance_10_scale() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("big");
    Command::cargo_bin("inversive")
        .unwrap()
        .args([
            "generate", "--kind", "balls", "--n", "1000", "--dim", "3", "--seed", "10",
            "--out-prefix", prefix.to_str().unwrap(),
        ])
        .assert()
        .success();
    let start = Instant::now();
    Command::cargo_bin("inversive")
        .unwrap()
        .args([
            "solve",
            "balls",
            &format!("{}.a.json", prefix.display()),
            &format!("{}.b.json", prefix.display()),
        ])
        .assert()
        .success();
    let solve_time = start.elapsed();

    let (a, b, _) = generate_pair(10, ConfigurationKind::Points, 25, 2, Structure::Full).unwrap();
    let start = Instant::now();
    let report = full_cross_ratio_check(&a, &b).unwrap();
    let audit_time = start.elapsed();

    let ok = solve_time.as_secs_f64() < 5.0
        && audit_time.as_secs_f64() < 10.0
        && report.tuples == 25 * 24 * 23 * 22
        && report.max_discrepancy <= 1e-9;
    println!("  solve(1000 balls): {:.2}s, audit(25 points): {:.2}s", solve_time.as_secs_f64(), audit_time.as_secs_f64());
    verdict(10, "scale", ok);
    assert!(ok);
}
