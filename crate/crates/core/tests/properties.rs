//! Randomized invariants: closed-form oracles, Lorentz invariance, and
//! round trips.

use inversive::{
    absolute_cross_ratio, apply_to_ball, apply_to_point, ball_param_error, causal_class,
    chordal_distance, classify_span, hyperbolic_distance, lift_ball, lift_point,
    lightray_cross_ratio, lorentz_inner, random_lorentz, relation_of_balls, signed_inversive_distance,
    unlift_ball, unlift_point, BallRelation, CausalClass, ExtendedPoint, MinkVector, OrientedBall,
    Side,
};
use nalgebra::DVector;
use proptest::prelude::*;

fn dvec(dim: usize) -> impl Strategy<Value = DVector<f64>> {
    prop::collection::vec(-3.0..3.0f64, dim).prop_map(DVector::from_vec)
}

fn sphere(dim: usize) -> impl Strategy<Value = OrientedBall> {
    (dvec(dim), 0.3..2.5f64, any::<bool>()).prop_map(|(c, r, inside)| {
        let side = if inside { Side::Inside } else { Side::Outside };
        OrientedBall::sphere(c, r, side).unwrap()
    })
}

fn half_space(dim: usize) -> impl Strategy<Value = OrientedBall> {
    (dvec(dim), -2.0..2.0f64)
        .prop_filter("nonzero normal", |(n, _)| n.norm() > 1e-2)
        .prop_map(|(n, d)| OrientedBall::half_space(n, d).unwrap())
}

fn ball(dim: usize) -> impl Strategy<Value = OrientedBall> {
    prop_oneof![4 => sphere(dim), 1 => half_space(dim)]
}

fn point(dim: usize) -> impl Strategy<Value = ExtendedPoint> {
    prop_oneof![
        9 => dvec(dim).prop_map(|v| ExtendedPoint::finite(v).unwrap()),
        1 => Just(ExtendedPoint::Infinity(dim)),
    ]
}

fn distinct_points(dim: usize, n: usize) -> impl Strategy<Value = Vec<ExtendedPoint>> {
    prop::collection::vec(point(dim), n).prop_filter("pairwise separated", |ps| {
        (0..ps.len()).all(|i| {
            (i + 1..ps.len()).all(|j| chordal_distance(&ps[i], &ps[j]).unwrap() > 1e-2)
        })
    })
}

fn dim() -> impl Strategy<Value = usize> {
    1usize..=4
}

proptest! {
    #[test]
    fn inversive_distance_matches_closed_form_for_inside_spheres(
        (d, b1, b2) in dim().prop_flat_map(|d| (Just(d), sphere(d), sphere(d)))
    ) {
        let _ = d;
        let inside = |b: &OrientedBall| match b {
            OrientedBall::Sphere { center, radius, .. } => {
                Some((center.clone(), *radius))
            }
            _ => None,
        };
        if let (Some((c1, r1)), Some((c2, r2))) = (inside(&b1), inside(&b2)) {
            let sign = |b: &OrientedBall| match b {
                OrientedBall::Sphere { side: Side::Inside, .. } => 1.0,
                _ => -1.0,
            };
            let oracle = sign(&b1) * sign(&b2) * (r1 * r1 + r2 * r2 - (c1 - c2).norm_squared())
                / (2.0 * r1 * r2);
            let got = signed_inversive_distance(&b1, &b2).unwrap();
            prop_assert!((got - oracle).abs() <= 1e-12 * (1.0 + oracle.abs()));
        }
    }

    #[test]
    fn inversive_distance_matches_closed_form_for_plane_sphere(
        (d, h, s) in dim().prop_flat_map(|d| (Just(d), half_space(d), sphere(d)))
    ) {
        let _ = d;
        let (OrientedBall::HalfSpace { normal, offset }, OrientedBall::Sphere { center, radius, side }) =
            (&h, &s)
        else {
            unreachable!()
        };
        let sgn = if *side == Side::Inside { 1.0 } else { -1.0 };
        let oracle = sgn * (normal.dot(center) - offset) / radius;
        let got = signed_inversive_distance(&h, &s).unwrap();
        prop_assert!((got - oracle).abs() <= 1e-12 * (1.0 + oracle.abs()));
    }

    #[test]
    fn inversive_distance_is_lorentz_invariant(
        (d, b1, b2, seed) in dim().prop_flat_map(|d| (Just(d), ball(d), ball(d), 0u64..1000))
    ) {
        let g = random_lorentz(seed, d + 2);
        // boost products can amplify roundoff by the square of their largest
        // entry; keep the test on well-conditioned maps
        prop_assume!(g.matrix().iter().all(|x| x.abs() <= 1e3));
        let before = signed_inversive_distance(&b1, &b2).unwrap();
        let after = signed_inversive_distance(
            &apply_to_ball(&g, &b1).unwrap(),
            &apply_to_ball(&g, &b2).unwrap(),
        )
        .unwrap();
        prop_assert!((before - after).abs() <= 1e-5 * (1.0 + before.abs()));
    }

    #[test]
    fn chordal_identity_for_finite_points(
        (d, p, q) in dim().prop_flat_map(|d| (Just(d), dvec(d), dvec(d)))
    ) {
        let _ = d;
        let u = lift_point(&ExtendedPoint::finite(p.clone()).unwrap());
        let v = lift_point(&ExtendedPoint::finite(q.clone()).unwrap());
        let got = lorentz_inner(u.vector(), v.vector()).unwrap();
        let oracle = -(&p - &q).norm_squared() / 2.0;
        prop_assert!((got - oracle).abs() <= 1e-10 * (1.0 + oracle.abs()));
    }

    #[test]
    fn cross_ratio_square_law(
        (d, ps) in dim().prop_flat_map(|d| (Just(d), distinct_points(d, 4)))
    ) {
        let _ = d;
        let rays: Vec<_> = ps.iter().map(lift_point).collect();
        let cr2 = lightray_cross_ratio(&rays[0], &rays[1], &rays[2], &rays[3]).unwrap();
        let cr = absolute_cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
        prop_assert!((cr * cr - cr2).abs() <= 1e-10 * (1.0 + cr2.abs()));
    }

    #[test]
    fn cross_ratio_matches_euclidean_formula(
        (d, ps) in dim().prop_flat_map(|d| (Just(d), distinct_points(d, 4)))
    ) {
        let _ = d;
        let finite: Option<Vec<&DVector<f64>>> = ps
            .iter()
            .map(|p| match p {
                ExtendedPoint::Finite(v) => Some(v),
                ExtendedPoint::Infinity(_) => None,
            })
            .collect();
        if let Some(v) = finite {
            let oracle = ((v[0] - v[1]).norm() * (v[2] - v[3]).norm())
                / ((v[0] - v[2]).norm() * (v[1] - v[3]).norm());
            let got = absolute_cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
            prop_assert!((got - oracle).abs() <= 1e-9 * (1.0 + oracle.abs()));
        }
    }

    #[test]
    fn cross_ratio_is_mobius_invariant(
        (d, ps, seed) in dim().prop_flat_map(|d| (Just(d), distinct_points(d, 4), 0u64..1000))
    ) {
        let g = random_lorentz(seed, d + 2);
        prop_assume!(g.matrix().iter().all(|x| x.abs() <= 1e3));
        let qs: Vec<_> = ps.iter().map(|p| apply_to_point(&g, p).unwrap()).collect();
        let before = absolute_cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
        let after = absolute_cross_ratio(&qs[0], &qs[1], &qs[2], &qs[3]).unwrap();
        prop_assert!((before - after).abs() <= 1e-5 * (1.0 + before.abs()));
    }

    #[test]
    fn ball_lift_round_trip((d, b) in dim().prop_flat_map(|d| (Just(d), ball(d)))) {
        let _ = d;
        let back = unlift_ball(&lift_ball(&b)).unwrap();
        prop_assert!(ball_param_error(&back, &b) <= 1e-10);
    }

    #[test]
    fn point_lift_round_trip((d, p) in dim().prop_flat_map(|d| (Just(d), point(d)))) {
        let _ = d;
        let back = unlift_point(lift_point(&p).vector()).unwrap();
        // chordal is a square root, so roundoff enters at sqrt(eps)
        prop_assert!(chordal_distance(&back, &p).unwrap() <= 1e-7);
    }

    #[test]
    fn membership_agrees_with_lift_sign(
        (d, b, p) in dim().prop_flat_map(|d| (Just(d), ball(d), point(d)))
    ) {
        let _ = d;
        let ip = lorentz_inner(&lift_ball(&b), lift_point(&p).vector()).unwrap();
        if ip.abs() > 1e-9 {
            prop_assert_eq!(b.contains(&p), ip > 0.0);
            prop_assert_eq!(b.complement().contains(&p), ip < 0.0);
        }
    }

    #[test]
    fn distinct_point_lifts_have_negative_products(
        (d, ps) in dim().prop_flat_map(|d| (Just(d), distinct_points(d, 2)))
    ) {
        let _ = d;
        let ip = lorentz_inner(lift_point(&ps[0]).vector(), lift_point(&ps[1]).vector()).unwrap();
        prop_assert!(ip < 0.0);
    }

    #[test]
    fn lorentz_inner_is_bilinear(
        (d, u, v, w, a, b) in dim().prop_flat_map(|d| {
            (Just(d), dvec(d + 2), dvec(d + 2), dvec(d + 2), -3.0..3.0f64, -3.0..3.0f64)
        })
    ) {
        let _ = d;
        let mk = |x: &DVector<f64>| MinkVector::new(x.clone()).unwrap();
        prop_assume!(u.norm() > 1e-6 && v.norm() > 1e-6 && w.norm() > 1e-6);
        prop_assume!((a * &u + b * &v).norm() > 1e-6);
        let lhs = lorentz_inner(&mk(&(a * &u + b * &v)), &mk(&w)).unwrap();
        let rhs = a * lorentz_inner(&mk(&u), &mk(&w)).unwrap()
            + b * lorentz_inner(&mk(&v), &mk(&w)).unwrap();
        let scale = u.norm().max(v.norm()) * w.norm() * (1.0 + a.abs() + b.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + scale));
    }

    #[test]
    fn causal_class_is_lorentz_invariant(
        (d, v, seed) in dim().prop_flat_map(|d| (Just(d), dvec(d + 2), 0u64..1000))
    ) {
        prop_assume!(v.norm() > 1e-3);
        let u = MinkVector::new(v).unwrap();
        // skip near-light-like inputs: the class is tolerance-gated there
        prop_assume!(u.norm_sq().abs() > 1e-3 * u.euclidean_norm().powi(2));
        let g = random_lorentz(seed, d + 2);
        prop_assert_eq!(causal_class(&u), causal_class(&g.apply(&u).unwrap()));
    }

    #[test]
    fn hyperbolic_distance_is_lorentz_invariant(
        (d, x, y, seed) in dim().prop_flat_map(|d| (Just(d), dvec(d + 1), dvec(d + 1), 0u64..1000))
    ) {
        // build sheet points (s, sqrt(1 + |s|^2)) directly
        let sheet = |s: &DVector<f64>| {
            let mut c = DVector::zeros(s.len() + 1);
            c.rows_mut(0, s.len()).copy_from(s);
            c[s.len()] = (1.0 + s.norm_squared()).sqrt();
            MinkVector::new(c).unwrap()
        };
        let (px, py) = (sheet(&x), sheet(&y));
        let g = random_lorentz(seed, d + 2);
        prop_assume!(g.matrix().iter().all(|x| x.abs() <= 1e3));
        let before = hyperbolic_distance(&px, &py).unwrap();
        let after = hyperbolic_distance(&g.apply(&px).unwrap(), &g.apply(&py).unwrap()).unwrap();
        // compare on the cosh scale: acosh is steep near 1
        prop_assert!((before.cosh() - after.cosh()).abs() <= 1e-6 * before.cosh());
    }

    #[test]
    fn relation_matches_euclidean_predicate(
        (d, b1, b2) in dim().prop_flat_map(|d| (Just(d), sphere(d), sphere(d)))
    ) {
        let _ = d;
        let params = |b: &OrientedBall| match b {
            OrientedBall::Sphere { center, radius, .. } => (center.clone(), *radius),
            _ => unreachable!(),
        };
        let (c1, r1) = params(&b1);
        let (c2, r2) = params(&b2);
        let dist = (&c1 - &c2).norm();
        // keep clear of tangency and identical boundaries
        prop_assume!((dist - (r1 + r2)).abs() > 1e-3);
        prop_assume!((dist - (r1 - r2).abs()).abs() > 1e-3);
        let rel = relation_of_balls(&b1, &b2).unwrap();
        let intersecting = dist < r1 + r2 && dist > (r1 - r2).abs();
        match rel {
            BallRelation::Intersecting { .. } => prop_assert!(intersecting),
            BallRelation::BoundariesDisjoint { .. } => prop_assert!(!intersecting),
            BallRelation::Tangent => prop_assert!(false, "tangency excluded by assumption"),
        }
    }

    #[test]
    fn ball_lifts_are_spacelike_point_lifts_lightlike(
        (d, b, p) in dim().prop_flat_map(|d| (Just(d), ball(d), point(d)))
    ) {
        let _ = d;
        let v = lift_ball(&b);
        prop_assert!((v.norm_sq() - 1.0).abs() <= 1e-9);
        let u = lift_point(&p);
        prop_assert_eq!(causal_class(u.vector()), CausalClass::LightLike);
        prop_assert!(u.vector().time() > 0.0);
    }

    #[test]
    fn span_classification_is_lorentz_invariant(
        (d, bs, seed) in dim().prop_flat_map(|d| {
            (Just(d), prop::collection::vec(ball(d), 2..6), 0u64..1000)
        })
    ) {
        let lifts: Vec<_> = bs.iter().map(|b| lift_ball(b)).collect();
        let Ok(before) = classify_span(&lifts) else { return Ok(()) };
        let g = random_lorentz(seed, d + 2);
        let moved: Vec<_> = lifts.iter().map(|v| g.apply(v).unwrap()).collect();
        let Ok(after) = classify_span(&moved) else { return Ok(()) };
        prop_assert_eq!(before.dim, after.dim);
        // kind can flicker only for near-degenerate spans; require agreement
        // when the original Gram is comfortably conditioned
        prop_assert_eq!(before.kind, after.kind);
    }
}
