use std::f64::consts::PI;

use kakeya_core::construct::{
    dimension2_cover, dimension2_example, dimension2_movement, dimension2_report, needle_report, needle_reversal_plan,
    pal_join, pal_join_theta, perron_pieces, perron_shifts, perron_tree, trivial_concentric_mover, trivial_parallel_mover,
    unit_triangle, CantorSpec, NeedleOptions,
};
use kakeya_core::motion::pt;
use kakeya_core::{Error, Movement, Primitive, RigidMotion, Scene};
use proptest::prelude::*;

#[test]
fn cantor_counts_and_measure() {
    let c = CantorSpec::middle_thirds(1.0, 2.0, 3);
    let iv = c.intervals();
    assert_eq!(iv.len(), 8);
    assert!(iv.iter().all(|(a, b)| ((b - a) - 1.0 / 27.0).abs() < 1e-15));
    assert!((c.measure() - (2.0f64 / 3.0).powi(3)).abs() < 1e-15);
    assert!(c.contains(1.0, 0.0) && c.contains(2.0, 0.0) && !c.contains(1.5, 1e-9));
    assert!(CantorSpec::new(0.0, 1.0, 0.6, 2).is_err());
}

#[test]
fn perron_shifts_by_hand() {
    // k = 1, α = 2/3: the right half moves left by (1 − α) of the base
    assert_eq!(perron_shifts(1, 2.0 / 3.0).len(), 2);
    let t = perron_shifts(1, 2.0 / 3.0);
    assert!(t[0] == 0.0 && (t[1] + 1.0 / 3.0).abs() < 1e-15);
    // k = 2, α = 5/7: −1/7 inside each pair, then −17/49 for the right pair
    let t = perron_shifts(2, 5.0 / 7.0);
    let want = [0.0, -1.0 / 7.0, -17.0 / 49.0, -24.0 / 49.0];
    assert!(t.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15), "{t:?}");
}

#[test]
fn perron_pieces_keep_slopes() {
    let pieces = perron_pieces(4, &unit_triangle()).unwrap();
    assert_eq!(pieces.len(), 16);
    for (i, p) in pieces.iter().enumerate() {
        // each piece is a translate of the i-th sub-triangle
        let d = p[2] - pt(0.5, 1.0);
        assert!((p[0] - d - pt(i as f64 / 16.0, 0.0)).norm() < 1e-12);
        assert!(d.im == 0.0);
    }
    assert!(matches!(perron_pieces(0, &unit_triangle()), Err(Error::Precondition(_))));
    assert!(perron_pieces(2, &Scene::default()).is_err());
}

#[test]
fn perron_golden_k5() {
    let (_, r) = perron_tree(5, &unit_triangle(), 1e-3).unwrap();
    let a = r.measured_f64("area").unwrap();
    assert!((a / 0.166424 - 1.0).abs() <= 0.02, "{a}");
    assert!(r.pass());
}

#[test]
fn pal_join_shape() {
    let s = pal_join(1.0, 0.5, 0.1).unwrap();
    assert_eq!(s.stages.len(), 3);
    s.validate().unwrap();
    let th = pal_join_theta(1.0, 0.5, 0.1);
    assert!((th - 0.1 / (2.0 * 2.25)).abs() < 1e-15);
    let Primitive::Segment { a, b } = s.end_scene().primitives[0] else { panic!() };
    assert!((a - pt(0.5 / th.tan(), 0.5)).norm() < 1e-12);
    assert!((b - a - pt(1.0, 0.0)).norm() < 1e-12);
    assert!(pal_join(1.0, 0.0, 0.1).unwrap().stages.is_empty());
    assert!(matches!(pal_join(0.0, 1.0, 0.1), Err(Error::Precondition(_))));
}

#[test]
fn pal_join_area_within_budget() {
    let s = pal_join(1.0, 1.0, 0.1).unwrap();
    let (_, r) = s.measure(2e-3, 16).unwrap();
    assert!(r.pass(), "{r:?}");
    // sectors swept: 2 · θ L² / 2
    let sectors = pal_join_theta(1.0, 1.0, 0.1);
    assert!(r.measured_f64("area").unwrap() >= sectors);
}

#[test]
fn trivial_movers_check_their_scenes() {
    let segs = Scene::new(vec![Primitive::segment(pt(0.0, 0.0), pt(1.0, 0.0)), Primitive::segment(pt(0.0, 1.0), pt(1.0, 1.1))]);
    assert!(matches!(trivial_parallel_mover(&segs, pt(1.0, 0.0), 1.0), Err(Error::NotParallel { index: 1, .. })));
    let disc = Scene::new(vec![Primitive::Disc { center: pt(0.0, 0.0), radius: 1.0 }]);
    assert!(matches!(trivial_parallel_mover(&disc, pt(1.0, 0.0), 1.0), Err(Error::NotParallel { index: 0, .. })));
    let m = trivial_parallel_mover(&Scene::new(vec![segs.primitives[0].clone()]), pt(2.0, 0.0), 3.0).unwrap();
    assert_eq!(m.eval(1.0), RigidMotion::translation(pt(3.0, 0.0)));
    let arcs = Scene::new(vec![Primitive::Arc { center: pt(1.0, 0.0), radius: 1.0, start: 0.0, sweep: 1.0 }]);
    assert!(matches!(trivial_concentric_mover(&arcs, pt(0.0, 0.0), 1.0), Err(Error::NotConcentric { index: 0, .. })));
    let m = trivial_concentric_mover(&arcs, pt(1.0, 0.0), 4.0).unwrap();
    assert!(m.eval(1.0).distance(&RigidMotion::rotation(pt(1.0, 0.0), 4.0)) < 1e-12);
}

#[test]
fn needle_small_plan_reverses() {
    let opts = NeedleOptions { k_max: 2, cell: 4e-3, ..NeedleOptions::default() };
    let plan = needle_reversal_plan(2.0, &opts).unwrap();
    plan.schedule.validate().unwrap();
    assert!(plan.budget_met);
    let (_, r) = needle_report(&plan, 4e-3, 8).unwrap();
    assert!(r.get("end_pose_reversed").unwrap().pass);
    assert!(r.get("pose_compatible").unwrap().pass);
    assert!(r.pass(), "{r:?}");
    assert!(needle_reversal_plan(0.0, &opts).is_err());
}

#[test]
fn dimension2_depth0_is_inside_cover() {
    let e = CantorSpec::middle_thirds(1.0, 2.0, 0);
    let f = CantorSpec::middle_thirds(0.0, 0.5, 0);
    let alpha = RigidMotion::rotation(pt(0.0, 0.0), PI / 3.0).compose(&RigidMotion::translation(pt(1.0, 1.0)));
    assert_eq!(dimension2_example(&e, &f).unwrap().primitives.len(), 1);
    assert!(dimension2_movement(&alpha).eval(1.0).distance(&alpha) < 1e-12);
    assert_eq!(dimension2_cover(&e, &f, &alpha).primitives.len(), 3);
    let (_, r) = dimension2_report(&e, &f, &alpha, 1e-2, 8).unwrap();
    assert!(r.pass(), "{r:?}");
    let bad = CantorSpec::middle_thirds(0.0, 2.0, 1);
    assert!(matches!(dimension2_example(&bad, &f), Err(Error::Precondition(_))));
    assert_eq!(dimension2_movement(&RigidMotion::identity()), Movement::Constant);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension2_movement_ends_at_alpha(x in -3.0..3.0f64, y in -3.0..3.0f64, phi in -3.0..3.0f64) {
        let alpha = RigidMotion::new(kakeya_core::Point::from_polar(1.0, phi), pt(x, y)).unwrap();
        prop_assert!(dimension2_movement(&alpha).eval(1.0).distance(&alpha) < 1e-9);
    }

    #[test]
    fn perron_shifts_never_move_right(k in 1u32..9) {
        let t = perron_shifts(k, 1.0 - 2.0 / (k as f64 + 5.0));
        prop_assert_eq!(t.len(), 1usize << k);
        prop_assert!(t[0] == 0.0 && t.iter().all(|s| *s <= 0.0));
        prop_assert!(t.windows(2).all(|w| w[1] - w[0] <= 1e-15));
    }

    #[test]
    fn pal_join_ends_shifted(l in 0.1..3.0f64, d in 0.01..3.0f64, eps in 0.01..1.0f64) {
        let s = pal_join(l, d, eps).unwrap();
        let Primitive::Segment { a, b } = s.end_scene().primitives[0] else { unreachable!() };
        prop_assert!((a.im - d).abs() < 1e-9 && (b - a - pt(l, 0.0)).norm() < 1e-9);
        let th = pal_join_theta(l, d, eps);
        prop_assert!(th * l * l <= eps / 2.0 + 1e-15);
    }
}
