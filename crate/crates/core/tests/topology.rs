use std::f64::consts::PI;

use kakeya_core::motion::pt;
use kakeya_core::raster::rasterize;
use kakeya_core::topology::{
    classify_component, components_near, default_tol, lemma5_obstruction, separation_witness, winding_number,
    Classification, DiscRegion, ObstructionCase, Polyline,
};
use kakeya_core::{Error, GridSpec, Movement, Point, Primitive, RigidMotion, Scene};
use proptest::prelude::*;

fn polygon(n: usize, center: Point, r: f64) -> Polyline {
    Polyline::new((0..n).map(|k| center + Point::from_polar(r, 2.0 * PI * k as f64 / n as f64)).collect(), true).unwrap()
}

#[test]
fn square_windings() {
    let sq = Polyline::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)], true).unwrap();
    assert!((winding_number(&sq, pt(0.5, 0.5)).unwrap() - 2.0 * PI).abs() < 1e-12);
    assert!(winding_number(&sq, pt(2.0, 0.5)).unwrap().abs() < 1e-12);
    assert!((winding_number(&sq.reversed(), pt(0.5, 0.5)).unwrap() + 2.0 * PI).abs() < 1e-12);
    assert!(matches!(winding_number(&sq, pt(0.5, 0.0)), Err(Error::PointOnCurve { .. })));
}

#[test]
fn separation_of_two_halves() {
    // upper arc from 1 to −1, lower arc back to 1
    let up = Polyline::new((0..=32).map(|k| Point::from_polar(1.0, PI * k as f64 / 32.0)).collect(), false).unwrap();
    let down = Polyline::new((0..=32).map(|k| Point::from_polar(1.0, PI + PI * k as f64 / 32.0)).collect(), false).unwrap();
    let w = separation_witness(&up, &down, pt(0.0, 0.0), pt(3.0, 0.0)).unwrap();
    assert!(w.separated);
    let w = separation_witness(&up, &down, pt(3.0, 0.0), pt(0.0, 4.0)).unwrap();
    assert!(!w.separated);
}

#[test]
fn classify_l_shape_is_nontrivial() {
    let mut pts: Vec<Point> = (0..=50).map(|k| pt(k as f64 / 50.0, 0.0)).collect();
    pts.extend((1..=50).map(|k| pt(0.0, k as f64 / 50.0)));
    let tol = default_tol(&pts);
    let r = classify_component(&pts, tol).unwrap();
    assert_eq!(r.class, Classification::Nontrivial);
    // brute force: no line through two samples fits all samples within tol
    let best_line = pts
        .iter()
        .flat_map(|a| pts.iter().filter(move |b| (*b - a).norm() > 0.1).map(move |b| (a, b)))
        .map(|(a, b)| {
            let d = (b - a) / (b - a).norm();
            pts.iter().map(|p| ((p - a) * d.conj()).im.abs()).fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    assert!(best_line > tol && r.line_residual > tol);
    assert!(r.circle_residual.unwrap() > tol);
}

#[test]
fn classify_rejects_empty() {
    assert!(classify_component(&[], 1e-3).is_err());
    assert!(classify_component(&[pt(0.0, 0.0)], 0.0).is_err());
}

fn bar(movement: Movement, probe: Point) -> ObstructionCase {
    ObstructionCase {
        obstacle: Scene::new(vec![Primitive::segment(pt(0.0, -1.0), pt(0.0, 1.0))]),
        disc: DiscRegion { center: pt(0.0, 0.0), radius: 1.0 },
        probe: Scene::new(vec![Primitive::Disc { center: probe, radius: 0.1 }]),
        movement,
        t_end: 1.0,
    }
}

#[test]
fn bar_splits_the_disc() {
    let g = GridSpec::around(pt(-1.0, -1.0), pt(1.0, 1.0), 0.05, 0.01).unwrap();
    let r = lemma5_obstruction(&bar(Movement::translation(pt(-0.8, 0.0)), pt(-0.4, 0.0)), &g).unwrap();
    assert_eq!(r.measured_f64("components").unwrap(), 2.0);
    assert!(r.pass());
    assert!(matches!(
        lemma5_obstruction(&bar(Movement::Constant, pt(0.0, 0.5)), &g),
        Err(Error::Precondition(_))
    ));
    let mut late = bar(Movement::translation(pt(-0.8, 0.0)), pt(-0.4, 0.0));
    late.t_end = 1.5;
    assert!(lemma5_obstruction(&late, &g).is_err());
}

#[test]
fn orbiting_probe_stays_in_one_component() {
    let case = ObstructionCase {
        obstacle: Scene::new(vec![Primitive::Disc { center: pt(0.0, 0.0), radius: 0.1 }]),
        disc: DiscRegion { center: pt(0.0, 0.0), radius: 1.0 },
        probe: Scene::new(vec![Primitive::Disc { center: pt(0.5, 0.0), radius: 0.05 }]),
        movement: Movement::rotation(pt(0.0, 0.0), PI),
        t_end: 1.0,
    };
    let g = GridSpec::around(pt(-1.0, -1.0), pt(1.0, 1.0), 0.05, 0.01).unwrap();
    let r = lemma5_obstruction(&case, &g).unwrap();
    assert_eq!(r.measured["hypothesis_met"], false);
    assert!(r.verdicts.is_empty() && r.pass());
    let dom = rasterize(&Scene::new(vec![Primitive::Disc { center: pt(0.0, 0.0), radius: 0.99 }]), &g).unwrap();
    let obs = rasterize(&case.obstacle, &g).unwrap();
    assert_eq!(components_near(&dom, &obs, pt(0.0, 0.0), 0.5).unwrap(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closed_loops_wind_whole_turns(n in 3usize..40, cx in -2.0..2.0f64, cy in -2.0..2.0f64, r in 0.1..3.0f64,
                                     px in -6.0..6.0f64, py in -6.0..6.0f64) {
        let poly = polygon(n, pt(cx, cy), r);
        let p = pt(px, py);
        prop_assume!(poly.distance(p) > 1e-6);
        let w = winding_number(&poly, p).unwrap() / (2.0 * PI);
        prop_assert!((w - w.round()).abs() < 1e-9);
        // outside the circumscribed disc the loop does not wind
        if (p - pt(cx, cy)).norm() > r {
            prop_assert!(w.abs() < 1e-9);
        }
        let rev = winding_number(&poly.reversed(), p).unwrap();
        prop_assert!((rev + w * 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn open_chains_add(k in 2usize..20, px in -3.0..3.0f64, py in -3.0..3.0f64) {
        let pts: Vec<Point> = (0..=2 * k).map(|i| Point::from_polar(1.0 + 0.1 * i as f64, 0.3 * i as f64)).collect();
        let a = Polyline::new(pts[..=k].to_vec(), false).unwrap();
        let b = Polyline::new(pts[k..].to_vec(), false).unwrap();
        let whole = a.concat(&b).unwrap();
        let p = pt(px, py);
        prop_assume!(whole.distance(p) > 1e-6);
        let sum = winding_number(&a, p).unwrap() + winding_number(&b, p).unwrap();
        prop_assert!((winding_number(&whole, p).unwrap() - sum).abs() < 1e-9);
    }

    #[test]
    fn classification_ignores_rigid_motions(phi in -3.1..3.1f64, x in -10.0..10.0f64, y in -10.0..10.0f64, shape in 0usize..4) {
        let pts: Vec<Point> = match shape {
            0 => (0..80).map(|k| Point::from_polar(1.5, 2.0 * PI * k as f64 / 80.0)).collect(),
            1 => (0..80).map(|k| pt(2.0, 1.0) + Point::from_polar(1.0, 2.5 * k as f64 / 79.0)).collect(),
            2 => (0..80).map(|k| pt(k as f64 / 40.0, 0.3)).collect(),
            _ => (0..80).map(|k| pt(k as f64 / 40.0, (k as f64 / 40.0).powi(2))).collect(),
        };
        let g = RigidMotion::new(Point::from_polar(1.0, phi), pt(x, y)).unwrap();
        let moved: Vec<Point> = pts.iter().map(|p| g.apply(*p)).collect();
        let tol = default_tol(&pts);
        let a = classify_component(&pts, tol).unwrap();
        let b = classify_component(&moved, tol).unwrap();
        prop_assert_eq!(a.class, b.class);
        let want = [Classification::Circle, Classification::CircularArc, Classification::Segment, Classification::Nontrivial];
        prop_assert_eq!(a.class, want[shape]);
    }
}
