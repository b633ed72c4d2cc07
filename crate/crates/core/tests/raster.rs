use std::f64::consts::{FRAC_1_SQRT_2, PI};

use kakeya_core::motion::pt;
use kakeya_core::raster::{connected_components, grid_for, rasterize, sweep, sweep_with_stats};
use kakeya_core::{Error, GridSpec, Movement, Point, Primitive, RasterMask, RigidMotion, Scene};
use proptest::prelude::*;

fn unit_grid(h: f64) -> GridSpec {
    GridSpec::around(pt(-2.0, -2.0), pt(2.0, 2.0), 0.0, h).unwrap()
}

#[test]
fn disc_area_within_dilation() {
    let h = 0.01;
    let a = rasterize(&Scene::new(vec![Primitive::Disc { center: pt(0.1, 0.2), radius: 1.0 }]), &unit_grid(h))
        .unwrap()
        .area();
    let r_out = 1.0 + h * FRAC_1_SQRT_2;
    // every set cell has its center within r_out; every cell centered within 1 is set
    assert!(a <= PI * (r_out + h).powi(2) && a >= PI * (1.0 - h).powi(2), "{a}");
}

#[test]
fn translated_square_sweep_is_exact_hexagon() {
    let h = 0.005;
    let sq = Scene::new(vec![Primitive::Polygon { vertices: vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)] }]);
    let m = Movement::translation(pt(1.0, 1.0));
    let grid = grid_for(&m, &sq, 0.05, h).unwrap();
    let (mask, stats) = sweep_with_stats(&m, &sq, 2, &grid).unwrap();
    assert_eq!((stats.exact_slides, stats.frames), (1, 0));
    // square plus the band it drags: width √2 across the slide, length √2
    let exact = 3.0;
    let band = 4.0 * h * (4.0 + 2.0 * 2f64.sqrt());
    assert!((mask.area() - exact).abs() <= band, "{}", mask.area());
}

#[test]
fn sweep_contains_both_ends_and_leaves_grid_with_error() {
    let seg = Scene::new(vec![Primitive::segment(pt(0.0, 0.0), pt(1.0, 0.0))]);
    let m = Movement::rotation(pt(0.0, 0.0), PI / 2.0);
    let grid = grid_for(&m, &seg, 0.05, 0.01).unwrap();
    let w = sweep(&m, &seg, 16, &grid).unwrap();
    let end = seg.transform(&RigidMotion::rotation(pt(0.0, 0.0), PI / 2.0));
    assert!(rasterize(&seg, &grid).unwrap().is_subset_of(&w).unwrap());
    assert!(rasterize(&end, &grid).unwrap().is_subset_of(&w).unwrap());
    // quarter disc of radius 1, enlarged by at most a 2h band along its perimeter
    let perimeter = 2.0 + PI / 2.0;
    assert!(w.area() >= PI / 4.0 && w.area() <= PI / 4.0 + 2.0 * 0.01 * perimeter, "{}", w.area());
    let small = GridSpec::around(pt(0.0, -0.1), pt(1.0, 0.1), 0.0, 0.01).unwrap();
    assert!(matches!(sweep(&m, &seg, 16, &small), Err(Error::SceneOutOfBounds { .. })));
}

#[test]
fn annulus_splits_disc_into_two_components() {
    let grid = unit_grid(0.01);
    let domain = rasterize(&Scene::new(vec![Primitive::Disc { center: pt(0.0, 0.0), radius: 1.8 }]), &grid).unwrap();
    let ring = rasterize(&Scene::new(vec![Primitive::Annulus { center: pt(0.0, 0.0), inner: 0.8, outer: 0.9 }]), &grid).unwrap();
    let lab = connected_components(&domain, &ring).unwrap();
    assert_eq!(lab.count(), 2);
    let other = RasterMask::new(unit_grid(0.02));
    assert!(matches!(connected_components(&domain, &other), Err(Error::GridMismatch)));
}

#[test]
fn mask_set_algebra() {
    let grid = unit_grid(0.02);
    let a = rasterize(&Scene::new(vec![Primitive::Disc { center: pt(-0.3, 0.0), radius: 0.5 }]), &grid).unwrap();
    let b = rasterize(&Scene::new(vec![Primitive::Disc { center: pt(0.3, 0.0), radius: 0.5 }]), &grid).unwrap();
    let mut u = a.clone();
    u.union_with(&b).unwrap();
    let i = a.intersection(&b).unwrap();
    assert_eq!(u.count() + i.count(), a.count() + b.count());
    assert_eq!(a.difference(&b).unwrap().count(), a.count() - i.count());
    assert!(a.is_subset_of(&a.neighborhood(0.02)).unwrap());
    assert!(a.neighborhood(0.1).count() > a.neighborhood(0.02).count());
}

#[test]
fn svg_and_pgm_shapes() {
    let grid = GridSpec::new(pt(0.0, 0.0), pt(1.0, 0.5), 0.1).unwrap();
    let m = rasterize(&Scene::new(vec![Primitive::segment(pt(0.0, 0.25), pt(1.0, 0.25))]), &grid).unwrap();
    let pgm = m.to_pgm();
    assert!(pgm.starts_with(format!("P5\n{} {}\n255\n", grid.cols(), grid.rows()).as_bytes()));
    assert!(m.to_svg(None, 100).starts_with("<svg"));
}

fn polygon() -> impl Strategy<Value = Scene> {
    (0.1..1.0f64, 0.1..1.0f64, 0.0..PI).prop_map(|(w, l, a)| {
        Scene::new(vec![Primitive::Rectangle { center: pt(0.0, 0.0), direction: Point::from_polar(1.0, a), length: l, width: w }])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn area_is_nearly_translation_invariant(s in polygon(), dx in -1.0..1.0f64, dy in -1.0..1.0f64) {
        let h = 0.01;
        let grid = GridSpec::around(pt(-3.0, -3.0), pt(3.0, 3.0), 0.0, h).unwrap();
        let a = rasterize(&s, &grid).unwrap().area();
        let b = rasterize(&s.transform(&RigidMotion::translation(pt(dx, dy))), &grid).unwrap().area();
        // both are within one boundary band of the true area
        prop_assert!((a - b).abs() <= 2.0 * h * 4.0);
    }

    #[test]
    fn sweep_area_grows_with_the_movement(s in polygon(), phi in 0.1..1.5f64) {
        let h = 0.01;
        let short = Movement::rotation(pt(0.5, 0.0), phi / 2.0);
        let long = Movement::rotation(pt(0.5, 0.0), phi);
        let grid = grid_for(&long, &s, 0.1, h).unwrap();
        let a = sweep(&short, &s, 8, &grid).unwrap();
        let b = sweep(&long, &s, 8, &grid).unwrap();
        prop_assert!(a.is_subset_of(&b.neighborhood(h)).unwrap());
        prop_assert!(rasterize(&s, &grid).unwrap().is_subset_of(&a).unwrap());
    }

    #[test]
    fn area_between_set_and_its_dilation(s in polygon(), h in 0.005..0.05f64) {
        let grid = GridSpec::around(pt(-1.0, -1.0), pt(1.0, 1.0), 0.0, h).unwrap();
        let Primitive::Rectangle { length, width, .. } = s.primitives[0] else { unreachable!() };
        // set cells cover the rectangle and lie within √2 h of it
        let r = 2f64.sqrt() * h;
        let a = rasterize(&s, &grid).unwrap().area();
        prop_assert!(a >= length * width - 1e-12);
        prop_assert!(a <= length * width + 2.0 * r * (length + width) + PI * r * r + 1e-12);
    }
}
