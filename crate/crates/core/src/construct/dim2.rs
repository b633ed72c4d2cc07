use crate::error::{Error, Result};
use crate::motion::{pt, RigidMotion};
use crate::raster::{grid_for, rasterize, sweep, GridSpec, RasterMask};
use crate::report::{ConstructionReport, InequalityCheck};
use crate::{Movement, Point, Primitive, Scene};

use super::cantor::CantorSpec;

/// `{x > 0, y ∈ F, |p| ∈ E}` as one patch per pair of intervals.
pub fn dimension2_example(e: &CantorSpec, f: &CantorSpec) -> Result<Scene> {
    e.validate()?;
    f.validate()?;
    if !(e.interval.0 >= 1.0 && e.interval.1 <= 2.0 && f.interval.0 >= 0.0 && f.interval.1 <= 0.5) {
        return Err(Error::Precondition("need E ⊆ [1, 2] and F ⊆ [0, 1/2]".into()));
    }
    let mut prims = Vec::new();
    for (y0, y1) in f.intervals() {
        for (r0, r1) in e.intervals() {
            prims.push(Primitive::Patch { pose: RigidMotion::identity(), y0, y1, r0, r1 });
        }
    }
    Ok(Scene::new(prims))
}

/// `c = r v` with `|v| = 1`, taking `v = 1` when `c = 0`.
fn split(alpha: &RigidMotion) -> (f64, Point) {
    let c = alpha.c();
    let r = c.norm();
    (r, if r > 0.0 { c / r } else { pt(1.0, 0.0) })
}

/// Rotate about the origin onto `v·A`, translate by `c`, rotate about `c` onto `u·A + c`.
pub fn dimension2_movement(alpha: &RigidMotion) -> Movement {
    let (_, v) = split(alpha);
    let c = alpha.c();
    let stages: Vec<Movement> = [
        Movement::rotation(pt(0.0, 0.0), v.arg()),
        Movement::translation(c),
        Movement::rotation(c, (alpha.u() / v).arg()),
    ]
    .into_iter()
    .filter(|m| *m != Movement::Constant)
    .collect();
    match stages.len() {
        0 => Movement::Constant,
        1 => stages.into_iter().next().unwrap(),
        _ => Movement::Chain { stages },
    }
}

/// `B ∪ v·{y ∈ F, 0 ≤ x ≤ 2 + r} ∪ (B + c)` where `B = {|p| ∈ E}`.
pub fn dimension2_cover(e: &CantorSpec, f: &CantorSpec, alpha: &RigidMotion) -> Scene {
    let (r, v) = split(alpha);
    let c = alpha.c();
    let reach = e.interval.1 + r;
    let mut prims = Vec::new();
    for (r0, r1) in e.intervals() {
        prims.push(Primitive::Annulus { center: pt(0.0, 0.0), inner: r0, outer: r1 });
        prims.push(Primitive::Annulus { center: c, inner: r0, outer: r1 });
    }
    for (y0, y1) in f.intervals() {
        prims.push(Primitive::Rectangle {
            center: v * pt(reach / 2.0, (y0 + y1) / 2.0),
            direction: v,
            length: reach,
            width: y1 - y0,
        });
    }
    Scene::new(prims)
}

/// Sweeps the example and checks the sweep against the dilated cover.
pub fn dimension2_report(
    e: &CantorSpec,
    f: &CantorSpec,
    alpha: &RigidMotion,
    cell: f64,
    steps: usize,
) -> Result<(RasterMask, ConstructionReport)> {
    let a = dimension2_example(e, f)?;
    let m = dimension2_movement(alpha);
    let cover = dimension2_cover(e, f, alpha);
    let g1 = grid_for(&m, &a, 4.0 * cell, cell)?;
    let (lo, hi) = cover.bbox().expect("nonempty");
    let lo = pt(lo.re.min(g1.min.re), lo.im.min(g1.min.im));
    let hi = pt(hi.re.max(g1.max.re), hi.im.max(g1.max.im));
    let grid = GridSpec::around(lo, hi, 4.0 * cell, cell)?;
    let mask = sweep(&m, &a, steps.max(2), &grid)?;
    let cover_mask = rasterize(&cover, &grid)?.neighborhood(2.0 * cell);
    let outside = mask.difference(&cover_mask)?.count();
    let end_gap = m.eval(1.0).distance(alpha);
    let mut r = ConstructionReport::new("dimension2_example");
    r.measure("depth_e", e.depth)
        .measure("depth_f", f.depth)
        .measure("patches", a.primitives.len())
        .measure("cell", cell)
        .measure("area", mask.area())
        .measure("a_area", rasterize(&a, &grid)?.area())
        .measure("cover_area", cover_mask.area())
        .measure("cells_outside_cover", outside)
        .verdict("ends_at_alpha", InequalityCheck::new(end_gap, 1e-9, 0.0))
        .flag("sweep_inside_cover", outside == 0);
    Ok((mask, r))
}
