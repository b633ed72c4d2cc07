use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::motion::{pt, RigidMotion};
use crate::raster::geom::polygons_union_area;
use crate::raster::RasterMask;
use crate::report::{ConstructionReport, InequalityCheck};
use crate::{Point, Primitive, Scene};

use super::perron::{perron_alpha, perron_shifts};
use super::schedule::{scene_gap, NeedleBuilder, NeedleSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeedleOptions {
    /// Scanline spacing used to measure tree areas when picking the depth.
    pub cell: f64,
    /// Number of trees; each covers `π / trees` of directions.
    pub trees: usize,
    pub k_max: u32,
    /// Share of the budget the trees may take.
    pub tree_share: f64,
}

impl Default for NeedleOptions {
    fn default() -> Self {
        Self { cell: 1e-3, trees: 3, k_max: 7, tree_share: 0.8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeedlePlan {
    pub eps: f64,
    pub k: u32,
    pub schedule: NeedleSchedule,
    /// Union of all tree pieces.
    pub trees: Scene,
    /// Scanline union area of `trees`; the in-piece rotations stay inside it.
    pub tree_area: f64,
    /// Exact area of the sectors swept by the paid join rotations.
    pub join_area: f64,
    pub joins: usize,
    pub budget_met: bool,
}

/// One tree in its own frame: apex at 0, base on `y = −1`, half-angle `π / (2m)`.
struct Tree {
    /// Base points `x_0 < … < x_N`.
    xs: Vec<f64>,
    /// Apex shifts.
    tau: Vec<f64>,
}

impl Tree {
    fn new(k: u32, half: f64) -> Self {
        let n = 1usize << k;
        let base = 2.0 * half.tan();
        let xs = (0..=n).map(|i| -base / 2.0 + base * i as f64 / n as f64).collect();
        let tau = perron_shifts(k, perron_alpha(k)).into_iter().map(|t| t * base).collect();
        Self { xs, tau }
    }

    fn pieces(&self) -> Vec<[Point; 3]> {
        (0..self.tau.len())
            .map(|i| [pt(self.xs[i] + self.tau[i], -1.0), pt(self.xs[i + 1] + self.tau[i], -1.0), pt(self.tau[i], 0.0)])
            .collect()
    }

    fn centroid(&self) -> Point {
        let p = self.pieces();
        p.iter().map(|t| (t[0] + t[1] + t[2]) / 3.0).sum::<Point>() / p.len() as f64
    }

    fn dir(&self, i: usize) -> Point {
        let d = pt(self.xs[i], -1.0);
        d / d.norm()
    }
}

fn layout(k: u32, m: usize) -> (Tree, Vec<RigidMotion>, Scene) {
    let tree = Tree::new(k, PI / (2.0 * m as f64));
    let c = tree.centroid();
    let frames: Vec<RigidMotion> = (0..m)
        .map(|j| RigidMotion::rotation(pt(0.0, 0.0), j as f64 * PI / m as f64).compose(&RigidMotion::translation(-c)))
        .collect();
    let mut prims = Vec::new();
    for f in &frames {
        for p in tree.pieces() {
            prims.push(Primitive::Polygon { vertices: p.iter().map(|v| f.apply(*v)).collect() });
        }
    }
    (tree, frames, Scene::new(prims))
}

/// Union area of the tree pieces sampled on scanlines `cell` apart.
fn tree_area(scene: &Scene, cell: f64) -> f64 {
    let polys: Vec<Vec<Point>> = scene
        .primitives
        .iter()
        .filter_map(|p| match p {
            Primitive::Polygon { vertices } => Some(vertices.clone()),
            _ => None,
        })
        .collect();
    let (lo, hi) = scene.bbox().expect("nonempty");
    polygons_union_area(&polys, ((hi.im - lo.im) / cell).ceil() as usize)
}

/// Reverses a unit needle inside `trees` rotated copies of a Perron tree, linked by Pál joins.
///
/// The needle pivots about each piece's apex across the piece's angle. Consecutive
/// pieces share an edge direction, so a join only has to shift the needle sideways.
/// Each join first tilts back into the piece just swept (area already paid), slides
/// along the tilted line, tilts forward again (a sector of area `θ L² / 2`), and slides
/// along its own line. Join angles follow `θ_j ∝ √d_j`, which minimizes the total slide
/// length for a fixed total sector area.
pub fn needle_reversal_plan(eps: f64, opts: &NeedleOptions) -> Result<NeedlePlan> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    if opts.trees < 2 || opts.k_max == 0 || !(opts.cell > 0.0) {
        return Err(Error::Invalid("needle options need trees ≥ 2, k_max ≥ 1 and cell > 0".into()));
    }
    let m = opts.trees;
    let len = 1.0;
    let mut chosen = None;
    for k in 1..=opts.k_max {
        let (tree, frames, scene) = layout(k, m);
        let area = tree_area(&scene, opts.cell);
        let last = k == opts.k_max;
        if area <= opts.tree_share * eps || last {
            chosen = Some((k, tree, frames, scene, area));
            break;
        }
    }
    let (k, tree, frames, trees, tree_area) = chosen.expect("k_max ≥ 1");
    let n = tree.tau.len();

    // poses: (apex, start direction, piece angle) in sweep order
    let mut pieces = Vec::with_capacity(m * n);
    for f in &frames {
        for i in 0..n {
            let turn = (tree.dir(i + 1) * tree.dir(i).conj()).arg();
            pieces.push((f.apply(pt(tree.tau[i], 0.0)), f.u() * tree.dir(i), turn));
        }
    }
    let (tail0, dir0, _) = pieces[0];
    let head0 = tail0 + dir0 * len;

    // lateral offsets of every join, including the closing one onto the reversed start
    let mut offsets = Vec::with_capacity(pieces.len());
    for w in pieces.windows(2) {
        let ((a, d, turn), (b, _, _)) = (w[0], w[1]);
        let d_end = d * Point::from_polar(1.0, turn);
        offsets.push(((b - a) * d_end.conj()).im.abs());
    }
    let (a_last, d_last, t_last) = *pieces.last().unwrap();
    let d_end = d_last * Point::from_polar(1.0, t_last);
    offsets.push(((head0 - a_last) * d_end.conj()).im.abs());

    let join_budget = (1.0 - opts.tree_share) * eps;
    let root_sum: f64 = offsets.iter().map(|d| d.sqrt()).sum();
    let theta_for = |j: usize, cap: f64| -> f64 {
        if offsets[j] == 0.0 || root_sum == 0.0 {
            return 0.0;
        }
        let e = join_budget * offsets[j].sqrt() / root_sum;
        (2.0 * e / (len * len)).min(cap)
    };

    let mut b = NeedleBuilder::new(tail0, dir0, len);
    let mut join_area = 0.0;
    let mut joins = 0;
    for (idx, &(apex, _, turn)) in pieces.iter().enumerate() {
        if idx > 0 {
            let cap = pieces[idx - 1].2;
            let th = theta_for(idx - 1, cap);
            b.pal_shift(apex, -1.0, th);
            join_area += th * len * len / 2.0;
            joins += 1;
        }
        b.rotate(turn);
    }
    let th = theta_for(offsets.len() - 1, t_last);
    b.pal_shift(head0, -1.0, th);
    join_area += th * len * len / 2.0;
    joins += 1;

    let schedule = b.finish(eps);
    let budget_met = tree_area + join_area <= eps;
    Ok(NeedlePlan { eps, k, schedule, trees, tree_area, join_area, joins, budget_met })
}

pub fn needle_reversal_schedule(eps: f64) -> Result<NeedleSchedule> {
    needle_reversal_plan(eps, &NeedleOptions::default()).map(|p| p.schedule)
}

/// Sweeps the plan at `cell` and reports both the planned budget and the raster verdict.
pub fn needle_report(plan: &NeedlePlan, cell: f64, steps: usize) -> Result<(RasterMask, ConstructionReport)> {
    let (mask, sched) = plan.schedule.measure(cell, steps)?;
    let start = &plan.schedule.start;
    let reversed = match start.primitives.as_slice() {
        [Primitive::Segment { a, b }] => Scene::new(vec![Primitive::segment(*b, *a)]),
        _ => return Err(Error::Invalid("needle schedule must move a single segment".into())),
    };
    let end_gap = scene_gap(&plan.schedule.end_scene(), &reversed);
    let mut r = ConstructionReport::new("needle_reversal");
    r.measured = sched.measured;
    r.measure("eps", plan.eps)
        .measure("k", plan.k)
        .measure("trees", plan.trees.primitives.len())
        .measure("tree_area", plan.tree_area)
        .measure("join_area", plan.join_area)
        .measure("joins", plan.joins)
        .measure("budget_met", plan.budget_met)
        .measure("end_gap", end_gap);
    r.verdicts = sched.verdicts;
    r.verdict("area_budget", InequalityCheck::new(plan.tree_area + plan.join_area, plan.eps, 0.0))
        .verdict("end_pose_reversed", InequalityCheck::new(end_gap, 1e-9, 0.0));
    Ok((mask, r))
}
