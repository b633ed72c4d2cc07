use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motion::{RigidMotion, CHAIN_TOL};
use crate::movement::{sample_times, Movement};
use crate::raster::{grid_for, sweep, RasterMask};
use crate::report::{ConstructionReport, InequalityCheck};
use crate::{Point, Primitive, Scene};

/// One leg of a schedule: `movement` applied to `scene`, the pose at the start of the leg.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub movement: Movement,
    pub scene: Scene,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeedleSchedule {
    pub start: Scene,
    pub stages: Vec<Stage>,
    pub total_area_budget: f64,
}

impl NeedleSchedule {
    /// The stages run back to back as one movement of `start`.
    pub fn movement(&self) -> Movement {
        match self.stages.len() {
            0 => Movement::Constant,
            1 => self.stages[0].movement.clone(),
            _ => Movement::Chain { stages: self.stages.iter().map(|s| s.movement.clone()).collect() },
        }
    }

    pub fn end_motion(&self) -> RigidMotion {
        self.stages.iter().fold(RigidMotion::identity(), |acc, s| s.movement.eval(1.0).compose(&acc))
    }

    pub fn end_scene(&self) -> Scene {
        match self.stages.last() {
            None => self.start.clone(),
            Some(s) => s.scene.transform(&s.movement.eval(1.0)),
        }
    }

    /// Mismatch at each join, the first one being `start` against stage 0.
    pub fn join_gaps(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.stages.len());
        let mut prev = self.start.clone();
        for s in &self.stages {
            out.push(scene_gap(&prev, &s.scene));
            prev = s.scene.transform(&s.movement.eval(1.0));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.join_gaps().into_iter().enumerate() {
            if !(g <= CHAIN_TOL) {
                return Err(Error::Precondition(format!("stage {i} starts {g:e} away from where the previous one ended")));
            }
        }
        self.stages.iter().try_for_each(|s| s.movement.validate())
    }

    pub fn path_length(&self) -> f64 {
        self.stages.iter().map(|s| path_length(&s.movement, &s.scene)).sum()
    }

    /// Sweeps the whole schedule and checks `area ≤ budget + 4 h · path length`.
    pub fn measure(&self, cell: f64, steps: usize) -> Result<(RasterMask, ConstructionReport)> {
        let m = self.movement();
        let grid = grid_for(&m, &self.start, 4.0 * cell, cell)?;
        let mask = sweep(&m, &self.start, steps.max(2), &grid)?;
        let path = self.path_length();
        let max_gap = self.join_gaps().into_iter().fold(0.0, f64::max);
        let mut r = ConstructionReport::new("schedule");
        r.measure("area", mask.area())
            .measure("cell", cell)
            .measure("stages", self.stages.len())
            .measure("path_length", path)
            .measure("band", 4.0 * cell * path)
            .measure("max_join_gap", max_gap)
            .verdict("sweep_within_budget", InequalityCheck::new(mask.area(), self.total_area_budget + 4.0 * cell * path, 0.0))
            .verdict("pose_compatible", InequalityCheck::new(max_gap, CHAIN_TOL, 0.0));
        Ok((mask, r))
    }
}

/// Points that pin down a primitive's position.
fn key_points(p: &Primitive) -> Vec<Point> {
    match p {
        Primitive::Segment { a, b } => vec![*a, *b],
        Primitive::Polygon { vertices } => vertices.clone(),
        Primitive::Points { points } => points.clone(),
        Primitive::Rectangle { center, direction, length, width } => {
            Primitive::rectangle_corners(*center, *direction, *length, *width).to_vec()
        }
        Primitive::Arc { center, radius, start, sweep } => vec![
            *center,
            crate::raster::geom::arc_point(*center, *radius, *start),
            crate::raster::geom::arc_point(*center, *radius, start + sweep),
        ],
        Primitive::Disc { center, .. } | Primitive::Annulus { center, .. } => vec![*center],
        Primitive::Patch { pose, .. } => vec![pose.apply(Point::new(0.0, 0.0)), pose.apply(Point::new(1.0, 0.0))],
    }
}

/// Largest distance between corresponding key points; infinite when the scenes differ in shape.
pub fn scene_gap(a: &Scene, b: &Scene) -> f64 {
    if a.primitives.len() != b.primitives.len() {
        return f64::INFINITY;
    }
    let mut worst: f64 = 0.0;
    for (p, q) in a.primitives.iter().zip(&b.primitives) {
        let (kp, kq) = (key_points(p), key_points(q));
        if kp.len() != kq.len() || std::mem::discriminant(p) != std::mem::discriminant(q) {
            return f64::INFINITY;
        }
        for (x, y) in kp.iter().zip(&kq) {
            worst = worst.max((x - y).norm());
        }
    }
    worst
}

fn size(p: &Primitive) -> f64 {
    use std::f64::consts::PI;
    match p {
        Primitive::Segment { a, b } => (b - a).norm(),
        Primitive::Arc { radius, sweep, .. } => radius * sweep,
        Primitive::Points { .. } => 0.0,
        Primitive::Polygon { vertices } => {
            let n = vertices.len();
            (0..n).map(|k| (vertices[(k + 1) % n] - vertices[k]).norm()).sum::<f64>() / 2.0
        }
        Primitive::Rectangle { length, width, .. } => length + width,
        Primitive::Disc { radius, .. } => PI * radius,
        Primitive::Annulus { inner, outer, .. } => PI * (inner + outer),
        Primitive::Patch { y0, y1, r0, r1, .. } => (r1 - r0) + (y1 - y0) * r1 / r0.max(1e-300),
    }
}

/// Distance the farthest point of `p` travels along `m`.
fn travel(m: &Movement, p: &Primitive) -> f64 {
    match m {
        Movement::Constant => 0.0,
        Movement::Elementary { alpha } => match alpha.center() {
            None => alpha.c().norm(),
            Some(a) => alpha.angle().abs() * p.max_distance_from(a),
        },
        other => {
            let pts = key_points(p);
            let mut times: Vec<f64> = sample_times(257).collect();
            times.sort_by(f64::total_cmp);
            let poses: Vec<RigidMotion> = times.iter().map(|&t| other.eval(t)).collect();
            pts.iter()
                .map(|x| poses.windows(2).map(|w| (w[1].apply(*x) - w[0].apply(*x)).norm()).sum::<f64>())
                .fold(0.0, f64::max)
        }
    }
}

/// Sum over stages and primitives of the primitive's length plus the distance it travels.
///
/// The raster of a thin moving piece exceeds its true sweep by roughly one cell
/// along this length, which is what the `4 h · path length` allowances absorb.
pub fn path_length(m: &Movement, scene: &Scene) -> f64 {
    let mut pose = RigidMotion::identity();
    let mut total = 0.0;
    for st in m.stages() {
        let posed = scene.transform(&pose);
        total += posed.primitives.iter().map(|p| size(p) + travel(st, p)).sum::<f64>();
        pose = st.eval(1.0).compose(&pose);
    }
    total
}

/// Builds schedules for a single segment, the needle, tracked by tail and direction.
pub(crate) struct NeedleBuilder {
    pub tail: Point,
    pub dir: Point,
    pub len: f64,
    start: Scene,
    stages: Vec<Stage>,
}

impl NeedleBuilder {
    pub fn new(tail: Point, dir: Point, len: f64) -> Self {
        let dir = dir / dir.norm();
        let start = Scene::new(vec![Primitive::segment(tail, tail + dir * len)]);
        Self { tail, dir, len, start, stages: Vec::new() }
    }

    pub fn scene(&self) -> Scene {
        Scene::new(vec![Primitive::segment(self.tail, self.tail + self.dir * self.len)])
    }

    pub fn push(&mut self, m: Movement) {
        if m == Movement::Constant {
            return;
        }
        let end = m.eval(1.0);
        self.stages.push(Stage { movement: m, scene: self.scene() });
        self.tail = end.apply(self.tail);
        let d = end.u() * self.dir;
        self.dir = d / d.norm();
    }

    /// Rotation about the tail.
    pub fn rotate(&mut self, phi: f64) {
        self.push(Movement::rotation(self.tail, phi));
    }

    pub fn slide(&mut self, v: Point) {
        self.push(Movement::translation(v));
    }

    /// Moves the tail to `target` keeping the direction: slide along the tilted line
    /// `dir e^{iσθ}` between two rotations by `±θ` about the tail, then slide along the
    /// final line. Returns the lateral offset that was bridged.
    pub fn pal_shift(&mut self, target: Point, sigma: f64, theta: f64) -> f64 {
        let w = self.dir;
        let rel = (target - self.tail) * w.conj();
        if rel.im.abs() > 1e-15 * (1.0 + rel.norm()) && theta > 0.0 {
            let tilt = sigma.signum() * theta;
            self.rotate(tilt);
            let s = rel.im / tilt.sin();
            self.slide(self.dir * s);
            self.rotate(-tilt);
            self.dir = w;
        }
        let rest = ((target - self.tail) * self.dir.conj()).re;
        if rest != 0.0 {
            self.slide(self.dir * rest);
        }
        rel.im
    }

    pub fn finish(self, budget: f64) -> NeedleSchedule {
        NeedleSchedule { start: self.start, stages: self.stages, total_area_budget: budget }
    }
}
