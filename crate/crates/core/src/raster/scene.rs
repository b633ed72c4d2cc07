use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::geom::{self, arc_bbox, arc_dist, bbox_of, polygon_contains, seg_dist};
use crate::error::{Error, Result};
use crate::motion::RigidMotion;
use crate::Point;

/// A bounded closed planar piece.
///
/// `Patch` is the set `{x > 0, y ∈ [y0, y1], |p| ∈ [r0, r1]}` carried by `pose`;
/// it needs `0 ≤ y0 ≤ y1 < r0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Primitive {
    Polygon { vertices: Vec<Point> },
    Segment { a: Point, b: Point },
    Arc { center: Point, radius: f64, start: f64, sweep: f64 },
    Points { points: Vec<Point> },
    Rectangle { center: Point, direction: Point, length: f64, width: f64 },
    Disc { center: Point, radius: f64 },
    Annulus { center: Point, inner: f64, outer: f64 },
    Patch { pose: RigidMotion, y0: f64, y1: f64, r0: f64, r1: f64 },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub primitives: Vec<Primitive>,
}

fn finite(p: &Point) -> bool {
    p.re.is_finite() && p.im.is_finite()
}

impl Primitive {
    pub fn segment(a: Point, b: Point) -> Self {
        Primitive::Segment { a, b }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Invalid(m.to_string()));
        match self {
            Primitive::Polygon { vertices } if vertices.len() < 3 || !vertices.iter().all(finite) => {
                bad("polygon needs at least 3 finite vertices")
            }
            Primitive::Segment { a, b } if !finite(a) || !finite(b) => bad("segment endpoints must be finite"),
            Primitive::Arc { radius, sweep, .. } if !(*radius > 0.0 && *sweep > 0.0 && *sweep <= TAU) => {
                bad("arc needs radius > 0 and sweep in (0, 2π]")
            }
            Primitive::Points { points } if points.is_empty() || !points.iter().all(finite) => {
                bad("point cloud must be non-empty and finite")
            }
            Primitive::Rectangle { direction, length, width, .. }
                if !((direction.norm() - 1.0).abs() < 1e-9 && *length >= 0.0 && *width >= 0.0) =>
            {
                bad("rectangle needs a unit direction and nonnegative sides")
            }
            Primitive::Disc { radius, .. } if !(*radius >= 0.0) => bad("disc radius must be nonnegative"),
            Primitive::Annulus { inner, outer, .. } if !(0.0 <= *inner && inner <= outer) => {
                bad("annulus needs 0 ≤ inner ≤ outer")
            }
            Primitive::Patch { y0, y1, r0, r1, .. } if !(0.0 <= *y0 && y0 <= y1 && y1 < r0 && r0 <= r1) => {
                bad("patch needs 0 ≤ y0 ≤ y1 < r0 ≤ r1")
            }
            _ => Ok(()),
        }
    }

    pub fn transform(&self, m: &RigidMotion) -> Primitive {
        let f = |p: &Point| m.apply(*p);
        match self {
            Primitive::Polygon { vertices } => Primitive::Polygon { vertices: vertices.iter().map(f).collect() },
            Primitive::Segment { a, b } => Primitive::Segment { a: f(a), b: f(b) },
            Primitive::Arc { center, radius, start, sweep } => {
                Primitive::Arc { center: f(center), radius: *radius, start: start + m.angle(), sweep: *sweep }
            }
            Primitive::Points { points } => Primitive::Points { points: points.iter().map(f).collect() },
            Primitive::Rectangle { center, direction, length, width } => Primitive::Rectangle {
                center: f(center),
                direction: m.u() * direction,
                length: *length,
                width: *width,
            },
            Primitive::Disc { center, radius } => Primitive::Disc { center: f(center), radius: *radius },
            Primitive::Annulus { center, inner, outer } => {
                Primitive::Annulus { center: f(center), inner: *inner, outer: *outer }
            }
            Primitive::Patch { pose, y0, y1, r0, r1 } => {
                Primitive::Patch { pose: m.compose(pose), y0: *y0, y1: *y1, r0: *r0, r1: *r1 }
            }
        }
    }

    /// Corners of a rectangle, counterclockwise.
    pub fn rectangle_corners(center: Point, direction: Point, length: f64, width: f64) -> [Point; 4] {
        let a = direction * (length / 2.0);
        let b = direction * Point::i() * (width / 2.0);
        [center - a - b, center + a - b, center + a + b, center - a + b]
    }

    /// Boundary arcs `(center, radius, start, sweep)` and segments of a patch, in world coordinates.
    pub(crate) fn patch_boundary(
        pose: &RigidMotion,
        y0: f64,
        y1: f64,
        r0: f64,
        r1: f64,
    ) -> ([(Point, f64, f64, f64); 2], [(Point, Point); 2]) {
        let o = pose.apply(Point::new(0.0, 0.0));
        let rot = pose.angle();
        let arc = |r: f64| {
            let a0 = (y0 / r).asin();
            let a1 = (y1 / r).asin();
            (o, r, a0 + rot, a1 - a0)
        };
        let seg = |y: f64| {
            let x0 = (r0 * r0 - y * y).sqrt();
            let x1 = (r1 * r1 - y * y).sqrt();
            (pose.apply(Point::new(x0, y)), pose.apply(Point::new(x1, y)))
        };
        ([arc(r0), arc(r1)], [seg(y0), seg(y1)])
    }

    pub fn patch_contains(pose: &RigidMotion, y0: f64, y1: f64, r0: f64, r1: f64, p: Point) -> bool {
        let q = pose.inverse().apply(p);
        let r = q.norm();
        q.re > 0.0 && q.im >= y0 && q.im <= y1 && r >= r0 && r <= r1
    }

    /// Euclidean distance from `p` to the primitive (0 inside filled shapes).
    pub fn distance(&self, p: Point) -> f64 {
        match self {
            Primitive::Polygon { vertices } => {
                if polygon_contains(vertices, p) {
                    return 0.0;
                }
                let n = vertices.len();
                (0..n).map(|k| seg_dist(p, vertices[k], vertices[(k + 1) % n])).fold(f64::INFINITY, f64::min)
            }
            Primitive::Segment { a, b } => seg_dist(p, *a, *b),
            Primitive::Arc { center, radius, start, sweep } => arc_dist(p, *center, *radius, *start, *sweep),
            Primitive::Points { points } => points.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min),
            Primitive::Rectangle { center, direction, length, width } => {
                Primitive::Polygon { vertices: Self::rectangle_corners(*center, *direction, *length, *width).to_vec() }
                    .distance(p)
            }
            Primitive::Disc { center, radius } => ((p - center).norm() - radius).max(0.0),
            Primitive::Annulus { center, inner, outer } => {
                let d = (p - center).norm();
                (d - outer).max(inner - d).max(0.0)
            }
            Primitive::Patch { pose, y0, y1, r0, r1 } => {
                if Self::patch_contains(pose, *y0, *y1, *r0, *r1, p) {
                    return 0.0;
                }
                let (arcs, segs) = Self::patch_boundary(pose, *y0, *y1, *r0, *r1);
                let da = arcs.iter().map(|&(c, r, s, w)| arc_dist(p, c, r, s, w.max(0.0)));
                let ds = segs.iter().map(|&(a, b)| seg_dist(p, a, b));
                da.chain(ds).fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn bbox(&self) -> (Point, Point) {
        match self {
            Primitive::Polygon { vertices } => bbox_of(vertices),
            Primitive::Segment { a, b } => bbox_of(&[*a, *b]),
            Primitive::Arc { center, radius, start, sweep } => arc_bbox(*center, *radius, *start, *sweep),
            Primitive::Points { points } => bbox_of(points),
            Primitive::Rectangle { center, direction, length, width } => {
                bbox_of(&Self::rectangle_corners(*center, *direction, *length, *width))
            }
            Primitive::Disc { center, radius } | Primitive::Annulus { center, outer: radius, .. } => {
                let r = Point::new(*radius, *radius);
                (center - r, center + r)
            }
            Primitive::Patch { pose, y0, y1, r0, r1 } => {
                let (arcs, segs) = Self::patch_boundary(pose, *y0, *y1, *r0, *r1);
                let mut pts = Vec::with_capacity(12);
                for (c, r, s, w) in arcs {
                    let (lo, hi) = arc_bbox(c, r, s, w.max(0.0));
                    pts.extend([lo, hi]);
                }
                for (a, b) in segs {
                    pts.extend([a, b]);
                }
                bbox_of(&pts)
            }
        }
    }

    /// Largest distance from `q` to a point of the primitive.
    pub fn max_distance_from(&self, q: Point) -> f64 {
        let far = |pts: &[Point]| pts.iter().map(|p| (p - q).norm()).fold(0.0, f64::max);
        match self {
            Primitive::Polygon { vertices } => far(vertices),
            Primitive::Segment { a, b } => far(&[*a, *b]),
            Primitive::Arc { center, radius, start, sweep } => {
                let d = center - q;
                let ends = far(&[geom::arc_point(*center, *radius, *start), geom::arc_point(*center, *radius, start + sweep)]);
                if d.norm() == 0.0 {
                    *radius
                } else if geom::in_sweep(d.arg(), *start, *sweep) {
                    d.norm() + radius
                } else {
                    ends
                }
            }
            Primitive::Points { points } => far(points),
            Primitive::Rectangle { center, direction, length, width } => {
                far(&Self::rectangle_corners(*center, *direction, *length, *width))
            }
            Primitive::Disc { center, radius } | Primitive::Annulus { center, outer: radius, .. } => {
                (center - q).norm() + radius
            }
            Primitive::Patch { pose, y0, y1, r0, r1 } => {
                // the farthest point lies on the boundary
                let (arcs, segs) = Self::patch_boundary(pose, *y0, *y1, *r0, *r1);
                let a = arcs
                    .iter()
                    .map(|&(center, radius, start, sweep)| {
                        Primitive::Arc { center, radius, start, sweep }.max_distance_from(q)
                    })
                    .fold(0.0, f64::max);
                a.max(far(&[segs[0].0, segs[0].1, segs[1].0, segs[1].1]))
            }
        }
    }

    /// Whether sliding along a straight path can be swept exactly as polygons.
    pub(crate) fn is_polygonal(&self) -> bool {
        matches!(
            self,
            Primitive::Polygon { .. }
                | Primitive::Segment { .. }
                | Primitive::Points { .. }
                | Primitive::Rectangle { .. }
                | Primitive::Disc { .. }
        )
    }

    /// The exact region swept by translating along `[0, c]`, as primitives.
    pub(crate) fn translation_sweep(&self, c: Point, out: &mut Vec<Primitive>) {
        let para = |a: Point, b: Point| Primitive::Polygon { vertices: vec![a, b, b + c, a + c] };
        match self {
            Primitive::Segment { a, b } => out.push(para(*a, *b)),
            Primitive::Points { points } => out.extend(points.iter().map(|p| Primitive::Segment { a: *p, b: p + c })),
            Primitive::Polygon { vertices } => {
                out.push(self.clone());
                out.push(self.transform(&RigidMotion::translation(c)));
                let n = vertices.len();
                out.extend((0..n).map(|k| para(vertices[k], vertices[(k + 1) % n])));
            }
            Primitive::Rectangle { center, direction, length, width } => {
                Primitive::Polygon { vertices: Self::rectangle_corners(*center, *direction, *length, *width).to_vec() }
                    .translation_sweep(c, out)
            }
            Primitive::Disc { center, radius } => {
                out.push(self.clone());
                out.push(Primitive::Disc { center: center + c, radius: *radius });
                if c.norm() > 0.0 {
                    let dir = c / c.norm();
                    out.push(Primitive::Rectangle {
                        center: center + c / 2.0,
                        direction: dir,
                        length: c.norm(),
                        width: 2.0 * radius,
                    });
                }
            }
            other => out.push(other.clone()),
        }
    }
}

impl Scene {
    pub fn new(primitives: Vec<Primitive>) -> Self {
        Self { primitives }
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        self.primitives.iter().try_for_each(Primitive::validate)
    }

    pub fn transform(&self, m: &RigidMotion) -> Scene {
        Scene::new(self.primitives.iter().map(|p| p.transform(m)).collect())
    }

    pub fn bbox(&self) -> Option<(Point, Point)> {
        let mut it = self.primitives.iter().map(Primitive::bbox);
        let first = it.next()?;
        Some(it.fold(first, |(lo, hi), (a, b)| {
            (Point::new(lo.re.min(a.re), lo.im.min(a.im)), Point::new(hi.re.max(b.re), hi.im.max(b.im)))
        }))
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.primitives.iter().map(|q| q.distance(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn max_distance_from(&self, q: Point) -> f64 {
        self.primitives.iter().map(|p| p.max_distance_from(q)).fold(0.0, f64::max)
    }

    /// Center of the bounding box and the largest distance from it to the scene.
    pub fn anchor(&self) -> (Point, f64) {
        match self.bbox() {
            None => (Point::new(0.0, 0.0), 0.0),
            Some((lo, hi)) => {
                let z = (lo + hi) / 2.0;
                (z, self.max_distance_from(z))
            }
        }
    }

    pub fn extend(&mut self, other: Scene) {
        self.primitives.extend(other.primitives);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::pt;

    #[test]
    fn patch_distance_matches_sampling() {
        let pose = RigidMotion::rotation(pt(0.3, -0.2), 0.9);
        let prim = Primitive::Patch { pose, y0: 0.1, y1: 0.3, r0: 1.0, r1: 1.4 };
        // oracle: nearest of a dense sample of the patch
        let mut samples = vec![];
        for i in 0..=120 {
            for j in 0..=120 {
                let y = 0.1 + 0.2 * i as f64 / 120.0;
                let r = 1.0 + 0.4 * j as f64 / 120.0;
                samples.push(pose.apply(pt((r * r - y * y).sqrt(), y)));
            }
        }
        for p in [pt(2.0, 1.0), pt(0.0, 0.0), pt(1.5, 1.5), pt(-1.0, 2.0)] {
            let brute = samples.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min);
            assert!((prim.distance(p) - brute).abs() < 5e-3, "{p}");
            let far = samples.iter().map(|q| (p - q).norm()).fold(0.0, f64::max);
            assert!((prim.max_distance_from(p) - far).abs() < 5e-3, "{p}");
        }
        let inside = pose.apply(pt((1.2f64 * 1.2 - 0.04).sqrt(), 0.2));
        assert_eq!(prim.distance(inside), 0.0);
    }

    #[test]
    fn translation_sweep_of_segment_is_parallelogram() {
        let mut out = vec![];
        Primitive::segment(pt(0.0, 0.0), pt(1.0, 0.0)).translation_sweep(pt(0.0, 1.0), &mut out);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].distance(pt(0.5, 0.5)), 0.0);
    }

    #[test]
    fn arc_transform_and_bbox() {
        let a = Primitive::Arc { center: pt(0.0, 0.0), radius: 1.0, start: 0.0, sweep: std::f64::consts::PI / 2.0 };
        let (lo, hi) = a.bbox();
        assert!((lo - pt(0.0, 0.0)).norm() < 1e-15 && (hi - pt(1.0, 1.0)).norm() < 1e-15);
        let b = a.transform(&RigidMotion::rotation(pt(0.0, 0.0), std::f64::consts::PI / 2.0));
        let (lo, hi) = b.bbox();
        assert!((lo - pt(-1.0, 0.0)).norm() < 1e-15 && (hi - pt(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let s: Scene = serde_json::from_str(
            r#"{"primitives":[{"type":"segment","a":[0,0],"b":[1,0]},{"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}]}"#,
        )
        .unwrap();
        assert_eq!(s.primitives.len(), 2);
        assert!(s.validate().is_ok());
    }
}
