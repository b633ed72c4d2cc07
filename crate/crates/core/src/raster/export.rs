use std::fmt::Write as _;

use super::geom::arc_point;
use super::{Primitive, Scene};
use crate::Point;

fn path(points: &[Point], closed: bool) -> String {
    let mut d = String::new();
    for (k, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if k == 0 { 'M' } else { 'L' }, p.re, p.im);
    }
    if closed {
        d.push('Z');
    }
    d
}

fn arc_points(c: Point, r: f64, start: f64, sweep: f64) -> Vec<Point> {
    let n = ((sweep.abs() * 32.0).ceil() as usize).max(4);
    (0..=n).map(|k| arc_point(c, r, start + sweep * k as f64 / n as f64)).collect()
}

/// Outline of a scene in world coordinates, stroke width `stroke`.
pub fn scene_svg(scene: &Scene, stroke: f64) -> String {
    let mut s = format!(
        r##"<g transform="scale(1,-1)" fill="none" stroke="#d0452f" stroke-width="{stroke}">"##
    );
    for p in &scene.primitives {
        let d = match p {
            Primitive::Polygon { vertices } => path(vertices, true),
            Primitive::Segment { a, b } => path(&[*a, *b], false),
            Primitive::Arc { center, radius, start, sweep } => path(&arc_points(*center, *radius, *start, *sweep), false),
            Primitive::Points { points } => {
                points.iter().map(|q| path(&[*q, q + Point::new(stroke, 0.0)], false)).collect::<Vec<_>>().join(" ")
            }
            Primitive::Rectangle { center, direction, length, width } => {
                path(&Primitive::rectangle_corners(*center, *direction, *length, *width), true)
            }
            Primitive::Disc { center, radius } => path(&arc_points(*center, *radius, 0.0, std::f64::consts::TAU), true),
            Primitive::Annulus { center, inner, outer } => {
                let tau = std::f64::consts::TAU;
                path(&arc_points(*center, *outer, 0.0, tau), true) + &path(&arc_points(*center, *inner, 0.0, tau), true)
            }
            Primitive::Patch { pose, y0, y1, r0, r1 } => {
                let (arcs, _) = Primitive::patch_boundary(pose, *y0, *y1, *r0, *r1);
                let mut pts = arc_points(arcs[0].0, arcs[0].1, arcs[0].2, arcs[0].3);
                let mut outer = arc_points(arcs[1].0, arcs[1].1, arcs[1].2, arcs[1].3);
                outer.reverse();
                pts.extend(outer);
                path(&pts, true)
            }
        };
        let _ = write!(s, r#"<path d="{d}"/>"#);
    }
    s.push_str("</g>");
    s
}

/// Stand-alone SVG of a scene outline.
pub fn scene_document(scene: &Scene) -> String {
    let (lo, hi) = scene.bbox().unwrap_or((Point::new(0.0, 0.0), Point::new(1.0, 1.0)));
    let pad = 0.05 * (hi - lo).norm().max(1e-9);
    let (w, h) = (hi.re - lo.re + 2.0 * pad, hi.im - lo.im + 2.0 * pad);
    format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">{}</svg>"#,
        lo.re - pad,
        -(hi.im + pad),
        w,
        h,
        (800.0 * h / w).round().max(1.0),
        scene_svg(scene, w.max(h) / 800.0)
    )
}
