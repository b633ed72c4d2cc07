use std::f64::consts::SQRT_2;

use super::geom::{arc_dist, capsule_row, disc_row, linear_band, meet, polygon_row, ring_row};
use super::{GridSpec, Primitive, RasterMask, Scene};
use crate::error::{Error, Result};
use crate::Point;

/// Cells whose center lies within `cell/√2` of the scene.
pub fn rasterize(scene: &Scene, grid: &GridSpec) -> Result<RasterMask> {
    check_bounds(scene, grid, 0.0)?;
    Ok(rasterize_clipped(scene, grid))
}

/// Like [`rasterize`], silently dropping whatever falls outside the grid.
pub fn rasterize_clipped(scene: &Scene, grid: &GridSpec) -> RasterMask {
    let mut mask = RasterMask::new(*grid);
    draw_scene(scene, &mut mask);
    mask
}

pub(crate) fn check_bounds(scene: &Scene, grid: &GridSpec, t: f64) -> Result<()> {
    match scene.bbox() {
        Some((lo, hi)) if !grid.contains_box(lo, hi) => Err(Error::SceneOutOfBounds { t }),
        _ => Ok(()),
    }
}

pub(crate) fn draw_scene(scene: &Scene, mask: &mut RasterMask) {
    let r = mask.grid().cell / SQRT_2;
    for p in &scene.primitives {
        draw(p, mask, r);
    }
}

fn set_filtered(mask: &mut RasterMask, row: usize, x0: f64, x1: f64, keep: impl Fn(Point) -> bool) {
    let g = *mask.grid();
    let (a, b) = g.cols_between(x0, x1);
    let y = g.row_y(row);
    let mut start: Option<u32> = None;
    for j in a..b {
        let ok = keep(Point::new(g.col_x(j as usize), y));
        match (ok, start) {
            (true, None) => start = Some(j),
            (false, Some(s)) => {
                mask.set_run(row, s, j);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        mask.set_run(row, s, b);
    }
}

fn draw_polygon(v: &[Point], mask: &mut RasterMask, r: f64, rows: std::ops::Range<usize>) {
    let g = *mask.grid();
    let n = v.len();
    let edges: Vec<(Point, Point, f64, f64)> = (0..n)
        .map(|k| {
            let (a, b) = (v[k], v[(k + 1) % n]);
            (a, b, a.im.min(b.im) - r, a.im.max(b.im) + r)
        })
        .collect();
    let mut buf = Vec::new();
    for i in rows {
        let y = g.row_y(i);
        buf.clear();
        polygon_row(v, y, &mut buf);
        for &(a, b, lo, hi) in &edges {
            if lo <= y && y <= hi {
                if let Some(iv) = capsule_row(a, b, r, y) {
                    buf.push(iv);
                }
            }
        }
        for &(x0, x1) in &buf {
            mask.set_x_interval(i, x0, x1);
        }
    }
}

pub(crate) fn draw(p: &Primitive, mask: &mut RasterMask, r: f64) {
    let g = *mask.grid();
    let (lo, hi) = p.bbox();
    let rows = g.rows_between(lo.im - r, hi.im + r);
    let mut buf = Vec::new();
    match p {
        Primitive::Segment { a, b } => {
            for i in rows {
                if let Some((x0, x1)) = capsule_row(*a, *b, r, g.row_y(i)) {
                    mask.set_x_interval(i, x0, x1);
                }
            }
        }
        Primitive::Points { points } => {
            for q in points {
                for i in g.rows_between(q.im - r, q.im + r) {
                    if let Some((x0, x1)) = disc_row(*q, r, g.row_y(i)) {
                        mask.set_x_interval(i, x0, x1);
                    }
                }
            }
        }
        Primitive::Polygon { vertices } => draw_polygon(vertices, mask, r, rows),
        Primitive::Rectangle { center, direction, length, width } => {
            let c = Primitive::rectangle_corners(*center, *direction, *length, *width);
            draw_polygon(&c, mask, r, rows)
        }
        Primitive::Disc { center, radius } => {
            for i in rows {
                if let Some((x0, x1)) = disc_row(*center, radius + r, g.row_y(i)) {
                    mask.set_x_interval(i, x0, x1);
                }
            }
        }
        Primitive::Annulus { center, inner, outer } => {
            for i in rows {
                buf.clear();
                ring_row(*center, (inner - r).max(0.0), outer + r, g.row_y(i), &mut buf);
                for &(x0, x1) in &buf {
                    mask.set_x_interval(i, x0, x1);
                }
            }
        }
        Primitive::Arc { center, radius, .. } => {
            for i in rows {
                buf.clear();
                ring_row(*center, (radius - r).max(0.0), radius + r, g.row_y(i), &mut buf);
                for &(x0, x1) in &buf {
                    set_filtered(mask, i, x0, x1, |q| p.distance(q) <= r);
                }
            }
        }
        Primitive::Patch { pose, y0, y1, r0, r1 } => {
            // inside, or within r of one of the two boundary segments or arcs
            let (u, c) = (pose.u().conj(), pose.c());
            let (arcs, segs) = Primitive::patch_boundary(pose, *y0, *y1, *r0, *r1);
            for i in rows {
                let y = g.row_y(i);
                // local coordinates q(x) = conj(u) ((x, y) − c) are affine in x
                let base = u * Point::new(-c.re, y - c.im);
                let side = linear_band(u.re, base.re, 0.0, f64::INFINITY);
                let strip = linear_band(u.im, base.im, *y0, *y1);
                buf.clear();
                if let Some(w) = side.zip(strip).and_then(|(a, b)| meet(a, b)) {
                    ring_row(c, *r0, *r1, y, &mut buf);
                    for iv in &buf {
                        if let Some((x0, x1)) = meet(*iv, w) {
                            mask.set_x_interval(i, x0, x1);
                        }
                    }
                }
                for &(a, b) in &segs {
                    if let Some((x0, x1)) = capsule_row(a, b, r, y) {
                        mask.set_x_interval(i, x0, x1);
                    }
                }
                for &(ac, ar, st, sw) in &arcs {
                    buf.clear();
                    ring_row(ac, (ar - r).max(0.0), ar + r, y, &mut buf);
                    for &(x0, x1) in &buf {
                        set_filtered(mask, i, x0, x1, |q| arc_dist(q, ac, ar, st, sw) <= r);
                    }
                }
            }
        }
    }
}
