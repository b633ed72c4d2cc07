//! Small exact planar distance and scanline helpers.

use std::f64::consts::TAU;

use crate::Point;

pub fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * d.conj()).re / l2).clamp(0.0, 1.0);
    (p - (a + d * s)).norm()
}

/// Angle reduced into `[0, 2π)`.
pub fn wrap(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU { 0.0 } else { t }
}

/// Whether direction `theta` lies on the arc `[start, start + sweep]`.
pub fn in_sweep(theta: f64, start: f64, sweep: f64) -> bool {
    sweep >= TAU || wrap(theta - start) <= sweep
}

pub fn arc_point(c: Point, r: f64, theta: f64) -> Point {
    c + Point::from_polar(r, theta)
}

pub fn arc_dist(p: Point, c: Point, r: f64, start: f64, sweep: f64) -> f64 {
    let q = p - c;
    if q.norm() > 0.0 && in_sweep(q.arg(), start, sweep) {
        return (q.norm() - r).abs();
    }
    if sweep >= TAU {
        return r;
    }
    let e0 = arc_point(c, r, start);
    let e1 = arc_point(c, r, start + sweep);
    (p - e0).norm().min((p - e1).norm())
}

/// Bounding box `(min, max)` of an arc.
pub fn arc_bbox(c: Point, r: f64, start: f64, sweep: f64) -> (Point, Point) {
    let mut pts = vec![arc_point(c, r, start), arc_point(c, r, start + sweep)];
    for k in 0..4 {
        let th = k as f64 * TAU / 4.0;
        if in_sweep(th, start, sweep) {
            pts.push(arc_point(c, r, th));
        }
    }
    bbox_of(&pts)
}

pub fn bbox_of(pts: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.re = lo.re.min(p.re);
        lo.im = lo.im.min(p.im);
        hi.re = hi.re.max(p.re);
        hi.im = hi.im.max(p.im);
    }
    (lo, hi)
}

/// `{x : (x, y) within r of c}`.
pub fn disc_row(c: Point, r: f64, y: f64) -> Option<(f64, f64)> {
    let dy = y - c.im;
    (dy.abs() <= r).then(|| {
        let w = (r * r - dy * dy).max(0.0).sqrt();
        (c.re - w, c.re + w)
    })
}

/// Solves `lo ≤ k x + m ≤ hi` for x.
pub fn linear_band(k: f64, m: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if k == 0.0 {
        return (lo <= m && m <= hi).then_some((f64::NEG_INFINITY, f64::INFINITY));
    }
    let (a, b) = ((lo - m) / k, (hi - m) / k);
    Some(if a <= b { (a, b) } else { (b, a) })
}

pub fn meet(a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
    let r = (a.0.max(b.0), a.1.min(b.1));
    (r.0 <= r.1).then_some(r)
}

/// Row `y` of the set of points within `r` of segment `ab`.
pub fn capsule_row(a: Point, b: Point, r: f64, y: f64) -> Option<(f64, f64)> {
    let mut acc: Option<(f64, f64)> = None;
    let mut add = |iv: (f64, f64)| {
        acc = Some(match acc {
            None => iv,
            Some(o) => (o.0.min(iv.0), o.1.max(iv.1)),
        })
    };
    if let Some(iv) = disc_row(a, r, y) {
        add(iv);
    }
    if let Some(iv) = disc_row(b, r, y) {
        add(iv);
    }
    let d = b - a;
    let l = d.norm();
    if l > 0.0 {
        let u = d / l;
        let dy = y - a.im;
        // along: (x - a.re) u.re + dy u.im ∈ [0, l]; across: -(x - a.re) u.im + dy u.re ∈ [-r, r]
        let along = linear_band(u.re, dy * u.im - a.re * u.re, 0.0, l);
        let across = linear_band(-u.im, dy * u.re + a.re * u.im, -r, r);
        if let Some(iv) = along.zip(across).and_then(|(p, q)| meet(p, q)) {
            add(iv);
        }
    }
    acc
}

/// Interior of a closed polygon on row `y` (even-odd rule), as sorted disjoint intervals.
pub fn polygon_row(v: &[Point], y: f64, out: &mut Vec<(f64, f64)>) {
    let mut xs: Vec<f64> = Vec::new();
    let n = v.len();
    for k in 0..n {
        let (p, q) = (v[k], v[(k + 1) % n]);
        if (p.im <= y) != (q.im <= y) {
            xs.push(p.re + (y - p.im) / (q.im - p.im) * (q.re - p.re));
        }
    }
    xs.sort_by(f64::total_cmp);
    for w in xs.chunks_exact(2) {
        out.push((w[0], w[1]));
    }
}

/// Winding-free point-in-polygon test (even-odd).
pub fn polygon_contains(v: &[Point], p: Point) -> bool {
    let n = v.len();
    let mut inside = false;
    for k in 0..n {
        let (a, b) = (v[k], v[(k + 1) % n]);
        if (a.im <= p.im) != (b.im <= p.im) {
            let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if p.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Row `y` of the ring `r_in ≤ |p − c| ≤ r_out` (clamped at 0 inside).
pub fn ring_row(c: Point, r_in: f64, r_out: f64, y: f64, out: &mut Vec<(f64, f64)>) {
    let Some((a, b)) = disc_row(c, r_out, y) else { return };
    match (r_in > 0.0).then(|| disc_row(c, r_in, y)).flatten() {
        Some((ia, ib)) => {
            out.push((a, ia));
            out.push((ib, b));
        }
        None => out.push((a, b)),
    }
}

/// Area of a union of polygons by the midpoint rule over `rows` scanlines.
/// The union length is piecewise linear in `y`, so the error shrinks like `rows⁻²`.
pub fn polygons_union_area(polys: &[Vec<Point>], rows: usize) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in polys.iter().flatten() {
        lo = lo.min(v.im);
        hi = hi.max(v.im);
    }
    if !(lo < hi) || rows == 0 {
        return 0.0;
    }
    let dy = (hi - lo) / rows as f64;
    let mut buf = Vec::new();
    let mut total = 0.0;
    for i in 0..rows {
        let y = lo + (i as f64 + 0.5) * dy;
        buf.clear();
        for v in polys {
            polygon_row(v, y, &mut buf);
        }
        buf.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut cur: Option<(f64, f64)> = None;
        for &(a, b) in &buf {
            match cur {
                Some((c0, c1)) if a <= c1 => cur = Some((c0, c1.max(b))),
                _ => {
                    if let Some((c0, c1)) = cur {
                        total += c1 - c0;
                    }
                    cur = Some((a, b));
                }
            }
        }
        if let Some((c0, c1)) = cur {
            total += c1 - c0;
        }
    }
    total * dy
}
