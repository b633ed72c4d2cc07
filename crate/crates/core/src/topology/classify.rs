use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Singleton,
    Segment,
    /// Never produced from finite samples; kept so callers can match the full list.
    Halfline,
    Line,
    CircularArc,
    Circle,
    Nontrivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub class: Classification,
    pub tol: f64,
    pub diameter: f64,
    pub line_residual: f64,
    pub circle_residual: Option<f64>,
    pub center: Option<Point>,
    pub radius: Option<f64>,
    /// Largest angular gap between consecutive samples seen from the center.
    pub max_gap: Option<f64>,
}

fn diameter(points: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// `1e−3` times the sample diameter.
pub fn default_tol(points: &[Point]) -> f64 {
    1e-3 * diameter(points)
}

/// Max distance to the principal axis through the centroid.
fn line_fit(points: &[Point], mean: Point) -> f64 {
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for p in points {
        let d = p - mean;
        sxx += d.re * d.re;
        sxy += d.re * d.im;
        syy += d.im * d.im;
    }
    let dir = Point::from_polar(1.0, 0.5 * (2.0 * sxy).atan2(sxx - syy));
    points.iter().map(|p| ((p - mean) * dir.conj()).im.abs()).fold(0.0, f64::max)
}

/// Algebraic fit of `|z|² + D x + E y + F = 0` in coordinates centered at `mean`, scaled by `s`.
fn circle_fit(points: &[Point], mean: Point, s: f64) -> Option<(Point, f64)> {
    let mut a = [[0.0; 3]; 3];
    let mut b = [0.0; 3];
    for p in points {
        let z = (p - mean) / s;
        let row = [z.re, z.im, 1.0];
        let rhs = -z.norm_sqr();
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += row[i] * row[j];
            }
            b[i] += row[i] * rhs;
        }
    }
    let x = solve3(a, b)?;
    let c = Point::new(-x[0] / 2.0, -x[1] / 2.0);
    let r2 = c.norm_sqr() - x[2];
    (r2 > 0.0).then(|| (mean + c * s, r2.sqrt() * s))
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..3 {
            let f = a[r][col] / a[col][col];
            for k in col..3 {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        x[r] = (b[r] - (r + 1..3).map(|k| a[r][k] * x[k]).sum::<f64>()) / a[r][r];
    }
    Some(x)
}

/// Names the simplest of the shapes a point, segment, arc or circle that fits the
/// samples within `tol`, preferring a line on ties.
///
/// A fitted circle counts as an arc when some angular gap between samples exceeds
/// both `tol / r` and `4π ln n / n`, the second term covering the gaps that
/// uniform random samples of a full circle leave.
pub fn classify_component(points: &[Point], tol: f64) -> Result<ClassifyReport> {
    if points.is_empty() || !(tol > 0.0) {
        return Err(Error::Invalid("classification needs samples and tol > 0".into()));
    }
    let n = points.len();
    let diameter = diameter(points);
    let mean = points.iter().sum::<Point>() / n as f64;
    let mut rep = ClassifyReport {
        class: Classification::Nontrivial,
        tol,
        diameter,
        line_residual: 0.0,
        circle_residual: None,
        center: None,
        radius: None,
        max_gap: None,
    };
    if diameter <= tol {
        rep.class = Classification::Singleton;
        return Ok(rep);
    }
    rep.line_residual = line_fit(points, mean);
    if rep.line_residual <= tol {
        rep.class = Classification::Segment;
        return Ok(rep);
    }
    if let Some((c, r)) = circle_fit(points, mean, diameter) {
        let res = points.iter().map(|p| ((p - c).norm() - r).abs()).fold(0.0, f64::max);
        rep.circle_residual = Some(res);
        rep.center = Some(c);
        rep.radius = Some(r);
        if res <= tol {
            let mut ang: Vec<f64> = points.iter().map(|p| (p - c).arg()).collect();
            ang.sort_by(f64::total_cmp);
            let wrap = ang[0] + 2.0 * PI - ang[n - 1];
            let gap = ang.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max);
            rep.max_gap = Some(gap);
            let threshold = (tol / r).max(4.0 * PI * (n as f64).ln() / n as f64);
            rep.class = if gap > threshold { Classification::CircularArc } else { Classification::Circle };
        }
    }
    Ok(rep)
}
