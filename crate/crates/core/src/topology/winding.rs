use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::geom::seg_dist;
use crate::Point;

/// Distance below which a point counts as lying on a curve.
const ON_CURVE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub vertices: Vec<Point>,
    /// Closed curves get an implicit edge from the last vertex back to the first.
    pub closed: bool,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>, closed: bool) -> Result<Self> {
        let p = Self { vertices, closed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() < 2 || !self.vertices.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Invalid("a polyline needs at least 2 finite vertices".into()));
        }
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        let m = if self.closed { n } else { n - 1 };
        (0..m).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline { vertices: v, closed: self.closed }
    }

    /// `self` followed by `other`, open. Fails unless `other` starts where `self` ends.
    pub fn concat(&self, other: &Polyline) -> Result<Polyline> {
        let (a, b) = (*self.vertices.last().unwrap(), other.vertices[0]);
        if self.closed || other.closed || (a - b).norm() > ON_CURVE {
            return Err(Error::Invalid("concatenation needs open curves that chain".into()));
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Ok(Polyline { vertices: v, closed: false })
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.edges().map(|(a, b)| seg_dist(p, a, b)).fold(f64::INFINITY, f64::min)
    }
}

/// Total increment of `arg(γ − p)` along the curve, in radians.
pub fn winding_number(gamma: &Polyline, p: Point) -> Result<f64> {
    gamma.validate()?;
    let d = gamma.distance(p);
    if d <= ON_CURVE {
        return Err(Error::PointOnCurve { distance: d });
    }
    Ok(gamma.edges().map(|(a, b)| ((b - p) / (a - p)).arg()).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub winding_a: f64,
    pub winding_b: f64,
    /// The winding numbers differ by at least half a turn, so `a` and `b`
    /// lie in different components of the complement of the closed curve.
    pub separated: bool,
}

/// Closes `curve1` followed by `curve2` and compares its winding about `a` and `b`.
pub fn separation_witness(curve1: &Polyline, curve2: &Polyline, a: Point, b: Point) -> Result<SeparationWitness> {
    curve1.validate()?;
    curve2.validate()?;
    let mut v = curve1.vertices.clone();
    v.extend_from_slice(&curve2.vertices);
    let loop_ = Polyline { vertices: v, closed: true };
    let (wa, wb) = (winding_number(&loop_, a)?, winding_number(&loop_, b)?);
    Ok(SeparationWitness { winding_a: wa, winding_b: wb, separated: (wa - wb).abs() >= std::f64::consts::PI })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::pt;
    use std::f64::consts::PI;

    fn square() -> Polyline {
        Polyline::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)], true).unwrap()
    }

    #[test]
    fn square_and_semicircle() {
        assert!((winding_number(&square(), pt(0.1, 0.1)).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!(winding_number(&square(), pt(5.0, 5.0)).unwrap().abs() < 1e-12);
        let semi = Polyline::new((0..=64).map(|k| Point::from_polar(1.0, PI * k as f64 / 64.0)).collect(), false).unwrap();
        assert!((winding_number(&semi, pt(0.0, 0.0)).unwrap() - PI).abs() < 1e-12);
        assert!(matches!(winding_number(&square(), pt(0.5, 0.0)), Err(Error::PointOnCurve { .. })));
    }

    #[test]
    fn witness_cases() {
        let up = Polyline::new((0..=32).map(|k| Point::from_polar(1.0, PI * k as f64 / 32.0)).collect(), false).unwrap();
        let down = Polyline::new((33..64).map(|k| Point::from_polar(1.0, PI * k as f64 / 32.0)).collect(), false).unwrap();
        let w = separation_witness(&up, &down, pt(0.0, 0.0), pt(3.0, 0.0)).unwrap();
        assert!(w.separated && (w.winding_a - 2.0 * PI).abs() < 1e-9);
        assert!(!separation_witness(&up, &down, pt(3.0, 0.0), pt(0.0, 5.0)).unwrap().separated);
        assert!(!separation_witness(&up, &down, pt(0.1, 0.0), pt(-0.2, 0.1)).unwrap().separated);
    }
}
