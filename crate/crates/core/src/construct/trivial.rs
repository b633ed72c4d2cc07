use crate::error::{Error, Result};
use crate::motion::CHAIN_TOL;
use crate::{Movement, Point, Primitive, Scene};

/// Slides a union of segments along their common direction.
pub fn trivial_parallel_mover(scene: &Scene, direction: Point, distance: f64) -> Result<Movement> {
    let n = direction.norm();
    if !(n > 0.0 && n.is_finite() && distance.is_finite()) {
        return Err(Error::Invalid("slide direction must be a nonzero finite vector".into()));
    }
    let dir = direction / n;
    let off = |v: Point| -> f64 {
        let l = v.norm();
        if l == 0.0 { 0.0 } else { (v / l * dir.conj()).im.abs().min(1.0).asin() }
    };
    for (index, p) in scene.primitives.iter().enumerate() {
        let angle = match p {
            Primitive::Segment { a, b } => off(b - a),
            Primitive::Points { .. } => 0.0,
            Primitive::Rectangle { direction, width, .. } if *width == 0.0 => off(*direction),
            _ => f64::INFINITY,
        };
        if angle > CHAIN_TOL {
            return Err(Error::NotParallel { index, angle });
        }
    }
    Ok(Movement::translation(dir * distance))
}

/// Rotates a union of arcs about their common center.
pub fn trivial_concentric_mover(scene: &Scene, center: Point, angle: f64) -> Result<Movement> {
    if !angle.is_finite() {
        return Err(Error::Invalid("rotation angle must be finite".into()));
    }
    for (index, p) in scene.primitives.iter().enumerate() {
        let offset = match p {
            Primitive::Arc { center: c, .. } => (c - center).norm(),
            _ => f64::INFINITY,
        };
        if offset > CHAIN_TOL {
            return Err(Error::NotConcentric { index, offset });
        }
    }
    Ok(Movement::rotation(center, angle))
}
