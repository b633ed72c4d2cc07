use crate::error::{Error, Result};
use crate::motion::pt;

use super::schedule::{NeedleBuilder, NeedleSchedule};

/// `θ = eps / (2 (offset + length)²)`. The two rotations sweep `θ L²` in total.
pub fn pal_join_theta(segment_length: f64, lateral_offset: f64, eps: f64) -> f64 {
    eps / (2.0 * (lateral_offset + segment_length).powi(2))
}

/// Moves the segment `[(0,0), (L,0)]` onto the line `y = lateral_offset`:
/// rotate by `θ` about the tail, slide along the tilted line, rotate back.
pub fn pal_join(segment_length: f64, lateral_offset: f64, eps: f64) -> Result<NeedleSchedule> {
    if !(segment_length > 0.0 && lateral_offset >= 0.0 && eps > 0.0) || !lateral_offset.is_finite() {
        return Err(Error::Precondition("pal_join needs length > 0, offset ≥ 0, eps > 0".into()));
    }
    let mut b = NeedleBuilder::new(pt(0.0, 0.0), pt(1.0, 0.0), segment_length);
    if lateral_offset > 0.0 {
        let theta = pal_join_theta(segment_length, lateral_offset, eps);
        b.rotate(theta);
        b.slide(b.dir * (lateral_offset / theta.sin()));
        b.rotate(-theta);
    }
    Ok(b.finish(eps))
}
