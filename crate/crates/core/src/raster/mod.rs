//! Raster measurement: scenes, occupancy masks, swept regions, components.
//!
//! Every rasterization dilates by half a cell diagonal, so measured areas are
//! upper bounds for the true ones.

mod components;
mod export;
pub mod geom;
mod mask;
mod rasterize;
mod scene;
mod sweep;

pub use components::{connected_components, Labeling, Run};
pub use export::{scene_document, scene_svg};
pub use mask::{GridSpec, RasterMask};
pub use rasterize::{rasterize, rasterize_clipped};
pub use scene::{Primitive, Scene};
pub use sweep::{frame_times, sweep, sweep_with_stats, SweepStats};

/// Fits a grid around everything `scene` touches along `m`, sampled at 65 times per stage.
pub fn grid_for(m: &crate::Movement, scene: &Scene, margin: f64, cell: f64) -> crate::Result<GridSpec> {
    let mut lo = crate::Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    let mut grow = |s: &Scene| {
        if let Some((a, b)) = s.bbox() {
            lo = crate::Point::new(lo.re.min(a.re), lo.im.min(a.im));
            hi = crate::Point::new(hi.re.max(b.re), hi.im.max(b.im));
        }
    };
    let stages = m.stages();
    let mut pose = crate::RigidMotion::identity();
    for st in stages {
        for i in 0..=64 {
            let p = st.eval(i as f64 / 64.0).compose(&pose);
            grow(&scene.transform(&p));
        }
        pose = st.eval(1.0).compose(&pose);
    }
    if !lo.re.is_finite() {
        return GridSpec::new(crate::Point::new(-1.0, -1.0), crate::Point::new(1.0, 1.0), cell);
    }
    GridSpec::around(lo, hi, margin, cell)
}
