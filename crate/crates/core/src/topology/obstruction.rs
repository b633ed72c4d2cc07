use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::movement::inverse_movement;
use crate::raster::{connected_components, frame_times, rasterize, sweep, GridSpec, RasterMask};
use crate::report::{ConstructionReport, InequalityCheck};
use crate::{Movement, Point, Primitive, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscRegion {
    pub center: Point,
    pub radius: f64,
}

/// An obstacle moving inside a disc and a probe region off the obstacle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionCase {
    pub obstacle: Scene,
    pub disc: DiscRegion,
    pub probe: Scene,
    pub movement: Movement,
    pub t_end: f64,
}

impl ObstructionCase {
    pub fn validate(&self) -> Result<()> {
        self.obstacle.validate()?;
        self.probe.validate()?;
        self.movement.validate()?;
        if !(self.disc.radius > 0.0 && self.disc.radius.is_finite()) {
            return Err(Error::Invalid("disc radius must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.t_end) {
            return Err(Error::TimeOutOfRange(self.t_end));
        }
        Ok(())
    }
}

/// Labels of the clear cells under `mask`; blocked cells are ignored.
fn labels(l: &crate::raster::Labeling, mask: &RasterMask) -> Result<BTreeSet<usize>> {
    l.labels_under(mask).map(|(s, _)| s)
}

/// Runs the component test and, when the probe and its pull-back sit in different
/// components of `disc ∖ obstacle`, checks that the swept obstacle covers the probe.
///
/// A same-component outcome is reported as `hypothesis_met = false` with no coverage verdict.
pub fn lemma5_obstruction(case: &ObstructionCase, grid: &GridSpec) -> Result<ConstructionReport> {
    case.validate()?;
    // cells centered in the closed disc; the usual outward dilation would let
    // components leak around an obstacle that ends on the boundary circle
    let inner = (case.disc.radius - grid.cell * std::f64::consts::FRAC_1_SQRT_2).max(0.0);
    let domain = rasterize(&Scene::new(vec![Primitive::Disc { center: case.disc.center, radius: inner }]), grid)?;
    let obstacle = rasterize(&case.obstacle, grid)?;
    let probe = rasterize(&case.probe, grid)?;
    let overlap = probe.intersection(&obstacle)?.count();
    if overlap > 0 {
        return Err(Error::Precondition(format!("probe meets the obstacle in {overlap} cells at t = 0")));
    }

    // pull the probe back along M⁻¹ on [0, t_end], at sweep's frame refinement
    let back = inverse_movement(&case.movement).restrict(case.t_end);
    let times = frame_times(&back, &case.probe, 2, grid.cell);
    for &s in &times {
        let posed = case.probe.transform(&back.eval(s));
        if posed.max_distance_from(case.disc.center) > case.disc.radius {
            return Err(Error::TrajectoryEscape { t: s * case.t_end });
        }
    }
    let pulled = case.probe.transform(&back.eval(1.0));
    let pulled_mask = rasterize(&pulled, grid)?;

    let lab = connected_components(&domain, &obstacle)?;
    let (a, b) = (labels(&lab, &probe)?, labels(&lab, &pulled_mask)?);
    let distinct = !a.is_empty() && !b.is_empty() && a.is_disjoint(&b);

    let mut r = ConstructionReport::new("lemma5_obstruction");
    r.measure("components", lab.count())
        .measure("cell", grid.cell)
        .measure("trajectory_samples", times.len())
        .measure("probe_labels", &a)
        .measure("pulled_labels", &b)
        .measure("hypothesis_met", distinct);
    if distinct {
        let w = sweep(&case.movement.restrict(case.t_end), &case.obstacle, 2, grid)?.neighborhood(grid.cell);
        let uncovered = probe.difference(&w)?.count();
        r.measure("probe_cells", probe.count())
            .measure("uncovered_cells", uncovered)
            .verdict("probe_covered", InequalityCheck::new(uncovered as f64, 0.0, 0.0));
    }
    Ok(r)
}

/// Number of components of `domain ∖ obstacle` meeting the disc of radius `r` about `p`,
/// at the grid's resolution.
pub fn components_near(domain: &RasterMask, obstacle: &RasterMask, p: Point, r: f64) -> Result<usize> {
    let lab = connected_components(domain, obstacle)?;
    let ball = rasterize(&Scene::new(vec![Primitive::Disc { center: p, radius: r }]), domain.grid())?;
    Ok(labels(&lab, &ball)?.len())
}
