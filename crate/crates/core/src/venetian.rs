//! Venetian blinds: rectangles repeatedly replaced by thin slats in a new
//! direction, shrinking the shadow in that direction while the older shadows
//! and the distance sets stay nearly intact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motion::pt;
use crate::raster::{rasterize, sweep, GridSpec, RasterMask};
use crate::report::{ConstructionReport, InequalityCheck};
use crate::{Movement, Point, Primitive, Scene};

/// A closed rectangle whose long side follows the system direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slat {
    pub center: Point,
    pub length: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectangleSystem {
    pub generation: u32,
    pub direction: Point,
    pub rectangles: Vec<Slat>,
}

/// `directions[n]` is `e_{n+1}`, `width_schedule[n]` the slat width of generation `n + 1`
/// and `slat_counts[n]` the split used to pass from generation `n + 1` to `n + 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlindParams {
    pub directions: Vec<Point>,
    pub slat_counts: Vec<usize>,
    pub width_schedule: Vec<f64>,
    pub initial_length: f64,
}

pub const MAX_GENERATIONS: u32 = 6;

impl BlindParams {
    /// `e_n` at angle `1/n` from `e = (1, 0)`, `K_1` of size `3 × 0.5`.
    ///
    /// Each new width is `1.3 λ tan(γ') / S`, with `λ` the new slat length and `γ'`
    /// the next turn: then every slat at the next step runs corner to corner across
    /// its slot, so the shadow in the current direction is kept whole.
    pub fn default_schedule(generations: u32, slats: usize) -> Result<Self> {
        if !(1..=MAX_GENERATIONS).contains(&generations) {
            return Err(Error::Invalid(format!("generations must be between 1 and {MAX_GENERATIONS}")));
        }
        if slats < 2 {
            return Err(Error::Invalid("at least 2 slats per parent".into()));
        }
        let g = generations as usize;
        let angle = |n: usize| 1.0 / n as f64;
        let s = slats as f64;
        let (mut l, mut w) = (3.0, 0.5);
        let mut widths = vec![w];
        for n in 1..g {
            let turn = angle(n) - angle(n + 1);
            let next = angle(n + 1) - angle(n + 2);
            let mut lam = l / s;
            let mut om = 0.0;
            for _ in 0..100 {
                om = 1.3 * lam * next.tan() / s;
                lam = ((w - om * turn.cos()) / turn.sin()).min((l / s - om * turn.sin()) / turn.cos());
            }
            widths.push(om);
            (l, w) = (lam, om);
        }
        let p = BlindParams {
            directions: (1..=g).map(|n| Point::from_polar(1.0, angle(n))).collect(),
            slat_counts: vec![slats; g - 1],
            width_schedule: widths,
            initial_length: 3.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn generations(&self) -> u32 {
        self.directions.len() as u32
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.directions.len();
        let bad = |m: &str| Err(Error::Invalid(m.to_string()));
        if g == 0 || self.width_schedule.len() != g || self.slat_counts.len() + 1 != g {
            return bad("need one direction and width per generation and one slat count per step");
        }
        if !self.directions.iter().all(|d| (d.norm() - 1.0).abs() < 1e-9) {
            return bad("directions must be unit vectors");
        }
        for i in 0..g {
            for j in 0..i {
                if (self.directions[i] - self.directions[j]).norm() < 1e-12 {
                    return bad("directions must be pairwise distinct");
                }
            }
        }
        if !(self.width_schedule[0] < 1.0 && self.width_schedule.iter().all(|w| *w > 0.0)) {
            return bad("widths must be positive and K_1 narrower than 1");
        }
        if !self.width_schedule.windows(2).all(|w| w[1] < w[0]) {
            return bad("widths must strictly decrease");
        }
        if !(self.initial_length > 0.0) || self.slat_counts.iter().any(|s| *s < 2) {
            return bad("need a positive length and at least 2 slats per step");
        }
        Ok(())
    }
}

impl RectangleSystem {
    pub fn scene(&self) -> Scene {
        Scene::new(
            self.rectangles
                .iter()
                .map(|r| Primitive::Rectangle { center: r.center, direction: self.direction, length: r.length, width: r.width })
                .collect(),
        )
    }

    fn corners(&self) -> impl Iterator<Item = [Point; 4]> + '_ {
        self.rectangles.iter().map(|r| Primitive::rectangle_corners(r.center, self.direction, r.length, r.width))
    }
}

pub fn init_blind(params: &BlindParams) -> Result<RectangleSystem> {
    params.validate()?;
    Ok(RectangleSystem {
        generation: 1,
        direction: params.directions[0],
        rectangles: vec![Slat { center: pt(0.0, 0.0), length: params.initial_length, width: params.width_schedule[0] }],
    })
}

/// Cuts each parent into `slats` equal slots along its axis and puts in each slot the
/// longest rectangle of direction `next_direction` and the given width centered there.
pub fn refine(sys: &RectangleSystem, next_direction: Point, slats: usize, width: f64) -> Result<RectangleSystem> {
    let n = next_direction.norm();
    if !(n > 0.0 && n.is_finite()) || slats < 2 || !(width > 0.0) {
        return Err(Error::Invalid("refine needs a direction, at least 2 slats and a positive width".into()));
    }
    let next = next_direction / n;
    let turn = next * sys.direction.conj();
    let (sg, cg) = (turn.im.abs(), turn.re.abs());
    if sg < 1e-12 {
        return Err(Error::Invalid("next direction must differ from the current one".into()));
    }
    let s = slats as f64;
    let mut out = Vec::with_capacity(sys.rectangles.len() * slats);
    for r in &sys.rectangles {
        let across = (r.width - width * cg) / sg;
        let along = if cg > 0.0 { (r.length / s - width * sg) / cg } else { f64::INFINITY };
        let lam = across.min(along);
        if !(lam > 0.0) {
            return Err(Error::SlatsDontFit { slats, width, parent_width: r.width });
        }
        for j in 0..slats {
            let off = -r.length / 2.0 + (j as f64 + 0.5) * r.length / s;
            out.push(Slat { center: r.center + sys.direction * off, length: lam, width });
        }
    }
    Ok(RectangleSystem { generation: sys.generation + 1, direction: next, rectangles: out })
}

/// Total length of a union of intervals.
fn union_length(mut iv: Vec<(f64, f64)>) -> f64 {
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for (a, b) in iv {
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
    total + cur.map_or(0.0, |(c0, c1)| c1 - c0)
}

fn shadows(sys: &RectangleSystem, direction: Point) -> Vec<(f64, f64)> {
    let nrm = direction / direction.norm() * Point::i();
    sys.corners()
        .map(|c| {
            let ps = c.map(|p| (p * nrm.conj()).re);
            (ps.iter().copied().fold(f64::INFINITY, f64::min), ps.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        })
        .collect()
}

/// Length of the orthogonal projection onto the line perpendicular to `direction`.
pub fn projection_measure(sys: &RectangleSystem, direction: Point) -> f64 {
    union_length(shadows(sys, direction))
}

/// Length of `{|x − p| : x ∈ K}`; each rectangle contributes `[min, max]` distance.
pub fn distance_set_measure(sys: &RectangleSystem, p: Point) -> f64 {
    let iv = sys
        .rectangles
        .iter()
        .zip(sys.corners())
        .map(|(r, c)| {
            let q = (p - r.center) * sys.direction.conj();
            let inside = q.re.abs() <= r.length / 2.0 && q.im.abs() <= r.width / 2.0;
            let near = if inside {
                0.0
            } else {
                (0..4).map(|k| crate::raster::geom::seg_dist(p, c[k], c[(k + 1) % 4])).fold(f64::INFINITY, f64::min)
            };
            (near, c.iter().map(|v| (v - p).norm()).fold(0.0, f64::max))
        })
        .collect();
    union_length(iv)
}

/// `∫ (max − min of K ∩ ℓ) dℓ` over lines `ℓ` parallel to `e`: the sweep along `R e`
/// meets each such line in a set no longer than `R` plus this span.
pub fn directional_span_integral(sys: &RectangleSystem, e: Point, samples: usize) -> f64 {
    let e = e / e.norm();
    let local: Vec<[Point; 4]> = sys.corners().map(|c| c.map(|p| p * e.conj())).collect();
    let sh = shadows(sys, e);
    let lo = sh.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let hi = sh.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    if !(lo < hi) {
        return 0.0;
    }
    let ds = (hi - lo) / samples.max(1) as f64;
    let mut total = 0.0;
    let mut buf = Vec::new();
    for k in 0..samples.max(1) {
        let y = lo + (k as f64 + 0.5) * ds;
        let (mut a, mut b) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in &local {
            buf.clear();
            crate::raster::geom::polygon_row(c, y, &mut buf);
            for &(x0, x1) in &buf {
                a = a.min(x0);
                b = b.max(x1);
            }
        }
        if a <= b {
            total += b - a;
        }
    }
    total * ds
}

/// Translates the system by `R e` and checks the sweep against
/// `R · shadow_e + span integral + 2 h Σ (2R + perimeter)`.
pub fn blind_mover(sys: &RectangleSystem, e: Point, r: f64, cell: f64) -> Result<(Movement, ConstructionReport)> {
    let (m, _, rep) = blind_mover_mask(sys, e, r, cell)?;
    Ok((m, rep))
}

pub(crate) fn blind_mover_mask(
    sys: &RectangleSystem,
    e: Point,
    r: f64,
    cell: f64,
) -> Result<(Movement, RasterMask, ConstructionReport)> {
    if !(r >= 0.0 && r.is_finite() && e.norm() > 0.0) {
        return Err(Error::Invalid("blind_mover needs R ≥ 0 and a nonzero direction".into()));
    }
    let e = e / e.norm();
    let m = Movement::translation(e * r);
    let scene = sys.scene();
    let (lo, hi) = scene.bbox().ok_or_else(|| Error::Invalid("empty rectangle system".into()))?;
    let grid = GridSpec::around(
        pt(lo.re.min(lo.re + e.re * r), lo.im.min(lo.im + e.im * r)),
        pt(hi.re.max(hi.re + e.re * r), hi.im.max(hi.im + e.im * r)),
        4.0 * cell,
        cell,
    )?;
    let mask = sweep(&m, &scene, 2, &grid)?;
    let shadow = projection_measure(sys, e);
    let caps = directional_span_integral(sys, e, 8192);
    let band = 2.0 * cell * sys.rectangles.iter().map(|q| 2.0 * r + 2.0 * (q.length + q.width)).sum::<f64>();
    let mut rep = ConstructionReport::new("blind_mover");
    rep.measure("generation", sys.generation)
        .measure("r", r)
        .measure("cell", cell)
        .measure("area", mask.area())
        .measure("shadow", shadow)
        .measure("caps", caps)
        .measure("band", band)
        .verdict("sweep_bound", InequalityCheck::new(mask.area(), r * shadow + caps + band, 0.0));
    Ok((m, mask, rep))
}

/// 25 points on the 5 × 5 grid over `[−4, 4]²`.
pub fn default_probes() -> Vec<Point> {
    let xs = [-4.0, -2.0, 0.0, 2.0, 4.0];
    xs.iter().flat_map(|&x| xs.iter().map(move |&y| pt(x, y))).collect()
}

/// Builds every generation and records shadows, distance sets, nesting and the mover bound.
pub fn venetian_report(params: &BlindParams, probes: &[Point], r: f64, cell: f64) -> Result<(Vec<RectangleSystem>, ConstructionReport)> {
    let mut gens = vec![init_blind(params)?];
    for n in 1..params.directions.len() {
        let next = refine(&gens[n - 1], params.directions[n], params.slat_counts[n - 1], params.width_schedule[n])?;
        gens.push(next);
    }
    let mut rep = ConstructionReport::new("venetian_blind");
    rep.measure("generations", gens.len()).measure("cell", cell).measure("r", r);
    let limit = pt(1.0, 0.0);
    let (lo, hi) = gens[0].scene().bbox().expect("nonempty");
    let grid = GridSpec::around(lo, hi, 4.0 * cell, cell)?;
    let mut prev_mask: Option<RasterMask> = None;
    // entry value of each probe: (generation it entered, measure then)
    let mut entry: Vec<Option<f64>> = vec![None; probes.len()];
    let mut prev_current = f64::INFINITY;
    for (idx, sys) in gens.iter().enumerate() {
        let n = idx + 1;
        let tag = |s: &str| format!("gen{n}.{s}");
        let cur = projection_measure(sys, sys.direction);
        let all: Vec<f64> = params.directions[..n].iter().map(|d| projection_measure(sys, *d)).collect();
        rep.measure(&tag("rectangles"), sys.rectangles.len())
            .measure(&tag("shadows"), &all)
            .measure(&tag("shadow_limit"), projection_measure(sys, limit))
            .verdict(&tag("current_shadow"), InequalityCheck::new(cur, 1.0 / n as f64, 0.0).strict());
        rep.verdict(&tag("current_decreasing"), InequalityCheck::new(cur, prev_current, 0.0).strict());
        prev_current = cur;
        if idx > 0 {
            for (j, d) in params.directions[..idx].iter().enumerate() {
                let before = projection_measure(&gens[idx - 1], *d);
                // per-step loss budget 2^{-(n-1)} times the shadow when e_j was current
                let start = projection_measure(&gens[j], *d);
                rep.verdict(&tag(&format!("retain_e{}", j + 1)), InequalityCheck::new(0.9 * before, all[j], 0.0))
                    .verdict(&tag(&format!("loss_e{}", j + 1)), InequalityCheck::new(before - all[j], start / (1u64 << idx) as f64, 0.0));
            }
        }
        let mut dist = Vec::new();
        for (k, p) in probes.iter().enumerate() {
            if p.norm() > n as f64 {
                continue;
            }
            let v = distance_set_measure(sys, *p);
            dist.push((k, v));
            let e0 = *entry[k].get_or_insert(v);
            rep.verdict(&tag(&format!("distance_p{k}")), InequalityCheck::new(0.5 * e0, v, 0.0));
        }
        rep.measure(&tag("distance_sets"), &dist);
        let mask = rasterize(&sys.scene(), &grid)?;
        if let Some(parent) = &prev_mask {
            rep.flag(&tag("nested"), mask.is_subset_of(&parent.neighborhood(cell))?);
        }
        prev_mask = Some(mask);
        let (_, _, mv) = blind_mover_mask(sys, limit, r, cell)?;
        rep.measure(&tag("mover_area"), mv.measured_f64("area"))
            .measure(&tag("mover_caps"), mv.measured_f64("caps"))
            .verdict(&tag("mover"), *mv.get("sweep_bound").expect("set above"));
    }
    Ok((gens, rep))
}
