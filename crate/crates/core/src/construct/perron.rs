use crate::error::{Error, Result};
use crate::motion::pt;
use crate::raster::{rasterize, GridSpec};
use crate::report::{ConstructionReport, InequalityCheck};
use crate::{Point, Primitive, Scene};

/// Overlap factor used at depth `k`.
pub fn perron_alpha(k: u32) -> f64 {
    1.0 - 2.0 / (k as f64 + 5.0)
}

/// Shifts along the base, in units of the base length, of the `2^k` pieces.
///
/// At each level sibling groups are first made contiguous, then the right one is
/// pushed left by `(1 − α)` of the pair's core width, so the pair's core shrinks to `α` of it.
pub fn perron_shifts(k: u32, alpha: f64) -> Vec<f64> {
    let n = 1usize << k;
    let b = 1.0 / n as f64;
    let mut tau = vec![0.0; n];
    // (first piece, end piece, core left, core width)
    let mut groups: Vec<(usize, usize, f64, f64)> = (0..n).map(|i| (i, i + 1, i as f64 * b, b)).collect();
    for _ in 0..k {
        groups = groups
            .chunks_exact(2)
            .map(|g| {
                let ((s1, _, a1, w1), (s2, e2, a2, w2)) = (g[0], g[1]);
                let shift = (a1 + w1) - a2 - (1.0 - alpha) * (w1 + w2);
                for t in &mut tau[s2..e2] {
                    *t += shift;
                }
                (s1, e2, a1, alpha * (w1 + w2))
            })
            .collect();
    }
    tau
}

fn triangle(base: &Scene) -> Result<[Point; 3]> {
    match base.primitives.as_slice() {
        [Primitive::Polygon { vertices }] if vertices.len() == 3 => Ok([vertices[0], vertices[1], vertices[2]]),
        _ => Err(Error::Invalid("base triangle must be one polygon [b0, b1, apex]".into())),
    }
}

/// The triangle with base `[(0,0), (1,0)]` and apex `(1/2, 1)`.
pub fn unit_triangle() -> Scene {
    Scene::new(vec![Primitive::Polygon { vertices: vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.5, 1.0)] }])
}

/// The `2^k` translated pieces `[b0 + i d, b0 + (i+1) d, apex] + τ_i (b1 − b0)`.
pub fn perron_pieces(k: u32, base_triangle: &Scene) -> Result<Vec<[Point; 3]>> {
    if k == 0 || k > 16 {
        return Err(Error::Precondition("Perron depth must be between 1 and 16".into()));
    }
    let [b0, b1, apex] = triangle(base_triangle)?;
    let e = b1 - b0;
    let n = 1usize << k;
    let tau = perron_shifts(k, perron_alpha(k));
    Ok((0..n)
        .map(|i| {
            let s = e * tau[i];
            let l = b0 + e * (i as f64 / n as f64);
            let r = b0 + e * ((i + 1) as f64 / n as f64);
            [l + s, r + s, apex + s]
        })
        .collect())
}

/// Builds the tree and measures its union area on a grid of cell `cell`.
pub fn perron_tree(k: u32, base_triangle: &Scene, cell: f64) -> Result<(Scene, ConstructionReport)> {
    let pieces = perron_pieces(k, base_triangle)?;
    let [b0, b1, apex] = triangle(base_triangle)?;
    let scene = Scene::new(pieces.iter().map(|p| Primitive::Polygon { vertices: p.to_vec() }).collect());
    let tri_area = 0.5 * ((b1 - b0) * (apex - b0).conj()).im.abs();
    let mut all = scene.clone();
    all.extend(base_triangle.clone());
    let (lo, hi) = all.bbox().expect("nonempty");
    let grid = GridSpec::around(lo, hi, 4.0 * cell, cell)?;
    let area = rasterize(&scene, &grid)?.area();
    let tri_raster = rasterize(base_triangle, &grid)?.area();

    // every median direction apex → base midpoint survives as a full segment of its piece
    let mut missing = 0;
    for p in &pieces {
        let (a, m) = (p[2], (p[0] + p[1]) / 2.0);
        if !(0..=32).all(|j| scene.distance(a + (m - a) * (j as f64 / 32.0)) <= 1e-9) {
            missing += 1;
        }
    }
    let mut r = ConstructionReport::new("perron_tree");
    r.measure("k", k)
        .measure("alpha", perron_alpha(k))
        .measure("pieces", pieces.len())
        .measure("cell", cell)
        .measure("area", area)
        .measure("triangle_area", tri_area)
        .measure("triangle_raster_area", tri_raster)
        .measure("area_ratio", area / tri_area)
        .verdict("smaller_than_triangle", InequalityCheck::new(area, tri_raster, 0.0).strict())
        .flag("directions_preserved", missing == 0);
    Ok((scene, r))
}
