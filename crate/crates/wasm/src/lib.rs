//! Browser bindings: each call returns a JSON string `{"svg": …, "report": …}`.

use kakeya_core::construct::{perron_tree, unit_triangle};
use kakeya_core::raster::{grid_for, rasterize, scene_document, sweep_with_stats};
use kakeya_core::venetian::{default_probes, venetian_report, BlindParams};
use kakeya_core::{ConstructionReport, GridSpec, Movement, Scene};
use serde_json::json;
use wasm_bindgen::prelude::*;

const SVG_RUNS: usize = 6_000;

fn out(svg: String, report: &ConstructionReport) -> Result<String, JsError> {
    Ok(json!({ "svg": svg, "report": report, "pass": report.pass() }).to_string())
}

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Perron tree of depth `k` over the unit triangle, rastered at `cell`.
#[wasm_bindgen]
pub fn perron(k: u32, cell: f64) -> Result<String, JsError> {
    let base = unit_triangle();
    let (tree, report) = perron_tree(k, &base, cell).map_err(err)?;
    let mut all = tree.clone();
    all.primitives.extend(base.primitives.iter().cloned());
    let (lo, hi) = all.bbox().expect("nonempty");
    let grid = GridSpec::around(lo, hi, 4.0 * cell, cell).map_err(err)?;
    let mask = rasterize(&tree, &grid).map_err(err)?;
    out(mask.to_svg(Some(&base), SVG_RUNS), &report)
}

/// Sweep of a scene (JSON) along a movement (JSON).
#[wasm_bindgen]
pub fn sweep(scene_json: &str, movement_json: &str, cell: f64, steps: usize) -> Result<String, JsError> {
    let scene: Scene = serde_json::from_str(scene_json).map_err(err)?;
    let m: Movement = serde_json::from_str(movement_json).map_err(err)?;
    scene.validate().map_err(err)?;
    m.validate().map_err(err)?;
    let grid = grid_for(&m, &scene, 4.0 * cell, cell).map_err(err)?;
    if grid.rows() * grid.cols() > 16_000_000 {
        return Err(JsError::new("grid too large for the browser; raise the cell size"));
    }
    let (mask, stats) = sweep_with_stats(&m, &scene, steps.max(2), &grid).map_err(err)?;
    let mut r = ConstructionReport::new("sweep");
    r.measure("area", mask.area())
        .measure("cell", cell)
        .measure("frames", stats.frames)
        .measure("exact_slides", stats.exact_slides);
    out(mask.to_svg(Some(&scene), SVG_RUNS), &r)
}

/// Venetian-blind generations with the default schedule.
#[wasm_bindgen]
pub fn venetian(generations: u32, slats: usize, cell: f64) -> Result<String, JsError> {
    let params = BlindParams::default_schedule(generations, slats).map_err(err)?;
    let (gens, report) = venetian_report(&params, &default_probes(), 1.0, cell).map_err(err)?;
    let all = Scene::new(gens.iter().flat_map(|g| g.scene().primitives).collect());
    out(scene_document(&all), &report)
}
