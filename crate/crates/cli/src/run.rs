use std::error::Error;
use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use kakeya_core::construct::{
    dimension2_cover, dimension2_example, dimension2_report, needle_report, needle_reversal_plan, pal_join, path_length,
    perron_tree, unit_triangle, CantorSpec, NeedleOptions,
};
use kakeya_core::motion::pt;
use kakeya_core::raster::{grid_for, rasterize, scene_document, sweep_with_stats};
use kakeya_core::topology::{classify_component, default_tol, lemma5_obstruction, ObstructionCase};
use kakeya_core::venetian::{default_probes, venetian_report, BlindParams};
use kakeya_core::{ConstructionReport, GridSpec, Movement, Point, Primitive, RasterMask, RigidMotion, Scene};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::{Cli, Command, Common};

type Res<T> = Result<T, Box<dyn Error>>;

/// Largest grid written as PGM, in cells.
const PGM_LIMIT: usize = 1 << 26;
const SVG_RUNS: usize = 20_000;

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    config: &'a Cli,
    seed: u64,
    #[serde(flatten)]
    report: &'a ConstructionReport,
    pass: bool,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Res<T> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn cell(c: &Common, default: f64) -> Res<f64> {
    let h = c.cell.unwrap_or(default);
    if !(h > 0.0 && h.is_finite()) {
        return Err("--cell must be positive".into());
    }
    Ok(h)
}

/// Writes the optional SVG and PGM outputs.
fn render(c: &Common, mask: Option<&RasterMask>, overlay: Option<&Scene>) -> Res<()> {
    if let Some(p) = &c.svg {
        let svg = match (mask, overlay) {
            (Some(m), o) => m.to_svg(o, SVG_RUNS),
            (None, Some(s)) => scene_document(s),
            (None, None) => return Ok(()),
        };
        fs::write(p, svg)?;
    }
    if let (Some(p), Some(m)) = (&c.pgm, mask) {
        if m.rows() * m.cols() <= PGM_LIMIT {
            fs::write(p, m.to_pgm())?;
        } else {
            eprintln!("kakeya: grid of {} × {} cells is too large for PGM, skipped", m.cols(), m.rows());
        }
    }
    Ok(())
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Sweep { .. } => "sweep",
        Command::Perron { .. } => "perron",
        Command::Needle { .. } => "needle",
        Command::Paljoin { .. } => "paljoin",
        Command::ExampleK2 { .. } => "example-k2",
        Command::Venetian { .. } => "venetian",
        Command::Obstruct { .. } => "obstruct",
        Command::Classify { .. } => "classify",
        Command::VerifyLemmas => "verify-lemmas",
    }
}

/// Runs one command; `Ok(pass)` on success, `Err` on invalid input.
pub fn dispatch(cli: &Cli) -> Res<bool> {
    let c = &cli.common;
    let report = match &cli.command {
        Command::Sweep { scene, movement } => {
            let scene: Scene = read_json(scene)?;
            let m: Movement = read_json(movement)?;
            scene.validate()?;
            m.validate()?;
            if scene.is_empty() {
                return Err("scene has no primitives".into());
            }
            let h = cell(c, 0.01)?;
            let grid = grid_for(&m, &scene, 4.0 * h, h)?;
            let (mask, stats) = sweep_with_stats(&m, &scene, c.steps.max(2), &grid)?;
            let mut r = ConstructionReport::new("sweep");
            r.measure("area", mask.area())
                .measure("cells", mask.count())
                .measure("cell", h)
                .measure("grid", (grid.cols(), grid.rows()))
                .measure("frames", stats.frames)
                .measure("exact_slides", stats.exact_slides)
                .measure("path_length", path_length(&m, &scene));
            render(c, Some(&mask), Some(&scene))?;
            r
        }
        Command::Perron { k, base } => {
            let base = match base {
                Some(p) => read_json(p)?,
                None => unit_triangle(),
            };
            let h = cell(c, 1e-3)?;
            let (tree, r) = perron_tree(*k, &base, h)?;
            if c.svg.is_some() || c.pgm.is_some() {
                let mut all = tree.clone();
                all.primitives.extend(base.primitives.iter().cloned());
                let (lo, hi) = all.bbox().expect("nonempty");
                let mask = rasterize(&tree, &GridSpec::around(lo, hi, 4.0 * h, h)?)?;
                render(c, Some(&mask), Some(&base))?;
            }
            r
        }
        Command::Needle { eps, trees, k_max } => {
            let h = cell(c, 1e-3)?;
            let opts = NeedleOptions { cell: h, trees: *trees, k_max: *k_max, ..NeedleOptions::default() };
            let plan = needle_reversal_plan(*eps, &opts)?;
            let (mask, r) = needle_report(&plan, h, c.steps)?;
            render(c, Some(&mask), Some(&plan.trees))?;
            r
        }
        Command::Paljoin { length, offset, eps } => {
            let h = cell(c, 1e-3)?;
            let sched = pal_join(*length, *offset, *eps)?;
            let (mask, mut r) = sched.measure(h, c.steps)?;
            r.name = "pal_join".into();
            r.measure("eps", eps).measure("length", length).measure("offset", offset);
            render(c, Some(&mask), Some(&sched.start))?;
            r
        }
        Command::ExampleK2 { depth, alpha } => {
            let alpha = match alpha {
                Some(p) => read_json::<RigidMotion>(p)?,
                None => RigidMotion::rotation(pt(0.0, 0.0), PI / 3.0).compose(&RigidMotion::translation(pt(1.0, 1.0))),
            };
            let h = cell(c, 2e-3)?;
            let e = CantorSpec::new(1.0, 2.0, 1.0 / 3.0, *depth)?;
            let f = CantorSpec::new(0.0, 0.5, 1.0 / 3.0, *depth)?;
            let (mask, r) = dimension2_report(&e, &f, &alpha, h, c.steps)?;
            let mut overlay = dimension2_example(&e, &f)?;
            overlay.primitives.extend(dimension2_cover(&e, &f, &alpha).primitives);
            render(c, Some(&mask), Some(&overlay))?;
            r
        }
        Command::Venetian { generations, slats, r } => {
            let h = cell(c, 2e-3)?;
            let params = BlindParams::default_schedule(*generations, *slats)?;
            let (gens, mut rep) = venetian_report(&params, &default_probes(), *r, h)?;
            rep.measure("params", &params);
            let mut all = Scene::default();
            for g in &gens {
                all.primitives.extend(g.scene().primitives);
            }
            render(c, None, Some(&all))?;
            rep
        }
        Command::Obstruct { case } => {
            let case: ObstructionCase = read_json(case)?;
            let h = cell(c, 0.01)?;
            let (ctr, rad) = (case.disc.center, case.disc.radius);
            let mut lo = ctr - Point::new(rad, rad);
            let mut hi = ctr + Point::new(rad, rad);
            let m = case.movement.restrict(case.t_end);
            let reach = grid_for(&m, &case.obstacle, 0.0, h)?;
            lo = Point::new(lo.re.min(reach.min.re), lo.im.min(reach.min.im));
            hi = Point::new(hi.re.max(reach.max.re), hi.im.max(reach.max.im));
            let grid = GridSpec::around(lo, hi, 4.0 * h, h)?;
            let r = lemma5_obstruction(&case, &grid)?;
            let mut overlay = case.obstacle.clone();
            overlay.primitives.extend(case.probe.primitives.iter().cloned());
            overlay.primitives.push(Primitive::Disc { center: ctr, radius: rad });
            render(c, None, Some(&overlay))?;
            r
        }
        Command::Classify { points, tol } => {
            let pts = read_points(points)?;
            let tol = tol.unwrap_or_else(|| default_tol(&pts));
            let rep = classify_component(&pts, tol)?;
            let mut r = ConstructionReport::new("classify_component");
            r.measure("samples", pts.len()).measure("result", &rep).measure("class", rep.class);
            render(c, None, Some(&Scene::new(vec![Primitive::Points { points: pts }])))?;
            r
        }
        Command::VerifyLemmas => kakeya_core::verify::verify_lemmas(c.seed)?.1,
    };
    let pass = report.pass();
    let out = RunReport { command: command_name(&cli.command), config: cli, seed: c.seed, report: &report, pass };
    let json = serde_json::to_string_pretty(&out)?;
    match &c.report {
        Some(p) => fs::write(p, json + "\n")?,
        None => println!("{json}"),
    }
    for v in report.verdicts.iter().filter(|v| !v.check.pass) {
        eprintln!("kakeya: verdict {} failed: {} > {}", v.name, v.check.lhs, v.check.rhs);
    }
    Ok(pass)
}

/// A JSON list of `[x, y]` pairs, or a scene whose vertices and points are collected.
fn read_points(path: &Path) -> Res<Vec<Point>> {
    let v: serde_json::Value = read_json(path)?;
    let pts = if v.is_array() {
        serde_json::from_value::<Vec<Point>>(v)?
    } else {
        let s: Scene = serde_json::from_value(v)?;
        s.primitives
            .into_iter()
            .flat_map(|p| match p {
                Primitive::Points { points } => points,
                Primitive::Polygon { vertices } => vertices,
                Primitive::Segment { a, b } => vec![a, b],
                _ => Vec::new(),
            })
            .collect()
    };
    if pts.is_empty() || !pts.iter().all(|p| p.re.is_finite() && p.im.is_finite()) {
        return Err("need at least one finite point".into());
    }
    Ok(pts)
}
