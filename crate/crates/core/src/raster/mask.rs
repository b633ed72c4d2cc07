use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Point;

/// Axis-aligned box cut into square cells. Row 0 is the bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: Point,
    pub max: Point,
    pub cell: f64,
}

impl GridSpec {
    pub fn new(min: Point, max: Point, cell: f64) -> Result<Self> {
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(Error::Invalid(format!("cell size must be positive, got {cell}")));
        }
        if !(max.re > min.re && max.im > min.im) {
            return Err(Error::Invalid("grid box is degenerate".into()));
        }
        let g = Self { min, max, cell };
        if (g.cols() as u64) * (g.rows() as u64) > 1 << 42 || g.cols() >= u32::MAX as usize {
            return Err(Error::Invalid("grid too large".into()));
        }
        Ok(g)
    }

    /// Box `[lo − margin, hi + margin]` with corners snapped to multiples of `cell`.
    pub fn around(lo: Point, hi: Point, margin: f64, cell: f64) -> Result<Self> {
        let snap_lo = |v: f64| ((v - margin) / cell).floor() * cell;
        let snap_hi = |v: f64| ((v + margin) / cell).ceil() * cell;
        Self::new(Point::new(snap_lo(lo.re), snap_lo(lo.im)), Point::new(snap_hi(hi.re), snap_hi(hi.im)), cell)
    }

    pub fn cols(&self) -> usize {
        ((self.max.re - self.min.re) / self.cell - 1e-9).ceil().max(1.0) as usize
    }

    pub fn rows(&self) -> usize {
        ((self.max.im - self.min.im) / self.cell - 1e-9).ceil().max(1.0) as usize
    }

    pub fn center(&self, row: usize, col: usize) -> Point {
        self.min + Point::new((col as f64 + 0.5) * self.cell, (row as f64 + 0.5) * self.cell)
    }

    pub fn row_y(&self, row: usize) -> f64 {
        self.min.im + (row as f64 + 0.5) * self.cell
    }

    pub fn col_x(&self, col: usize) -> f64 {
        self.min.re + (col as f64 + 0.5) * self.cell
    }

    /// Rows whose center height lies in `[y0, y1]`.
    pub fn rows_between(&self, y0: f64, y1: f64) -> std::ops::Range<usize> {
        let lo = ((y0 - self.min.im) / self.cell - 0.5).ceil().max(0.0);
        let hi = ((y1 - self.min.im) / self.cell - 0.5).floor() + 1.0;
        let hi = hi.clamp(0.0, self.rows() as f64);
        (lo.min(hi) as usize)..(hi as usize)
    }

    /// Columns whose center lies in `[x0, x1]`, as a half-open range.
    pub fn cols_between(&self, x0: f64, x1: f64) -> (u32, u32) {
        let lo = ((x0 - self.min.re) / self.cell - 0.5).ceil().max(0.0);
        let hi = (((x1 - self.min.re) / self.cell - 0.5).floor() + 1.0).clamp(0.0, self.cols() as f64);
        (lo.min(hi) as u32, hi as u32)
    }

    pub fn contains_box(&self, lo: Point, hi: Point) -> bool {
        lo.re >= self.min.re && lo.im >= self.min.im && hi.re <= self.max.re && hi.im <= self.max.im
    }

    /// Cell holding `p`, if inside the grid.
    pub fn locate(&self, p: Point) -> Option<(usize, usize)> {
        let c = ((p.re - self.min.re) / self.cell).floor();
        let r = ((p.im - self.min.im) / self.cell).floor();
        (c >= 0.0 && r >= 0.0 && (c as usize) < self.cols() && (r as usize) < self.rows())
            .then(|| (r as usize, c as usize))
    }
}

type Row = Vec<(u32, u32)>;

/// Occupancy grid, stored row-major as sorted runs `[start, end)` of set cells.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterMask {
    grid: GridSpec,
    rows: Vec<Row>,
}

fn insert_run(row: &mut Row, a: u32, b: u32) {
    if a >= b {
        return;
    }
    let i = row.partition_point(|s| s.1 < a);
    let mut j = i;
    let (mut na, mut nb) = (a, b);
    while j < row.len() && row[j].0 <= b {
        na = na.min(row[j].0);
        nb = nb.max(row[j].1);
        j += 1;
    }
    if i == j {
        row.insert(i, (na, nb));
    } else {
        row[i] = (na, nb);
        row.drain(i + 1..j);
    }
}

fn run_subset(a: &Row, b: &Row) -> bool {
    a.iter().all(|&(s, e)| {
        let k = b.partition_point(|r| r.1 <= s);
        k < b.len() && b[k].0 <= s && e <= b[k].1
    })
}

/// `a ∖ b` for one row.
pub(crate) fn run_difference(a: &Row, b: &Row) -> Row {
    let mut out = Vec::new();
    let mut k = 0;
    for &(s, e) in a {
        let mut cur = s;
        while k < b.len() && b[k].1 <= cur {
            k += 1;
        }
        let mut m = k;
        while m < b.len() && b[m].0 < e {
            if b[m].0 > cur {
                out.push((cur, b[m].0));
            }
            cur = cur.max(b[m].1);
            m += 1;
        }
        if cur < e {
            out.push((cur, e));
        }
    }
    out
}

impl RasterMask {
    pub fn new(grid: GridSpec) -> Self {
        Self { rows: vec![Vec::new(); grid.rows()], grid }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.cols()
    }

    pub fn row_runs(&self, row: usize) -> &[(u32, u32)] {
        &self.rows[row]
    }

    pub fn set_run(&mut self, row: usize, a: u32, b: u32) {
        let b = b.min(self.grid.cols() as u32);
        insert_run(&mut self.rows[row], a, b);
    }

    /// Sets the cells of `row` whose centers lie in `[x0, x1]`.
    pub fn set_x_interval(&mut self, row: usize, x0: f64, x1: f64) {
        let (a, b) = self.grid.cols_between(x0, x1);
        insert_run(&mut self.rows[row], a, b);
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.set_run(row, col as u32, col as u32 + 1);
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        let r = &self.rows[row];
        let k = r.partition_point(|s| s.1 <= col as u32);
        k < r.len() && r[k].0 <= col as u32
    }

    pub fn count(&self) -> u64 {
        self.rows.iter().flatten().map(|&(a, b)| (b - a) as u64).sum()
    }

    /// Set-cell count times the cell area.
    pub fn area(&self) -> f64 {
        self.count() as f64 * self.grid.cell * self.grid.cell
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    fn same_grid(&self, other: &RasterMask) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn union_with(&mut self, other: &RasterMask) -> Result<()> {
        self.same_grid(other)?;
        for (mine, theirs) in self.rows.iter_mut().zip(&other.rows) {
            if mine.is_empty() {
                mine.clone_from(theirs);
            } else {
                for &(a, b) in theirs {
                    insert_run(mine, a, b);
                }
            }
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &RasterMask) -> Result<bool> {
        self.same_grid(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| run_subset(a, b)))
    }

    /// Cells set here but not in `other`.
    pub fn difference(&self, other: &RasterMask) -> Result<RasterMask> {
        self.same_grid(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| run_difference(a, b)).collect();
        Ok(RasterMask { grid: self.grid, rows })
    }

    pub fn intersection(&self, other: &RasterMask) -> Result<RasterMask> {
        let outside = self.difference(other)?;
        self.difference(&outside)
    }

    /// Dilation by a disc of radius `eps`, measured between cell centers.
    pub fn neighborhood(&self, eps: f64) -> RasterMask {
        let k = eps / self.grid.cell;
        let kk = k.floor() as i64;
        let widths: Vec<u32> =
            (0..=kk).map(|dy| ((k * k - (dy * dy) as f64).max(0.0).sqrt() + 1e-9).floor() as u32).collect();
        let mut out = RasterMask::new(self.grid);
        let nrows = self.rows.len() as i64;
        let ncols = self.grid.cols() as u32;
        for (i, row) in self.rows.iter().enumerate() {
            for &(a, b) in row {
                for dy in -kk..=kk {
                    let r = i as i64 + dy;
                    if r < 0 || r >= nrows {
                        continue;
                    }
                    let w = widths[dy.unsigned_abs() as usize];
                    insert_run(&mut out.rows[r as usize], a.saturating_sub(w), (b + w).min(ncols));
                }
            }
        }
        out
    }

    /// Or-pools `f × f` blocks into one cell of a grid `f` times coarser.
    pub fn coarsen(&self, f: usize) -> RasterMask {
        let f = f.max(1);
        let g = GridSpec {
            min: self.grid.min,
            max: self.grid.min
                + Point::new(
                    (self.grid.cols().div_ceil(f) * f) as f64 * self.grid.cell,
                    (self.rows().div_ceil(f) * f) as f64 * self.grid.cell,
                ),
            cell: self.grid.cell * f as f64,
        };
        let mut out = RasterMask::new(g);
        for (i, row) in self.rows.iter().enumerate() {
            for &(a, b) in row {
                insert_run(&mut out.rows[i / f], a / f as u32, (b - 1) / f as u32 + 1);
            }
        }
        out
    }

    pub fn runs(&self) -> impl Iterator<Item = (usize, u32, u32)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&(a, b)| (i, a, b)))
    }

    pub fn run_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Binary PGM, one byte per cell, 255 for set cells, top row first.
    pub fn to_pgm(&self) -> Vec<u8> {
        let cols = self.grid.cols();
        let mut out = format!("P5\n{} {}\n255\n", cols, self.rows()).into_bytes();
        for row in self.rows.iter().rev() {
            let mut line = vec![0u8; cols];
            for &(a, b) in row {
                line[a as usize..b as usize].fill(255);
            }
            out.extend_from_slice(&line);
        }
        out
    }

    /// SVG in world coordinates; set runs become rectangles. Masks with more than
    /// `max_runs` runs are or-pooled first.
    pub fn to_svg(&self, overlay: Option<&crate::Scene>, max_runs: usize) -> String {
        let mut m = self;
        let pooled;
        if self.run_count() > max_runs {
            let f = ((self.run_count() as f64 / max_runs as f64).sqrt().ceil() as usize).max(2);
            pooled = self.coarsen(f);
            m = &pooled;
        }
        let g = m.grid;
        let (w, h) = (g.max.re - g.min.re, g.max.im - g.min.im);
        let mut s = String::new();
        let _ = write!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
            g.min.re,
            -g.max.im,
            w,
            h,
            (800.0 * h / w).round().max(1.0)
        );
        s.push_str(r##"<g transform="scale(1,-1)" fill="#1f3b73" shape-rendering="crispEdges">"##);
        for (i, a, b) in m.runs() {
            let _ = write!(
                s,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                g.min.re + a as f64 * g.cell,
                g.min.im + i as f64 * g.cell,
                (b - a) as f64 * g.cell,
                g.cell
            );
        }
        s.push_str("</g>");
        if let Some(scene) = overlay {
            s.push_str(&super::export::scene_svg(scene, w.max(h) / 800.0));
        }
        s.push_str("</svg>");
        s
    }
}
