use super::mask::run_difference;
use super::{GridSpec, RasterMask};
use crate::error::{Error, Result};

/// A maximal horizontal run of clear cells and its component id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub row: u32,
    pub start: u32,
    pub end: u32,
    pub label: u32,
}

/// 4-connected components of `domain ∖ obstacle`.
#[derive(Debug, Clone)]
pub struct Labeling {
    grid: GridSpec,
    runs: Vec<Run>,
    row_start: Vec<usize>,
    sizes: Vec<u64>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

pub fn connected_components(domain: &RasterMask, obstacle: &RasterMask) -> Result<Labeling> {
    if domain.grid() != obstacle.grid() {
        return Err(Error::GridMismatch);
    }
    let mut runs = Vec::new();
    let mut row_start = Vec::with_capacity(domain.rows() + 1);
    let mut parent: Vec<u32> = Vec::new();
    let mut prev = 0..0;
    for i in 0..domain.rows() {
        row_start.push(runs.len());
        let clear = run_difference(&domain.row_runs(i).to_vec(), &obstacle.row_runs(i).to_vec());
        let here = runs.len();
        let mut k = prev.start;
        for (a, b) in clear {
            let id = parent.len() as u32;
            parent.push(id);
            while k < prev.end && runs_end(&runs, k) <= a {
                k += 1;
            }
            let mut m = k;
            while m < prev.end {
                let r: &Run = &runs[m];
                if r.start >= b {
                    break;
                }
                let (x, y) = (find(&mut parent, r.label), find(&mut parent, id));
                if x != y {
                    let (lo, hi) = (x.min(y), x.max(y));
                    parent[hi as usize] = lo;
                }
                m += 1;
            }
            runs.push(Run { row: i as u32, start: a, end: b, label: id });
        }
        prev = here..runs.len();
    }
    row_start.push(runs.len());
    // compact labels in order of first appearance
    let mut remap = vec![u32::MAX; parent.len()];
    let mut sizes = Vec::new();
    for r in runs.iter_mut() {
        let root = find(&mut parent, r.label) as usize;
        if remap[root] == u32::MAX {
            remap[root] = sizes.len() as u32;
            sizes.push(0);
        }
        r.label = remap[root];
        sizes[r.label as usize] += (r.end - r.start) as u64;
    }
    Ok(Labeling { grid: *domain.grid(), runs, row_start, sizes })
}

fn runs_end(runs: &[Run], k: usize) -> u32 {
    runs[k].end
}

impl Labeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn label_at(&self, row: usize, col: usize) -> Option<usize> {
        let rs = &self.runs[self.row_start[row]..self.row_start[row + 1]];
        let k = rs.partition_point(|r| r.end <= col as u32);
        (k < rs.len() && rs[k].start <= col as u32).then(|| rs[k].label as usize)
    }

    /// Cells `(row, col)` of one component.
    pub fn cells(&self, label: usize) -> Vec<(u32, u32)> {
        self.runs
            .iter()
            .filter(|r| r.label as usize == label)
            .flat_map(|r| (r.start..r.end).map(move |c| (r.row, c)))
            .collect()
    }

    pub fn component_mask(&self, label: usize) -> RasterMask {
        let mut m = RasterMask::new(self.grid);
        for r in self.runs.iter().filter(|r| r.label as usize == label) {
            m.set_run(r.row as usize, r.start, r.end);
        }
        m
    }

    /// Labels met by the set cells of `mask`, and how many of its cells are not clear.
    pub fn labels_under(&self, mask: &RasterMask) -> Result<(std::collections::BTreeSet<usize>, u64)> {
        if *mask.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let mut labels = std::collections::BTreeSet::new();
        let mut blocked = 0;
        for (i, a, b) in mask.runs() {
            for c in a..b {
                match self.label_at(i, c as usize) {
                    Some(l) => {
                        labels.insert(l);
                    }
                    None => blocked += 1,
                }
            }
        }
        Ok((labels, blocked))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::pt;
    use crate::raster::{rasterize, Primitive, Scene};

    fn disc_domain(g: &GridSpec) -> RasterMask {
        rasterize(&Scene::new(vec![Primitive::Disc { center: pt(0.0, 0.0), radius: 1.0 }]), g).unwrap()
    }

    #[test]
    fn component_counts() {
        let g = GridSpec::new(pt(-1.2, -1.2), pt(1.2, 1.2), 0.02).unwrap();
        let d = disc_domain(&g);
        let empty = RasterMask::new(g);
        assert_eq!(connected_components(&d, &empty).unwrap().count(), 1);
        let bar = rasterize(
            &Scene::new(vec![Primitive::Rectangle { center: pt(0.0, 0.0), direction: pt(1.0, 0.0), length: 2.4, width: 0.1 }]),
            &g,
        )
        .unwrap();
        let lab = connected_components(&d, &bar).unwrap();
        assert_eq!(lab.count(), 2);
        let (r0, c0) = g.locate(pt(0.0, 0.5)).unwrap();
        let (r1, c1) = g.locate(pt(0.0, -0.5)).unwrap();
        assert_ne!(lab.label_at(r0, c0), lab.label_at(r1, c1));
        let ring = rasterize(&Scene::new(vec![Primitive::Annulus { center: pt(0.0, 0.0), inner: 0.4, outer: 0.5 }]), &g).unwrap();
        assert_eq!(connected_components(&d, &ring).unwrap().count(), 2);
        assert_eq!(lab.sizes().iter().sum::<u64>(), d.difference(&bar).unwrap().count());
    }

    #[test]
    fn diagonal_touch_is_not_connected() {
        let g = GridSpec::new(pt(0.0, 0.0), pt(2.0, 2.0), 1.0).unwrap();
        let mut d = RasterMask::new(g);
        d.set(0, 0);
        d.set(1, 1);
        assert_eq!(connected_components(&d, &RasterMask::new(g)).unwrap().count(), 2);
    }

    #[test]
    fn u_shape_merges_late() {
        // two arms joined only at the top row: labels must merge across rows
        let g = GridSpec::new(pt(0.0, 0.0), pt(5.0, 4.0), 1.0).unwrap();
        let mut d = RasterMask::new(g);
        for i in 0..3 {
            d.set(i, 0);
            d.set(i, 4);
        }
        d.set_run(3, 0, 5);
        let lab = connected_components(&d, &RasterMask::new(g)).unwrap();
        assert_eq!(lab.count(), 1);
        assert_eq!(lab.cells(0).len(), 11);
    }
}
