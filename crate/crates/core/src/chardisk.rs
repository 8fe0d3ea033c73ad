//! Characteristic disks of thick intervals.
//!
//! A boundary cycle runs up one directed geodesic and down the other through
//! thickness-realizing vertices. When the region it bounds is flat it is
//! developed row by row into the lattice: the disk row of layer `i` is the
//! unique geodesic from `s_i` to `t_i`, laid on the line `b = i - j`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{FlagComplex, Simplex, VertexId, UNSEEN};
use crate::directed::{LayerProfile, ThickInterval};
use crate::eplane::{lattice_distance, AxialCoord, OFFSETS};
use crate::error::{Error, Result};

const MAX_CYCLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCycle {
    pub interval: ThickInterval,
    /// `s_j ..= s_k`, chosen from the first directed geodesic.
    pub s: Vec<VertexId>,
    /// `t_j ..= t_k`, chosen from the second.
    pub t: Vec<VertexId>,
    pub thickness: Vec<u32>,
}

impl BoundaryCycle {
    /// `(s_j, …, s_k, t_k, …, t_j)`; the closing edge back to `s_j` is implicit.
    pub fn cycle(&self) -> Vec<VertexId> {
        let mut out = self.s.clone();
        out.extend(self.t.iter().rev());
        out
    }
}

fn check_interval(p: &LayerProfile, iv: ThickInterval) -> Result<()> {
    let ok = iv.j > 0
        && iv.j + 1 < iv.k
        && iv.k < p.n
        && p.layers[iv.j as usize].thin
        && p.layers[iv.k as usize].thin
        && p.layers[iv.j as usize + 1..iv.k as usize].iter().all(|l| !l.thin);
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("({},{}) is not a thick interval", iv.j, iv.k)))
    }
}

fn realizing_pairs(c: &FlagComplex, p: &LayerProfile, i: usize) -> Vec<(VertexId, VertexId)> {
    let l = &p.layers[i];
    let mut out = Vec::new();
    for &s in l.sigma.vertices() {
        let d = c.bfs(s, l.thickness);
        for &t in l.tau.vertices() {
            if d[t.idx()] == l.thickness {
                out.push((s, t));
            }
        }
    }
    out.sort();
    out
}

/// Every chain of thickness-realizing pairs with adjacent consecutive
/// choices, in lexicographic order, up to `limit` of them.
fn realizing_cycles(c: &FlagComplex, p: &LayerProfile, iv: ThickInterval, limit: usize) -> Result<Vec<BoundaryCycle>> {
    check_interval(p, iv)?;
    let options: Vec<Vec<(VertexId, VertexId)>> =
        (iv.j..=iv.k).map(|i| realizing_pairs(c, p, i as usize)).collect();
    let mut out = Vec::new();
    let mut pick: Vec<(VertexId, VertexId)> = Vec::new();
    fn walk(
        c: &FlagComplex,
        options: &[Vec<(VertexId, VertexId)>],
        pick: &mut Vec<(VertexId, VertexId)>,
        out: &mut Vec<Vec<(VertexId, VertexId)>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if pick.len() == options.len() {
            out.push(pick.clone());
            return;
        }
        for &(s, t) in &options[pick.len()] {
            if let Some(&(ps, pt)) = pick.last() {
                if !c.adjacent(ps, s) || !c.adjacent(pt, t) {
                    continue;
                }
            }
            pick.push((s, t));
            walk(c, options, pick, out, limit);
            pick.pop();
        }
    }
    let mut chains = Vec::new();
    walk(c, &options, &mut pick, &mut chains, limit);
    if chains.is_empty() {
        return Err(Error::NoRealizingChain { j: iv.j, k: iv.k });
    }
    let thickness: Vec<u32> = (iv.j..=iv.k).map(|i| p.layers[i as usize].thickness).collect();
    for chain in chains {
        let (s, t): (Vec<_>, Vec<_>) = chain.into_iter().unzip();
        if s[0] == t[0] || s[s.len() - 1] == t[t.len() - 1] {
            return Err(Error::ConditionViolated { index: iv.j as usize, reason: "boundary cycle not embedded".into() });
        }
        out.push(BoundaryCycle { interval: iv, s, t, thickness: thickness.clone() });
    }
    Ok(out)
}

/// The lexicographically least boundary cycle of a thick interval.
pub fn boundary_cycle(c: &FlagComplex, p: &LayerProfile, iv: ThickInterval) -> Result<BoundaryCycle> {
    Ok(realizing_cycles(c, p, iv, 1)?.remove(0))
}

/// One developed row: layer `i` occupies `(start ..= start + len, i - j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiskRow {
    pub start: i64,
    pub len: u32,
}

/// A flat characteristic disk with every surface found for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharDisk {
    pub interval: ThickInterval,
    pub rows: Vec<DiskRow>,
    /// Lattice cells of the disk in coordinate order.
    pub cells: Vec<AxialCoord>,
    /// Per surface, the image of each cell (parallel to `cells`).
    pub surfaces: Vec<Vec<VertexId>>,
}

impl CharDisk {
    /// Builds the cell list of a row sequence. Rows must start and end with
    /// single edges and shift by 0 or -1 at both ends between rows.
    pub fn from_rows(interval: ThickInterval, rows: Vec<DiskRow>) -> Result<Self> {
        validate_rows(&rows)?;
        let mut cells = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for t in 0..=row.len as i64 {
                cells.push(AxialCoord::new(row.start + t, r as i64));
            }
        }
        cells.sort();
        Ok(CharDisk { interval, rows, cells, surfaces: Vec::new() })
    }

    pub fn cell_index(&self, p: AxialCoord) -> Option<usize> {
        self.cells.binary_search(&p).ok()
    }

    /// The `v` end of the row of layer `i`.
    pub fn v(&self, i: u32) -> AxialCoord {
        let r = (i - self.interval.j) as usize;
        AxialCoord::new(self.rows[r].start, r as i64)
    }

    /// The `w` end of the row of layer `i`.
    pub fn w(&self, i: u32) -> AxialCoord {
        let r = (i - self.interval.j) as usize;
        AxialCoord::new(self.rows[r].start + self.rows[r].len as i64, r as i64)
    }

    /// The boundary in cyclic order: up the `v` side, down the `w` side.
    pub fn boundary(&self) -> Vec<AxialCoord> {
        let (j, k) = (self.interval.j, self.interval.k);
        let mut out: Vec<AxialCoord> = (j..=k).map(|i| self.v(i)).collect();
        out.extend((j..=k).rev().map(|i| self.w(i)));
        out
    }

    pub fn interior_cells(&self) -> Vec<AxialCoord> {
        let b: BTreeSet<AxialCoord> = self.boundary().into_iter().collect();
        self.cells.iter().copied().filter(|p| !b.contains(p)).collect()
    }

    /// Lattice triangles with all three corners in the disk.
    pub fn triangle_count(&self) -> usize {
        let has = |p: AxialCoord| self.cell_index(p).is_some();
        self.cells
            .iter()
            .map(|&p| {
                let up = has(p + OFFSETS[0]) && has(p + OFFSETS[1]);
                let down = has(p + OFFSETS[0]) && has(p + OFFSETS[5]);
                up as usize + down as usize
            })
            .sum()
    }

    /// Whether `rho` is a nonempty set of pairwise adjacent disk cells.
    pub fn is_disk_simplex(&self, rho: &[AxialCoord]) -> bool {
        !rho.is_empty()
            && rho.len() <= 3
            && rho.iter().all(|&p| self.cell_index(p).is_some())
            && rho.iter().enumerate().all(|(i, &p)| rho[i + 1..].iter().all(|&q| lattice_distance(p, q) == 1))
    }
}

fn validate_rows(rows: &[DiskRow]) -> Result<()> {
    if rows.len() < 3 {
        return Err(Error::PreconditionViolated("a disk needs at least three layers".into()));
    }
    if rows[0].len != 1 || rows[rows.len() - 1].len != 1 {
        return Err(Error::NotFlat("end rows must be single edges".into()));
    }
    for w in rows.windows(2) {
        let ds = w[1].start - w[0].start;
        let de = (w[1].start + w[1].len as i64) - (w[0].start + w[0].len as i64);
        if !(-1..=0).contains(&ds) || !(-1..=0).contains(&de) {
            return Err(Error::NotFlat(format!("rows {:?} and {:?} do not stack", w[0], w[1])));
        }
    }
    Ok(())
}

/// The unique geodesic from `s` to `t`, or `NotFlat` if there are several.
fn unique_geodesic(c: &FlagComplex, s: VertexId, t: VertexId, m: u32) -> Result<Vec<VertexId>> {
    let ds = c.bfs(s, m);
    let dt = c.bfs(t, m);
    if ds[t.idx()] != m {
        return Err(Error::NotFlat(format!("d({s:?},{t:?}) is not {m}")));
    }
    let mut path = vec![UNSEEN; m as usize + 1];
    for v in c.vertices() {
        let (a, b) = (ds[v.idx()], dt[v.idx()]);
        if a <= m && b <= m && a + b == m {
            if path[a as usize] != UNSEEN {
                return Err(Error::NotFlat(format!("several geodesics from {s:?} to {t:?}")));
            }
            path[a as usize] = v.0;
        }
    }
    Ok(path.into_iter().map(VertexId).collect())
}

/// Develops the region bounded by `cycle` into the lattice and verifies
/// that the development is an isometric embedding.
pub fn extract_flat_disk(c: &FlagComplex, cycle: &BoundaryCycle) -> Result<CharDisk> {
    let rows_n = cycle.s.len();
    if rows_n < 3 {
        return Err(Error::PreconditionViolated(format!(
            "boundary cycle of length {} (thick intervals give at least 6)",
            2 * rows_n
        )));
    }
    let paths: Vec<Vec<VertexId>> = (0..rows_n)
        .map(|r| unique_geodesic(c, cycle.s[r], cycle.t[r], cycle.thickness[r]))
        .collect::<Result<_>>()?;
    let mut rows = vec![DiskRow { start: 0, len: paths[0].len() as u32 - 1 }];
    for r in 1..rows_n {
        let prev = &paths[r - 1];
        // (start, r) touches both prev[0] and prev[1]; (start - 1, r) only prev[0]
        let start = if prev.len() > 1 && c.adjacent(paths[r][0], prev[1]) {
            rows[r - 1].start
        } else {
            rows[r - 1].start - 1
        };
        rows.push(DiskRow { start, len: paths[r].len() as u32 - 1 });
    }
    let mut disk = CharDisk::from_rows(cycle.interval, rows)?;
    let mut image = vec![VertexId(0); disk.cells.len()];
    for (r, path) in paths.iter().enumerate() {
        for (t, &v) in path.iter().enumerate() {
            let p = AxialCoord::new(disk.rows[r].start + t as i64, r as i64);
            image[disk.cell_index(p).expect("row cell")] = v;
        }
    }
    verify_flat(c, &disk, &image)?;
    disk.surfaces.push(image);
    Ok(disk)
}

/// Isometric embedding, interior hexagons, parallel end rows.
fn verify_flat(c: &FlagComplex, disk: &CharDisk, image: &[VertexId]) -> Result<()> {
    let distinct: BTreeSet<VertexId> = image.iter().copied().collect();
    if distinct.len() != image.len() {
        return Err(Error::NotFlat("surface map is not injective".into()));
    }
    let reach = disk.cells.iter().map(|&p| lattice_distance(disk.cells[0], p)).max().unwrap_or(0) * 2 + 1;
    for (i, &p) in disk.cells.iter().enumerate() {
        let d = c.bfs(image[i], reach);
        for (k, &q) in disk.cells.iter().enumerate() {
            if d[image[k].idx()] != lattice_distance(p, q) {
                return Err(Error::NotFlat(format!("distance {:?}-{:?} not preserved", image[i], image[k])));
            }
        }
    }
    for p in disk.interior_cells() {
        let ring: Vec<VertexId> = p
            .neighbors()
            .iter()
            .map(|&q| disk.cell_index(q).map(|k| image[k]))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::NotFlat(format!("interior cell {p:?} lacks a neighbour")))?;
        let centre = image[disk.cell_index(p).expect("cell")];
        let hexagon = (0..6).all(|k| c.adjacent(centre, ring[k]) && c.adjacent(ring[k], ring[(k + 1) % 6]));
        if !hexagon {
            return Err(Error::NotFlat(format!("no hexagon around {centre:?}")));
        }
    }
    let (j, k) = (disk.interval.j, disk.interval.k);
    let (e1, e2) = (disk.w(j) - disk.v(j), disk.w(k) - disk.v(k));
    if e1.cross(e2) != 0 {
        return Err(Error::NotFlat("end edges are not parallel".into()));
    }
    Ok(())
}

/// The characteristic disk of a thick interval with every surface coming
/// from a thickness-realizing boundary cycle. All cycles must develop to the
/// same disk.
pub fn characteristic_disk(c: &FlagComplex, p: &LayerProfile, iv: ThickInterval) -> Result<CharDisk> {
    let cycles = realizing_cycles(c, p, iv, MAX_CYCLES)?;
    let mut disk = extract_flat_disk(c, &cycles[0])?;
    for cy in &cycles[1..] {
        let other = extract_flat_disk(c, cy)?;
        if other.rows != disk.rows {
            return Err(Error::NotFlat("boundary cycles develop to different disks".into()));
        }
        if !disk.surfaces.contains(&other.surfaces[0]) {
            disk.surfaces.push(other.surfaces[0].clone());
        }
    }
    Ok(disk)
}

/// The simplex of `X` spanned by the images of `rho` under all surfaces.
pub fn characteristic_map(c: &FlagComplex, d: &CharDisk, rho: &[AxialCoord]) -> Result<Simplex> {
    if !d.is_disk_simplex(rho) {
        return Err(Error::NotASimplexOfDisk(format!("{rho:?}")));
    }
    let mut vs = Vec::new();
    for s in &d.surfaces {
        for &p in rho {
            vs.push(s[d.cell_index(p).expect("checked")]);
        }
    }
    vs.sort_unstable();
    vs.dedup();
    Simplex::new(c, vs)
}

/// Outcome of the exhaustive filling search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinDisk {
    pub triangles: usize,
    pub nodes: u64,
}

const FILL_BUDGET: u64 = 5_000_000;

/// Smallest number of triangles in a simplicial disk filling `cycle`.
///
/// The boundary edge `(W_0, W_1)` lies in exactly one triangle. Its third
/// corner is either another boundary position, which splits the disk in
/// two, or an interior vertex, which lengthens the boundary by one and costs
/// one triangle. Iterative deepening on the triangle count finds the minimum.
pub fn brute_force_min_disk(c: &FlagComplex, cycle: &[VertexId], max_triangles: usize) -> Result<MinDisk> {
    if cycle.len() > 8 || max_triangles > 12 {
        return Err(Error::PreconditionViolated("oracle limited to |cycle| <= 8, 12 triangles".into()));
    }
    if cycle.len() < 3 {
        return Err(Error::PreconditionViolated("cycle needs three vertices".into()));
    }
    for k in 0..cycle.len() {
        if !c.adjacent(cycle[k], cycle[(k + 1) % cycle.len()]) {
            return Err(Error::PreconditionViolated("consecutive cycle vertices must be adjacent".into()));
        }
    }
    let mut search = Filling { c, nodes: 0, failed: HashMap::new(), timed_out: false };
    for budget in cycle.len() - 2..=max_triangles {
        if search.fill(cycle.to_vec(), budget) {
            return Ok(MinDisk { triangles: budget, nodes: search.nodes });
        }
        if search.timed_out {
            return Err(Error::Timeout);
        }
    }
    Err(Error::NoFilling)
}

struct Filling<'a> {
    c: &'a FlagComplex,
    nodes: u64,
    failed: HashMap<(Vec<VertexId>, usize), ()>,
    timed_out: bool,
}

impl Filling<'_> {
    /// Can the closed walk `w` be filled with at most `budget` triangles?
    fn fill(&mut self, w: Vec<VertexId>, budget: usize) -> bool {
        if w.len() <= 2 {
            return true;
        }
        if w.len() - 2 > budget || self.timed_out {
            return false;
        }
        let key = (w.clone(), budget);
        if self.failed.contains_key(&key) {
            return false;
        }
        self.nodes += 1;
        if self.nodes > FILL_BUDGET {
            self.timed_out = true;
            return false;
        }
        let (a, b) = (w[0], w[1]);
        let len = w.len();
        // third corner on the boundary: split into two walks
        for m in 2..len {
            let z = w[m];
            if z == a || z == b || !self.c.adjacent(a, z) || !self.c.adjacent(b, z) {
                continue;
            }
            let left: Vec<VertexId> = w[1..=m].to_vec();
            let mut right: Vec<VertexId> = w[m..].to_vec();
            right.push(a);
            let need_left = left.len().saturating_sub(2);
            let need_right = right.len().saturating_sub(2);
            if 1 + need_left + need_right > budget {
                continue;
            }
            for lb in need_left..=budget - 1 - need_right {
                if self.fill(left.clone(), lb) && self.fill(right.clone(), budget - 1 - lb) {
                    return true;
                }
            }
        }
        // third corner in the interior
        if budget > len - 2 {
            let common: Vec<VertexId> = self
                .c
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&z| z != b && self.c.adjacent(b, z))
                .collect();
            for z in common {
                let mut next = Vec::with_capacity(len + 1);
                next.push(a);
                next.push(z);
                next.extend_from_slice(&w[1..]);
                if self.fill(next, budget - 1) {
                    return true;
                }
            }
        }
        if !self.timed_out {
            self.failed.insert(key, ());
        }
        false
    }
}
