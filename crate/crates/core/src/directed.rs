//! Directed geodesics, layers and thick intervals.

use serde::Serialize;

use crate::complex::{residue, FlagComplex, Simplex, VertexId, UNSEEN};
use crate::error::{Error, Result};

/// The simplex sequence from `from` to `to`, indexed from `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectedGeodesic {
    pub from: VertexId,
    pub to: VertexId,
    pub simplices: Vec<Simplex>,
    /// True when the sequence was built from `to` towards `from` and then
    /// reindexed so that index 0 is `from`.
    pub reversed: bool,
}

impl DirectedGeodesic {
    pub fn len(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.len() <= 1
    }
}

/// Distances from both endpoints of a pair, shared by the constructions.
pub(crate) struct PairField {
    pub n: u32,
    pub dx: Vec<u32>,
    pub dy: Vec<u32>,
}

impl PairField {
    pub fn new(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<Self> {
        let dx = c.bfs(x, UNSEEN);
        let n = dx[y.idx()];
        if n == UNSEEN {
            return Err(Error::Unreachable(y));
        }
        // every later distance query stays within 3n of x
        c.certify(x, y, 3 * n)?;
        let dy = c.bfs(y, n);
        Ok(PairField { n, dx, dy })
    }

    pub fn in_layer(&self, v: VertexId, i: u32) -> bool {
        self.dx[v.idx()] == i && self.dy[v.idx()] == self.n - i
    }
}

/// Builds `σ_0 = x, σ_{i+1} = span{v ∈ S_{n-i-1}(y) adjacent to all of σ_i}`.
fn project(c: &FlagComplex, x: VertexId, n: u32, dy: &[u32]) -> Result<Vec<Simplex>> {
    let mut out = vec![Simplex::vertex(x)];
    for i in 0..n as usize {
        let cur = &out[i];
        let level = n - i as u32 - 1;
        let next: Vec<VertexId> = c
            .neighbors(cur.vertices()[0])
            .iter()
            .copied()
            .filter(|&v| dy[v.idx()] == level && cur.vertices().iter().all(|&u| c.adjacent(u, v)))
            .collect();
        if next.is_empty() {
            return Err(Error::ConstructionFailed { step: i + 1, reason: "empty projection".into() });
        }
        if !c.is_clique(&next) {
            return Err(Error::ConstructionFailed { step: i + 1, reason: format!("{next:?} is not a clique") });
        }
        out.push(Simplex::from_clique(next));
    }
    Ok(out)
}

/// Checks the two defining conditions on a simplex sequence: consecutive
/// simplices are disjoint and span a simplex, and every interior simplex is
/// cut out by `Res(σ_{i-1}) ∩ B_1(σ_{i+1})`.
pub fn check_directed_conditions(c: &FlagComplex, seq: &[Simplex]) -> Result<()> {
    for (i, w) in seq.windows(2).enumerate() {
        if !w[0].is_disjoint(&w[1]) || w[0].join(c, &w[1]).is_err() {
            return Err(Error::ConditionViolated { index: i, reason: "consecutive simplices do not span".into() });
        }
    }
    for i in 1..seq.len().saturating_sub(1) {
        let cut = residue_cut(c, &seq[i - 1], &seq[i + 1])?;
        if cut != seq[i].vertices() {
            return Err(Error::ConditionViolated {
                index: i,
                reason: format!("Res ∩ B_1 is {cut:?}, expected {:?}", seq[i]),
            });
        }
    }
    Ok(())
}

/// `Res(prev) ∩ B_1(next)`, sorted.
pub fn residue_cut(c: &FlagComplex, prev: &Simplex, next: &Simplex) -> Result<Vec<VertexId>> {
    Ok(residue(c, prev)?
        .into_iter()
        .filter(|&v| next.vertices().iter().any(|&u| u == v || c.adjacent(u, v)))
        .collect())
}

fn build(c: &FlagComplex, f: &PairField, x: VertexId, y: VertexId) -> Result<DirectedGeodesic> {
    let simplices = project(c, x, f.n, &f.dy)?;
    check_directed_conditions(c, &simplices)?;
    Ok(DirectedGeodesic { from: x, to: y, simplices, reversed: false })
}

/// The directed geodesic from `x` to `y`.
pub fn directed_geodesic(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<DirectedGeodesic> {
    let f = PairField::new(c, x, y)?;
    build(c, &f, x, y)
}

/// One layer between `x` and `y` with the pair `(σ_i, τ_i)` that measured it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub index: u32,
    /// `d(x, y)` of the pair the layer belongs to.
    pub span: u32,
    pub vertices: Vec<VertexId>,
    pub sigma: Simplex,
    pub tau: Simplex,
    pub thickness: u32,
    pub thin: bool,
}

/// All layers between `x` and `y` together with both directed geodesics.
#[derive(Clone, Debug, Serialize)]
pub struct LayerProfile {
    pub x: VertexId,
    pub y: VertexId,
    pub n: u32,
    pub sigma: DirectedGeodesic,
    /// Built from `y` to `x`, indexed from `x`.
    pub tau: DirectedGeodesic,
    pub layers: Vec<Layer>,
}

impl LayerProfile {
    pub fn thickness(&self) -> Vec<u32> {
        self.layers.iter().map(|l| l.thickness).collect()
    }
}

pub fn layers(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<LayerProfile> {
    let f = PairField::new(c, x, y)?;
    layers_with(c, &f, x, y)
}

pub(crate) fn layers_with(c: &FlagComplex, f: &PairField, x: VertexId, y: VertexId) -> Result<LayerProfile> {
    let n = f.n;
    let sigma = build(c, f, x, y)?;
    let back = PairField { n, dx: f.dy.clone(), dy: f.dx.clone() };
    let mut tau = build(c, &back, y, x)?;
    tau.simplices.reverse();
    tau.from = x;
    tau.to = y;
    tau.reversed = true;

    let mut by_layer: Vec<Vec<VertexId>> = vec![Vec::new(); n as usize + 1];
    for v in c.vertices() {
        let d = f.dx[v.idx()];
        if d <= n && f.dy[v.idx()] == n - d {
            by_layer[d as usize].push(v);
        }
    }
    let mut out = Vec::with_capacity(n as usize + 1);
    for (i, vertices) in by_layer.into_iter().enumerate() {
        let (s, t) = (&sigma.simplices[i], &tau.simplices[i]);
        if !s.is_subset(&vertices) || !t.is_subset(&vertices) {
            return Err(Error::ConditionViolated { index: i, reason: "directed simplex outside its layer".into() });
        }
        let mut thickness = 0;
        for &u in s.vertices() {
            let d = c.bfs(u, n);
            for &w in t.vertices() {
                thickness = thickness.max(d[w.idx()]);
            }
        }
        out.push(Layer {
            index: i as u32,
            span: n,
            vertices,
            sigma: s.clone(),
            tau: t.clone(),
            thickness,
            thin: thickness <= 1,
        });
    }
    Ok(LayerProfile { x, y, n, sigma, tau, layers: out })
}

/// A maximal run of thick layers strictly between the thin layers `j` and `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ThickInterval {
    pub j: u32,
    pub k: u32,
}

/// Scans the thin/thick pattern of `ls` for thick intervals.
pub fn thick_intervals(ls: &[Layer]) -> Result<Vec<ThickInterval>> {
    let Some(first) = ls.first() else { return Ok(Vec::new()) };
    let flags: Vec<(u32, bool)> = ls.iter().map(|l| (l.index, l.thin)).collect();
    thick_intervals_from_flags(first.span, &flags)
}

/// As [`thick_intervals`], on `(index, thin)` pairs of a pair at distance `n`.
pub fn thick_intervals_from_flags(n: u32, flags: &[(u32, bool)]) -> Result<Vec<ThickInterval>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < flags.len() {
        let (idx, thin) = flags[i];
        if idx == 0 || idx >= n {
            if !thin {
                return Err(Error::MalformedProfile(format!("endpoint layer {idx} is thick")));
            }
            i += 1;
            continue;
        }
        if thin {
            i += 1;
            continue;
        }
        let start = i;
        while i < flags.len() && !flags[i].1 {
            i += 1;
        }
        let j = if start == 0 { 0 } else { flags[start - 1].0 };
        let k = if i < flags.len() { flags[i].0 } else { n };
        if start == 0 || j == 0 || i == flags.len() || k >= n {
            return Err(Error::MalformedProfile(format!(
                "thick run {}..{} is not bracketed by thin interior layers",
                flags[start].0,
                flags[i - 1].0
            )));
        }
        if flags[start..i].windows(2).any(|w| w[1].0 != w[0].0 + 1) || flags[start].0 != j + 1 || k != flags[i - 1].0 + 1 {
            return Err(Error::MalformedProfile("layer indices are not consecutive".into()));
        }
        out.push(ThickInterval { j, k });
    }
    Ok(out)
}
