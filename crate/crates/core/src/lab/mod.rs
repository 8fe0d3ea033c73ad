//! Scenario runner, reports, figures and the tree study.

pub mod report;
pub mod run;
pub mod scenario;
pub mod svg;
pub mod tree;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::complex::{FlagComplex, Simplex, VertexId};

/// A vertex as JSON: `[a, b]` on plane-backed complexes, else its id.
pub fn label(c: &FlagComplex, v: VertexId) -> Value {
    match c.coord(v) {
        Some(p) => json!([p.a, p.b]),
        None => json!(v.0),
    }
}

pub fn label_simplex(c: &FlagComplex, s: &Simplex) -> Value {
    Value::Array(s.vertices().iter().map(|&v| label(c, v)).collect())
}

/// Samples `count` pairs `(x, y)` from `pool` with `lo <= d(x, y) <= hi`.
/// Gives up on an `x` with no partner and draws again; returns fewer pairs
/// only if no pair in the pool qualifies.
pub fn sample_pairs<R: Rng>(
    c: &FlagComplex,
    pool: &[VertexId],
    count: usize,
    lo: u32,
    hi: u32,
    rng: &mut R,
) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count && misses < 64 * count.max(1) {
        let Some(&x) = pool.choose(rng) else { break };
        let d = c.bfs(x, hi);
        let ys: Vec<VertexId> = pool.iter().copied().filter(|y| (lo..=hi).contains(&d[y.idx()])).collect();
        match ys.choose(rng) {
            Some(&y) => out.push((x, y)),
            None => misses += 1,
        }
    }
    out
}
