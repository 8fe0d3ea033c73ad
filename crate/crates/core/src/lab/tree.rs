//! The half-line with a branch of length `n` at every integer `n`.
//!
//! Every geodesic of a tree is good, so rays from a vertex are just the
//! geodesics running off towards the unbounded end.

use serde::Serialize;

use crate::complex::{FlagComplex, VertexId, UNSEEN};
use crate::eplane::{lattice_distance, window, AxialCoord, PlaneIsometry};
use crate::error::Result;
use crate::isometry::invariant_geodesic_on_plane;

/// The tree truncated after the branch at `depth`; the half-line runs one
/// vertex further to stand in for its infinite end.
#[derive(Clone, Debug)]
pub struct TreeT {
    pub complex: FlagComplex,
    pub depth: u32,
    /// Half-line vertices `0..=depth + 1`.
    pub spine: Vec<VertexId>,
    /// `tips[n]` ends the branch at `n` (`tips[0]` is the origin).
    pub tips: Vec<VertexId>,
}

impl TreeT {
    pub fn new(depth: u32) -> Self {
        let spine: Vec<VertexId> = (0..=depth + 1).map(VertexId).collect();
        let mut edges: Vec<(u32, u32)> = (0..=depth).map(|i| (i, i + 1)).collect();
        let mut next = depth + 2;
        let mut tips = vec![spine[0]];
        for n in 1..=depth {
            let mut prev = n;
            for _ in 0..n {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            tips.push(VertexId(prev));
        }
        let complex = FlagComplex::from_edges(next as usize, &edges).expect("tree edges");
        TreeT { complex, depth, spine, tips }
    }

    /// The far end of the truncated half-line.
    pub fn end(&self) -> VertexId {
        self.spine[self.spine.len() - 1]
    }

    /// The ray from `x`: the unique geodesic from `x` to the end.
    pub fn ray(&self, x: VertexId) -> Vec<VertexId> {
        let d = self.complex.bfs(self.end(), UNSEEN);
        let mut out = vec![x];
        let mut cur = x;
        while cur != self.end() {
            cur = *self.complex.neighbors(cur).iter().find(|w| d[w.idx()] + 1 == d[cur.idx()]).expect("tree is connected");
            out.push(cur);
        }
        out
    }

    /// Least `E` such that some ray from `x` passes within `E` of `y`.
    pub fn extendability(&self, x: VertexId, y: VertexId) -> u32 {
        let d = self.complex.bfs(y, UNSEEN);
        self.ray(x).iter().map(|v| d[v.idx()]).min().expect("rays are nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtendabilityRow {
    pub n: u32,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtendabilityTable {
    /// `E(0, tip_n)` for `n = 2..=depth`.
    pub tips: Vec<ExtendabilityRow>,
    /// `E(0, n)` along the half-line.
    pub spine: Vec<u32>,
}

pub fn extendability_study(depth: u32) -> ExtendabilityTable {
    let t = TreeT::new(depth.max(2));
    let o = t.spine[0];
    let tips = (2..=t.depth).map(|n| ExtendabilityRow { n, e: t.extendability(o, t.tips[n as usize]) }).collect();
    let spine = t.spine.iter().map(|&v| t.extendability(o, v)).collect();
    ExtendabilityTable { tips, spine }
}

/// Lattice direction of `v` divided by the gcd of its coordinates.
fn primitive(v: AxialCoord) -> AxialCoord {
    let g = num_integer::gcd(v.a, v.b).max(1);
    AxialCoord::new(v.a / g, v.b / g)
}

/// The plane control: for `y ≠ x` the ray from `x` is the staircase
/// invariant under the primitive translation towards `y`, run until it leaves
/// a window of radius `radius`. Returns the least lattice distance from `y`
/// to the ray.
pub fn plane_extendability(x: AxialCoord, y: AxialCoord, radius: u32) -> Result<u32> {
    if x == y {
        return Ok(0);
    }
    let t = primitive(y - x);
    let len = 2 * radius as usize + lattice_distance(x, AxialCoord::ORIGIN) as usize;
    let ray = invariant_geodesic_on_plane(&PlaneIsometry::translate(t.a, t.b), x, len)?;
    let w = window(AxialCoord::ORIGIN, radius);
    Ok(ray
        .iter()
        .take_while(|p| w.vertex_at(**p).is_some())
        .map(|&p| lattice_distance(p, y))
        .min()
        .unwrap_or(lattice_distance(x, y)))
}
