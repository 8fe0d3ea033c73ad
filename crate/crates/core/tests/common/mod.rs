//! Independent oracles shared by the integration tests. Nothing here calls
//! the constructions it checks.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use syslab::complex::{FlagComplex, Simplex, VertexId};
use syslab::eplane::{AxialCoord, RatPoint};

pub const FAR: u32 = u32::MAX;

/// Plain BFS distances from `s`.
pub fn bfs(c: &FlagComplex, s: VertexId) -> Vec<u32> {
    let mut d = vec![FAR; c.len()];
    let mut q = VecDeque::from([s]);
    d[s.idx()] = 0;
    while let Some(u) = q.pop_front() {
        for &w in c.neighbors(u) {
            if d[w.idx()] == FAR {
                d[w.idx()] = d[u.idx()] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

pub fn all_pairs(c: &FlagComplex) -> Vec<Vec<u32>> {
    c.vertices().map(|v| bfs(c, v)).collect()
}

/// Hex-lattice distance from the closed form on axial coordinates.
pub fn hex_dist(p: AxialCoord, q: AxialCoord) -> u32 {
    let (da, db) = (q.a - p.a, q.b - p.b);
    ((da.abs() + db.abs() + (da + db).abs()) / 2) as u32
}

pub fn coord(c: &FlagComplex, v: VertexId) -> AxialCoord {
    c.coord(v).expect("plane-backed")
}

fn clique(c: &FlagComplex, vs: &[VertexId]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&w| c.adjacent(u, w)))
}

/// Vertices `v` such that `s ∪ {v}` spans a simplex, including `s` itself.
fn residue(c: &FlagComplex, s: &[VertexId]) -> Vec<VertexId> {
    c.vertices().filter(|&v| s.contains(&v) || s.iter().all(|&u| c.adjacent(u, v))).collect()
}

/// Vertices within one step of some vertex of `s`.
fn ball1(c: &FlagComplex, s: &[VertexId]) -> Vec<VertexId> {
    c.vertices().filter(|&v| s.iter().any(|&u| u == v || c.adjacent(u, v))).collect()
}

/// Every nonempty clique inside `pool`, vertices sorted.
fn cliques_in(c: &FlagComplex, pool: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<VertexId>, usize)> = vec![(Vec::new(), 0)];
    while let Some((cur, from)) = stack.pop() {
        for (i, &v) in pool.iter().enumerate().skip(from) {
            if cur.iter().all(|&u| c.adjacent(u, v)) {
                let mut next = cur.clone();
                next.push(v);
                out.push(next.clone());
                stack.push((next, i + 1));
            }
        }
    }
    for s in &mut out {
        s.sort();
    }
    out.sort();
    out
}

/// All simplex sequences `σ_0 = {x}, …, σ_n = {y}` with consecutive members
/// disjoint and spanning a simplex, and `Res(σ_{i-1}) ∩ B_1(σ_{i+1}) = σ_i`
/// for every interior `i`. Stops after `cap` solutions.
pub fn enumerate_directed(c: &FlagComplex, x: VertexId, y: VertexId, cap: usize) -> Vec<Vec<Vec<VertexId>>> {
    let dx = bfs(c, x);
    let dy = bfs(c, y);
    let n = dx[y.idx()];
    // any admissible σ_i sits within i of x and n - i of y
    let slots: Vec<Vec<VertexId>> = (0..=n)
        .map(|i| c.vertices().filter(|v| dx[v.idx()] <= i && dy[v.idx()] <= n - i).collect())
        .collect();
    let mut out = Vec::new();
    let mut seq = vec![vec![x]];
    extend(c, n as usize, &slots, y, &mut seq, &mut out, cap);
    out
}

fn extend(
    c: &FlagComplex,
    n: usize,
    slots: &[Vec<VertexId>],
    y: VertexId,
    seq: &mut Vec<Vec<VertexId>>,
    out: &mut Vec<Vec<Vec<VertexId>>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let i = seq.len();
    let last = seq[i - 1].clone();
    let candidates: Vec<Vec<VertexId>> = if i == n {
        vec![vec![y]]
    } else {
        let pool: Vec<VertexId> =
            slots[i].iter().copied().filter(|v| !last.contains(v) && last.iter().all(|&u| c.adjacent(u, *v))).collect();
        cliques_in(c, &pool)
    };
    for next in candidates {
        if next.iter().any(|v| last.contains(v)) {
            continue;
        }
        let mut both = last.clone();
        both.extend(&next);
        if !clique(c, &both) {
            continue;
        }
        if i >= 2 {
            let mut lhs: Vec<VertexId> = residue(c, &seq[i - 2]);
            let b1 = ball1(c, &next);
            lhs.retain(|v| b1.contains(v));
            let mut mid = last.clone();
            mid.sort();
            if lhs != mid {
                continue;
            }
        }
        seq.push(next);
        if i == n {
            out.push(seq.clone());
        } else {
            extend(c, n, slots, y, seq, out, cap);
        }
        seq.pop();
    }
}

pub fn simplex_ids(seq: &[Simplex]) -> Vec<Vec<VertexId>> {
    seq.iter()
        .map(|s| {
            let mut v = s.vertices().to_vec();
            v.sort();
            v
        })
        .collect()
}

/// Convexity by definition: every vertex on a geodesic between two members
/// is a member. `d` is the all-pairs table.
pub fn convex_by_intervals(d: &[Vec<u32>], a: &[VertexId]) -> bool {
    let mut member = vec![false; d.len()];
    for &v in a {
        member[v.idx()] = true;
    }
    for &u in a {
        for &b in a {
            let n = d[u.idx()][b.idx()];
            for v in 0..d.len() {
                if !member[v] && d[u.idx()][v].saturating_add(d[v][b.idx()]) == n {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Dense-grid shortest paths in a lattice polygon

/// Grid points per unit of axial coordinate.
pub const GRID: i64 = 50;

type G = (i64, i64);

fn orient(p: G, q: G, r: G) -> i64 {
    let v = (q.0 - p.0) as i128 * (r.1 - p.1) as i128 - (q.1 - p.1) as i128 * (r.0 - p.0) as i128;
    v.signum() as i64
}

fn on_segment(a: G, b: G, p: G) -> bool {
    orient(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Closed point-in-polygon for integer points, exact.
fn in_closed(poly: &[G], p: G) -> bool {
    let n = poly.len();
    let mut wind = 0i32;
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        if on_segment(a, b, p) {
            return true;
        }
        if a.1 <= p.1 {
            if b.1 > p.1 && orient(a, b, p) > 0 {
                wind += 1;
            }
        } else if b.1 <= p.1 && orient(a, b, p) < 0 {
            wind -= 1;
        }
    }
    wind != 0
}

fn proper_cross(p: G, q: G, a: G, b: G) -> bool {
    orient(p, q, a) * orient(p, q, b) < 0 && orient(a, b, p) * orient(a, b, q) < 0
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Euclidean length of an axial vector.
fn axial_len(da: f64, db: f64) -> f64 {
    (da * da + da * db + db * db).sqrt()
}

fn to_grid(p: RatPoint) -> G {
    let s = num_rational::Ratio::from_integer(GRID as i128);
    let (a, b) = (p.a * s, p.b * s);
    assert!(a.is_integer() && b.is_integer(), "{p:?} is off the grid");
    (a.to_integer() as i64, b.to_integer() as i64)
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub struct GridResult {
    pub length: f64,
    pub nodes: usize,
}

/// Shortest path on the grid of pitch `1/GRID` (in axial coordinates) clipped to
/// the closed polygon. Each node links to every grid point reachable by a
/// primitive step of hex norm at most `reach` whose segment stays inside.
/// Searched by Dijkstra ordered with the straight-line distance to the target.
pub fn grid_shortest(poly: &[RatPoint], from: RatPoint, to: RatPoint, reach: i64) -> GridResult {
    let poly: Vec<G> = poly.iter().map(|&p| to_grid(p)).collect();
    let (s, t) = (to_grid(from), to_grid(to));
    let lo = (poly.iter().map(|p| p.0).min().unwrap(), poly.iter().map(|p| p.1).min().unwrap());
    let hi = (poly.iter().map(|p| p.0).max().unwrap(), poly.iter().map(|p| p.1).max().unwrap());
    let w = (hi.0 - lo.0 + 1) as usize;
    let h = (hi.1 - lo.1 + 1) as usize;
    let at = |p: G| -> Option<usize> {
        (p.0 >= lo.0 && p.0 <= hi.0 && p.1 >= lo.1 && p.1 <= hi.1).then(|| (p.1 - lo.1) as usize * w + (p.0 - lo.0) as usize)
    };
    let inside: Vec<bool> = (0..w * h)
        .map(|k| in_closed(&poly, (lo.0 + (k % w) as i64, lo.1 + (k / w) as i64)))
        .collect();
    // primitive steps
    let mut steps = Vec::new();
    for da in -reach..=reach {
        for db in -reach..=reach {
            if (da, db) != (0, 0) && (da.abs() + db.abs() + (da + db).abs()) / 2 <= reach && gcd(da, db) == 1 {
                steps.push((da, db, axial_len(da as f64, db as f64) / GRID as f64));
            }
        }
    }
    // a step shorter than a node's clearance needs no clipping
    let edges: Vec<(G, G)> = (0..poly.len()).map(|k| (poly[k], poly[(k + 1) % poly.len()])).collect();
    let clearance: Vec<f64> = (0..w * h)
        .map(|k| {
            if !inside[k] {
                return 0.0;
            }
            let p = (lo.0 + (k % w) as i64, lo.1 + (k / w) as i64);
            edges.iter().map(|&(a, b)| seg_point_dist(a, b, p)).fold(f64::INFINITY, f64::min) / GRID as f64
        })
        .collect();
    let mid2: Vec<G> = poly.iter().map(|&(a, b)| (2 * a, 2 * b)).collect();
    let visible = |p: G, q: G| -> bool {
        if edges.iter().any(|&(a, b)| proper_cross(p, q, a, b)) {
            return false;
        }
        // a primitive step meets no lattice point strictly inside, so the
        // midpoint decides
        in_closed(&mid2, (p.0 + q.0, p.1 + q.1))
    };
    let (si, ti) = (at(s).unwrap(), at(t).unwrap());
    // A* with the straight-line distance to the target, which is admissible
    let goal = |k: usize| {
        let (da, db) = ((t.0 - lo.0) as f64 - (k % w) as f64, (t.1 - lo.1) as f64 - (k / w) as f64);
        axial_len(da, db) / GRID as f64
    };
    assert!(inside[si] && inside[ti]);
    let mut dist = vec![f64::INFINITY; w * h];
    let mut heap = BinaryHeap::new();
    dist[si] = 0.0;
    heap.push(Item(goal(si), si));
    let mut popped = 0;
    let mut done = vec![false; w * h];
    while let Some(Item(_, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        let d = dist[u];
        popped += 1;
        if u == ti {
            break;
        }
        let p = (lo.0 + (u % w) as i64, lo.1 + (u / w) as i64);
        for &(da, db, len) in &steps {
            let q = (p.0 + da, p.1 + db);
            let Some(v) = at(q) else { continue };
            if !inside[v] || done[v] {
                continue;
            }
            let nd = d + len;
            if nd < dist[v] && (len < clearance[u] || visible(p, q)) {
                dist[v] = nd;
                heap.push(Item(nd + goal(v), v));
            }
        }
    }
    GridResult { length: dist[ti], nodes: popped }
}

/// Distance in grid units (axial frame, Euclidean metric) from `p` to segment `ab`.
fn seg_point_dist(a: G, b: G, p: G) -> f64 {
    let cart = |g: G| (g.0 as f64 + g.1 as f64 / 2.0, g.1 as f64 * 3f64.sqrt() / 2.0);
    let (a, b, p) = (cart(a), cart(b), cart(p));
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / l2).clamp(0.0, 1.0) };
    ((a.0 + t * dx - p.0).powi(2) + (a.1 + t * dy - p.1).powi(2)).sqrt()
}

/// Cartesian length of a polyline given in axial coordinates.
pub fn polyline_length(pts: &[RatPoint]) -> f64 {
    pts.windows(2)
        .map(|w| {
            let (a0, b0) = (q(w[0].a), q(w[0].b));
            let (a1, b1) = (q(w[1].a), q(w[1].b));
            axial_len(a1 - a0, b1 - b0)
        })
        .sum()
}

fn q(x: num_rational::Ratio<i128>) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}
