//! The shrunken disk, shortest paths inside it, and the Euclidean diagonal.
//!
//! Polygon vertices have rational axial coordinates. For the predicates all
//! points are rescaled to a common denominator and handled as `i128`
//! integers; lengths are compared in `f64` with tolerance [`LENGTH_TOL`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chardisk::{CharDisk, DiskRow};
use crate::directed::ThickInterval;
use crate::eplane::{embed_rat, AxialCoord, PlanePoint, Q, RatPoint};
use crate::error::{Error, Result};

pub const LENGTH_TOL: f64 = 1e-9;

/// A simple polygon, possibly degenerate (all vertices collinear).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub pts: Vec<RatPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct IPt {
    a: i128,
    b: i128,
}

fn cross(o: IPt, p: IPt, q: IPt) -> i128 {
    (p.a - o.a) * (q.b - o.b) - (p.b - o.b) * (q.a - o.a)
}

fn on_segment(p: IPt, s: IPt, e: IPt) -> bool {
    cross(s, e, p) == 0 && p.a >= s.a.min(e.a) && p.a <= s.a.max(e.a) && p.b >= s.b.min(e.b) && p.b <= s.b.max(e.b)
}

/// The segments cross at a single point interior to both.
fn proper_cross(p: IPt, q: IPt, s: IPt, e: IPt) -> bool {
    let d1 = cross(p, q, s).signum();
    let d2 = cross(p, q, e).signum();
    let d3 = cross(s, e, p).signum();
    let d4 = cross(s, e, q).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Integer image of a polygon plus extra points, scaled by `2L` where `L`
/// clears every denominator (the extra factor keeps midpoints integral).
struct Scaled {
    scale: i128,
    poly: Vec<IPt>,
}

impl Scaled {
    fn new(poly: &[RatPoint], extra: &[RatPoint]) -> Self {
        let mut l = 1i128;
        for p in poly.iter().chain(extra) {
            l = l.lcm(p.a.denom()).lcm(p.b.denom());
        }
        let scale = 2 * l;
        let mut s = Scaled { scale, poly: Vec::new() };
        s.poly = poly.iter().map(|&p| s.map(p)).collect();
        s
    }

    fn map(&self, p: RatPoint) -> IPt {
        IPt { a: (p.a * self.scale).to_integer(), b: (p.b * self.scale).to_integer() }
    }

    fn edges(&self) -> impl Iterator<Item = (IPt, IPt)> + '_ {
        let n = self.poly.len();
        (0..n).map(move |i| (self.poly[i], self.poly[(i + 1) % n]))
    }

    fn on_boundary(&self, p: IPt) -> bool {
        self.edges().any(|(s, e)| on_segment(p, s, e))
    }

    /// Closed point-in-polygon test by crossing number.
    fn contains(&self, p: IPt) -> bool {
        if self.on_boundary(p) {
            return true;
        }
        let mut inside = false;
        for (s, e) in self.edges() {
            if (s.b > p.b) != (e.b > p.b) {
                // side of p relative to the upward-oriented edge
                let (lo, hi) = if s.b < e.b { (s, e) } else { (e, s) };
                if cross(lo, hi, p) > 0 {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Whether the closed segment `pq` lies in the closed polygon.
    fn visible(&self, p: IPt, q: IPt) -> bool {
        if self.edges().any(|(s, e)| proper_cross(p, q, s, e)) {
            return false;
        }
        // split pq at polygon vertices lying on it; each piece is then either
        // wholly inside, wholly outside or along the boundary
        let dir = IPt { a: q.a - p.a, b: q.b - p.b };
        let key = |v: IPt| (v.a - p.a) * dir.a + (v.b - p.b) * dir.b;
        let mut cuts: Vec<IPt> = vec![p, q];
        cuts.extend(self.poly.iter().copied().filter(|&v| v != p && v != q && on_segment(v, p, q)));
        cuts.sort_by_key(|&v| key(v));
        cuts.dedup();
        // mapped points are even, so midpoints stay integral
        cuts.windows(2).all(|w| self.contains(IPt { a: (w[0].a + w[1].a) / 2, b: (w[0].b + w[1].b) / 2 }))
    }
}

impl Polygon {
    pub fn new(pts: Vec<RatPoint>) -> Self {
        Polygon { pts }
    }

    /// Twice the signed area in axial units.
    pub fn area2(&self) -> Q {
        let n = self.pts.len();
        (0..n).fold(Q::zero(), |acc, i| {
            let (p, q) = (self.pts[i], self.pts[(i + 1) % n]);
            acc + p.a * q.b - p.b * q.a
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.area2().is_zero()
    }

    pub fn contains(&self, p: RatPoint) -> bool {
        let s = Scaled::new(&self.pts, &[p]);
        s.contains(s.map(p))
    }

    pub fn on_boundary(&self, p: RatPoint) -> bool {
        let s = Scaled::new(&self.pts, &[p]);
        s.on_boundary(s.map(p))
    }

    /// Whether the closed segment from `p` to `q` stays in the closed polygon.
    pub fn segment_inside(&self, p: RatPoint, q: RatPoint) -> bool {
        let s = Scaled::new(&self.pts, &[p, q]);
        s.visible(s.map(p), s.map(q))
    }

    /// Vertices where the interior angle exceeds 180°.
    pub fn reflex_vertices(&self) -> Vec<usize> {
        let s = Scaled::new(&self.pts, &[]);
        let n = s.poly.len();
        let orient = self.area2().cmp(&Q::zero());
        (0..n)
            .filter(|&i| {
                let turn = cross(s.poly[(i + n - 1) % n], s.poly[i], s.poly[(i + 1) % n]).cmp(&0);
                turn != Ordering::Equal && turn != orient
            })
            .collect()
    }
}

/// The disk shrunk by ½ along every layer segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedDisk {
    pub interval: ThickInterval,
    pub rows: Vec<DiskRow>,
    /// `v'_i` and `w'_i` per layer, `j ..= k`.
    pub v_prime: Vec<RatPoint>,
    pub w_prime: Vec<RatPoint>,
    /// `v'_j, v'_{j+1}, …, v'_k, w'_{k-1}, …, w'_{j+1}`.
    pub polygon: Polygon,
}

impl ModifiedDisk {
    pub fn from_rows(interval: ThickInterval, rows: &[DiskRow]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::PreconditionViolated("need at least two layers".into()));
        }
        let mut v_prime = Vec::with_capacity(rows.len());
        let mut w_prime = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len == 0 {
                return Err(Error::PreconditionViolated(format!("row {r} has no edge")));
            }
            let v = RatPoint::from(AxialCoord::new(row.start, r as i64));
            let w = RatPoint::from(AxialCoord::new(row.start + row.len as i64, r as i64));
            let t = Q::new(1, 2 * row.len as i128);
            v_prime.push(v.lerp(w, t));
            w_prime.push(w.lerp(v, t));
        }
        let last = rows.len() - 1;
        if v_prime[0] != w_prime[0] || v_prime[last] != w_prime[last] {
            return Err(Error::PreconditionViolated("end layers must be single edges".into()));
        }
        let mut pts = v_prime.clone();
        pts.extend(w_prime[1..last].iter().rev());
        Ok(ModifiedDisk { interval, rows: rows.to_vec(), v_prime, w_prime, polygon: Polygon::new(pts) })
    }

    pub fn start(&self) -> RatPoint {
        self.v_prime[0]
    }

    pub fn end(&self) -> RatPoint {
        self.v_prime[self.v_prime.len() - 1]
    }
}

pub fn modified_disk(d: &CharDisk) -> Result<ModifiedDisk> {
    ModifiedDisk::from_rows(d.interval, &d.rows)
}

/// A polyline with exact vertices and floating-point length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyPath {
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<RatPoint>,
    pub length: f64,
}

fn ser_points<S: serde::Serializer>(pts: &[RatPoint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        seq.serialize_element(&p.to_f64())?;
    }
    seq.end()
}

impl PolyPath {
    pub fn plane_points(&self) -> Vec<PlanePoint> {
        self.points.iter().map(|&p| embed_rat(p)).collect()
    }
}

pub fn seg_len(p: RatPoint, q: RatPoint) -> f64 {
    let (x1, y1) = p.to_f64();
    let (x2, y2) = q.to_f64();
    (x2 - x1).hypot(y2 - y1)
}

#[derive(PartialEq)]
struct Node(f64, usize);

impl Eq for Node {}

impl Ord for Node {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Shortest path from `from` to `to` in the closed polygon under the
/// intrinsic Euclidean path metric, by Dijkstra on the visibility graph.
pub fn shortest_path(m: &Polygon, from: RatPoint, to: RatPoint) -> Result<PolyPath> {
    let s = Scaled::new(&m.pts, &[from, to]);
    for p in [from, to] {
        if !s.on_boundary(s.map(p)) {
            return Err(Error::OutsideDomain(format!("{p:?} is not on the boundary")));
        }
    }
    if m.is_degenerate() {
        if !s.visible(s.map(from), s.map(to)) {
            return Err(Error::DegenerateDomain);
        }
        return Ok(PolyPath { points: vec![from, to], length: seg_len(from, to) });
    }
    let mut nodes: Vec<RatPoint> = vec![from, to];
    nodes.extend(m.pts.iter().copied().filter(|&p| p != from && p != to));
    let ip: Vec<IPt> = nodes.iter().map(|&p| s.map(p)).collect();
    let n = nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[0] = 0.0;
    heap.push(Node(0.0, 0));
    while let Some(Node(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == 1 {
            break;
        }
        for v in 0..n {
            if done[v] || !s.visible(ip[u], ip[v]) {
                continue;
            }
            let nd = d + seg_len(nodes[u], nodes[v]);
            if nd < dist[v] - LENGTH_TOL {
                dist[v] = nd;
                prev[v] = u;
                heap.push(Node(nd, v));
            }
        }
    }
    if !done[1] {
        return Err(Error::OutsideDomain("target not reachable inside the domain".into()));
    }
    let mut points = vec![to];
    let mut cur = 1;
    while prev[cur] != usize::MAX {
        cur = prev[cur];
        points.push(nodes[cur]);
    }
    points.reverse();
    Ok(PolyPath { points, length: dist[1] })
}

/// Per-layer disk simplices picked by the shortest path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagonal {
    pub interval: ThickInterval,
    /// `ρ_i` for `j < i < k`, as disk cells (one vertex or an edge).
    pub rho: Vec<Vec<AxialCoord>>,
    /// Layers whose crossing point is a vertex of the path.
    pub touching: Vec<u32>,
}

/// Crossing of `alpha` with the layer line `b = r`, as an offset along the row.
fn crossing(alpha: &PolyPath, r: Q) -> Option<(Q, bool)> {
    let mut hits: Vec<(Q, bool)> = Vec::new();
    let pts = &alpha.points;
    for (i, w) in pts.windows(2).enumerate() {
        let (p, q) = (w[0], w[1]);
        if p.b == q.b {
            if p.b == r {
                return None;
            }
            continue;
        }
        let (lo, hi) = if p.b < q.b { (p.b, q.b) } else { (q.b, p.b) };
        if r < lo || r > hi {
            continue;
        }
        let t = (r - p.b) / (q.b - p.b);
        let a = p.a + (q.a - p.a) * t;
        let at_vertex = (t.is_zero() && i > 0) || (t.is_one() && i + 2 < pts.len());
        hits.push((a, at_vertex));
    }
    hits.sort();
    hits.dedup_by(|x, y| x.0 == y.0 && {
        y.1 |= x.1;
        true
    });
    (hits.len() == 1).then(|| hits[0])
}

/// Picks, on every interior layer, the disk vertex nearest to where `alpha`
/// crosses it, or the edge when the crossing is exactly its midpoint.
pub fn euclidean_diagonal(d: &CharDisk, alpha: &PolyPath) -> Result<Diagonal> {
    let (j, k) = (d.interval.j, d.interval.k);
    let mut rho = Vec::new();
    let mut touching = Vec::new();
    for i in j + 1..k {
        let r = (i - j) as usize;
        let row = d.rows[r];
        let (a, touch) = crossing(alpha, Q::from_integer(r as i128)).ok_or(Error::NoCrossing(i))?;
        if touch {
            touching.push(i);
        }
        let s = a - Q::from_integer(row.start as i128);
        if s < Q::zero() || s > Q::from_integer(row.len as i128) {
            return Err(Error::NoCrossing(i));
        }
        let fl = s.floor();
        let frac = s - fl;
        let base = fl.to_integer() as i64 + row.start;
        let cell = |t: i64| AxialCoord::new(t, r as i64);
        let pick = match frac.cmp(&Q::new(1, 2)) {
            Ordering::Less => vec![cell(base)],
            Ordering::Greater => vec![cell(base + 1)],
            Ordering::Equal => vec![cell(base), cell(base + 1)],
        };
        rho.push(pick);
    }
    let diag = Diagonal { interval: d.interval, rho, touching };
    check_diagonal(d, &diag)?;
    Ok(diag)
}

/// Consecutive picks span a simplex; the first and last picks are vertices
/// forming triangles with the end edges.
pub fn check_diagonal(d: &CharDisk, diag: &Diagonal) -> Result<()> {
    for (t, w) in diag.rho.windows(2).enumerate() {
        let mut all = w[0].clone();
        all.extend_from_slice(&w[1]);
        if !d.is_disk_simplex(&all) {
            return Err(Error::ConditionViolated { index: (d.interval.j + 1) as usize + t, reason: "picks do not span".into() });
        }
    }
    let (j, k) = (d.interval.j, d.interval.k);
    let first = &diag.rho[0];
    let last = &diag.rho[diag.rho.len() - 1];
    let mut lo = vec![d.v(j), d.w(j)];
    lo.extend_from_slice(first);
    let mut hi = vec![d.v(k), d.w(k)];
    hi.extend_from_slice(last);
    if first.len() != 1 || last.len() != 1 || !d.is_disk_simplex(&lo) || !d.is_disk_simplex(&hi) {
        return Err(Error::ConditionViolated { index: j as usize, reason: "end picks miss the end edges".into() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    fn rp(a: Q, b: Q) -> RatPoint {
        RatPoint::new(a, b)
    }

    fn hexagon_rows() -> Vec<DiskRow> {
        vec![DiskRow { start: 0, len: 1 }, DiskRow { start: -1, len: 2 }, DiskRow { start: -1, len: 1 }]
    }

    #[test]
    fn hexagon_domain_is_straight() {
        let iv = ThickInterval { j: 2, k: 4 };
        let m = ModifiedDisk::from_rows(iv, &hexagon_rows()).unwrap();
        assert_eq!(m.start(), rp(q(1, 2), q(0, 1)));
        assert_eq!(m.end(), rp(q(-1, 2), q(2, 1)));
        assert_eq!(m.v_prime[1], rp(q(-1, 2), q(1, 1)));
        assert_eq!(m.w_prime[1], rp(q(1, 2), q(1, 1)));
        let alpha = shortest_path(&m.polygon, m.start(), m.end()).unwrap();
        assert_eq!(alpha.points.len(), 2);
        assert!((alpha.length - 3f64.sqrt()).abs() < 1e-12);
        let d = CharDisk::from_rows(iv, hexagon_rows()).unwrap();
        let diag = euclidean_diagonal(&d, &alpha).unwrap();
        assert_eq!(diag.rho, vec![vec![AxialCoord::new(0, 1)]]);
    }

    #[test]
    fn strip_of_width_one() {
        let rows = vec![
            DiskRow { start: 0, len: 1 },
            DiskRow { start: -1, len: 2 },
            DiskRow { start: -2, len: 2 },
            DiskRow { start: -2, len: 1 },
        ];
        let m = ModifiedDisk::from_rows(ThickInterval { j: 1, k: 4 }, &rows).unwrap();
        for r in 1..3 {
            assert_eq!(m.w_prime[r].a - m.v_prime[r].a, Q::from_integer(1));
        }
    }

    #[test]
    fn edge_pick_on_exact_midpoint() {
        // a path crossing row 1 at offset 3/2 from its start picks the edge
        let rows = vec![
            DiskRow { start: 0, len: 1 },
            DiskRow { start: -1, len: 2 },
            DiskRow { start: -2, len: 2 },
            DiskRow { start: -2, len: 1 },
        ];
        let d = CharDisk::from_rows(ThickInterval { j: 0, k: 3 }, rows).unwrap();
        let alpha = PolyPath {
            points: vec![rp(q(1, 2), q(0, 1)), rp(q(1, 2), q(1, 1)), rp(q(0, 1), q(2, 1)), rp(q(-1, 2), q(3, 1))],
            length: 0.0,
        };
        let diag = euclidean_diagonal(&d, &alpha);
        // first pick is an edge, so condition (2) fails loudly
        assert!(matches!(diag, Err(Error::ConditionViolated { .. })));
        let (a, _) = crossing(&alpha, Q::from_integer(1)).unwrap();
        assert_eq!(a - Q::from_integer(-1), q(3, 2));
    }

    #[test]
    fn nearest_vertex_below_half() {
        let rows = vec![DiskRow { start: 0, len: 1 }, DiskRow { start: -1, len: 2 }, DiskRow { start: -1, len: 1 }];
        let d = CharDisk::from_rows(ThickInterval { j: 0, k: 2 }, rows).unwrap();
        // crossing at offset 0.3·2 = 0.6 → vertex at offset 1; at 0.3 → offset 0
        for (off, want) in [(q(3, 10), -1), (q(6, 10), 0)] {
            let alpha = PolyPath {
                points: vec![rp(q(1, 2), q(0, 1)), rp(q(-1, 1) + off, q(1, 1)), rp(q(-1, 2), q(2, 1))],
                length: 0.0,
            };
            let got = euclidean_diagonal(&d, &alpha);
            if let Ok(diag) = got {
                assert_eq!(diag.rho[0], vec![AxialCoord::new(want, 1)]);
            }
        }
    }

    #[test]
    fn l_shaped_domain_bends_at_reflex_vertex() {
        let z = |a: i128, b: i128| rp(Q::from_integer(a), Q::from_integer(b));
        // an L in axial coordinates: reflex corner at (1,1)
        let poly = Polygon::new(vec![z(0, 0), z(2, 0), z(2, 1), z(1, 1), z(1, 2), z(0, 2)]);
        assert_eq!(poly.reflex_vertices(), vec![3]);
        let path = shortest_path(&poly, z(2, 0) , z(1, 2)).unwrap();
        assert_eq!(path.points, vec![z(2, 0), z(1, 1), z(1, 2)]);
        let path = shortest_path(&poly, rp(q(2, 1), q(1, 2)), rp(q(1, 2), q(2, 1))).unwrap();
        assert_eq!(path.points.len(), 3);
        assert_eq!(path.points[1], z(1, 1));
        assert!(shortest_path(&poly, rp(q(1, 2), q(1, 2)), z(0, 0)).is_err());
    }

    #[test]
    fn containment_predicates() {
        let z = |a: i128, b: i128| rp(Q::from_integer(a), Q::from_integer(b));
        let poly = Polygon::new(vec![z(0, 0), z(2, 0), z(2, 1), z(1, 1), z(1, 2), z(0, 2)]);
        assert!(poly.contains(rp(q(1, 2), q(1, 2))));
        assert!(poly.contains(z(1, 1)));
        assert!(!poly.contains(rp(q(3, 2), q(3, 2))));
        assert!(poly.segment_inside(z(0, 0), z(1, 1)));
        assert!(poly.segment_inside(z(0, 2), z(0, 0)));
        assert!(!poly.segment_inside(z(2, 1), z(1, 2)));
        // along an edge and on through the reflex corner
        assert!(poly.segment_inside(z(0, 1), z(1, 1)));
    }

    #[test]
    fn degenerate_domain() {
        let z = |a: i128, b: i128| rp(Q::from_integer(a), Q::from_integer(b));
        let poly = Polygon::new(vec![z(0, 0), z(1, 1), z(2, 2), z(1, 1)]);
        assert!(poly.is_degenerate());
        let p = shortest_path(&poly, z(0, 0), z(2, 2)).unwrap();
        assert_eq!(p.points, vec![z(0, 0), z(2, 2)]);
    }
}
