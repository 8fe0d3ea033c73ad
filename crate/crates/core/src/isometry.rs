//! Isometries, displacement sets and axis approximations.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::complex::{FlagComplex, Geodesic, VertexId, UNSEEN};
use crate::eplane::{euclid_sq, lattice_distance, AxialCoord, PlaneIsometry};
use crate::error::{Error, Result};
use crate::euclid::{build_euclidean, select_vertex_geodesic};

/// A vertex permutation of a finite complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermTable {
    map: Vec<VertexId>,
}

impl PermTable {
    /// Checks bijectivity and that every edge maps to an edge.
    pub fn new(c: &FlagComplex, map: Vec<VertexId>) -> Result<Self> {
        if map.len() != c.len() {
            return Err(Error::PreconditionViolated("table must cover every vertex".into()));
        }
        let image: BTreeSet<VertexId> = map.iter().copied().collect();
        if image.len() != map.len() || map.iter().any(|&v| !c.contains(v)) {
            return Err(Error::PreconditionViolated("table is not a bijection".into()));
        }
        if let Some((u, v)) = c.edges().find(|&(u, v)| !c.adjacent(map[u.idx()], map[v.idx()])) {
            return Err(Error::PreconditionViolated(format!("edge {u:?}-{v:?} is not preserved")));
        }
        Ok(PermTable { map })
    }

    /// Parses the `perm v1` format: a header, then lines `u -> v`.
    pub fn parse(c: &FlagComplex, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "perm v1")) => {}
            Some((n, l)) => return Err(Error::Parse { line: n, msg: format!("bad header {l:?}") }),
            None => return Err(Error::Parse { line: 1, msg: "empty file".into() }),
        }
        let mut map: Vec<Option<VertexId>> = vec![None; c.len()];
        for (ln, l) in lines {
            let bad = || Error::Parse { line: ln, msg: format!("expected `u -> v`, got {l:?}") };
            let (u, v) = l.split_once("->").ok_or_else(bad)?;
            let u: usize = u.trim().parse().map_err(|_| bad())?;
            let v: u32 = v.trim().parse().map_err(|_| bad())?;
            if u >= c.len() || map[u].is_some() {
                return Err(Error::Parse { line: ln, msg: format!("vertex {u} out of range or repeated") });
            }
            map[u] = Some(VertexId(v));
        }
        let map: Vec<VertexId> = map
            .into_iter()
            .enumerate()
            .map(|(u, v)| v.ok_or_else(|| Error::Parse { line: 0, msg: format!("vertex {u} unmapped") }))
            .collect::<Result<_>>()?;
        PermTable::new(c, map)
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v.idx()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isometry {
    Plane(PlaneIsometry),
    Table(PermTable),
}

impl Isometry {
    /// `h·v`, or `None` when the image falls outside the window.
    pub fn image(&self, c: &FlagComplex, v: VertexId) -> Option<VertexId> {
        match self {
            Isometry::Plane(h) => c.vertex_at(h.apply(c.coord(v)?)),
            Isometry::Table(t) => Some(t.apply(v)),
        }
    }

    /// `d(v, h·v)`.
    pub fn displacement(&self, c: &FlagComplex, v: VertexId) -> Result<u32> {
        match self {
            Isometry::Plane(h) => Ok(h.displacement(c.coord(v).ok_or(Error::NotPlaneBacked)?)),
            Isometry::Table(t) => {
                let w = t.apply(v);
                let d = c.bfs(v, UNSEEN)[w.idx()];
                if d == UNSEEN {
                    return Err(Error::Unreachable(w));
                }
                c.certify(v, w, d)?;
                Ok(d)
            }
        }
    }

    fn plane(&self, c: &FlagComplex) -> Result<Option<PlaneIsometry>> {
        match self {
            Isometry::Plane(h) if c.is_plane_backed() => Ok(Some(*h)),
            Isometry::Plane(_) => Err(Error::NotPlaneBacked),
            Isometry::Table(_) => Ok(None),
        }
    }
}

/// Whether `h` fixes no simplex.
pub fn is_hyperbolic(c: &FlagComplex, h: &Isometry) -> Result<bool> {
    if let Isometry::Plane(p) = h {
        return Ok(!p.has_fixed_point());
    }
    if c.is_windowed() {
        return Err(Error::Inconclusive("a table on a window cannot see simplices beyond it".into()));
    }
    // a fixed simplex contains a fixed vertex or is permuted within itself
    for v in c.vertices() {
        let w = h.image(c, v).expect("table");
        if w == v {
            return Ok(false);
        }
        if !c.adjacent(v, w) {
            continue;
        }
        // orbit of v inside the clique it spans with its images
        let mut orbit = vec![v];
        let mut cur = w;
        while cur != v && orbit.len() <= c.max_degree() + 1 {
            orbit.push(cur);
            cur = h.image(c, cur).expect("table");
        }
        if cur == v && c.is_clique(&orbit) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `L(h)`, the least displacement of a vertex.
pub fn translation_length(c: &FlagComplex, h: &Isometry) -> Result<u32> {
    if let Some(p) = h.plane(c)? {
        return Ok(p.translation_length());
    }
    let mut best = u32::MAX;
    for v in c.vertices() {
        best = best.min(h.displacement(c, v)?);
    }
    Ok(best)
}

/// The vertices of a window displaced by at most `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplacementSet {
    pub k: u32,
    pub vertices: Vec<VertexId>,
    /// Number of window vertices scanned.
    pub scanned: usize,
}

impl DisplacementSet {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

pub fn displacement_set(c: &FlagComplex, h: &Isometry, k: u32) -> Result<DisplacementSet> {
    let mut vertices = Vec::new();
    for v in c.vertices() {
        if h.displacement(c, v)? <= k {
            vertices.push(v);
        }
    }
    Ok(DisplacementSet { k, vertices, scanned: c.len() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProximityReport {
    pub translation_length: u32,
    /// `9·L(h) + 6`.
    pub bound: u32,
    pub max_displacement: u32,
    pub violations: usize,
    /// Pair index and vertex of the largest displacement.
    pub witness: Option<(usize, VertexId)>,
    pub per_pair: Vec<u32>,
}

/// Builds the Euclidean geodesic of every pair of `Min(h)` vertices and
/// measures how far its vertices are displaced.
pub fn check_min_proximity(c: &FlagComplex, h: &Isometry, pairs: &[(VertexId, VertexId)]) -> Result<ProximityReport> {
    let l = translation_length(c, h)?;
    let bound = 9 * l + 6;
    let mut rep = ProximityReport {
        translation_length: l,
        bound,
        max_displacement: 0,
        violations: 0,
        witness: None,
        per_pair: Vec::with_capacity(pairs.len()),
    };
    for (idx, &(x, y)) in pairs.iter().enumerate() {
        for v in [x, y] {
            if h.displacement(c, v)? != l {
                return Err(Error::PreconditionViolated(format!("{v:?} is not in Min(h)")));
            }
        }
        let e = build_euclidean(c, x, y)?;
        let mut worst = 0;
        for s in &e.simplices {
            for &v in s.vertices() {
                let d = h.displacement(c, v)?;
                if d > bound {
                    rep.violations += 1;
                }
                if d > worst {
                    worst = d;
                }
                if d > rep.max_displacement || rep.witness.is_none() {
                    rep.max_displacement = rep.max_displacement.max(d);
                    rep.witness = Some((idx, v));
                }
            }
        }
        rep.per_pair.push(worst);
    }
    Ok(rep)
}

/// An `h`-invariant geodesic on the plane through `x`, truncated to
/// `length` edges.
///
/// The piece from `x` to `h·x` steps greedily towards `h·x`, each time
/// taking the neighbour closest to the straight line from `x` to `h·x`
/// (ties broken by coordinate order). Its `h`-translates are concatenated.
pub fn invariant_geodesic_on_plane(h: &PlaneIsometry, x: AxialCoord, length: usize) -> Result<Vec<AxialCoord>> {
    if !h.is_translation() || h.t == AxialCoord::ORIGIN {
        return Err(Error::NotTranslationLike);
    }
    let t = h.t;
    let target = x + t;
    let mut piece = vec![x];
    let mut p = x;
    while p != target {
        let d = lattice_distance(p, target);
        let next = p
            .neighbors()
            .into_iter()
            .filter(|&q| lattice_distance(q, target) + 1 == d)
            .min_by_key(|&q| ((q - x).cross(t).abs(), q))
            .expect("some neighbour is closer");
        piece.push(next);
        p = next;
    }
    let period = piece.len() - 1;
    let mut out = Vec::with_capacity(length + 1);
    let mut shift = AxialCoord::ORIGIN;
    'outer: loop {
        for &q in &piece[..period] {
            if out.len() > length {
                break 'outer;
            }
            out.push(q + shift);
        }
        shift = shift + t;
    }
    for (i, &p) in out.iter().enumerate() {
        for (k, &q) in out.iter().enumerate() {
            if lattice_distance(p, q) as usize != i.abs_diff(k) {
                return Err(Error::ConditionViolated { index: i, reason: "stepping left the geodesic".into() });
            }
        }
        if i + period < out.len() && h.apply(p) != out[i + period] {
            return Err(Error::ConditionViolated { index: i, reason: "not h-invariant".into() });
        }
    }
    Ok(out)
}

/// A finite piece of a good geodesic along the axis of `h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisApprox {
    /// The stable central segment.
    pub vertices: Vec<VertexId>,
    /// Largest displacement along the segment.
    pub k: u32,
    pub n: u32,
    /// The longest truncation, from `h^{-n}·x` to `h^n·x`.
    pub span: Geodesic,
    /// Truncation parameters that took part in the agreement.
    pub family: Vec<u32>,
}

fn orbit_point(c: &FlagComplex, h: &Isometry, x: VertexId, m: i64) -> Result<VertexId> {
    let out = match h {
        Isometry::Plane(p) => c.vertex_at(p.pow(m).apply(c.coord(x).ok_or(Error::NotPlaneBacked)?)),
        Isometry::Table(t) => {
            let mut v = x;
            if m >= 0 {
                for _ in 0..m {
                    v = t.apply(v);
                }
            } else {
                let inv: Vec<VertexId> = {
                    let mut inv = vec![VertexId(0); c.len()];
                    for u in c.vertices() {
                        inv[t.apply(u).idx()] = u;
                    }
                    inv
                };
                for _ in 0..-m {
                    v = inv[v.idx()];
                }
            }
            Some(v)
        }
    };
    out.ok_or_else(|| Error::BoundaryUnsafe(format!("h^{m}·x leaves the window")))
}

/// Vertex geodesics between `h^{-m}·x` and `h^m·x` for the truncations
/// `m` in `[⌈n/2⌉, n]` stepping by `stride` down from `n`; returns the longest
/// segment around the centre of the `n`-th one that every member contains.
pub fn central_good_geodesic(c: &FlagComplex, h: &Isometry, x: VertexId, n: u32, stride: u32) -> Result<AxisApprox> {
    if n == 0 || stride == 0 {
        return Err(Error::PreconditionViolated("n and stride must be positive".into()));
    }
    if !is_hyperbolic(c, h)? {
        return Err(Error::PreconditionViolated("h is not hyperbolic".into()));
    }
    let lo = n.div_ceil(2);
    let mut family = Vec::new();
    let mut geos = Vec::new();
    let mut m = n;
    loop {
        let a = orbit_point(c, h, x, -(m as i64))?;
        let b = orbit_point(c, h, x, m as i64)?;
        let e = build_euclidean(c, a, b)?;
        geos.push(select_vertex_geodesic(c, &e)?);
        family.push(m);
        if m < lo + stride {
            break;
        }
        m -= stride;
    }
    let span = geos[0].clone();
    let v = span.vertices();
    let centre = v.len() / 2;
    let contains = |g: &Geodesic, seg: &[VertexId]| g.vertices().windows(seg.len()).any(|w| w == seg);
    let mut best: Option<(usize, usize)> = None;
    for l in 0..=centre {
        for r in (centre..v.len()).rev() {
            if best.is_some_and(|(bl, br)| br - bl >= r - l) {
                break;
            }
            if geos[1..].iter().all(|g| contains(g, &v[l..=r])) {
                best = Some((l, r));
                break;
            }
        }
    }
    let (l, r) = best.ok_or(Error::NoStableSegment)?;
    let vertices = v[l..=r].to_vec();
    let mut k = 0;
    for &u in &vertices {
        k = k.max(h.displacement(c, u)?);
    }
    Ok(AxisApprox { vertices, k, n, span, family })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `d(h^m·x, γ)` for `m = 1..=n_max`.
    pub distances: Vec<u32>,
    /// `d(x, γ)`.
    pub offset: u32,
    /// Largest distance from a `disp_K(h)` vertex near `x` to `γ`.
    pub radius: u32,
    pub bounded: bool,
}

/// Tracks how far the orbit of `x` strays from the axis approximation.
///
/// `γ` is the longest truncation stored in `gamma`. The cocompactness radius
/// is measured over `disp_K(h)` vertices within a quarter of `γ`'s length
/// of `x`, where the nearest part of `γ` is away from its ends.
pub fn convergence_diagnostic(
    c: &FlagComplex,
    h: &Isometry,
    x: VertexId,
    gamma: &AxisApprox,
    n_max: u32,
) -> Result<ConvergenceReport> {
    if n_max > gamma.n {
        return Err(Error::BoundaryUnsafe(format!("orbit step {n_max} beyond truncation {}", gamma.n)));
    }
    let to_gamma = c.bfs_multi(gamma.span.vertices(), UNSEEN);
    let mut distances = Vec::with_capacity(n_max as usize);
    for m in 1..=n_max {
        let p = orbit_point(c, h, x, m as i64)?;
        distances.push(to_gamma[p.idx()]);
    }
    let offset = to_gamma[x.idx()];
    let reach = (gamma.span.len() as u32).div_ceil(4);
    let near = c.bfs(x, reach);
    let mut radius = 0;
    for v in c.vertices() {
        if near[v.idx()] <= reach && h.displacement(c, v)? <= gamma.k {
            radius = radius.max(to_gamma[v.idx()]);
        }
    }
    let bounded = distances.iter().all(|&d| d <= offset + radius);
    Ok(ConvergenceReport { distances, offset, radius, bounded })
}

/// Largest squared Euclidean distance from the vertices of `path` to the
/// straight line through `x` with direction `t`. Exact.
pub fn line_deviation_sq(path: &[AxialCoord], x: AxialCoord, t: AxialCoord) -> Ratio<i64> {
    // the Cartesian cross product is √3/2 times the axial one
    let denom = 4 * euclid_sq(t);
    path.iter()
        .map(|&q| {
            let cr = (q - x).cross(t);
            Ratio::new(3 * cr * cr, denom)
        })
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eplane::window;

    fn at(c: &FlagComplex, a: i64, b: i64) -> VertexId {
        c.vertex_at(AxialCoord::new(a, b)).unwrap()
    }

    #[test]
    fn hyperbolicity() {
        let w = window(AxialCoord::ORIGIN, 3);
        let p = |h| Isometry::Plane(h);
        assert!(is_hyperbolic(&w, &p(PlaneIsometry::translate(1, 0))).unwrap());
        assert!(!is_hyperbolic(&w, &p(PlaneIsometry::identity())).unwrap());
        assert!(!is_hyperbolic(&w, &p(PlaneIsometry::rot60(1, AxialCoord::new(1, 1)))).unwrap());
        // a table rotating a triangle fixes it setwise
        let tri = FlagComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = PermTable::new(&tri, vec![VertexId(1), VertexId(2), VertexId(0)]).unwrap();
        assert!(!is_hyperbolic(&tri, &Isometry::Table(r)).unwrap());
        // on a hexagon the rotation by one step moves every simplex
        let e: Vec<(u32, u32)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let hex = FlagComplex::from_edges(6, &e).unwrap();
        let r = PermTable::new(&hex, (0..6).map(|i| VertexId((i + 1) % 6)).collect()).unwrap();
        assert!(is_hyperbolic(&hex, &Isometry::Table(r.clone())).unwrap());
        assert_eq!(translation_length(&hex, &Isometry::Table(r)).unwrap(), 1);
    }

    #[test]
    fn glide_min_set() {
        let w = window(AxialCoord::ORIGIN, 8);
        let g = Isometry::Plane(PlaneIsometry::glide(1, 1));
        assert_eq!(translation_length(&w, &g).unwrap(), 2);
        for (k, width) in [(2u32, 1i64), (3, 2)] {
            let s = displacement_set(&w, &g, k).unwrap();
            for v in w.vertices() {
                let p = w.coord(v).unwrap();
                assert_eq!(s.contains(v), (p.a - p.b).abs() <= width, "{p:?}");
            }
        }
        let t = Isometry::Plane(PlaneIsometry::translate(1, 0));
        assert_eq!(displacement_set(&w, &t, 1).unwrap().vertices.len(), w.len());
    }

    #[test]
    fn proximity_bound() {
        let w = window(AxialCoord::ORIGIN, 14);
        let g = Isometry::Plane(PlaneIsometry::glide(1, 1));
        let r = check_min_proximity(&w, &g, &[(at(&w, 0, 0), at(&w, 6, 6)), (at(&w, 1, 1), at(&w, 1, 1))]).unwrap();
        assert_eq!(r.bound, 24);
        assert_eq!(r.violations, 0);
        assert_eq!(r.per_pair[1], 2);
        assert!(check_min_proximity(&w, &g, &[(at(&w, 0, 3), at(&w, 1, 1))]).is_err());
    }

    #[test]
    fn staircase() {
        let h = PlaneIsometry::translate(1, 1);
        let s = invariant_geodesic_on_plane(&h, AxialCoord::ORIGIN, 8).unwrap();
        let want: Vec<AxialCoord> =
            [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (4, 4)].map(|(a, b)| AxialCoord::new(a, b)).to_vec();
        assert_eq!(s, want);
        let s = invariant_geodesic_on_plane(&PlaneIsometry::translate(3, 0), AxialCoord::ORIGIN, 6).unwrap();
        assert!(s.iter().enumerate().all(|(i, p)| *p == AxialCoord::new(i as i64, 0)));
        let s = invariant_geodesic_on_plane(&h, AxialCoord::ORIGIN, 24).unwrap();
        assert_eq!(line_deviation_sq(&s, AxialCoord::ORIGIN, h.t), Ratio::new(1, 4));
        assert!(matches!(
            invariant_geodesic_on_plane(&PlaneIsometry::glide(1, 1), AxialCoord::ORIGIN, 4),
            Err(Error::NotTranslationLike)
        ));
    }

    #[test]
    fn axis_approximations() {
        let w = window(AxialCoord::ORIGIN, 12);
        let h = Isometry::Plane(PlaneIsometry::translate(2, 0));
        let a = central_good_geodesic(&w, &h, at(&w, 0, 0), 4, 1).unwrap();
        assert_eq!(a.k, 2);
        assert!(a.vertices.iter().all(|&v| w.coord(v).unwrap().b == 0));
        let one = central_good_geodesic(&w, &h, at(&w, 0, 0), 1, 1).unwrap();
        assert_eq!(one.vertices.len(), 5);
        let g = Isometry::Plane(PlaneIsometry::glide(1, 1));
        let a = central_good_geodesic(&w, &g, at(&w, 0, 0), 4, 1).unwrap();
        assert!(a.k <= 24);
        for &v in &a.vertices {
            let p = w.coord(v).unwrap();
            assert!((p.a - p.b).abs() <= 1);
        }
        let r = convergence_diagnostic(&w, &h, at(&w, 0, 0), &central_good_geodesic(&w, &h, at(&w, 0, 0), 4, 1).unwrap(), 4)
            .unwrap();
        assert!(r.distances.iter().all(|&d| d == 0));
        let off = convergence_diagnostic(&w, &h, at(&w, 0, 2), &central_good_geodesic(&w, &h, at(&w, 0, 0), 4, 1).unwrap(), 4)
            .unwrap();
        assert!(off.distances.iter().all(|&d| d <= off.offset));
        assert!(off.bounded);
    }

    #[test]
    fn perm_file() {
        let tri = FlagComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(PermTable::parse(&tri, "perm v1\n0 -> 1\n1 -> 2\n2 -> 0\n").is_ok());
        assert!(PermTable::parse(&tri, "perm v1\n0 -> 1\n1 -> 1\n2 -> 0\n").is_err());
        assert!(PermTable::parse(&tri, "perm v1\n0 -> 1\n").is_err());
        assert!(PermTable::parse(&tri, "perm v2\n").is_err());
    }
}
