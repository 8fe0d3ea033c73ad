//! Flag simplicial complexes stored as their 1-skeleton.
//!
//! Simplices are never stored: a vertex set is a simplex exactly when it is a
//! clique. Metric queries run breadth-first search on the graph. Finite windows
//! cut out of infinite complexes carry a per-vertex margin so that results
//! which could be distorted by the cut are refused instead of returned.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::eplane::AxialCoord;
use crate::error::{Error, Result};

/// Vertex handle, an index into the owning complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

pub const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FlagComplex {
    adj: Vec<Vec<VertexId>>,
    coords: Option<Vec<AxialCoord>>,
    index: HashMap<AxialCoord, VertexId>,
    /// Hops to the window boundary; `None` means the complex is complete.
    margin: Option<Vec<u32>>,
    /// Set when the window is known to be convex in the ambient complex,
    /// which makes every window distance exact.
    convex_window: bool,
    max_degree: usize,
}

impl FlagComplex {
    /// Builds a complete (non-windowed) complex on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (line, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::Parse { line: line + 1, msg: format!("self-loop at {u}") });
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::Parse { line: line + 1, msg: format!("vertex out of range in {u} {v}") });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse { line: line + 1, msg: format!("duplicate edge {u} {v}") });
            }
            adj[u as usize].push(VertexId(v));
            adj[v as usize].push(VertexId(u));
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        Ok(FlagComplex {
            adj,
            coords: None,
            index: HashMap::new(),
            margin: None,
            convex_window: false,
            max_degree,
        })
    }

    /// Materializes the part of an implicit complex reachable from `center`
    /// within `radius` hops. Vertices are numbered in increasing coordinate
    /// order. `convex` declares that such balls are convex in the ambient
    /// complex, so window distances are exact everywhere.
    pub fn materialize<F>(center: AxialCoord, radius: u32, neighbors: F, convex: bool) -> Self
    where
        F: Fn(AxialCoord) -> Vec<AxialCoord>,
    {
        let mut depth: HashMap<AxialCoord, u32> = HashMap::new();
        let mut queue = VecDeque::from([center]);
        depth.insert(center, 0);
        while let Some(p) = queue.pop_front() {
            let d = depth[&p];
            if d == radius {
                continue;
            }
            for q in neighbors(p) {
                if let std::collections::hash_map::Entry::Vacant(e) = depth.entry(q) {
                    e.insert(d + 1);
                    queue.push_back(q);
                }
            }
        }
        let mut coords: Vec<AxialCoord> = depth.keys().copied().collect();
        coords.sort_unstable();
        let index: HashMap<AxialCoord, VertexId> =
            coords.iter().enumerate().map(|(i, &p)| (p, VertexId(i as u32))).collect();
        let mut adj = vec![Vec::new(); coords.len()];
        let mut boundary = Vec::new();
        for (i, &p) in coords.iter().enumerate() {
            let mut on_boundary = false;
            for q in neighbors(p) {
                match index.get(&q) {
                    Some(&w) => adj[i].push(w),
                    None => on_boundary = true,
                }
            }
            adj[i].sort_unstable();
            if on_boundary {
                boundary.push(VertexId(i as u32));
            }
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        let mut c = FlagComplex {
            adj,
            coords: Some(coords),
            index,
            margin: None,
            convex_window: convex,
            max_degree,
        };
        let margin = if boundary.is_empty() {
            vec![u32::MAX / 4; c.len()]
        } else {
            c.bfs_multi(&boundary, UNSEEN)
                .into_iter()
                .map(|d| if d == UNSEEN { u32::MAX / 4 } else { d })
                .collect()
        };
        c.margin = Some(margin);
        c
    }

    /// Attaches plane coordinates to the vertices of a complete complex.
    pub fn with_coords(mut self, coords: Vec<AxialCoord>) -> Result<Self> {
        if coords.len() != self.len() {
            return Err(Error::PreconditionViolated("coordinate count mismatch".into()));
        }
        self.index = coords.iter().enumerate().map(|(i, &p)| (p, VertexId(i as u32))).collect();
        if self.index.len() != coords.len() {
            return Err(Error::PreconditionViolated("duplicate coordinates".into()));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    /// Parses the `flagcomplex v1` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "flagcomplex v1")) => {}
            Some((n, other)) => {
                return Err(Error::Parse { line: n, msg: format!("bad header {other:?}") })
            }
            None => return Err(Error::Parse { line: 1, msg: "empty file".into() }),
        }
        let mut edges = Vec::new();
        let mut line_of = Vec::new();
        let mut n = 0usize;
        for (ln, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [u, v] = parts.as_slice() else {
                return Err(Error::Parse { line: ln, msg: format!("expected `u v`, got {l:?}") });
            };
            let parse = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| Error::Parse { line: ln, msg: format!("bad vertex id {s:?}") })
            };
            let (u, v) = (parse(u)?, parse(v)?);
            n = n.max(u as usize + 1).max(v as usize + 1);
            edges.push((u, v));
            line_of.push(ln);
        }
        FlagComplex::from_edges(n, &edges).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse { line: line_of[line - 1], msg },
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("flagcomplex v1\n");
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u.0, v.0));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u.idx()].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.idx() < self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.idx()]
    }

    #[inline]
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.idx()].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coord(&self, v: VertexId) -> Option<AxialCoord> {
        self.coords.as_ref().map(|c| c[v.idx()])
    }

    pub fn vertex_at(&self, p: AxialCoord) -> Option<VertexId> {
        self.index.get(&p).copied()
    }

    pub fn is_plane_backed(&self) -> bool {
        self.coords.is_some()
    }

    /// Hops to the window boundary, or `None` for complete complexes.
    pub fn margin(&self, v: VertexId) -> Option<u32> {
        self.margin.as_ref().map(|m| m[v.idx()])
    }

    pub fn is_windowed(&self) -> bool {
        self.margin.is_some()
    }

    pub fn is_convex_window(&self) -> bool {
        self.convex_window
    }

    /// Refuses queries whose answer could depend on vertices outside the
    /// window. `reach` is the hop radius around `x` or `y` the query relies on.
    pub fn certify(&self, x: VertexId, y: VertexId, reach: u32) -> Result<()> {
        let Some(m) = &self.margin else { return Ok(()) };
        if self.convex_window {
            return Ok(());
        }
        if m[x.idx()].max(m[y.idx()]) >= reach {
            Ok(())
        } else {
            Err(Error::BoundaryUnsafe(format!(
                "{:?},{:?} need margin {reach}, have {} and {}",
                x,
                y,
                m[x.idx()],
                m[y.idx()]
            )))
        }
    }

    /// Distances from `sources`, stopping at `limit` hops. Unreached vertices
    /// hold [`UNSEEN`].
    pub fn bfs_multi(&self, sources: &[VertexId], limit: u32) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.len()];
        let mut queue = VecDeque::with_capacity(64);
        for &s in sources {
            if dist[s.idx()] != 0 {
                dist[s.idx()] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u.idx()];
            if d >= limit {
                continue;
            }
            for &w in &self.adj[u.idx()] {
                if dist[w.idx()] == UNSEEN {
                    dist[w.idx()] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn bfs(&self, source: VertexId, limit: u32) -> Vec<u32> {
        self.bfs_multi(&[source], limit)
    }

    /// Vertices within `r` hops of `v`, in index order.
    pub fn ball(&self, v: VertexId, r: u32) -> Vec<VertexId> {
        let d = self.bfs(v, r);
        self.vertices().filter(|u| d[u.idx()] <= r).collect()
    }

    pub fn sphere(&self, v: VertexId, r: u32) -> Vec<VertexId> {
        let d = self.bfs(v, r);
        self.vertices().filter(|u| d[u.idx()] == r).collect()
    }

    pub fn is_clique(&self, vs: &[VertexId]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&w| self.adjacent(u, w)))
    }
}

/// Graph distance between `x` and `y`, searching at most `budget` hops.
pub fn distance(c: &FlagComplex, x: VertexId, y: VertexId, budget: u32) -> Result<u32> {
    if x == y {
        return Ok(0);
    }
    let d = c.bfs(x, budget)[y.idx()];
    if d == UNSEEN {
        return Err(Error::Unreachable(y));
    }
    c.certify(x, y, d)?;
    Ok(d)
}

/// The union of all geodesics from `x` to `y`, sorted.
pub fn interval(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<Vec<VertexId>> {
    let dx = c.bfs(x, UNSEEN);
    let n = dx[y.idx()];
    if n == UNSEEN {
        return Err(Error::Unreachable(y));
    }
    c.certify(x, y, n)?;
    let dy = c.bfs(y, n);
    Ok(c.vertices()
        .filter(|v| dx[v.idx()] <= n && dy[v.idx()] <= n && dx[v.idx()] + dy[v.idx()] == n)
        .collect())
}

/// Whether every geodesic between two members of `a` stays in `a`.
///
/// Checks first steps only: `a` is convex exactly when, for all members
/// `u`, `b`, every neighbour of `u` one step closer to `b` lies in `a`.
pub fn is_convex(c: &FlagComplex, a: &[VertexId], radius_cap: u32) -> Result<bool> {
    let mut member = vec![false; c.len()];
    for &v in a {
        member[v.idx()] = true;
    }
    for &b in a {
        let db = c.bfs(b, radius_cap);
        for &u in a {
            let du = db[u.idx()];
            if du == UNSEEN {
                return Err(Error::Unreachable(u));
            }
            if du == 0 {
                continue;
            }
            c.certify(u, b, du)?;
            if c.neighbors(u).iter().any(|w| db[w.idx()] == du - 1 && !member[w.idx()]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the link scan for local 6-largeness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LargenessReport {
    pub passed: bool,
    pub vertices_checked: usize,
    /// A vertex together with an induced 4- or 5-cycle of its link, in cyclic order.
    pub witness: Option<(VertexId, Vec<VertexId>)>,
}

/// Scans every vertex link for induced cycles of length 4 or 5.
pub fn check_local_6_large(c: &FlagComplex) -> LargenessReport {
    for v in c.vertices() {
        if let Some(cycle) = short_induced_cycle(c, c.neighbors(v)) {
            return LargenessReport { passed: false, vertices_checked: v.idx() + 1, witness: Some((v, cycle)) };
        }
    }
    LargenessReport { passed: true, vertices_checked: c.len(), witness: None }
}

fn short_induced_cycle(c: &FlagComplex, link: &[VertexId]) -> Option<Vec<VertexId>> {
    fn grow(c: &FlagComplex, link: &[VertexId], from: usize, size: usize, pick: &mut Vec<VertexId>) -> Option<Vec<VertexId>> {
        if pick.len() == size {
            return as_induced_cycle(c, pick);
        }
        for i in from..link.len() {
            pick.push(link[i]);
            let found = grow(c, link, i + 1, size, pick);
            pick.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    [4, 5].into_iter().find_map(|size| grow(c, link, 0, size, &mut Vec::with_capacity(size)))
}

/// Returns the vertices in cyclic order if the induced subgraph is a single cycle.
fn as_induced_cycle(c: &FlagComplex, sub: &[VertexId]) -> Option<Vec<VertexId>> {
    let nbrs: Vec<Vec<usize>> = (0..sub.len())
        .map(|i| (0..sub.len()).filter(|&j| j != i && c.adjacent(sub[i], sub[j])).collect())
        .collect();
    if nbrs.iter().any(|n| n.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0usize;
    loop {
        let next = if nbrs[cur][0] != prev { nbrs[cur][0] } else { nbrs[cur][1] };
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == sub.len()).then(|| order.into_iter().map(|i| sub[i]).collect())
}

/// A nonempty clique, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Simplex(Vec<VertexId>);

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl Simplex {
    pub fn new(c: &FlagComplex, mut vs: Vec<VertexId>) -> Result<Self> {
        vs.sort_unstable();
        let dup = vs.windows(2).any(|w| w[0] == w[1]);
        if vs.is_empty() || dup || vs.iter().any(|&v| !c.contains(v)) || !c.is_clique(&vs) {
            return Err(Error::NotASimplex(vs));
        }
        Ok(Simplex(vs))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    /// Wraps vertices already known to form a clique.
    pub(crate) fn from_clique(mut vs: Vec<VertexId>) -> Self {
        vs.sort_unstable();
        vs.dedup();
        debug_assert!(!vs.is_empty());
        Simplex(vs)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &[VertexId]) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// The simplex spanned by the union, if the union is a clique.
    pub fn join(&self, c: &FlagComplex, other: &Simplex) -> Result<Simplex> {
        let mut vs = self.0.clone();
        vs.extend_from_slice(&other.0);
        vs.sort_unstable();
        vs.dedup();
        Simplex::new(c, vs)
    }
}

/// `s` together with every vertex adjacent to all of `s`.
pub fn residue(c: &FlagComplex, s: &Simplex) -> Result<Vec<VertexId>> {
    if !s.0.iter().all(|&v| c.contains(v)) || !c.is_clique(&s.0) {
        return Err(Error::NotASimplex(s.0.clone()));
    }
    let first = s.0[0];
    let mut out: Vec<VertexId> = c
        .neighbors(first)
        .iter()
        .copied()
        .filter(|&w| !s.contains(w) && s.0.iter().all(|&u| c.adjacent(u, w)))
        .collect();
    out.extend_from_slice(&s.0);
    out.sort_unstable();
    Ok(out)
}

/// A vertex sequence claimed to be a geodesic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Geodesic(pub Vec<VertexId>);

impl Geodesic {
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Checks `d(v_i, v_j) = |i - j|` for all pairs by BFS.
    pub fn is_geodesic(&self, c: &FlagComplex) -> bool {
        let n = self.len() as u32;
        self.0.iter().enumerate().all(|(i, &v)| {
            let d = c.bfs(v, n);
            self.0.iter().enumerate().all(|(j, &w)| d[w.idx()] == (i as i64 - j as i64).unsigned_abs() as u32)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eplane::{window, AxialCoord};

    fn at(c: &FlagComplex, a: i64, b: i64) -> VertexId {
        c.vertex_at(AxialCoord::new(a, b)).unwrap()
    }

    #[test]
    fn window_distances() {
        let w = window(AxialCoord::new(0, 0), 8);
        let o = at(&w, 0, 0);
        assert_eq!(distance(&w, o, o, 20).unwrap(), 0);
        assert_eq!(distance(&w, o, at(&w, 3, 2), 20).unwrap(), 5);
        assert_eq!(distance(&w, o, at(&w, 2, -1), 20).unwrap(), 2);
        assert!(matches!(distance(&w, o, at(&w, 8, 0), 3), Err(Error::Unreachable(_))));
    }

    #[test]
    fn intervals() {
        let w = window(AxialCoord::new(0, 0), 6);
        let o = at(&w, 0, 0);
        let mut want = vec![o, at(&w, 1, 0), at(&w, 2, 0)];
        want.sort();
        assert_eq!(interval(&w, o, at(&w, 2, 0)).unwrap(), want);
        assert_eq!(interval(&w, o, o).unwrap(), vec![o]);
        let mut want = vec![o, at(&w, 1, 0), at(&w, 0, 1), at(&w, 1, 1)];
        want.sort();
        assert_eq!(interval(&w, o, at(&w, 1, 1)).unwrap(), want);
    }

    #[test]
    fn convexity() {
        let w = window(AxialCoord::new(0, 0), 6);
        let o = at(&w, 0, 0);
        assert!(is_convex(&w, &w.ball(o, 2), 8).unwrap());
        assert!(!is_convex(&w, &[o, at(&w, 2, 0)], 8).unwrap());
        assert!(is_convex(&w, &[o], 8).unwrap());
        // a bent three-vertex path misses the far corner of its rhombus
        assert!(!is_convex(&w, &[o, at(&w, 1, 0), at(&w, 1, 1)], 8).unwrap());
    }

    #[test]
    fn largeness() {
        let w = window(AxialCoord::new(0, 0), 3);
        assert!(check_local_6_large(&w).passed);
        let oct = crate::samples::octahedron();
        let r = check_local_6_large(&oct);
        assert!(!r.passed);
        let (v, cyc) = r.witness.unwrap();
        assert_eq!(cyc.len(), 4);
        for i in 0..4 {
            assert!(oct.adjacent(cyc[i], cyc[(i + 1) % 4]));
            assert!(!oct.adjacent(cyc[i], cyc[(i + 2) % 4]));
            assert!(oct.adjacent(v, cyc[i]));
        }
        let tri = FlagComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check_local_6_large(&tri).passed);
    }

    #[test]
    fn five_cycle_link_detected() {
        // cone over a pentagon: the apex link is an induced 5-cycle
        let mut e = vec![];
        for i in 0..5u32 {
            e.push((i, (i + 1) % 5));
            e.push((5, i));
        }
        let c = FlagComplex::from_edges(6, &e).unwrap();
        let r = check_local_6_large(&c);
        assert_eq!(r.witness.unwrap().1.len(), 5);
    }

    #[test]
    fn residues() {
        let w = window(AxialCoord::new(0, 0), 4);
        let o = at(&w, 0, 0);
        assert_eq!(residue(&w, &Simplex::vertex(o)).unwrap().len(), 7);
        let e = Simplex::new(&w, vec![o, at(&w, 1, 0)]).unwrap();
        let mut want = vec![o, at(&w, 1, 0), at(&w, 1, -1), at(&w, 0, 1)];
        want.sort();
        assert_eq!(residue(&w, &e).unwrap(), want);
        let t = Simplex::new(&w, vec![o, at(&w, 1, 0), at(&w, 0, 1)]).unwrap();
        assert_eq!(residue(&w, &t).unwrap(), t.vertices().to_vec());
        assert!(Simplex::new(&w, vec![o, at(&w, 2, 0)]).is_err());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(FlagComplex::parse("flagcomplex v1\n0 1\n1 2 # tail\n").is_ok());
        assert!(matches!(FlagComplex::parse("flagcomplex v1\n0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            FlagComplex::parse("flagcomplex v1\n0 1\n\n1 0\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(FlagComplex::parse("graph\n0 1\n").is_err());
        assert!(FlagComplex::parse("flagcomplex v1\n0 x\n").is_err());
        let c = FlagComplex::parse("flagcomplex v1\n0 1\n1 2\n").unwrap();
        assert_eq!(FlagComplex::parse(&c.to_text()).unwrap().edge_count(), 2);
    }

    #[test]
    fn margins_and_boundary_rule() {
        // the integer line as an implicit complex; windows of it are not convex-certified
        let line = |p: AxialCoord| vec![AxialCoord::new(p.a - 1, 0), AxialCoord::new(p.a + 1, 0)];
        let w = FlagComplex::materialize(AxialCoord::new(0, 0), 3, line, false);
        let o = w.vertex_at(AxialCoord::new(0, 0)).unwrap();
        assert_eq!(w.margin(o), Some(3));
        let l = w.vertex_at(AxialCoord::new(-2, 0)).unwrap();
        let r = w.vertex_at(AxialCoord::new(2, 0)).unwrap();
        assert_eq!(distance(&w, o, r, 5), Ok(2));
        assert!(matches!(distance(&w, l, r, 5), Err(Error::BoundaryUnsafe(_))));
        let e = window(AxialCoord::new(0, 0), 2);
        assert!(e.is_convex_window());
        assert_eq!(e.margin(at(&e, 0, 0)), Some(2));
        assert_eq!(e.margin(at(&e, 2, 0)), Some(0));
    }
}
