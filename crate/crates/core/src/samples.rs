//! Small bundled complexes used by tests, scenarios and the CLI.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{FlagComplex, VertexId};
use crate::eplane::{lattice_distance, window, AxialCoord};

/// `K_{2,2,2}`: every vertex link is a 4-cycle.
pub fn octahedron() -> FlagComplex {
    let mut e = Vec::new();
    for u in 0..6u32 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                e.push((u, v));
            }
        }
    }
    FlagComplex::from_edges(6, &e).expect("valid edges")
}

pub fn triangle() -> FlagComplex {
    FlagComplex::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).expect("valid edges")
}

/// The full subcomplex of the plane spanned by `cells`, with coordinates.
pub fn plane_region(cells: impl IntoIterator<Item = AxialCoord>) -> FlagComplex {
    let cells: BTreeSet<AxialCoord> = cells.into_iter().collect();
    let coords: Vec<AxialCoord> = cells.iter().copied().collect();
    let id: BTreeMap<AxialCoord, u32> = coords.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let mut edges = Vec::new();
    for (&p, &i) in &id {
        for q in p.neighbors() {
            if let Some(&j) = id.get(&q) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    FlagComplex::from_edges(coords.len(), &edges)
        .and_then(|c| c.with_coords(coords))
        .expect("lattice region")
}

fn rect(a: std::ops::RangeInclusive<i64>, b: std::ops::RangeInclusive<i64>) -> Vec<AxialCoord> {
    b.flat_map(|b| a.clone().map(move |a| AxialCoord::new(a, b))).collect()
}

/// `0 ≤ a ≤ 5, 0 ≤ b ≤ 4`.
pub fn parallelogram() -> FlagComplex {
    plane_region(rect(0..=5, 0..=4))
}

/// `a, b ≥ 0, a + b ≤ 6`.
pub fn lattice_triangle() -> FlagComplex {
    plane_region(rect(0..=6, 0..=6).into_iter().filter(|p| p.a + p.b <= 6))
}

/// Two 7×3 strips crossing at a corner.
pub fn l_region() -> FlagComplex {
    plane_region(rect(0..=6, 0..=2).into_iter().chain(rect(0..=2, 0..=6)))
}

/// Finite flat regions whose thick intervals fill with flat disks.
pub fn flat_disk_samples() -> Vec<(&'static str, FlagComplex)> {
    vec![("parallelogram", parallelogram()), ("lattice-triangle", lattice_triangle()), ("l-region", l_region())]
}

/// A plane window sitting inside a larger systolic complex.
#[derive(Clone, Debug)]
pub struct FlatEmbedding {
    pub name: &'static str,
    pub ambient: FlagComplex,
    pub flat: FlagComplex,
    /// Flat vertex index to ambient vertex.
    pub map: Vec<VertexId>,
}

impl FlatEmbedding {
    pub fn image(&self, v: VertexId) -> VertexId {
        self.map[v.idx()]
    }
}

/// Glues lattice pieces into one complex. Each piece lists its cells with the
/// key they are identified by; edges are lattice edges inside a piece.
fn glue<K: Ord + Clone>(pieces: &[Vec<(AxialCoord, K)>], extra: &[(K, K)]) -> (FlagComplex, BTreeMap<K, VertexId>) {
    let mut ids: BTreeMap<K, VertexId> = BTreeMap::new();
    for piece in pieces {
        for (_, k) in piece {
            let n = ids.len() as u32;
            ids.entry(k.clone()).or_insert(VertexId(n));
        }
    }
    let mut edges = BTreeSet::new();
    for piece in pieces {
        let at: BTreeMap<AxialCoord, VertexId> = piece.iter().map(|(p, k)| (*p, ids[k])).collect();
        for (&p, &u) in &at {
            for q in p.neighbors() {
                if let Some(&v) = at.get(&q) {
                    edges.insert((u.0.min(v.0), u.0.max(v.0)));
                }
            }
        }
    }
    for (a, b) in extra {
        let (u, v) = (ids[a].0, ids[b].0);
        edges.insert((u.min(v), u.max(v)));
    }
    let edges: Vec<_> = edges.into_iter().collect();
    (FlagComplex::from_edges(ids.len(), &edges).expect("glued complex"), ids)
}

fn embedding(name: &'static str, flat: FlagComplex, ids: &BTreeMap<(u8, AxialCoord), VertexId>, key: impl Fn(AxialCoord) -> (u8, AxialCoord), ambient: FlagComplex) -> FlatEmbedding {
    let map = flat.vertices().map(|v| ids[&key(flat.coord(v).expect("plane-backed"))]).collect();
    FlatEmbedding { name, ambient, flat, map }
}

/// Three half-hexagons of radius `r` bound along the line `b = 0`; any two
/// pages form a flat hexagon.
pub fn book(r: u32) -> FlatEmbedding {
    let flat = window(AxialCoord::ORIGIN, r);
    let cells: Vec<AxialCoord> = flat.vertices().filter_map(|v| flat.coord(v)).collect();
    let key = |page: u8| move |p: AxialCoord| if p.b == 0 { (0, p) } else { (page, p) };
    let upper: Vec<_> = cells.iter().filter(|p| p.b >= 0).map(|&p| (p, key(1)(p))).collect();
    let lower: Vec<_> = cells.iter().filter(|p| p.b <= 0).map(|&p| (p, key(2)(p))).collect();
    let third: Vec<_> = cells.iter().filter(|p| p.b <= 0).map(|&p| (p, key(3)(p))).collect();
    let (ambient, ids) = glue(&[upper, lower, third], &[]);
    embedding("book", flat, &ids, |p| if p.b == 0 { (0, p) } else if p.b > 0 { (1, p) } else { (2, p) }, ambient)
}

/// A hexagon of radius `r` with a triangle glued onto every boundary edge.
pub fn finned_window(r: u32) -> FlatEmbedding {
    let flat = window(AxialCoord::ORIGIN, r);
    let cells: Vec<(AxialCoord, (u8, AxialCoord))> =
        flat.vertices().filter_map(|v| flat.coord(v)).map(|p| (p, (0, p))).collect();
    let rim: Vec<AxialCoord> = cells.iter().map(|c| c.0).filter(|&p| lattice_distance(p, AxialCoord::ORIGIN) == r).collect();
    let mut pieces = vec![cells];
    let mut extra = Vec::new();
    for (i, &p) in rim.iter().enumerate() {
        for &q in &rim[i + 1..] {
            if lattice_distance(p, q) == 1 {
                // keyed by the edge's coordinate sum, which is unique per rim edge
                let fin = (1, p + q);
                pieces.push(vec![(AxialCoord::ORIGIN, fin)]);
                extra.push((fin, (0, p)));
                extra.push((fin, (0, q)));
            }
        }
    }
    let (ambient, ids) = glue(&pieces, &extra);
    embedding("finned-window", flat, &ids, |p| (0, p), ambient)
}

/// Two hexagons of radius `r` sharing one rim vertex.
pub fn wedge(r: u32) -> FlatEmbedding {
    let flat = window(AxialCoord::ORIGIN, r);
    let cells: Vec<AxialCoord> = flat.vertices().filter_map(|v| flat.coord(v)).collect();
    let pin = AxialCoord::new(r as i64, 0);
    let shift = AxialCoord::new(2 * r as i64, 0);
    let left: Vec<_> = cells.iter().map(|&p| (p, (0u8, p))).collect();
    let right: Vec<_> =
        cells.iter().map(|&p| p + shift).map(|p| (p, if p == pin { (0, pin) } else { (1, p) })).collect();
    let (ambient, ids) = glue(&[left, right], &[]);
    embedding("wedge", flat, &ids, |p| (0, p), ambient)
}

pub fn flat_embeddings() -> Vec<FlatEmbedding> {
    vec![book(6), finned_window(6), wedge(6)]
}

/// Every bundled complex that is systolic.
pub fn systolic_samples() -> Vec<(&'static str, FlagComplex)> {
    let mut out = vec![("window-8", window(AxialCoord::ORIGIN, 8)), ("triangle", triangle())];
    out.extend(flat_disk_samples());
    out.extend(flat_embeddings().into_iter().map(|f| (f.name, f.ambient)));
    out
}

/// Looks up a bundled complex by name.
pub fn builtin(name: &str) -> Option<FlagComplex> {
    match name {
        "octahedron" => Some(octahedron()),
        "triangle" => Some(triangle()),
        _ => flat_disk_samples()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| c)
            .or_else(|| flat_embeddings().into_iter().find(|f| f.name == name).map(|f| f.ambient)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::check_local_6_large;

    #[test]
    fn sizes() {
        assert_eq!(parallelogram().len(), 30);
        assert_eq!(lattice_triangle().len(), 28);
        assert_eq!(l_region().len(), 21 + 21 - 9);
        let b = book(2);
        // 19 in the hexagon, plus a second lower page of 7 minus the 5 spine vertices
        assert_eq!(b.ambient.len(), 19 + 7);
        let f = finned_window(2);
        assert_eq!(f.ambient.len(), 19 + 12);
        let w = wedge(2);
        assert_eq!(w.ambient.len(), 37);
    }

    #[test]
    fn embeddings_are_isometric() {
        for f in [book(3), finned_window(3), wedge(3)] {
            for u in f.flat.vertices() {
                let df = f.flat.bfs(u, u32::MAX);
                let da = f.ambient.bfs(f.image(u), u32::MAX);
                for v in f.flat.vertices() {
                    assert_eq!(df[v.idx()], da[f.image(v).idx()], "{}", f.name);
                }
            }
        }
    }

    #[test]
    fn data_files_match_samples() {
        let files = [
            ("octahedron", include_str!("../data/octahedron.fc")),
            ("parallelogram", include_str!("../data/parallelogram.fc")),
            ("lattice-triangle", include_str!("../data/lattice-triangle.fc")),
            ("l-region", include_str!("../data/l-region.fc")),
            ("book", include_str!("../data/book.fc")),
            ("finned-window", include_str!("../data/finned-window.fc")),
            ("wedge", include_str!("../data/wedge.fc")),
        ];
        for (name, text) in files {
            let c = builtin(name).unwrap();
            assert_eq!(c.to_text(), text, "{name}");
            assert_eq!(FlagComplex::parse(text).unwrap().edge_count(), c.edge_count());
        }
    }

    #[test]
    fn bundled_samples_are_locally_6_large() {
        for (name, c) in systolic_samples() {
            assert!(check_local_6_large(&c).passed, "{name}");
        }
        assert!(!check_local_6_large(&octahedron()).passed);
    }
}
