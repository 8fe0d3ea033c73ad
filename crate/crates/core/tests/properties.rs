mod common;

use proptest::prelude::*;

use common::{bfs, coord, hex_dist};
use syslab::complex::{distance, interval, FlagComplex, Geodesic, VertexId};
use syslab::directed::{directed_geodesic, layers};
use syslab::eplane::{lattice_distance, point_group, window, AxialCoord, PlaneIsometry};
use syslab::euclid::{euclidean_geodesic, goodness_constant, select_vertex_geodesic};
use syslab::isometry::{displacement_set, Isometry};

const R: u32 = 12;

fn plane() -> &'static FlagComplex {
    use std::sync::OnceLock;
    static W: OnceLock<FlagComplex> = OnceLock::new();
    W.get_or_init(|| window(AxialCoord::ORIGIN, R))
}

fn cell(r: i64) -> impl Strategy<Value = AxialCoord> {
    (-r..=r, -r..=r).prop_map(|(a, b)| AxialCoord::new(a, b)).prop_filter("in window", move |p| {
        hex_dist(AxialCoord::ORIGIN, *p) <= r as u32
    })
}

fn iso() -> impl Strategy<Value = PlaneIsometry> {
    (0..12usize, -3i64..=3, -3i64..=3).prop_map(|(m, a, b)| PlaneIsometry::new(point_group()[m], AxialCoord::new(a, b)).unwrap())
}

fn v(p: AxialCoord) -> VertexId {
    plane().vertex_at(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn distance_matches_closed_form(p in cell(R as i64), q in cell(R as i64)) {
        prop_assert_eq!(lattice_distance(p, q), hex_dist(p, q));
        prop_assert_eq!(distance(plane(), v(p), v(q), u32::MAX).unwrap(), hex_dist(p, q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, ..ProptestConfig::default() })]

    #[test]
    fn triangle_inequality(p in cell(6), q in cell(6), r in cell(6)) {
        let c = plane();
        let d = |a, b| distance(c, v(a), v(b), u32::MAX).unwrap();
        prop_assert!(d(p, r) <= d(p, q) + d(q, r));
    }

    #[test]
    fn intervals_are_symmetric_and_exact(p in cell(6), q in cell(6)) {
        let c = plane();
        let mut a = interval(c, v(p), v(q)).unwrap();
        let mut b = interval(c, v(q), v(p)).unwrap();
        a.sort();
        b.sort();
        prop_assert_eq!(&a, &b);
        let n = hex_dist(p, q);
        let want: Vec<VertexId> = c.vertices().filter(|&u| hex_dist(p, coord(c, u)) + hex_dist(coord(c, u), q) == n).collect();
        prop_assert_eq!(a, want);
    }

    #[test]
    fn directed_geodesics_are_equivariant(p in cell(5), q in cell(5), h in iso()) {
        let c = plane();
        prop_assume!(p != q);
        let g = directed_geodesic(c, v(p), v(q)).unwrap();
        let moved = directed_geodesic(c, v(h.apply(p)), v(h.apply(q))).unwrap();
        for (s, t) in g.simplices.iter().zip(&moved.simplices) {
            let mut img: Vec<AxialCoord> = s.vertices().iter().map(|&u| h.apply(coord(c, u))).collect();
            let mut got: Vec<AxialCoord> = t.vertices().iter().map(|&u| coord(c, u)).collect();
            img.sort();
            got.sort();
            prop_assert_eq!(img, got);
        }
    }

    #[test]
    fn every_selection_is_a_geodesic(p in cell(6), q in cell(6), picks in prop::collection::vec(0usize..3, 13)) {
        let c = plane();
        prop_assume!(p != q);
        let g = directed_geodesic(c, v(p), v(q)).unwrap();
        let path: Vec<VertexId> = g.simplices.iter().zip(&picks).map(|(s, &k)| s.vertices()[k % s.len()]).collect();
        prop_assert!(Geodesic(path).is_geodesic(c));
    }

    #[test]
    fn layers_mirror(p in cell(6), q in cell(6)) {
        let c = plane();
        prop_assume!(p != q);
        let f = layers(c, v(p), v(q)).unwrap();
        let b = layers(c, v(q), v(p)).unwrap();
        let n = f.n as usize;
        for l in &f.layers {
            let mut mine = l.vertices.clone();
            let mut other = b.layers.iter().find(|m| m.index as usize == n - l.index as usize).unwrap().vertices.clone();
            mine.sort();
            other.sort();
            prop_assert_eq!(mine, other);
        }
    }

    #[test]
    fn euclidean_geodesics_are_equivariant(p in cell(5), q in cell(5), h in iso()) {
        let c = plane();
        prop_assume!(p != q);
        let e = euclidean_geodesic(c, v(p), v(q)).unwrap();
        let moved = euclidean_geodesic(c, v(h.apply(p)), v(h.apply(q))).unwrap();
        for (s, t) in e.simplices.iter().zip(&moved.simplices) {
            let mut img: Vec<AxialCoord> = s.vertices().iter().map(|&u| h.apply(coord(c, u))).collect();
            let mut got: Vec<AxialCoord> = t.vertices().iter().map(|&u| coord(c, u)).collect();
            img.sort();
            got.sort();
            prop_assert_eq!(img, got);
        }
    }

    #[test]
    fn sub_geodesics_are_no_worse(p in cell(5), q in cell(5), cut in 0usize..4) {
        let c = plane();
        prop_assume!(hex_dist(p, q) >= 4);
        let g = select_vertex_geodesic(c, &euclidean_geodesic(c, v(p), v(q)).unwrap()).unwrap();
        let whole = goodness_constant(c, &g).unwrap();
        let part = Geodesic(g.vertices()[cut..].to_vec());
        prop_assert!(goodness_constant(c, &part).unwrap().constant <= whole.constant);
    }

    #[test]
    fn goodness_by_definition(p in cell(4), q in cell(4)) {
        let c = plane();
        prop_assume!(p != q);
        let g = select_vertex_geodesic(c, &euclidean_geodesic(c, v(p), v(q)).unwrap()).unwrap();
        let vs = g.vertices();
        let mut worst = 0;
        for j in 0..vs.len() {
            for k in j + 1..vs.len() {
                let sub = euclidean_geodesic(c, vs[j], vs[k]).unwrap();
                for (i, &w) in vs.iter().enumerate().take(k + 1).skip(j) {
                    let d = bfs(c, w);
                    let far = sub.simplices[i - j].vertices().iter().map(|u| d[u.idx()]).max().unwrap();
                    worst = worst.max(far);
                }
            }
        }
        prop_assert_eq!(goodness_constant(c, &g).unwrap().constant, worst);
    }

    #[test]
    fn displacement_sets_grow(h in iso(), k in 0u32..8) {
        let c = plane();
        let h = Isometry::Plane(h);
        let small = displacement_set(c, &h, k).unwrap();
        let big = displacement_set(c, &h, k + 1).unwrap();
        prop_assert!(small.vertices.iter().all(|u| big.contains(*u)));
    }
}
