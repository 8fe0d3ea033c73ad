//! Euclidean geodesics, vertex selection and goodness measurements.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::cat0::{euclidean_diagonal, modified_disk, shortest_path, Diagonal, ModifiedDisk, PolyPath};
use crate::chardisk::{characteristic_disk, characteristic_map, CharDisk};
use crate::complex::{FlagComplex, Geodesic, Simplex, VertexId, UNSEEN};
use crate::directed::{layers_with, thick_intervals, LayerProfile, PairField, ThickInterval};
use crate::error::{Error, Result};

/// Bounds asserted by the goodness and contracting suites.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub c: f64,
    pub d: f64,
    /// Set when the values are below the proven floors on purpose.
    pub empirical: bool,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { c: 200.0, d: 600.0, empirical: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Endpoint,
    ThinSpan,
    Characteristic { j: u32, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EuclideanGeodesic {
    pub from: VertexId,
    pub to: VertexId,
    pub simplices: Vec<Simplex>,
    pub provenance: Vec<Provenance>,
}

impl EuclideanGeodesic {
    pub fn len(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.len() <= 1
    }
}

/// Everything computed on the way to one thick interval's diagonal.
#[derive(Clone, Debug)]
pub struct IntervalTrace {
    pub interval: ThickInterval,
    pub disk: CharDisk,
    pub modified: ModifiedDisk,
    pub alpha: PolyPath,
    pub diagonal: Diagonal,
}

/// A Euclidean geodesic with its intermediate constructions.
#[derive(Clone, Debug)]
pub struct EuclidTrace {
    pub profile: LayerProfile,
    pub intervals: Vec<IntervalTrace>,
    pub geodesic: EuclideanGeodesic,
}

/// Runs the full construction without the reversal check.
pub fn euclidean_trace(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<EuclidTrace> {
    let f = PairField::new(c, x, y)?;
    let profile = layers_with(c, &f, x, y)?;
    let n = profile.n as usize;
    let mut simplices: Vec<Option<Simplex>> = vec![None; n + 1];
    let mut provenance = vec![Provenance::ThinSpan; n + 1];
    let mut intervals = Vec::new();
    for iv in thick_intervals(&profile.layers)? {
        let disk = characteristic_disk(c, &profile, iv)?;
        let modified = modified_disk(&disk)?;
        let alpha = shortest_path(&modified.polygon, modified.start(), modified.end())?;
        let diagonal = euclidean_diagonal(&disk, &alpha)?;
        for (t, rho) in diagonal.rho.iter().enumerate() {
            let i = iv.j as usize + 1 + t;
            simplices[i] = Some(characteristic_map(c, &disk, rho)?);
            provenance[i] = Provenance::Characteristic { j: iv.j, k: iv.k };
        }
        intervals.push(IntervalTrace { interval: iv, disk, modified, alpha, diagonal });
    }
    let mut out = Vec::with_capacity(n + 1);
    for (i, slot) in simplices.into_iter().enumerate() {
        let l = &profile.layers[i];
        let s = if i == 0 {
            provenance[i] = Provenance::Endpoint;
            Simplex::vertex(x)
        } else if i == n {
            provenance[i] = Provenance::Endpoint;
            Simplex::vertex(y)
        } else if let Some(s) = slot {
            s
        } else {
            l.sigma.join(c, &l.tau).map_err(|_| Error::ConstructionFailed {
                step: i,
                reason: "thin layer simplices do not span".into(),
            })?
        };
        if !s.vertices().iter().all(|&v| f.in_layer(v, i as u32)) {
            return Err(Error::ConditionViolated { index: i, reason: format!("δ_{i} leaves its layer") });
        }
        out.push(s);
    }
    let geodesic = EuclideanGeodesic { from: x, to: y, simplices: out, provenance };
    Ok(EuclidTrace { profile, intervals, geodesic })
}

/// The Euclidean geodesic from `x` to `y`, without the reversal check.
pub fn build_euclidean(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<EuclideanGeodesic> {
    Ok(euclidean_trace(c, x, y)?.geodesic)
}

/// The Euclidean geodesic from `x` to `y`. Also builds it from `y` to `x`
/// and fails unless the two agree up to reversal.
pub fn euclidean_geodesic(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<EuclideanGeodesic> {
    let e = build_euclidean(c, x, y)?;
    let back = build_euclidean(c, y, x)?;
    check_reversal(&e, &back)?;
    Ok(e)
}

pub fn check_reversal(e: &EuclideanGeodesic, back: &EuclideanGeodesic) -> Result<()> {
    let n = e.len();
    for i in 0..=n {
        if e.simplices[i] != back.simplices[n - i] {
            return Err(Error::ConditionViolated {
                index: i,
                reason: format!("δ_{i} = {:?} but the reverse gives {:?}", e.simplices[i], back.simplices[n - i]),
            });
        }
    }
    Ok(())
}

/// A vertex geodesic through the simplices of `e`, least in vertex order.
///
/// All candidates lie in layers, so a sequence of picks is a geodesic as
/// soon as consecutive picks are adjacent. Backward reachability marks picks
/// that can still reach `y`; a greedy forward pass then takes the least.
pub fn select_vertex_geodesic(c: &FlagComplex, e: &EuclideanGeodesic) -> Result<Geodesic> {
    let n = e.len();
    let mut ok: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
    ok[n] = e.simplices[n].vertices().to_vec();
    for i in (0..n).rev() {
        ok[i] = e.simplices[i]
            .vertices()
            .iter()
            .copied()
            .filter(|&v| ok[i + 1].iter().any(|&w| c.adjacent(v, w)))
            .collect();
    }
    if ok[0].is_empty() {
        return Err(Error::NoSelection(format!("{:?} from {:?} to {:?}", e.simplices, e.from, e.to)));
    }
    let mut out = vec![ok[0][0]];
    for layer in ok.iter().skip(1) {
        let prev = out[out.len() - 1];
        let next = layer.iter().copied().find(|&w| c.adjacent(prev, w)).expect("reachability");
        out.push(next);
    }
    Ok(Geodesic(out))
}

/// Distances from each of `sources`, one BFS per source.
pub(crate) fn dist_rows(c: &FlagComplex, sources: &[VertexId]) -> Vec<Vec<u32>> {
    sources.iter().map(|&s| c.bfs(s, UNSEEN)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodnessWitness {
    pub j: usize,
    pub k: usize,
    pub i: usize,
    pub u: VertexId,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodnessReport {
    pub geodesic: Geodesic,
    /// Smallest `C'` for which the geodesic is `C'`-good.
    pub constant: u32,
    pub witness: Option<GoodnessWitness>,
    pub pairs: usize,
}

/// Measures the largest distance from `v_i` to `δ^{j,k}_{i-j}` over all
/// sub-pairs `j < k` of `g`.
pub fn goodness_constant(c: &FlagComplex, g: &Geodesic) -> Result<GoodnessReport> {
    let v = g.vertices();
    let rows = dist_rows(c, v);
    let pairs: Vec<(usize, usize)> = (0..v.len()).flat_map(|j| (j + 1..v.len()).map(move |k| (j, k))).collect();
    let per_pair: Vec<Result<(u32, GoodnessWitness)>> = pairs
        .par_iter()
        .map(|&(j, k)| {
            let e = build_euclidean(c, v[j], v[k])?;
            let mut best: Option<(u32, GoodnessWitness)> = None;
            for (t, s) in e.simplices.iter().enumerate() {
                let i = j + t;
                for &u in s.vertices() {
                    let d = rows[i][u.idx()];
                    if d == UNSEEN {
                        return Err(Error::Unreachable(u));
                    }
                    if best.as_ref().is_none_or(|b| d > b.0) {
                        best = Some((d, GoodnessWitness { j, k, i, u }));
                    }
                }
            }
            Ok(best.expect("a Euclidean geodesic has simplices"))
        })
        .collect();
    let mut best: Option<(u32, GoodnessWitness)> = None;
    for r in per_pair {
        let (d, w) = r?;
        if best.as_ref().is_none_or(|b| d > b.0) {
            best = Some((d, w));
        }
    }
    let (constant, witness) = match best {
        Some((d, w)) => (d, Some(w)),
        None => (0, None),
    };
    Ok(GoodnessReport { geodesic: g.clone(), constant, witness, pairs: pairs.len() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractWitness {
    pub c: String,
    pub n: usize,
    pub m: usize,
    pub lhs: u32,
    pub rhs: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractingReport {
    pub checks: usize,
    pub violations: usize,
    /// Largest `LHS - c·RHS` seen (for the doubling form, `LHS - d(v_0, w_0)`).
    pub max_slack: f64,
    pub bound: f64,
    pub witness: Option<ContractWitness>,
}

/// Checks `d(v_⌊cn⌋, w_⌊cm⌋) <= c·d(v_n, w_m) + D` for every prefix pair
/// `(n, m)` of two geodesics from a common origin.
pub fn verify_contracting(
    c: &FlagComplex,
    g1: &Geodesic,
    g2: &Geodesic,
    cs: &[Ratio<i64>],
    k: &Constants,
) -> Result<ContractingReport> {
    let (v, w) = (g1.vertices(), g2.vertices());
    if v.first() != w.first() {
        return Err(Error::PreconditionViolated("geodesics must share their origin".into()));
    }
    let rows = dist_rows(c, v);
    let d = |a: usize, b: usize| rows[a][w[b].idx()];
    let mut rep = ContractingReport { checks: 0, violations: 0, max_slack: f64::NEG_INFINITY, bound: k.d, witness: None };
    for &cc in cs {
        for n in 0..v.len() {
            for m in 0..w.len() {
                let cn = (cc * Ratio::from_integer(n as i64)).floor().to_integer() as usize;
                let cm = (cc * Ratio::from_integer(m as i64)).floor().to_integer() as usize;
                let (lhs, rhs) = (d(cn, cm), d(n, m));
                let slack = Ratio::from_integer(lhs as i64) - cc * Ratio::from_integer(rhs as i64);
                let slack = *slack.numer() as f64 / *slack.denom() as f64;
                rep.checks += 1;
                let wit = || ContractWitness { c: cc.to_string(), n, m, lhs, rhs };
                if slack > k.d {
                    rep.violations += 1;
                    if rep.violations == 1 {
                        rep.witness = Some(wit());
                    }
                }
                if slack > rep.max_slack {
                    rep.max_slack = slack;
                    if rep.violations == 0 {
                        rep.witness = Some(wit());
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Checks `d(v_i, w_i) <= d(v_0, w_0) + 2D + 1` along two geodesics.
pub fn verify_asymptotic(c: &FlagComplex, g1: &Geodesic, g2: &Geodesic, k: &Constants) -> Result<ContractingReport> {
    let (v, w) = (g1.vertices(), g2.vertices());
    let len = v.len().min(w.len());
    let rows = dist_rows(c, &v[..len]);
    let d0 = rows[0][w[0].idx()];
    let bound = d0 as f64 + 2.0 * k.d + 1.0;
    let mut rep = ContractingReport { checks: 0, violations: 0, max_slack: f64::NEG_INFINITY, bound, witness: None };
    for i in 0..len {
        let di = rows[i][w[i].idx()];
        rep.checks += 1;
        let slack = di as f64 - d0 as f64;
        if di as f64 > bound {
            rep.violations += 1;
        }
        if slack > rep.max_slack {
            rep.max_slack = slack;
            rep.witness = Some(ContractWitness { c: "1".into(), n: i, m: i, lhs: di, rhs: d0 });
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eplane::{window, AxialCoord};

    fn at(c: &FlagComplex, a: i64, b: i64) -> VertexId {
        c.vertex_at(AxialCoord::new(a, b)).unwrap()
    }

    fn coords(c: &FlagComplex, s: &Simplex) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = s.vertices().iter().map(|&u| c.coord(u).unwrap()).map(|p| (p.a, p.b)).collect();
        v.sort();
        v
    }

    #[test]
    fn hand_derived_instance() {
        let w = window(AxialCoord::ORIGIN, 8);
        let e = euclidean_geodesic(&w, at(&w, 0, 0), at(&w, 4, 2)).unwrap();
        let got: Vec<_> = e.simplices.iter().map(|s| coords(&w, s)).collect();
        assert_eq!(
            got,
            vec![
                vec![(0, 0)],
                vec![(0, 1), (1, 0)],
                vec![(1, 1), (2, 0)],
                vec![(2, 1)],
                vec![(2, 2), (3, 1)],
                vec![(3, 2), (4, 1)],
                vec![(4, 2)]
            ]
        );
        assert_eq!(e.provenance[3], Provenance::Characteristic { j: 2, k: 4 });
        let g = select_vertex_geodesic(&w, &e).unwrap();
        let got: Vec<_> = g.vertices().iter().map(|&v| w.coord(v).unwrap()).map(|p| (p.a, p.b)).collect();
        assert_eq!(got, vec![(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (4, 1), (4, 2)]);
        assert!(g.is_geodesic(&w));
    }

    #[test]
    fn collinear_and_diagonal_instances() {
        let w = window(AxialCoord::ORIGIN, 8);
        let e = euclidean_geodesic(&w, at(&w, 0, 0), at(&w, 3, 0)).unwrap();
        for (i, s) in e.simplices.iter().enumerate() {
            assert_eq!(coords(&w, s), vec![(i as i64, 0)]);
        }
        let e = euclidean_geodesic(&w, at(&w, 0, 0), at(&w, 2, 2)).unwrap();
        let sigma = crate::directed::directed_geodesic(&w, at(&w, 0, 0), at(&w, 2, 2)).unwrap();
        assert_eq!(e.simplices, sigma.simplices);
        let g = select_vertex_geodesic(&w, &e).unwrap();
        let got: Vec<_> = g.vertices().iter().map(|&v| w.coord(v).unwrap()).map(|p| (p.a, p.b)).collect();
        assert_eq!(got, vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]);
    }

    #[test]
    fn straight_line_is_zero_good() {
        let w = window(AxialCoord::ORIGIN, 12);
        let g = Geodesic((-5..=5).map(|a| at(&w, a, 0)).collect());
        let r = goodness_constant(&w, &g).unwrap();
        assert_eq!(r.constant, 0);
        assert_eq!(r.pairs, 55);
    }

    #[test]
    fn contracting_identity_case() {
        let w = window(AxialCoord::ORIGIN, 12);
        let g = Geodesic((0..=6).map(|a| at(&w, a, 0)).collect());
        let r = verify_contracting(&w, &g, &g, &[Ratio::new(1, 1)], &Constants::default()).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.max_slack, 0.0);
        let h = Geodesic((0..=6).map(|b| at(&w, 0, b)).collect());
        let r = verify_contracting(&w, &g, &h, &[Ratio::new(1, 2)], &Constants::default()).unwrap();
        assert_eq!(r.violations, 0);
        let r = verify_asymptotic(&w, &g, &h, &Constants::default()).unwrap();
        assert_eq!(r.max_slack, 6.0);
    }
}
