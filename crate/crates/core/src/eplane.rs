//! The equilateral triangulation of the plane.
//!
//! Vertices use axial coordinates `(a, b)`; the Cartesian embedding is
//! `(a + b/2, b·√3/2)`. Cartesian coordinates live in ℚ[√3] so that every
//! incidence and orientation decision is exact.
//!
//! The embedding is linear with positive determinant, so orientation signs
//! computed on rational axial coordinates agree with the Cartesian ones. The
//! polygon code relies on this to stay in plain rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::complex::FlagComplex;
use crate::error::{Error, Result};

pub type Q = Ratio<i128>;

/// Neighbour offsets in counterclockwise order starting at angle 0.
pub const OFFSETS: [AxialCoord; 6] = [
    AxialCoord { a: 1, b: 0 },
    AxialCoord { a: 0, b: 1 },
    AxialCoord { a: -1, b: 1 },
    AxialCoord { a: -1, b: 0 },
    AxialCoord { a: 0, b: -1 },
    AxialCoord { a: 1, b: -1 },
];

/// A lattice vertex. Ordered row-major: by `b`, then by `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AxialCoord {
    pub a: i64,
    pub b: i64,
}

impl AxialCoord {
    pub const ORIGIN: AxialCoord = AxialCoord { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        AxialCoord { a, b }
    }

    pub fn neighbors(self) -> [AxialCoord; 6] {
        OFFSETS.map(|o| self + o)
    }

    /// Lattice norm of this vector.
    pub fn norm(self) -> u32 {
        lattice_distance(AxialCoord::ORIGIN, self)
    }

    /// Axial cross product; positive iff `other` is counterclockwise of `self`.
    pub fn cross(self, other: AxialCoord) -> i64 {
        self.a * other.b - self.b * other.a
    }
}

impl Ord for AxialCoord {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.b, self.a).cmp(&(o.b, o.a))
    }
}

impl PartialOrd for AxialCoord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for AxialCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for AxialCoord {
    type Output = AxialCoord;
    fn add(self, o: Self) -> Self {
        AxialCoord::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for AxialCoord {
    type Output = AxialCoord;
    fn sub(self, o: Self) -> Self {
        AxialCoord::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for AxialCoord {
    type Output = AxialCoord;
    fn neg(self) -> Self {
        AxialCoord::new(-self.a, -self.b)
    }
}

impl Mul<AxialCoord> for i64 {
    type Output = AxialCoord;
    fn mul(self, v: AxialCoord) -> AxialCoord {
        AxialCoord::new(self * v.a, self * v.b)
    }
}

/// Closed-form graph distance in the lattice.
pub fn lattice_distance(u: AxialCoord, v: AxialCoord) -> u32 {
    let (p, q) = (v.a - u.a, v.b - u.b);
    let d = if (p >= 0) == (q >= 0) || p == 0 || q == 0 { (p + q).abs() } else { p.abs().max(q.abs()) };
    d as u32
}

/// The window of `𝔼` of lattice radius `radius` around `center`.
pub fn window(center: AxialCoord, radius: u32) -> FlagComplex {
    FlagComplex::materialize(center, radius, |p| p.neighbors().to_vec(), true)
}

/// `p + q·√3` with rational `p`, `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub p: Q,
    pub q: Q,
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}√3", self.p, self.q)
    }
}

impl ExactScalar {
    pub fn new(p: Q, q: Q) -> Self {
        ExactScalar { p, q }
    }

    pub fn rational(p: Q) -> Self {
        ExactScalar { p, q: Q::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Q::from_integer(n as i128))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn sqrt3() -> Self {
        ExactScalar { p: Q::zero(), q: Q::from_integer(1) }
    }

    pub fn signum(&self) -> i32 {
        let s = |x: &Q| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 };
        let (sp, sq) = (s(&self.p), s(&self.q));
        if sp == sq || sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        // opposite signs: compare p² against 3q²
        let d = self.p * self.p - Q::from_integer(3) * self.q * self.q;
        let sd = s(&d);
        if sp > 0 {
            sd
        } else {
            -sd
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Multiplicative inverse via the conjugate. `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let n = self.p * self.p - Q::from_integer(3) * self.q * self.q;
        if n.is_zero() {
            return None;
        }
        Some(ExactScalar { p: self.p / n, q: -self.q / n })
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.p) + q_to_f64(&self.q) * 3f64.sqrt()
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

impl Ord for ExactScalar {
    fn cmp(&self, o: &Self) -> Ordering {
        (*self - *o).signum().cmp(&0)
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for ExactScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ExactScalar { p: self.p + o.p, q: self.q + o.q }
    }
}

impl Sub for ExactScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ExactScalar { p: self.p - o.p, q: self.q - o.q }
    }
}

impl Neg for ExactScalar {
    type Output = Self;
    fn neg(self) -> Self {
        ExactScalar { p: -self.p, q: -self.q }
    }
}

impl Mul for ExactScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = Q::from_integer(3);
        ExactScalar { p: self.p * o.p + three * self.q * o.q, q: self.p * o.q + self.q * o.p }
    }
}

/// A Cartesian point with exact coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PlanePoint {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl PlanePoint {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        PlanePoint { x, y }
    }

    pub fn cross(self, o: PlanePoint) -> ExactScalar {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: PlanePoint) -> ExactScalar {
        self.x * o.x + self.y * o.y
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add for PlanePoint {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for PlanePoint {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }
}

/// Exact Cartesian image of a lattice vertex.
pub fn embed(v: AxialCoord) -> PlanePoint {
    embed_rat(RatPoint::from(v))
}

/// Exact Cartesian image of a rational axial point.
pub fn embed_rat(v: RatPoint) -> PlanePoint {
    let half = Q::new(1, 2);
    PlanePoint::new(ExactScalar::rational(v.a + v.b * half), ExactScalar::new(Q::zero(), v.b * half))
}

/// Sign of the turn `p -> q -> r`: `Greater` for counterclockwise.
pub fn orient(p: PlanePoint, q: PlanePoint, r: PlanePoint) -> Ordering {
    (q - p).cross(r - p).signum().cmp(&0)
}

/// A point with rational axial coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RatPoint {
    pub a: Q,
    pub b: Q,
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<AxialCoord> for RatPoint {
    fn from(v: AxialCoord) -> Self {
        RatPoint { a: Q::from_integer(v.a as i128), b: Q::from_integer(v.b as i128) }
    }
}

impl RatPoint {
    pub fn new(a: Q, b: Q) -> Self {
        RatPoint { a, b }
    }

    pub fn lerp(self, o: RatPoint, t: Q) -> RatPoint {
        RatPoint { a: self.a + (o.a - self.a) * t, b: self.b + (o.b - self.b) * t }
    }

    /// Cartesian coordinates in floating point.
    pub fn to_f64(self) -> (f64, f64) {
        let (a, b) = (q_to_f64(&self.a), q_to_f64(&self.b));
        (a + b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

/// Squared Euclidean length of a lattice vector, exact.
pub fn euclid_sq(v: AxialCoord) -> i64 {
    v.a * v.a + v.a * v.b + v.b * v.b
}

/// A straight line through `point` with direction `direction`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PlaneLine {
    pub point: PlanePoint,
    pub direction: PlanePoint,
}

impl PlaneLine {
    pub fn contains(&self, p: PlanePoint) -> bool {
        self.direction.cross(p - self.point).is_zero()
    }
}

/// Vertices of the layer `i` between `x` and `y`, computed in closed form.
pub fn layer_vertices(i: u32, x: AxialCoord, y: AxialCoord) -> Vec<AxialCoord> {
    let n = lattice_distance(x, y);
    if i > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let r = i as i64;
    for da in -r..=r {
        for db in -r..=r {
            let v = x + AxialCoord::new(da, db);
            if lattice_distance(x, v) == i && lattice_distance(v, y) == n - i {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

/// The straight line of the plane carrying layer `i` between `x` and `y`.
///
/// When `y - x` lies strictly between two neighbour offsets the layers run
/// along the side of the hexagonal sphere facing `y`. When `y - x` is a
/// multiple of an offset every layer is a single vertex and the line is the
/// Cartesian perpendicular to that offset.
pub fn layer_line(i: u32, x: AxialCoord, y: AxialCoord) -> Result<PlaneLine> {
    let verts = layer_vertices(i, x, y);
    let Some(&first) = verts.first() else { return Err(Error::EmptyLayer(i)) };
    let d = y - x;
    let direction = if d == AxialCoord::ORIGIN {
        embed(OFFSETS[1] - OFFSETS[0])
    } else {
        let k = (0..6)
            .find(|&k| {
                let (e, f) = (OFFSETS[k], OFFSETS[(k + 1) % 6]);
                e.cross(d) >= 0 && d.cross(f) > 0
            })
            .expect("offsets cover every direction");
        let (e, f) = (OFFSETS[k], OFFSETS[(k + 1) % 6]);
        if e.cross(d) == 0 {
            let p = embed(e);
            PlanePoint::new(-p.y, p.x)
        } else {
            embed(f - e)
        }
    };
    let line = PlaneLine { point: embed(first), direction };
    debug_assert!(verts.iter().all(|&v| line.contains(embed(v))));
    Ok(line)
}

/// A lattice-affine isometry `v -> M v + t` of the plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PlaneIsometry {
    pub m: [[i64; 2]; 2],
    pub t: AxialCoord,
}

const ROT60: [[i64; 2]; 2] = [[0, -1], [1, 1]];
const SWAP: [[i64; 2]; 2] = [[0, 1], [1, 0]];
const ID: [[i64; 2]; 2] = [[1, 0], [0, 1]];

fn mat_mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    r
}

fn mat_apply(m: [[i64; 2]; 2], v: AxialCoord) -> AxialCoord {
    AxialCoord::new(m[0][0] * v.a + m[0][1] * v.b, m[1][0] * v.a + m[1][1] * v.b)
}

/// The twelve linear parts allowed: rotations by multiples of 60° and
/// their compositions with the swap `(a, b) -> (b, a)`.
pub fn point_group() -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::with_capacity(12);
    let mut r = ID;
    for _ in 0..6 {
        out.push(r);
        out.push(mat_mul(r, SWAP));
        r = mat_mul(ROT60, r);
    }
    out
}

impl PlaneIsometry {
    pub fn new(m: [[i64; 2]; 2], t: AxialCoord) -> Result<Self> {
        if !point_group().contains(&m) {
            return Err(Error::PreconditionViolated(format!("{m:?} is not a lattice symmetry")));
        }
        Ok(PlaneIsometry { m, t })
    }

    pub fn identity() -> Self {
        PlaneIsometry { m: ID, t: AxialCoord::ORIGIN }
    }

    pub fn translate(a: i64, b: i64) -> Self {
        PlaneIsometry { m: ID, t: AxialCoord::new(a, b) }
    }

    /// `(u, v) -> (v + a, u + b)`.
    pub fn glide(a: i64, b: i64) -> Self {
        PlaneIsometry { m: SWAP, t: AxialCoord::new(a, b) }
    }

    /// Rotation by `k·60°` counterclockwise about the vertex `center`.
    pub fn rot60(k: i64, center: AxialCoord) -> Self {
        let mut m = ID;
        for _ in 0..k.rem_euclid(6) {
            m = mat_mul(ROT60, m);
        }
        PlaneIsometry { m, t: center - mat_apply(m, center) }
    }

    pub fn apply(&self, v: AxialCoord) -> AxialCoord {
        mat_apply(self.m, v) + self.t
    }

    pub fn apply_rat(&self, v: RatPoint) -> RatPoint {
        let m = self.m.map(|r| r.map(|x| Q::from_integer(x as i128)));
        RatPoint {
            a: m[0][0] * v.a + m[0][1] * v.b + Q::from_integer(self.t.a as i128),
            b: m[1][0] * v.a + m[1][1] * v.b + Q::from_integer(self.t.b as i128),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PlaneIsometry) -> PlaneIsometry {
        PlaneIsometry { m: mat_mul(self.m, other.m), t: mat_apply(self.m, other.t) + self.t }
    }

    pub fn inverse(&self) -> PlaneIsometry {
        // point-group matrices have determinant ±1
        let [[p, q], [r, s]] = self.m;
        let det = p * s - q * r;
        let inv = [[s * det, -q * det], [-r * det, p * det]];
        PlaneIsometry { m: inv, t: -mat_apply(inv, self.t) }
    }

    pub fn pow(&self, n: i64) -> PlaneIsometry {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut r = PlaneIsometry::identity();
        for _ in 0..n.unsigned_abs() {
            r = base.compose(&r);
        }
        r
    }

    pub fn is_translation(&self) -> bool {
        self.m == ID
    }

    /// `d(v, h·v)`.
    pub fn displacement(&self, v: AxialCoord) -> u32 {
        lattice_distance(v, self.apply(v))
    }

    /// Whether some point of the plane is fixed. A simplex is fixed setwise
    /// exactly when its barycentre is, so this decides ellipticity.
    pub fn has_fixed_point(&self) -> bool {
        // solve (I - M) p = t over the rationals
        let a = [[1 - self.m[0][0], -self.m[0][1]], [-self.m[1][0], 1 - self.m[1][1]]];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det != 0 {
            return true;
        }
        let t = self.t;
        if a == [[0, 0], [0, 0]] {
            return t == AxialCoord::ORIGIN;
        }
        // rank one: consistent iff t is parallel to a nonzero column
        let col = if a[0][0] != 0 || a[1][0] != 0 {
            AxialCoord::new(a[0][0], a[1][0])
        } else {
            AxialCoord::new(a[0][1], a[1][1])
        };
        col.cross(t) == 0
    }

    /// Minimum vertex displacement over the whole plane.
    pub fn translation_length(&self) -> u32 {
        if self.is_translation() {
            return self.t.norm();
        }
        // |(M - I)v + t| only beats |t| when v lies within 3|t| + 4 of the
        // origin: rotations move far points far, and reflections are
        // periodic along their axis with period at most 2.
        let r = 3 * self.t.norm() as i64 + 4;
        let mut best = self.t.norm();
        for a in -r..=r {
            for b in -r..=r {
                let v = AxialCoord::new(a, b);
                if v.norm() as i64 <= r {
                    best = best.min(self.displacement(v));
                }
            }
        }
        best
    }
}

impl fmt::Display for PlaneIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}] + {:?}", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1], self.t)
    }
}

/// Parses `translate(a,b)`, `glide(a,b)`, `rot60^k @ (a,b)`, `rot60^k` or
/// `identity`. Literals may be chained with `*`, the rightmost applied first.
pub fn parse_isometry(src: &str) -> Result<PlaneIsometry> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| Error::Parse { line: 0, msg: format!("{m} in isometry literal {src:?}") };
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let mut out = PlaneIsometry::identity();
    for part in s.split('*') {
        let h = if part == "identity" {
            PlaneIsometry::identity()
        } else if let Some(rest) = part.strip_prefix("translate") {
            let (a, b) = parse_pair(rest).ok_or_else(|| bad("bad pair"))?;
            PlaneIsometry::translate(a, b)
        } else if let Some(rest) = part.strip_prefix("glide") {
            let (a, b) = parse_pair(rest).ok_or_else(|| bad("bad pair"))?;
            PlaneIsometry::glide(a, b)
        } else if let Some(rest) = part.strip_prefix("rot60") {
            let (k, center) = match rest.split_once('@') {
                Some((k, c)) => (k, parse_pair(c).ok_or_else(|| bad("bad centre"))?),
                None => (rest, (0, 0)),
            };
            let k = match k {
                "" => 1,
                k => k.strip_prefix('^').and_then(|k| k.parse().ok()).ok_or_else(|| bad("bad exponent"))?,
            };
            PlaneIsometry::rot60(k, AxialCoord::new(center.0, center.1))
        } else {
            return Err(bad("unknown form"));
        };
        out = out.compose(&h);
    }
    Ok(out)
}

fn parse_pair(s: &str) -> Option<(i64, i64)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::distance;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn window_sizes() {
        let w1 = window(AxialCoord::ORIGIN, 1);
        assert_eq!((w1.len(), w1.edge_count()), (7, 12));
        assert_eq!(window(AxialCoord::ORIGIN, 2).len(), 19);
        let w0 = window(AxialCoord::ORIGIN, 0);
        assert_eq!((w0.len(), w0.edge_count()), (1, 0));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(lattice_distance(AxialCoord::ORIGIN, AxialCoord::new(3, 2)), 5);
        assert_eq!(lattice_distance(AxialCoord::ORIGIN, AxialCoord::new(2, -1)), 2);
        assert_eq!(lattice_distance(AxialCoord::new(4, -7), AxialCoord::new(4, -7)), 0);
    }

    #[test]
    fn closed_form_matches_bfs_exhaustively() {
        let w = window(AxialCoord::ORIGIN, 5);
        for u in w.vertices() {
            let d = w.bfs(u, 100);
            for v in w.vertices() {
                assert_eq!(d[v.idx()], lattice_distance(w.coord(u).unwrap(), w.coord(v).unwrap()));
            }
        }
        let o = w.vertex_at(AxialCoord::ORIGIN).unwrap();
        assert_eq!(distance(&w, o, w.vertex_at(AxialCoord::new(-3, 5)).unwrap(), 10).unwrap(), 5);
    }

    #[test]
    fn embedding() {
        assert_eq!(embed(AxialCoord::ORIGIN), PlanePoint::new(ExactScalar::zero(), ExactScalar::zero()));
        assert_eq!(embed(AxialCoord::new(1, 0)), PlanePoint::new(ExactScalar::int(1), ExactScalar::zero()));
        assert_eq!(
            embed(AxialCoord::new(0, 1)),
            PlanePoint::new(ExactScalar::rational(q(1, 2)), ExactScalar::new(Q::zero(), q(1, 2)))
        );
        for o in OFFSETS {
            let e = embed(o);
            assert_eq!(e.dot(e), ExactScalar::int(1));
        }
    }

    #[test]
    fn scalar_sign() {
        let s = |p, q2| ExactScalar::new(Q::from_integer(p), Q::from_integer(q2));
        assert_eq!(s(2, -1).signum(), 1); // 2 > √3
        assert_eq!(s(1, -1).signum(), -1);
        assert_eq!(s(-2, 1).signum(), -1);
        assert_eq!(s(0, 0).signum(), 0);
        let x = ExactScalar::new(q(3, 7), q(-5, 11));
        let one = x * x.recip().unwrap();
        assert_eq!(one, ExactScalar::int(1));
        assert!((x.to_f64() - (3.0 / 7.0 - 5.0 / 11.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(ExactScalar::sqrt3() * ExactScalar::sqrt3(), ExactScalar::int(3));
    }

    #[test]
    fn isometry_examples() {
        assert_eq!(PlaneIsometry::translate(1, 0).apply(AxialCoord::new(2, 3)), AxialCoord::new(3, 3));
        let g = PlaneIsometry::glide(1, 1);
        assert_eq!(g.apply(AxialCoord::ORIGIN), AxialCoord::new(1, 1));
        assert_eq!(g.compose(&g), PlaneIsometry::translate(2, 2));
        let r = PlaneIsometry::rot60(1, AxialCoord::ORIGIN);
        assert_eq!(r.apply(AxialCoord::new(1, 0)), AxialCoord::new(0, 1));
        assert_eq!(r.pow(6), PlaneIsometry::identity());
        let c = AxialCoord::new(2, -1);
        let rc = PlaneIsometry::rot60(2, c);
        assert_eq!(rc.apply(c), c);
        assert_eq!(rc.compose(&rc.inverse()), PlaneIsometry::identity());
        assert_eq!(point_group().len(), 12);
        for m in point_group() {
            let h = PlaneIsometry::new(m, AxialCoord::new(3, -2)).unwrap();
            let v = AxialCoord::new(-1, 4);
            for o in OFFSETS {
                assert_eq!(lattice_distance(h.apply(v), h.apply(v + o)), 1);
            }
            assert_eq!(h.inverse().apply(h.apply(v)), v);
        }
        assert!(PlaneIsometry::new([[1, 1], [0, 1]], AxialCoord::ORIGIN).is_err());
    }

    #[test]
    fn literals() {
        assert_eq!(parse_isometry("translate(1, -2)").unwrap(), PlaneIsometry::translate(1, -2));
        assert_eq!(parse_isometry("glide(1,1)").unwrap(), PlaneIsometry::glide(1, 1));
        assert_eq!(
            parse_isometry("rot60^2 @ (1,1)").unwrap(),
            PlaneIsometry::rot60(2, AxialCoord::new(1, 1))
        );
        assert_eq!(parse_isometry("rot60").unwrap(), PlaneIsometry::rot60(1, AxialCoord::ORIGIN));
        assert_eq!(
            parse_isometry("translate(1,0)*glide(0,0)").unwrap(),
            PlaneIsometry::translate(1, 0).compose(&PlaneIsometry::glide(0, 0))
        );
        assert!(parse_isometry("shear(1,1)").is_err());
        assert!(parse_isometry("translate(1)").is_err());
    }

    #[test]
    fn fixed_points_and_translation_length() {
        assert!(!PlaneIsometry::translate(1, 0).has_fixed_point());
        assert!(PlaneIsometry::identity().has_fixed_point());
        assert!(PlaneIsometry::rot60(1, AxialCoord::new(3, 3)).has_fixed_point());
        assert!(!PlaneIsometry::glide(1, 1).has_fixed_point());
        // a reflection across the diagonal axis through the origin
        assert!(PlaneIsometry::glide(0, 0).has_fixed_point());
        // swap followed by translation along the axis normal: still a reflection
        assert!(PlaneIsometry::glide(1, -1).has_fixed_point());
        assert_eq!(PlaneIsometry::translate(1, 0).translation_length(), 1);
        assert_eq!(PlaneIsometry::glide(1, 1).translation_length(), 2);
        assert_eq!(PlaneIsometry::translate(2, 2).translation_length(), 4);
    }

    #[test]
    fn layer_lines() {
        let (x, y) = (AxialCoord::ORIGIN, AxialCoord::new(4, 2));
        let l = layer_line(3, x, y).unwrap();
        assert!(l.contains(embed(AxialCoord::new(1, 2))));
        assert!(l.contains(embed(AxialCoord::new(3, 0))));
        assert!(!l.contains(embed(AxialCoord::new(2, 2))));
        let l0 = layer_line(0, x, y).unwrap();
        assert!(l0.contains(embed(x)));
        assert_eq!(l0.direction, l.direction);
        let yz = AxialCoord::new(5, 0);
        for i in 0..=5 {
            let l = layer_line(i, x, yz).unwrap();
            assert!(l.contains(embed(AxialCoord::new(i as i64, 0))));
            assert!(l.direction.dot(embed(AxialCoord::new(1, 0))).is_zero());
        }
        assert!(matches!(layer_line(7, x, y), Err(Error::EmptyLayer(7))));
    }

    #[test]
    fn orientation_agrees_with_axial_cross() {
        let pts = [(0, 0), (3, -1), (-2, 5), (1, 1), (4, 4), (-3, -3)].map(|(a, b)| AxialCoord::new(a, b));
        for &p in &pts {
            for &q2 in &pts {
                for &r in &pts {
                    let ax = (q2 - p).cross(r - p).cmp(&0);
                    assert_eq!(orient(embed(p), embed(q2), embed(r)), ax);
                }
            }
        }
    }
}
