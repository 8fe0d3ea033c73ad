//! Deterministic SVG figures of the geodesic pipeline on plane-backed
//! complexes. Coordinates are printed with six decimals.

use std::fmt::Write;

use crate::complex::{FlagComplex, Simplex, VertexId};
use crate::eplane::{point_group, AxialCoord, PlaneIsometry, RatPoint};
use crate::error::{Error, Result};
use crate::euclid::{euclidean_trace, select_vertex_geodesic, IntervalTrace};

const SCALE: f64 = 40.0;
const PAD: f64 = 24.0;

fn num(v: f64) -> String {
    let v = if v.abs() < 5e-7 { 0.0 } else { v };
    format!("{v:.6}")
}

struct Canvas {
    min: (f64, f64),
    max: (f64, f64),
    body: String,
}

impl Canvas {
    fn new(points: &[(f64, f64)]) -> Self {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        Canvas { min, max, body: String::new() }
    }

    /// Plane coordinates to pixels, with `y` pointing down.
    fn px(&self, p: (f64, f64)) -> (String, String) {
        (num(PAD + (p.0 - self.min.0) * SCALE), num(PAD + (self.max.1 - p.1) * SCALE))
    }

    fn line(&mut self, p: (f64, f64), q: (f64, f64), style: &str) {
        let ((x1, y1), (x2, y2)) = (self.px(p), self.px(q));
        writeln!(self.body, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#).unwrap();
    }

    fn dot(&mut self, p: (f64, f64), r: f64, style: &str) {
        let (x, y) = self.px(p);
        writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="{}" {style}/>"#, num(r)).unwrap();
    }

    fn poly(&mut self, tag: &str, pts: &[(f64, f64)], style: &str) {
        let s: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x},{y}")
            })
            .collect();
        writeln!(self.body, r#"<{tag} points="{}" {style}/>"#, s.join(" ")).unwrap();
    }

    fn open(&mut self, id: &str) {
        writeln!(self.body, r#"<g id="{id}">"#).unwrap();
    }

    fn close(&mut self) {
        self.body.push_str("</g>\n");
    }

    fn finish(self) -> String {
        let w = num(2.0 * PAD + (self.max.0 - self.min.0) * SCALE);
        let h = num(2.0 * PAD + (self.max.1 - self.min.1) * SCALE);
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn cart(p: AxialCoord) -> (f64, f64) {
    RatPoint::from(p).to_f64()
}

/// The lattice symmetry carrying developed disk cells onto their images.
fn placement(c: &FlagComplex, t: &IntervalTrace) -> Option<PlaneIsometry> {
    let surface = t.disk.surfaces.first()?;
    let img: Vec<AxialCoord> = surface.iter().map(|&v| c.coord(v)).collect::<Option<_>>()?;
    point_group().into_iter().find_map(|m| {
        let lin = PlaneIsometry::new(m, AxialCoord::ORIGIN).ok()?;
        let h = PlaneIsometry::new(m, img[0] - lin.apply(t.disk.cells[0])).ok()?;
        t.disk.cells.iter().zip(&img).all(|(&p, &q)| h.apply(p) == q).then_some(h)
    })
}

fn barycenter(c: &FlagComplex, s: &Simplex) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = s.vertices().iter().map(|&v| cart(c.coord(v).expect("plane-backed"))).collect();
    let n = pts.len() as f64;
    (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n)
}

/// Draws the window around the interval, both directed geodesics, the layers
/// coloured by thickness, every disk with its shrunken polygon and path, and
/// the Euclidean geodesic with its selected vertex geodesic.
pub fn render_pipeline(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<String> {
    if !c.is_plane_backed() {
        return Err(Error::NotPlaneBacked);
    }
    let trace = euclidean_trace(c, x, y)?;
    let p = &trace.profile;
    let dx = c.bfs(x, p.n + 2);
    let dy = c.bfs(y, p.n + 2);
    let region: Vec<VertexId> = c.vertices().filter(|v| dx[v.idx()].saturating_add(dy[v.idx()]) <= p.n + 2).collect();
    let pts: Vec<(f64, f64)> = region.iter().map(|&v| cart(c.coord(v).expect("plane-backed"))).collect();
    let mut cv = Canvas::new(&pts);

    cv.open("lattice");
    for (i, &u) in region.iter().enumerate() {
        for &w in &region[i + 1..] {
            if c.adjacent(u, w) {
                cv.line(cart(c.coord(u).unwrap()), cart(c.coord(w).unwrap()), r##"stroke="#d0d0d0" stroke-width="1""##);
            }
        }
    }
    cv.close();

    cv.open("layers");
    for l in &p.layers {
        let colour = if l.thin { "#4a7ab5" } else { "#d9622b" };
        for &v in &l.vertices {
            cv.dot(cart(c.coord(v).unwrap()), 3.0, &format!(r#"fill="{colour}""#));
        }
    }
    cv.close();

    for (id, g, colour) in [("sigma", &p.sigma, "#2b8c3e"), ("tau", &p.tau, "#8c2b7a")] {
        cv.open(id);
        let line: Vec<(f64, f64)> = g.simplices.iter().map(|s| barycenter(c, s)).collect();
        cv.poly("polyline", &line, &format!(r#"fill="none" stroke="{colour}" stroke-width="2""#));
        cv.close();
    }

    cv.open("disks");
    for t in &trace.intervals {
        let Some(h) = placement(c, t) else { continue };
        let rim: Vec<(f64, f64)> = t.disk.boundary().into_iter().map(|q| cart(h.apply(q))).collect();
        cv.poly("polygon", &rim, r##"fill="#f3e3c3" fill-opacity="0.5" stroke="#b08a3e" stroke-width="1.5""##);
        let shrunk: Vec<(f64, f64)> = t.modified.polygon.pts.iter().map(|&q| h.apply_rat(q).to_f64()).collect();
        cv.poly("polygon", &shrunk, r##"fill="none" stroke="#b08a3e" stroke-dasharray="4 3""##);
        let alpha: Vec<(f64, f64)> = t.alpha.points.iter().map(|&q| h.apply_rat(q).to_f64()).collect();
        cv.poly("polyline", &alpha, r##"fill="none" stroke="#c02020" stroke-width="1.5""##);
    }
    cv.close();

    cv.open("delta");
    for s in &trace.geodesic.simplices {
        let vs: Vec<(f64, f64)> = s.vertices().iter().map(|&v| cart(c.coord(v).unwrap())).collect();
        if vs.len() > 1 {
            cv.poly("polygon", &vs, r##"fill="none" stroke="#111111" stroke-width="3""##);
        }
        for q in vs {
            cv.dot(q, 4.5, r##"fill="none" stroke="#111111""##);
        }
    }
    let g = select_vertex_geodesic(c, &trace.geodesic)?;
    let line: Vec<(f64, f64)> = g.vertices().iter().map(|&v| cart(c.coord(v).unwrap())).collect();
    cv.poly("polyline", &line, r##"fill="none" stroke="#111111" stroke-dasharray="2 2""##);
    cv.close();
    Ok(cv.finish())
}
