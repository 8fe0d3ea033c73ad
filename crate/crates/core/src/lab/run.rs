//! Executes scenario tasks and assembles the report.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{FlagComplex, Geodesic, VertexId, UNSEEN};
use crate::directed::directed_geodesic;
use crate::eplane::{AxialCoord, PlaneIsometry};
use crate::error::{Error, Result};
use crate::euclid::{
    build_euclidean, check_reversal, euclidean_trace, goodness_constant, select_vertex_geodesic, verify_asymptotic,
    verify_contracting, Constants,
};
use crate::isometry::{
    central_good_geodesic, check_min_proximity, convergence_diagnostic, displacement_set, invariant_geodesic_on_plane,
    line_deviation_sq, translation_length, Isometry,
};
use crate::lab::report::{Assertion, Report, Status, TaskRecord, SCHEMA};
use crate::lab::scenario::{parse_fraction, ComplexSpec, Scenario, TaskKind, TaskSpec};
use crate::lab::svg::render_pipeline;
use crate::lab::tree::{extendability_study, plane_extendability};
use crate::lab::{label, label_simplex, sample_pairs};
use crate::samples;

/// Exit codes of `syslab run`.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    /// Directory for the report and figures, overriding the scenario.
    pub out: Option<PathBuf>,
    /// Run only figure tasks and render every pipeline task as well.
    pub figures_only: bool,
}

struct Ctx<'a> {
    c: &'a FlagComplex,
    s: &'a Scenario,
    k: Constants,
    tol: f64,
    seed: u64,
    figures: PathBuf,
}

struct Outcome {
    outputs: Value,
    assertions: Vec<Assertion>,
}

impl Ctx<'_> {
    fn rng(&self, task: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (task as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn centre(&self) -> VertexId {
        match &self.s.complex {
            ComplexSpec::Eplane { center, .. } => {
                self.c.vertex_at(AxialCoord::new(center[0], center[1])).expect("window contains its centre")
            }
            _ => VertexId(0),
        }
    }

    fn figure_path(&self, file: &Path) -> PathBuf {
        if file.is_absolute() {
            file.to_path_buf()
        } else {
            self.figures.join(file)
        }
    }
}

fn selected(c: &FlagComplex, x: VertexId, y: VertexId) -> Result<Geodesic> {
    select_vertex_geodesic(c, &build_euclidean(c, x, y)?)
}

fn geodesic_pipeline(cx: &Ctx, x: VertexId, y: VertexId) -> Result<Outcome> {
    let c = cx.c;
    let t = euclidean_trace(c, x, y)?;
    let back = build_euclidean(c, y, x)?;
    let symmetric = check_reversal(&t.geodesic, &back);
    let g = select_vertex_geodesic(c, &t.geodesic)?;
    let good = goodness_constant(c, &g)?;
    let intervals: Vec<Value> = t
        .intervals
        .iter()
        .map(|iv| {
            json!({
                "j": iv.interval.j,
                "k": iv.interval.k,
                "rows": iv.disk.rows,
                "triangles": iv.disk.triangle_count(),
                "surfaces": iv.disk.surfaces.len(),
                "alpha_length": iv.alpha.length,
                "rho": iv.diagonal.rho.iter().map(|r| r.iter().map(|p| json!([p.a, p.b])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut assertions = vec![Assertion::at_most(
        "reversal symmetry",
        "exact",
        symmetric.is_err() as u32 as f64,
        0.0,
        0.0,
    )];
    if let Err(e) = symmetric {
        assertions[0] = assertions[0].clone().with_witness(e.to_string());
    }
    assertions.push(
        Assertion::at_most("goodness of the selected geodesic", "C", good.constant as f64, cx.k.c, cx.tol)
            .with_witness(&good.witness),
    );
    Ok(Outcome {
        outputs: json!({
            "n": t.profile.n,
            "sigma": t.profile.sigma.simplices.iter().map(|s| label_simplex(c, s)).collect::<Vec<_>>(),
            "tau": t.profile.tau.simplices.iter().map(|s| label_simplex(c, s)).collect::<Vec<_>>(),
            "thickness": t.profile.thickness(),
            "thick_intervals": intervals,
            "delta": t.geodesic.simplices.iter().map(|s| label_simplex(c, s)).collect::<Vec<_>>(),
            "provenance": t.geodesic.provenance,
            "selected": g.vertices().iter().map(|&v| label(c, v)).collect::<Vec<_>>(),
            "goodness": good.constant,
        }),
        assertions,
    })
}

fn pair_sweep(cx: &Ctx, task: usize, count: usize, max_d: u32) -> Result<Outcome> {
    let c = cx.c;
    let pool: Vec<VertexId> = c.vertices().collect();
    let pairs = sample_pairs(c, &pool, count, 1, max_d, &mut cx.rng(task));
    let results: Vec<Result<(u32, Value)>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let g = selected(c, x, y)?;
            let r = goodness_constant(c, &g)?;
            let w = r.witness.map(|w| json!({"x": label(c, x), "y": label(c, y), "j": w.j, "k": w.k, "i": w.i, "u": label(c, w.u)}));
            Ok((r.constant, w.unwrap_or(Value::Null)))
        })
        .collect();
    let mut best: (u32, Value) = (0, Value::Null);
    let mut hist = std::collections::BTreeMap::<u32, usize>::new();
    for r in results {
        let (cst, w) = r?;
        *hist.entry(cst).or_default() += 1;
        if cst > best.0 || best.1.is_null() {
            best = (cst.max(best.0), w);
        }
    }
    Ok(Outcome {
        outputs: json!({"pairs": pairs.len(), "max_goodness": best.0, "histogram": hist}),
        assertions: vec![Assertion::at_most("goodness over sampled pairs", "C", best.0 as f64, cx.k.c, cx.tol)
            .with_witness(best.1)],
    })
}

fn staircase_sweep(cx: &Ctx, dir: [i64; 2], length: usize) -> Result<Outcome> {
    let c = cx.c;
    let h = PlaneIsometry::translate(dir[0], dir[1]);
    let o = c.coord(cx.centre()).ok_or(Error::NotPlaneBacked)?;
    // centre the segment on the window centre
    let per = crate::eplane::lattice_distance(AxialCoord::ORIGIN, h.t).max(1) as i64;
    let start = o - (length as i64 / (2 * per)) * h.t;
    let path = invariant_geodesic_on_plane(&h, start, length)?;
    let g = Geodesic(
        path.iter()
            .map(|&p| c.vertex_at(p).ok_or_else(|| Error::BoundaryUnsafe(format!("{p:?} outside the window"))))
            .collect::<Result<_>>()?,
    );
    let dev = line_deviation_sq(&path, start, h.t);
    let k_dist = (*dev.numer() as f64 / *dev.denom() as f64).sqrt();
    let bound = 4.0 * k_dist / 3f64.sqrt() + 1.0;
    let r = goodness_constant(c, &g)?;
    Ok(Outcome {
        outputs: json!({
            "vertices": path.iter().map(|p| json!([p.a, p.b])).collect::<Vec<_>>(),
            "line_distance_sq": dev.to_string(),
            "goodness": r.constant,
            "pairs": r.pairs,
        }),
        assertions: vec![Assertion::at_most("staircase goodness", "4K/√3+1", r.constant as f64, bound, cx.tol)
            .with_witness(&r.witness)],
    })
}

fn embedding_sweep(cx: &Ctx, task: usize, name: &str, count: usize, max_d: u32) -> Result<Outcome> {
    let f = samples::flat_embeddings()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("no bundled flat embedding {name:?}") })?;
    let pool: Vec<VertexId> = f.flat.vertices().collect();
    let pairs = sample_pairs(&f.flat, &pool, count, 1, max_d, &mut cx.rng(task));
    let rows: Vec<Result<(u32, u32, Value)>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let g = selected(&f.flat, x, y)?;
            let flat = goodness_constant(&f.flat, &g)?.constant;
            let lifted = Geodesic(g.vertices().iter().map(|&v| f.image(v)).collect());
            let amb = goodness_constant(&f.ambient, &lifted)?.constant;
            Ok((flat, amb, json!({"x": label(&f.flat, x), "y": label(&f.flat, y), "flat": flat, "ambient": amb})))
        })
        .collect();
    let mut worst: Option<(i64, Value)> = None;
    let mut max_flat = 0;
    for r in rows {
        let (fl, amb, w) = r?;
        max_flat = max_flat.max(fl);
        let excess = amb as i64 - fl as i64;
        if worst.as_ref().is_none_or(|b| excess > b.0) {
            worst = Some((excess, w));
        }
    }
    let (excess, w) = worst.unwrap_or((0, Value::Null));
    Ok(Outcome {
        outputs: json!({"embedding": name, "pairs": pairs.len(), "max_flat_goodness": max_flat, "max_excess": excess}),
        assertions: vec![Assertion::at_most("ambient goodness over flat goodness", "C'+10", excess as f64, 10.0, cx.tol)
            .with_witness(w)],
    })
}

#[allow(clippy::too_many_arguments)]
fn displacement_study(
    cx: &Ctx,
    task: usize,
    iso: &str,
    count: usize,
    max_d: u32,
    ks: &[u32],
    axis_n: u32,
    stride: u32,
) -> Result<Outcome> {
    let c = cx.c;
    let p = cx.s.isometry(iso)?;
    let h = Isometry::Plane(p);
    let l = translation_length(c, &h)?;
    let min = displacement_set(c, &h, l)?;
    let mut sizes = Vec::new();
    let mut monotone = 0.0;
    let mut prev = 0;
    let mut ks: Vec<u32> = ks.to_vec();
    ks.sort_unstable();
    for &k in &ks {
        let n = displacement_set(c, &h, k)?.vertices.len();
        if n < prev {
            monotone = 1.0;
        }
        prev = n;
        sizes.push(json!({"k": k, "size": n}));
    }
    let pairs = sample_pairs(c, &min.vertices, count, 0, max_d, &mut cx.rng(task));
    let prox = check_min_proximity(c, &h, &pairs)?;
    // directed geodesics between displaced endpoints travel together
    let mut ft_worst = (0i64, Value::Null);
    for &(x, y) in &pairs {
        let m = h.displacement(c, x)?.max(h.displacement(c, y)?);
        let dg = directed_geodesic(c, x, y)?;
        for s in &dg.simplices {
            for &v in s.vertices() {
                let excess = h.displacement(c, v)? as i64 - (3 * m + 1) as i64;
                if ft_worst.1.is_null() || excess > ft_worst.0 {
                    ft_worst = (excess, json!({"x": label(c, x), "y": label(c, y), "s": label(c, v)}));
                }
            }
        }
    }
    let mut assertions = vec![
        Assertion::at_most("displacement sets grow with K", "monotone", monotone, 0.0, 0.0),
        Assertion::at_most("displacement along Min(h) geodesics", "9L+6", prox.max_displacement as f64, prox.bound as f64, cx.tol)
            .with_witness(prox.witness.map(|(i, v)| json!({"pair": i, "vertex": label(c, v)}))),
        Assertion::at_most("fellow travelling of directed geodesics", "3max+1", ft_worst.0 as f64, 0.0, cx.tol)
            .with_witness(ft_worst.1),
    ];
    let mut axis = Value::Null;
    if axis_n > 0 {
        let o = cx.centre();
        let dist = c.bfs(o, UNSEEN);
        let x0 = *min
            .vertices
            .iter()
            .min_by_key(|v| (dist[v.idx()], **v))
            .ok_or_else(|| Error::PreconditionViolated("Min(h) misses the window".into()))?;
        let a = central_good_geodesic(c, &h, x0, axis_n, stride)?;
        let conv = convergence_diagnostic(c, &h, x0, &a, axis_n)?;
        assertions.push(Assertion::at_most("axis segment displacement", "9L+6", a.k as f64, (9 * l + 6) as f64, cx.tol));
        assertions.push(Assertion::at_most(
            "orbit stays near the axis",
            "M+R",
            conv.distances.iter().copied().max().unwrap_or(0) as f64,
            (conv.offset + conv.radius) as f64,
            cx.tol,
        ));
        axis = json!({
            "start": label(c, x0),
            "segment": a.vertices.iter().map(|&v| label(c, v)).collect::<Vec<_>>(),
            "k": a.k,
            "family": a.family,
            "orbit_distances": conv.distances,
            "offset": conv.offset,
            "radius": conv.radius,
        });
    }
    Ok(Outcome {
        outputs: json!({
            "isometry": p.to_string(),
            "translation_length": l,
            "min_size": min.vertices.len(),
            "window_size": min.scanned,
            "displacement_sets": sizes,
            "pairs": pairs.len(),
            "max_displacement": prox.max_displacement,
            "per_pair": prox.per_pair,
            "axis": axis,
        }),
        assertions,
    })
}

fn contracting_suite(cx: &Ctx, task: usize, count: usize, length: u32, cs: &[String], asym: usize) -> Result<Outcome> {
    let c = cx.c;
    let o = cx.centre();
    let cs: Vec<_> = cs.iter().map(|s| parse_fraction(s).expect("validated")).collect();
    let sphere = c.sphere(o, length);
    if sphere.is_empty() {
        return Err(Error::PreconditionViolated(format!("no vertex at distance {length} from the origin")));
    }
    let mut rng = cx.rng(task);
    use rand::seq::SliceRandom;
    let ends: Vec<(VertexId, VertexId)> =
        (0..count).map(|_| (*sphere.choose(&mut rng).unwrap(), *sphere.choose(&mut rng).unwrap())).collect();
    let reps: Vec<Result<_>> = ends
        .par_iter()
        .map(|&(a, b)| verify_contracting(c, &selected(c, o, a)?, &selected(c, o, b)?, &cs, &cx.k))
        .collect();
    let (mut checks, mut violations, mut slack, mut witness) = (0, 0, f64::NEG_INFINITY, None);
    for r in reps {
        let r = r?;
        checks += r.checks;
        violations += r.violations;
        if r.max_slack > slack || (r.violations > 0 && violations == r.violations) {
            slack = slack.max(r.max_slack);
            witness = r.witness;
        }
    }
    let mut assertions = vec![Assertion::at_most("contracting inequality", "D", slack, cx.k.d, cx.tol).with_witness(&witness)];
    let mut asym_out = Value::Null;
    if asym > 0 {
        let ball = c.ball(o, length);
        let steps: Vec<AxialCoord> = (1..=3).flat_map(|r| crate::eplane::OFFSETS.iter().map(move |&d| r * d)).collect();
        let (mut worst, mut checks2, mut viol2) = (f64::NEG_INFINITY, 0, 0);
        let mut built = 0;
        for _ in 0..asym {
            let y = *ball.choose(&mut rng).unwrap();
            let t = *steps.choose(&mut rng).unwrap();
            let g = selected(c, o, y)?;
            let shifted: Option<Vec<VertexId>> = g.vertices().iter().map(|&v| c.coord(v).and_then(|p| c.vertex_at(p + t))).collect();
            let Some(shifted) = shifted else { continue };
            let r = verify_asymptotic(c, &g, &Geodesic(shifted), &cx.k)?;
            built += 1;
            checks2 += r.checks;
            viol2 += r.violations;
            worst = worst.max(r.max_slack);
        }
        assertions.push(Assertion::at_most("asymptotic pairs stay close", "2D+1", worst, 2.0 * cx.k.d + 1.0, cx.tol));
        asym_out = json!({"pairs": built, "checks": checks2, "violations": viol2, "max_growth": worst});
    }
    Ok(Outcome {
        outputs: json!({"pairs": ends.len(), "checks": checks, "violations": violations, "max_slack": slack, "asymptotic": asym_out}),
        assertions,
    })
}

fn extendability(cx: &Ctx, task: usize, depth: u32, control_pairs: usize, radius: u32) -> Result<Outcome> {
    let table = extendability_study(depth);
    let wrong = table.tips.iter().filter(|r| r.e != r.n).count();
    let w = crate::eplane::window(AxialCoord::ORIGIN, radius);
    let pool: Vec<VertexId> = w.vertices().collect();
    let pairs = sample_pairs(&w, &pool, control_pairs, 1, 2 * radius, &mut cx.rng(task));
    let mut control_max = 0;
    for &(x, y) in &pairs {
        control_max = control_max.max(plane_extendability(w.coord(x).unwrap(), w.coord(y).unwrap(), radius)?);
    }
    Ok(Outcome {
        outputs: json!({"tips": table.tips, "spine": table.spine, "control_pairs": pairs.len(), "control_max": control_max}),
        assertions: vec![
            Assertion::at_most("E(0, tip_n) = n", "exact", wrong as f64, 0.0, 0.0),
            Assertion::at_most("plane control", "1", control_max as f64, 1.0, 0.0),
        ],
    })
}

fn figure(cx: &Ctx, x: VertexId, y: VertexId, file: &Path) -> Result<Outcome> {
    let svg = render_pipeline(cx.c, x, y)?;
    let path = cx.figure_path(file);
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&path, &svg)?;
    Ok(Outcome { outputs: json!({"file": file.display().to_string(), "bytes": svg.len()}), assertions: Vec::new() })
}

fn run_task(cx: &Ctx, idx: usize, t: &TaskSpec, figures_only: bool) -> Result<Option<Outcome>> {
    let c = cx.c;
    let out = match &t.kind {
        TaskKind::FigureRender { x, y, file } => figure(cx, x.resolve(c)?, y.resolve(c)?, file)?,
        TaskKind::GeodesicPipeline { x, y } if figures_only => {
            figure(cx, x.resolve(c)?, y.resolve(c)?, Path::new(&format!("{}.svg", t.name)))?
        }
        _ if figures_only => return Ok(None),
        TaskKind::GeodesicPipeline { x, y } => geodesic_pipeline(cx, x.resolve(c)?, y.resolve(c)?)?,
        TaskKind::GoodnessSweep { staircase: Some(dir), length, .. } => staircase_sweep(cx, *dir, *length)?,
        TaskKind::GoodnessSweep { embedding: Some(name), pairs, max_distance, .. } => {
            embedding_sweep(cx, idx, name, *pairs, *max_distance)?
        }
        TaskKind::GoodnessSweep { pairs, max_distance, .. } => pair_sweep(cx, idx, *pairs, *max_distance)?,
        TaskKind::DisplacementStudy { isometry, pairs, max_distance, ks, axis_n, stride } => {
            displacement_study(cx, idx, isometry, *pairs, *max_distance, ks, *axis_n, *stride)?
        }
        TaskKind::ContractingSuite { pairs, length, cs, asymptotic } => {
            contracting_suite(cx, idx, *pairs, *length, cs, *asymptotic)?
        }
        TaskKind::ExtendabilityStudy { depth, control_pairs, control_radius } => {
            extendability(cx, idx, *depth, *control_pairs, *control_radius)?
        }
    };
    Ok(Some(out))
}

/// Runs every task in order. Input problems (unreadable complex, bad
/// vertex references) surface as errors; construction and assertion
/// failures are recorded in the report.
pub fn run(s: &Scenario, opts: &RunOptions) -> Result<Report> {
    let c = s.build_complex()?;
    let k = s.constants()?;
    let seed = opts.seed.unwrap_or(s.seed);
    let figures = opts.out.clone().unwrap_or_else(|| s.output.figures.as_deref().map(|p| s.resolve(p)).unwrap_or(s.base.clone()));
    let cx = Ctx { c: &c, s, k, tol: s.tolerance(), seed, figures };
    let mut tasks = Vec::new();
    for (idx, t) in s.tasks.iter().enumerate() {
        let started = Instant::now();
        let res = run_task(&cx, idx, t, opts.figures_only);
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        let inputs = serde_json::to_value(&t.kind).unwrap_or(Value::Null);
        let rec = match res {
            Ok(None) => continue,
            Ok(Some(o)) => {
                let ok = o.assertions.iter().all(|a| a.passed);
                TaskRecord {
                    name: t.name.clone(),
                    kind: t.kind.label().into(),
                    inputs,
                    outputs: o.outputs,
                    assertions: o.assertions,
                    status: if ok { Status::Pass } else { Status::Fail },
                    error: None,
                    wall_ms,
                }
            }
            Err(e @ (Error::Parse { .. } | Error::Io(_))) => return Err(e),
            Err(e) => TaskRecord {
                name: t.name.clone(),
                kind: t.kind.label().into(),
                inputs,
                outputs: Value::Null,
                assertions: Vec::new(),
                status: Status::Error,
                error: Some(Error::TaskFailed { task: t.name.clone(), reason: e.to_string() }.to_string()),
                wall_ms,
            },
        };
        tasks.push(rec);
    }
    let passed = tasks.iter().all(|t| t.status == Status::Pass);
    Ok(Report {
        schema: SCHEMA,
        scenario: s.name.clone(),
        seed,
        constants: k,
        tolerance: s.tolerance(),
        complex: json!({"spec": s.complex, "vertices": c.len(), "edges": c.edge_count()}),
        tasks,
        passed,
    })
}

/// Where `run` writes the report of `s`.
pub fn report_path(s: &Scenario, opts: &RunOptions) -> PathBuf {
    match (&opts.out, &s.output.report) {
        (Some(dir), Some(p)) => dir.join(p.file_name().unwrap_or(p.as_os_str())),
        (Some(dir), None) => dir.join(format!("{}.report.json", s.name)),
        (None, Some(p)) => s.resolve(p),
        (None, None) => s.base.join(format!("{}.report.json", s.name)),
    }
}

/// Loads, runs and writes the report; returns the exit code.
pub fn run_file(path: &Path, overrides: Option<&str>, opts: &RunOptions) -> (i32, std::result::Result<Report, Error>) {
    let s = Scenario::load(path).and_then(|mut s| {
        if let Some(o) = overrides {
            s.override_constants(o)?;
        }
        Ok(s)
    });
    let s = match s {
        Ok(s) => s,
        Err(e) => return (EXIT_INPUT, Err(e)),
    };
    match run(&s, opts) {
        Ok(rep) => {
            let out = report_path(&s, opts);
            if !opts.figures_only {
                let write = out
                    .parent()
                    .map_or(Ok(()), |d| if d.as_os_str().is_empty() { Ok(()) } else { std::fs::create_dir_all(d) })
                    .and_then(|_| std::fs::write(&out, rep.to_json()));
                if let Err(e) = write {
                    return (EXIT_INPUT, Err(e.into()));
                }
            }
            (if rep.passed { EXIT_PASS } else { EXIT_FAIL }, Ok(rep))
        }
        Err(e) => (EXIT_INPUT, Err(e)),
    }
}
