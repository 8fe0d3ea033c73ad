//! Scenario files: TOML with a fixed set of sections.
//!
//! ```toml
//! name = "glide-minset"
//! seed = 7
//!
//! [complex]
//! source = "eplane"        # eplane | file | tree-T | sample
//! radius = 40
//!
//! [isometries]
//! g = "glide(1,1)"
//!
//! [constants]
//! C = 200
//!
//! [[task]]
//! name = "proximity"
//! kind = "displacement-study"
//! isometry = "g"
//! pairs = 50
//! max_distance = 30
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, VertexId};
use crate::eplane::{parse_isometry, window, AxialCoord, PlaneIsometry};
use crate::error::{Error, Result};
use crate::euclid::Constants;
use crate::lab::tree::TreeT;
use crate::samples;

/// Floors below which constants must be flagged `empirical`.
pub const C_FLOOR: f64 = 200.0;
pub const D_FLOOR: f64 = 600.0;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    pub complex: ComplexSpec,
    #[serde(default)]
    pub isometries: BTreeMap<String, String>,
    #[serde(default)]
    pub constants: ConstantSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default, rename = "task")]
    pub tasks: Vec<TaskSpec>,
    /// Directory relative paths in the file resolve against.
    #[serde(skip)]
    pub base: PathBuf,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ComplexSpec {
    Eplane {
        radius: u32,
        #[serde(default)]
        center: [i64; 2],
    },
    File {
        path: PathBuf,
    },
    #[serde(rename = "tree-T")]
    TreeT {
        depth: u32,
    },
    Sample {
        name: String,
    },
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantSpec {
    #[serde(rename = "C")]
    pub c: Option<f64>,
    #[serde(rename = "D")]
    pub d: Option<f64>,
    pub tol: Option<f64>,
    #[serde(default)]
    pub empirical: bool,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub report: Option<PathBuf>,
    pub figures: Option<PathBuf>,
}

/// A vertex given by id, or by coordinates on plane-backed complexes.
#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum VertexRef {
    Id(u32),
    Coord([i64; 2]),
}

fn default_cs() -> Vec<String> {
    vec!["1/4".into(), "1/2".into(), "3/4".into()]
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskKind {
    GeodesicPipeline {
        x: VertexRef,
        y: VertexRef,
    },
    GoodnessSweep {
        #[serde(default)]
        pairs: usize,
        #[serde(default)]
        max_distance: u32,
        /// Measure the invariant staircase of this translation instead.
        staircase: Option<[i64; 2]>,
        #[serde(default)]
        length: usize,
        /// Compare flat and ambient goodness on a bundled flat embedding.
        embedding: Option<String>,
    },
    DisplacementStudy {
        isometry: String,
        #[serde(default)]
        pairs: usize,
        #[serde(default = "default_far")]
        max_distance: u32,
        #[serde(default)]
        ks: Vec<u32>,
        /// Truncation for the axis construction; 0 skips it.
        #[serde(default)]
        axis_n: u32,
        #[serde(default = "one")]
        stride: u32,
    },
    ContractingSuite {
        pairs: usize,
        length: u32,
        #[serde(default = "default_cs")]
        cs: Vec<String>,
        #[serde(default)]
        asymptotic: usize,
    },
    ExtendabilityStudy {
        depth: u32,
        #[serde(default)]
        control_pairs: usize,
        #[serde(default = "default_far")]
        control_radius: u32,
    },
    FigureRender {
        x: VertexRef,
        y: VertexRef,
        file: PathBuf,
    },
}

fn default_far() -> u32 {
    12
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TaskSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: TaskKind,
}

impl TaskKind {
    pub fn label(&self) -> &'static str {
        match self {
            TaskKind::GeodesicPipeline { .. } => "geodesic-pipeline",
            TaskKind::GoodnessSweep { .. } => "goodness-sweep",
            TaskKind::DisplacementStudy { .. } => "displacement-study",
            TaskKind::ContractingSuite { .. } => "contracting-suite",
            TaskKind::ExtendabilityStudy { .. } => "extendability-study",
            TaskKind::FigureRender { .. } => "figure-render",
        }
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map_or(0, |r| line_of(text, r.start)),
            msg: e.message().to_string(),
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut s = Scenario::parse(&text)?;
        s.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parse { line: 0, msg });
        for (k, lit) in &self.isometries {
            if let Err(e) = parse_isometry(lit) {
                return bad(format!("isometry {k}: {e}"));
            }
        }
        for t in &self.tasks {
            if let TaskKind::DisplacementStudy { isometry, .. } = &t.kind {
                if !self.isometries.contains_key(isometry) {
                    return bad(format!("task {} uses undeclared isometry {isometry:?}", t.name));
                }
            }
            if let TaskKind::ContractingSuite { cs, .. } = &t.kind {
                for c in cs {
                    if parse_fraction(c).is_none() {
                        return bad(format!("task {}: {c:?} is not a fraction", t.name));
                    }
                }
            }
        }
        self.constants().map(|_| ())
    }

    /// Constants after defaults, checked against the floors.
    pub fn constants(&self) -> Result<Constants> {
        let k = &self.constants;
        let out = Constants { c: k.c.unwrap_or(C_FLOOR), d: k.d.unwrap_or(D_FLOOR), empirical: k.empirical };
        if !out.empirical && (out.c < C_FLOOR || out.d < D_FLOOR) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("C={} D={} below the floors {C_FLOOR}/{D_FLOOR}; set empirical = true", out.c, out.d),
            });
        }
        Ok(out)
    }

    pub fn tolerance(&self) -> f64 {
        self.constants.tol.unwrap_or(1e-9)
    }

    /// Applies `C=..,D=..,tol=..,empirical=..` overrides from the command line.
    pub fn override_constants(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || Error::Parse { line: 0, msg: format!("bad constant override {item:?}") };
            let (k, v) = item.split_once('=').ok_or_else(bad)?;
            let num = || v.trim().parse::<f64>().map_err(|_| bad());
            match k.trim() {
                "C" => self.constants.c = Some(num()?),
                "D" => self.constants.d = Some(num()?),
                "tol" => self.constants.tol = Some(num()?),
                "empirical" => self.constants.empirical = v.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        self.constants().map(|_| ())
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    pub fn build_complex(&self) -> Result<FlagComplex> {
        match &self.complex {
            ComplexSpec::Eplane { radius, center } => Ok(window(AxialCoord::new(center[0], center[1]), *radius)),
            ComplexSpec::File { path } => {
                let p = self.resolve(path);
                let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                FlagComplex::parse(&text)
            }
            ComplexSpec::TreeT { depth } => Ok(TreeT::new(*depth).complex),
            ComplexSpec::Sample { name } => samples::builtin(name)
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("no bundled sample {name:?}") }),
        }
    }

    pub fn isometry(&self, name: &str) -> Result<PlaneIsometry> {
        let lit = self
            .isometries
            .get(name)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("undeclared isometry {name:?}") })?;
        parse_isometry(lit)
    }
}

pub fn parse_fraction(s: &str) -> Option<num_rational::Ratio<i64>> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (d != 0).then(|| num_rational::Ratio::new(n, d))
        }
        None => s.parse().ok().map(num_rational::Ratio::from_integer),
    }
}

impl VertexRef {
    pub fn resolve(self, c: &FlagComplex) -> Result<VertexId> {
        match self {
            VertexRef::Id(i) if (i as usize) < c.len() => Ok(VertexId(i)),
            VertexRef::Id(i) => Err(Error::Parse { line: 0, msg: format!("vertex {i} out of range") }),
            VertexRef::Coord([a, b]) => c
                .vertex_at(AxialCoord::new(a, b))
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("no vertex at ({a},{b})") }),
        }
    }
}
