//! Combinatorial geodesics on systolic complexes.
//!
//! Complexes are flag complexes stored as graphs. Plane-backed complexes
//! carry axial coordinates of the equilateral triangulation, which unlocks
//! the flat-disk and CAT(0) machinery used by Euclidean geodesics.

pub mod cat0;
pub mod chardisk;
pub mod complex;
pub mod directed;
pub mod eplane;
pub mod error;
pub mod euclid;
pub mod isometry;
pub mod lab;
pub mod samples;

pub use complex::{distance, interval, FlagComplex, Geodesic, Simplex, VertexId};
pub use eplane::{lattice_distance, window, AxialCoord, PlaneIsometry};
pub use error::{Error, Result};
