//! Exact computation of Chekanov–Eliashberg differential graded algebras for
//! Legendrian knots and S¹-symmetric Legendrian tori described by immersed
//! rational polylines in the punctured plane.
//!
//! The pipeline is: load and validate a curve ([`curve_geometry`]), compute
//! its crossing/face combinatorics and exact actions, enumerate admissible
//! immersed polygons and build the knot-level DGA ([`knot_dga`]), decorate
//! with Novikov variables and Bott generators for spun tori ([`torus_dga`]),
//! and extract homological invariants ([`dga_core`]). Integer lattice
//! arithmetic for Bohr–Sommerfeld covers lives in [`prequant`].

pub mod curve_geometry;
pub mod dga_core;
pub mod geom;
pub mod knot_dga;
pub mod prequant;
pub mod torus_dga;

pub use curve_geometry::{analyze, load_curve, PlanarCurve};

use thiserror::Error;

/// Errors produced by curve ingestion, validation, and the DGA pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("invalid augmentation: {0}")]
    InvalidAugmentation(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
