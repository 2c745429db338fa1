//! Convex-polytope calculus for inner parallel bodies in 2D and 3D.
//!
//! Given a convex polytope `Ω` and a convex gauge body `K`, this crate
//! computes the eroded family `Ω ∼ λK = {x : x + λK ⊆ Ω}`, the relative
//! inradius, the anisotropic perimeter `∫ h_K(ν) dH^{n-1}`, mixed-volume
//! curves and Steiner coefficients, the anisotropic isoperimetric quotient,
//! and the equality-case machinery (homothety detection, form bodies,
//! tangential certificates).
//!
//! The crate is organized around a few small modules:
//!
//! - [`polytope`] — dual V/H representations, hulls, volume, support and
//!   gauge functions, Minkowski sums.
//! - [`linprog`] — a dense two-phase simplex solver for the small LPs
//!   behind interior points, inradii, and redundancy removal.
//! - [`erosion`] — inner parallel bodies, relative inradius, and the
//!   anisotropic distance function.
//! - [`functionals`] — anisotropic perimeter, Steiner coefficients,
//!   mixed-volume curve families, and derivative checks.
//! - [`shape`] — homothety detection, form bodies, tangential-body
//!   certificates, and equality classification.
//! - [`bodies`] — constructors for boxes, simplices, regular polygons,
//!   random hulls, circumscribed bodies, and ball surrogates.
//! - [`cli`] — the command frontend used by the `innerbody` binary
//!   (body generation, curve CSV output, verification suites).
//!
//! Every type is an immutable value and every operation is a pure
//! function, so concurrent use requires no synchronization. See the
//! `examples/` directory for one runnable program per capability.

pub mod bodies;
pub mod bodyfile;
pub mod cli;
pub mod erosion;
pub mod functionals;
pub mod linprog;
pub mod polytope;
pub mod shape;

mod dense;

pub use polytope::{Body, Facet, HPolytope, Halfspace, VPolytope, Vector};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input points are affinely dependent or otherwise too degenerate
    /// to carry a full-dimensional hull.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// An H-representation turned out to be empty or unbounded where a
    /// bounded body with interior was required.
    #[error("halfspace intersection is empty or unbounded")]
    EmptyOrUnbounded,
    /// An H-representation has no interior point.
    #[error("halfspace intersection has empty interior")]
    Empty,
    /// Facet normals do not positively span the space.
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    /// A direction vector was (numerically) zero.
    #[error("zero direction vector")]
    ZeroDirection,
    /// The gauge body does not contain the origin in its interior.
    #[error("origin is not interior to the gauge body")]
    OriginNotInterior,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("homothety ratio must be positive, got {0}")]
    NonpositiveRatio(f64),
    #[error("erosion parameter must be nonnegative, got {0}")]
    NegativeLambda(f64),
    /// A query point lies outside the body.
    #[error("point lies outside the body")]
    PointOutside,
    /// Pivoting stalled or another numerical procedure failed.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    /// Malformed user input (files, parameters, configuration).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
