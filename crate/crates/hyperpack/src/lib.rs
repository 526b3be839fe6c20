//! Volumes, hyperball heights, and packing densities for doubly truncated
//! Coxeter orthoschemes in hyperbolic 3-space.
//!
//! An orthoscheme with Schläfli symbol `{u, v, w}` is described by its
//! 4×4 Coxeter–Schläfli matrix. When the principal determinant is negative
//! and both outer vertices lie beyond the absolute, the vertices are cut off
//! by their polar planes, producing a compact *doubly truncated* domain.
//! This crate computes, entirely through that bilinear-form description:
//!
//! - the Gram matrix, its closed-form inverse, and the classification of a
//!   parameter triple ([`orthoscheme`]);
//! - truncation vertices, hyperbolic point distances, the three key
//!   distances that bound hyperball heights, and truncation-triangle areas
//!   ([`orthoscheme`]);
//! - the orthoscheme volume and hyperball-piece volumes ([`volume`]), built
//!   on the Lobachevsky function ([`hypmath`]);
//! - packing densities for two congruent hyperballs, a single hyperball,
//!   and two non-congruent hyperballs, with optimizers and exhaustive
//!   integer-parameter scans ([`packing`]).
//!
//! # Example
//!
//! ```
//! use hyperpack::orthoscheme::SchlafliParams;
//! use hyperpack::packing::density_two_congruent;
//!
//! let params = SchlafliParams::new(7.0, 3.0, 7.0).unwrap();
//! let result = density_two_congruent(&params).unwrap();
//! assert!((result.density - 0.81335).abs() < 2e-4);
//! ```

pub mod hypmath;
pub mod orthoscheme;
pub mod packing;
pub mod volume;

/// Errors produced by any stage of the pipeline.
///
/// Classification errors ([`NotHyperbolic`](Error::NotHyperbolic),
/// [`NotDoublyTruncated`](Error::NotDoublyTruncated),
/// [`AmbiguousClassification`](Error::AmbiguousClassification)) mark
/// parameter triples outside the compact doubly truncated regime and are
/// what integer scans silently skip. Everything else signals misuse or an
/// internal cross-check failure and is always propagated.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input violated a documented precondition (finiteness, `>= 3`
    /// parameter bounds, argument ranges, malformed scan requests, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The principal determinant of the Coxeter–Schläfli matrix is
    /// nonnegative, so the orthoscheme is not hyperbolic.
    #[error("not hyperbolic: principal determinant {determinant:.6} >= 0")]
    NotHyperbolic {
        /// Value of the principal determinant.
        determinant: f64,
    },

    /// The named vertex fails its truncation condition: it does not lie
    /// beyond the absolute, so its truncating polar plane is missing.
    #[error(
        "not doubly truncated: vertex A{vertex} fails its truncation \
         condition (witness {witness:.6} <= 0)"
    )]
    NotDoublyTruncated {
        /// Index of the offending vertex: `0` or `3`.
        vertex: u8,
        /// Signed quantity whose nonpositivity certifies the failure: the
        /// inverse-matrix diagonal entry for the vertex, or the truncation
        /// triangle's angle excess when an area was requested.
        witness: f64,
    },

    /// A classification quantity fell inside the `1e-12` guard band around
    /// zero; the triple sits numerically on a regime boundary and is
    /// rejected rather than classified by the sign of noise.
    #[error(
        "ambiguous classification: {quantity} = {value:.3e} lies within \
         the 1e-12 guard band around zero"
    )]
    AmbiguousClassification {
        /// Name of the quantity whose sign could not be trusted.
        quantity: &'static str,
        /// Its computed value.
        value: f64,
    },

    /// A symmetry witness was requested for a triple with `u != w`.
    #[error("symmetry witness requires u = w, got u = {u}, w = {w}")]
    SymmetryUnavailable {
        /// First parameter.
        u: f64,
        /// Third parameter.
        w: f64,
    },

    /// A non-congruent height configuration violates the named feasibility
    /// constraint.
    #[error(
        "infeasible configuration: {constraint} violated \
         (value {value:.6} vs bound {bound:.6})"
    )]
    Infeasible {
        /// The constraint that failed, e.g. `"h0 <= d(A1,C)"`.
        constraint: &'static str,
        /// The offending value.
        value: f64,
        /// The bound it had to respect.
        bound: f64,
    },

    /// Adaptive quadrature exhausted its subdivision depth before reaching
    /// the requested tolerance.
    #[error(
        "quadrature did not converge: requested tolerance {requested:.1e}, \
         achieved only {achieved:.1e}"
    )]
    QuadratureTolerance {
        /// Tolerance that was asked for.
        requested: f64,
        /// Error estimate actually reached.
        achieved: f64,
    },

    /// Two independent computation routes that must agree disagreed, or a
    /// mandatory internal cross-check failed. Always a bug, never a bad
    /// input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// An integer scan matched no valid parameter triple.
    #[error("scan produced no valid parameter triples")]
    EmptyScan,
}

impl Error {
    /// Stable machine-readable identifier for this error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::NotHyperbolic { .. } => "NotHyperbolic",
            Error::NotDoublyTruncated { .. } => "NotDoublyTruncated",
            Error::AmbiguousClassification { .. } => "AmbiguousClassification",
            Error::SymmetryUnavailable { .. } => "SymmetryUnavailable",
            Error::Infeasible { .. } => "FeasibilityError",
            Error::QuadratureTolerance { .. } => "QuadratureTolerance",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::EmptyScan => "EmptyScan",
        }
    }

    /// Whether this error marks a parameter triple outside the compact
    /// doubly truncated regime (as opposed to misuse or an internal bug).
    /// Integer scans skip triples that fail with such errors.
    pub fn is_classification(&self) -> bool {
        matches!(
            self,
            Error::NotHyperbolic { .. }
                | Error::NotDoublyTruncated { .. }
                | Error::AmbiguousClassification { .. }
        )
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
