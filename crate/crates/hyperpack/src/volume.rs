//! Volume formulas: the doubly truncated orthoscheme and hyperball
//! pieces over its truncation triangles.
//!
//! The orthoscheme volume is the classical Lobachevsky-function formula
//! for complete orthoschemes, driven by an auxiliary angle θ; it covers
//! the doubly truncated case verbatim because truncation by polar planes
//! does not change the defining dihedral angles. The hyperball piece is
//! the solid between a hyperball surface and its base plane over a given
//! polygonal footprint, whose volume depends only on the footprint area
//! and the height.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::hypmath::lobachevsky;
use crate::orthoscheme::SchlafliParams;
use crate::{Error, Result};

/// Tolerance for clamping a marginally negative θ-radicand to zero.
/// Anything more negative means the triple is genuinely non-hyperbolic.
const RADICAND_CLAMP: f64 = 1e-12;

/// Volume of a doubly truncated orthoscheme together with the auxiliary
/// angle θ of the closed-form evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoschemeVolume {
    /// The volume; always positive.
    pub value: f64,
    /// The auxiliary angle, in `[0, π/2)`:
    /// `tan θ = √(cos²(π/v) − sin²(π/u) sin²(π/w)) / (cos(π/u) cos(π/w))`.
    pub theta: f64,
}

/// Computes the orthoscheme volume from the dihedral angles
/// `α01 = π/u`, `α12 = π/v`, `α23 = π/w`:
///
/// ```text
/// Vol = ¼ { Л(α01+θ) − Л(α01−θ)
///         + Л(π/2 + α12 − θ) + Л(π/2 − α12 − θ)
///         + Л(α23+θ) − Л(α23−θ) + 2 Л(π/2 − θ) }
/// ```
///
/// The radicand of `tan θ` equals the negated principal determinant of
/// the Coxeter–Schläfli matrix, so its sign repeats the hyperbolicity
/// test: a value below `−1e-12` is rejected, a marginally negative value
/// is clamped to zero.
///
/// # Errors
///
/// - [`Error::NotHyperbolic`] if the radicand shows a nonnegative
///   principal determinant.
/// - [`Error::InternalInconsistency`] if the evaluated volume fails to be
///   positive (never observed; a formula-transcription guard).
pub fn orthoscheme_volume(params: &SchlafliParams) -> Result<OrthoschemeVolume> {
    let a01 = PI / params.u();
    let a12 = PI / params.v();
    let a23 = PI / params.w();

    let radicand = a12.cos().powi(2) - (a01.sin() * a23.sin()).powi(2);
    if radicand < -RADICAND_CLAMP {
        return Err(Error::NotHyperbolic {
            determinant: -radicand,
        });
    }
    // cos α01 and cos α23 are >= 1/2 for parameters >= 3, so the ratio is
    // finite and θ lands in [0, π/2).
    let theta = (radicand.max(0.0).sqrt() / (a01.cos() * a23.cos())).atan();

    let value = 0.25
        * (lobachevsky(a01 + theta) - lobachevsky(a01 - theta)
            + lobachevsky(FRAC_PI_2 + a12 - theta)
            + lobachevsky(FRAC_PI_2 - a12 - theta)
            + lobachevsky(a23 + theta)
            - lobachevsky(a23 - theta)
            + 2.0 * lobachevsky(FRAC_PI_2 - theta));

    if value <= 0.0 || value.is_nan() {
        return Err(Error::InternalInconsistency(format!(
            "orthoscheme volume evaluated to {value} for \
             {{{}, {}, {}}}; it must be positive",
            params.u(),
            params.v(),
            params.w()
        )));
    }
    Ok(OrthoschemeVolume { value, theta })
}

/// Volume of the hyperball piece of height `height` over a base-plane
/// footprint of area `area` (curvature −1):
///
/// ```text
/// vol = ¼ area (sinh 2h + 2h)
/// ```
///
/// # Errors
///
/// [`Error::Domain`] if `area` or `height` is negative or not finite.
///
/// ```
/// use hyperpack::volume::hyperball_piece_volume;
/// use std::f64::consts::PI;
///
/// let piece = hyperball_piece_volume(PI / 42.0, 1.23469).unwrap();
/// assert!((piece - 0.15586).abs() < 1e-4);
/// ```
pub fn hyperball_piece_volume(area: f64, height: f64) -> Result<f64> {
    for (name, value) in [("area", area), ("height", height)] {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Domain(format!(
                "hyperball piece {name} must be finite and >= 0, got {value}"
            )));
        }
    }
    Ok(0.25 * area * ((2.0 * height).sinh() + 2.0 * height))
}
