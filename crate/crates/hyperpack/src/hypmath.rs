//! Scalar special functions underlying the volume formulas.
//!
//! Provides the Lobachevsky function Л(x), an independent quadrature
//! evaluation of it used as a cross-check oracle, and the inverse
//! hyperbolic cosine. All routines are plain `f64` scalar functions.
//!
//! # The Lobachevsky function
//!
//! Л(x) = −∫₀ˣ ln|2 sin t| dt is odd, π-periodic, and maximal at π/6.
//! [`lobachevsky`] first reduces its argument to [−π/2, π/2] using those
//! two symmetries, then evaluates the series
//!
//! ```text
//! Л(x) = x (1 − ln 2x) + x Σ_{m≥1} ζ(2m) / (m (2m+1)) · (x/π)^{2m}
//! ```
//!
//! obtained by integrating the logarithm of the sine product formula
//! termwise. On the reduced range (x/π)² ≤ 1/4, so the tail is dominated
//! by a geometric series with ratio 1/4 and roughly thirty terms reach
//! full `f64` precision; the truncation threshold of `1e-18` leaves the
//! result well inside the documented `1e-12` absolute error budget.
//! The even zeta values ζ(2m) are generated once from ζ(2) = π²/6 by the
//! recurrence (2n+1) ζ(2n) = 2 Σ_{j=1}^{n−1} ζ(2j) ζ(2n−2j).

use std::f64::consts::PI;
use std::sync::LazyLock;

use crate::{Error, Result};

/// An angle in radians. Plain `f64`; callers must pass finite values.
pub type Angle = f64;

/// Number of even zeta values kept for the Lobachevsky series. The series
/// terms shrink at least geometrically with ratio 1/4, so the truncation
/// test always fires long before the table runs out.
const ZETA_EVEN_LEN: usize = 64;

/// `ZETA_EVEN[n]` holds ζ(2n) for `n >= 1`; index 0 is unused.
static ZETA_EVEN: LazyLock<[f64; ZETA_EVEN_LEN]> = LazyLock::new(|| {
    let mut z = [0.0; ZETA_EVEN_LEN];
    z[1] = PI * PI / 6.0;
    for n in 2..ZETA_EVEN_LEN {
        let mut sum = 0.0;
        for j in 1..n {
            sum += z[j] * z[n - j];
        }
        z[n] = 2.0 * sum / (2.0 * n as f64 + 1.0);
    }
    z
});

/// The Lobachevsky function Л(x) = −∫₀ˣ ln|2 sin t| dt.
///
/// Total on finite inputs, with absolute error below `1e-12` (in practice
/// a few ulps). Odd and π-periodic by construction: the argument is
/// reduced to [−π/2, π/2] before the series is evaluated.
///
/// ```
/// use hyperpack::hypmath::lobachevsky;
/// use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};
///
/// assert_eq!(lobachevsky(0.0), 0.0);
/// assert!(lobachevsky(FRAC_PI_2).abs() < 1e-13);
/// assert!((lobachevsky(FRAC_PI_6) - 0.50747).abs() < 1e-5);
/// ```
pub fn lobachevsky(x: Angle) -> f64 {
    debug_assert!(x.is_finite(), "lobachevsky argument must be finite");
    // Periodicity: shift by the nearest multiple of π, landing in [−π/2, π/2].
    let r = x - PI * (x / PI).round();
    // Oddness: evaluate on |r| and restore the sign.
    let s = r.abs();
    if s == 0.0 {
        return 0.0;
    }
    let value = reduced_series(s);
    if r < 0.0 {
        -value
    } else {
        value
    }
}

/// Series evaluation on the reduced range 0 < x ≤ π/2.
fn reduced_series(x: f64) -> f64 {
    let q = (x / PI) * (x / PI);
    let mut sum = 0.0;
    let mut q_pow = 1.0;
    for (m, zeta_2m) in ZETA_EVEN.iter().enumerate().skip(1) {
        q_pow *= q;
        let mf = m as f64;
        let term = zeta_2m / (mf * (2.0 * mf + 1.0)) * q_pow;
        sum += term;
        if term < 1e-18 {
            break;
        }
    }
    x.mul_add(sum, x * (1.0 - (2.0 * x).ln()))
}

/// Independent evaluation of Л(x) by adaptive quadrature, for |x| ≤ π.
///
/// Deliberately shares no code with [`lobachevsky`]: the integrand's
/// logarithmic singularities at 0 and π are removed analytically
/// (`ln 2 sin t = ln 2t + ln(sin t / t)`, and a reflection `t ↦ π − t`
/// for the upper part of the range), and the smooth remainder is
/// integrated by adaptive Simpson quadrature. Absolute error target
/// `1e-10`; if the subdivision depth is exhausted first, the routine
/// reports [`Error::QuadratureTolerance`] instead of returning a value.
///
/// # Errors
///
/// - [`Error::Domain`] if `x` is not finite or |x| > π.
/// - [`Error::QuadratureTolerance`] if the quadrature cannot reach its
///   internal tolerance (not observed for any valid input; kept as a
///   loud failure mode rather than a silent accuracy loss).
///
/// ```
/// use hyperpack::hypmath::{lobachevsky, lobachevsky_quadrature_oracle};
/// use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
///
/// // Л(π/6) = (3/2) Л(π/3), a classical identity, ties the two routes:
/// let via_quadrature = lobachevsky_quadrature_oracle(FRAC_PI_3).unwrap();
/// assert!((lobachevsky(FRAC_PI_6) - 1.5 * via_quadrature).abs() < 1e-10);
/// ```
pub fn lobachevsky_quadrature_oracle(x: Angle) -> Result<f64> {
    if !x.is_finite() || x.abs() > PI + 1e-12 {
        return Err(Error::Domain(format!(
            "quadrature oracle requires |x| <= pi, got {x}"
        )));
    }
    let s = x.abs().min(PI);
    // Л(s) = −∫₀ˢ ln 2 sin t dt. For s beyond 2 the integration range
    // approaches the singularity at π, so the tail [2, s] is reflected
    // through t ↦ π − t onto [π − s, π − 2], away from both endpoints:
    //   ∫₀ˢ = ∫₀² + ∫₀^{π−2} − ∫₀^{π−s}.
    let value = if s <= 2.0 {
        -log_sine_integral(s)?
    } else {
        -(log_sine_integral(2.0)? + log_sine_integral(PI - 2.0)?
            - log_sine_integral(PI - s)?)
    };
    Ok(if x < 0.0 { -value } else { value })
}

/// ∫₀ʸ ln(2 sin t) dt for 0 ≤ y ≤ 2.3, with the endpoint singularity
/// removed analytically: the integral equals
/// `y ln 2y − y + ∫₀ʸ ln(sin t / t) dt` and the remaining integrand is
/// smooth (it behaves like −t²/6 near zero).
fn log_sine_integral(y: f64) -> Result<f64> {
    debug_assert!((0.0..=2.3).contains(&y));
    if y == 0.0 {
        return Ok(0.0);
    }
    let smooth = adaptive_simpson(&log_sinc, 0.0, y, 1e-12)?;
    Ok(y * (2.0 * y).ln() - y + smooth)
}

/// ln(sin t / t), extended by its limit 0 at t = 0.
fn log_sinc(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        (t.sin() / t).ln()
    }
}

/// Maximum bisection depth for the adaptive quadrature. 2⁴⁸ panels is far
/// beyond anything a smooth integrand needs; hitting this limit means the
/// requested tolerance is unreachable and is reported as an error.
const SIMPSON_MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute
/// tolerance `tol`, with Richardson correction of each accepted panel.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn panel(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let (left, lm, flm) = panel(f, a, fa, m, fm);
        let (right, rm, frm) = panel(f, m, fm, b, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureTolerance {
                requested: tol,
                achieved: delta.abs() / 15.0,
            });
        }
        let half = 0.5 * tol;
        Ok(refine(f, a, fa, m, fm, left, lm, flm, half, depth - 1)?
            + refine(f, m, fm, b, fb, right, rm, frm, half, depth - 1)?)
    }

    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = panel(f, a, fa, b, fb);
    refine(f, a, fa, b, fb, whole, m, fm, tol, SIMPSON_MAX_DEPTH)
}

/// Inverse hyperbolic cosine.
///
/// Formulated through `ln_1p` of `x − 1` so that accuracy is preserved
/// right down to the branch point at 1.
///
/// # Errors
///
/// [`Error::Domain`] if `x < 1` or `x` is NaN.
///
/// ```
/// use hyperpack::hypmath::arcosh;
///
/// assert_eq!(arcosh(1.0).unwrap(), 0.0);
/// assert!((arcosh(6.57336).unwrap() - 2.57034).abs() < 1e-5);
/// assert!(arcosh(0.5).is_err());
/// ```
pub fn arcosh(x: f64) -> Result<f64> {
    if x < 1.0 || x.is_nan() {
        return Err(Error::Domain(format!("arcosh requires x >= 1, got {x}")));
    }
    if x > 1e150 {
        // u(u+2) below would overflow; the asymptotic form is exact to
        // within 1/(4x²) ~ 1e-300 here.
        return Ok((2.0 * x).ln());
    }
    let u = x - 1.0;
    Ok((u + (u * (u + 2.0)).sqrt()).ln_1p())
}
