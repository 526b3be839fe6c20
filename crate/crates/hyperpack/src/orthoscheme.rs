//! The doubly truncated orthoscheme: Gram matrix, classification,
//! truncation vertices, distances, and truncation-triangle areas.
//!
//! Everything here works in the dual description of the orthoscheme. The
//! Coxeter–Schläfli matrix `b` of a `{u, v, w}` orthoscheme collects the
//! inner products of the four face normals; its inverse `a` is then the
//! Gram matrix of the dual basis `a0..a3`, whose points are the four
//! vertices `A0..A3`. No coordinate model is ever introduced: points are
//! coefficient vectors over the dual basis ([`FormPoint`]) and all metric
//! quantities come from the bilinear form `a`.
//!
//! A triple is *doubly truncated* when the form is hyperbolic (principal
//! determinant `B < 0`) and both outer vertices `A0`, `A3` lie beyond the
//! absolute (`a00 > 0` and `a33 > 0`), in which case their polar planes
//! π₀, π₃ cut the simplex down to a compact domain. [`build_gram`] is the
//! single classification gate; every quantity whose sign decides the
//! classification is protected by a `1e-12` guard band so that triples
//! sitting numerically on a regime boundary are rejected loudly instead
//! of being classified by rounding noise.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::hypmath::arcosh;
use crate::{Error, Result};

/// Guard band around zero for classification quantities. Signs inside
/// this band are considered untrustworthy and classification fails with
/// [`Error::AmbiguousClassification`].
pub const CLASSIFICATION_GUARD: f64 = 1e-12;

/// Slack for arguments of `arcosh` in distance computations: values in
/// `[1 − COSH_CLAMP, 1)` are treated as exactly 1 (distance zero), values
/// below that are a domain error.
pub const COSH_CLAMP: f64 = 1e-9;

/// Absolute tolerance of the mandatory cross-check between closed-form
/// key distances and explicit truncation-point distances.
const KEY_DISTANCE_CHECK_TOL: f64 = 1e-10;

/// Validated Schläfli parameters `{u, v, w}` of an orthoscheme.
///
/// Construction only enforces the basic domain (`u, v, w >= 3`, finite);
/// whether the triple is hyperbolic and doubly truncated is decided by
/// [`build_gram`], which examines the signs of the derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchlafliParams {
    u: f64,
    v: f64,
    w: f64,
    integral: bool,
}

impl SchlafliParams {
    /// Validates and wraps a parameter triple.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if any parameter is not finite or is below 3.
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self> {
        for (name, value) in [("u", u), ("v", v), ("w", w)] {
            if !value.is_finite() {
                return Err(Error::Domain(format!(
                    "parameter {name} must be finite, got {value}"
                )));
            }
            if value < 3.0 {
                return Err(Error::Domain(format!(
                    "parameter {name} must be >= 3, got {value}"
                )));
            }
        }
        let integral = u.fract() == 0.0 && v.fract() == 0.0 && w.fract() == 0.0;
        Ok(SchlafliParams { u, v, w, integral })
    }

    /// First parameter; π/u is the dihedral angle along the edge `A2A3`.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Second parameter; π/v is the dihedral angle along the edge `A0A3`.
    pub fn v(&self) -> f64 {
        self.v
    }

    /// Third parameter; π/w is the dihedral angle along the edge `A0A1`.
    pub fn w(&self) -> f64 {
        self.w
    }

    /// Whether all three parameters are integers.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    /// The triple with the roles of `u` and `w` exchanged, `{w, v, u}`.
    /// Geometrically this renumbers the vertices `Ai ↦ A(3−i)`.
    pub fn swapped(&self) -> Self {
        SchlafliParams {
            u: self.w,
            v: self.v,
            w: self.u,
            integral: self.integral,
        }
    }

    /// Whether `u = w` within `1e-12`, the precondition for the
    /// symmetry-witness points.
    pub fn is_symmetric(&self) -> bool {
        (self.u - self.w).abs() <= 1e-12
    }
}

/// The Coxeter–Schläfli matrix of a triple, its inverse, and the
/// principal determinant, produced by [`build_gram`] only for triples in
/// the compact doubly truncated regime.
///
/// Invariants guaranteed at construction: `determinant < 0` (hyperbolic),
/// `a[0][0] > 0` and `a[3][3] > 0` (both outer vertices truncated),
/// `a · b = I` to rounding accuracy, and for `u = w` the inverse is
/// persymmetric (`a00 = a33`, `a11 = a22` exactly, since the defining
/// expressions coincide).
#[derive(Debug, Clone)]
pub struct GramData {
    /// The parameters this data was built from.
    pub params: SchlafliParams,
    /// Coxeter–Schläfli matrix: unit diagonal, `b01 = −cos π/u`,
    /// `b12 = −cos π/v`, `b23 = −cos π/w`, zero elsewhere.
    pub b: [[f64; 4]; 4],
    /// Closed-form inverse of `b`; the Gram matrix of the dual basis.
    pub a: [[f64; 4]; 4],
    /// Principal determinant `B = sin²(π/u) sin²(π/w) − cos²(π/v)`,
    /// equal to `det b`. Negative exactly when the form is hyperbolic.
    pub determinant: f64,
}

/// Builds the Coxeter–Schläfli matrix and its closed-form inverse,
/// classifying the triple on the way.
///
/// # Errors
///
/// - [`Error::NotHyperbolic`] if the principal determinant is positive.
/// - [`Error::NotDoublyTruncated`] if a vertex `A0`/`A3` is not outer,
///   naming the vertex.
/// - [`Error::AmbiguousClassification`] if a sign-deciding quantity falls
///   inside the `1e-12` guard band.
///
/// ```
/// use hyperpack::orthoscheme::{build_gram, SchlafliParams};
/// use hyperpack::Error;
///
/// let euclidean = SchlafliParams::new(3.0, 3.0, 3.0).unwrap();
/// assert!(matches!(
///     build_gram(&euclidean),
///     Err(Error::NotHyperbolic { .. })
/// ));
/// ```
pub fn build_gram(params: &SchlafliParams) -> Result<GramData> {
    let ut = PI / params.u;
    let vt = PI / params.v;
    let wt = PI / params.w;
    let (cu, cv, cw) = (ut.cos(), vt.cos(), wt.cos());
    let su2 = ut.sin() * ut.sin();
    let sw2 = wt.sin() * wt.sin();

    let det = su2 * sw2 - cv * cv;
    if det.abs() <= CLASSIFICATION_GUARD {
        return Err(Error::AmbiguousClassification {
            quantity: "principal determinant",
            value: det,
        });
    }
    if det > 0.0 {
        return Err(Error::NotHyperbolic { determinant: det });
    }

    // a00 = (sin²w̃ − cos²ṽ)/B and a33 = (sin²ũ − cos²ṽ)/B must be
    // positive; with B < 0 that is a sign test on the numerators.
    let num0 = sw2 - cv * cv;
    let num3 = su2 - cv * cv;
    for (vertex, num) in [(0u8, num0), (3u8, num3)] {
        if num.abs() <= CLASSIFICATION_GUARD {
            return Err(Error::AmbiguousClassification {
                quantity: if vertex == 0 {
                    "vertex A0 truncation numerator"
                } else {
                    "vertex A3 truncation numerator"
                },
                value: num,
            });
        }
        if num > 0.0 {
            return Err(Error::NotDoublyTruncated {
                vertex,
                witness: num / det,
            });
        }
    }

    let b = [
        [1.0, -cu, 0.0, 0.0],
        [-cu, 1.0, -cv, 0.0],
        [0.0, -cv, 1.0, -cw],
        [0.0, 0.0, -cw, 1.0],
    ];

    // Closed-form inverse of the tridiagonal b, every entry over the
    // common denominator B.
    let a00 = num0 / det;
    let a01 = cu * sw2 / det;
    let a02 = cu * cv / det;
    let a03 = cu * cv * cw / det;
    let a11 = sw2 / det;
    let a12 = cv / det;
    let a13 = cv * cw / det;
    let a22 = su2 / det;
    let a23 = cw * su2 / det;
    let a33 = num3 / det;
    let a = [
        [a00, a01, a02, a03],
        [a01, a11, a12, a13],
        [a02, a12, a22, a23],
        [a03, a13, a23, a33],
    ];

    Ok(GramData {
        params: *params,
        b,
        a,
        determinant: det,
    })
}

/// A point written in coefficients over the dual basis `a0..a3`, so that
/// the basis point `i` is the orthoscheme vertex `Ai`. Inner products are
/// taken through the Gram matrix `a` of a [`GramData`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormPoint {
    /// Coefficients over the dual basis.
    pub coeffs: [f64; 4],
}

impl FormPoint {
    /// The `i`-th dual basis point, i.e. the orthoscheme vertex `Ai`.
    ///
    /// # Panics
    ///
    /// If `i >= 4`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 4, "basis index must be 0..=3, got {i}");
        let mut coeffs = [0.0; 4];
        coeffs[i] = 1.0;
        FormPoint { coeffs }
    }

    /// Bilinear form value ⟨self, other⟩ through the Gram matrix of the
    /// dual basis.
    pub fn inner(&self, other: &FormPoint, gram: &GramData) -> f64 {
        let mut sum = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                sum += self.coeffs[i] * gram.a[i][j] * other.coeffs[j];
            }
        }
        sum
    }

    /// ⟨self, self⟩; negative exactly for proper (finite) points.
    pub fn norm_sq(&self, gram: &GramData) -> f64 {
        self.inner(self, gram)
    }
}

/// The six vertices created by cutting the outer vertices `A0`, `A3` off
/// with their polar planes π₀, π₃.
///
/// `C`, `L`, `H` are the intersections of π₀ with the edges `A0A1`,
/// `A0A2`, `A0A3`; `J`, `E`, `Q` are the intersections of π₃ with the
/// edges `A0A3`, `A1A3`, `A2A3`. `J` and `H` both lie on `A0A3`, so their
/// distance is the length of the surviving middle piece of that edge.
#[derive(Debug, Clone)]
pub struct TruncationPoints {
    /// π₀ ∩ A0A1.
    pub c: FormPoint,
    /// π₀ ∩ A0A2.
    pub l: FormPoint,
    /// π₀ ∩ A0A3.
    pub h: FormPoint,
    /// π₃ ∩ A0A3.
    pub j: FormPoint,
    /// π₃ ∩ A1A3.
    pub e: FormPoint,
    /// π₃ ∩ A2A3.
    pub q: FormPoint,
}

/// Computes the six truncation vertices.
///
/// Each point is the component of one simplex vertex orthogonal to the
/// truncating vertex, e.g. `C = a1 − (a01/a00) a0`, which lies on the
/// polar plane of `A0` by construction (⟨C, a0⟩ = 0). Well-defined for
/// every [`GramData`] since `a00 > 0` and `a33 > 0` are construction
/// invariants.
pub fn truncation_points(gram: &GramData) -> TruncationPoints {
    let a = &gram.a;
    let point = |i: usize, j: usize, ratio: f64| {
        let mut coeffs = [0.0; 4];
        coeffs[i] = 1.0;
        coeffs[j] = -ratio;
        FormPoint { coeffs }
    };
    TruncationPoints {
        c: point(1, 0, a[0][1] / a[0][0]),
        l: point(2, 0, a[0][2] / a[0][0]),
        h: point(3, 0, a[0][3] / a[0][0]),
        j: point(0, 3, a[0][3] / a[3][3]),
        e: point(1, 3, a[1][3] / a[3][3]),
        q: point(2, 3, a[2][3] / a[3][3]),
    }
}

/// `arcosh` with the distance-computation clamp: arguments within
/// [`COSH_CLAMP`] below 1 count as exactly 1, anything lower is a domain
/// error.
fn arcosh_clamped(arg: f64, context: &str) -> Result<f64> {
    if arg >= 1.0 {
        arcosh(arg)
    } else if arg >= 1.0 - COSH_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!(
            "{context}: cosh argument {arg} is below 1 beyond the clamp \
             tolerance {COSH_CLAMP:.0e}"
        )))
    }
}

/// Hyperbolic distance between two proper points,
/// `cosh d = −⟨x,y⟩ / √(⟨x,x⟩⟨y,y⟩)`.
///
/// # Errors
///
/// [`Error::Domain`] if either point is not proper (nonnegative
/// self-inner-product), or if the cosh argument falls below 1 by more
/// than the [`COSH_CLAMP`] tolerance.
pub fn point_distance(x: &FormPoint, y: &FormPoint, gram: &GramData) -> Result<f64> {
    let xx = x.norm_sq(gram);
    let yy = y.norm_sq(gram);
    for (name, norm) in [("first", xx), ("second", yy)] {
        if norm >= 0.0 || norm.is_nan() {
            return Err(Error::Domain(format!(
                "{name} point is not proper: self inner product {norm:.6} >= 0"
            )));
        }
    }
    let arg = -x.inner(y, gram) / (xx * yy).sqrt();
    arcosh_clamped(arg, "point distance")
}

/// The three distances that bound every hyperball height in the packing
/// configurations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyDistances {
    /// Distance from vertex `A1` to the truncation vertex `C`; the
    /// largest height the hyperball on π₀ can reach inside the domain.
    pub d_a1c: f64,
    /// Distance from vertex `A2` to the truncation vertex `Q`; same role
    /// for the hyperball on π₃.
    pub d_a2q: f64,
    /// Distance between the truncation planes π₀ and π₃ along the edge
    /// `A0A3` (from `J` to `H`); two stacked heights may not exceed it.
    pub d_jh: f64,
    /// Half of `d_jh`, the common height at which two congruent
    /// hyperballs touch.
    pub half_d_jh: f64,
}

/// Computes the key distances in closed form and cross-checks each one
/// against an explicit truncation-point distance.
///
/// The closed forms follow from the same orthogonal decompositions that
/// define the truncation points: `cosh d(A1,C) = 1/√a00`,
/// `cosh d(A2,Q) = 1/√a33`, `cosh d(J,H) = −a03/√(a00 a33)`. Each value
/// is recomputed via [`point_distance`] on the actual points; the routine
/// refuses to return if the two routes drift apart by more than `1e-10`.
///
/// # Errors
///
/// [`Error::InternalInconsistency`] if a cross-check fails (a bug, not a
/// property of the input); [`Error::Domain`] if a cosh argument is
/// invalid beyond the clamp tolerance.
pub fn key_distances(gram: &GramData) -> Result<KeyDistances> {
    let a = &gram.a;
    let d_a1c = arcosh_clamped(1.0 / a[0][0].sqrt(), "d(A1,C)")?;
    let d_a2q = arcosh_clamped(1.0 / a[3][3].sqrt(), "d(A2,Q)")?;
    let d_jh = arcosh_clamped(-a[0][3] / (a[0][0] * a[3][3]).sqrt(), "d(J,H)")?;

    let points = truncation_points(gram);
    let checks = [
        ("d(A1,C)", d_a1c, point_distance(&FormPoint::basis(1), &points.c, gram)?),
        ("d(A2,Q)", d_a2q, point_distance(&FormPoint::basis(2), &points.q, gram)?),
        ("d(J,H)", d_jh, point_distance(&points.j, &points.h, gram)?),
    ];
    for (name, closed, via_points) in checks {
        if (closed - via_points).abs() > KEY_DISTANCE_CHECK_TOL {
            return Err(Error::InternalInconsistency(format!(
                "{name} closed form {closed:.15} disagrees with explicit \
                 point distance {via_points:.15} beyond {KEY_DISTANCE_CHECK_TOL:.0e}"
            )));
        }
    }

    Ok(KeyDistances {
        d_a1c,
        d_a2q,
        d_jh,
        half_d_jh: 0.5 * d_jh,
    })
}

/// Areas of the two truncation triangles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationAreas {
    /// Area of the triangle `CLH` cut off around `A0`; equals its angle
    /// defect `π/2 − π/v − π/w`.
    pub area0: f64,
    /// Area of the triangle `JEQ` cut off around `A3`; equals
    /// `π/2 − π/v − π/u`.
    pub area3: f64,
}

/// Computes the truncation-triangle areas from the angle defects.
///
/// The truncating planes are orthogonal to every face they meet, so each
/// truncation triangle has angles π/2, π/v, π/w (around `A0`) or π/2,
/// π/v, π/u (around `A3`), and its hyperbolic area is the angle defect.
///
/// # Errors
///
/// [`Error::NotDoublyTruncated`] naming the vertex whose triangle has
/// nonpositive defect. (The defect is positive exactly when the
/// corresponding inverse diagonal entry is, so this agrees with the
/// [`build_gram`] classification.)
pub fn truncation_areas(params: &SchlafliParams) -> Result<TruncationAreas> {
    let area0 = FRAC_PI_2 - PI / params.v - PI / params.w;
    let area3 = FRAC_PI_2 - PI / params.v - PI / params.u;
    for (vertex, area, quantity) in [
        (0u8, area0, "vertex A0 truncation-triangle area"),
        (3u8, area3, "vertex A3 truncation-triangle area"),
    ] {
        // The area sign is exactly equivalent to the truncation-numerator
        // sign checked by `build_gram`, so degenerate triples get the
        // same guard-band treatment here.
        if area.abs() <= CLASSIFICATION_GUARD {
            return Err(Error::AmbiguousClassification {
                quantity,
                value: area,
            });
        }
        if area < 0.0 {
            return Err(Error::NotDoublyTruncated {
                vertex,
                witness: area,
            });
        }
    }
    Ok(TruncationAreas { area0, area3 })
}

/// Fixed points of the `u ↔ w` role swap: the midpoints of the edge
/// segment `JH` (on `A0A3`) and of the edge `A1A2`, as the form points
/// `f03 = a0 + a3` and `f12 = a1 + a2`.
///
/// Both are proper when `u = w` (their norms are `2(a00 + a03)` and
/// `2(a11 + a12)`, negative in the doubly truncated regime), exhibiting
/// the half-turn symmetry that every symmetric triple's packing
/// arguments rely on.
///
/// # Errors
///
/// [`Error::SymmetryUnavailable`] unless `u = w` within `1e-12`.
pub fn symmetry_witness(gram: &GramData) -> Result<(FormPoint, FormPoint)> {
    if !gram.params.is_symmetric() {
        return Err(Error::SymmetryUnavailable {
            u: gram.params.u(),
            w: gram.params.w(),
        });
    }
    let f03 = FormPoint {
        coeffs: [1.0, 0.0, 0.0, 1.0],
    };
    let f12 = FormPoint {
        coeffs: [0.0, 1.0, 1.0, 0.0],
    };
    debug_assert!(f03.norm_sq(gram) < 0.0, "f03 must be proper when u = w");
    debug_assert!(f12.norm_sq(gram) < 0.0, "f12 must be proper when u = w");
    Ok((f03, f12))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(u: f64, v: f64, w: f64) -> SchlafliParams {
        SchlafliParams::new(u, v, w).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            SchlafliParams::new(2.9, 3.0, 7.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SchlafliParams::new(7.0, f64::NAN, 7.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            SchlafliParams::new(7.0, 3.0, f64::INFINITY),
            Err(Error::Domain(_))
        ));
        assert!(params(7.0, 3.0, 7.0).is_integral());
        assert!(!params(6.05, 3.0, 6.05).is_integral());
    }

    #[test]
    fn swapped_exchanges_roles() {
        let p = params(7.0, 3.0, 8.0);
        let s = p.swapped();
        assert_eq!((s.u(), s.v(), s.w()), (8.0, 3.0, 7.0));
        assert!(!p.is_symmetric());
        assert!(params(7.0, 3.0, 7.0).is_symmetric());
    }

    #[test]
    fn classification_rejects_non_hyperbolic() {
        // {3,3,3} is the Euclidean characteristic simplex: B = +0.3125.
        match build_gram(&params(3.0, 3.0, 3.0)) {
            Err(Error::NotHyperbolic { determinant }) => {
                assert!((determinant - 0.3125).abs() < 1e-12)
            }
            other => panic!("expected NotHyperbolic, got {other:?}"),
        }
    }

    #[test]
    fn classification_rejects_simply_truncated() {
        // {5,3,5}: hyperbolic, but A0's truncation numerator is positive.
        match build_gram(&params(5.0, 3.0, 5.0)) {
            Err(Error::NotDoublyTruncated { vertex: 0, witness }) => {
                assert!(witness < 0.0)
            }
            other => panic!("expected NotDoublyTruncated at A0, got {other:?}"),
        }
        // {3,4,8}: A3 fails while A0 is fine.
        assert!(matches!(
            build_gram(&params(3.0, 4.0, 8.0)),
            Err(Error::NotDoublyTruncated { vertex: 3, .. })
        ));
    }

    #[test]
    fn classification_guard_band() {
        // {7,3,6} has an exactly-zero truncation numerator for A0:
        // sin²(π/6) = cos²(π/3). The sign is pure rounding noise, so the
        // triple must be rejected as ambiguous, not classified.
        assert!(matches!(
            build_gram(&params(7.0, 3.0, 6.0)),
            Err(Error::AmbiguousClassification { .. })
        ));
    }

    #[test]
    fn gram_matches_frozen_anchors_737() {
        let g = build_gram(&params(7.0, 3.0, 7.0)).unwrap();
        assert!((g.determinant - -0.214_560_017_673_906_1).abs() < 1e-15);
        assert!((g.a[0][0] - 0.287_774_495_913_811_3).abs() < 1e-15);
        assert!((g.a[3][3] - 0.287_774_495_913_811_3).abs() < 1e-15);
        assert!((g.a[0][3] - -1.891_649_967_523_488).abs() < 1e-14);
        // u = w makes the inverse persymmetric exactly.
        assert_eq!(g.a[0][0], g.a[3][3]);
        assert_eq!(g.a[1][1], g.a[2][2]);
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        for (u, v, w) in [(7.0, 3.0, 7.0), (5.0, 4.0, 6.0), (3.0, 7.0, 3.0)] {
            let g = build_gram(&params(u, v, w)).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let mut entry = 0.0;
                    for k in 0..4 {
                        entry += g.a[i][k] * g.b[k][j];
                    }
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (entry - expected).abs() < 1e-12,
                        "(a·b)[{i}][{j}] = {entry} for {{{u},{v},{w}}}"
                    );
                }
            }
        }
    }

    #[test]
    fn truncation_points_lie_on_their_planes() {
        let g = build_gram(&params(5.0, 4.0, 6.0)).unwrap();
        let pts = truncation_points(&g);
        let a0 = FormPoint::basis(0);
        let a3 = FormPoint::basis(3);
        // C, L, H are orthogonal to a0 (they lie on A0's polar plane);
        // J, E, Q to a3.
        for p in [&pts.c, &pts.l, &pts.h] {
            assert!(p.inner(&a0, &g).abs() < 1e-12);
        }
        for p in [&pts.j, &pts.e, &pts.q] {
            assert!(p.inner(&a3, &g).abs() < 1e-12);
        }
        // Coefficient shape of C: a1 − (a01/a00) a0.
        assert_eq!(pts.c.coeffs[1], 1.0);
        assert!((pts.c.coeffs[0] - -g.a[0][1] / g.a[0][0]).abs() < 1e-15);
    }

    #[test]
    fn truncation_point_norms_match_frozen_values_545() {
        let g = build_gram(&params(5.0, 4.0, 5.0)).unwrap();
        let pts = truncation_points(&g);
        assert!((pts.j.norm_sq(&g) - -3.236_067_977_499_79).abs() < 1e-12);
        assert!((pts.c.norm_sq(&g) - -2.236_067_977_499_79).abs() < 1e-12);
    }

    #[test]
    fn point_distance_rejects_outer_vertices() {
        let g = build_gram(&params(7.0, 3.0, 7.0)).unwrap();
        let a0 = FormPoint::basis(0);
        let a1 = FormPoint::basis(1);
        assert!(matches!(
            point_distance(&a0, &a1, &g),
            Err(Error::Domain(_))
        ));
        // Distance of a proper point to itself is zero.
        assert_eq!(point_distance(&a1, &a1, &g).unwrap(), 0.0);
    }

    #[test]
    fn key_distances_match_frozen_anchors_737() {
        let g = build_gram(&params(7.0, 3.0, 7.0)).unwrap();
        let kd = key_distances(&g).unwrap();
        assert!((kd.d_a1c - 1.234_690_677_319_179).abs() < 1e-12);
        assert!((kd.d_a2q - 1.234_690_677_319_179).abs() < 1e-12);
        assert!((kd.d_jh - 2.570_338_069_399_635).abs() < 1e-12);
        assert!((kd.half_d_jh - 0.5 * kd.d_jh).abs() < 1e-16);
    }

    #[test]
    fn key_distances_swap_with_parameter_roles() {
        let kd = key_distances(&build_gram(&params(7.0, 3.0, 8.0)).unwrap()).unwrap();
        let kd_swapped =
            key_distances(&build_gram(&params(8.0, 3.0, 7.0)).unwrap()).unwrap();
        assert!((kd.d_a1c - kd_swapped.d_a2q).abs() < 1e-14);
        assert!((kd.d_a2q - kd_swapped.d_a1c).abs() < 1e-14);
        assert!((kd.d_jh - kd_swapped.d_jh).abs() < 1e-14);
    }

    #[test]
    fn areas_from_angle_defects() {
        let a = truncation_areas(&params(7.0, 3.0, 7.0)).unwrap();
        assert!((a.area0 - PI / 42.0).abs() < 1e-15);
        assert!((a.area3 - PI / 42.0).abs() < 1e-15);
        let a = truncation_areas(&params(4.0, 6.0, 5.0)).unwrap();
        assert!((a.area3 - PI / 12.0).abs() < 1e-15);
        // {7,3,6}: the A0 triangle degenerates (defect exactly 0), which
        // lands inside the guard band, as in the Gram classification.
        assert!(matches!(
            truncation_areas(&params(7.0, 3.0, 6.0)),
            Err(Error::AmbiguousClassification { .. })
        ));
        // Genuinely negative defects identify the offending vertex.
        assert!(matches!(
            truncation_areas(&params(5.0, 3.0, 5.0)),
            Err(Error::NotDoublyTruncated { vertex: 0, .. })
        ));
        assert!(matches!(
            truncation_areas(&params(3.0, 4.0, 8.0)),
            Err(Error::NotDoublyTruncated { vertex: 3, .. })
        ));
    }

    #[test]
    fn symmetry_witness_requires_u_equals_w() {
        let g = build_gram(&params(7.0, 3.0, 8.0)).unwrap();
        assert!(matches!(
            symmetry_witness(&g),
            Err(Error::SymmetryUnavailable { .. })
        ));

        let g = build_gram(&params(5.0, 4.0, 5.0)).unwrap();
        let (f03, f12) = symmetry_witness(&g).unwrap();
        assert!((f03.norm_sq(&g) - -1.619_916_172_405_254).abs() < 1e-12);
        assert!((f12.norm_sq(&g) - -5.530_739_765_733_532).abs() < 1e-12);
    }
}
