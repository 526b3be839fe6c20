//! Hyperball packing densities: two congruent hyperballs, a single
//! hyperball, and two non-congruent hyperballs, with optimizers and
//! exhaustive parameter scans.
//!
//! Every configuration places hyperball pieces over the two truncation
//! triangles of a doubly truncated orthoscheme; the packing density is
//! the covered fraction of the orthoscheme volume. The admissible
//! heights are governed by three distances ([`KeyDistances`]): each ball
//! may not swallow the opposite vertex of its truncation triangle
//! (`h0 ≤ d(A1,C)`, `h3 ≤ d(A2,Q)`) and the two balls may not overlap
//! along the common perpendicular of their base planes
//! (`h0 + h3 ≤ d(J,H)`).
//!
//! Because the piece volume grows strictly with height, optima always
//! sit on the boundary of that feasible triangle. The non-congruent
//! optimizer exploits this twice over, by two deliberately independent
//! routes — a walk of the one-parameter blow-up cases and a direct
//! search of the feasible boundary — and refuses to answer when the two
//! disagree.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::orthoscheme::{
    build_gram, key_distances, truncation_areas, SchlafliParams, TruncationAreas,
};
use crate::volume::{hyperball_piece_volume, orthoscheme_volume};
use crate::{Error, Result};

/// Sharpest known upper bound for sphere/horoball-type packings of
/// hyperbolic 3-space, the Böröczky–Florian density; the real-parameter
/// scan's optimum is compared against it.
pub const BOROCZKY_FLORIAN_BOUND: f64 = 0.85328;

/// Tolerance within which the two independent non-congruent optimizer
/// routes must agree.
const ROUTE_AGREEMENT_TOL: f64 = 1e-9;

/// Interval-width tolerance of the golden-section searches when the
/// caller does not specify one.
pub const DEFAULT_OPTIMIZER_TOL: f64 = 1e-10;

/// Slack allowed when checking feasibility of externally supplied height
/// configurations, so that boundary optima survive their own round trip.
const FEASIBILITY_SLACK: f64 = 1e-9;

/// Densities closer than this are considered tied and broken towards the
/// larger `h3`.
const DENSITY_TIE_TOL: f64 = 1e-12;

/// The admissible-height data of a triple: the three bounding distances
/// and the standard heights derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightProfile {
    /// Common height of two congruent hyperballs,
    /// `min(d(J,H)/2, d(A1,C), d(A2,Q))`.
    pub h: f64,
    /// Maximal height of a lone hyperball on π₀, `min(d(J,H), d(A1,C))`.
    pub h0: f64,
    /// Maximal height of a lone hyperball on π₃, `min(d(J,H), d(A2,Q))`.
    pub h3: f64,
    /// Distance from `A1` to the truncation vertex `C`.
    pub d_a1c: f64,
    /// Distance from `A2` to the truncation vertex `Q`.
    pub d_a2q: f64,
    /// Distance between the truncation planes along `A0A3`.
    pub d_jh: f64,
}

/// Computes the admissible-height profile of a triple.
///
/// # Errors
///
/// Classification errors from [`build_gram`] for triples outside the
/// doubly truncated regime.
pub fn height_profile(params: &SchlafliParams) -> Result<HeightProfile> {
    let gram = build_gram(params)?;
    let kd = key_distances(&gram)?;
    Ok(HeightProfile {
        h: kd.half_d_jh.min(kd.d_a1c).min(kd.d_a2q),
        h0: kd.d_jh.min(kd.d_a1c),
        h3: kd.d_jh.min(kd.d_a2q),
        d_a1c: kd.d_a1c,
        d_a2q: kd.d_a2q,
        d_jh: kd.d_jh,
    })
}

/// Which truncation plane a lone hyperball sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseVertex {
    /// The ball over the triangle truncating `A0`.
    A0,
    /// The ball over the triangle truncating `A3`.
    A3,
}

/// Packing configuration type of a [`DensityResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingMode {
    /// Two congruent hyperballs at the common height `h`.
    TwoCongruent,
    /// One hyperball at its maximal height; `base` records which of the
    /// two candidate balls won.
    OneHyperball {
        /// The winning base plane.
        base: BaseVertex,
    },
    /// Two hyperballs of independent heights.
    NonCongruent,
}

impl PackingMode {
    /// Canonical lower-snake name, as used in serialized records.
    pub fn as_str(&self) -> &'static str {
        match self {
            PackingMode::TwoCongruent => "two_congruent",
            PackingMode::OneHyperball { .. } => "one_hyperball",
            PackingMode::NonCongruent => "non_congruent",
        }
    }
}

/// Label of a one-parameter blow-up case (or the feasible corner).
///
/// Case 1 applies when the congruent height is pinned by the tangency
/// bound (`d(J,H)/2 ≤ d(A1,C)` for `u ≤ w`): the balls stay tangent
/// while one grows at the other's expense — `1a` grows the π₀ ball,
/// `1b` the π₃ ball. Case 2 applies when the congruent height is pinned
/// by `d(A1,C)`: `2a` grows the π₃ ball alone until it hits its own
/// bound or tangency, `2b` then slides along the tangency constraint.
/// `Corner` marks the configuration with both balls simultaneously at
/// their individual maxima, feasible when `d(A1,C) + d(A2,Q) ≤ d(J,H)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// Tangent pair, π₀ ball growing.
    OneA,
    /// Tangent pair, π₃ ball growing.
    OneB,
    /// π₀ ball maximal, π₃ ball growing freely.
    TwoA,
    /// π₀ ball maximal, then sliding along the tangency constraint.
    TwoB,
    /// Both balls at their individual maxima.
    Corner,
}

impl CaseLabel {
    /// Short label as used in serialized records: `1a`, `1b`, `2a`,
    /// `2b`, or `corner`.
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::OneA => "1a",
            CaseLabel::OneB => "1b",
            CaseLabel::TwoA => "2a",
            CaseLabel::TwoB => "2b",
            CaseLabel::Corner => "corner",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A concrete non-congruent height configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonCongruentConfig {
    /// Height of the ball on π₀.
    pub h0: f64,
    /// Height of the ball on π₃.
    pub h3: f64,
    /// Blow-up parameter along the case path that produced this
    /// configuration (0 when the configuration was given directly).
    pub x: f64,
    /// The case path (or `Corner`).
    pub case: CaseLabel,
}

/// One blow-up case: an affine path `x ↦ (h0, h3)` through height space,
/// feasible for `x ∈ [0, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowUpCase {
    /// Which case this is.
    pub label: CaseLabel,
    /// Largest admissible blow-up parameter.
    pub x_max: f64,
    /// Heights at `x = 0`.
    base: (f64, f64),
    /// Height change per unit of `x`.
    direction: (f64, f64),
}

impl BlowUpCase {
    /// Heights `(h0, h3)` at blow-up parameter `x`. Defined for all `x`;
    /// only `x ∈ [0, x_max]` stays feasible.
    pub fn heights(&self, x: f64) -> (f64, f64) {
        (
            self.base.0 + self.direction.0 * x,
            self.base.1 + self.direction.1 * x,
        )
    }
}

/// Heights carried by a [`DensityResult`]: the standard profile for the
/// congruent and one-ball modes, a concrete configuration for the
/// non-congruent mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Heights {
    /// Standard heights of the triple.
    Profile(HeightProfile),
    /// A specific non-congruent configuration.
    Config(NonCongruentConfig),
}

impl Heights {
    /// The height of the ball on π₀ actually used by the configuration.
    pub fn used_h0(&self) -> f64 {
        match self {
            Heights::Profile(p) => p.h0,
            Heights::Config(c) => c.h0,
        }
    }

    /// The height of the ball on π₃ actually used by the configuration.
    pub fn used_h3(&self) -> f64 {
        match self {
            Heights::Profile(p) => p.h3,
            Heights::Config(c) => c.h3,
        }
    }
}

/// A computed packing density together with everything that went into it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityResult {
    /// The parameter triple.
    pub params: SchlafliParams,
    /// Configuration type (and the winning ball for the one-ball mode).
    pub mode: PackingMode,
    /// The heights used.
    pub heights: Heights,
    /// Piece volumes of the π₀ and π₃ balls at their configured heights.
    /// For the one-ball mode these are the two *candidates*; the density
    /// counts only the winner.
    pub piece_volumes: (f64, f64),
    /// Volume of the orthoscheme.
    pub orthoscheme_volume: f64,
    /// Packing density; always in [0, 1), and zero only for the
    /// degenerate non-congruent configuration with both heights zero.
    pub density: f64,
}

/// Shared per-triple geometry for the density computations.
struct Geometry {
    profile: HeightProfile,
    areas: TruncationAreas,
    volume: f64,
}

fn geometry(params: &SchlafliParams) -> Result<Geometry> {
    Ok(Geometry {
        profile: height_profile(params)?,
        areas: truncation_areas(params)?,
        volume: orthoscheme_volume(params)?.value,
    })
}

/// Piece volumes of both balls at the given heights (clamping the tiny
/// negative heights that optimizer arithmetic can produce at interval
/// endpoints).
fn piece_pair(geo: &Geometry, h0: f64, h3: f64) -> (f64, f64) {
    let p0 = hyperball_piece_volume(geo.areas.area0, h0.max(0.0))
        .expect("piece volume with clamped height cannot fail");
    let p3 = hyperball_piece_volume(geo.areas.area3, h3.max(0.0))
        .expect("piece volume with clamped height cannot fail");
    (p0, p3)
}

/// Validates that a counted density is a genuine packing density.
///
/// Zero is admitted: the degenerate configuration with both heights
/// zero is a feasible (if uninteresting) packing of density 0.
fn checked_density(counted: f64, volume: f64, context: &str) -> Result<f64> {
    let density = counted / volume;
    if !(0.0..1.0).contains(&density) {
        return Err(Error::InternalInconsistency(format!(
            "{context}: density {density} is outside [0, 1)"
        )));
    }
    Ok(density)
}

/// Density of two congruent hyperballs at the common height `h`.
///
/// # Errors
///
/// Classification errors for triples outside the doubly truncated
/// regime; [`Error::InternalInconsistency`] if the computed density
/// leaves [0, 1).
pub fn density_two_congruent(params: &SchlafliParams) -> Result<DensityResult> {
    let geo = geometry(params)?;
    let (p0, p3) = piece_pair(&geo, geo.profile.h, geo.profile.h);
    let density = checked_density(p0 + p3, geo.volume, "two congruent hyperballs")?;
    Ok(DensityResult {
        params: *params,
        mode: PackingMode::TwoCongruent,
        heights: Heights::Profile(geo.profile),
        piece_volumes: (p0, p3),
        orthoscheme_volume: geo.volume,
        density,
    })
}

/// Density of the best single hyperball: each candidate ball is blown up
/// to its own maximal height and the larger piece wins.
///
/// # Errors
///
/// As for [`density_two_congruent`].
pub fn density_one_hyperball(params: &SchlafliParams) -> Result<DensityResult> {
    let geo = geometry(params)?;
    let (p0, p3) = piece_pair(&geo, geo.profile.h0, geo.profile.h3);
    // Ties (exactly symmetric triples) go to the π₃ ball.
    let (winner, base) = if p3 >= p0 {
        (p3, BaseVertex::A3)
    } else {
        (p0, BaseVertex::A0)
    };
    let density = checked_density(winner, geo.volume, "one hyperball")?;
    Ok(DensityResult {
        params: *params,
        mode: PackingMode::OneHyperball { base },
        heights: Heights::Profile(geo.profile),
        piece_volumes: (p0, p3),
        orthoscheme_volume: geo.volume,
        density,
    })
}

/// The blow-up cases applicable to a triple, in walk order.
///
/// For `u ≤ w` these are `[1a, 1b]` when the congruent height is pinned
/// by tangency and `[2a]` or `[2a, 2b]` when it is pinned by `d(A1,C)`
/// (`2b` only when its starting configuration is feasible, i.e.
/// `d(J,H) − h ≤ d(A2,Q)`). For `u > w` the cases are those of the
/// swapped triple `{w, v, u}` with the two height roles exchanged, so
/// that evaluating them on this triple gives configurations identical to
/// the swapped triple's up to the `0 ↔ 3` renaming.
///
/// # Errors
///
/// Classification errors for triples outside the doubly truncated
/// regime.
pub fn noncongruent_cases(params: &SchlafliParams) -> Result<Vec<BlowUpCase>> {
    if params.u() > params.w() {
        let mut cases = noncongruent_cases(&params.swapped())?;
        for case in &mut cases {
            case.base = (case.base.1, case.base.0);
            case.direction = (case.direction.1, case.direction.0);
        }
        return Ok(cases);
    }

    let profile = height_profile(params)?;
    let h = profile.h;
    let (d_a1c, d_a2q, d_jh) = (profile.d_a1c, profile.d_a2q, profile.d_jh);

    let mut cases = Vec::with_capacity(2);
    if 0.5 * d_jh <= d_a1c {
        // Case 1: tangent pair. Growing one ball shrinks the other.
        cases.push(BlowUpCase {
            label: CaseLabel::OneA,
            x_max: (d_a1c - h).min(h),
            base: (h, h),
            direction: (1.0, -1.0),
        });
        cases.push(BlowUpCase {
            label: CaseLabel::OneB,
            x_max: (d_a2q - h).min(h),
            base: (h, h),
            direction: (-1.0, 1.0),
        });
    } else {
        // Case 2: the π₀ ball already sits at its maximum d(A1,C) = h.
        cases.push(BlowUpCase {
            label: CaseLabel::TwoA,
            x_max: (d_a2q - h).min(d_jh - 2.0 * h),
            base: (h, h),
            direction: (0.0, 1.0),
        });
        // Once tangency is reached the pair can keep trading height, but
        // only if the tangent starting point itself is feasible.
        if d_jh - h <= d_a2q {
            cases.push(BlowUpCase {
                label: CaseLabel::TwoB,
                x_max: h.min(d_a2q - (d_jh - h)),
                base: (h, d_jh - h),
                direction: (-1.0, 1.0),
            });
        }
    }
    Ok(cases)
}

/// Density of a specific non-congruent configuration.
///
/// # Errors
///
/// - [`Error::Infeasible`] naming the violated constraint if the heights
///   leave the feasible region by more than a `1e-9` slack.
/// - Classification errors for triples outside the doubly truncated
///   regime.
pub fn density_noncongruent(
    params: &SchlafliParams,
    config: &NonCongruentConfig,
) -> Result<DensityResult> {
    let geo = geometry(params)?;
    let p = &geo.profile;
    let checks = [
        ("h0 >= 0", -config.h0, 0.0, config.h0),
        ("h0 <= d(A1,C)", config.h0 - p.d_a1c, p.d_a1c, config.h0),
        ("h3 >= 0", -config.h3, 0.0, config.h3),
        ("h3 <= d(A2,Q)", config.h3 - p.d_a2q, p.d_a2q, config.h3),
        (
            "h0 + h3 <= d(J,H)",
            config.h0 + config.h3 - p.d_jh,
            p.d_jh,
            config.h0 + config.h3,
        ),
    ];
    for (constraint, violation, bound, value) in checks {
        if violation > FEASIBILITY_SLACK {
            return Err(Error::Infeasible {
                constraint,
                value,
                bound,
            });
        }
    }

    let (p0, p3) = piece_pair(&geo, config.h0, config.h3);
    let density = checked_density(p0 + p3, geo.volume, "non-congruent pair")?;
    Ok(DensityResult {
        params: *params,
        mode: PackingMode::NonCongruent,
        heights: Heights::Config(*config),
        piece_volumes: (p0, p3),
        orthoscheme_volume: geo.volume,
        density,
    })
}

/// A candidate configuration seen by the optimizer.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    label: CaseLabel,
    x: f64,
    h0: f64,
    h3: f64,
    density: f64,
}

/// Whether `b` should replace `a`: strictly denser, or tied and with the
/// larger `h3` (the reporting convention for mirror-symmetric optima).
fn prefer(a: &Candidate, b: &Candidate) -> bool {
    if b.density > a.density + DENSITY_TIE_TOL {
        return true;
    }
    if a.density > b.density + DENSITY_TIE_TOL {
        return false;
    }
    b.h3 > a.h3
}

/// Golden-section maximization of `f` on `[lo, hi]` to interval width
/// `tol`. Returns the midpoint of the final bracket and its value.
fn golden_section_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Finds the densest non-congruent configuration of a triple.
///
/// Two independent routes are computed and must agree to `1e-9`:
///
/// 1. *Case walk*: each applicable blow-up case is maximized over its
///    parameter interval (both endpoints plus a golden-section pass —
///    the density is convex along the tangency constraint, so endpoint
///    evaluation, not the interior search, is the load-bearing step).
/// 2. *Boundary search*: the feasible corner `(d(A1,C), d(A2,Q))` when
///    it satisfies the tangency bound; otherwise the clipped tangency
///    segment `h0 + h3 = d(J,H)`, again endpoints plus golden section.
///
/// The reported configuration comes from the case walk (its `x` and
/// case label are meaningful); when it coincides with the feasible
/// corner it is relabeled [`CaseLabel::Corner`]. Exactly tied optima
/// (mirror images on symmetric triples) are reported with the larger
/// `h3`.
///
/// # Errors
///
/// - [`Error::InternalInconsistency`] if the two routes disagree.
/// - Classification errors for triples outside the doubly truncated
///   regime.
pub fn optimize_noncongruent(params: &SchlafliParams) -> Result<DensityResult> {
    optimize_noncongruent_with_tolerance(params, DEFAULT_OPTIMIZER_TOL)
}

/// [`optimize_noncongruent`] with an explicit golden-section
/// x-tolerance.
///
/// # Errors
///
/// As for [`optimize_noncongruent`], plus [`Error::Domain`] for a
/// non-positive or non-finite tolerance.
pub fn optimize_noncongruent_with_tolerance(
    params: &SchlafliParams,
    xtol: f64,
) -> Result<DensityResult> {
    if !(xtol.is_finite() && xtol > 0.0) {
        return Err(Error::Domain(format!(
            "optimizer tolerance must be positive, got {xtol}"
        )));
    }
    if params.u() > params.w() {
        // Work on the canonical orientation and swap the height roles
        // back; the distances and areas swap bitwise, so re-evaluating
        // the swapped configuration on the original triple is exact.
        let canonical = optimize_noncongruent_with_tolerance(&params.swapped(), xtol)?;
        let Heights::Config(cfg) = canonical.heights else {
            unreachable!("non-congruent optimum always carries a config");
        };
        let swapped_back = NonCongruentConfig {
            h0: cfg.h3,
            h3: cfg.h0,
            x: cfg.x,
            case: cfg.case,
        };
        return density_noncongruent(params, &swapped_back);
    }

    let geo = geometry(params)?;
    let objective = |h0: f64, h3: f64| {
        let (p0, p3) = piece_pair(&geo, h0, h3);
        (p0 + p3) / geo.volume
    };

    // Route 1: walk the blow-up cases.
    let cases = noncongruent_cases(params)?;
    let mut best: Option<Candidate> = None;
    for case in &cases {
        let f = |x: f64| {
            let (h0, h3) = case.heights(x);
            objective(h0, h3)
        };
        let mut xs = vec![0.0, case.x_max];
        if case.x_max > xtol {
            let (x_interior, _) = golden_section_max(&f, 0.0, case.x_max, xtol);
            xs.push(x_interior);
        }
        for x in xs {
            let (h0, h3) = case.heights(x);
            let candidate = Candidate {
                label: case.label,
                x,
                h0,
                h3,
                density: f(x),
            };
            if best.as_ref().is_none_or(|b| prefer(b, &candidate)) {
                best = Some(candidate);
            }
        }
    }
    let mut best = best.expect("at least one blow-up case always applies");

    // Route 2: search the feasible boundary directly.
    let p = &geo.profile;
    let boundary_density = if p.d_a1c + p.d_a2q <= p.d_jh {
        objective(p.d_a1c, p.d_a2q)
    } else {
        let lo = (p.d_jh - p.d_a2q).max(0.0);
        let hi = p.d_a1c.min(p.d_jh);
        let f = |h0: f64| objective(h0, p.d_jh - h0);
        let mut best_boundary = f(lo).max(f(hi));
        if hi - lo > xtol {
            let (_, interior) = golden_section_max(&f, lo, hi, xtol);
            best_boundary = best_boundary.max(interior);
        }
        best_boundary
    };

    if (best.density - boundary_density).abs() > ROUTE_AGREEMENT_TOL {
        return Err(Error::InternalInconsistency(format!(
            "non-congruent optimizer routes disagree for {{{}, {}, {}}}: \
             case walk found {:.12} (case {}, x = {:.12}), boundary search \
             found {:.12}",
            params.u(),
            params.v(),
            params.w(),
            best.density,
            best.label,
            best.x,
            boundary_density
        )));
    }

    // The walk landed on the both-balls-maximal corner: name it that.
    if (best.h0 - p.d_a1c).abs() <= 1e-12 && (best.h3 - p.d_a2q).abs() <= 1e-12 {
        best.label = CaseLabel::Corner;
    }

    density_noncongruent(
        params,
        &NonCongruentConfig {
            h0: best.h0,
            h3: best.h3,
            x: best.x,
            case: best.label,
        },
    )
}

/// Which density an integer scan ranks by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Two congruent hyperballs ([`density_two_congruent`]).
    TwoCongruent,
    /// Best single hyperball ([`density_one_hyperball`]).
    OneHyperball,
    /// Optimized non-congruent pair ([`optimize_noncongruent`]).
    NonCongruentOpt,
}

/// Exhaustive scan of integer triples over the given inclusive ranges.
///
/// Since `u` and `w` play symmetric roles, every triple is canonicalized
/// to `u ≤ w` and deduplicated before evaluation. Triples outside the
/// doubly truncated regime (including guard-band rejections) are
/// skipped; any other error aborts the scan. Evaluation runs in
/// parallel, then results are sorted by descending density with
/// lexicographic `(u, v, w)` tie-breaking, so the output order is
/// deterministic regardless of thread count.
///
/// # Errors
///
/// [`Error::EmptyScan`] if no triple in the ranges is valid; any
/// non-classification error from the per-triple evaluation.
pub fn scan_integer(
    mode: ScanMode,
    u_range: RangeInclusive<u32>,
    v_range: RangeInclusive<u32>,
    w_range: RangeInclusive<u32>,
) -> Result<Vec<DensityResult>> {
    let mut triples = BTreeSet::new();
    for u in u_range.clone() {
        for v in v_range.clone() {
            for w in w_range.clone() {
                let (lo, hi) = if u <= w { (u, w) } else { (w, u) };
                triples.insert((lo, v, hi));
            }
        }
    }
    let triples: Vec<_> = triples.into_iter().collect();

    let evaluated = triples
        .par_iter()
        .map(|&(u, v, w)| {
            let params = match SchlafliParams::new(f64::from(u), f64::from(v), f64::from(w)) {
                Ok(p) => p,
                Err(_) => return Ok(None),
            };
            let outcome = match mode {
                ScanMode::TwoCongruent => density_two_congruent(&params),
                ScanMode::OneHyperball => density_one_hyperball(&params),
                ScanMode::NonCongruentOpt => optimize_noncongruent(&params),
            };
            match outcome {
                Ok(result) => Ok(Some(result)),
                Err(e) if e.is_classification() => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut results: Vec<DensityResult> = evaluated.into_iter().flatten().collect();
    if results.is_empty() {
        return Err(Error::EmptyScan);
    }
    results.sort_by(|a, b| {
        b.density.total_cmp(&a.density).then_with(|| {
            let ka = (a.params.u(), a.params.v(), a.params.w());
            let kb = (b.params.u(), b.params.v(), b.params.w());
            ka.partial_cmp(&kb).expect("scan parameters are never NaN")
        })
    });
    Ok(results)
}

/// Number of pre-grid samples used to verify unimodality before the
/// golden-section refinement in [`scan_real_p`].
const REAL_P_GRID: usize = 200;

/// Optimizes the two-congruent density of the symmetric family
/// `{p, 3, p}` over real `p ∈ [p_lo, p_hi] ⊂ (6, 7]`.
///
/// A 200-point grid first verifies that the density profile has exactly
/// one local maximum on the interval — if not, the routine refuses to
/// optimize rather than silently return a local result — and a
/// golden-section search then refines the bracket around the grid
/// maximum to width `tol`. Returns `(p_opt, density)`.
///
/// # Errors
///
/// - [`Error::Domain`] unless `6 < p_lo < p_hi ≤ 7` and `tol > 0`.
/// - [`Error::InternalInconsistency`] if the pre-grid is not unimodal.
pub fn scan_real_p(p_lo: f64, p_hi: f64, tol: f64) -> Result<(f64, f64)> {
    if !p_lo.is_finite() || !p_hi.is_finite() || !(6.0 < p_lo && p_lo < p_hi && p_hi <= 7.0) {
        return Err(Error::Domain(format!(
            "real-p scan requires 6 < p_lo < p_hi <= 7, got [{p_lo}, {p_hi}]"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "real-p scan tolerance must be positive, got {tol}"
        )));
    }

    let delta = |p: f64| -> Result<f64> {
        Ok(density_two_congruent(&SchlafliParams::new(p, 3.0, p)?)?.density)
    };

    let step = (p_hi - p_lo) / (REAL_P_GRID - 1) as f64;
    let mut grid = Vec::with_capacity(REAL_P_GRID);
    for i in 0..REAL_P_GRID {
        let p = p_lo + step * i as f64;
        grid.push((p, delta(p)?));
    }

    let mut maxima = Vec::new();
    for i in 0..REAL_P_GRID {
        let rises_from_left = i == 0 || grid[i].1 > grid[i - 1].1;
        let falls_to_right = i == REAL_P_GRID - 1 || grid[i].1 > grid[i + 1].1;
        if rises_from_left && falls_to_right {
            maxima.push(i);
        }
    }
    if maxima.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "density profile on [{p_lo}, {p_hi}] is not unimodal: found {} \
             local maxima on the {REAL_P_GRID}-point pre-grid",
            maxima.len()
        )));
    }

    let i = maxima[0];
    let lo = grid[i.saturating_sub(1)].0;
    let hi = grid[(i + 1).min(REAL_P_GRID - 1)].0;
    // The bracket is interior to the validated range, so evaluation
    // cannot fail; the fallback only guards the type.
    let f = |p: f64| delta(p).unwrap_or(f64::NEG_INFINITY);
    let (p_opt, density) = golden_section_max(&f, lo, hi, tol);
    if !density.is_finite() {
        return Err(Error::InternalInconsistency(format!(
            "real-p refinement produced a non-finite density near p = {p_opt}"
        )));
    }
    Ok((p_opt, density))
}
