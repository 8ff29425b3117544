//! Local bifurcation structure in the `(Omega, I)` parameter plane.
//!
//! The trace and determinant of the Jacobian reduce to closed forms in the
//! equilibrium radius `zeta`, so the Hopf set (trace zero, determinant
//! positive), the saddle-node set (determinant zero), and their meeting
//! points (Bogdanov-Takens) all admit explicit parametrizations. This module
//! evaluates them, tags each Hopf branch with its criticality through the
//! first Lyapunov coefficient, traces the saddle-node locus both
//! parametrically and as the zero set of the equilibrium polynomial's
//! discriminant, and classifies the unforced (`I = 0`) system.

use alloc::vec;
use alloc::vec::Vec;

use crate::equilibria::equilibrium_polynomial;
use crate::model::{g_radial, NormParams, RawParams, State};
use crate::poly::RealPolynomial;

#[cfg(not(feature = "std"))]
use crate::math::FloatFuncs;

/// Tolerance for the exact-equality tests in the autonomous regime flags.
const REGIME_TOL: f64 = 1e-12;

/// Errors from bifurcation computations.
#[derive(Debug, Clone, PartialEq)]
pub enum BifurcationError {
    /// A parameter fell outside the region where the requested closed form
    /// exists.
    Domain {
        /// What failed.
        reason: &'static str,
        /// The offending value.
        value: f64,
    },
    /// The operation requires zero external input.
    InputDomain {
        /// The offending input value.
        input: f64,
    },
    /// A quantity was requested at a degenerate argument.
    Degenerate {
        /// What went wrong.
        reason: &'static str,
    },
}

impl core::fmt::Display for BifurcationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BifurcationError::Domain { reason, value } => write!(f, "{reason} (got {value})"),
            BifurcationError::InputDomain { input } => {
                write!(f, "operation requires zero input, got {input}")
            }
            BifurcationError::Degenerate { reason } => write!(f, "{reason}"),
        }
    }
}

impl core::error::Error for BifurcationError {}

/// The kind of bifurcation a point or curve sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BifurcationKind {
    /// Hopf with positive first Lyapunov coefficient: an unstable cycle
    /// shrinks onto the equilibrium.
    HopfSub,
    /// Hopf with negative first Lyapunov coefficient: a stable cycle is
    /// born.
    HopfSuper,
    /// Two equilibria collide and annihilate.
    SaddleNode,
    /// Codimension-two point where trace and determinant vanish together.
    BogdanovTakens,
    /// Saddle-node of limit cycles: a stable and an unstable cycle collide.
    Snlc,
}

/// Which root of the trace-zero quadratic a Hopf computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfBranch {
    /// The smaller radius, `(3 alpha - sqrt(9 alpha^2 - 32)) / 8`.
    Minus,
    /// The larger radius, `(3 alpha + sqrt(9 alpha^2 - 32)) / 8`.
    Plus,
}

/// Criticality of a degenerate-regime bifurcation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criticality {
    /// The bifurcating cycle is unstable.
    Subcritical,
    /// The bifurcating cycle is stable.
    Supercritical,
}

/// A single bifurcation point in parameter and phase space.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationPoint {
    /// What happens here.
    pub kind: BifurcationKind,
    /// Angular frequency coordinate.
    pub omega: f64,
    /// Input coordinate.
    pub input: f64,
    /// Phase-plane location of the involved equilibrium or cycle remnant.
    pub location: State,
    /// Radius of the involved equilibrium.
    pub zeta: f64,
}

/// One sample along a traced bifurcation curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// Angular frequency coordinate.
    pub omega: f64,
    /// Input coordinate.
    pub input: f64,
    /// Radius of the involved equilibrium.
    pub zeta: f64,
    /// Phase-plane location of the involved equilibrium.
    pub location: State,
}

/// An ordered polyline of samples tracing one branch of a bifurcation curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    /// The kind shared by every point of this branch.
    pub kind: BifurcationKind,
    /// The samples, ordered along the tracing parameter.
    pub points: Vec<CurvePoint>,
}

/// Degenerate coefficient patterns of the unforced system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegeneracyFlag {
    /// The linear radial coefficient vanishes: the origin changes stability.
    Hopf(Criticality),
    /// The radial quadratic has a double root: two cycles collide.
    DoubleCycle,
    /// Linear and quadratic radial coefficients vanish together.
    Bautin(Criticality),
}

/// Qualitative label for the unforced system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutonomousRegime {
    /// Stable origin coexisting with a stable cycle, separated by an
    /// unstable one: the system needs a kick to start oscillating.
    HardExcitation,
    /// Unstable origin surrounded by a stable cycle: oscillation is
    /// spontaneous.
    SelfOscillating,
    /// Stable origin and no cycles at all.
    Quiescent,
    /// At least one degeneracy flag is raised: the system sits on a
    /// bifurcation boundary.
    Degenerate,
    /// None of the clean patterns above applies.
    Mixed,
}

/// A limit cycle of the unforced system, known through its radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleRadius {
    /// Distance of the circular orbit from the origin.
    pub radius: f64,
    /// True when the radial flow contracts onto the cycle from both sides.
    pub stable: bool,
}

/// Classification of the unforced system.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    /// Qualitative regime.
    pub regime: AutonomousRegime,
    /// Whether the origin attracts.
    pub origin_stable: bool,
    /// All circular limit cycles, sorted by radius.
    pub cycles: Vec<CycleRadius>,
    /// Degeneracies detected at tolerance `1e-12`.
    pub flags: Vec<DegeneracyFlag>,
}

/// Portable square root (the `std` method or `libm`, whichever is enabled).
#[inline]
fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

/// The two equilibrium radii at which the Jacobian trace vanishes, smaller
/// first: `(3 alpha -/+ sqrt(9 alpha^2 - 32)) / 8`.
///
/// They exist only for `alpha >= 4 sqrt(2) / 3`; below that the trace is
/// negative at every radius and no Hopf bifurcation can occur.
pub fn hopf_zetas(alpha: f64) -> Result<(f64, f64), BifurcationError> {
    let disc = 9.0 * alpha * alpha - 32.0;
    if disc < 0.0 {
        return Err(BifurcationError::Domain {
            reason: "trace-zero radii require alpha >= 4 sqrt(2) / 3",
            value: alpha,
        });
    }
    let s = sqrt(disc);
    Ok(((3.0 * alpha - s) / 8.0, (3.0 * alpha + s) / 8.0))
}

/// The input at which the equilibrium of radius `zeta` undergoes the
/// trace-zero crossing, at the given frequency.
///
/// This is the positive square root of `zeta^2 (g(zeta)^2 + Omega^2)`, the
/// fixed-point identity solved for the input.
pub fn hopf_input(alpha: f64, omega: f64, zeta: f64) -> Result<f64, BifurcationError> {
    let g = g_radial(alpha, zeta);
    let i2 = zeta * zeta * (g * g + omega * omega);
    if i2 <= 0.0 {
        return Err(BifurcationError::Domain {
            reason: "the squared input must be positive",
            value: i2,
        });
    }
    Ok(sqrt(i2))
}

/// The minimal frequency above which the trace-zero point on the given
/// branch has positive determinant, i.e. is a genuine Hopf point rather than
/// a neutral saddle.
///
/// The threshold satisfies
///
/// ```text
/// Omega^2 = (9/512) alpha^4 + 1/4 - (1/8) alpha^2
///           -/+ ((3/512) alpha^3 - (1/32) alpha) sqrt(9 alpha^2 - 32)
/// ```
///
/// with the minus sign on [`HopfBranch::Minus`]. At the threshold itself the
/// determinant vanishes: that is the Bogdanov-Takens point of the branch.
pub fn hopf_validity_threshold(alpha: f64, branch: HopfBranch) -> Result<f64, BifurcationError> {
    let disc = 9.0 * alpha * alpha - 32.0;
    if disc < 0.0 {
        return Err(BifurcationError::Domain {
            reason: "trace-zero radii require alpha >= 4 sqrt(2) / 3",
            value: alpha,
        });
    }
    let even = 9.0 / 512.0 * alpha.powi(4) + 0.25 - alpha * alpha / 8.0;
    let odd = (3.0 / 512.0 * alpha.powi(3) - alpha / 32.0) * sqrt(disc);
    let omega2 = match branch {
        HopfBranch::Minus => even - odd,
        HopfBranch::Plus => even + odd,
    };
    if omega2 < 0.0 {
        return Err(BifurcationError::Domain {
            reason: "the squared frequency threshold is negative",
            value: omega2,
        });
    }
    Ok(sqrt(omega2))
}

/// First Lyapunov coefficient of the Hopf normal form at radius `zeta`:
/// `(1/16) (-16 + 3 alpha / zeta)`.
///
/// Positive means subcritical (an unstable cycle collapses onto the
/// equilibrium), negative supercritical (a stable cycle is born). It
/// vanishes exactly at `zeta = 3 alpha / 16`, where the criticality flips.
pub fn first_lyapunov(alpha: f64, zeta: f64) -> Result<f64, BifurcationError> {
    if !(zeta > 0.0) {
        return Err(BifurcationError::Degenerate {
            reason: "the first Lyapunov coefficient requires a positive radius",
        });
    }
    Ok((-16.0 + 3.0 * alpha / zeta) / 16.0)
}

/// Maps an equilibrium radius back to its phase-plane location for given
/// parameters. Valid whenever `zeta` satisfies the fixed-point identity at
/// `(alpha, omega, input)`.
pub(crate) fn location_of(alpha: f64, omega: f64, input: f64, zeta: f64) -> State {
    let y = omega * zeta * zeta / input;
    let x = -g_radial(alpha, zeta) * y / omega;
    State::new(x, y)
}

/// Both Hopf curves over a frequency range, minus branch first, each tagged
/// [`BifurcationKind::HopfSub`] or [`BifurcationKind::HopfSuper`] by the
/// sign of its first Lyapunov coefficient.
///
/// Each branch is sampled uniformly over the part of `omega_range` that lies
/// above its validity threshold; a branch whose validity window misses the
/// range entirely comes back with no points. Every sample carries the
/// equilibrium location.
pub fn hopf_curves(
    alpha: f64,
    omega_range: (f64, f64),
    n_samples: usize,
) -> Result<[CurveSample; 2], BifurcationError> {
    let (zeta_minus, zeta_plus) = hopf_zetas(alpha)?;
    let minus = hopf_branch_curve(alpha, omega_range, n_samples, HopfBranch::Minus, zeta_minus)?;
    let plus = hopf_branch_curve(alpha, omega_range, n_samples, HopfBranch::Plus, zeta_plus)?;
    Ok([minus, plus])
}

/// Samples one Hopf branch over the valid part of a frequency range.
fn hopf_branch_curve(
    alpha: f64,
    omega_range: (f64, f64),
    n_samples: usize,
    branch: HopfBranch,
    zeta: f64,
) -> Result<CurveSample, BifurcationError> {
    let a = first_lyapunov(alpha, zeta)?;
    let kind = if a >= 0.0 {
        BifurcationKind::HopfSub
    } else {
        BifurcationKind::HopfSuper
    };
    let threshold = hopf_validity_threshold(alpha, branch)?;
    // Strictly above the threshold: at it the determinant vanishes.
    let lo = omega_range.0.max(threshold * (1.0 + 1e-12) + 1e-300);
    let hi = omega_range.1;
    let mut points = Vec::new();
    if lo < hi && n_samples > 0 {
        for k in 0..n_samples {
            let frac = if n_samples == 1 {
                0.0
            } else {
                k as f64 / (n_samples - 1) as f64
            };
            let omega = lo + (hi - lo) * frac;
            let input = hopf_input(alpha, omega, zeta)?;
            points.push(CurvePoint {
                omega,
                input,
                zeta,
                location: location_of(alpha, omega, input, zeta),
            });
        }
    }
    Ok(CurveSample { kind, points })
}

/// All Hopf points at a fixed frequency: one per branch whose validity
/// threshold lies below `omega`.
pub fn hopf_points_at(alpha: f64, omega: f64) -> Result<Vec<BifurcationPoint>, BifurcationError> {
    let (zeta_minus, zeta_plus) = hopf_zetas(alpha)?;
    let mut out = Vec::new();
    for (branch, zeta) in [(HopfBranch::Minus, zeta_minus), (HopfBranch::Plus, zeta_plus)] {
        let threshold = hopf_validity_threshold(alpha, branch)?;
        if omega > threshold {
            let a = first_lyapunov(alpha, zeta)?;
            let kind = if a >= 0.0 {
                BifurcationKind::HopfSub
            } else {
                BifurcationKind::HopfSuper
            };
            let input = hopf_input(alpha, omega, zeta)?;
            out.push(BifurcationPoint {
                kind,
                omega,
                input,
                location: location_of(alpha, omega, input, zeta),
                zeta,
            });
        }
    }
    Ok(out)
}

/// Squared input along the saddle-node locus as a function of the fold
/// radius: `-2 zeta^6 + 3 alpha zeta^5 - (2 + alpha^2) zeta^4 + alpha zeta^3`.
fn saddle_node_input_squared(alpha: f64, zeta: f64) -> f64 {
    (((-2.0 * zeta + 3.0 * alpha) * zeta - (2.0 + alpha * alpha)) * zeta + alpha)
        * zeta
        * zeta
        * zeta
}

/// Squared frequency along the saddle-node locus as a function of the fold
/// radius: `-3 zeta^4 + 5 alpha zeta^3 - 2 (2 + alpha^2) zeta^2 + 3 alpha zeta - 1`.
fn saddle_node_omega_squared(alpha: f64, zeta: f64) -> f64 {
    (((-3.0 * zeta + 5.0 * alpha) * zeta - 2.0 * (2.0 + alpha * alpha)) * zeta + 3.0 * alpha)
        * zeta
        - 1.0
}

/// The fold-locus sample at one radius, if the squared frequency and input
/// are both positive there.
fn fold_point_at(alpha: f64, zeta: f64) -> Option<CurvePoint> {
    let omega2 = saddle_node_omega_squared(alpha, zeta);
    let input2 = saddle_node_input_squared(alpha, zeta);
    if omega2 > 0.0 && input2 > 0.0 {
        let omega = sqrt(omega2);
        let input = sqrt(input2);
        Some(CurvePoint {
            omega,
            input,
            zeta,
            location: location_of(alpha, omega, input, zeta),
        })
    } else {
        None
    }
}

/// Bisects the edge of the fold parametrization's validity window between a
/// valid and an invalid radius, returning the locus point just inside.
///
/// Both squared coordinates can vanish linearly at the window edge, which
/// turns a uniform radius step into a square-root-sized gap along the
/// curve; pinning the edge keeps traced branches complete to their ends.
fn fold_boundary_point(alpha: f64, valid: f64, invalid: f64) -> Option<CurvePoint> {
    let (mut inside, mut outside) = (valid, invalid);
    for _ in 0..80 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        let omega2 = saddle_node_omega_squared(alpha, mid);
        let input2 = saddle_node_input_squared(alpha, mid);
        if omega2 > 0.0 && input2 > 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    fold_point_at(alpha, inside)
}

/// The saddle-node (fold) locus, swept parametrically over the fold radius.
///
/// For each sampled `zeta` the closed forms give squared frequency and
/// squared input; a sample survives only when both are positive, and the
/// surviving runs are split into separate ordered branches wherever a gap
/// appears. Each branch is extended to the refined edge of its validity
/// window, so it ends on the locus boundary rather than at the last
/// surviving sample. Every sample has vanishing Jacobian determinant by
/// construction.
pub fn saddle_node_locus(alpha: f64, zeta_range: (f64, f64), n_samples: usize) -> Vec<CurveSample> {
    let mut branches = Vec::new();
    let mut current: Vec<CurvePoint> = Vec::new();
    let mut prev: Option<(f64, bool)> = None;
    for k in 0..n_samples {
        let frac = if n_samples <= 1 {
            0.0
        } else {
            k as f64 / (n_samples - 1) as f64
        };
        let zeta = zeta_range.0 + (zeta_range.1 - zeta_range.0) * frac;
        match fold_point_at(alpha, zeta) {
            Some(point) => {
                if let Some((zeta_prev, false)) = prev {
                    if let Some(edge) = fold_boundary_point(alpha, zeta, zeta_prev) {
                        current.push(edge);
                    }
                }
                current.push(point);
                prev = Some((zeta, true));
            }
            None => {
                if let Some((zeta_prev, true)) = prev {
                    if let Some(edge) = fold_boundary_point(alpha, zeta_prev, zeta) {
                        current.push(edge);
                    }
                    branches.push(CurveSample {
                        kind: BifurcationKind::SaddleNode,
                        points: core::mem::take(&mut current),
                    });
                }
                prev = Some((zeta, false));
            }
        }
    }
    if !current.is_empty() {
        branches.push(CurveSample {
            kind: BifurcationKind::SaddleNode,
            points: current,
        });
    }
    branches
}

/// The two Bogdanov-Takens points, minus branch first.
///
/// Each sits at the validity threshold of its Hopf branch — the frequency
/// where the determinant at the trace-zero radius crosses zero — with the
/// input given by the fixed-point identity.
pub fn bogdanov_takens(alpha: f64) -> Result<[BifurcationPoint; 2], BifurcationError> {
    let (zeta_minus, zeta_plus) = hopf_zetas(alpha)?;
    let mut out = [None, None];
    for (slot, (branch, zeta)) in [(HopfBranch::Minus, zeta_minus), (HopfBranch::Plus, zeta_plus)]
        .into_iter()
        .enumerate()
    {
        let omega = hopf_validity_threshold(alpha, branch)?;
        let input = hopf_input(alpha, omega, zeta)?;
        out[slot] = Some(BifurcationPoint {
            kind: BifurcationKind::BogdanovTakens,
            omega,
            input,
            location: location_of(alpha, omega, input, zeta),
            zeta,
        });
    }
    Ok([
        out[0].take().expect("minus branch filled"),
        out[1].take().expect("plus branch filled"),
    ])
}

/// Discriminant of the equilibrium polynomial at given parameters.
///
/// The polynomial has fixed degree six with unit leading coefficient, so the
/// discriminant always exists for `input > 0`.
fn equilibrium_discriminant(alpha: f64, omega: f64, input: f64) -> f64 {
    let p = NormParams::new(alpha, omega, input);
    let poly = equilibrium_polynomial(p).expect("positive input");
    poly.discriminant().expect("degree six")
}

/// Ternary-searches the extremum of the discriminant nearest zero on
/// `[a, b]`, for a stretch whose samples all have sign `s`.
fn discriminant_extremum(alpha: f64, omega: f64, mut a: f64, mut b: f64, s: f64) -> (f64, f64) {
    for _ in 0..48 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        let d1 = s * equilibrium_discriminant(alpha, omega, m1);
        let d2 = s * equilibrium_discriminant(alpha, omega, m2);
        if d1 > d2 {
            a = m1;
        } else {
            b = m2;
        }
    }
    let mid = 0.5 * (a + b);
    (mid, equilibrium_discriminant(alpha, omega, mid))
}

/// Refined zero crossings of the equilibrium-polynomial discriminant along
/// one frequency column.
///
/// Scans consecutive pairs of the ascending `input_grid` (non-positive
/// entries are skipped) for sign changes of the discriminant and bisects
/// each bracket down to an input width of `1e-6`. A pair of crossings
/// closer together than the grid spacing leaves no sign change at the
/// samples, only a dip in the magnitude; every sign-uniform dip is
/// therefore refined to its true extremum, and when that extremum lands on
/// the far side of zero the hidden pair is split out by bisecting each
/// flank. Each crossing carries the colliding double root as its radius,
/// recovered as the midpoint of the closest pair of polynomial roots.
pub fn discriminant_column(alpha: f64, omega: f64, input_grid: &[f64]) -> Vec<CurvePoint> {
    let samples: Vec<(f64, f64)> = input_grid
        .iter()
        .filter(|&&input| input > 0.0)
        .map(|&input| (input, equilibrium_discriminant(alpha, omega, input)))
        .collect();

    let mut inputs = Vec::new();
    for w in samples.windows(2) {
        let ((i0, d0), (i1, d1)) = (w[0], w[1]);
        if d0.signum() != d1.signum() {
            inputs.push(bisect_discriminant(alpha, omega, i0, d0, i1, d1));
        }
    }
    for w in samples.windows(3) {
        let ((i0, d0), (_, d1), (i2, d2)) = (w[0], w[1], w[2]);
        let s = d1.signum();
        if d0.signum() == s
            && d2.signum() == s
            && d1.abs() <= d0.abs()
            && d1.abs() <= d2.abs()
        {
            let (i_star, d_star) = discriminant_extremum(alpha, omega, i0, i2, s);
            if d_star.signum() != s && d_star != 0.0 {
                inputs.push(bisect_discriminant(alpha, omega, i0, d0, i_star, d_star));
                inputs.push(bisect_discriminant(alpha, omega, i_star, d_star, i2, d2));
            }
        }
    }
    inputs.sort_by(f64::total_cmp);

    inputs
        .into_iter()
        .map(|input_star| {
            let zeta = colliding_radius(alpha, omega, input_star);
            CurvePoint {
                omega,
                input: input_star,
                zeta,
                location: location_of(alpha, omega, input_star, zeta),
            }
        })
        .collect()
}

/// Bisects a sign-changing bracket of the discriminant down to `1e-6` width.
fn bisect_discriminant(
    alpha: f64,
    omega: f64,
    mut lo: f64,
    mut d_lo: f64,
    mut hi: f64,
    _d_hi: f64,
) -> f64 {
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        let d_mid = equilibrium_discriminant(alpha, omega, mid);
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The radius at which two equilibria are colliding, recovered as the
/// midpoint of the closest pair of polynomial roots with positive real part.
pub(crate) fn colliding_radius(alpha: f64, omega: f64, input: f64) -> f64 {
    let p = NormParams::new(alpha, omega, input);
    let poly = equilibrium_polynomial(p).expect("positive input");
    let roots = poly.roots().expect("degree six");
    let mut best = f64::INFINITY;
    let mut zeta = f64::NAN;
    for i in 0..roots.len() {
        if roots[i].re <= 1e-9 {
            continue;
        }
        for j in i + 1..roots.len() {
            if roots[j].re <= 1e-9 {
                continue;
            }
            let d = roots[i] - roots[j];
            let dist = d.re.hypot(d.im);
            if dist < best {
                best = dist;
                zeta = 0.5 * (roots[i].re + roots[j].re);
            }
        }
    }
    zeta
}

/// The zero set of the equilibrium-polynomial discriminant over a parameter
/// grid, assembled into polylines.
///
/// Each frequency column is scanned and refined by [`discriminant_column`];
/// crossings in adjacent columns are chained into a polyline when their
/// inputs differ by at most three grid spacings. The order of `omega_grid`
/// is normalized to ascending first. Empty grids yield an empty result.
pub fn discriminant_locus(
    alpha: f64,
    omega_grid: &[f64],
    input_grid: &[f64],
) -> Vec<CurveSample> {
    let mut omegas: Vec<f64> = omega_grid.to_vec();
    omegas.sort_by(|a, b| a.partial_cmp(b).expect("grid values are finite"));
    let columns = omegas
        .iter()
        .map(|&omega| discriminant_column(alpha, omega, input_grid))
        .collect();
    chain_discriminant_columns(columns, input_grid)
}

/// Chains per-column discriminant crossings into polylines, exactly as
/// [`discriminant_locus`] does after its scan.
///
/// The columns must be ordered by ascending frequency, each holding the
/// crossings of one [`discriminant_column`] call; callers that compute the
/// columns concurrently can hand them over here once assembled in order.
/// `input_grid` is the grid the columns were scanned on: its largest
/// spacing bounds how far crossings may drift between adjacent columns and
/// still join one polyline.
pub fn chain_discriminant_columns(
    columns: Vec<Vec<CurvePoint>>,
    input_grid: &[f64],
) -> Vec<CurveSample> {
    let max_spacing = input_grid
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    let adjacency = 3.0 * max_spacing;

    let mut closed: Vec<Vec<CurvePoint>> = Vec::new();
    // Polylines still open for extension, keyed by the input of their last
    // point.
    let mut open: Vec<Vec<CurvePoint>> = Vec::new();
    for crossings in columns {
        let mut extended = vec![false; open.len()];
        let mut next_open: Vec<Vec<CurvePoint>> = Vec::new();
        for point in crossings {
            // Attach to the nearest still-unextended open polyline.
            let mut best: Option<(usize, f64)> = None;
            for (idx, line) in open.iter().enumerate() {
                if extended[idx] {
                    continue;
                }
                let gap = (line.last().expect("open lines are nonempty").input - point.input).abs();
                if gap <= adjacency && best.map_or(true, |(_, g)| gap < g) {
                    best = Some((idx, gap));
                }
            }
            match best {
                Some((idx, _)) => {
                    extended[idx] = true;
                    let mut line = core::mem::take(&mut open[idx]);
                    line.push(point);
                    next_open.push(line);
                }
                None => next_open.push(vec![point]),
            }
        }
        for (idx, line) in open.into_iter().enumerate() {
            if !line.is_empty() && !extended[idx] {
                closed.push(line);
            }
        }
        open = next_open;
    }
    closed.extend(open.into_iter().filter(|l| !l.is_empty()));
    closed
        .into_iter()
        .map(|points| CurveSample {
            kind: BifurcationKind::SaddleNode,
            points,
        })
        .collect()
}

/// Classifies the unforced system from its raw coefficients.
///
/// The radial dynamics factor through `r (sigma0 + sigma1 r + sigma2 r^2)`:
/// positive roots of the quadratic factor are circular limit cycles, stable
/// exactly when the derivative of the radial flow is negative there.
/// Coefficient degeneracies are flagged at tolerance `1e-12`: a vanishing
/// `sigma0` (origin changing stability), a double root of the quadratic
/// (cycle collision), and `sigma0 = sigma1 = 0` with `sigma2` nonzero (the
/// codimension-two case). Requires zero external input; with input the
/// equilibrium analysis takes over.
pub fn autonomous_regime(raw: RawParams) -> Result<RegimeReport, BifurcationError> {
    if raw.input0 != 0.0 {
        return Err(BifurcationError::InputDomain { input: raw.input0 });
    }
    let (s0, s1, s2) = (raw.sigma0, raw.sigma1, raw.sigma2);

    let mut flags = Vec::new();
    let bautin = s0.abs() <= REGIME_TOL && s1.abs() <= REGIME_TOL && s2 != 0.0;
    if bautin {
        flags.push(DegeneracyFlag::Bautin(if s2 < 0.0 {
            Criticality::Supercritical
        } else {
            Criticality::Subcritical
        }));
    } else if s0.abs() <= REGIME_TOL {
        flags.push(DegeneracyFlag::Hopf(if s1 > 0.0 {
            Criticality::Subcritical
        } else {
            Criticality::Supercritical
        }));
    }
    if (s1 * s1 - 4.0 * s0 * s2).abs() <= REGIME_TOL && s1 >= 0.0 && !bautin {
        flags.push(DegeneracyFlag::DoubleCycle);
    }

    // Positive roots of the radial quadratic are the cycle radii; a root is
    // stable when d/dr [r (s0 + s1 r + s2 r^2)] < 0 there.
    let quad = RealPolynomial::new(&[s0, s1, s2]);
    let mut cycles: Vec<CycleRadius> = Vec::new();
    if !quad.is_zero() && quad.degree() != Some(0) {
        let mut radii: Vec<f64> = quad
            .roots()
            .map_err(|_| BifurcationError::Degenerate {
                reason: "radial quadratic root finding failed",
            })?
            .iter()
            .filter(|z| z.im.abs() <= 1e-9 && z.re > 1e-12)
            .map(|z| z.re)
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).expect("radii are finite"));
        radii.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + a.abs()));
        for r in radii {
            let flow_derivative = s0 + 2.0 * s1 * r + 3.0 * s2 * r * r;
            cycles.push(CycleRadius {
                radius: r,
                stable: flow_derivative < 0.0,
            });
        }
    }

    let origin_stable = s0 < 0.0;
    let regime = if !flags.is_empty() {
        AutonomousRegime::Degenerate
    } else if origin_stable && cycles.len() == 2 && !cycles[0].stable && cycles[1].stable {
        AutonomousRegime::HardExcitation
    } else if !origin_stable && cycles.iter().any(|c| c.stable) {
        AutonomousRegime::SelfOscillating
    } else if origin_stable && cycles.is_empty() {
        AutonomousRegime::Quiescent
    } else {
        AutonomousRegime::Mixed
    };

    Ok(RegimeReport {
        regime,
        origin_stable,
        cycles,
        flags,
    })
}
