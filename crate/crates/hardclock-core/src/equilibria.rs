//! Rest points of the forced oscillator and their linear stability.
//!
//! Equilibria are found through a radial reduction: writing `zeta` for the
//! distance of a rest point from the origin, the fixed-point conditions
//! collapse to a single degree-six polynomial in `zeta` whose positive real
//! roots enumerate all equilibria. Each root is mapped back to phase-plane
//! coordinates in closed form, and the Jacobian there yields trace,
//! determinant, eigenvalues, and a stability class.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::model::{g_radial, vector_field, NormParams, State};
use crate::poly::{PolyError, RealPolynomial};

#[cfg(not(feature = "std"))]
use crate::math::FloatFuncs;

/// Roots of the radial polynomial with imaginary part above this threshold
/// are treated as genuinely complex and discarded.
const IMAG_TOL: f64 = 1e-7;

/// Roots at or below this radius are numerical artifacts of the `zeta = 0`
/// double root of the unforced system and are discarded.
const RADIUS_FLOOR: f64 = 1e-9;

/// Trace and determinant magnitudes at or below this are treated as zero
/// when deciding hyperbolicity.
const HYPERBOLICITY_TOL: f64 = 1e-9;

/// Errors from equilibrium computations.
#[derive(Debug, Clone, PartialEq)]
pub enum EquilibriaError {
    /// The requested input does not drive the system: the radial reduction
    /// needs `I > 0`.
    InputDomain {
        /// The offending input value.
        input: f64,
    },
    /// A geometric precondition failed (zero radius where a positive one is
    /// required).
    Degenerate {
        /// What went wrong.
        reason: &'static str,
    },
    /// Root finding on the radial polynomial failed.
    Poly(PolyError),
}

impl From<PolyError> for EquilibriaError {
    fn from(e: PolyError) -> Self {
        EquilibriaError::Poly(e)
    }
}

impl core::fmt::Display for EquilibriaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EquilibriaError::InputDomain { input } => {
                write!(f, "input {input} is outside the domain (requires I > 0)")
            }
            EquilibriaError::Degenerate { reason } => write!(f, "{reason}"),
            EquilibriaError::Poly(e) => write!(f, "radial polynomial failure: {e}"),
        }
    }
}

impl core::error::Error for EquilibriaError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            EquilibriaError::Poly(e) => Some(e),
            _ => None,
        }
    }
}

/// Linear stability class of a rest point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityKind {
    /// Real negative eigenvalues.
    StableNode,
    /// Complex eigenvalues with negative real part.
    StableFocus,
    /// Real positive eigenvalues.
    UnstableNode,
    /// Complex eigenvalues with positive real part.
    UnstableFocus,
    /// Real eigenvalues of opposite sign.
    Saddle,
    /// Trace or determinant too close to zero to call: a bifurcation is at
    /// hand.
    NonHyperbolic,
}

/// A rest point of the forced system together with its linearization.
#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    /// Horizontal coordinate.
    pub x: f64,
    /// Vertical coordinate.
    pub y: f64,
    /// Distance from the origin (the radial root this point came from).
    pub zeta: f64,
    /// Trace of the Jacobian.
    pub trace: f64,
    /// Determinant of the Jacobian.
    pub det: f64,
    /// Both eigenvalues of the Jacobian, ordered by real part then imaginary
    /// part; complex pairs are exact conjugates.
    pub eig: [Complex64; 2],
    /// Stability classification derived from trace and determinant.
    pub kind: StabilityKind,
}

impl Equilibrium {
    /// The phase-plane location as a [`State`].
    pub fn state(&self) -> State {
        State::new(self.x, self.y)
    }
}

/// The degree-six polynomial whose positive real roots are the distances of
/// all equilibria from the origin, with coefficients in ascending order.
///
/// Squaring the fixed-point condition eliminates the angle and leaves
///
/// ```text
/// zeta^6 - 2 alpha zeta^5 + (alpha^2 + 2) zeta^4 - 2 alpha zeta^3
///     + (1 + Omega^2) zeta^2 - I^2 = 0,
/// ```
///
/// equivalently `zeta^2 (g(zeta)^2 + Omega^2) = I^2` with the radial growth
/// rate `g`. Requires `I > 0`: without input the equilibrium set changes
/// character (the origin is always a rest point) and the reduction breaks
/// down.
pub fn equilibrium_polynomial(p: NormParams) -> Result<RealPolynomial, EquilibriaError> {
    if !(p.input > 0.0) {
        return Err(EquilibriaError::InputDomain { input: p.input });
    }
    Ok(RealPolynomial::new(&[
        -p.input * p.input,
        0.0,
        1.0 + p.omega * p.omega,
        -2.0 * p.alpha,
        p.alpha * p.alpha + 2.0,
        -2.0 * p.alpha,
        1.0,
    ]))
}

/// All equilibria for the given parameters, sorted by distance from the
/// origin.
///
/// Solves the radial polynomial, keeps roots that are real (imaginary part
/// at most `1e-7`) and positive (above `1e-9`), and maps each radius back to
/// the plane via
///
/// ```text
/// y = Omega zeta^2 / I,    x = -g(zeta) y / Omega.
/// ```
///
/// For positive input every equilibrium has `y > 0`. Requires `I > 0`.
pub fn find_equilibria(p: NormParams) -> Result<Vec<Equilibrium>, EquilibriaError> {
    let poly = equilibrium_polynomial(p)?;
    let roots = poly.roots()?;
    let mut zetas: Vec<f64> = roots
        .iter()
        .filter(|z| z.im.abs() <= IMAG_TOL && z.re > RADIUS_FLOOR)
        .map(|z| z.re)
        .collect();
    zetas.sort_by(|a, b| a.partial_cmp(b).expect("radii are finite"));
    let mut out = Vec::with_capacity(zetas.len());
    for zeta in zetas {
        let y = p.omega * zeta * zeta / p.input;
        let x = -g_radial(p.alpha, zeta) * y / p.omega;
        let state = State::new(x, y);
        let jac = jacobian(p, state)?;
        let trace = jac[0][0] + jac[1][1];
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let eig = eigenvalues(trace, det);
        let kind = classify(trace, det);
        out.push(Equilibrium {
            x,
            y,
            zeta,
            trace,
            det,
            eig,
            kind,
        });
    }
    Ok(out)
}

/// Jacobian of the vector field at a point away from the origin.
///
/// With `r` the radius, `g = g(r)` the radial growth rate, and
/// `h = alpha / r - 2` the radial derivative factor,
///
/// ```text
/// J = [ g + x^2 h    x y h - Omega ]
///     [ x y h + Omega    g + y^2 h ]
/// ```
///
/// The origin is excluded because `h` diverges there.
pub fn jacobian(p: NormParams, s: State) -> Result<[[f64; 2]; 2], EquilibriaError> {
    let r = s.radius();
    if r == 0.0 {
        return Err(EquilibriaError::Degenerate {
            reason: "the Jacobian requires a point away from the origin",
        });
    }
    let g = g_radial(p.alpha, r);
    let h = p.alpha / r - 2.0;
    Ok([
        [g + s.x * s.x * h, s.x * s.y * h - p.omega],
        [s.x * s.y * h + p.omega, g + s.y * s.y * h],
    ])
}

/// Jacobian trace at an equilibrium of radius `zeta`, in closed form:
/// `-4 zeta^2 + 3 alpha zeta - 2`.
///
/// Valid at equilibrium radii only; elsewhere it differs from the trace of
/// [`jacobian`].
pub fn trace_zeta(alpha: f64, zeta: f64) -> f64 {
    -4.0 * zeta * zeta + 3.0 * alpha * zeta - 2.0
}

/// Jacobian determinant at an equilibrium of radius `zeta`, in closed form:
/// `I^2 / zeta^2 + zeta g(zeta) (alpha - 2 zeta)`.
///
/// Uses the fixed-point identity `zeta^2 (g^2 + Omega^2) = I^2`, so it is
/// valid at equilibrium radii only. Requires `zeta > 0`.
pub fn det_zeta(p: NormParams, zeta: f64) -> Result<f64, EquilibriaError> {
    if !(zeta > 0.0) {
        return Err(EquilibriaError::Degenerate {
            reason: "the determinant reduction requires a positive radius",
        });
    }
    let g = g_radial(p.alpha, zeta);
    Ok(p.input * p.input / (zeta * zeta) + zeta * g * (p.alpha - 2.0 * zeta))
}

/// Stability class from the trace and determinant of a 2x2 Jacobian.
///
/// A saddle has negative determinant; positive determinant splits into
/// stable/unstable by the sign of the trace and node/focus by the sign of
/// `trace^2 - 4 det`. Determinant magnitude at most `1e-9`, or trace
/// magnitude at most `1e-9` with positive determinant, is reported as
/// [`StabilityKind::NonHyperbolic`].
pub fn classify(trace: f64, det: f64) -> StabilityKind {
    if det.abs() <= HYPERBOLICITY_TOL || (trace.abs() <= HYPERBOLICITY_TOL && det > 0.0) {
        return StabilityKind::NonHyperbolic;
    }
    if det < 0.0 {
        return StabilityKind::Saddle;
    }
    let disc = trace * trace - 4.0 * det;
    match (disc < 0.0, trace < 0.0) {
        (true, true) => StabilityKind::StableFocus,
        (true, false) => StabilityKind::UnstableFocus,
        (false, true) => StabilityKind::StableNode,
        (false, false) => StabilityKind::UnstableNode,
    }
}

/// Eigenvalues of a 2x2 matrix from its trace and determinant, ordered by
/// real part then imaginary part.
fn eigenvalues(trace: f64, det: f64) -> [Complex64; 2] {
    let disc = trace * trace - 4.0 * det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        [
            Complex64::new(0.5 * (trace - s), 0.0),
            Complex64::new(0.5 * (trace + s), 0.0),
        ]
    } else {
        let s = 0.5 * (-disc).sqrt();
        [
            Complex64::new(0.5 * trace, -s),
            Complex64::new(0.5 * trace, s),
        ]
    }
}

/// Residual of the vector field at a state; zero at a true equilibrium.
pub fn field_residual(p: NormParams, s: State) -> f64 {
    let (fx, fy) = vector_field(p, s);
    fx.hypot(fy)
}
