//! Oscillator parameters, normalization, and the planar vector field.
//!
//! The raw oscillator is `z' = (σ0 + jΩ0)z + σ1|z|z + σ2|z|²z + I0` with
//! `z = x + jy`. Rescaling state by `√(|σ0|/|σ2|)` and time by `1/|σ0|`
//! reduces it to the three-parameter family
//!
//! ```text
//! x' = g·x − Ω·y + I        g = −1 + α·√(x²+y²) − (x²+y²)
//! y' = g·y + Ω·x
//! ```
//!
//! which is the only representation the rest of the crate works with.

use core::fmt;

#[cfg(not(feature = "std"))]
use crate::math::FloatFuncs;

/// Coefficients of the unscaled oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    /// Linear radial rate σ0 (negative in the hard-excitation regime).
    pub sigma0: f64,
    /// Quadratic radial coefficient σ1 (positive in the hard-excitation regime).
    pub sigma1: f64,
    /// Cubic radial coefficient σ2 (negative in the hard-excitation regime).
    pub sigma2: f64,
    /// Angular frequency Ω0 > 0.
    pub omega0: f64,
    /// Constant external input amplitude I0.
    pub input0: f64,
}

impl RawParams {
    /// Bundles the five coefficients without validation.
    pub fn new(sigma0: f64, sigma1: f64, sigma2: f64, omega0: f64, input0: f64) -> Self {
        Self { sigma0, sigma1, sigma2, omega0, input0 }
    }

    /// True iff the coefficients put the autonomous system in the
    /// hard-excitation regime: a stable origin coexisting with a stable
    /// limit cycle, separated by an unstable one. Requires
    /// σ1² − 4σ0σ2 > 0 together with σ1 > 0, σ2 < 0, σ0 < 0.
    pub fn is_hard_excitation(&self) -> bool {
        self.sigma1 * self.sigma1 - 4.0 * self.sigma0 * self.sigma2 > 0.0
            && self.sigma1 > 0.0
            && self.sigma2 < 0.0
            && self.sigma0 < 0.0
    }
}

/// The rescaled parameter triple (α, Ω, I) driving every computation.
///
/// When produced by [`normalize`] from hard-excitation [`RawParams`], α > 2
/// is guaranteed. Direct construction is unchecked so the neighborhood of
/// that regime (α near 2, degenerate cases) remains reachable in analyses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormParams {
    /// Rescaled quadratic coefficient α = σ1/√(σ0σ2).
    pub alpha: f64,
    /// Rescaled angular frequency Ω = Ω0/|σ0| > 0.
    pub omega: f64,
    /// Rescaled input I ≥ 0.
    pub input: f64,
}

impl NormParams {
    /// Bundles the rescaled triple without validation.
    pub fn new(alpha: f64, omega: f64, input: f64) -> Self {
        Self { alpha, omega, input }
    }
}

/// A point of the phase plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    /// Horizontal coordinate.
    pub x: f64,
    /// Vertical coordinate.
    pub y: f64,
}

impl State {
    /// Builds a point from its coordinates.
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Distance from the origin, computed robustly.
    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Error raised when raw coefficients fall outside the analyzed regime.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    /// The sign pattern or the cycle-existence inequality σ1²−4σ0σ2 > 0
    /// fails; the rescaled system assumes sgn σ0 = sgn σ2 = −1 and σ1 > 0.
    Regime {
        /// Linear radial coefficient that was supplied.
        sigma0: f64,
        /// Quadratic radial coefficient that was supplied.
        sigma1: f64,
        /// Cubic radial coefficient that was supplied.
        sigma2: f64,
    },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Regime { sigma0, sigma1, sigma2 } => write!(
                f,
                "coefficients (σ0, σ1, σ2) = ({sigma0}, {sigma1}, {sigma2}) are not in the \
                 hard-excitation regime (need σ0 < 0, σ1 > 0, σ2 < 0, σ1²−4σ0σ2 > 0)"
            ),
        }
    }
}

impl core::error::Error for ModelError {}

/// Rescale raw coefficients to the normalized triple (α, Ω, I).
///
/// α = σ1/√|σ0σ2|, Ω = Ω0/|σ0|, I = √|σ2/σ0|·I0/|σ0|. The rescaling is
/// valid only in the hard-excitation regime, which also forces α > 2.
/// A negative I0 is accepted: the system is invariant under
/// (z, I0) → (−z, −I0), so the input is reported as |I| with the state
/// reflection left to the caller.
pub fn normalize(raw: RawParams) -> Result<NormParams, ModelError> {
    if !raw.is_hard_excitation() {
        return Err(ModelError::Regime {
            sigma0: raw.sigma0,
            sigma1: raw.sigma1,
            sigma2: raw.sigma2,
        });
    }
    let s0 = raw.sigma0.abs();
    let s2 = raw.sigma2.abs();
    let alpha = raw.sigma1 / (s0 * s2).sqrt();
    let omega = raw.omega0 / s0;
    let input = ((s2 / s0).sqrt() * raw.input0 / s0).abs();
    Ok(NormParams { alpha, omega, input })
}

/// The radial factor g as a function of distance r from the origin:
/// g(r) = −1 + α·r − r².
pub fn g_radial(alpha: f64, r: f64) -> f64 {
    -1.0 + alpha * r - r * r
}

/// Right-hand side (dx/dt, dy/dt) of the normalized system at `s`.
///
/// Continuous everywhere: g is bounded near the origin and multiplies x
/// and y, so no special casing is needed at r = 0.
pub fn vector_field(p: NormParams, s: State) -> (f64, f64) {
    let g = g_radial(p.alpha, s.radius());
    (g * s.x - p.omega * s.y + p.input, g * s.y + p.omega * s.x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_identity_scaling() {
        let p = normalize(RawParams::new(-1.0, 3.0, -1.0, 1.0, 0.5)).unwrap();
        assert_eq!(p, NormParams::new(3.0, 1.0, 0.5));
    }

    #[test]
    fn normalize_rescales_each_parameter() {
        let p = normalize(RawParams::new(-4.0, 6.0, -1.0, 1.0, 2.0)).unwrap();
        assert!((p.alpha - 3.0).abs() < 1e-15);
        assert!((p.omega - 0.25).abs() < 1e-15);
        assert!((p.input - 0.25).abs() < 1e-15);
    }

    #[test]
    fn normalize_rejects_soft_regime() {
        // σ1²−4σ0σ2 = 1−4 = −3 < 0: no cycle pair exists.
        let err = normalize(RawParams::new(-1.0, 1.0, -1.0, 1.0, 0.0)).unwrap_err();
        assert!(matches!(err, ModelError::Regime { .. }));
    }

    #[test]
    fn normalize_takes_input_magnitude() {
        let pos = normalize(RawParams::new(-1.0, 3.0, -1.0, 1.0, 0.5)).unwrap();
        let neg = normalize(RawParams::new(-1.0, 3.0, -1.0, 1.0, -0.5)).unwrap();
        assert_eq!(pos, neg);
    }

    #[test]
    fn field_at_origin_is_the_input() {
        let p = NormParams::new(3.0, 1.0, 0.5);
        let (dx, dy) = vector_field(p, State::new(0.0, 0.0));
        assert_eq!((dx, dy), (0.5, 0.0));
    }

    #[test]
    fn field_on_invariant_circle_is_tangential() {
        // r = (3+√5)/2 is a root of g(r) = 0, so the flow is purely angular.
        let p = NormParams::new(3.0, 1.0, 0.0);
        let r = (3.0 + 5.0_f64.sqrt()) / 2.0;
        let (dx, dy) = vector_field(p, State::new(r, 0.0));
        assert!(dx.abs() < 1e-12);
        assert!((dy - p.omega * r).abs() < 1e-12);
    }

    #[test]
    fn field_nearly_vanishes_at_reported_saddle_node() {
        // Published coordinates of the saddle-node reached at I ≈ 0.654 are
        // rounded; the residual is small but not tiny.
        let p = NormParams::new(3.0, 0.25, 0.654);
        let (dx, dy) = vector_field(p, State::new(-0.1368, 2.6066));
        assert!(dx.abs() < 2e-2, "dx = {dx}");
        assert!(dy.abs() < 2e-2, "dy = {dy}");
    }

    #[test]
    fn g_radial_values() {
        assert_eq!(g_radial(3.0, 2.0), 1.0);
        let r1 = (3.0 - 5.0_f64.sqrt()) / 2.0;
        let r2 = (3.0 + 5.0_f64.sqrt()) / 2.0;
        assert!(g_radial(3.0, r1).abs() < 1e-15);
        assert!(g_radial(3.0, r2).abs() < 1e-15);
        assert_eq!(g_radial(7.3, 0.0), -1.0);
    }
}
