//! Analysis of a planar oscillator with hard excitation under constant input.
//!
//! The system is a radial isochron clock written in cartesian coordinates
//!
//! ```text
//! x' = g(x, y) x - Omega y + I
//! y' = g(x, y) y + Omega x
//! ```
//!
//! with radial growth rate `g(x, y) = -1 + alpha r - r^2`, `r = sqrt(x^2 +
//! y^2)`. For `alpha > 2` the autonomous system (`I = 0`) has a stable rest
//! state coexisting with a stable limit cycle, separated by an unstable
//! cycle; constant input deforms and eventually destroys both cycles. This
//! crate locates the equilibria, classifies their stability, traces the
//! local bifurcation curves (saddle-node, Hopf, Bogdanov-Takens) in the
//! `(Omega, I)` parameter plane, and detects the global saddle-node of limit
//! cycles by direct simulation.
//!
//! # Modules
//!
//! - [`model`]: parameter normalization and the vector field itself.
//! - [`poly`]: real polynomials, roots, resultants, discriminants.
//! - [`equilibria`]: rest points, their Jacobians, and stability classes.
//! - [`bifurcation`]: Hopf and saddle-node curves, criticality, codimension-two points.
//! - [`dynamics`]: integration, limit-cycle measurement, period sweeps, histograms.
//!
//! The crate is `no_std`-compatible (with `alloc`): disable the default
//! `std` feature and enable `libm` to build for targets without a standard
//! library.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("enable at least one of the `std` or `libm` features");

extern crate alloc;

pub mod bifurcation;
pub mod dynamics;
pub mod equilibria;
mod math;
pub mod model;
pub mod poly;

pub use bifurcation::{
    autonomous_regime, bogdanov_takens, chain_discriminant_columns, discriminant_column,
    discriminant_locus, first_lyapunov, hopf_curves, hopf_input, hopf_points_at,
    hopf_validity_threshold, hopf_zetas, saddle_node_locus, AutonomousRegime, BifurcationError,
    BifurcationKind, BifurcationPoint, Criticality, CurvePoint, CurveSample, CycleRadius,
    DegeneracyFlag, HopfBranch, RegimeReport,
};
pub use dynamics::{
    detect_snlc, detect_snlc_with, find_cycle, find_cycle_with, integrate, occupancy_histogram,
    period_sweep, period_sweep_with, waveform, Component, CycleBranch, CycleEstimate,
    CycleOptions, Direction, DynamicsError, OccupancyHistogram, Stepper, Trajectory,
};
pub use equilibria::{
    classify, det_zeta, equilibrium_polynomial, field_residual, find_equilibria, jacobian,
    trace_zeta, EquilibriaError, Equilibrium, StabilityKind,
};
pub use model::{g_radial, normalize, vector_field, ModelError, NormParams, RawParams, State};
pub use poly::{PolyError, RealPolynomial};
