//! Time integration and limit-cycle measurement.
//!
//! The routines here observe the clock rather than solve it in closed form:
//! trajectories are produced by explicit Runge-Kutta steppers, limit cycles
//! are measured through Poincaré-section returns, and the saddle-node-on-limit-
//! cycle transition is located by bisecting on cycle existence. Backward-time
//! integration (the vector field negated) turns the repelling cycle into an
//! attractor, so the same machinery measures both branches.
//!
//! Two steppers are provided. The adaptive Dormand-Prince 5(4) pair drives
//! everything that needs tight error control — cycle periods, transition
//! detection, invariant checks. The fixed-step classical fourth-order scheme
//! produces uniformly sampled trajectories for occupancy statistics and
//! waveform plots, where a constant sampling interval matters more than an
//! error estimate.

use crate::bifurcation::{colliding_radius, location_of, BifurcationKind, BifurcationPoint};
use crate::equilibria::find_equilibria;
use crate::model::{vector_field, NormParams, State};
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

#[cfg(not(feature = "std"))]
use crate::math::FloatFuncs;

/// Trajectory norm beyond which integration is abandoned as divergent.
const BLOWUP_NORM: f64 = 1e6;
/// Default relative tolerance for the adaptive stepper.
const DEFAULT_REL_TOL: f64 = 1e-9;
/// Default absolute tolerance for the adaptive stepper.
const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Default time budget for a cycle-measurement attempt.
const DEFAULT_TIME_BUDGET: f64 = 1500.0;
/// Hard ceiling on the escalated time budget.
const DEFAULT_MAX_BUDGET: f64 = 24000.0;
/// Section returns averaged into a period estimate.
const RETURNS_FOR_MEAN: usize = 8;
/// Minimum transient discarded before section returns are counted.
const TRANSIENT_FLOOR: f64 = 50.0;
/// Transient length in units of the rotation period `2π/Ω`.
const TRANSIENT_ROTATIONS: f64 = 20.0;
/// Relative spread of return intervals below which a period has converged.
const SPREAD_FACTOR: f64 = 1e-5;
/// Relative extent of the late trajectory below which it has collapsed onto
/// an equilibrium.
const CAPTURE_FACTOR: f64 = 1e-5;
/// Fraction of the post-transient window used for the collapse test.
const LATE_FRACTION: f64 = 0.2;
/// Width in input below which the existence bisection stops.
const SNLC_INPUT_TOL: f64 = 1e-4;
/// Period growth demanded across an existence bracket before the transition
/// is accepted as a cycle collision.
const SNLC_PERIOD_RATIO: f64 = 10.0;
/// Shrink factors tried when a cold backward seed escapes to infinity.
const SEED_SHRINK: [f64; 4] = [1.0, 0.9, 0.8, 0.7];
/// Relative padding applied to the cycle's radial extent when counting
/// equilibria born inside it.
const ANNULUS_PAD: f64 = 0.05;

/// Sense of time for an integration run.
///
/// Backward runs integrate the negated vector field, which exchanges the
/// stability of every invariant set: the repelling cycle of the hard-excited
/// clock becomes an attractor and can be measured by the same return-map
/// machinery as the stable one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Integrate the vector field as given.
    Forward,
    /// Integrate the negated vector field.
    Backward,
}

/// Numerical scheme used to advance the state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Stepper {
    /// Classical fourth-order Runge-Kutta with a constant step.
    ///
    /// Produces uniformly spaced samples, which occupancy statistics require.
    FixedRk4 {
        /// Step size, strictly positive.
        dt: f64,
    },
    /// Dormand-Prince 5(4) embedded pair with step-size control.
    AdaptiveRk45 {
        /// Relative error tolerance per step.
        rel_tol: f64,
        /// Absolute error tolerance per step.
        abs_tol: f64,
    },
}

/// Which limit cycle of the hard-excited clock an operation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleBranch {
    /// The outer attracting cycle, measured by forward integration.
    Stable,
    /// The inner repelling cycle, measured by backward integration.
    Unstable,
}

impl CycleBranch {
    /// The integration direction in which this cycle attracts.
    pub fn direction(self) -> Direction {
        match self {
            CycleBranch::Stable => Direction::Forward,
            CycleBranch::Unstable => Direction::Backward,
        }
    }
}

/// State component selected for scalar statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    /// The `x` coordinate.
    X,
    /// The `y` coordinate.
    Y,
}

/// A recorded integration run.
///
/// `times` and `states` have equal length, `times` is strictly increasing
/// starting at zero, and every recorded state is finite. Fixed-step runs are
/// sampled at exactly the requested interval; adaptive runs record every
/// accepted step.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// Sample times, strictly increasing from zero.
    pub times: Vec<f64>,
    /// State at each sample time.
    pub states: Vec<State>,
    /// Sense of time the run was computed in.
    pub direction: Direction,
    /// Scheme that produced the samples.
    pub stepper: Stepper,
}

impl Trajectory {
    /// Number of recorded samples.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// Whether the run recorded no samples.
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The final recorded state.
    pub fn last_state(&self) -> Option<State> {
        self.states.last().copied()
    }
}

/// A measured limit cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleEstimate {
    /// Mean of the last [`returns_used`](Self::returns_used) return intervals.
    pub period: f64,
    /// Which cycle the measurement belongs to, inferred from the integration
    /// direction that made it attracting.
    pub stability: CycleBranch,
    /// Number of section returns averaged into the period.
    pub returns_used: usize,
    /// Spread (max minus min) of the averaged return intervals.
    pub period_spread: f64,
    /// Interpolated state of the final section crossing; lies on the cycle.
    pub section_point: State,
    /// Whether the spread fell below the convergence threshold
    /// `1e-5 × period`.
    pub converged: bool,
}

/// Tunable knobs for cycle measurement.
///
/// The defaults reproduce the reference protocol: a 1500-time-unit budget
/// that doubles (up to 24000) while section returns are too few, a transient
/// of `max(50, 20 × 2π/Ω)` discarded before returns are counted, and eight
/// returns averaged into the period.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleOptions {
    /// Initial integration budget per attempt, in time units.
    pub t_budget: f64,
    /// Ceiling the budget may escalate to when returns are scarce.
    pub max_budget: f64,
    /// Transient discarded before the section is built; `None` selects
    /// `max(50, 20 × 2π/Ω)`.
    pub transient: Option<f64>,
    /// Section returns averaged into the period estimate.
    pub returns_for_mean: usize,
    /// Relative tolerance of the adaptive stepper.
    pub rel_tol: f64,
    /// Absolute tolerance of the adaptive stepper.
    pub abs_tol: f64,
}

impl Default for CycleOptions {
    fn default() -> Self {
        CycleOptions {
            t_budget: DEFAULT_TIME_BUDGET,
            max_budget: DEFAULT_MAX_BUDGET,
            transient: None,
            returns_for_mean: RETURNS_FOR_MEAN,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
        }
    }
}

/// Occupancy counts of one state component over a uniformly sampled run.
#[derive(Clone, Debug, PartialEq)]
pub struct OccupancyHistogram {
    /// Component the counts refer to.
    pub component: Component,
    /// Bin boundaries, ascending, one more than the number of bins. The
    /// outer edges coincide with the sampled minimum and maximum.
    pub bin_edges: Vec<f64>,
    /// Samples landing in each bin; sums to `total_samples`.
    pub counts: Vec<u64>,
    /// Number of samples binned.
    pub total_samples: u64,
}

/// Failure modes of the integration and measurement routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DynamicsError {
    /// The trajectory left the guard radius (or became non-finite).
    Blowup {
        /// Time at which the guard was tripped.
        time: f64,
        /// State norm at that time.
        norm: f64,
    },
    /// No limit cycle could be measured from the given seed.
    NoCycle {
        /// What the trajectory did instead.
        reason: &'static str,
    },
    /// An existence bracket did not actually bracket a transition.
    Bracket {
        /// Which end failed, and how.
        reason: &'static str,
    },
    /// The bisection converged but the collision criterion was not met.
    Criterion {
        /// Which part of the criterion failed.
        reason: &'static str,
    },
    /// Invalid input or degenerate data.
    Degenerate {
        /// What was degenerate.
        reason: &'static str,
    },
}

impl fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynamicsError::Blowup { time, norm } => {
                write!(f, "trajectory diverged: |state| = {norm:e} at t = {time:e}")
            }
            DynamicsError::NoCycle { reason } => {
                write!(f, "no limit cycle found: {reason}")
            }
            DynamicsError::Bracket { reason } => {
                write!(f, "invalid existence bracket: {reason}")
            }
            DynamicsError::Criterion { reason } => {
                write!(f, "cycle-collision criterion not met: {reason}")
            }
            DynamicsError::Degenerate { reason } => {
                write!(f, "degenerate input: {reason}")
            }
        }
    }
}

impl core::error::Error for DynamicsError {}

/// The vector field with the requested sense of time applied.
#[inline]
fn directed_field(p: NormParams, s: State, direction: Direction) -> (f64, f64) {
    let (dx, dy) = vector_field(p, s);
    match direction {
        Direction::Forward => (dx, dy),
        Direction::Backward => (-dx, -dy),
    }
}

/// One classical Runge-Kutta step of size `dt`.
fn rk4_step(p: NormParams, s: State, dt: f64, direction: Direction) -> State {
    let (k1x, k1y) = directed_field(p, s, direction);
    let s2 = State::new(s.x + 0.5 * dt * k1x, s.y + 0.5 * dt * k1y);
    let (k2x, k2y) = directed_field(p, s2, direction);
    let s3 = State::new(s.x + 0.5 * dt * k2x, s.y + 0.5 * dt * k2y);
    let (k3x, k3y) = directed_field(p, s3, direction);
    let s4 = State::new(s.x + dt * k3x, s.y + dt * k3y);
    let (k4x, k4y) = directed_field(p, s4, direction);
    State::new(
        s.x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        s.y + dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
    )
}

/// Rejects non-finite or runaway states.
#[inline]
fn check_norm(s: State, time: f64) -> Result<(), DynamicsError> {
    let norm = s.radius();
    if !(norm <= BLOWUP_NORM) {
        return Err(DynamicsError::Blowup { time, norm });
    }
    Ok(())
}

/// Dormand-Prince 5(4) stepper with standard proportional step control.
struct Dp5 {
    p: NormParams,
    direction: Direction,
    rel_tol: f64,
    abs_tol: f64,
    h: f64,
}

impl Dp5 {
    fn new(p: NormParams, direction: Direction, rel_tol: f64, abs_tol: f64) -> Dp5 {
        Dp5 {
            p,
            direction,
            rel_tol,
            abs_tol,
            h: 1e-2,
        }
    }

    /// Advances one accepted step from `(t, s)`, never stepping past `t_end`.
    fn step(&mut self, t: f64, s: State, t_end: f64) -> Result<(f64, State), DynamicsError> {
        // Dormand-Prince tableau.
        const A21: f64 = 1.0 / 5.0;
        const A31: f64 = 3.0 / 40.0;
        const A32: f64 = 9.0 / 40.0;
        const A41: f64 = 44.0 / 45.0;
        const A42: f64 = -56.0 / 15.0;
        const A43: f64 = 32.0 / 9.0;
        const A51: f64 = 19372.0 / 6561.0;
        const A52: f64 = -25360.0 / 2187.0;
        const A53: f64 = 64448.0 / 6561.0;
        const A54: f64 = -212.0 / 729.0;
        const A61: f64 = 9017.0 / 3168.0;
        const A62: f64 = -355.0 / 33.0;
        const A63: f64 = 46732.0 / 5247.0;
        const A64: f64 = 49.0 / 176.0;
        const A65: f64 = -5103.0 / 18656.0;
        const B1: f64 = 35.0 / 384.0;
        const B3: f64 = 500.0 / 1113.0;
        const B4: f64 = 125.0 / 192.0;
        const B5: f64 = -2187.0 / 6784.0;
        const B6: f64 = 11.0 / 84.0;
        // Difference between the fifth- and fourth-order weights.
        const E1: f64 = 71.0 / 57600.0;
        const E3: f64 = -71.0 / 16695.0;
        const E4: f64 = 71.0 / 1920.0;
        const E5: f64 = -17253.0 / 339200.0;
        const E6: f64 = 22.0 / 525.0;
        const E7: f64 = -1.0 / 40.0;

        let p = self.p;
        let dir = self.direction;
        loop {
            let h = self.h.min(t_end - t);
            if h < 1e-12 * (1.0 + t.abs()) {
                let norm = s.radius();
                if norm > BLOWUP_NORM.sqrt() {
                    // The step collapsed because the state is in finite-time
                    // escape faster than the time resolution can follow;
                    // report the escape rather than a generic failure.
                    return Err(DynamicsError::Blowup { time: t, norm });
                }
                return Err(DynamicsError::Degenerate {
                    reason: "adaptive step size underflowed",
                });
            }

            let (k1x, k1y) = directed_field(p, s, dir);
            let s2 = State::new(s.x + h * A21 * k1x, s.y + h * A21 * k1y);
            let (k2x, k2y) = directed_field(p, s2, dir);
            let s3 = State::new(
                s.x + h * (A31 * k1x + A32 * k2x),
                s.y + h * (A31 * k1y + A32 * k2y),
            );
            let (k3x, k3y) = directed_field(p, s3, dir);
            let s4 = State::new(
                s.x + h * (A41 * k1x + A42 * k2x + A43 * k3x),
                s.y + h * (A41 * k1y + A42 * k2y + A43 * k3y),
            );
            let (k4x, k4y) = directed_field(p, s4, dir);
            let s5 = State::new(
                s.x + h * (A51 * k1x + A52 * k2x + A53 * k3x + A54 * k4x),
                s.y + h * (A51 * k1y + A52 * k2y + A53 * k3y + A54 * k4y),
            );
            let (k5x, k5y) = directed_field(p, s5, dir);
            let s6 = State::new(
                s.x + h * (A61 * k1x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x),
                s.y + h * (A61 * k1y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y),
            );
            let (k6x, k6y) = directed_field(p, s6, dir);

            let xn = s.x + h * (B1 * k1x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x);
            let yn = s.y + h * (B1 * k1y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y);
            let s_new = State::new(xn, yn);
            // Guard the trial state, not just accepted ones: near a
            // finite-time escape the controller would otherwise grind the
            // step to nothing without ever accepting a state past the
            // radius. A non-finite trial fails the comparison too.
            let norm = s_new.radius();
            if !(norm <= BLOWUP_NORM) {
                return Err(DynamicsError::Blowup { time: t + h, norm });
            }
            let (k7x, k7y) = directed_field(p, s_new, dir);

            let ex = h * (E1 * k1x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x + E7 * k7x);
            let ey = h * (E1 * k1y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y + E7 * k7y);
            let sx = self.abs_tol + self.rel_tol * s.x.abs().max(xn.abs());
            let sy = self.abs_tol + self.rel_tol * s.y.abs().max(yn.abs());
            let err_x = ex / sx;
            let err_y = ey / sy;
            let err = (0.5 * (err_x * err_x + err_y * err_y)).sqrt();

            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                self.h = h * factor;
                return Ok((t + h, s_new));
            }
            self.h = h * factor;
        }
    }
}

/// Drives the adaptive stepper for `duration` time units from `s0`, feeding
/// every sample (including the initial one at time zero) to `observe`.
/// Returns the final state.
fn drive_adaptive<F: FnMut(f64, State)>(
    p: NormParams,
    s0: State,
    duration: f64,
    direction: Direction,
    rel_tol: f64,
    abs_tol: f64,
    mut observe: F,
) -> Result<State, DynamicsError> {
    check_norm(s0, 0.0)?;
    observe(0.0, s0);
    let mut dp5 = Dp5::new(p, direction, rel_tol, abs_tol);
    let mut t = 0.0;
    let mut s = s0;
    while duration - t > 1e-12 * (1.0 + duration) {
        let (t_new, s_new) = dp5.step(t, s, duration)?;
        t = t_new;
        s = s_new;
        observe(t, s);
    }
    Ok(s)
}

/// Integrates the clock from `s0` for `t_final` time units and records the
/// trajectory.
///
/// Backward runs negate the vector field. Fixed-step runs cover the span in
/// uniform steps, rounding the duration up to a whole number of steps;
/// adaptive runs record every accepted step. Fails with
/// [`DynamicsError::Blowup`] as soon as the state norm exceeds `1e6` and with
/// [`DynamicsError::Degenerate`] for non-positive durations, steps, or
/// tolerances.
pub fn integrate(
    p: NormParams,
    s0: State,
    t_final: f64,
    direction: Direction,
    stepper: Stepper,
) -> Result<Trajectory, DynamicsError> {
    if !(t_final > 0.0) {
        return Err(DynamicsError::Degenerate {
            reason: "final time must be positive",
        });
    }
    let mut times = Vec::new();
    let mut states = Vec::new();
    match stepper {
        Stepper::FixedRk4 { dt } => {
            if !(dt > 0.0) {
                return Err(DynamicsError::Degenerate {
                    reason: "step size must be positive",
                });
            }
            check_norm(s0, 0.0)?;
            let n_steps = ((t_final / dt) - 1e-9).ceil().max(1.0) as usize;
            times.reserve(n_steps + 1);
            states.reserve(n_steps + 1);
            times.push(0.0);
            states.push(s0);
            let mut s = s0;
            for k in 1..=n_steps {
                let t = k as f64 * dt;
                s = rk4_step(p, s, dt, direction);
                check_norm(s, t)?;
                times.push(t);
                states.push(s);
            }
        }
        Stepper::AdaptiveRk45 { rel_tol, abs_tol } => {
            if !(rel_tol > 0.0) || !(abs_tol > 0.0) {
                return Err(DynamicsError::Degenerate {
                    reason: "tolerances must be positive",
                });
            }
            drive_adaptive(p, s0, t_final, direction, rel_tol, abs_tol, |t, s| {
                times.push(t);
                states.push(s);
            })?;
        }
    }
    Ok(Trajectory {
        times,
        states,
        direction,
        stepper,
    })
}

/// Cubic Hermite interpolant of one scalar on `[0, 1]`, given endpoint
/// values and endpoint derivatives already scaled by the interval length.
#[inline]
fn hermite(tau: f64, v0: f64, d0: f64, v1: f64, d1: f64) -> f64 {
    let t2 = tau * tau;
    let t3 = t2 * tau;
    (2.0 * t3 - 3.0 * t2 + 1.0) * v0
        + (t3 - 2.0 * t2 + tau) * d0
        + (-2.0 * t3 + 3.0 * t2) * v1
        + (t3 - t2) * d1
}

/// What one measurement attempt concluded.
enum Attempt {
    /// Enough converged returns for an estimate.
    Cycle(CycleEstimate),
    /// The trajectory collapsed onto an equilibrium.
    Captured,
    /// Returns were too few (or too scattered) within this budget.
    Insufficient,
}

/// One fixed-budget measurement attempt.
///
/// The trajectory is advanced through the transient, then through the
/// post-transient window twice: a first pass accumulates the centroid that
/// fixes the section line `x = x̄`, a second pass detects upward section
/// crossings (refined by cubic Hermite interpolation between samples) and the
/// late-window extent that distinguishes equilibrium capture from a cycle.
/// Two streaming passes keep memory flat regardless of budget.
fn run_attempt(
    p: NormParams,
    s0: State,
    direction: Direction,
    transient: f64,
    post: f64,
    opts: &CycleOptions,
) -> Result<Attempt, DynamicsError> {
    let s_start = if transient > 0.0 {
        drive_adaptive(p, s0, transient, direction, opts.rel_tol, opts.abs_tol, |_, _| {})?
    } else {
        s0
    };

    // Pass one: sample mean of x over the post-transient window.
    let mut sum_x = 0.0;
    let mut n_samples = 0u64;
    drive_adaptive(p, s_start, post, direction, opts.rel_tol, opts.abs_tol, |_, s| {
        sum_x += s.x;
        n_samples += 1;
    })?;
    let x_ref = sum_x / n_samples as f64;

    // Pass two: upward crossings of x = x_ref and the late-window extent.
    let late_start = (1.0 - LATE_FRACTION) * post;
    let mut crossings: Vec<f64> = Vec::new();
    let mut last_cross = None;
    let mut prev: Option<(f64, State)> = None;
    let mut late_min_x = f64::INFINITY;
    let mut late_max_x = f64::NEG_INFINITY;
    let mut late_min_y = f64::INFINITY;
    let mut late_max_y = f64::NEG_INFINITY;
    drive_adaptive(p, s_start, post, direction, opts.rel_tol, opts.abs_tol, |t, s| {
        if t >= late_start {
            late_min_x = late_min_x.min(s.x);
            late_max_x = late_max_x.max(s.x);
            late_min_y = late_min_y.min(s.y);
            late_max_y = late_max_y.max(s.y);
        }
        if let Some((t0, a)) = prev {
            if a.x - x_ref < 0.0 && s.x - x_ref >= 0.0 {
                let h = t - t0;
                let (dx0, dy0) = directed_field(p, a, direction);
                let (dx1, dy1) = directed_field(p, s, direction);
                // Bisect the Hermite cubic for the crossing parameter; the
                // interpolant matches the endpoint values, so the sign change
                // is preserved.
                let mut lo = 0.0;
                let mut hi = 1.0;
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let v = hermite(mid, a.x, h * dx0, s.x, h * dx1) - x_ref;
                    if v < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-15 {
                        break;
                    }
                }
                let tau = 0.5 * (lo + hi);
                let y_cross = hermite(tau, a.y, h * dy0, s.y, h * dy1);
                crossings.push(t0 + tau * h);
                last_cross = Some(State::new(x_ref, y_cross));
            }
        }
        prev = Some((t, s));
    })?;

    // Capture first: a tight spiral can keep crossing the section while
    // shrinking onto an equilibrium, and its returns would look periodic.
    let extent = (late_max_x - late_min_x).hypot(late_max_y - late_min_y);
    let center_norm = (0.5 * (late_min_x + late_max_x)).hypot(0.5 * (late_min_y + late_max_y));
    if extent < CAPTURE_FACTOR * (1.0 + center_norm) {
        return Ok(Attempt::Captured);
    }

    let k = opts.returns_for_mean;
    if crossings.len() < k + 3 {
        // Fewer than k + 2 return intervals.
        return Ok(Attempt::Insufficient);
    }
    let intervals: Vec<f64> = crossings.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &intervals[intervals.len() - k..];
    let period = tail.iter().sum::<f64>() / k as f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &dt in tail {
        lo = lo.min(dt);
        hi = hi.max(dt);
    }
    let spread = hi - lo;
    let converged = spread <= SPREAD_FACTOR * period;
    let estimate = CycleEstimate {
        period,
        stability: match direction {
            Direction::Forward => CycleBranch::Stable,
            Direction::Backward => CycleBranch::Unstable,
        },
        returns_used: k,
        period_spread: spread,
        section_point: last_cross.expect("crossings recorded"),
        converged,
    };
    Ok(Attempt::Cycle(estimate))
}

/// Measures the limit cycle reached from `s0` under the given sense of time,
/// with the default protocol.
///
/// See [`find_cycle_with`] for the procedure and failure modes.
pub fn find_cycle(
    p: NormParams,
    s0: State,
    direction: Direction,
) -> Result<CycleEstimate, DynamicsError> {
    find_cycle_with(p, s0, direction, &CycleOptions::default())
}

/// Measures the limit cycle reached from `s0` under the given sense of time.
///
/// The trajectory is integrated adaptively through a transient of
/// `max(50, 20 × 2π/Ω)` time units (configurable), then monitored for upward
/// crossings of the vertical section through the centroid of the remaining
/// run. Crossing times are refined by cubic Hermite interpolation; the period
/// is the mean of the last eight return intervals and counts as converged
/// when their spread is at most `1e-5` of it. While returns are too few or
/// not yet converged, the time budget doubles from `t_budget` up to
/// `max_budget` and the run is repeated from scratch.
///
/// Fails with [`DynamicsError::NoCycle`] when the trajectory collapses onto
/// an equilibrium (late-run extent below `1e-5 × (1 + |state|)`) or when the
/// escalated budget still yields too few returns, and with
/// [`DynamicsError::Blowup`] when it escapes the guard radius.
pub fn find_cycle_with(
    p: NormParams,
    s0: State,
    direction: Direction,
    opts: &CycleOptions,
) -> Result<CycleEstimate, DynamicsError> {
    if !(opts.t_budget > 0.0) || !(opts.max_budget >= opts.t_budget) {
        return Err(DynamicsError::Degenerate {
            reason: "time budget must be positive and no larger than the ceiling",
        });
    }
    if opts.returns_for_mean < 2 {
        return Err(DynamicsError::Degenerate {
            reason: "period estimation needs at least two returns",
        });
    }
    if !(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) {
        return Err(DynamicsError::Degenerate {
            reason: "tolerances must be positive",
        });
    }
    let transient_nominal = opts
        .transient
        .unwrap_or_else(|| TRANSIENT_FLOOR.max(TRANSIENT_ROTATIONS * TAU / p.omega));
    if !(transient_nominal >= 0.0) {
        return Err(DynamicsError::Degenerate {
            reason: "transient must be non-negative",
        });
    }
    let mut budget = opts.t_budget;
    loop {
        // Never let the transient eat the whole budget.
        let transient = transient_nominal.min(0.5 * budget);
        let post = budget - transient;
        let at_ceiling = budget >= opts.max_budget;
        match run_attempt(p, s0, direction, transient, post, opts)? {
            Attempt::Cycle(est) if est.converged || at_ceiling => return Ok(est),
            Attempt::Captured => {
                return Err(DynamicsError::NoCycle {
                    reason: "the trajectory converged to an equilibrium",
                })
            }
            Attempt::Cycle(_) | Attempt::Insufficient => {
                if at_ceiling {
                    return Err(DynamicsError::NoCycle {
                        reason: "too few section returns within the time budget",
                    });
                }
                budget = (2.0 * budget).min(opts.max_budget);
            }
        }
    }
}

/// The radii of the input-free clock's circular orbits, `(inner, outer)`,
/// when they exist (`α > 2`).
fn autonomous_radii(alpha: f64) -> Option<(f64, f64)> {
    let disc = alpha * alpha - 4.0;
    if disc <= 0.0 {
        return None;
    }
    let root = disc.sqrt();
    Some(((alpha - root) / 2.0, (alpha + root) / 2.0))
}

/// The radius of the innermost equilibrium, or zero when the origin is the
/// only rest point (no input).
fn innermost_equilibrium_radius(p: NormParams) -> f64 {
    if !(p.input > 0.0) {
        return 0.0;
    }
    match find_equilibria(p) {
        Ok(eqs) => eqs.first().map_or(0.0, |e| e.zeta),
        Err(_) => 0.0,
    }
}

/// Cold seeds for a cycle search on the given branch, tried in order.
///
/// The stable cycle is reached forward from the input-free outer radius. The
/// unstable cycle is reached backward from 1.05 times the midpoint between
/// the innermost equilibrium and the outer cycle — squarely inside the
/// backward basin — with progressively shrunken radii as fallbacks for seeds
/// that escape.
fn cold_seeds(p: NormParams, branch: CycleBranch) -> Vec<State> {
    let Some((_, r_outer)) = autonomous_radii(p.alpha) else {
        return Vec::new();
    };
    match branch {
        CycleBranch::Stable => alloc::vec![State::new(r_outer, 0.0)],
        CycleBranch::Unstable => {
            let base = 1.05 * (innermost_equilibrium_radius(p) + r_outer) / 2.0;
            SEED_SHRINK
                .iter()
                .map(|f| State::new(f * base, 0.0))
                .collect()
        }
    }
}

/// Tries warm then cold seeds; `None` means the cycle is genuinely absent
/// (capture or budget exhaustion), while seeds that blow up fall through to
/// the next one.
fn probe_cycle(
    p: NormParams,
    warm: Option<State>,
    branch: CycleBranch,
    opts: &CycleOptions,
) -> Option<CycleEstimate> {
    let direction = branch.direction();
    let mut seeds = Vec::new();
    if let Some(s) = warm {
        seeds.push(s);
    }
    seeds.extend(cold_seeds(p, branch));
    for seed in seeds {
        match find_cycle_with(p, seed, direction, opts) {
            Ok(est) => return Some(est),
            Err(DynamicsError::Blowup { .. }) => continue,
            Err(_) => return None,
        }
    }
    None
}

/// Sweeps the input over `inputs` (ascending) and measures the requested
/// cycle at each value, with the default protocol.
///
/// See [`period_sweep_with`].
pub fn period_sweep(
    alpha: f64,
    omega: f64,
    inputs: &[f64],
    branch: CycleBranch,
) -> Vec<(f64, Option<CycleEstimate>)> {
    period_sweep_with(alpha, omega, inputs, branch, &CycleOptions::default())
}

/// Sweeps the input over `inputs` (ascending) and measures the requested
/// cycle at each value.
///
/// Each successful measurement seeds the next input's search with its
/// section point, so the sweep follows the deforming cycle instead of
/// re-converging from scratch. An entry of `None` records that no cycle was
/// found at that input — absence is data, not an error; past the collision
/// the trajectory is captured by an equilibrium and the sweep reports the
/// cycle gone.
pub fn period_sweep_with(
    alpha: f64,
    omega: f64,
    inputs: &[f64],
    branch: CycleBranch,
    opts: &CycleOptions,
) -> Vec<(f64, Option<CycleEstimate>)> {
    let mut out = Vec::with_capacity(inputs.len());
    let mut warm: Option<State> = None;
    for &input in inputs {
        let p = NormParams::new(alpha, omega, input);
        let est = probe_cycle(p, warm, branch, opts);
        if let Some(e) = &est {
            warm = Some(e.section_point);
        }
        out.push((input, est));
    }
    out
}

/// Radial extent of one cycle lap, integrated from a point on the cycle.
fn cycle_radial_extent(
    p: NormParams,
    start: State,
    period: f64,
    direction: Direction,
    opts: &CycleOptions,
) -> Result<(f64, f64), DynamicsError> {
    let mut r_min = f64::INFINITY;
    let mut r_max = f64::NEG_INFINITY;
    drive_adaptive(p, start, period, direction, opts.rel_tol, opts.abs_tol, |_, s| {
        let r = s.radius();
        r_min = r_min.min(r);
        r_max = r_max.max(r);
    })?;
    Ok((r_min, r_max))
}

/// Number of equilibria whose radius lies inside the padded annulus.
fn equilibria_in_annulus(alpha: f64, omega: f64, input: f64, lo: f64, hi: f64) -> usize {
    if !(input > 0.0) {
        // Only the origin rests there, and the annulus excludes it.
        return 0;
    }
    match find_equilibria(NormParams::new(alpha, omega, input)) {
        Ok(eqs) => eqs.iter().filter(|e| e.zeta >= lo && e.zeta <= hi).count(),
        Err(_) => 0,
    }
}

/// Locates the input at which the requested cycle collides with a nascent
/// equilibrium pair and disappears, with the default protocol.
///
/// See [`detect_snlc_with`].
pub fn detect_snlc(
    alpha: f64,
    omega: f64,
    input_bracket: (f64, f64),
    branch: CycleBranch,
) -> Result<BifurcationPoint, DynamicsError> {
    detect_snlc_with(alpha, omega, input_bracket, branch, &CycleOptions::default())
}

/// Locates the input at which the requested cycle collides with a nascent
/// equilibrium pair and disappears.
///
/// The cycle must exist at `input_bracket.0` and be absent at
/// `input_bracket.1` ([`DynamicsError::Bracket`] otherwise). Bisection on
/// existence narrows the bracket to `1e-4` in input, warm-seeding each probe
/// from the previous cycle. The transition is then accepted as a
/// cycle-equilibrium collision only if both parts of a joint criterion hold
/// ([`DynamicsError::Criterion`] otherwise): the number of equilibria inside
/// the cycle's padded radial annulus changes across the critical input, and
/// the period at the last existing iterate exceeds ten times the period at
/// the bracket start — the signature of the inverse-square-root slowdown.
///
/// The reported location is the midpoint of the two closest equilibrium radii
/// just past the transition (the coalescing pair), mapped back to the phase
/// plane; the reported input is the midpoint of the final bracket.
pub fn detect_snlc_with(
    alpha: f64,
    omega: f64,
    input_bracket: (f64, f64),
    branch: CycleBranch,
    opts: &CycleOptions,
) -> Result<BifurcationPoint, DynamicsError> {
    let (mut lo, mut hi) = input_bracket;
    if !(lo < hi) || !(lo >= 0.0) {
        return Err(DynamicsError::Degenerate {
            reason: "input bracket must be ordered and non-negative",
        });
    }
    let probe = |input: f64, warm: Option<State>| {
        probe_cycle(NormParams::new(alpha, omega, input), warm, branch, opts)
    };

    let Some(first) = probe(lo, None) else {
        return Err(DynamicsError::Bracket {
            reason: "no cycle found at the bracket start",
        });
    };
    let period_at_start = first.period;
    let mut warm = Some(first.section_point);
    let mut last_existing = first;
    let mut last_input = lo;
    if probe(hi, warm).is_some() {
        return Err(DynamicsError::Bracket {
            reason: "the cycle persists at the bracket end",
        });
    }

    while hi - lo > SNLC_INPUT_TOL {
        let mid = 0.5 * (lo + hi);
        match probe(mid, warm) {
            Some(est) => {
                warm = Some(est.section_point);
                last_existing = est;
                last_input = mid;
                lo = mid;
            }
            None => hi = mid,
        }
    }

    // Joint collision criterion, part one: an equilibrium pair is born inside
    // the annulus the cycle occupied. The measurable-existence frontier sits
    // slightly before the true collision — the period law `T ~ C / sqrt(I_c
    // - I)` outruns any finite time budget while the cycle still exists — so
    // the comparison marches a few bracket tolerances past the transition
    // rather than trusting the biased endpoint alone.
    let p_last = NormParams::new(alpha, omega, last_input);
    let (r_min, r_max) = cycle_radial_extent(
        p_last,
        last_existing.section_point,
        last_existing.period,
        branch.direction(),
        opts,
    )?;
    let ann_lo = (1.0 - ANNULUS_PAD) * r_min;
    let ann_hi = (1.0 + ANNULUS_PAD) * r_max;
    let n_before = equilibria_in_annulus(alpha, omega, lo, ann_lo, ann_hi);
    let mut changed_at = None;
    for k in 0..=4 {
        let candidate = hi + k as f64 * SNLC_INPUT_TOL;
        if equilibria_in_annulus(alpha, omega, candidate, ann_lo, ann_hi) != n_before {
            changed_at = Some(candidate);
            break;
        }
    }
    let Some(born_at) = changed_at else {
        return Err(DynamicsError::Criterion {
            reason: "equilibrium count inside the cycle annulus did not change",
        });
    };

    // Part two: the period must have diverged on approach.
    if !(last_existing.period > SNLC_PERIOD_RATIO * period_at_start) {
        return Err(DynamicsError::Criterion {
            reason: "cycle period did not diverge approaching the transition",
        });
    }

    let zeta = colliding_radius(alpha, omega, born_at);
    let location = location_of(alpha, omega, born_at, zeta);
    Ok(BifurcationPoint {
        kind: BifurcationKind::Snlc,
        omega,
        input: 0.5 * (lo + hi),
        location,
        zeta,
    })
}

/// Bins one component of a uniformly sampled trajectory into equal-width
/// occupancy counts.
///
/// Fixed-step runs are binned directly. Adaptive runs are first resampled
/// onto a uniform grid with the same sample count by linear interpolation,
/// so every count still represents the same amount of time. The bin range
/// spans exactly the sampled minimum to maximum; a sample equal to the
/// maximum lands in the last bin. Fails with [`DynamicsError::Degenerate`]
/// for zero bins, runs of fewer than two samples, or zero spatial extent
/// (an equilibrium trajectory has no distribution to bin).
pub fn occupancy_histogram(
    trajectory: &Trajectory,
    component: Component,
    bins: usize,
) -> Result<OccupancyHistogram, DynamicsError> {
    if bins == 0 {
        return Err(DynamicsError::Degenerate {
            reason: "bin count must be positive",
        });
    }
    let n = trajectory.times.len();
    if n < 2 || trajectory.states.len() != n {
        return Err(DynamicsError::Degenerate {
            reason: "trajectory must hold at least two matching samples",
        });
    }
    let pick = |s: &State| match component {
        Component::X => s.x,
        Component::Y => s.y,
    };

    let t0 = trajectory.times[0];
    let t_last = trajectory.times[n - 1];
    let dt_mean = (t_last - t0) / (n - 1) as f64;
    let uniform = trajectory
        .times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - dt_mean).abs() <= 1e-9 * (1.0 + dt_mean));

    let values: Vec<f64> = if uniform {
        trajectory.states.iter().map(pick).collect()
    } else {
        // Resample onto a uniform grid by linear interpolation, keeping the
        // sample count.
        let mut vals = Vec::with_capacity(n);
        let mut k = 0usize;
        for j in 0..n {
            let t = t0 + j as f64 * dt_mean;
            while k + 2 < n && trajectory.times[k + 1] < t {
                k += 1;
            }
            let ta = trajectory.times[k];
            let tb = trajectory.times[k + 1];
            let va = pick(&trajectory.states[k]);
            let vb = pick(&trajectory.states[k + 1]);
            let w = if tb > ta { ((t - ta) / (tb - ta)).clamp(0.0, 1.0) } else { 0.0 };
            vals.push(va + w * (vb - va));
        }
        vals
    };

    let mut v_min = f64::INFINITY;
    let mut v_max = f64::NEG_INFINITY;
    for &v in &values {
        v_min = v_min.min(v);
        v_max = v_max.max(v);
    }
    if !(v_max > v_min) {
        return Err(DynamicsError::Degenerate {
            reason: "zero spatial extent along the selected component",
        });
    }

    let span = v_max - v_min;
    let mut counts = alloc::vec![0u64; bins];
    for &v in &values {
        let idx = (((v - v_min) / span) * bins as f64) as usize;
        counts[idx.min(bins - 1)] += 1;
    }
    let mut bin_edges = Vec::with_capacity(bins + 1);
    for i in 0..=bins {
        bin_edges.push(v_min + span * (i as f64 / bins as f64));
    }
    bin_edges[bins] = v_max;
    Ok(OccupancyHistogram {
        component,
        bin_edges,
        counts,
        total_samples: values.len() as u64,
    })
}

/// Produces a uniformly sampled waveform of the requested cycle spanning a
/// whole number of periods.
///
/// The cycle is first measured with the default protocol (forward for the
/// stable branch, backward for the unstable one). The run then restarts from
/// the measured section point — already on the cycle, so no transient
/// pollutes the samples — and covers `⌊t_final / T⌋` periods (at least one)
/// with the fixed-step scheme, the duration rounded up to a whole number of
/// steps. Fails like [`find_cycle`] when no cycle is reachable.
pub fn waveform(
    p: NormParams,
    branch: CycleBranch,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory, DynamicsError> {
    if !(t_final > 0.0) || !(dt > 0.0) {
        return Err(DynamicsError::Degenerate {
            reason: "final time and step size must be positive",
        });
    }
    let direction = branch.direction();
    let mut last_err = DynamicsError::NoCycle {
        reason: "no seed converged to a cycle",
    };
    let mut found = None;
    for seed in cold_seeds(p, branch) {
        match find_cycle(p, seed, direction) {
            Ok(est) => {
                found = Some(est);
                break;
            }
            Err(e @ DynamicsError::Blowup { .. }) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    let Some(est) = found else { return Err(last_err) };
    let whole_periods = (t_final / est.period).floor().max(1.0);
    let duration = whole_periods * est.period;
    integrate(p, est.section_point, duration, direction, Stepper::FixedRk4 { dt })
}
