//! Implementations of the subcommands.
//!
//! Every command builds a [`Table`] (or a bespoke JSON report for the two
//! raw-coefficient commands) and hands it to the shared emitters. Failures
//! split into two classes: usage errors — bad flag combinations or parameter
//! values outside the model's domain — and numerical errors — an integration
//! or root-finding routine that could not produce a result. The caller maps
//! them to distinct exit codes.

use std::fmt::Write as _;

use hardclock_core::{
    autonomous_regime, bogdanov_takens, chain_discriminant_columns, detect_snlc,
    discriminant_column, find_equilibria, hopf_curves, integrate, normalize, occupancy_histogram,
    period_sweep, saddle_node_locus, waveform, AutonomousRegime, BifurcationError,
    BifurcationKind, BifurcationPoint, Criticality, CurvePoint, CurveSample, CycleBranch,
    DegeneracyFlag, Direction, DynamicsError, EquilibriaError, NormParams, RawParams,
    StabilityKind, State, Stepper, Trajectory,
};

use crate::args::{
    BifurcationCommand, BtArgs, Cli, Command, DiscriminantArgs, EquilibriaArgs, Format,
    HistogramArgs, HopfArgs, OutputArgs, PeriodSweepArgs, RawArgs, SimulateArgs,
    SnlcArgs, SnlocusArgs, WaveformArgs,
};
use crate::output::{deliver, format_float, json_string, Table, Value};

/// Span of the adaptive settling run that precedes uniform sampling.
const SETTLE_SPAN: f64 = 800.0;
/// Adaptive tolerances used while settling onto a cycle.
const SETTLE_REL_TOL: f64 = 1e-9;
const SETTLE_ABS_TOL: f64 = 1e-12;
/// Radius sweep resolution of the fold-locus parametrization.
const FOLD_ZETA_SAMPLES: usize = 4000;
/// Smallest radius included in the fold-locus sweep.
const FOLD_ZETA_FLOOR: f64 = 1e-3;
/// Shrink factors tried when a backward settling seed escapes.
const SEED_SHRINK: [f64; 4] = [1.0, 0.9, 0.8, 0.7];

/// A failed command, split by who must fix it.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself is wrong; fix the flags and rerun.
    Usage(String),
    /// A numerical routine failed on a well-formed invocation.
    Numerical {
        /// Stable machine-readable failure class.
        kind: &'static str,
        /// Human-readable account of what went wrong.
        message: String,
    },
}

/// Dispatches a parsed invocation to its implementation.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Equilibria(a) => equilibria_cmd(a),
        Command::Bifurcation(BifurcationCommand::Hopf(a)) => hopf_cmd(a),
        Command::Bifurcation(BifurcationCommand::Snlocus(a)) => snlocus_cmd(a),
        Command::Bifurcation(BifurcationCommand::Bt(a)) => bt_cmd(a),
        Command::Bifurcation(BifurcationCommand::Discriminant(a)) => discriminant_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::PeriodSweep(a) => period_sweep_cmd(a),
        Command::Snlc(a) => snlc_cmd(a),
        Command::Histogram(a) => histogram_cmd(a),
        Command::Waveform(a) => waveform_cmd(a),
        Command::Autonomous(a) => autonomous_cmd(a),
        Command::Normalize(a) => normalize_cmd(a),
    }
}

// ---------------------------------------------------------------------------
// Error mapping and small validators.

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn dynamics_err(e: DynamicsError) -> CliError {
    let kind = match e {
        DynamicsError::Blowup { .. } => "blowup",
        DynamicsError::NoCycle { .. } => "no-cycle",
        DynamicsError::Bracket { .. } => "bracket",
        DynamicsError::Criterion { .. } => "criterion",
        DynamicsError::Degenerate { .. } => "degenerate",
    };
    CliError::Numerical {
        kind,
        message: e.to_string(),
    }
}

fn equilibria_err(e: EquilibriaError) -> CliError {
    match e {
        // Rejected parameter values are the caller's to fix; a failed root
        // solve is not.
        EquilibriaError::InputDomain { .. } | EquilibriaError::Degenerate { .. } => {
            usage(e.to_string())
        }
        EquilibriaError::Poly(_) => CliError::Numerical {
            kind: "root-finding",
            message: e.to_string(),
        },
    }
}

fn bifurcation_err(e: BifurcationError) -> CliError {
    match e {
        BifurcationError::Domain { .. } | BifurcationError::InputDomain { .. } => {
            usage(e.to_string())
        }
        BifurcationError::Degenerate { .. } => CliError::Numerical {
            kind: "degenerate",
            message: e.to_string(),
        },
    }
}

fn require_finite(value: f64, flag: &str) -> Result<(), CliError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("{flag} must be finite, got {value}")))
    }
}

fn require_positive(value: f64, flag: &str) -> Result<(), CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(usage(format!("{flag} must be positive and finite, got {value}")))
    }
}

fn require_nonnegative(value: f64, flag: &str) -> Result<(), CliError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(usage(format!(
            "{flag} must be non-negative and finite, got {value}"
        )))
    }
}

// ---------------------------------------------------------------------------
// Shared naming and table plumbing.

fn stability_name(kind: StabilityKind) -> &'static str {
    match kind {
        StabilityKind::StableNode => "stable-node",
        StabilityKind::StableFocus => "stable-focus",
        StabilityKind::UnstableNode => "unstable-node",
        StabilityKind::UnstableFocus => "unstable-focus",
        StabilityKind::Saddle => "saddle",
        StabilityKind::NonHyperbolic => "non-hyperbolic",
    }
}

fn bifurcation_name(kind: BifurcationKind) -> &'static str {
    match kind {
        BifurcationKind::HopfSub => "hopf-sub",
        BifurcationKind::HopfSuper => "hopf-super",
        BifurcationKind::SaddleNode => "saddle-node",
        BifurcationKind::BogdanovTakens => "bogdanov-takens",
        BifurcationKind::Snlc => "snlc",
    }
}

fn regime_name(regime: &AutonomousRegime) -> &'static str {
    match regime {
        AutonomousRegime::HardExcitation => "hard-excitation",
        AutonomousRegime::SelfOscillating => "self-oscillating",
        AutonomousRegime::Quiescent => "quiescent",
        AutonomousRegime::Degenerate => "degenerate",
        AutonomousRegime::Mixed => "mixed",
    }
}

fn flag_name(flag: &DegeneracyFlag) -> &'static str {
    match flag {
        DegeneracyFlag::Hopf(Criticality::Subcritical) => "hopf-subcritical",
        DegeneracyFlag::Hopf(Criticality::Supercritical) => "hopf-supercritical",
        DegeneracyFlag::DoubleCycle => "double-cycle",
        DegeneracyFlag::Bautin(Criticality::Subcritical) => "bautin-subcritical",
        DegeneracyFlag::Bautin(Criticality::Supercritical) => "bautin-supercritical",
    }
}

/// `branch_id, omega, input, zeta, kind` rows holding traced curves.
fn curve_table() -> Table {
    Table::new(vec!["branch_id", "omega", "input", "zeta", "kind"])
}

/// `omega, input, zeta, x, y, kind` rows holding isolated points.
fn point_table() -> Table {
    Table::new(vec!["omega", "input", "zeta", "x", "y", "kind"])
}

fn push_curves(table: &mut Table, curves: impl IntoIterator<Item = CurveSample>) {
    for (id, sample) in curves.into_iter().enumerate() {
        for p in &sample.points {
            table.push(vec![
                Value::Int(id as u64),
                Value::Num(p.omega),
                Value::Num(p.input),
                Value::Num(p.zeta),
                Value::text(bifurcation_name(sample.kind)),
            ]);
        }
    }
}

fn push_point(table: &mut Table, p: &BifurcationPoint) {
    table.push(vec![
        Value::Num(p.omega),
        Value::Num(p.input),
        Value::Num(p.zeta),
        Value::Num(p.location.x),
        Value::Num(p.location.y),
        Value::text(bifurcation_name(p.kind)),
    ]);
}

/// Renders and writes a table, mapping write failures to usage errors (the
/// destination came from a flag).
fn emit(table: &Table, command: &str, out: &OutputArgs) -> Result<(), CliError> {
    let rendered = table.render(command, out.format, out.no_meta);
    write_out(&rendered, out.output.as_deref())
}

fn write_out(content: &str, path: Option<&std::path::Path>) -> Result<(), CliError> {
    deliver(content, path).map_err(|e| match path {
        Some(p) => usage(format!("cannot write {}: {e}", p.display())),
        None => usage(format!("cannot write output: {e}")),
    })
}

// ---------------------------------------------------------------------------
// Subcommands.

/// Tabulates rest points over the requested frequency and input values,
/// frequencies ascending, inputs ascending within each frequency, radii
/// ascending within each parameter pair. Parameter values without rest
/// points contribute no rows; an empty table is a valid result.
fn equilibria_cmd(a: EquilibriaArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    let omegas = a.omega.values();
    let inputs = a.input.values();
    if inputs.contains(&0.0) {
        return Err(usage(
            "input 0 turns the forcing off and the rest point moves to the origin; \
             use the `autonomous` subcommand to classify the unforced system",
        ));
    }

    let mut table = Table::new(vec![
        "omega", "input", "zeta", "x", "y", "trace", "det", "kind",
    ]);
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega", spec_param(omegas.len() == 1, a.omega.describe()));
    table.param("input", spec_param(inputs.len() == 1, a.input.describe()));

    for &omega in &omegas {
        for &input in &inputs {
            let eqs =
                find_equilibria(NormParams::new(a.alpha, omega, input)).map_err(equilibria_err)?;
            for e in &eqs {
                table.push(vec![
                    Value::Num(omega),
                    Value::Num(input),
                    Value::Num(e.zeta),
                    Value::Num(e.x),
                    Value::Num(e.y),
                    Value::Num(e.trace),
                    Value::Num(e.det),
                    Value::text(stability_name(e.kind)),
                ]);
            }
        }
    }
    emit(&table, "equilibria", &a.out)
}

/// A parameter echo: single numbers stay numeric, ranges stay in their
/// `lo:hi:count` spelling.
fn spec_param(single: bool, described: String) -> Value {
    if single {
        match described.parse::<f64>() {
            Ok(v) => Value::Num(v),
            Err(_) => Value::Text(described),
        }
    } else {
        Value::Text(described)
    }
}

/// Both Hopf branches over a frequency range; branch 0 is the smaller-radius
/// branch, branch 1 the larger. Each branch covers only the frequencies
/// above its validity threshold, so a branch can be empty.
fn hopf_cmd(a: HopfArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    let r = a.omega_range;
    let curves = hopf_curves(a.alpha, (r.lo, r.hi), r.count).map_err(bifurcation_err)?;
    let mut table = curve_table();
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega-range", Value::text(r.to_string()));
    push_curves(&mut table, curves);
    emit(&table, "bifurcation hopf", &a.out)
}

/// The fold locus traced from its radius parametrization, one polyline per
/// connected branch, each extended to the refined edges of its validity
/// window.
fn snlocus_cmd(a: SnlocusArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    if a.alpha <= FOLD_ZETA_FLOOR {
        return Err(usage(format!(
            "--alpha must exceed {FOLD_ZETA_FLOOR} to span a radius sweep, got {}",
            a.alpha
        )));
    }
    let samples = saddle_node_locus(a.alpha, (FOLD_ZETA_FLOOR, a.alpha), FOLD_ZETA_SAMPLES);
    let mut table = curve_table();
    table.param("alpha", Value::Num(a.alpha));
    push_curves(&mut table, samples);
    emit(&table, "bifurcation snlocus", &a.out)
}

/// The two Bogdanov-Takens points where the Hopf branches terminate on the
/// fold locus, in the order of their branches (smaller radius first).
fn bt_cmd(a: BtArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    let points = bogdanov_takens(a.alpha).map_err(bifurcation_err)?;
    let mut table = point_table();
    table.param("alpha", Value::Num(a.alpha));
    for p in &points {
        push_point(&mut table, p);
    }
    emit(&table, "bifurcation bt", &a.out)
}

/// The fold locus recovered by scanning the equilibrium discriminant on a
/// frequency-by-input grid, columns distributed over worker threads.
///
/// The column computations are independent and reassembled in frequency
/// order, so the output does not depend on the thread count.
fn discriminant_cmd(a: DiscriminantArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    let threads = thread_budget()?;
    let omegas = a.omega_range.values();
    let grid = a.input_range.values();

    let mut columns: Vec<Vec<CurvePoint>> = vec![Vec::new(); omegas.len()];
    let chunk = omegas.len().div_ceil(threads);
    let alpha = a.alpha;
    let grid_ref = &grid;
    std::thread::scope(|scope| {
        for (ws, slots) in omegas.chunks(chunk).zip(columns.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (&omega, slot) in ws.iter().zip(slots.iter_mut()) {
                    *slot = discriminant_column(alpha, omega, grid_ref);
                }
            });
        }
    });

    let samples = chain_discriminant_columns(columns, &grid);
    let mut table = curve_table();
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega-range", Value::text(a.omega_range.to_string()));
    table.param("input-range", Value::text(a.input_range.to_string()));
    push_curves(&mut table, samples);
    emit(&table, "bifurcation discriminant", &a.out)
}

/// Worker count: `HARDCLOCK_THREADS` when set, otherwise the machine's
/// available parallelism.
fn thread_budget() -> Result<usize, CliError> {
    match std::env::var("HARDCLOCK_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(usage(format!(
                "HARDCLOCK_THREADS must be a positive integer, got `{raw}`"
            ))),
        },
        Err(std::env::VarError::NotPresent) => {
            Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
        }
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(usage("HARDCLOCK_THREADS must be a positive integer"))
        }
    }
}

/// Integrates one trajectory and tabulates every recorded sample.
fn simulate_cmd(a: SimulateArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    require_finite(a.omega, "--omega")?;
    require_nonnegative(a.input, "--input")?;
    require_finite(a.x0, "--x0")?;
    require_finite(a.y0, "--y0")?;
    require_positive(a.t_final, "--t-final")?;
    require_positive(a.dt, "--dt")?;
    if let Some(tol) = a.tol {
        require_positive(tol, "--tol")?;
    }

    let stepper = match a.tol {
        Some(tol) => Stepper::AdaptiveRk45 {
            rel_tol: tol,
            abs_tol: tol * 1e-3,
        },
        None => Stepper::FixedRk4 { dt: a.dt },
    };
    let direction = if a.backward {
        Direction::Backward
    } else {
        Direction::Forward
    };
    let p = NormParams::new(a.alpha, a.omega, a.input);
    let traj = integrate(p, State::new(a.x0, a.y0), a.t_final, direction, stepper)
        .map_err(dynamics_err)?;

    let mut table = Table::new(vec!["t", "x", "y"]);
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega", Value::Num(a.omega));
    table.param("input", Value::Num(a.input));
    table.param("x0", Value::Num(a.x0));
    table.param("y0", Value::Num(a.y0));
    table.param("t-final", Value::Num(a.t_final));
    match a.tol {
        Some(tol) => table.param("tol", Value::Num(tol)),
        None => table.param("dt", Value::Num(a.dt)),
    }
    table.param("backward", Value::Bool(a.backward));
    push_trajectory(&mut table, &traj);
    emit(&table, "simulate", &a.out)
}

fn push_trajectory(table: &mut Table, traj: &Trajectory) {
    for (t, s) in traj.times.iter().zip(&traj.states) {
        table.push(vec![Value::Num(*t), Value::Num(s.x), Value::Num(s.y)]);
    }
}

/// Measures one cycle branch across an input range. Inputs where the cycle
/// is absent (past its fold, or captured by a rest point) contribute no row.
fn period_sweep_cmd(a: PeriodSweepArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    require_finite(a.omega, "--omega")?;
    if a.input_range.lo < 0.0 {
        return Err(usage(format!(
            "--input-range must start at 0 or above, got {}",
            a.input_range
        )));
    }
    let inputs = a.input_range.values();
    let measured = period_sweep(a.alpha, a.omega, &inputs, a.branch.into());

    let mut table = Table::new(vec!["input", "period"]);
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega", Value::Num(a.omega));
    table.param("input-range", Value::text(a.input_range.to_string()));
    table.param("branch", Value::text(a.branch.name()));
    for (input, estimate) in measured {
        if let Some(estimate) = estimate {
            table.push(vec![Value::Num(input), Value::Num(estimate.period)]);
        }
    }
    emit(&table, "period-sweep", &a.out)
}

/// Locates where the requested cycle collides with a nascent equilibrium
/// pair inside the given input bracket.
fn snlc_cmd(a: SnlcArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    require_finite(a.omega, "--omega")?;
    if a.bracket.lo < 0.0 {
        return Err(usage(format!(
            "--bracket must start at 0 or above, got {}",
            a.bracket
        )));
    }
    let point = detect_snlc(
        a.alpha,
        a.omega,
        (a.bracket.lo, a.bracket.hi),
        a.branch.into(),
    )
    .map_err(dynamics_err)?;

    let mut table = point_table();
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega", Value::Num(a.omega));
    table.param("bracket", Value::text(a.bracket.to_string()));
    table.param("branch", Value::text(a.branch.name()));
    push_point(&mut table, &point);
    emit(&table, "snlc", &a.out)
}

/// Settles onto the requested cycle and bins one coordinate of a uniformly
/// sampled run into equal-width bins spanning the sampled extent.
fn histogram_cmd(a: HistogramArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    require_finite(a.omega, "--omega")?;
    require_nonnegative(a.input, "--input")?;
    require_positive(a.t_final, "--t-final")?;
    require_positive(a.dt, "--dt")?;
    if a.bins == 0 {
        return Err(usage("--bins must be at least 1"));
    }

    let p = NormParams::new(a.alpha, a.omega, a.input);
    let traj = settled_run(p, a.branch.into(), a.t_final, a.dt)?;
    let hist = occupancy_histogram(&traj, a.component.into(), a.bins).map_err(dynamics_err)?;

    let mut table = Table::new(vec!["bin_lo", "bin_hi", "count"]);
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega", Value::Num(a.omega));
    table.param("input", Value::Num(a.input));
    table.param("branch", Value::text(a.branch.name()));
    table.param("component", Value::text(a.component.name()));
    table.param("bins", Value::Int(a.bins as u64));
    table.param("t-final", Value::Num(a.t_final));
    table.param("dt", Value::Num(a.dt));
    for (i, &count) in hist.counts.iter().enumerate() {
        table.push(vec![
            Value::Num(hist.bin_edges[i]),
            Value::Num(hist.bin_edges[i + 1]),
            Value::Int(count),
        ]);
    }
    emit(&table, "histogram", &a.out)
}

/// Settles onto the requested cycle, then records a uniformly sampled run.
///
/// Seeding mirrors the cycle-measurement routines: the stable cycle is
/// approached forward from the input-free outer radius, the unstable cycle
/// backward from 1.05 times the midpoint between the innermost rest point
/// and that radius, with shrunken retries when a seed escapes. The settling
/// leg runs adaptively; the recorded leg uses the fixed step so occupancy
/// counts weight time uniformly.
fn settled_run(
    p: NormParams,
    branch: CycleBranch,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory, CliError> {
    let disc = p.alpha * p.alpha - 4.0;
    if disc <= 0.0 {
        return Err(CliError::Numerical {
            kind: "no-cycle",
            message: format!(
                "the unforced clock has no limit cycles at alpha = {} (need alpha > 2)",
                p.alpha
            ),
        });
    }
    let r_outer = (p.alpha + disc.sqrt()) / 2.0;
    let seeds: Vec<State> = match branch {
        CycleBranch::Stable => vec![State::new(r_outer, 0.0)],
        CycleBranch::Unstable => {
            let inner = if p.input > 0.0 {
                find_equilibria(p)
                    .ok()
                    .and_then(|eqs| eqs.first().map(|e| e.zeta))
                    .unwrap_or(0.0)
            } else {
                0.0
            };
            let base = 1.05 * (inner + r_outer) / 2.0;
            SEED_SHRINK
                .iter()
                .map(|f| State::new(f * base, 0.0))
                .collect()
        }
    };

    let direction = branch.direction();
    let adaptive = Stepper::AdaptiveRk45 {
        rel_tol: SETTLE_REL_TOL,
        abs_tol: SETTLE_ABS_TOL,
    };
    let mut last_escape = None;
    for seed in seeds {
        match integrate(p, seed, SETTLE_SPAN, direction, adaptive) {
            Ok(t) => {
                let settled = t
                    .last_state()
                    .expect("integration records at least one state");
                return integrate(p, settled, t_final, direction, Stepper::FixedRk4 { dt })
                    .map_err(dynamics_err);
            }
            Err(e @ DynamicsError::Blowup { .. }) => last_escape = Some(e),
            Err(e) => return Err(dynamics_err(e)),
        }
    }
    Err(dynamics_err(last_escape.unwrap_or(DynamicsError::NoCycle {
        reason: "no settling seed survived",
    })))
}

/// Records one steady-state waveform, trimmed to whole periods.
fn waveform_cmd(a: WaveformArgs) -> Result<(), CliError> {
    require_finite(a.alpha, "--alpha")?;
    require_finite(a.omega, "--omega")?;
    require_nonnegative(a.input, "--input")?;
    require_positive(a.t_final, "--t-final")?;
    require_positive(a.dt, "--dt")?;

    let p = NormParams::new(a.alpha, a.omega, a.input);
    let traj = waveform(p, a.branch.into(), a.t_final, a.dt).map_err(dynamics_err)?;

    let mut table = Table::new(vec!["t", "x", "y"]);
    table.param("alpha", Value::Num(a.alpha));
    table.param("omega", Value::Num(a.omega));
    table.param("input", Value::Num(a.input));
    table.param("branch", Value::text(a.branch.name()));
    table.param("t-final", Value::Num(a.t_final));
    table.param("dt", Value::Num(a.dt));
    push_trajectory(&mut table, &traj);
    emit(&table, "waveform", &a.out)
}

/// Classifies the unforced system and reports its circular cycles.
fn autonomous_cmd(a: RawArgs) -> Result<(), CliError> {
    require_json(&a, "autonomous")?;
    let raw = RawParams::new(a.sigma0, a.sigma1, a.sigma2, a.omega0, a.input0);
    let report = autonomous_regime(raw).map_err(bifurcation_err)?;

    let mut cycles = String::new();
    for (i, c) in report.cycles.iter().enumerate() {
        if i > 0 {
            cycles.push(',');
        }
        let _ = write!(
            cycles,
            "{{\"radius\":{},\"stable\":{}}}",
            format_float(c.radius),
            c.stable
        );
    }
    let flags: Vec<String> = report
        .flags
        .iter()
        .map(|f| json_string(flag_name(f)))
        .collect();
    let body = format!(
        "{{\"params\":{{{}}},\"regime\":{},\"origin_stable\":{},\"cycles\":[{cycles}],\"flags\":[{}]}}\n",
        raw_params_json("autonomous", &a),
        json_string(regime_name(&report.regime)),
        report.origin_stable,
        flags.join(","),
    );
    write_out(&body, a.output.as_deref())
}

/// Reduces raw coefficients to the three normalized parameters.
fn normalize_cmd(a: RawArgs) -> Result<(), CliError> {
    require_json(&a, "normalize")?;
    let raw = RawParams::new(a.sigma0, a.sigma1, a.sigma2, a.omega0, a.input0);
    let p = normalize(raw).map_err(|e| usage(e.to_string()))?;
    let body = format!(
        "{{\"params\":{{{}}},\"normalized\":{{\"alpha\":{},\"omega\":{},\"input\":{}}}}}\n",
        raw_params_json("normalize", &a),
        format_float(p.alpha),
        format_float(p.omega),
        format_float(p.input),
    );
    write_out(&body, a.output.as_deref())
}

fn require_json(a: &RawArgs, command: &str) -> Result<(), CliError> {
    match a.format {
        Format::Json => Ok(()),
        Format::Csv => Err(usage(format!(
            "`{command}` emits a structured report; only --format json is supported"
        ))),
    }
}

fn raw_params_json(command: &str, a: &RawArgs) -> String {
    format!(
        "\"command\":{},\"sigma0\":{},\"sigma1\":{},\"sigma2\":{},\"omega0\":{},\"input0\":{}",
        json_string(command),
        format_float(a.sigma0),
        format_float(a.sigma1),
        format_float(a.sigma2),
        format_float(a.omega0),
        format_float(a.input0),
    )
}
