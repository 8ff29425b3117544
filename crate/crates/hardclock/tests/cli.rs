//! End-to-end tests of the `hardclock` binary: exit codes, output formats,
//! determinism, and the documented values of well-studied invocations.

use std::process::{Command, Output};

use hardclock_core::{find_equilibria, NormParams};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hardclock"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Runs a successful invocation and returns its stdout.
fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "`{}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("output is UTF-8")
}

/// Data rows of CSV output: metadata and header lines stripped, cells split.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn cell(row: &[String], idx: usize) -> f64 {
    row[idx].parse().expect("numeric cell")
}

// ---------------------------------------------------------------------------
// Exit-code contract.

#[test]
fn unknown_flag_exits_with_usage_code() {
    let out = run(&["equilibria", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_required_group_exits_with_usage_code() {
    // No input given at all.
    let out = run(&["equilibria", "--omega", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_input_directs_to_autonomous() {
    let out = run(&["equilibria", "--omega", "0.25", "--input", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("autonomous"),
        "rejection must name the right subcommand, got: {stderr}"
    );
}

#[test]
fn help_and_version_succeed() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}

#[test]
fn numerical_failure_exits_3_with_error_json() {
    // The stable cycle persists on [0.1, 0.3]; the bracket claim is false.
    let out = run(&[
        "snlc", "--omega", "0.25", "--branch", "stable", "--bracket", "0.1:0.3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).expect("stderr is UTF-8");
    let doc: serde_json::Value = serde_json::from_str(stderr.trim()).expect("stderr is JSON");
    assert_eq!(doc["error"]["kind"], "bracket");
    assert!(doc["error"]["message"].is_string());
}

#[test]
fn invalid_thread_cap_exits_with_usage_code() {
    let out = bin()
        .args(["bifurcation", "discriminant"])
        .env("HARDCLOCK_THREADS", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_range_exits_with_usage_code() {
    for bad in ["1:0.5:10", "0:1:1", "0:1", "a:b:c"] {
        let out = run(&["equilibria", "--omega", "0.25", "--input-range", bad]);
        assert_eq!(out.status.code(), Some(2), "range `{bad}` must be rejected");
    }
}

// ---------------------------------------------------------------------------
// Determinism.

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["histogram", "--omega", "0.25", "--input", "0.653"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn discriminant_output_is_thread_count_independent() {
    let args = [
        "bifurcation",
        "discriminant",
        "--omega-range",
        "0.1:1:120",
        "--input-range",
        "0.01:3:300",
    ];
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = bin()
            .args(args)
            .env("HARDCLOCK_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn no_meta_strips_exactly_the_comment_lines() {
    let with_meta = run_ok(&["bifurcation", "bt"]);
    let without = run_ok(&["bifurcation", "bt", "--no-meta"]);
    let stripped: String = with_meta
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(stripped, without);
    assert!(with_meta.lines().any(|l| l.starts_with("# command: ")));
}

// ---------------------------------------------------------------------------
// JSON format.

#[test]
fn json_has_params_columns_rows_and_round_trips_exactly() {
    let text = run_ok(&[
        "equilibria", "--omega", "0.25", "--input", "1.0", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert!(doc["params"].is_object());
    assert_eq!(doc["params"]["command"], "equilibria");
    assert_eq!(doc["columns"][2], "zeta");

    // Three equilibria at this point; the serialized radii must reparse to
    // the library's doubles bit for bit.
    let expected = find_equilibria(NormParams::new(3.0, 0.25, 1.0)).expect("solvable");
    let rows = doc["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 3);
    for (row, eq) in rows.iter().zip(&expected) {
        let zeta = row[2].as_f64().expect("numeric zeta");
        assert_eq!(zeta.to_bits(), eq.zeta.to_bits(), "full-precision round trip");
    }
}

#[test]
fn csv_cells_reparse_to_identical_doubles() {
    let text = run_ok(&["equilibria", "--omega", "0.25", "--input", "1.0"]);
    let rows = csv_rows(&text);
    let expected = find_equilibria(NormParams::new(3.0, 0.25, 1.0)).expect("solvable");
    assert_eq!(rows.len(), 3);
    for (row, eq) in rows.iter().zip(&expected) {
        assert_eq!(cell(row, 2).to_bits(), eq.zeta.to_bits());
        assert_eq!(cell(row, 3).to_bits(), eq.x.to_bits());
        assert_eq!(cell(row, 4).to_bits(), eq.y.to_bits());
    }
}

// ---------------------------------------------------------------------------
// Documented values of reference invocations.

#[test]
fn equilibria_inside_the_monostable_window_yields_one_row() {
    // (alpha, omega, input) = (3, 0.25, 0.3) sits between the two fold pairs
    // of the quarter-frequency section, where exactly one rest point exists.
    let text = run_ok(&["equilibria", "--alpha", "3", "--omega", "0.25", "--input", "0.3"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][7], "unstable-node");
}

#[test]
fn equilibria_sweep_without_folds_yields_one_row_per_input() {
    // At omega = 1.5 the fold locus is never crossed: every input has
    // exactly one rest point, so the sweep emits one row per sample in
    // ascending input order.
    let text = run_ok(&[
        "equilibria", "--omega", "1.5", "--input-range", "0.01:3:300",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 300);
    for pair in rows.windows(2) {
        assert!(cell(&pair[0], 1) < cell(&pair[1], 1));
    }
}

#[test]
fn bt_table_holds_both_points() {
    let text = run_ok(&["bifurcation", "bt", "--alpha", "3"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2);
    let expected = [
        (0.3125, 0.110485434560398_05),
        (1.0, 2.828427124746190_3),
    ];
    for (row, (omega, input)) in rows.iter().zip(expected) {
        assert!((cell(row, 0) - omega).abs() <= 1e-9);
        assert!((cell(row, 1) - input).abs() <= 1e-9);
        assert_eq!(row[5], "bogdanov-takens");
    }
}

#[test]
fn hopf_branches_start_at_their_validity_thresholds() {
    let text = run_ok(&[
        "bifurcation", "hopf", "--alpha", "3", "--omega-range", "0.05:2:200",
    ]);
    let rows = csv_rows(&text);
    let first_of = |id: &str| {
        rows.iter()
            .find(|r| r[0] == id)
            .unwrap_or_else(|| panic!("branch {id} missing"))
    };
    // The small-radius branch exists only above 5/16, the large-radius
    // branch only above 1; both sweeps clamp to their thresholds.
    assert!((cell(first_of("0"), 1) - 0.3125).abs() <= 1e-6);
    assert!((cell(first_of("1"), 1) - 1.0).abs() <= 1e-6);
    for row in &rows {
        let expected_kind = if row[0] == "0" { "hopf-sub" } else { "hopf-super" };
        assert_eq!(row[4], expected_kind);
    }
}

#[test]
fn snlocus_passes_near_the_quarter_frequency_fold() {
    let text = run_ok(&["bifurcation", "snlocus", "--alpha", "3"]);
    let rows = csv_rows(&text);
    assert!(rows.len() > 100);

    // Minimum point-to-segment distance from (omega, input) = (0.25, 0.091)
    // to the emitted polylines.
    let target = (0.25, 0.091);
    let mut best = f64::INFINITY;
    let mut per_branch: Vec<Vec<(f64, f64)>> = Vec::new();
    for row in &rows {
        let id: usize = row[0].parse().expect("branch id");
        if per_branch.len() <= id {
            per_branch.resize(id + 1, Vec::new());
        }
        per_branch[id].push((cell(row, 1), cell(row, 2)));
    }
    for branch in &per_branch {
        for pair in branch.windows(2) {
            best = best.min(segment_distance(target, pair[0], pair[1]));
        }
    }
    assert!(best <= 1e-3, "closest approach {best:.2e} exceeds 1e-3");
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (ux, uy) = (b.0 - a.0, b.1 - a.1);
    let (vx, vy) = (p.0 - a.0, p.1 - a.1);
    let len2 = ux * ux + uy * uy;
    let t = if len2 > 0.0 {
        ((vx * ux + vy * uy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (dx, dy) = (vx - t * ux, vy - t * uy);
    (dx * dx + dy * dy).sqrt()
}

#[test]
fn snlc_locates_the_stable_side_collision() {
    let text = run_ok(&[
        "snlc", "--alpha", "3", "--omega", "0.25", "--branch", "stable",
        "--bracket", "0.5:0.8",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    let input = cell(&rows[0], 1);
    assert!(
        (0.653..=0.655).contains(&input),
        "critical input {input} outside [0.653, 0.655]"
    );
    assert_eq!(rows[0][5], "snlc");
}

#[test]
fn period_sweep_diverges_toward_the_unstable_side_collision() {
    let text = run_ok(&[
        "period-sweep", "--alpha", "3", "--omega", "0.25", "--branch", "unstable",
        "--input-range", "0:0.09:46",
    ]);
    let rows = csv_rows(&text);
    // The whole range sits below the collision, so every input keeps its
    // cycle and contributes a row.
    assert_eq!(rows.len(), 46);
    let periods: Vec<f64> = rows.iter().map(|r| cell(r, 1)).collect();
    let tail = &periods[periods.len() - 5..];
    for pair in tail.windows(2) {
        assert!(pair[0] < pair[1], "tail periods must increase");
    }
    assert!(
        periods.last().unwrap() / periods.first().unwrap() >= 5.0,
        "period growth {} -> {} is too shallow",
        periods.first().unwrap(),
        periods.last().unwrap()
    );
}

#[test]
fn histogram_without_input_peaks_at_its_rims() {
    let text = run_ok(&[
        "histogram", "--alpha", "3", "--omega", "0.25", "--input", "0",
        "--component", "x", "--bins", "60", "--t-final", "1500", "--dt", "0.01",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 60);
    let counts: Vec<u64> = rows.iter().map(|r| r[2].parse().expect("count")).collect();
    let occupied: Vec<usize> = (0..counts.len()).filter(|&i| counts[i] > 0).collect();
    let first = *occupied.first().expect("some occupancy");
    let last = *occupied.last().expect("some occupancy");
    assert!(counts[first] >= counts[first + 1], "left rim must be a peak");
    assert!(counts[last] >= counts[last - 1], "right rim must be a peak");
}

#[test]
fn normalize_reduces_the_textbook_coefficients() {
    let text = run_ok(&[
        "normalize", "--sigma0", "-4", "--sigma1", "6", "--sigma2", "-1",
        "--omega0", "1", "--input0", "2",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    let norm = &doc["normalized"];
    assert!((norm["alpha"].as_f64().unwrap() - 3.0).abs() <= 1e-12);
    assert!((norm["omega"].as_f64().unwrap() - 0.25).abs() <= 1e-12);
    assert!((norm["input"].as_f64().unwrap() - 0.25).abs() <= 1e-12);
}

#[test]
fn autonomous_reports_the_golden_radii() {
    let text = run_ok(&[
        "autonomous", "--sigma0", "-1", "--sigma1", "3", "--sigma2", "-1",
        "--omega0", "1",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(doc["regime"], "hard-excitation");
    assert_eq!(doc["origin_stable"], true);
    assert_eq!(doc["flags"].as_array().unwrap().len(), 0);

    let cycles = doc["cycles"].as_array().expect("cycles array");
    assert_eq!(cycles.len(), 2);
    let golden = 5.0_f64.sqrt();
    assert!((cycles[0]["radius"].as_f64().unwrap() - (3.0 - golden) / 2.0).abs() <= 1e-12);
    assert_eq!(cycles[0]["stable"], false);
    assert!((cycles[1]["radius"].as_f64().unwrap() - (3.0 + golden) / 2.0).abs() <= 1e-12);
    assert_eq!(cycles[1]["stable"], true);
}

#[test]
fn autonomous_rejects_csv_format() {
    let out = run(&[
        "autonomous", "--sigma0", "-1", "--sigma1", "3", "--sigma2", "-1",
        "--omega0", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn waveform_emits_a_trajectory_table() {
    let text = run_ok(&[
        "waveform", "--omega", "0.25", "--input", "0.5", "--t-final", "100",
    ]);
    let rows = csv_rows(&text);
    assert!(rows.len() > 100, "expected a sampled waveform");
    assert_eq!(rows[0].len(), 3);
    // Samples march at the fixed step from zero.
    assert_eq!(cell(&rows[0], 0), 0.0);
    assert!((cell(&rows[1], 0) - 0.01).abs() <= 1e-12);
}
