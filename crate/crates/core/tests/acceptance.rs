//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use angular_swkb::oracle::{angular_spectrum, ode_residual, susy_checks, DEFAULT_GRID};
use angular_swkb::problem::ground_state;
use angular_swkb::quadrature::{action_swkb, action_swkb_closed};
use angular_swkb::quantizers::{
    build_spectrum_row, exact_lambda_squared, langer_lambda_squared, quantize_swkb, quantize_wkb,
    SwkbMode,
};
use angular_swkb::verify::max_shape_invariance_residual;

const QN_MAX: u32 = 10;
const SPECTRUM_TOL: f64 = 1e-8;
const ACTION_TOL: f64 = 1e-9;
const SHAPE_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-3;
const ORACLE_RATIO: f64 = 3.5;
/// Errors this small are eigensolver roundoff (≈ ε·‖A‖ at n = 8000), not
/// discretization error, so the refinement ratio is not meaningful for them.
const ORACLE_ROUNDOFF_FLOOR: f64 = 1e-8;
const SUSY_GROUND_TOL: f64 = 1e-3;
const SUSY_PARTNER_TOL: f64 = 5e-3;
const SUSY_SHIFT_TOL: f64 = 5e-3;
const RESIDUAL_TOL: f64 = 1e-8;
const RESIDUAL_DETECT: f64 = 0.5;
const GOLDEN: &str = include_str!("golden/spectrum_m2_n2_swkb_wkb.csv");

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn swkb_exactness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for m in 0..=QN_MAX {
        for n in 0..=QN_MAX {
            let r = quantize_swkb(n, m, SwkbMode::Numerical).expect("swkb quantization");
            let exact = f64::from(n + m) * f64::from(n + m + 1);
            worst = worst.max((r.lambda_squared - exact).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= SPECTRUM_TOL,
        format!("max |λ² − l(l+1)| = {worst:.3e} (tol {SPECTRUM_TOL:e}), {secs:.2} s"),
    )
}

fn wkb_langer() -> Outcome {
    let mut worst = 0.0_f64;
    let mut gap_exact = true;
    for m in 0..=QN_MAX {
        for n in 0..=QN_MAX {
            let r = quantize_wkb(n, m).expect("wkb quantization");
            let langer = (f64::from(n + m) + 0.5).powi(2);
            worst = worst.max((r.lambda_squared - langer).abs());
            let row = build_spectrum_row(n, m, None).expect("row");
            let l = n + m;
            gap_exact &= row.langer_gap() == 0.25
                && langer_lambda_squared(l) - exact_lambda_squared(l) == 0.25;
        }
    }
    outcome(
        worst <= SPECTRUM_TOL && gap_exact,
        format!("max |λ² − (l+1/2)²| = {worst:.3e} (tol {SPECTRUM_TOL:e}), Langer gap exactly 1/4: {gap_exact}"),
    )
}

fn closed_form_action() -> Outcome {
    let mut worst = 0.0_f64;
    for m in 0..=QN_MAX {
        for e in [0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
            let num = action_swkb(e, m).expect("quadrature").value;
            let closed = action_swkb_closed(e, m).expect("closed").value;
            worst = worst.max((num - closed).abs());
        }
    }
    outcome(
        worst <= ACTION_TOL,
        format!("max gap = {worst:.3e} (tol {ACTION_TOL:e})"),
    )
}

fn shape_invariance() -> Outcome {
    let worst = max_shape_invariance_residual(20).expect("residual");
    outcome(
        worst <= SHAPE_TOL,
        format!("max residual over m=1..20, 1000 points = {worst:.3e} (tol {SHAPE_TOL:e})"),
    )
}

fn oracle_ground_truth() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    let mut worst_ratio = f64::INFINITY;
    let mut ratio_ok = true;
    for m in 0..=3u32 {
        let coarse = angular_spectrum(m, DEFAULT_GRID, 5).expect("oracle");
        let fine = angular_spectrum(m, 2 * DEFAULT_GRID, 5).expect("oracle");
        for j in 0..5 {
            let exact = exact_lambda_squared(m + j as u32);
            let e_coarse = (coarse.eigenvalues[j] - exact).abs();
            let e_fine = (fine.eigenvalues[j] - exact).abs();
            worst = worst.max(e_coarse);
            if e_coarse > ORACLE_ROUNDOFF_FLOOR {
                let ratio = e_coarse / e_fine;
                worst_ratio = worst_ratio.min(ratio);
                ratio_ok &= ratio >= ORACLE_RATIO;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= ORACLE_TOL && ratio_ok,
        format!(
            "max error at n=4000 = {worst:.3e} (tol {ORACLE_TOL:e}), min refinement ratio = {worst_ratio:.3} (need ≥ {ORACLE_RATIO}), {secs:.2} s"
        ),
    )
}

fn susy_statements() -> Outcome {
    let (mut g, mut p, mut s) = (0.0_f64, 0.0_f64, 0.0_f64);
    for m in 1..=3 {
        let r = susy_checks(m, DEFAULT_GRID, 6).expect("susy");
        g = g.max(r.ground_energy);
        p = p.max(r.partner_mismatch);
        s = s.max(r.shift_mismatch);
    }
    outcome(
        g <= SUSY_GROUND_TOL && p <= SUSY_PARTNER_TOL && s <= SUSY_SHIFT_TOL,
        format!(
            "|E₋⁰| = {g:.3e} (tol {SUSY_GROUND_TOL:e}), partner = {p:.3e} (tol {SUSY_PARTNER_TOL:e}), shift = {s:.3e} (tol {SUSY_SHIFT_TOL:e})"
        ),
    )
}

fn ground_state_residual() -> Outcome {
    let mut worst = 0.0_f64;
    let mut weakest_detection = f64::INFINITY;
    for m in 0..=5 {
        let g = ground_state(m);
        let t = |theta: f64| g.t0(theta);
        worst = worst.max(ode_residual(m, g.lambda0_squared(), t, 201).expect("residual"));
        let wrong = ode_residual(m, g.lambda0_squared() + 1.0, t, 201).expect("residual");
        weakest_detection = weakest_detection.min(wrong);
    }
    outcome(
        worst <= RESIDUAL_TOL && weakest_detection >= RESIDUAL_DETECT,
        format!(
            "max residual = {worst:.3e} (tol {RESIDUAL_TOL:e}), min residual at λ²+1 = {weakest_detection:.3} (need ≥ {RESIDUAL_DETECT})"
        ),
    )
}

fn cli_golden() -> Outcome {
    let output = Command::new(env!("CARGO_BIN_EXE_angular-swkb"))
        .args([
            "spectrum",
            "--m-max",
            "2",
            "--n-max",
            "2",
            "--methods",
            "swkb,wkb",
            "--format",
            "csv",
        ])
        .output()
        .expect("run binary");
    let identical = output.status.success() && output.stdout == GOLDEN.as_bytes();
    outcome(
        identical,
        format!(
            "exit {:?}, {} bytes vs {} golden bytes, byte-identical: {identical}",
            output.status.code(),
            output.stdout.len(),
            GOLDEN.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 SWKB exactness", swkb_exactness),
        ("AC2 WKB gives Langer", wkb_langer),
        ("AC3 closed-form action agreement", closed_form_action),
        ("AC4 shape invariance", shape_invariance),
        ("AC5 eigensolver ground truth", oracle_ground_truth),
        ("AC6 SUSY statements", susy_statements),
        ("AC7 ground-state ODE residual", ground_state_residual),
        ("AC8 CLI golden output", cli_golden),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let o = check();
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
