//! Cross-check suites: shape invariance, closed-vs-numerical actions, and the
//! SUSY spectral statements.

use std::f64::consts::PI;

use crate::error::Result;
use crate::oracle::{susy_checks_with, SusyTolerances, DEFAULT_EPSILON};
use crate::problem::shape_invariance_residual;
use crate::quadrature::{action_swkb, action_swkb_closed, action_wkb};

pub const SHAPE_INVARIANCE_TOL: f64 = 1e-9;
pub const SHAPE_INVARIANCE_POINTS: usize = 1000;
/// Grid edge distance from 0 and π; the residual cancels two `1/sin²θ` terms.
pub const SHAPE_INVARIANCE_MARGIN: f64 = 0.01;
pub const ACTION_AGREEMENT_TOL: f64 = 1e-9;
pub const ACTION_ENERGIES: [f64; 6] = [0.5, 1.0, 2.0, 5.0, 10.0, 50.0];
pub const ACTION_M_MAX: u32 = 10;
pub const WKB_EXCESS: [f64; 3] = [0.5, 1.5, 2.5];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

/// `n` uniformly spaced points of `[margin, π − margin]`, ends included.
pub fn interior_grid(n: usize, margin: f64) -> impl Iterator<Item = f64> {
    let (lo, hi) = (margin, PI - margin);
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Largest `|V₋(m, θ) − V₊(m − 1, θ) + 2m|` over `m ∈ 1..=m_max` and the interior grid.
pub fn max_shape_invariance_residual(m_max: u32) -> Result<f64> {
    let mut worst = 0.0_f64;
    for m in 1..=m_max {
        for theta in interior_grid(SHAPE_INVARIANCE_POINTS, SHAPE_INVARIANCE_MARGIN) {
            worst = worst.max(shape_invariance_residual(m, theta)?.abs());
        }
    }
    Ok(worst)
}

pub fn shape_invariance_suite(m_max: u32, tol: Option<f64>) -> Result<Vec<CheckOutcome>> {
    Ok(vec![CheckOutcome::new(
        format!("shape-invariance m=1..{m_max}"),
        max_shape_invariance_residual(m_max)?,
        tol.unwrap_or(SHAPE_INVARIANCE_TOL),
    )])
}

/// Largest gap between the quadrature and closed-form SWKB actions.
pub fn max_swkb_action_gap() -> Result<f64> {
    let mut worst = 0.0_f64;
    for m in 0..=ACTION_M_MAX {
        for energy in ACTION_ENERGIES {
            let numerical = action_swkb(energy, m)?.value;
            let closed = action_swkb_closed(energy, m)?.value;
            worst = worst.max((numerical - closed).abs());
        }
    }
    Ok(worst)
}

/// Largest gap between the quadrature WKB action and `π(λ − m)`.
pub fn max_wkb_action_gap() -> Result<f64> {
    let mut worst = 0.0_f64;
    for m in 1..=ACTION_M_MAX {
        for excess in WKB_EXCESS {
            let lambda = f64::from(m) + excess;
            let numerical = action_wkb(lambda, m)?.value;
            worst = worst.max((numerical - PI * excess).abs());
        }
    }
    Ok(worst)
}

pub fn quadrature_suite(tol: Option<f64>) -> Result<Vec<CheckOutcome>> {
    let tol = tol.unwrap_or(ACTION_AGREEMENT_TOL);
    Ok(vec![
        CheckOutcome::new(
            "quadrature swkb numerical-vs-closed",
            max_swkb_action_gap()?,
            tol,
        ),
        CheckOutcome::new(
            "quadrature wkb numerical-vs-closed",
            max_wkb_action_gap()?,
            tol,
        ),
    ])
}

/// Three checks per `m ∈ 1..=m_max`. A `tol` override replaces all three tolerances.
pub fn susy_suite(
    m_max: u32,
    n_grid: usize,
    k: usize,
    tol: Option<f64>,
) -> Result<Vec<CheckOutcome>> {
    let tolerances = tol.map_or_else(SusyTolerances::default, |t| SusyTolerances {
        ground: t,
        partner: t,
        shift: t,
    });
    let mut out = Vec::new();
    for m in 1..=m_max {
        let r = susy_checks_with(m, n_grid, k, DEFAULT_EPSILON, tolerances)?;
        out.push(CheckOutcome::new(
            format!("susy m={m} ground-energy-vanishes"),
            r.ground_energy,
            r.tolerances.ground,
        ));
        out.push(CheckOutcome::new(
            format!("susy m={m} partner-spectra-coincide"),
            r.partner_mismatch,
            r.tolerances.partner,
        ));
        out.push(CheckOutcome::new(
            format!("susy m={m} shifted-spectrum-is-l(l+1)"),
            r.shift_mismatch,
            r.tolerances.shift,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_covers_margins() {
        let pts: Vec<f64> = interior_grid(1000, 0.01).collect();
        assert_eq!(pts.len(), 1000);
        assert_eq!(pts[0], 0.01);
        assert!((pts[999] - (PI - 0.01)).abs() < 1e-15);
    }

    #[test]
    fn suites_pass_at_default_tolerances() {
        assert!(shape_invariance_suite(20, None)
            .unwrap()
            .iter()
            .all(CheckOutcome::passed));
        assert!(quadrature_suite(None)
            .unwrap()
            .iter()
            .all(CheckOutcome::passed));
    }

    #[test]
    fn tol_override_can_force_failure() {
        let checks = quadrature_suite(Some(0.0)).unwrap();
        assert_eq!(checks[0].tolerance, 0.0);
        let checks = susy_suite(1, 200, 3, Some(1e-30)).unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().any(|c| !c.passed()));
    }
}
