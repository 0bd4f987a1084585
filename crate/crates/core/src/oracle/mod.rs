//! Direct numerical eigensolver used as ground truth for the semiclassical
//! quantizers.
//!
//! The angular equation is solved in its self-adjoint weighted form
//!
//! ```text
//! −(1/sinθ) (sinθ T')' + (m²/sin²θ) T = λ² T
//! ```
//!
//! by a cell-centred finite-volume scheme on (0, π). Face fluxes carry the
//! weight `sin θ_face`, which vanishes on the two boundary faces, so bounded
//! solutions are selected without truncating the interval.
//!
//! The partner Hamiltonians `H± = −d²/dθ² + V±` diverge like `1/sin²θ`; they
//! are discretized by central differences on `[ε, π − ε]` with Dirichlet ends.

mod tridiag;

use std::f64::consts::PI;

pub use tridiag::SymTridiagonal;

use crate::error::{Error, Result};
use crate::problem::{PartnerSign, SuperpotentialModel};

pub const MIN_GRID: usize = 50;
pub const DEFAULT_GRID: usize = 4000;
pub const DEFAULT_EPSILON: f64 = 1e-3;
pub const DEFAULT_EIGEN_COUNT: usize = 6;
pub const EIGEN_TOLERANCE: f64 = 1e-12;

/// Finite-difference step of [`ode_residual`].
pub const RESIDUAL_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscretizationKind {
    AngularTForm,
    PartnerMinus,
    PartnerPlus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedProblem {
    kind: DiscretizationKind,
    m: u32,
    n_grid: usize,
    epsilon: f64,
    matrix: SymTridiagonal,
}

impl DiscretizedProblem {
    pub fn kind(&self) -> DiscretizationKind {
        self.kind
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_grid(&self) -> usize {
        self.n_grid
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn matrix(&self) -> &SymTridiagonal {
        &self.matrix
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub kind: DiscretizationKind,
    pub m: u32,
    pub n_grid: usize,
    pub epsilon: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `|value(n_grid) − value(n_grid/2)|` per eigenvalue.
    pub grid_errors: Vec<f64>,
}

impl SpectrumEstimate {
    pub fn grid_error_estimate(&self) -> f64 {
        self.grid_errors.iter().copied().fold(0.0, f64::max)
    }
}

pub fn build_discretization(
    kind: DiscretizationKind,
    m: u32,
    n_grid: usize,
    epsilon: f64,
) -> Result<DiscretizedProblem> {
    if n_grid < MIN_GRID {
        return Err(Error::InvalidGrid(format!(
            "n_grid = {n_grid} is below {MIN_GRID}"
        )));
    }
    if kind != DiscretizationKind::AngularTForm && !(epsilon > 0.0 && epsilon < 0.1) {
        return Err(Error::InvalidGrid(format!(
            "epsilon = {epsilon} must lie in (0, 0.1)"
        )));
    }
    assemble(kind, m, n_grid, epsilon)
}

fn assemble(
    kind: DiscretizationKind,
    m: u32,
    n_grid: usize,
    epsilon: f64,
) -> Result<DiscretizedProblem> {
    let matrix = match kind {
        DiscretizationKind::AngularTForm => assemble_angular(m, n_grid)?,
        DiscretizationKind::PartnerMinus => {
            assemble_partner(PartnerSign::Minus, m, n_grid, epsilon)?
        }
        DiscretizationKind::PartnerPlus => assemble_partner(PartnerSign::Plus, m, n_grid, epsilon)?,
    };
    Ok(DiscretizedProblem {
        kind,
        m,
        n_grid,
        epsilon,
        matrix,
    })
}

fn assemble_angular(m: u32, n: usize) -> Result<SymTridiagonal> {
    let h = PI / n as f64;
    let m_sq = f64::from(m).powi(2);
    let center = |i: usize| (i as f64 + 0.5) * h;
    // sin at face i + 1/2; zero on both boundary faces.
    let face = |i: usize| {
        if i + 1 >= n {
            0.0
        } else {
            ((i + 1) as f64 * h).sin()
        }
    };
    let weight: Vec<f64> = (0..n).map(|i| center(i).sin()).collect();

    let diag = (0..n)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { face(i - 1) };
            let s = weight[i];
            (left + face(i)) / (h * h * s) + m_sq / (s * s)
        })
        .collect();
    // W^{-1/2} A W^{-1/2}
    let off = (0..n - 1)
        .map(|i| -face(i) / (h * h * (weight[i] * weight[i + 1]).sqrt()))
        .collect();
    SymTridiagonal::new(diag, off)
}

fn assemble_partner(sign: PartnerSign, m: u32, n: usize, epsilon: f64) -> Result<SymTridiagonal> {
    let h = (PI - 2.0 * epsilon) / (n + 1) as f64;
    let model = SuperpotentialModel::new(m);
    let diag = (0..n)
        .map(|i| {
            let theta = epsilon + (i + 1) as f64 * h;
            Ok(2.0 / (h * h) + model.partner_potential(sign, theta)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    SymTridiagonal::new(diag, vec![-1.0 / (h * h); n - 1])
}

/// The `k` lowest eigenvalues, with a grid-error estimate from re-solving at
/// half the resolution.
pub fn solve_spectrum(problem: &DiscretizedProblem, k: usize) -> Result<SpectrumEstimate> {
    if k == 0 || k > problem.n_grid {
        return Err(Error::InvalidGrid(format!(
            "k = {k} must lie in 1..={}",
            problem.n_grid
        )));
    }
    let eigenvalues = problem.matrix.lowest_eigenvalues(k, EIGEN_TOLERANCE)?;
    let coarse_n = problem.n_grid / 2;
    let coarse_k = k.min(coarse_n);
    let coarse = assemble(problem.kind, problem.m, coarse_n, problem.epsilon)?
        .matrix
        .lowest_eigenvalues(coarse_k, EIGEN_TOLERANCE)?;
    let grid_errors = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, v)| coarse.get(i).map_or(f64::INFINITY, |c| (v - c).abs()))
        .collect();
    Ok(SpectrumEstimate {
        kind: problem.kind,
        m: problem.m,
        n_grid: problem.n_grid,
        epsilon: problem.epsilon,
        eigenvalues,
        grid_errors,
    })
}

/// Lowest `k` eigenvalues `λ²` of the angular equation at azimuthal number `m`.
pub fn angular_spectrum(m: u32, n_grid: usize, k: usize) -> Result<SpectrumEstimate> {
    let problem =
        build_discretization(DiscretizationKind::AngularTForm, m, n_grid, DEFAULT_EPSILON)?;
    solve_spectrum(&problem, k)
}

/// Largest `|T'' + cot θ T' + (λ² − m²/sin²θ) T|` over `n_samples` uniform
/// points of `[0.1, π − 0.1]`, with derivatives from fourth-order central
/// differences of step [`RESIDUAL_STEP`].
pub fn ode_residual<T>(m: u32, lambda_squared: f64, t: T, n_samples: usize) -> Result<f64>
where
    T: Fn(f64) -> Result<f64>,
{
    if n_samples < 10 {
        return Err(Error::InvalidGrid(format!(
            "n_samples = {n_samples} is below 10"
        )));
    }
    let h = RESIDUAL_STEP;
    let (lo, hi) = (0.1, PI - 0.1);
    let m_sq = f64::from(m).powi(2);
    let mut worst = 0.0_f64;
    for i in 0..n_samples {
        let theta = lo + (hi - lo) * i as f64 / (n_samples - 1) as f64;
        let f = |k: f64| t(theta + k * h);
        let (fm2, fm1, f0, fp1, fp2) = (f(-2.0)?, f(-1.0)?, f(0.0)?, f(1.0)?, f(2.0)?);
        let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        let s = theta.sin();
        let r = d2 + theta.cos() / s * d1 + (lambda_squared - m_sq / (s * s)) * f0;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyTolerances {
    pub ground: f64,
    pub partner: f64,
    pub shift: f64,
}

impl Default for SusyTolerances {
    fn default() -> Self {
        Self {
            ground: 1e-3,
            partner: 5e-3,
            shift: 5e-3,
        }
    }
}

/// Measured deviations from the three SUSY statements at one `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SusyReport {
    pub m: u32,
    pub n_grid: usize,
    pub k: usize,
    pub h_minus: Vec<f64>,
    pub h_plus: Vec<f64>,
    /// `|E₋⁰|`.
    pub ground_energy: f64,
    /// `max_j |E₋^j − E₊^{j−1}|`, j ≥ 1.
    pub partner_mismatch: f64,
    /// `max_j |E₋^j + m(m+1) − l_j(l_j+1)|` with `l_j = m + j`.
    pub shift_mismatch: f64,
    pub tolerances: SusyTolerances,
}

impl SusyReport {
    pub fn ground_passes(&self) -> bool {
        self.ground_energy <= self.tolerances.ground
    }

    pub fn partner_passes(&self) -> bool {
        self.partner_mismatch <= self.tolerances.partner
    }

    pub fn shift_passes(&self) -> bool {
        self.shift_mismatch <= self.tolerances.shift
    }

    pub fn all_pass(&self) -> bool {
        self.ground_passes() && self.partner_passes() && self.shift_passes()
    }
}

pub fn susy_checks(m: u32, n_grid: usize, k: usize) -> Result<SusyReport> {
    susy_checks_with(m, n_grid, k, DEFAULT_EPSILON, SusyTolerances::default())
}

pub fn susy_checks_with(
    m: u32,
    n_grid: usize,
    k: usize,
    epsilon: f64,
    tolerances: SusyTolerances,
) -> Result<SusyReport> {
    if m == 0 {
        return Err(Error::InvalidQuantumNumber(
            "SUSY checks need m >= 1".into(),
        ));
    }
    if k < 2 {
        return Err(Error::InvalidGrid(format!("k = {k} must be at least 2")));
    }
    let minus = build_discretization(DiscretizationKind::PartnerMinus, m, n_grid, epsilon)?;
    let plus = build_discretization(DiscretizationKind::PartnerPlus, m, n_grid, epsilon)?;
    let h_minus = minus.matrix.lowest_eigenvalues(k, EIGEN_TOLERANCE)?;
    let h_plus = plus.matrix.lowest_eigenvalues(k - 1, EIGEN_TOLERANCE)?;

    let partner_mismatch = h_minus[1..]
        .iter()
        .zip(&h_plus)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let lambda0_sq = f64::from(m) * f64::from(m + 1);
    let shift_mismatch = h_minus
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let l = f64::from(m) + j as f64;
            (e + lambda0_sq - l * (l + 1.0)).abs()
        })
        .fold(0.0, f64::max);
    Ok(SusyReport {
        m,
        n_grid,
        k,
        ground_energy: h_minus[0].abs(),
        h_minus,
        h_plus,
        partner_mismatch,
        shift_mismatch,
        tolerances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::ground_state;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_validation() {
        assert!(build_discretization(DiscretizationKind::AngularTForm, 0, 49, 1e-3).is_err());
        assert!(build_discretization(DiscretizationKind::PartnerMinus, 1, 100, 0.0).is_err());
        assert!(build_discretization(DiscretizationKind::PartnerPlus, 1, 100, 0.2).is_err());
        // ε is irrelevant for the weighted form.
        assert!(build_discretization(DiscretizationKind::AngularTForm, 1, 100, 0.0).is_ok());
    }

    #[test]
    fn angular_constant_mode() {
        let p = build_discretization(DiscretizationKind::AngularTForm, 0, 100, 1e-3).unwrap();
        let s = solve_spectrum(&p, 1).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn assembled_operators_are_symmetric() {
        for kind in [
            DiscretizationKind::AngularTForm,
            DiscretizationKind::PartnerMinus,
            DiscretizationKind::PartnerPlus,
        ] {
            let p = build_discretization(kind, 2, 60, 1e-3).unwrap();
            let a = p.matrix();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert_eq!(a.get(i, j), a.get(j, i));
                }
            }
        }
    }

    #[test]
    fn angular_second_eigenvalue_m1() {
        let s = angular_spectrum(1, 4000, 2).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[1], 6.0, epsilon = 1e-3);
    }

    #[test]
    fn angular_spectra_match_l_l_plus_one() {
        let s = angular_spectrum(0, 4000, 3).unwrap();
        for (v, e) in s.eigenvalues.iter().zip([0.0, 2.0, 6.0]) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-3);
        }
        let s = angular_spectrum(2, 4000, 2).unwrap();
        for (v, e) in s.eigenvalues.iter().zip([6.0, 12.0]) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-3);
        }
        assert!(s.grid_error_estimate() > 0.0);
    }

    #[test]
    fn partner_minus_ground_state_vanishes() {
        let p = build_discretization(DiscretizationKind::PartnerMinus, 2, 2000, 1e-3).unwrap();
        let s = solve_spectrum(&p, 1).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.0, epsilon = 1e-3);
    }

    #[test]
    fn partner_minus_m1_spectrum() {
        let p = build_discretization(DiscretizationKind::PartnerMinus, 1, 4000, 1e-3).unwrap();
        let s = solve_spectrum(&p, 2).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 0.0, epsilon = 5e-3);
        assert_abs_diff_eq!(s.eigenvalues[1], 4.0, epsilon = 5e-3);
    }

    #[test]
    fn ode_residual_examples() {
        let g1 = ground_state(1);
        let r = ode_residual(1, 2.0, |t| g1.t0(t), 101).unwrap();
        assert!(r <= 1e-8, "{r}");

        let p20 = |t: f64| Ok((3.0 * t.cos().powi(2) - 1.0) / 2.0);
        let r = ode_residual(0, 6.0, p20, 101).unwrap();
        assert!(r <= 1e-8, "{r}");

        let r = ode_residual(0, 1.0, |_| Ok(1.0), 101).unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-9);

        assert!(ode_residual(0, 0.0, |_| Ok(1.0), 5).is_err());
    }

    #[test]
    fn susy_examples() {
        let r = susy_checks(1, 4000, 4).unwrap();
        assert!(r.ground_energy <= 1e-3, "{r:?}");
        assert!(r.partner_mismatch <= 5e-3, "{r:?}");
        let r = susy_checks(2, 4000, 3).unwrap();
        assert!(r.shift_mismatch <= 5e-3, "{r:?}");
        assert!(r.all_pass());
        assert!(susy_checks(0, 4000, 3).is_err());
        assert!(susy_checks(1, 4000, 1).is_err());
    }

    #[test]
    fn h_minus_is_nonnegative() {
        let r = susy_checks(3, 1000, 5).unwrap();
        assert!(r.h_minus.iter().all(|&e| e >= -1e-3), "{:?}", r.h_minus);
    }
}
