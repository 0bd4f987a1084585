//! Quantization conditions for the angular problem.
//!
//! * Leading-order WKB keeps the Maslov half: `∫ √(λ² − m²/sin²θ) dθ = π(n + 1/2)`,
//!   which yields the Langer value `λ² = (l + 1/2)²`.
//! * SWKB drops it and uses `Φ²` instead of the full potential:
//!   `∫ √(E₋ − Φ²) dθ = nπ`, after which `λ² = E₋ + m(m+1)` is exact.
//!
//! The numerical paths only ever call the quadrature and the root finder; the
//! closed forms live in separate functions so that one can check the other.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{ground_state, AngularProblem};
use crate::quadrature::{action_swkb, action_wkb};
use crate::roots::{find_root, RootOptions};

const MAX_BRACKET_DOUBLINGS: usize = 64;

/// Action tolerance of the numerical quantizers. Quadrature is good to
/// ~1e-14 here, so the root is pushed well below the 12 digits we print.
pub const ROOT_TOLERANCE: f64 = 1e-12;

fn root_options() -> RootOptions {
    RootOptions {
        tolerance: ROOT_TOLERANCE,
        ..RootOptions::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantizationMethod {
    WkbNumerical,
    WkbClosed,
    SwkbNumerical,
    SwkbClosed,
    ExactReference,
    LangerReference,
}

/// How `quantize_swkb` obtains `E₋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwkbMode {
    Numerical,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizationResult {
    pub method: QuantizationMethod,
    pub m: u32,
    pub n_theta: u32,
    pub l: u32,
    pub lambda_squared: f64,
    /// Energy of `H₋`; only set by the SWKB quantizers.
    pub e_minus: Option<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl QuantizationResult {
    fn new(method: QuantizationMethod, problem: AngularProblem, lambda_squared: f64) -> Self {
        Self {
            method,
            m: problem.m(),
            n_theta: problem.n_theta(),
            l: problem.l(),
            lambda_squared,
            e_minus: None,
            residual: 0.0,
            iterations: 0,
        }
    }
}

/// `λ² = l(l+1)`.
pub fn exact_lambda_squared(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}

/// The Langer value `λ² = (l + 1/2)²`.
pub fn langer_lambda_squared(l: u32) -> f64 {
    (f64::from(l) + 0.5).powi(2)
}

/// Shifts an `H₋` eigenvalue back to the angular spectrum: `λ² = E₋ + m(m+1)`.
pub fn map_eminus_to_lambda2(e_minus: f64, m: u32) -> f64 {
    e_minus + ground_state(m).lambda0_squared()
}

/// Grows `hi` by doubling until `f(hi) > 0`.
fn expand_upper<F>(f: &mut F, mut hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    for _ in 0..MAX_BRACKET_DOUBLINGS {
        if f(hi)? > 0.0 {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(Error::RootNotBracketed {
        lo: 0.0,
        hi,
        f_lo: f64::NAN,
        f_hi: f(hi)?,
    })
}

/// Solves `∫ √(E₋ − Φ²) dθ = n_θ π` for `E₋` and maps it to `λ²`.
pub fn quantize_swkb(n_theta: u32, m: u32, mode: SwkbMode) -> Result<QuantizationResult> {
    quantize_swkb_with(n_theta, m, mode, root_options())
}

pub fn quantize_swkb_with(
    n_theta: u32,
    m: u32,
    mode: SwkbMode,
    opts: RootOptions,
) -> Result<QuantizationResult> {
    let problem = AngularProblem::new(m, n_theta);
    let (method, e_minus, residual, iterations) = match mode {
        SwkbMode::Closed => {
            let c = f64::from(m) + 0.5;
            let e = (f64::from(n_theta) + c).powi(2) - c * c;
            (QuantizationMethod::SwkbClosed, e, 0.0, 0)
        }
        // Zero action sits exactly on the bracket edge E = 0.
        SwkbMode::Numerical if n_theta == 0 => (QuantizationMethod::SwkbNumerical, 0.0, 0.0, 0),
        SwkbMode::Numerical => {
            let target = f64::from(n_theta) * PI;
            let mut f = |e: f64| Ok(action_swkb(e, m)?.value - target);
            let guess = f64::from(n_theta + m + 1).powi(2);
            let hi = expand_upper(&mut f, guess)?;
            let root = find_root(f, 0.0, hi, opts)?;
            (
                QuantizationMethod::SwkbNumerical,
                root.x,
                root.residual,
                root.iterations,
            )
        }
    };
    Ok(QuantizationResult {
        e_minus: Some(e_minus),
        residual,
        iterations,
        ..QuantizationResult::new(method, problem, map_eminus_to_lambda2(e_minus, m))
    })
}

/// Solves `∫ √(λ² − m²/sin²θ) dθ = π(n_θ + 1/2)` for `λ`.
pub fn quantize_wkb(n_theta: u32, m: u32) -> Result<QuantizationResult> {
    quantize_wkb_with(n_theta, m, root_options())
}

pub fn quantize_wkb_with(n_theta: u32, m: u32, opts: RootOptions) -> Result<QuantizationResult> {
    let problem = AngularProblem::new(m, n_theta);
    let target = (f64::from(n_theta) + 0.5) * PI;
    let floor = f64::from(m);
    // Below λ = m the allowed region is empty and the action is zero.
    let mut f = |lambda: f64| {
        if lambda <= floor {
            Ok(-target)
        } else {
            Ok(action_wkb(lambda, m)?.value - target)
        }
    };
    let hi = expand_upper(&mut f, f64::from(n_theta + m + 1))?;
    let root = find_root(f, floor, hi, opts)?;
    Ok(QuantizationResult {
        residual: root.residual,
        iterations: root.iterations,
        ..QuantizationResult::new(QuantizationMethod::WkbNumerical, problem, root.x * root.x)
    })
}

/// `λ = n_θ + m + 1/2` directly.
pub fn quantize_wkb_closed(n_theta: u32, m: u32) -> QuantizationResult {
    let problem = AngularProblem::new(m, n_theta);
    QuantizationResult::new(
        QuantizationMethod::WkbClosed,
        problem,
        langer_lambda_squared(problem.l()),
    )
}

/// Which numerical quantizers a spectrum row should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowMethods {
    pub swkb: bool,
    pub wkb: bool,
}

impl Default for RowMethods {
    fn default() -> Self {
        Self {
            swkb: true,
            wkb: true,
        }
    }
}

/// One `(m, n_θ)` comparison across the exact, Langer, SWKB, WKB and oracle values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub m: u32,
    pub n_theta: u32,
    pub l: u32,
    pub lambda2_exact: f64,
    pub lambda2_langer: f64,
    pub lambda2_swkb: Option<f64>,
    pub lambda2_wkb: Option<f64>,
    pub lambda2_oracle: Option<f64>,
    pub err_swkb: Option<f64>,
    pub err_wkb: Option<f64>,
    pub err_oracle: Option<f64>,
}

impl SpectrumRow {
    /// Langer minus exact; `1/4` for every `l`.
    pub fn langer_gap(&self) -> f64 {
        self.lambda2_langer - self.lambda2_exact
    }
}

pub fn build_spectrum_row(n_theta: u32, m: u32, oracle_value: Option<f64>) -> Result<SpectrumRow> {
    build_spectrum_row_with(n_theta, m, RowMethods::default(), oracle_value)
}

pub fn build_spectrum_row_with(
    n_theta: u32,
    m: u32,
    methods: RowMethods,
    oracle_value: Option<f64>,
) -> Result<SpectrumRow> {
    let l = n_theta + m;
    let exact = exact_lambda_squared(l);
    let swkb = methods
        .swkb
        .then(|| quantize_swkb(n_theta, m, SwkbMode::Numerical))
        .transpose()?
        .map(|r| r.lambda_squared);
    let wkb = methods
        .wkb
        .then(|| quantize_wkb(n_theta, m))
        .transpose()?
        .map(|r| r.lambda_squared);
    let err = |v: Option<f64>| v.map(|v| (v - exact).abs());
    Ok(SpectrumRow {
        m,
        n_theta,
        l,
        lambda2_exact: exact,
        lambda2_langer: langer_lambda_squared(l),
        lambda2_swkb: swkb,
        lambda2_wkb: wkb,
        lambda2_oracle: oracle_value,
        err_swkb: err(swkb),
        err_wkb: err(wkb),
        err_oracle: err(oracle_value),
    })
}
