//! Action integrals over classically allowed wells.
//!
//! The integrands have the form `√g(θ)` with `g` vanishing linearly at both
//! turning points. Substituting `θ = (a+b)/2 + (b−a)/2 · sin u` turns the
//! square-root cusp into a smooth factor `cos²u`, after which Gauss–Legendre
//! on `u ∈ [−π/2, π/2]` converges spectrally.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::problem::SuperpotentialModel;

pub const DEFAULT_NODES: usize = 128;
pub const MIN_NODES: usize = 8;

/// Classical turning points `0 < a < b < π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub a: f64,
    pub b: f64,
}

impl TurningPoints {
    /// Turning points symmetric about π/2 with lower point `a`.
    fn symmetric(a: f64) -> Self {
        Self { a, b: PI - a }
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionMethod {
    Numerical,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionValue {
    pub value: f64,
    pub method: ActionMethod,
    /// `|I(n) − I(2n)|` for the numerical path; zero for closed forms.
    pub est_error: f64,
}

impl ActionValue {
    fn closed(value: f64) -> Self {
        Self {
            value,
            method: ActionMethod::ClosedForm,
            est_error: 0.0,
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug)]
pub(crate) struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared rule for `n` nodes; rules are computed once per process.
    pub(crate) fn cached(n: usize) -> Arc<Self> {
        static RULES: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let rules = RULES.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = rules.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(Self::compute(n)))
            .clone()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Integral of `√g` over `[a, b]` with `n` nodes of the substituted rule.
fn sqrt_well_rule<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, n: usize) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let rule = GaussLegendre::cached(n);
    let samples: Vec<(f64, f64, f64)> = rule
        .iter()
        .map(|(x, w)| {
            let u = FRAC_PI_2 * x;
            let theta = mid + half * u.sin();
            (theta, g(theta), w * u.cos())
        })
        .collect();
    // g is O(ε·scale) near the turning points; tolerate rounding there.
    let scale = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    let floor = 64.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    let mut sum = 0.0;
    for (theta, value, weight) in samples {
        if value.is_nan() || value < -floor {
            return Err(Error::NegativeIntegrand { theta, value });
        }
        sum += weight * value.max(0.0).sqrt();
    }
    Ok(sum * half * FRAC_PI_2)
}

/// `∫ₐᵇ √g(θ) dθ` for a well with `g(a) = g(b) = 0` and `g > 0` inside.
///
/// The returned value uses `2·n_nodes` nodes and `est_error` is its distance
/// from the `n_nodes` result.
pub fn integrate_sqrt_well<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    n_nodes: usize,
) -> Result<ActionValue> {
    if n_nodes < MIN_NODES {
        return Err(Error::TooFewNodes {
            got: n_nodes,
            min: MIN_NODES,
        });
    }
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    let coarse = sqrt_well_rule(&g, a, b, n_nodes)?;
    let fine = sqrt_well_rule(&g, a, b, 2 * n_nodes)?;
    Ok(ActionValue {
        value: fine,
        method: ActionMethod::Numerical,
        est_error: (fine - coarse).abs(),
    })
}

/// Roots of `E − Φ²(θ)`: `a = arctan((m + 1/2)/√E)`, `b = π − a`.
pub fn turning_points_swkb(energy: f64, m: u32) -> Result<TurningPoints> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(Error::NoClassicalRegion(format!(
            "E = {energy} leaves no region where E > Phi^2"
        )));
    }
    let c = SuperpotentialModel::new(m).c();
    Ok(TurningPoints::symmetric((c / energy.sqrt()).atan()))
}

/// Zeros of `λ² − m²/sin²θ`: `a = arcsin(m/λ)`, `b = π − a`.
pub fn turning_points_wkb(lambda: f64, m: u32) -> Result<TurningPoints> {
    if m == 0 {
        return Err(Error::InvalidQuantumNumber(
            "m = 0 has no interior turning points; integrate over (0, pi)".into(),
        ));
    }
    let mf = f64::from(m);
    if !(lambda.is_finite() && lambda > mf) {
        return Err(Error::NoClassicalRegion(format!(
            "lambda = {lambda} does not exceed m = {m}"
        )));
    }
    Ok(TurningPoints::symmetric((mf / lambda).asin()))
}

/// `∫ √(E − Φ²) dθ` between the SWKB turning points, by quadrature.
pub fn action_swkb(energy: f64, m: u32) -> Result<ActionValue> {
    action_swkb_with(energy, m, DEFAULT_NODES)
}

pub fn action_swkb_with(energy: f64, m: u32, n_nodes: usize) -> Result<ActionValue> {
    if energy == 0.0 {
        return Ok(ActionValue {
            value: 0.0,
            method: ActionMethod::Numerical,
            est_error: 0.0,
        });
    }
    let tp = turning_points_swkb(energy, m)?;
    let c = SuperpotentialModel::new(m).c();
    // Φ² written out so the integrand stays finite at any node.
    let g = |theta: f64| {
        let cot = theta.cos() / theta.sin();
        energy - c * c * cot * cot
    };
    integrate_sqrt_well(g, tp.a, tp.b, n_nodes)
}

/// `π [√(E + c²) − c]` with `c = m + 1/2`.
pub fn action_swkb_closed(energy: f64, m: u32) -> Result<ActionValue> {
    if !(energy.is_finite() && energy >= 0.0) {
        return Err(Error::NoClassicalRegion(format!(
            "E = {energy} is negative"
        )));
    }
    let c = SuperpotentialModel::new(m).c();
    Ok(ActionValue::closed(PI * ((energy + c * c).sqrt() - c)))
}

/// `∫ √(λ² − m²/sin²θ) dθ` over the classically allowed region; the whole
/// interval (0, π) when `m = 0`.
pub fn action_wkb(lambda: f64, m: u32) -> Result<ActionValue> {
    action_wkb_with(lambda, m, DEFAULT_NODES)
}

pub fn action_wkb_with(lambda: f64, m: u32, n_nodes: usize) -> Result<ActionValue> {
    let lambda_sq = lambda * lambda;
    if m == 0 {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::NoClassicalRegion(format!(
                "lambda = {lambda} must be positive"
            )));
        }
        return integrate_sqrt_well(|_| lambda_sq, 0.0, PI, n_nodes);
    }
    let tp = turning_points_wkb(lambda, m)?;
    let m_sq = f64::from(m).powi(2);
    let g = |theta: f64| {
        let s = theta.sin();
        lambda_sq - m_sq / (s * s)
    };
    integrate_sqrt_well(g, tp.a, tp.b, n_nodes)
}

/// `π(λ − m)`, the leading-order WKB action in closed form.
pub fn action_wkb_closed(lambda: f64, m: u32) -> Result<ActionValue> {
    let mf = f64::from(m);
    if !(lambda.is_finite() && lambda > mf) {
        return Err(Error::NoClassicalRegion(format!(
            "lambda = {lambda} does not exceed m = {m}"
        )));
    }
    Ok(ActionValue::closed(PI * (lambda - mf)))
}
