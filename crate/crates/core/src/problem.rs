//! The polar-angle eigenproblem
//!
//! ```text
//! T'' + cot(θ) T' + (λ² − m²/sin²θ) T = 0,   0 < θ < π
//! ```
//!
//! its Schrödinger form `F'' + [E − V(θ)] F = 0` obtained with `F = T √sinθ`
//! (so that `E = λ² + 1/4`), and the supersymmetric factorization built on the
//! superpotential `Φ(θ) = −(m + 1/2) cot θ`.
//!
//! Every evaluator is defined on the open interval (0, π) only; the endpoints
//! are a hard error.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Checks that `theta` lies in the open interval (0, π).
pub(crate) fn check_angle(theta: f64) -> Result<f64> {
    if theta.is_finite() && theta > 0.0 && theta < PI {
        Ok(theta)
    } else {
        Err(Error::AngleOutOfDomain { theta })
    }
}

/// A pair of quantum numbers `(m, n_theta)`; the orbital number is `l = n_theta + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngularProblem {
    m: u32,
    n_theta: u32,
}

impl AngularProblem {
    pub fn new(m: u32, n_theta: u32) -> Self {
        Self { m, n_theta }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_theta(&self) -> u32 {
        self.n_theta
    }

    pub fn l(&self) -> u32 {
        self.n_theta + self.m
    }
}

/// The superpotential `Φ(θ) = −c cot θ` with `c = m + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialModel {
    c: f64,
}

impl SuperpotentialModel {
    pub fn new(m: u32) -> Self {
        Self {
            c: f64::from(m) + 0.5,
        }
    }

    /// The strength `c = m + 1/2`.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn phi(&self, theta: f64) -> Result<f64> {
        let theta = check_angle(theta)?;
        Ok(-self.c * theta.cos() / theta.sin())
    }

    /// `Φ'(θ) = c / sin²θ`, evaluated analytically.
    pub fn phi_prime(&self, theta: f64) -> Result<f64> {
        let s = check_angle(theta)?.sin();
        Ok(self.c / (s * s))
    }

    pub fn phi_squared(&self, theta: f64) -> Result<f64> {
        let phi = self.phi(theta)?;
        Ok(phi * phi)
    }

    /// `V±(θ) = Φ²(θ) ± Φ'(θ) = c² cot²θ ± c / sin²θ`.
    ///
    /// Both terms grow like `1/sin²θ` near the endpoints, so the sum is formed
    /// with a single rounding (fused multiply-add) on `cot²θ` and `1/sin²θ`,
    /// which depend on `θ` alone.
    pub fn partner_potential(&self, sign: PartnerSign, theta: f64) -> Result<f64> {
        let theta = check_angle(theta)?;
        let (s, co) = theta.sin_cos();
        let cot = co / s;
        let cot_sq = cot * cot;
        let csc_sq = 1.0 / (s * s);
        let derivative = match sign {
            PartnerSign::Plus => self.c * csc_sq,
            PartnerSign::Minus => -self.c * csc_sq,
        };
        Ok((self.c * self.c).mul_add(cot_sq, derivative))
    }
}

/// Selects one of the two partner potentials `Φ² ± Φ'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartnerSign {
    Plus,
    Minus,
}

/// Ground state `T₀ = sinᵐθ` of the angular equation, with eigenvalue `λ₀² = m(m+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundState {
    m: u32,
    lambda0_squared: f64,
}

impl GroundState {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lambda0_squared(&self) -> f64 {
        self.lambda0_squared
    }

    /// `T₀(θ) = sinᵐθ`.
    pub fn t0(&self, theta: f64) -> Result<f64> {
        Ok(check_angle(theta)?.sin().powi(self.m as i32))
    }

    /// `F₀(θ) = sin^{m+1/2}θ`, the ground state of `H₋`.
    pub fn f0(&self, theta: f64) -> Result<f64> {
        Ok(check_angle(theta)?.sin().powf(f64::from(self.m) + 0.5))
    }
}

/// Centrifugal term `m²/sin²θ` of the angular equation.
pub fn eval_effective_potential(m: u32, theta: f64) -> Result<f64> {
    let s = check_angle(theta)?.sin();
    if m == 0 {
        return Ok(0.0);
    }
    let m = f64::from(m);
    Ok(m * m / (s * s))
}

/// Potential of the Schrödinger form, `V(θ) = (m² − 1/4)/sin²θ`.
pub fn eval_standard_potential(m: u32, theta: f64) -> Result<f64> {
    let s = check_angle(theta)?.sin();
    let m = f64::from(m);
    Ok((m * m - 0.25) / (s * s))
}

/// Maps `T(θ)` to `F(θ) = T(θ) √sinθ`.
pub fn standard_transform(t_value: f64, theta: f64) -> Result<f64> {
    Ok(t_value * check_angle(theta)?.sin().sqrt())
}

/// Maps `F(θ)` back to `T(θ) = F(θ) / √sinθ`.
pub fn inverse_standard_transform(f_value: f64, theta: f64) -> Result<f64> {
    let root = check_angle(theta)?.sin().sqrt();
    if root == 0.0 {
        return Err(Error::SinUnderflow { theta });
    }
    Ok(f_value / root)
}

/// `Φ(θ) = −(m + 1/2) cot θ`.
pub fn eval_superpotential(m: u32, theta: f64) -> Result<f64> {
    SuperpotentialModel::new(m).phi(theta)
}

pub fn eval_partner_potential(sign: PartnerSign, m: u32, theta: f64) -> Result<f64> {
    SuperpotentialModel::new(m).partner_potential(sign, theta)
}

/// `V₋(m, θ) − V₊(m − 1, θ) + 2m`, which vanishes identically for the
/// cotangent superpotential.
pub fn shape_invariance_residual(m: u32, theta: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidQuantumNumber(
            "shape invariance needs m >= 1 so that m - 1 exists".into(),
        ));
    }
    let minus = eval_partner_potential(PartnerSign::Minus, m, theta)?;
    let plus = eval_partner_potential(PartnerSign::Plus, m - 1, theta)?;
    Ok(minus - plus + 2.0 * f64::from(m))
}

pub fn ground_state(m: u32) -> GroundState {
    let mf = f64::from(m);
    GroundState {
        m,
        lambda0_squared: mf * (mf + 1.0),
    }
}
