//! Bracketing root finder for monotone scalar maps.
//!
//! Secant (false-position) steps are taken while they shrink the bracket by
//! at least half; otherwise the step falls back to bisection. The bracket is
//! kept at every iteration, so convergence is guaranteed for continuous `f`.

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Converged once `|f(x)| <= tolerance`.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `|f(x)|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Finds `x` in `[lo, hi]` with `|f(x)| <= tolerance`. `f(lo)` and `f(hi)`
/// must have opposite signs (or one of them already be within tolerance).
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa.abs() <= opts.tolerance {
        return Ok(Root {
            x: a,
            residual: fa.abs(),
            iterations: 0,
        });
    }
    if fb.abs() <= opts.tolerance {
        return Ok(Root {
            x: b,
            residual: fb.abs(),
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::RootNotBracketed {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut bisect_next = false;
    let mut best = if fa.abs() < fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    let mut iterations = 0;
    for iteration in 1..=opts.max_iterations {
        iterations = iteration;
        let width = b - a;
        let secant = b - fb * (b - a) / (fb - fa);
        let x = if bisect_next || !(secant > a && secant < b) {
            0.5 * (a + b)
        } else {
            secant
        };
        let fx = f(x)?;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() <= opts.tolerance {
            return Ok(Root {
                x,
                residual: fx.abs(),
                iterations: iteration,
            });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        bisect_next = b - a > 0.5 * width;
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
    }
    Err(Error::NoConvergence {
        x: best.0,
        residual: best.1.abs(),
        iterations,
    })
}
