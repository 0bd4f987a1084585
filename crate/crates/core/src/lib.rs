//! Semiclassical quantization of the angular-momentum eigenproblem.
//!
//! Three independent routes to the spectrum of `L²`:
//!
//! * leading-order WKB with the Maslov correction, which lands on the Langer
//!   value `λ² = (l + 1/2)²` ([`quantizers::quantize_wkb`]);
//! * supersymmetric WKB on the superpotential `Φ = −(m + 1/2) cot θ`, which is
//!   exact already at leading order, `λ² = l(l+1)` ([`quantizers::quantize_swkb`]);
//! * a finite-volume Sturm–Liouville eigensolver ([`oracle`]).
//!
//! The [`verify`] module bundles the cross-checks used by the command-line tool.

pub mod cli;
pub mod error;
pub mod oracle;
pub mod problem;
pub mod quadrature;
pub mod quantizers;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
