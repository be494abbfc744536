//! Gamma, zeta and beta functions associated with a positive univariate
//! polynomial `f`, together with a grid-based harness that verifies the
//! functional equations, product and limit representations, reflection
//! formulas and asymptotics relating them.
//!
//! The central object is
//!
//! ```text
//! Gamma_f(s) = int_0^inf f(t)^(s-1) e^(-t) dt
//! ```
//!
//! which reduces to the Euler gamma function for `f = t` and to
//! `Gamma(k(s-1)+1)` for `f = t^k`. Monomials admit a functional equation
//! `Gamma_{t^k}(s+1) = B(s) Gamma_{t^k}(s)` with
//! `B(s) = ks(ks-1)...(ks-(k-1))`, which drives analytic continuation,
//! pole prediction and the closed forms; see [`bsato`] and [`gamma`].
//! Quadratics `t^2 + bt + c` satisfy a second-order difference equation
//! instead, probed numerically by [`verify`].
//!
//! ```
//! use gammaf::gamma::{gamma_f_quadrature, gamma_tk_closed, GammaDomain};
//! use gammaf::quad::QuadratureConfig;
//! use num_complex::Complex64;
//!
//! let s = Complex64::new(2.5, 1.0);
//! let closed = gamma_tk_closed(2, s).unwrap();
//! let dom = GammaDomain::monomial(2).unwrap();
//! let quad = gamma_f_quadrature(&dom, s, &QuadratureConfig::default()).unwrap();
//! assert!((closed.value - quad.value).norm() < 1e-8 * closed.value.norm());
//! ```

pub mod bsato;
pub mod error;
pub mod gamma;
pub mod poly;
pub mod quad;
pub mod special;
pub mod verify;
pub mod zetabeta;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use poly::{RealPolynomial, SPolynomial};
pub use special::{ComplexEval, Method};
