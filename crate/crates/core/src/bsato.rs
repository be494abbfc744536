//! Construction of the functional-equation polynomial `B(s)` and its monic
//! normalization `b(s)` for the two families with explicit differential
//! operators:
//!
//! * `f = t^k`: the operator is `d^k/dt^k` and
//!   `B(s) = ks(ks-1)...(ks-(k-1)) = k^k b(s)` with
//!   `b(s) = s(s-1/k)...(s-(k-1)/k)`;
//! * `f = t^2 + bt + c`: the operator is
//!   `(t^2+bt+c) d^2/dt^2 - 2s(2s-1)` and `B(s) = (b^2-4c) s(s-1)`,
//!   identically zero when the discriminant vanishes.
//!
//! `B(s)` is kept both expanded and in factored form (root list plus
//! leading coefficient): pole prediction in the analytic continuation needs
//! the exact root locations, and factored evaluation stays accurate near
//! them.

use crate::error::{Error, Result};
use crate::poly::{RealPolynomial, SPolynomial};

/// Largest supported derivative order / monomial exponent; bounds the cost
/// of building `C_k`.
pub const MAX_ORDER: u32 = 64;

/// The differential operator behind a functional equation.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    /// `d^k/dt^k`, order `k >= 1`.
    PureDerivative { order: u32 },
    /// `(t^2 + bt + c) d^2/dt^2 - 2s(2s-1)`.
    QuadraticForm { b: f64, c: f64 },
}

impl std::fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OperatorSpec::PureDerivative { order } => write!(f, "d^{order}/dt^{order}"),
            OperatorSpec::QuadraticForm { b, c } => {
                write!(f, "(t^2 + {b}*t + {c})*d^2/dt^2 - 2s(2s-1)")
            }
        }
    }
}

/// Output of a `B(s)` construction.
#[derive(Debug, Clone)]
pub struct BsatoResult {
    /// The functional-equation factor `B(s)`.
    pub big_b: SPolynomial,
    /// Monic normalization with its root list; `None` iff `degenerate`.
    pub monic_b: Option<SPolynomial>,
    pub operator: OperatorSpec,
    /// True iff `B(s)` is identically zero (quadratic with `b^2 = 4c`).
    pub degenerate: bool,
}

/// `C_m(s)` from the recurrence `C_1(s) = ks`, `C_{m+1}(s) = C_m(s)(ks - m)`,
/// so `C_m(s) = ks(ks-1)...(ks-(m-1))`. Requires `1 <= m <= k`.
pub fn c_recurrence(k: u32, m: u32) -> Result<SPolynomial> {
    check_order(k)?;
    if m < 1 || m > k {
        return Err(Error::Invalid(format!("m = {m} out of range [1, {k}]")));
    }
    let kf = k as f64;
    // ks has root 0 and leading coefficient k.
    let mut c = SPolynomial::from_roots(kf, vec![0.0]);
    for j in 1..m {
        // multiply by (ks - j) = k (s - j/k)
        c = c.mul(&SPolynomial::from_roots(kf, vec![j as f64 / kf]));
    }
    Ok(c)
}

/// `B(s)` for `f = t^k`: the direct product `ks(ks-1)...(ks-(k-1))`,
/// cross-checked against the recurrence, with monic
/// `b(s) = s(s-1/k)...(s-(k-1)/k)` and operator `d^k/dt^k`.
pub fn bsato_monomial(k: u32) -> Result<BsatoResult> {
    check_order(k)?;
    let kf = k as f64;
    let roots: Vec<f64> = (0..k).map(|m| m as f64 / kf).collect();
    let big_b = SPolynomial::from_roots(kf.powi(k as i32), roots.clone());
    debug_assert!(coeffs_close(&big_b, &c_recurrence(k, k)?, 1e-12));
    let monic = SPolynomial::from_roots(1.0, roots);
    Ok(BsatoResult {
        big_b,
        monic_b: Some(monic),
        operator: OperatorSpec::PureDerivative { order: k },
        degenerate: false,
    })
}

/// `B(s)` for `f = t^2 + bt + c`: `(b^2 - 4c) s(s-1)`. The quadratic must
/// be admissible (positive on `(0, inf)`); a vanishing discriminant gives
/// the degenerate `B == 0` with the monic form flagged undefined.
pub fn bsato_quadratic(b: f64, c: f64) -> Result<BsatoResult> {
    let f = RealPolynomial::quadratic(b, c);
    if !f.is_admissible() {
        return Err(Error::Domain(format!(
            "t^2 + {b}t + {c} has a root in (0, inf); B(s) is not defined for it"
        )));
    }
    let disc = b * b - 4.0 * c;
    let operator = OperatorSpec::QuadraticForm { b, c };
    if disc == 0.0 {
        return Ok(BsatoResult {
            big_b: SPolynomial::new(vec![0.0])?,
            monic_b: None,
            operator,
            degenerate: true,
        });
    }
    Ok(BsatoResult {
        big_b: SPolynomial::from_roots(disc, vec![0.0, 1.0]),
        monic_b: Some(SPolynomial::from_roots(1.0, vec![0.0, 1.0])),
        operator,
        degenerate: false,
    })
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Invalid("order k must be positive".into()));
    }
    if k > MAX_ORDER {
        return Err(Error::Invalid(format!(
            "order k = {k} exceeds the cap {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn coeffs_close(a: &SPolynomial, b: &SPolynomial, rel: f64) -> bool {
    let (ca, cb) = (a.coeffs(), b.coeffs());
    ca.len() == cb.len()
        && ca
            .iter()
            .zip(cb)
            .all(|(x, y)| (x - y).abs() <= rel * x.abs().max(y.abs()).max(1e-300))
}
