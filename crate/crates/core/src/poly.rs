//! Univariate polynomial arithmetic.
//!
//! Two thin wrappers around coefficient vectors (ascending degree order):
//! [`RealPolynomial`] for polynomials in the integration variable `t`, and
//! [`SPolynomial`] for polynomials in the parameter `s` such as the
//! functional-equation factor `B(s)`. An `SPolynomial` built from known
//! linear factors keeps the factored form alongside the expanded
//! coefficients, so its roots are exact and evaluation stays accurate near
//! them.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative threshold below which a trailing coefficient is considered zero
/// when normalizing division remainders in the Sturm chain.
const STURM_TRIM_EPS: f64 = 1e-12;

/// Polynomial in `t` with real coefficients, ascending degree order
/// (`coeffs[i]` multiplies `t^i`).
///
/// Always non-empty; the highest-index coefficient is nonzero except for the
/// zero polynomial, which is stored as `[0.0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// exact zeros. An empty list is rejected.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid("non-finite coefficient".into()));
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { coeffs }
    }

    /// The quadratic `t^2 + b t + c`.
    pub fn quadratic(b: f64, c: f64) -> Self {
        Self {
            coeffs: vec![c, b, 1.0],
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Returns `Some(k)` when the polynomial is exactly `t^k` (unit leading
    /// coefficient, all other coefficients zero).
    pub fn as_unit_monomial(&self) -> Option<usize> {
        let d = self.degree();
        if self.coeffs[d] == 1.0 && self.coeffs[..d].iter().all(|&c| c == 0.0) {
            Some(d)
        } else {
            None
        }
    }

    /// Horner evaluation at a real point.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// `p(t)^w` with the real principal logarithm, `exp(w ln p(t))`.
    ///
    /// Requires `t > 0` and `p(t) > 0`.
    pub fn eval_complex_power(&self, t: f64, w: Complex64) -> Result<Complex64> {
        if t <= 0.0 {
            return Err(Error::Domain(format!(
                "power base point t = {t} must be positive"
            )));
        }
        let v = self.eval(t);
        if v <= 0.0 {
            return Err(Error::Domain(format!("p({t}) = {v} is not positive")));
        }
        Ok((w * v.ln()).exp())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { coeffs: vec![0.0] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as f64 * c)
            .collect();
        Self::new(coeffs).expect("derivative of a valid polynomial is valid")
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self { coeffs: vec![0.0] };
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out).expect("product of valid polynomials is valid")
    }

    /// Order of vanishing at `t = 0`: the smallest index with a nonzero
    /// coefficient. Errors on the zero polynomial.
    pub fn multiplicity_at_zero(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Invalid(
                "multiplicity of the zero polynomial is undefined".into(),
            ));
        }
        Ok(self.coeffs.iter().position(|&c| c != 0.0).unwrap())
    }

    /// Certifies that the polynomial is positive on the open half line
    /// `(0, infinity)`: no roots there (counted by a Sturm chain on `(0, M)`
    /// with `M` a Cauchy root bound) and a positive leading coefficient.
    ///
    /// The zero polynomial is not admissible.
    pub fn is_admissible(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if *self.coeffs.last().unwrap() <= 0.0 {
            return false;
        }
        // Strip the t^k factor so the reduced polynomial is nonzero at 0;
        // t^k itself contributes no roots on (0, inf).
        let k0 = self.multiplicity_at_zero().unwrap();
        let reduced: Vec<f64> = self.coeffs[k0..].to_vec();
        if reduced.len() == 1 {
            return reduced[0] > 0.0;
        }
        let lead = *reduced.last().unwrap();
        let cauchy = 1.0
            + reduced[..reduced.len() - 1]
                .iter()
                .fold(0.0f64, |m, &c| m.max((c / lead).abs()));
        count_roots_sturm(&reduced, 0.0, cauchy) == 0
    }
}

impl std::str::FromStr for RealPolynomial {
    type Err = Error;

    /// Parses the shared text format: comma-separated decimal coefficients,
    /// ascending, no spaces (`1,0,1` is `t^2 + 1`).
    fn from_str(s: &str) -> Result<Self> {
        let coeffs: Vec<f64> = s
            .split(',')
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Invalid(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<_>>()?;
        Self::new(coeffs)
    }
}

impl std::fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`,
/// assuming `p(a) != 0` and `p(b) != 0`, by Sturm's theorem. The canonical
/// chain terminates at gcd(p, p'), which leaves the sign-change count equal
/// to the number of distinct roots even for non-square-free input.
fn count_roots_sturm(p: &[f64], a: f64, b: f64) -> usize {
    let chain = sturm_chain(p);
    let va = sign_changes(&chain, a);
    let vb = sign_changes(&chain, b);
    va.saturating_sub(vb)
}

fn sturm_chain(p: &[f64]) -> Vec<Vec<f64>> {
    let mut chain: Vec<Vec<f64>> = Vec::new();
    chain.push(normalize(p.to_vec()));
    let d = derivative_coeffs(p);
    if trim(&d).len() <= 1 && trim(&d)[0] == 0.0 {
        return chain;
    }
    chain.push(normalize(d));
    loop {
        let n = chain.len();
        if chain[n - 1].len() == 1 {
            break; // constant divisor: gcd reached, next remainder is zero
        }
        let r = poly_rem(&chain[n - 2], &chain[n - 1]);
        let r = trim(&r);
        if r.len() == 1 && r[0] == 0.0 {
            break;
        }
        chain.push(normalize(r.iter().map(|c| -c).collect()));
        if chain.len() > p.len() + 2 {
            break; // guards against cycling from rounding noise
        }
    }
    chain
}

fn derivative_coeffs(p: &[f64]) -> Vec<f64> {
    if p.len() == 1 {
        return vec![0.0];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect()
}

fn trim(p: &[f64]) -> Vec<f64> {
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let tol = scale * STURM_TRIM_EPS;
    let mut out = p.to_vec();
    while out.len() > 1 && out.last().unwrap().abs() <= tol {
        out.pop();
    }
    if out.len() == 1 && out[0].abs() <= tol {
        out[0] = 0.0;
    }
    out
}

/// Scales so the largest magnitude coefficient is 1; a positive scale factor
/// preserves every sign in the chain.
fn normalize(p: Vec<f64>) -> Vec<f64> {
    let p = trim(&p);
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return p;
    }
    p.iter().map(|c| c / scale).collect()
}

fn poly_rem(num: &[f64], den: &[f64]) -> Vec<f64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    while rem.len() > dd && !(rem.len() == 1 && rem[0] == 0.0) {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap() / lead;
        for i in 0..=dd {
            rem[shift + i] -= factor * den[i];
        }
        rem.pop();
        let t = trim(&rem);
        if t.len() < rem.len() {
            rem = t;
        }
        if rem.len() <= 1 {
            break;
        }
    }
    if rem.is_empty() {
        rem.push(0.0);
    }
    rem
}

fn sign_changes(chain: &[Vec<f64>], x: f64) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        if v == 0.0 {
            continue;
        }
        let s = v > 0.0;
        if let Some(prev) = last {
            if prev != s {
                changes += 1;
            }
        }
        last = Some(s);
    }
    changes
}

/// Factored form of an [`SPolynomial`]: leading coefficient times a product
/// of `(s - root)` factors. Kept when the polynomial was constructed from
/// known linear factors, so the stored roots are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredForm {
    pub leading: f64,
    pub roots: Vec<f64>,
}

/// Polynomial in the parameter `s`, ascending real coefficients, with an
/// optional exact factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct SPolynomial {
    coeffs: Vec<f64>,
    factored: Option<FactoredForm>,
}

impl SPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let p = RealPolynomial::new(coeffs)?;
        Ok(Self {
            coeffs: p.coeffs,
            factored: None,
        })
    }

    /// Builds `leading * prod_i (s - roots[i])`, keeping both the exact
    /// factored form and the expanded coefficients.
    pub fn from_roots(leading: f64, roots: Vec<f64>) -> Self {
        let mut coeffs = vec![leading];
        for &r in &roots {
            // multiply by (s - r)
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Self {
            coeffs,
            factored: Some(FactoredForm { leading, roots }),
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn factored(&self) -> Option<&FactoredForm> {
        self.factored.as_ref()
    }

    /// Evaluation at a complex point. Uses the factored form when present
    /// (exact zeros at the stored roots), Horner otherwise.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        if let Some(f) = &self.factored {
            let mut acc = Complex64::new(f.leading, 0.0);
            for &r in &f.roots {
                acc *= s - r;
            }
            return acc;
        }
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    /// The size of the terms summed by Horner at `|s|`; `|B(s)|` small
    /// against this scale signals a near-root evaluation.
    pub fn eval_magnitude_scale(&self, s: Complex64) -> f64 {
        let a = s.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * a + c.abs())
    }

    /// Scalar multiple; scaling a factored polynomial scales its leading
    /// coefficient and keeps the roots.
    pub fn scale(&self, a: f64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| a * c).collect();
        let factored = self.factored.as_ref().map(|f| FactoredForm {
            leading: a * f.leading,
            roots: f.roots.clone(),
        });
        Self { coeffs, factored }
    }

    /// Product of two `s`-polynomials; factored forms combine exactly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let factored = match (&self.factored, &other.factored) {
            (Some(f), Some(g)) => {
                let mut roots = f.roots.clone();
                roots.extend_from_slice(&g.roots);
                Some(FactoredForm {
                    leading: f.leading * g.leading,
                    roots,
                })
            }
            _ => None,
        };
        Self {
            coeffs: trim(&out),
            factored,
        }
    }

    /// Roots of the polynomial. Exact (the construction's roots, as stored)
    /// for factored polynomials; otherwise eigenvalues of the companion
    /// matrix. Errors on degree 0.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        if self.degree() == 0 {
            return Err(Error::Invalid(
                "root-finding on a degree-0 polynomial".into(),
            ));
        }
        if let Some(f) = &self.factored {
            return Ok(f.roots.iter().map(|&r| Complex64::new(r, 0.0)).collect());
        }
        let n = self.degree();
        let lead = self.leading();
        let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let eig = m.complex_eigenvalues();
        let mut roots: Vec<Complex64> = eig.iter().map(|z| Complex64::new(z.re, z.im)).collect();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(roots)
    }
}

impl std::fmt::Display for SPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
