//! Evaluators for the gamma function associated with a polynomial:
//!
//! * closed form `Gamma_{t^k}(s) = Gamma(k(s-1)+1)` for monomials,
//! * direct quadrature of `int_0^inf f(t)^{s-1} e^{-t} dt` for any
//!   admissible `f`,
//! * analytic continuation of the monomial case through the functional
//!   equation `Gamma_{t^k}(s+1) = B(s) Gamma_{t^k}(s)`,
//! * the Gauss limit product, the Weierstrass product for the reciprocal,
//!   the reflection and quarter-reflection closed forms, the leading
//!   asymptotic term, and the bridge to the Diaz-Pariguan k-gamma function.
//!
//! Everything with potentially large magnitude accumulates in log space and
//! only exponentiates at the end, so asymptotic-regime comparisons (`ks` up
//! to ~100) do not overflow.

use num_complex::Complex64;

use crate::bsato::bsato_monomial;
use crate::error::{Error, Result};
use crate::poly::{RealPolynomial, SPolynomial};
use crate::quad::{integrate_exp_weighted, QuadratureConfig, TailMajorant};
use crate::special::{self, ComplexEval, Method, EULER_GAMMA};

/// Relative threshold below which a denominator `B(s+j)` counts as
/// ill-conditioned rather than an exact root hit.
const NEAR_POLE_REL: f64 = 1e-12;

/// An admissible integrand polynomial together with its convergence data:
/// `Gamma_f(s)` converges for `Re(s) > 1 - 1/k0` when the multiplicity `k0`
/// of `f` at zero is positive, and for every `s` when `f(0) > 0`.
#[derive(Debug, Clone)]
pub struct GammaDomain {
    f: RealPolynomial,
    k0: usize,
    convergence_bound: f64,
}

impl GammaDomain {
    pub fn new(f: RealPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Invalid(
                "Gamma_f is undefined for the zero polynomial".into(),
            ));
        }
        if !f.is_admissible() {
            return Err(Error::Domain(format!(
                "f = {f} is not positive on (0, inf); Gamma_f is undefined"
            )));
        }
        let k0 = f.multiplicity_at_zero()?;
        let convergence_bound = if k0 >= 1 {
            1.0 - 1.0 / k0 as f64
        } else {
            f64::NEG_INFINITY
        };
        Ok(Self {
            f,
            k0,
            convergence_bound,
        })
    }

    pub fn monomial(k: u32) -> Result<Self> {
        Self::new(RealPolynomial::monomial(k as usize))
    }

    pub fn f(&self) -> &RealPolynomial {
        &self.f
    }

    pub fn multiplicity(&self) -> usize {
        self.k0
    }

    /// `Gamma_f(s)` is holomorphic for `Re(s)` above this bound
    /// (`-inf` when `f(0) > 0`).
    pub fn convergence_bound(&self) -> f64 {
        self.convergence_bound
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.convergence_bound
    }
}

fn big_b(k: u32) -> Result<SPolynomial> {
    Ok(bsato_monomial(k)?.big_b)
}

fn gamma_pole_error(k: u32, s: Complex64, x: Complex64) -> Error {
    Error::Pole(format!(
        "Gamma_{{t^{k}}}({s}) hits the Euler gamma pole at k(s-1)+1 = {x}"
    ))
}

/// Closed form `Gamma_{t^k}(s) = Gamma(k(s-1)+1)`.
pub fn gamma_tk_closed(k: u32, s: Complex64) -> Result<ComplexEval> {
    check_k(k)?;
    let x = (s - 1.0) * k as f64 + 1.0;
    let mut eval = special::gamma(x).map_err(|e| match e {
        Error::Pole(_) => gamma_pole_error(k, s, x),
        other => other,
    })?;
    eval.method = Method::ClosedForm;
    Ok(eval)
}

/// `Gamma_f(s)` by direct quadrature of the defining integral. Requires
/// `s` inside the convergence half-plane of `dom`.
pub fn gamma_f_quadrature(
    dom: &GammaDomain,
    s: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ComplexEval> {
    if !dom.contains(s) {
        return Err(Error::Domain(format!(
            "Re(s) = {} is outside the convergence half-plane Re(s) > {}",
            s.re,
            dom.convergence_bound()
        )));
    }
    let alpha = dom.k0 as f64 * (s.re - 1.0);
    let w = s - 1.0;
    let f = dom.f().clone();
    let tail = power_tail_majorant(&f, w.re);
    let cfg = cfg.clone().with_singularity(alpha);
    let r = integrate_exp_weighted(|t| f.eval_complex_power(t, w), 1.0, tail, &cfg)?;
    Ok(ComplexEval::new(r.value, r.abs_err, Method::Quadrature))
}

/// Majorant `|f(t)^w| <= C t^(d w)` valid where the leading term dominates:
/// for `t >= max(1, 2 sum |a_i/a_d|)` the polynomial is between half and
/// three halves of its leading term.
pub(crate) fn power_tail_majorant(f: &RealPolynomial, w_re: f64) -> TailMajorant {
    let coeffs = f.coeffs();
    let d = f.degree();
    let lead = coeffs[d];
    let ratio_sum: f64 = coeffs[..d].iter().map(|c| (c / lead).abs()).sum();
    let min_t = (2.0 * ratio_sum).max(1.0);
    let base = if w_re >= 0.0 { 1.5 * lead } else { 0.5 * lead };
    TailMajorant::new(base.powf(w_re), d as f64 * w_re).valid_from(min_t)
}

/// Analytic continuation of the monomial case:
/// `Gamma_{t^k}(s) = Gamma_{t^k}(s+n) / (B(s) B(s+1) ... B(s+n-1))` with the
/// minimal shift `n` landing one full unit inside the convergence
/// half-plane. An exact zero of a denominator factor is a pole (the
/// numerator, an Euler gamma value, never vanishes); a merely tiny factor
/// is reported as an ill-conditioning warning instead.
pub fn gamma_tk_continued(k: u32, s: Complex64, _cfg: &QuadratureConfig) -> Result<ComplexEval> {
    check_k(k)?;
    let b = big_b(k)?;
    let inner = 2.0 - 1.0 / k as f64; // one unit inside Re(s) > 1 - 1/k
    let n = if s.re > inner {
        0
    } else {
        (inner - s.re).ceil() as usize
    };
    let numerator = gamma_tk_closed(k, s + n as f64)?;
    let mut denom = Complex64::new(1.0, 0.0);
    let mut warnings = Vec::new();
    for j in 0..n {
        let arg = s + j as f64;
        let bj = b.eval(arg);
        if bj.norm() == 0.0 {
            let root = nearest_root(&b, arg);
            return Err(Error::Pole(format!(
                "B(s+{j}) = 0 at s = {s}: continuation denominator root {root} (k = {k})"
            )));
        }
        let scale = b.eval_magnitude_scale(arg);
        if bj.norm() < NEAR_POLE_REL * scale {
            warnings.push(format!(
                "B(s+{j}) = {bj} is within {NEAR_POLE_REL:e} of zero relative to its scale; \
                 the continued value is ill-conditioned"
            ));
        }
        denom *= bj;
    }
    let value = numerator.value / denom;
    let abs_err = numerator.abs_err / denom.norm() + value.norm() * 1e-15 * n as f64;
    let mut out = ComplexEval::new(value, abs_err, Method::Continuation);
    out.warnings = warnings;
    Ok(out)
}

fn nearest_root(b: &SPolynomial, arg: Complex64) -> f64 {
    b.factored()
        .map(|f| {
            f.roots
                .iter()
                .copied()
                .min_by(|p, q| (arg - *p).norm().total_cmp(&(arg - *q).norm()))
                .unwrap_or(0.0)
        })
        .unwrap_or(0.0)
}

/// Finite Gauss product
/// `Pi(s, n) = n! n^{k(s-1)+1} / prod_{j=1}^{n+1} [k(s-1)+j]`,
/// which converges to `Gamma_{t^k}(s)` as `n` grows. Accumulated in log
/// space; errors if any denominator factor vanishes.
pub fn gauss_limit_product(k: u32, s: Complex64, n: u32) -> Result<ComplexEval> {
    check_k(k)?;
    if n == 0 {
        return Err(Error::Invalid("the Gauss product needs n >= 1".into()));
    }
    let x = (s - 1.0) * k as f64 + 1.0;
    let nf = n as f64;
    let mut log_acc = special::log_gamma(Complex64::new(nf + 1.0, 0.0))? + x * nf.ln();
    for i in 0..=n {
        let factor = x + i as f64;
        if factor.norm() == 0.0 {
            return Err(Error::Singular(format!(
                "Gauss product factor k(s-1)+{} vanishes at s = {s}",
                i + 1
            )));
        }
        log_acc -= factor.ln();
    }
    if log_acc.re > 709.78 {
        return Err(Error::Overflow(format!(
            "Gauss product at s = {s} has log magnitude {:.3}, beyond binary64 range",
            log_acc.re
        )));
    }
    let value = log_acc.exp();
    // leading error of the Euler product is O(x(x-1)/2n)
    let abs_err = value.norm() * (x * (x - 1.0)).norm() / (2.0 * nf);
    Ok(ComplexEval::new(value, abs_err, Method::Limit))
}

/// Truncated Weierstrass product for the reciprocal,
/// `1/Gamma_{t^k}(s) ~ x e^{gamma x} prod_{n=1}^{N} (1 + x/n) e^{-x/n}`
/// with `x = k(s-1)+1`. Zeros of the product are legitimate values (the
/// reciprocal vanishes at the gamma poles). The first `ceil|x|` factors are
/// multiplied directly; the rest accumulate as `log(1+x/n) - x/n`, each
/// factor then having positive real part so the principal branch is safe.
pub fn weierstrass_reciprocal(k: u32, s: Complex64, big_n: u32) -> Result<ComplexEval> {
    check_k(k)?;
    if big_n == 0 {
        return Err(Error::Invalid(
            "the Weierstrass product needs N >= 1".into(),
        ));
    }
    let x = (s - 1.0) * k as f64 + 1.0;
    let tail_log = x.norm_sqr() / (2.0 * big_n as f64);
    if x.norm() == 0.0 {
        return Ok(ComplexEval::new(
            Complex64::new(0.0, 0.0),
            0.0,
            Method::Product,
        ));
    }
    let prefix_n = (x.norm().ceil() as u32).min(big_n);
    let mut prefix = x * (EULER_GAMMA * x).exp();
    for n in 1..=prefix_n {
        let nf = n as f64;
        let factor = (Complex64::new(1.0, 0.0) + x / nf) * (-x / nf).exp();
        if factor.norm() == 0.0 {
            // x is a negative integer: 1/Gamma is exactly zero there
            return Ok(ComplexEval::new(
                Complex64::new(0.0, 0.0),
                0.0,
                Method::Product,
            ));
        }
        prefix *= factor;
    }
    let mut log_sum = Complex64::new(0.0, 0.0);
    for n in (prefix_n + 1)..=big_n {
        let nf = n as f64;
        log_sum += (Complex64::new(1.0, 0.0) + x / nf).ln() - x / nf;
    }
    let value = prefix * log_sum.exp();
    let abs_err = value.norm() * tail_log.exp_m1().abs();
    Ok(ComplexEval::new(value, abs_err, Method::Product))
}

fn is_real_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re == z.re.round()
}

/// Right-hand side of the reflection identity
/// `Gamma_{t^k}(s) Gamma_{t^k}(1-s) = pi/sin(pi k s) prod_{i=1}^{k-1} 1/(k(s-1)+i)`.
pub fn reflection_rhs(k: u32, s: Complex64) -> Result<ComplexEval> {
    check_k(k)?;
    let ks = s * k as f64;
    if is_real_integer(ks) {
        return Err(Error::Singular(format!(
            "sin(pi k s) vanishes at s = {s} (k = {k})"
        )));
    }
    let pi = std::f64::consts::PI;
    let mut value = pi / (pi * ks).sin();
    for i in 1..k {
        let factor = (s - 1.0) * k as f64 + i as f64;
        if factor.norm() == 0.0 {
            return Err(Error::Singular(format!(
                "reflection product factor k(s-1)+{i} vanishes at s = {s}"
            )));
        }
        value /= factor;
    }
    Ok(ComplexEval::new(
        value,
        value.norm() * 1e-14,
        Method::ClosedForm,
    ))
}

/// Leading asymptotic term
/// `Gamma_{t^k}(s) ~ (2 pi)^{1/2} (ks)^{ks+1/2} e^{-ks} / B(s)`,
/// evaluated in log space. Requires `Re(s) > 0` and `B(s) != 0`.
pub fn asymptotic_approx(k: u32, s: Complex64) -> Result<ComplexEval> {
    check_k(k)?;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "asymptotic form needs Re(s) > 0, got Re(s) = {}",
            s.re
        )));
    }
    let b = big_b(k)?;
    let bs = b.eval(s);
    if bs.norm() == 0.0 {
        return Err(Error::Singular(format!(
            "B({s}) = 0: asymptotic form undefined"
        )));
    }
    let ks = s * k as f64;
    let log_val = 0.5 * (2.0 * std::f64::consts::PI).ln() + (ks + 0.5) * ks.ln() - ks - bs.ln();
    if log_val.re > 709.78 {
        return Err(Error::Overflow(
            "asymptotic term exceeds binary64 range".into(),
        ));
    }
    let value = log_val.exp();
    // the dropped correction is O(1/s)
    let abs_err = value.norm() / s.norm().max(1.0);
    Ok(ComplexEval::new(value, abs_err, Method::Asymptotic))
}

/// Diaz-Pariguan k-gamma function
/// `Gamma_kp(s) = int_0^inf t^{s-1} e^{-t^{kp}/kp} dt` for real `kp > 0`,
/// computed by quadrature after the substitution `u = t^{kp}/kp`, which
/// turns it into `kp^{s/kp - 1} int_0^inf u^{s/kp - 1} e^{-u} du`.
pub fn k_gamma(kp: f64, s: Complex64, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    if kp <= 0.0 || !kp.is_finite() {
        return Err(Error::Domain(format!(
            "k-gamma parameter must be positive, got {kp}"
        )));
    }
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "k-gamma needs Re(s) > 0, got Re(s) = {}",
            s.re
        )));
    }
    let w = s / kp - 1.0; // u-exponent after substitution
    let scale = (w * kp.ln()).exp(); // kp^{s/kp - 1}
    let cfg = cfg.clone().with_singularity(w.re);
    let tail = TailMajorant::new(1.0, w.re);
    let r = integrate_exp_weighted(|u: f64| Ok((w * u.ln()).exp()), 1.0, tail, &cfg)?;
    let value = scale * r.value;
    Ok(ComplexEval::new(
        value,
        r.abs_err * scale.norm(),
        Method::Quadrature,
    ))
}

/// Closed form of the k-gamma function, `kp^{s/kp-1} Gamma(s/kp)`; the
/// independent cross-check for [`k_gamma`].
pub fn k_gamma_closed(kp: f64, s: Complex64) -> Result<ComplexEval> {
    if kp <= 0.0 || !kp.is_finite() {
        return Err(Error::Domain(format!(
            "k-gamma parameter must be positive, got {kp}"
        )));
    }
    let w = s / kp - 1.0;
    let g = special::gamma(s / kp)?;
    let scale = (w * kp.ln()).exp();
    Ok(ComplexEval::new(
        g.value * scale,
        g.abs_err * scale.norm(),
        Method::ClosedForm,
    ))
}

/// The bridge `Gamma_{t^k}(s) = k^{ks} s / B(s) * Gamma_{1/k}(s)`, evaluated
/// on its right-hand side with the quadrature k-gamma. A continuation-free
/// cross-check of the closed form.
pub fn gamma_tk_via_kgamma(k: u32, s: Complex64, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    check_k(k)?;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "bridge needs Re(s) > 0, got Re(s) = {}",
            s.re
        )));
    }
    let b = big_b(k)?;
    let bs = b.eval(s);
    if bs.norm() == 0.0 {
        return Err(Error::Singular(format!("B({s}) = 0: bridge undefined")));
    }
    let kf = k as f64;
    let kg = k_gamma(1.0 / kf, s, cfg)?;
    let prefactor = ((s * kf) * kf.ln()).exp() * s / bs; // k^{ks} s / B(s)
    let value = prefactor * kg.value;
    Ok(ComplexEval::new(
        value,
        kg.abs_err * prefactor.norm(),
        Method::Quadrature,
    ))
}

/// Right-hand side of the quarter-reflection identity
/// `Gamma_{t^k}(s) Gamma_{t^k}(1/k - s) = k s(1-ks) / (B(s) B(1/k-s)) * pi/sin(pi k s)`.
///
/// The factor `k` comes from the k-gamma reflection formula
/// `Gamma_kp(s) Gamma_kp(kp - s) = pi / (kp sin(pi s / kp))` applied at
/// `kp = 1/k`; at `k = 1` this is the Euler reflection formula.
pub fn quarter_reflection_rhs(k: u32, s: Complex64) -> Result<ComplexEval> {
    check_k(k)?;
    let ks = s * k as f64;
    if is_real_integer(ks) {
        return Err(Error::Singular(format!(
            "sin(pi k s) vanishes at s = {s} (k = {k})"
        )));
    }
    let b = big_b(k)?;
    let bs = b.eval(s);
    let bq = b.eval(Complex64::new(1.0 / k as f64, 0.0) - s);
    if bs.norm() == 0.0 || bq.norm() == 0.0 {
        return Err(Error::Singular(format!(
            "B(s) B(1/k - s) vanishes at s = {s} (k = {k})"
        )));
    }
    let pi = std::f64::consts::PI;
    let value = k as f64 * s * (Complex64::new(1.0, 0.0) - ks) / (bs * bq) * pi / (pi * ks).sin();
    Ok(ComplexEval::new(
        value,
        value.norm() * 1e-13,
        Method::ClosedForm,
    ))
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Invalid(
            "monomial exponent k must be positive".into(),
        ));
    }
    if k > crate::bsato::MAX_ORDER {
        return Err(Error::Invalid(format!(
            "monomial exponent k = {k} exceeds the cap {}",
            crate::bsato::MAX_ORDER
        )));
    }
    Ok(())
}
