//! Beta and zeta functions associated with a polynomial.
//!
//! `B_f(p,q) = Gamma_f(p) Gamma_f(q) / Gamma_f(p+q)`, and `zeta_f` through
//! the expansion `zeta_f(s) Gamma_f(s) = sum_n int_0^inf f^{s-1} e^{-(n+1)t} dt`.
//! For monomials both collapse to classical objects:
//! `zeta_{t^k}(s) = zeta(k(s-1)+1)` and a closed relation ties `B_{t^k}` to
//! the Euler beta function.
//!
//! For general `f` the zeta series is exposed only as a truncated partial
//! sum with an explicit reported tail bound; no closed form or continuation
//! is claimed. When `f(0) > 0` the terms decay like `1/n` and the series
//! has no finite tail bound at all, which is reported as a warning with a
//! saturated error estimate.

use num_complex::Complex64;

use crate::bsato::bsato_monomial;
use crate::error::{Error, Result};
use crate::gamma::{gamma_f_quadrature, gamma_tk_closed, power_tail_majorant, GammaDomain};
use crate::quad::{integrate_exp_weighted, QuadratureConfig};
use crate::special::{classical_beta, riemann_zeta, ComplexEval, Method};

/// `Gamma_f` by the closed form when `f` is a unit monomial, by quadrature
/// otherwise.
fn gamma_f_best(dom: &GammaDomain, s: Complex64, cfg: &QuadratureConfig) -> Result<ComplexEval> {
    match dom.f().as_unit_monomial() {
        Some(k) if k >= 1 => gamma_tk_closed(k as u32, s),
        _ => gamma_f_quadrature(dom, s, cfg),
    }
}

/// `B_f(p, q) = Gamma_f(p) Gamma_f(q) / Gamma_f(p+q)` for `Re(p), Re(q) > 0`.
///
/// The two numerator factors are evaluated independently and multiplied, so
/// the computation is exactly symmetric in `(p, q)`.
pub fn beta_f(
    dom: &GammaDomain,
    p: Complex64,
    q: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ComplexEval> {
    if p.re <= 0.0 || q.re <= 0.0 {
        return Err(Error::Domain(format!(
            "beta_f needs Re(p), Re(q) > 0, got p = {p}, q = {q}"
        )));
    }
    let gp = gamma_f_best(dom, p, cfg)?;
    let gq = gamma_f_best(dom, q, cfg)?;
    let gpq = gamma_f_best(dom, p + q, cfg)?;
    if gpq.value.norm() == 0.0 {
        return Err(Error::Singular(format!(
            "Gamma_f({}) = 0 in the beta denominator",
            p + q
        )));
    }
    let value = gp.value * gq.value / gpq.value;
    let rel = gp.abs_err / gp.value.norm().max(1e-300)
        + gq.abs_err / gq.value.norm().max(1e-300)
        + gpq.abs_err / gpq.value.norm().max(1e-300);
    Ok(ComplexEval::new(value, value.norm() * rel, gp.method))
}

/// Right-hand side of the monomial beta relation
/// `B_{t^k}(p,q) = k p q/(p+q) * B(p+q)/(B(p) B(q)) * B(kp, kq)`,
/// with `B(.)` the functional-equation polynomial and `B(kp, kq)` the
/// classical beta function.
pub fn beta_tk_relation_rhs(k: u32, p: Complex64, q: Complex64) -> Result<ComplexEval> {
    let b = bsato_monomial(k)?.big_b;
    let bp = b.eval(p);
    let bq = b.eval(q);
    if bp.norm() == 0.0 || bq.norm() == 0.0 {
        return Err(Error::Singular(format!(
            "B(p) B(q) vanishes at p = {p}, q = {q}"
        )));
    }
    let pq = p + q;
    if pq.norm() == 0.0 {
        return Err(Error::Singular("p + q = 0 in the beta relation".into()));
    }
    let kf = k as f64;
    let cb = classical_beta(p * kf, q * kf)?;
    let value = kf * p * q / pq * b.eval(pq) / (bp * bq) * cb.value;
    let rel = cb.abs_err / cb.value.norm().max(1e-300) + 1e-14;
    Ok(ComplexEval::new(
        value,
        value.norm() * rel,
        Method::ClosedForm,
    ))
}

/// Monomial zeta closed form `zeta_{t^k}(s) = zeta(k(s-1)+1)`, valid for
/// `Re(s) > 1`.
pub fn zeta_tk(k: u32, s: Complex64) -> Result<ComplexEval> {
    if k == 0 {
        return Err(Error::Invalid(
            "monomial exponent k must be positive".into(),
        ));
    }
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "zeta_{{t^k}} needs Re(s) > 1, got Re(s) = {}",
            s.re
        )));
    }
    riemann_zeta((s - 1.0) * k as f64 + 1.0)
}

/// Truncated series for `zeta_f`:
/// `(1/Gamma_f(s)) sum_{n=0}^{N} int_0^inf f^{s-1} e^{-(n+1)t} dt`,
/// summed in increasing `n` with compensated summation.
///
/// The reported error combines the accumulated quadrature estimates with an
/// integral-test tail bound built from the measured last term and the decay
/// exponent `k0 (Re(s)-1) + 1`. For `f(0) > 0` that exponent is 1, the
/// series diverges, and the result carries a warning with the error
/// estimate saturated at `f64::MAX`.
pub fn zeta_f_series(
    dom: &GammaDomain,
    s: Complex64,
    terms: u32,
    cfg: &QuadratureConfig,
) -> Result<ComplexEval> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "the zeta_f series is stated for Re(s) > 1, got Re(s) = {}",
            s.re
        )));
    }
    if terms == 0 {
        return Err(Error::Invalid(
            "zeta_f_series needs at least one term".into(),
        ));
    }
    let w = s - 1.0;
    let f = dom.f().clone();
    let alpha = dom.multiplicity() as f64 * w.re;
    let tail_shape = power_tail_majorant(&f, w.re);
    let term_cfg = cfg.clone().with_singularity(alpha);

    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut last_mag = 0.0;
    for n in 0..=terms {
        let lambda = (n + 1) as f64;
        let r = integrate_exp_weighted(
            |t| f.eval_complex_power(t, w),
            lambda,
            tail_shape,
            &term_cfg,
        )?;
        let y = r.value - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        quad_err += r.abs_err;
        last_mag = r.value.norm();
    }

    let gf = gamma_f_best(dom, s, cfg)?;
    let value = sum / gf.value;

    // decay exponent of the terms; integral-test tail from the last term
    let p = dom.multiplicity() as f64 * w.re + 1.0;
    let mut warnings = Vec::new();
    let tail = if p > 1.0 {
        last_mag * (terms as f64 + 1.0) / (p - 1.0)
    } else {
        warnings.push(format!(
            "series terms decay like n^-{p:.3}: no finite tail bound exists (the zeta_f series \
             is divergent when f(0) > 0); the reported value is the bare partial sum"
        ));
        f64::MAX
    };
    let rel_gamma = gf.abs_err / gf.value.norm().max(1e-300);
    let abs_err = if tail == f64::MAX {
        f64::MAX
    } else {
        (tail + quad_err) / gf.value.norm().max(1e-300) + value.norm() * rel_gamma
    };
    if abs_err > cfg.rel_tol * value.norm().max(1.0) {
        warnings.push(format!(
            "truncation after {terms} terms leaves a tail bound of {tail:.3e}, above the \
             requested tolerance"
        ));
    }
    let mut out = ComplexEval::new(value, abs_err, Method::Series);
    out.warnings = warnings;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn beta_f_examples() {
        // f = t: the classical beta function
        let dom = GammaDomain::monomial(1).unwrap();
        let v = beta_f(&dom, c(1.0, 0.0), c(1.0, 0.0), &cfg())
            .unwrap()
            .value;
        assert_relative_eq!(v.re, 1.0, max_relative = 1e-12);

        // f = t^2: 1/Gamma_{t^2}(2) = 1/2
        let dom = GammaDomain::monomial(2).unwrap();
        let v = beta_f(&dom, c(1.0, 0.0), c(1.0, 0.0), &cfg())
            .unwrap()
            .value;
        assert_relative_eq!(v.re, 0.5, max_relative = 1e-12);

        // f = t^2 + 1: Gamma_f(1)^2 / Gamma_f(2) = 1/3
        let dom = GammaDomain::new("1,0,1".parse().unwrap()).unwrap();
        let v = beta_f(&dom, c(1.0, 0.0), c(1.0, 0.0), &cfg())
            .unwrap()
            .value;
        assert_relative_eq!(v.re, 1.0 / 3.0, max_relative = 1e-9);

        assert!(matches!(
            beta_f(&dom, c(-1.0, 0.0), c(1.0, 0.0), &cfg()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn beta_f_is_exactly_symmetric() {
        let dom = GammaDomain::new("1,0,1".parse().unwrap()).unwrap();
        let p = c(1.3, 0.5);
        let q = c(0.8, -0.2);
        let a = beta_f(&dom, p, q, &cfg()).unwrap().value;
        let b = beta_f(&dom, q, p, &cfg()).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn beta_relation_examples() {
        // k = 1 collapses to the classical beta
        let p = c(1.3, 0.0);
        let q = c(2.2, 0.0);
        let rhs = beta_tk_relation_rhs(1, p, q).unwrap().value;
        let classical = classical_beta(p, q).unwrap().value;
        assert!((rhs - classical).norm() / classical.norm() < 1e-12);

        // k = 2, p = q = 1: value 1/2
        let rhs = beta_tk_relation_rhs(2, c(1.0, 0.0), c(1.0, 0.0))
            .unwrap()
            .value;
        assert_relative_eq!(rhs.re, 0.5, max_relative = 1e-12);

        // singular at a root of B
        assert!(matches!(
            beta_tk_relation_rhs(2, c(0.5, 0.0), c(1.0, 0.0)),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn beta_relation_matches_beta_f_on_grid() {
        for k in [1u32, 2, 3] {
            let dom = GammaDomain::monomial(k).unwrap();
            for &pr in &[0.75, 1.0, 1.5, 2.5] {
                for &qr in &[0.6, 1.0, 2.0, 3.0] {
                    let p = c(pr, 0.0);
                    let q = c(qr, 0.0);
                    let b = bsato_monomial(k).unwrap().big_b;
                    if b.eval(p).norm() < 1e-9 || b.eval(q).norm() < 1e-9 {
                        continue;
                    }
                    let lhs = beta_f(&dom, p, q, &cfg()).unwrap().value;
                    let rhs = beta_tk_relation_rhs(k, p, q).unwrap().value;
                    assert!(
                        (lhs - rhs).norm() / rhs.norm().max(1e-300) <= 1e-8,
                        "k={k} p={pr} q={qr}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn zeta_tk_examples() {
        let v = zeta_tk(1, c(2.0, 0.0)).unwrap().value;
        assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10);

        // zeta_{t^2}(2) = zeta(3)
        let v = zeta_tk(2, c(2.0, 0.0)).unwrap().value;
        assert!((v.re - 1.2020569032).abs() < 1e-9);

        // zeta_{t^2}(1.2) = zeta(1.4)
        let v = zeta_tk(2, c(1.2, 0.0)).unwrap().value;
        let direct = riemann_zeta(c(1.4, 0.0)).unwrap().value;
        assert!((v - direct).norm() < 1e-12);

        assert!(matches!(zeta_tk(2, c(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_series_term_identity_for_monomials() {
        // each summand int t^{k(s-1)} e^{-(n+1)t} dt equals
        // Gamma_{t^k}(s) / (n+1)^{k(s-1)+1}
        for k in [1u32, 2] {
            let dom = GammaDomain::monomial(k).unwrap();
            let s = c(1.8, 0.4);
            let w = s - 1.0;
            let g = gamma_tk_closed(k, s).unwrap().value;
            let exponent = w * k as f64 + 1.0;
            let f = dom.f().clone();
            let tail = power_tail_majorant(&f, w.re);
            let term_cfg = cfg().with_singularity(k as f64 * w.re);
            for n in [0u32, 3, 17] {
                let lambda = (n + 1) as f64;
                let quad =
                    integrate_exp_weighted(|t| f.eval_complex_power(t, w), lambda, tail, &term_cfg)
                        .unwrap()
                        .value;
                let expect = g * (-exponent * lambda.ln()).exp();
                assert!(
                    (quad - expect).norm() / expect.norm() <= 1e-8,
                    "k={k} n={n}: {quad} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn zeta_series_converges_to_zeta_tk() {
        for &n in &[100u32, 1000] {
            let dom = GammaDomain::monomial(2).unwrap();
            let s = c(2.0, 0.0);
            let series = zeta_f_series(&dom, s, n, &cfg()).unwrap();
            let closed = zeta_tk(2, s).unwrap().value;
            let gap = (series.value - closed).norm();
            assert!(
                gap <= 2.0 * series.abs_err,
                "N={n}: gap {gap} vs reported bound {}",
                series.abs_err
            );
        }
    }

    #[test]
    fn zeta_series_partial_sum_matches_moment_oracle() {
        // f = t^2 + 1 at s = 2: each term is exactly 1/(n+1) + 2/(n+1)^3,
        // and Gamma_f(2) = 3.
        let dom = GammaDomain::new("1,0,1".parse().unwrap()).unwrap();
        let n_terms = 200u32;
        let series = zeta_f_series(&dom, c(2.0, 0.0), n_terms, &cfg()).unwrap();
        let mut oracle = 0.0f64;
        for n in 0..=n_terms {
            let m = (n + 1) as f64;
            oracle += 1.0 / m + 2.0 / (m * m * m);
        }
        oracle /= 3.0;
        assert!(
            (series.value.re - oracle).abs() < 1e-8,
            "{} vs {oracle}",
            series.value.re
        );
        // divergent-series warning with saturated error
        assert_eq!(series.abs_err, f64::MAX);
        assert!(series.warnings.iter().any(|w| w.contains("divergent")));
    }

    #[test]
    fn zeta_series_domain_checks() {
        let dom = GammaDomain::monomial(1).unwrap();
        assert!(matches!(
            zeta_f_series(&dom, c(0.9, 0.0), 10, &cfg()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            zeta_f_series(&dom, c(2.0, 0.0), 0, &cfg()),
            Err(Error::Invalid(_))
        ));
    }
}
