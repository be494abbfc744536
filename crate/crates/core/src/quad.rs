//! Exp-weighted improper integration: `int_0^inf g(t) e^{-lambda t} dt` for
//! complex-valued integrands with a possible algebraic singularity
//! `g(t) ~ t^alpha` (`alpha > -1`) at the origin.
//!
//! Strategy, in order:
//!
//! 1. truncate at `T` chosen so the closed-form tail majorant
//!    `C (2/lambda) T^D e^{-lambda T}` (valid once `t^D e^{-lambda t/2}` is
//!    decreasing, i.e. `T >= 2D/lambda`) drops below half the absolute
//!    tolerance — callers supply the polynomial bound `|g(t)| <= C t^D`;
//! 2. if `alpha` is nonzero, substitute `t = u^m` with the smallest integer
//!    `m` making the transformed integrand C^1 at the origin
//!    (`m(1+alpha) - 1 >= 1`);
//! 3. adaptively subdivide with an embedded Gauss7/Kronrod15 pair, the
//!    error estimate per panel being the larger of the real and imaginary
//!    component estimates so both parts of an identity comparison share one
//!    refinement stream.
//!
//! Panels are summed left to right (compensated) so results are
//! deterministic.

use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and panel limits for [`integrate_exp_weighted`].
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Known endpoint behavior `|g(t)| <= C t^alpha` near 0; must exceed -1.
    pub singularity_exponent: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 4096,
            singularity_exponent: 0.0,
        }
    }
}

impl QuadratureConfig {
    pub fn with_singularity(mut self, alpha: f64) -> Self {
        self.singularity_exponent = alpha;
        self
    }
}

/// Polynomial tail majorant `|g(t)| <= coeff * t^degree` valid for
/// `t >= min_t`; gives the truncation point a rigorous closed-form bound.
#[derive(Debug, Clone, Copy)]
pub struct TailMajorant {
    pub coeff: f64,
    pub degree: f64,
    pub min_t: f64,
}

impl TailMajorant {
    pub fn new(coeff: f64, degree: f64) -> Self {
        Self {
            coeff,
            degree,
            min_t: 1.0,
        }
    }

    pub fn valid_from(mut self, min_t: f64) -> Self {
        self.min_t = min_t;
        self
    }
}

/// Result of one exp-weighted integration.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// Accumulated panel estimates plus the truncation tail bound.
    pub abs_err: f64,
    pub panels_used: usize,
    pub truncation_t: f64,
}

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule,
// at the precision QUADPACK dqk15 publishes them.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// QUADPACK-style conservative rescaling of the raw `|K15 - G7|` estimate.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

struct PanelEval {
    value: Complex64,
    err: f64,
}

/// One G7/K15 application to `h` on `[a, b]`. Nodes are strictly interior,
/// so endpoint singularities are never sampled.
fn gauss_kronrod_panel<F>(h: &F, a: f64, b: f64) -> Result<PanelEval>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = h(center)?;
    if !f_center.re.is_finite() || !f_center.im.is_finite() {
        return Err(Error::Convergence(format!(
            "integrand non-finite at t = {center}"
        )));
    }

    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs_re = f_center.re.abs() * WGK[7];
    let mut res_abs_im = f_center.im.abs() * WGK[7];
    let mut fv: [Complex64; 14] = [Complex64::new(0.0, 0.0); 14];

    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let f1 = h(center - dx)?;
        let f2 = h(center + dx)?;
        if !(f1.re.is_finite() && f1.im.is_finite() && f2.re.is_finite() && f2.im.is_finite()) {
            return Err(Error::Convergence(format!(
                "integrand non-finite near t = {}",
                center - dx
            )));
        }
        fv[j] = f1;
        fv[j + 7] = f2;
        let fsum = f1 + f2;
        res_k += fsum * WGK[j];
        res_abs_re += (f1.re.abs() + f2.re.abs()) * WGK[j];
        res_abs_im += (f1.im.abs() + f2.im.abs()) * WGK[j];
        if j % 2 == 1 {
            // odd Kronrod indices carry the embedded Gauss-7 nodes
            res_g += fsum * WG[j / 2];
        }
    }

    let mean = res_k * 0.5;
    let mut res_asc_re = WGK[7] * (f_center.re - mean.re).abs();
    let mut res_asc_im = WGK[7] * (f_center.im - mean.im).abs();
    for (j, f) in fv.iter().enumerate() {
        let w = WGK[j % 7];
        res_asc_re += w * (f.re - mean.re).abs();
        res_asc_im += w * (f.im - mean.im).abs();
    }

    let raw = res_k - res_g;
    let err_re = rescale_error(
        raw.re * half,
        res_abs_re * half.abs(),
        res_asc_re * half.abs(),
    );
    let err_im = rescale_error(
        raw.im * half,
        res_abs_im * half.abs(),
        res_asc_im * half.abs(),
    );
    Ok(PanelEval {
        value: res_k * half,
        err: err_re.max(err_im),
    })
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error, ties broken by insertion order for determinism
        self.err
            .total_cmp(&other.err)
            .then(other.seq.cmp(&self.seq))
    }
}

/// Truncation point: smallest `T` (up to a 1.2 growth factor) with
/// `coeff * (2/lambda) * T^D * e^{-lambda T} <= abs_tol / 2`, searched in
/// log space.
fn truncation_point(tail: &TailMajorant, lambda: f64, abs_tol: f64) -> Result<f64> {
    let d = tail.degree;
    let mut t = tail
        .min_t
        .max(2.0 * d.max(0.0) / lambda)
        .max(1.0 / lambda)
        .max(1e-3);
    let target = (abs_tol / 2.0).ln();
    let log_bound = |t: f64| {
        tail.coeff.max(f64::MIN_POSITIVE).ln() + (2.0 / lambda).ln() + d * t.ln() - lambda * t
    };
    let mut iter = 0;
    while log_bound(t) > target {
        t *= 1.2;
        iter += 1;
        if iter > 4000 {
            return Err(Error::Convergence(
                "could not satisfy the tail bound at any finite truncation point".into(),
            ));
        }
    }
    Ok(t)
}

/// `int_0^inf g(t) e^{-lambda t} dt` for `lambda > 0`.
///
/// `g` must be continuous on `(0, inf)`, bounded by
/// `C t^(cfg.singularity_exponent)` near 0 and by the supplied
/// [`TailMajorant`] at infinity. Fails with a convergence error when
/// `cfg.max_panels` is exhausted before the tolerances are met.
pub fn integrate_exp_weighted<F>(
    g: F,
    lambda: f64,
    tail: TailMajorant,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if lambda <= 0.0 {
        return Err(Error::Domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0 {
        return Err(Error::Invalid(format!(
            "tolerances must be positive, got rel {} abs {}",
            cfg.rel_tol, cfg.abs_tol
        )));
    }
    let alpha = cfg.singularity_exponent;
    if alpha <= -1.0 {
        return Err(Error::Domain(format!(
            "singularity exponent alpha = {alpha} must exceed -1"
        )));
    }

    let trunc_t = truncation_point(&tail, lambda, cfg.abs_tol)?;
    let tail_bound =
        tail.coeff * (2.0 / lambda) * trunc_t.powf(tail.degree) * (-lambda * trunc_t).exp();

    // t = u^m removes the endpoint singularity; m(1+alpha) - 1 >= 1 makes
    // the transformed integrand C^1 at u = 0.
    let m = if alpha == 0.0 {
        1
    } else {
        (2.0 / (1.0 + alpha)).ceil().max(1.0) as i32
    };
    let upper = if m == 1 {
        trunc_t
    } else {
        trunc_t.powf(1.0 / m as f64)
    };
    let mf = m as f64;
    let h = |u: f64| -> Result<Complex64> {
        if m == 1 {
            Ok(g(u)? * (-lambda * u).exp())
        } else {
            let t = u.powi(m);
            Ok(g(t)? * (mf * u.powi(m - 1) * (-lambda * t).exp()))
        }
    };

    // Seed panels on a geometric ladder so the initial estimate already
    // resolves the exp-weight scale.
    let mut cuts = vec![0.0];
    let mut x = (upper / 256.0).min(1.0 / lambda).min(upper / 2.0);
    while x < upper * 0.75 {
        cuts.push(x);
        x *= 2.0;
    }
    cuts.push(upper);

    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut seq = 0usize;
    for w in cuts.windows(2) {
        let e = gauss_kronrod_panel(&h, w[0], w[1])?;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: e.value,
            err: e.err,
            seq,
        });
        seq += 1;
    }

    loop {
        let total_value: Complex64 = heap.iter().map(|p| p.value).sum();
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * total_value.norm());
        if total_err + tail_bound <= target {
            break;
        }
        if heap.len() >= cfg.max_panels {
            return Err(Error::Convergence(format!(
                "tolerance not met with {} panels (err {:.3e}, target {:.3e})",
                heap.len(),
                total_err + tail_bound,
                target
            )));
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable in f64; keep its estimate
            let mut back = worst;
            back.err = 0.0;
            heap.push(back);
            continue;
        }
        let left = gauss_kronrod_panel(&h, worst.a, mid)?;
        let right = gauss_kronrod_panel(&h, mid, worst.b)?;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: left.value,
            err: left.err,
            seq,
        });
        seq += 1;
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: right.value,
            err: right.err,
            seq,
        });
        seq += 1;
    }

    // Deterministic reduction: sum panels in spatial order.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for p in &panels {
        let y = p.value - comp;
        let t = value + y;
        comp = (t - value) - y;
        value = t;
        err += p.err;
    }
    Ok(QuadratureResult {
        value,
        abs_err: err + tail_bound,
        panels_used: panels.len(),
        truncation_t: trunc_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cplx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn factorial(n: usize) -> f64 {
        (1..=n).fold(1.0, |acc, k| acc * k as f64)
    }

    #[test]
    fn constant_integrand() {
        let r = integrate_exp_weighted(
            |_| Ok(cplx(1.0)),
            1.0,
            TailMajorant::new(1.0, 0.0),
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        assert!(r.value.im == 0.0);
        assert!(r.truncation_t > 0.0);
    }

    #[test]
    fn quadratic_monomial() {
        let r = integrate_exp_weighted(
            |t| Ok(cplx(t * t)),
            1.0,
            TailMajorant::new(1.0, 2.0),
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-11);
    }

    #[test]
    fn inverse_square_root_singularity() {
        let cfg = QuadratureConfig::default().with_singularity(-0.5);
        let r = integrate_exp_weighted(
            |t| Ok(cplx(1.0 / t.sqrt())),
            1.0,
            TailMajorant::new(1.0, 0.0),
            &cfg,
        )
        .unwrap();
        let expect = std::f64::consts::PI.sqrt();
        assert!(
            (r.value.re - expect).abs() < 1e-10,
            "{} vs {expect}",
            r.value.re
        );
    }

    #[test]
    fn monomials_match_factorials() {
        let cfg = QuadratureConfig::default();
        for n in 0..=10usize {
            let r = integrate_exp_weighted(
                |t| Ok(cplx(t.powi(n as i32))),
                1.0,
                TailMajorant::new(1.0, n as f64),
                &cfg,
            )
            .unwrap();
            let expect = factorial(n);
            let rel = (r.value.re - expect).abs() / expect;
            assert!(rel <= cfg.rel_tol * 10.0, "n = {n}: rel error {rel}");
        }
    }

    #[test]
    fn reported_error_bounds_measured_error_on_monomials() {
        let cfg = QuadratureConfig::default();
        let mut covered = 0;
        let mut total = 0;
        for n in 0..=10usize {
            for lambda in [0.5, 1.0, 2.0, 5.0] {
                let r = integrate_exp_weighted(
                    |t| Ok(cplx(t.powi(n as i32))),
                    lambda,
                    TailMajorant::new(1.0, n as f64),
                    &cfg,
                )
                .unwrap();
                let expect = factorial(n) / lambda.powi(n as i32 + 1);
                total += 1;
                if (r.value.re - expect).abs() <= r.abs_err {
                    covered += 1;
                }
            }
        }
        assert!(
            covered * 100 >= total * 99,
            "abs_err covered only {covered}/{total}"
        );
    }

    #[test]
    fn tightening_rel_tol_does_not_worsen_error() {
        for n in [1usize, 4, 7, 10] {
            let expect = factorial(n);
            let mut prev = f64::INFINITY;
            for rel_tol in [1e-6, 5e-7, 2.5e-7, 1.25e-7, 1e-8, 1e-10] {
                let cfg = QuadratureConfig {
                    rel_tol,
                    ..QuadratureConfig::default()
                };
                let r = integrate_exp_weighted(
                    |t| Ok(cplx(t.powi(n as i32))),
                    1.0,
                    TailMajorant::new(1.0, n as f64),
                    &cfg,
                )
                .unwrap();
                let err = (r.value.re - expect).abs();
                // allow the machine-noise floor once both runs are converged
                assert!(
                    err <= prev.max(1e-13 * expect),
                    "n = {n}, rel_tol {rel_tol}: {err} > {prev}"
                );
                prev = err.max(1e-13 * expect);
            }
        }
    }

    #[test]
    fn linearity_within_error_estimates() {
        let cfg = QuadratureConfig::default();
        let g1 = |t: f64| Ok(cplx(t));
        let g2 = |t: f64| Ok(cplx((3.0 * t).cos()));
        let (a, b) = (2.5f64, -1.5f64);
        let i1 = integrate_exp_weighted(g1, 1.0, TailMajorant::new(1.0, 1.0), &cfg).unwrap();
        let i2 = integrate_exp_weighted(g2, 1.0, TailMajorant::new(1.0, 0.0), &cfg).unwrap();
        let comb = integrate_exp_weighted(
            |t| Ok(cplx(a * t + b * (3.0 * t).cos())),
            1.0,
            TailMajorant::new(a.abs() + b.abs(), 1.0),
            &cfg,
        )
        .unwrap();
        let expect = a * i1.value.re + b * i2.value.re;
        let budget = a.abs() * i1.abs_err + b.abs() * i2.abs_err + comb.abs_err;
        assert!((comb.value.re - expect).abs() <= budget.max(1e-12));
    }

    #[test]
    fn complex_integrand_pairs_real_and_imaginary_streams() {
        // int t^{i} e^{-t} dt = Gamma(1 + i): both components converge on one
        // panel stream.
        let cfg = QuadratureConfig::default();
        let r = integrate_exp_weighted(
            |t| Ok(Complex64::new(0.0, t.ln()).exp()),
            1.0,
            TailMajorant::new(1.0, 0.0),
            &cfg,
        )
        .unwrap();
        // Gamma(1+i) = 0.49801566811835604 - 0.15494982830181069 i
        let expect = Complex64::new(0.498015668118356, -0.154949828301810);
        assert!((r.value - expect).norm() < 1e-9, "{}", r.value);
    }

    #[test]
    fn invalid_inputs() {
        let cfg = QuadratureConfig::default().with_singularity(-1.0);
        assert!(matches!(
            integrate_exp_weighted(|_| Ok(cplx(1.0)), 1.0, TailMajorant::new(1.0, 0.0), &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            integrate_exp_weighted(
                |_| Ok(cplx(1.0)),
                0.0,
                TailMajorant::new(1.0, 0.0),
                &QuadratureConfig::default()
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exhausting_panels_reports_convergence_failure() {
        let cfg = QuadratureConfig {
            max_panels: 4,
            ..QuadratureConfig::default()
        };
        let r = integrate_exp_weighted(
            |t| Ok(cplx((40.0 * t).sin() / t.powf(0.9))),
            1.0,
            TailMajorant::new(1.0, 0.0),
            &cfg.with_singularity(-0.9),
        );
        assert!(matches!(r, Err(Error::Convergence(_))));
    }

    #[test]
    fn large_lambda_concentrates_near_zero() {
        let lambda = 1.0e4;
        let r = integrate_exp_weighted(
            |t| Ok(cplx(t * t)),
            lambda,
            TailMajorant::new(1.0, 2.0),
            &QuadratureConfig::default(),
        )
        .unwrap();
        let expect = 2.0 / lambda.powi(3);
        assert!((r.value.re - expect).abs() / expect < 1e-10);
    }
}
