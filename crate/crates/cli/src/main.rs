//! Command-line front end: evaluate the gamma/zeta/beta family, construct
//! the functional-equation polynomial `B(s)`, and run the verification
//! harness.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain/pole/singularity error,
//! 3 convergence failure. Evaluation results are printed as one JSON object
//! `{"value":{"re":..,"im":..},"abs_error_estimate":..,"method":"..","warnings":[..]}`.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use gammaf::bsato::{bsato_monomial, bsato_quadratic, BsatoResult};
use gammaf::error::Error;
use gammaf::gamma::{
    asymptotic_approx, gamma_f_quadrature, gamma_tk_closed, gamma_tk_continued,
    gauss_limit_product, k_gamma, weierstrass_reciprocal, GammaDomain,
};
use gammaf::poly::RealPolynomial;
use gammaf::quad::QuadratureConfig;
use gammaf::special::{ComplexEval, Method};
use gammaf::verify::{check_identity, emit_reports, Grid, Identity, ReportFormat};
use gammaf::zetabeta::{beta_f, zeta_f_series, zeta_tk};

#[derive(Parser)]
#[command(
    name = "gammaf",
    version,
    about = "Gamma functions associated with a polynomial"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one of the functions at a point.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Construct the functional-equation polynomial B(s).
    Bsato(BsatoArgs),
    /// Check a named identity over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum EvalTarget {
    /// Gamma_f(s), for f = t^K (--monomial) or a general f (--coeffs).
    Gamma {
        /// Monomial order K (f = t^K).
        #[arg(long)]
        monomial: Option<u32>,
        /// Ascending comma-separated coefficients of f (quadrature only).
        #[arg(long)]
        coeffs: Option<String>,
        /// Evaluation point, RE or RE,IM.
        #[arg(long)]
        s: String,
        /// closed | quad | continued | limit:N | product:N | asymptotic.
        #[arg(long)]
        method: Option<String>,
    },
    /// The k-gamma function Gamma_K(s).
    Kgamma {
        /// The (real, positive) k parameter.
        #[arg(long)]
        k: f64,
        #[arg(long)]
        s: String,
    },
    /// zeta_f(s): closed form for monomials, truncated series otherwise.
    Zeta {
        #[arg(long)]
        monomial: Option<u32>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        s: String,
        /// Series truncation for --coeffs.
        #[arg(long)]
        terms: Option<u32>,
    },
    /// beta_f(p, q).
    Beta {
        #[arg(long)]
        monomial: Option<u32>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

#[derive(Args)]
struct BsatoArgs {
    /// Monomial order K.
    #[arg(long)]
    monomial: Option<u32>,
    /// Quadratic coefficients B,C for t^2 + B t + C.
    #[arg(long)]
    quadratic: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity name (e.g. functional_eq, reflection, quadratic_printed).
    #[arg(long)]
    identity: String,
    /// Grid spec: `s=START:STOP:STEP[;k=K1,K2,...][;bc=B1:C1,B2:C2,...]`.
    #[arg(long)]
    grid: String,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Relative tolerance override for pass/fail status.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) => 1,
        Error::Domain(_) | Error::Pole(_) | Error::Singular(_) | Error::Overflow(_) => 2,
        Error::Convergence(_) => 3,
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    let cfg = QuadratureConfig::default();
    match cli.command {
        Command::Eval { target } => eval(target, &cfg),
        Command::Bsato(args) => bsato(args),
        Command::Verify(args) => verify(args, &cfg),
    }
}

/// Parses `RE` or `RE,IM` into a complex number.
fn parse_complex(text: &str) -> Result<Complex64, Error> {
    let mut parts = text.splitn(2, ',');
    let re = parts
        .next()
        .unwrap()
        .parse::<f64>()
        .map_err(|_| Error::Invalid(format!("bad real part in {text:?}")))?;
    let im = match parts.next() {
        None => 0.0,
        Some(im) => im
            .parse::<f64>()
            .map_err(|_| Error::Invalid(format!("bad imaginary part in {text:?}")))?,
    };
    Ok(Complex64::new(re, im))
}

/// Exactly one of --monomial / --coeffs.
fn monomial_or_coeffs(
    monomial: Option<u32>,
    coeffs: Option<String>,
) -> Result<Result<u32, RealPolynomial>, Error> {
    match (monomial, coeffs) {
        (Some(k), None) => Ok(Ok(k)),
        (None, Some(text)) => Ok(Err(text.parse()?)),
        _ => Err(Error::Invalid(
            "exactly one of --monomial or --coeffs is required".into(),
        )),
    }
}

fn render_eval(eval: &ComplexEval) -> String {
    let obj = json!({
        "value": { "re": eval.value.re, "im": eval.value.im },
        "abs_error_estimate": eval.abs_err,
        "method": eval.method.as_str(),
        "warnings": eval.warnings,
    });
    format!("{obj}\n")
}

enum GammaMethod {
    Closed,
    Quad,
    Continued,
    Limit(u32),
    Product(u32),
    Asymptotic,
}

fn parse_method(text: &str) -> Result<GammaMethod, Error> {
    if let Some(n) = text.strip_prefix("limit:") {
        let n = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad limit count {n:?}")))?;
        return Ok(GammaMethod::Limit(n));
    }
    if let Some(n) = text.strip_prefix("product:") {
        let n = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad product count {n:?}")))?;
        return Ok(GammaMethod::Product(n));
    }
    match text {
        "closed" => Ok(GammaMethod::Closed),
        "quad" => Ok(GammaMethod::Quad),
        "continued" => Ok(GammaMethod::Continued),
        "asymptotic" => Ok(GammaMethod::Asymptotic),
        other => Err(Error::Invalid(format!("unknown method {other:?}"))),
    }
}

fn eval(target: EvalTarget, cfg: &QuadratureConfig) -> Result<String, Error> {
    match target {
        EvalTarget::Gamma {
            monomial,
            coeffs,
            s,
            method,
        } => {
            let s = parse_complex(&s)?;
            match monomial_or_coeffs(monomial, coeffs)? {
                Ok(k) => {
                    let method = match method.as_deref() {
                        None => GammaMethod::Closed,
                        Some(m) => parse_method(m)?,
                    };
                    let result = match method {
                        GammaMethod::Closed => gamma_tk_closed(k, s)?,
                        GammaMethod::Quad => {
                            gamma_f_quadrature(&GammaDomain::monomial(k)?, s, cfg)?
                        }
                        GammaMethod::Continued => gamma_tk_continued(k, s, cfg)?,
                        GammaMethod::Limit(n) => gauss_limit_product(k, s, n)?,
                        GammaMethod::Product(n) => {
                            let w = weierstrass_reciprocal(k, s, n)?;
                            if w.value.norm() == 0.0 {
                                return Err(Error::Pole(format!(
                                    "Gamma_{{t^{k}}}({s}) is a pole (reciprocal product is zero)"
                                )));
                            }
                            let value = 1.0 / w.value;
                            let mut inverted = ComplexEval::new(
                                value,
                                w.abs_err * value.norm() / w.value.norm(),
                                Method::Product,
                            );
                            inverted.warnings = w.warnings;
                            inverted
                        }
                        GammaMethod::Asymptotic => asymptotic_approx(k, s)?,
                    };
                    Ok(render_eval(&result))
                }
                Err(f) => {
                    if method.is_some() {
                        return Err(Error::Invalid(
                            "--method applies to --monomial only; --coeffs always integrates"
                                .into(),
                        ));
                    }
                    let dom = GammaDomain::new(f)?;
                    Ok(render_eval(&gamma_f_quadrature(&dom, s, cfg)?))
                }
            }
        }
        EvalTarget::Kgamma { k, s } => {
            let s = parse_complex(&s)?;
            Ok(render_eval(&k_gamma(k, s, cfg)?))
        }
        EvalTarget::Zeta {
            monomial,
            coeffs,
            s,
            terms,
        } => {
            let s = parse_complex(&s)?;
            match monomial_or_coeffs(monomial, coeffs)? {
                Ok(k) => {
                    if terms.is_some() {
                        return Err(Error::Invalid(
                            "--terms applies to --coeffs; the monomial zeta is a closed form"
                                .into(),
                        ));
                    }
                    Ok(render_eval(&zeta_tk(k, s)?))
                }
                Err(f) => {
                    let terms = terms.ok_or_else(|| {
                        Error::Invalid("--terms N is required with --coeffs".into())
                    })?;
                    let dom = GammaDomain::new(f)?;
                    Ok(render_eval(&zeta_f_series(&dom, s, terms, cfg)?))
                }
            }
        }
        EvalTarget::Beta {
            monomial,
            coeffs,
            p,
            q,
        } => {
            let p = parse_complex(&p)?;
            let q = parse_complex(&q)?;
            let dom = match monomial_or_coeffs(monomial, coeffs)? {
                Ok(k) => GammaDomain::monomial(k)?,
                Err(f) => GammaDomain::new(f)?,
            };
            Ok(render_eval(&beta_f(&dom, p, q, cfg)?))
        }
    }
}

fn join_coeffs(coeffs: &[f64]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn render_bsato(result: &BsatoResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "coefficients: {}\n",
        join_coeffs(result.big_b.coeffs())
    ));
    match &result.monic_b {
        Some(monic) => {
            out.push_str(&format!(
                "monic_coefficients: {}\n",
                join_coeffs(monic.coeffs())
            ));
            let roots = monic
                .factored()
                .map(|f| {
                    f.roots
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .unwrap_or_default();
            out.push_str(&format!("roots: {roots}\n"));
        }
        None => {
            out.push_str("monic_coefficients: undefined\n");
            out.push_str("roots: undefined\n");
        }
    }
    out.push_str(&format!("operator: {}\n", result.operator));
    out.push_str(&format!("degenerate: {}\n", result.degenerate));
    out
}

fn bsato(args: BsatoArgs) -> Result<String, Error> {
    let result = match (args.monomial, args.quadratic) {
        (Some(k), None) => bsato_monomial(k)?,
        (None, Some(bc)) => {
            let (b, c) = bc
                .split_once(',')
                .ok_or_else(|| Error::Invalid("--quadratic expects B,C".into()))?;
            let b = b
                .parse()
                .map_err(|_| Error::Invalid(format!("bad B value {b:?}")))?;
            let c = c
                .parse()
                .map_err(|_| Error::Invalid(format!("bad C value {c:?}")))?;
            bsato_quadratic(b, c)?
        }
        _ => {
            return Err(Error::Invalid(
                "exactly one of --monomial or --quadratic is required".into(),
            ))
        }
    };
    Ok(render_bsato(&result))
}

fn verify(args: VerifyArgs, cfg: &QuadratureConfig) -> Result<String, Error> {
    let identity: Identity = args.identity.parse()?;
    let grid: Grid = args.grid.parse()?;
    let format: ReportFormat = args.format.parse()?;
    let reports = check_identity(identity, &grid, args.tol, cfg)?;
    Ok(emit_reports(&reports, format))
}
