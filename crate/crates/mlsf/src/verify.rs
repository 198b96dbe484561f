//! Numerical execution of the identity catalog.
//!
//! [`check_identity`] evaluates both sides of one identity at one point
//! by genuinely independent computational paths (different integral
//! representations, finite differences, classical oracles) and reports
//! the residual. [`run_suite`] executes a plan of checks, possibly
//! concurrently, with order-fixed report assembly; [`default_plan`]
//! ships an in-domain grid covering all twenty identities.

use rayon::prelude::*;
use std::cell::Cell;

use crate::classical::{
    beta_fn, chaudhry_beta_p, chaudhry_gamma_p, gamma_fn, gauss_2f1, kummer_1f1, HypArgs,
};
use crate::error::{Error, Result};
use crate::gamma_beta::{
    decay_exponent, endpoint_gain, integrate_kernel_semi_log, ln_arg, ml_beta_p, ml_gamma_mellin,
    ml_gamma_p, mellin_beta_rhs, BetaArgs, BetaRepresentation,
};
use crate::hyp::{
    kummer_transform_rhs, ml_1f1, ml_1f1_auto, ml_1f1_nth_derivative, ml_2f1, ml_2f1_at_one,
    ml_2f1_auto, ml_2f1_nth_derivative, pfaff_transform_rhs, recurrence_residual,
    transform_one_minus_inv_z, transform_z_over_one_plus_z, MLHypPoint, Ml1f1Method, Ml2f1Method,
};
use crate::ml::{ml_kernel, MLParams};
use crate::quad::{integrate_unit, QuadratureConfig};
use crate::report::{CheckReport, EvalPoint, IdentityId, SuiteReport};

use std::f64::consts::FRAC_PI_2;

/// One planned check: an identity, a point, and its tolerance.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PlanEntry {
    pub identity: IdentityId,
    pub point: EvalPoint,
    pub tolerance: f64,
}

fn req(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Domain(format!("missing required point field `{name}`")))
}

fn params_of(pt: &EvalPoint) -> Result<MLParams> {
    MLParams::new(
        req(pt.alpha, "alpha")?,
        req(pt.beta, "beta")?,
        req(pt.gamma, "gamma")?,
    )
}

fn hyp_point_of(pt: &EvalPoint) -> Result<MLHypPoint> {
    MLHypPoint::new(
        HypArgs::new(req(pt.a, "a")?, req(pt.b, "b")?, req(pt.c, "c")?)?,
        req(pt.z, "z")?,
        req(pt.p, "p")?,
        params_of(pt)?,
    )
}

fn is_exponential(params: &MLParams) -> bool {
    params.alpha == 1.0 && params.beta == 1.0 && params.gamma == 1.0
}

/// `ln(e^q + p e^{-q})`, the logarithm of the reciprocal-shifted gamma
/// kernel argument, stable for large `|q|`.
fn ln_shifted_arg(q: f64, p: f64) -> f64 {
    if p == 0.0 {
        return q;
    }
    let b = p.ln() - q;
    let m = q.max(b);
    m + ((q - m).exp() + (b - m).exp()).ln()
}

/// Execute one identity check. `Err` signals an out-of-domain point;
/// the suite records it as a skip.
pub fn check_identity(id: IdentityId, point: &EvalPoint, tolerance: f64) -> Result<CheckReport> {
    let pt = *point;
    match id {
        IdentityId::Thm1Product => {
            let params = params_of(&pt)?;
            let (x, y, p) = (req(pt.x, "x")?, req(pt.y, "y")?, req(pt.p, "p")?);
            let gx = ml_gamma_p(x, p, &params)?;
            let gy = ml_gamma_p(y, p, &params)?;
            let lhs = gx.value * gy.value;
            let d = decay_exponent(&params);
            let gain = if p > 0.0 { endpoint_gain(d) } else { 0.0 };
            let power = 2.0 * (x + y) - 1.0;
            let rho = match d {
                None => 2.0,
                Some(d) => 4.0 * d - power,
            };
            if !(rho > 1.0) {
                return Err(Error::Domain(
                    "2D integral tail not integrable at this point".into(),
                ));
            }
            let inner_cfg = QuadratureConfig {
                rel_tol: 1e-7,
                abs_tol: 1e-12,
                ..Default::default()
            };
            let outer_cfg = QuadratureConfig {
                rel_tol: 1e-6,
                abs_tol: 1e-12,
                ..Default::default()
            }
            .with_exponents(
                (2.0 * y - 1.0 + 2.0 * gain).min(4.0),
                (2.0 * x - 1.0 + 2.0 * gain).min(4.0),
            );
            let cost = Cell::new(gx.evaluations + gy.evaluations);
            let outer = integrate_unit(
                |w| {
                    let (sn, cs) = (FRAC_PI_2 * w).sin_cos();
                    let (ln_s, ln_c) = (sn.ln(), cs.ln());
                    let inner = integrate_kernel_semi_log(
                        |ln_r, jac| {
                            let q1 = 2.0 * (ln_r + ln_c);
                            let q2 = 2.0 * (ln_r + ln_s);
                            let lp = power * ln_r
                                + (2.0 * x - 1.0) * ln_c
                                + (2.0 * y - 1.0) * ln_s
                                + jac;
                            ml_kernel(&params, lp, ln_shifted_arg(q1, p))
                                * ml_kernel(&params, 0.0, ln_shifted_arg(q2, p))
                        },
                        power + 4.0 * gain,
                        rho,
                        &inner_cfg,
                    );
                    match inner {
                        Ok(e) => {
                            cost.set(cost.get() + e.evaluations);
                            e.value
                        }
                        Err(_) => f64::NAN,
                    }
                },
                &outer_cfg,
            )?;
            let rhs = 4.0 * FRAC_PI_2 * outer.value;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs,
                rhs,
                tolerance,
                cost.get() + outer.evaluations,
            ))
        }
        IdentityId::Thm2Summation => {
            let params = params_of(&pt)?;
            let (x, y, p) = (req(pt.x, "x")?, req(pt.y, "y")?, req(pt.p, "p")?);
            if !(y < 1.0) {
                return Err(Error::Domain(format!(
                    "binomial-weight series requires y < 1, got y = {y}"
                )));
            }
            let target = ml_beta_p(&BetaArgs::new(x, 1.0 - y, p)?, &params, Default::default())?;
            let mut cost = target.evaluations;
            let mut sum = 0.0f64;
            let mut coef = 1.0f64; // (y)_n / n!
            let mut terms = Vec::with_capacity(SUMMATION_N);
            for n in 0..SUMMATION_N {
                let b = ml_beta_p(
                    &BetaArgs::new(x + n as f64, 1.0, p)?,
                    &params,
                    Default::default(),
                )?;
                cost += b.evaluations;
                let t = coef * b.value;
                terms.push(t);
                sum += t;
                coef *= (y + n as f64) / (n as f64 + 1.0);
            }
            // tail by integral comparison of the observed power-law
            // decay: |t_n| ~ C n^-q  =>  tail ~ |t_N| N / (q - 1)
            let tn = terms[SUMMATION_N - 1].abs();
            let tm = terms[SUMMATION_N - 2].abs();
            let nf = (SUMMATION_N - 1) as f64;
            let q = if tn > 0.0 && tm > 0.0 {
                -(tn / tm).ln() / (nf / (nf - 1.0)).ln()
            } else {
                f64::INFINITY
            };
            let tail = if q > 1.0 { tn * nf / (q - 1.0) } else { tn * nf };
            let eff_tol = tolerance.max(3.0 * tail / target.value.abs().max(1e-30));
            let mut report = CheckReport::from_sides(id, pt, target.value, sum, eff_tol, cost);
            report.detail = Some(format!("term decay n^-{q:.2}, tail estimate {tail:.3e}"));
            Ok(report)
        }
        IdentityId::Thm3Functional => {
            let params = params_of(&pt)?;
            let (x, y, p) = (req(pt.x, "x")?, req(pt.y, "y")?, req(pt.p, "p")?);
            let b = |x: f64, y: f64| ml_beta_p(&BetaArgs::new(x, y, p)?, &params, Default::default());
            let b0 = b(x, y)?;
            let b1 = b(x, y + 1.0)?;
            let b2 = b(x + 1.0, y)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                b0.value,
                b1.value + b2.value,
                tolerance,
                b0.evaluations + b1.evaluations + b2.evaluations,
            ))
        }
        IdentityId::Thm4Summation => {
            let params = params_of(&pt)?;
            let (x, y, p) = (req(pt.x, "x")?, req(pt.y, "y")?, req(pt.p, "p")?);
            let target = ml_beta_p(&BetaArgs::new(x, y, p)?, &params, Default::default())?;
            let mut cost = target.evaluations;
            let mut sum = 0.0f64;
            let mut monotone_ok = true;
            let mut prev = 0.0f64;
            let positive_kernel = is_exponential(&params);
            for n in 0..SUMMATION_N {
                let b = ml_beta_p(
                    &BetaArgs::new(x + n as f64, y + 1.0, p)?,
                    &params,
                    Default::default(),
                )?;
                cost += b.evaluations;
                sum += b.value;
                // increasing up to float resolution (late terms round to
                // no-ops once the sum has converged) and never overshooting
                if positive_kernel
                    && !(sum >= prev - 1e-12 * target.value.abs()
                        && sum <= target.value * (1.0 + 1e-9))
                {
                    monotone_ok = false;
                }
                prev = sum;
            }
            // the truncation error telescopes exactly: the omitted tail
            // equals the generalized beta value at the shifted argument
            let tail_est = ml_beta_p(
                &BetaArgs::new(x + SUMMATION_N as f64, y, p)?,
                &params,
                Default::default(),
            )?;
            cost += tail_est.evaluations;
            let tail = tail_est.value.abs();
            let eff_tol = tolerance.max(3.0 * tail / target.value.abs().max(1e-30));
            let mut report = CheckReport::from_sides(id, pt, target.value, sum, eff_tol, cost);
            report.detail = Some(format!("telescoped tail {tail:.3e}"));
            if positive_kernel && !monotone_ok {
                report = report.fail_with("partial sums not monotone increasing".into());
            }
            Ok(report)
        }
        IdentityId::Thm5Representations => {
            let params = params_of(&pt)?;
            let args = BetaArgs::new(req(pt.x, "x")?, req(pt.y, "y")?, req(pt.p, "p")?)?;
            let reps = [
                BetaRepresentation::UnitInterval,
                BetaRepresentation::Trigonometric,
                BetaRepresentation::SemiInfinite,
                BetaRepresentation::Symmetric,
                BetaRepresentation::Affine { lo: -1.0, hi: 2.0 },
            ];
            let mut cost = 0;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for rep in reps {
                let e = ml_beta_p(&args, &params, rep)?;
                cost += e.evaluations;
                lo = lo.min(e.value);
                hi = hi.max(e.value);
            }
            // the min/max spread bounds every pairwise difference
            Ok(CheckReport::from_sides(id, pt, lo, hi, tolerance, cost))
        }
        IdentityId::Thm6MellinBeta => {
            let params = params_of(&pt)?;
            let (x, y, s) = (req(pt.x, "x")?, req(pt.y, "y")?, req(pt.s, "s")?);
            if !(x > 0.0 && y > 0.0) {
                return Err(Error::Domain(
                    "Mellin-in-p check requires x > 0 and y > 0".into(),
                ));
            }
            let rhs = mellin_beta_rhs(x, y, s, &params)?;
            let d = decay_exponent(&params);
            let rho = match d {
                None => 2.0,
                Some(d) => {
                    if s >= d {
                        return Err(Error::Domain(format!(
                            "outer Mellin integral diverges: decay exponent {d} <= s"
                        )));
                    }
                    1.0 + d - s
                }
            };
            let cfg = QuadratureConfig {
                rel_tol: 1e-6,
                abs_tol: 1e-12,
                ..Default::default()
            };
            let cost = Cell::new(0u64);
            let lhs = integrate_kernel_semi_log(
                |ln_p, jac| {
                    let p = ln_p.exp();
                    match BetaArgs::new(x, y, p)
                        .and_then(|a| ml_beta_p(&a, &params, Default::default()))
                    {
                        Ok(e) => {
                            cost.set(cost.get() + e.evaluations);
                            e.value * ((s - 1.0) * ln_p + jac).exp()
                        }
                        Err(_) => f64::NAN,
                    }
                },
                s - 1.0,
                rho,
                &cfg,
            )?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.value,
                rhs,
                tolerance,
                cost.get() + lhs.evaluations,
            ))
        }
        IdentityId::GhfSeriesVsIntegral => {
            let point = hyp_point_of(&pt)?;
            let a = ml_2f1(&point, Ml2f1Method::Series)?;
            let b = ml_2f1(&point, Ml2f1Method::IntegralUnit)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                a.value,
                b.value,
                tolerance,
                a.evaluations + b.evaluations,
            ))
        }
        IdentityId::ChfSeriesVsIntegral => {
            let params = params_of(&pt)?;
            let (b, c, z, p) = (
                req(pt.b, "b")?,
                req(pt.c, "c")?,
                req(pt.z, "z")?,
                req(pt.p, "p")?,
            );
            let s = ml_1f1(b, c, z, p, &params, Ml1f1Method::Series)?;
            let i = ml_1f1(b, c, z, p, &params, Ml1f1Method::IntegralDirect)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                s.value,
                i.value,
                tolerance,
                s.evaluations + i.evaluations,
            ))
        }
        IdentityId::DiffGhf => {
            let point = hyp_point_of(&pt)?;
            let n = pt.n.unwrap_or(1);
            if !(1..=2).contains(&n) {
                return Err(Error::Domain(format!(
                    "finite-difference check supports n in {{1, 2}}, got {n}"
                )));
            }
            let d = ml_2f1_nth_derivative(n, &point)?;
            let cost = Cell::new(d.evaluations);
            let f = |z: f64| -> Result<f64> {
                let shifted = MLHypPoint::new(point.hyp, z, point.p, point.params)?;
                let e = ml_2f1_auto(&shifted)?;
                cost.set(cost.get() + e.evaluations);
                Ok(e.value)
            };
            let h = 1e-4;
            let z = point.z;
            let fd = if n == 1 {
                (f(z + h)? - f(z - h)?) / (2.0 * h)
            } else {
                (f(z + h)? - 2.0 * f(z)? + f(z - h)?) / (h * h)
            };
            Ok(CheckReport::from_sides(id, pt, d.value, fd, tolerance, cost.get()))
        }
        IdentityId::DiffChf => {
            let params = params_of(&pt)?;
            let (b, c, z, p) = (
                req(pt.b, "b")?,
                req(pt.c, "c")?,
                req(pt.z, "z")?,
                req(pt.p, "p")?,
            );
            let n = pt.n.unwrap_or(1);
            if !(1..=2).contains(&n) {
                return Err(Error::Domain(format!(
                    "finite-difference check supports n in {{1, 2}}, got {n}"
                )));
            }
            let d = ml_1f1_nth_derivative(n, b, c, z, p, &params)?;
            let cost = Cell::new(d.evaluations);
            let f = |z: f64| -> Result<f64> {
                let e = ml_1f1_auto(b, c, z, p, &params)?;
                cost.set(cost.get() + e.evaluations);
                Ok(e.value)
            };
            let h = 1e-4;
            let fd = if n == 1 {
                (f(z + h)? - f(z - h)?) / (2.0 * h)
            } else {
                (f(z + h)? - 2.0 * f(z)? + f(z - h)?) / (h * h)
            };
            Ok(CheckReport::from_sides(id, pt, d.value, fd, tolerance, cost.get()))
        }
        IdentityId::MellinGhf => {
            let params = params_of(&pt)?;
            let (a, b, c, z, s) = (
                req(pt.a, "a")?,
                req(pt.b, "b")?,
                req(pt.c, "c")?,
                req(pt.z, "z")?,
                req(pt.s, "s")?,
            );
            let classical = gauss_2f1(&HypArgs::new(a, b + s, c + 2.0 * s)?, z)?;
            let rhs = ml_gamma_mellin(s, &params)? * beta_fn(b + s, c + s - b)?
                / beta_fn(b, c - b)?
                * classical.value;
            let lhs = mellin_of_hyp(&params, s, |p| {
                let point = MLHypPoint::new(HypArgs::new(a, b, c)?, z, p, params)?;
                ml_2f1(&point, Ml2f1Method::Series)
            })?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.0,
                rhs,
                tolerance,
                lhs.1 + classical.evaluations,
            ))
        }
        IdentityId::MellinChf => {
            let params = params_of(&pt)?;
            let (b, c, z, s) = (
                req(pt.b, "b")?,
                req(pt.c, "c")?,
                req(pt.z, "z")?,
                req(pt.s, "s")?,
            );
            let classical = kummer_1f1(b + s, c + 2.0 * s, z)?;
            let rhs = ml_gamma_mellin(s, &params)? * beta_fn(b + s, c + s - b)?
                / beta_fn(b, c - b)?
                * classical.value;
            let lhs = mellin_of_hyp(&params, s, |p| {
                ml_1f1(b, c, z, p, &params, Ml1f1Method::Series)
            })?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.0,
                rhs,
                tolerance,
                lhs.1 + classical.evaluations,
            ))
        }
        IdentityId::Pfaff => {
            let point = hyp_point_of(&pt)?;
            let lhs = ml_2f1_auto(&point)?;
            let rhs = pfaff_transform_rhs(&point)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.value,
                rhs.value,
                tolerance,
                lhs.evaluations + rhs.evaluations,
            ))
        }
        IdentityId::RemarkTransform1 => {
            let point = hyp_point_of(&pt)?;
            let mapped = MLHypPoint::new(point.hyp, 1.0 - 1.0 / point.z, point.p, point.params)?;
            let lhs = ml_2f1_auto(&mapped)?;
            let rhs = transform_one_minus_inv_z(&point)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.value,
                rhs.value,
                tolerance,
                lhs.evaluations + rhs.evaluations,
            ))
        }
        IdentityId::RemarkTransform2 => {
            let point = hyp_point_of(&pt)?;
            let mapped =
                MLHypPoint::new(point.hyp, point.z / (1.0 + point.z), point.p, point.params)?;
            let lhs = ml_2f1_auto(&mapped)?;
            let rhs = transform_z_over_one_plus_z(&point)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.value,
                rhs.value,
                tolerance,
                lhs.evaluations + rhs.evaluations,
            ))
        }
        IdentityId::Kummer => {
            let params = params_of(&pt)?;
            let (b, c, z, p) = (
                req(pt.b, "b")?,
                req(pt.c, "c")?,
                req(pt.z, "z")?,
                req(pt.p, "p")?,
            );
            let lhs = ml_1f1_auto(b, c, z, p, &params)?;
            let rhs = kummer_transform_rhs(b, c, z, p, &params)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.value,
                rhs.value,
                tolerance,
                lhs.evaluations + rhs.evaluations,
            ))
        }
        IdentityId::RecurrenceDeltaA => {
            let point = hyp_point_of(&pt)?;
            let r = recurrence_residual(&point)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                r.lhs,
                r.rhs,
                tolerance,
                r.evaluations,
            ))
        }
        IdentityId::ValueAtOne => {
            let params = params_of(&pt)?;
            let (a, b, c, p) = (
                req(pt.a, "a")?,
                req(pt.b, "b")?,
                req(pt.c, "c")?,
                req(pt.p, "p")?,
            );
            let lhs = ml_2f1_at_one(a, b, c, p, &params)?;
            // independent side: direct quadrature of the z = 1 limit of
            // the Euler integrand t^{b-1} (1-t)^{c-b-1} (1-t)^{-a}
            let gain = if p > 0.0 {
                endpoint_gain(decay_exponent(&params))
            } else {
                0.0
            };
            let (ex, ey) = (b - 1.0 + gain, c - a - b - 1.0 + gain);
            if !(ex > -1.0 && ey > -1.0) {
                return Err(Error::Domain(format!(
                    "z = 1 integral diverges (effective exponents {ex}, {ey})"
                )));
            }
            let cfg = QuadratureConfig::default().with_exponents(ex.min(4.0), ey.min(4.0));
            let direct = integrate_unit(
                |t| {
                    let (ln_t, ln_omt) = (t.ln(), (1.0 - t).ln());
                    ml_kernel(
                        &params,
                        (b - 1.0) * ln_t + (c - b - 1.0 - a) * ln_omt,
                        ln_arg(p, ln_t, ln_omt),
                    )
                },
                &cfg,
            )?;
            let rhs = direct.value / beta_fn(b, c - b)?;
            Ok(CheckReport::from_sides(
                id,
                pt,
                lhs.value,
                rhs,
                tolerance,
                lhs.evaluations + direct.evaluations,
            ))
        }
        IdentityId::ReductionChaudhry => {
            let params = params_of(&pt)?;
            if !is_exponential(&params) {
                return Err(Error::Domain(
                    "exp-kernel reduction requires parameters (1, 1, 1)".into(),
                ));
            }
            let (x, p) = (req(pt.x, "x")?, req(pt.p, "p")?);
            if let Some(y) = pt.y {
                let ours = ml_beta_p(&BetaArgs::new(x, y, p)?, &params, Default::default())?;
                let truth = chaudhry_beta_p(x, y, p)?;
                Ok(CheckReport::from_sides(
                    id,
                    pt,
                    ours.value,
                    truth.value,
                    tolerance,
                    ours.evaluations + truth.evaluations,
                ))
            } else {
                let ours = ml_gamma_p(x, p, &params)?;
                let truth = chaudhry_gamma_p(x, p)?;
                Ok(CheckReport::from_sides(
                    id,
                    pt,
                    ours.value,
                    truth.value,
                    tolerance,
                    ours.evaluations + truth.evaluations,
                ))
            }
        }
        IdentityId::ReductionClassical => {
            let params = params_of(&pt)?;
            let (x, p) = (req(pt.x, "x")?, req(pt.p, "p")?);
            if !is_exponential(&params) || p != 0.0 {
                return Err(Error::Domain(
                    "classical reduction requires parameters (1, 1, 1) and p = 0".into(),
                ));
            }
            if let Some(y) = pt.y {
                let ours = ml_beta_p(&BetaArgs::new(x, y, p)?, &params, Default::default())?;
                Ok(CheckReport::from_sides(
                    id,
                    pt,
                    ours.value,
                    beta_fn(x, y)?,
                    tolerance,
                    ours.evaluations,
                ))
            } else {
                let ours = ml_gamma_p(x, p, &params)?;
                Ok(CheckReport::from_sides(
                    id,
                    pt,
                    ours.value,
                    gamma_fn(x)?,
                    tolerance,
                    ours.evaluations,
                ))
            }
        }
    }
}

/// Partial-sum length for the summation theorems.
const SUMMATION_N: usize = 500;

/// Outer Mellin quadrature `int_0^inf p^{s-1} f(p) dp` of a
/// hypergeometric evaluation; returns `(value, cost)`.
fn mellin_of_hyp(
    params: &MLParams,
    s: f64,
    f: impl Fn(f64) -> Result<crate::quad::Estimate>,
) -> Result<(f64, u64)> {
    if !(s > 0.0 && s < params.gamma) {
        return Err(Error::Domain(format!(
            "Mellin variable must satisfy 0 < s < gamma = {}, got s = {s}",
            params.gamma
        )));
    }
    let rho = match decay_exponent(params) {
        None => 2.0,
        Some(d) => {
            if s >= d {
                return Err(Error::Domain(format!(
                    "outer Mellin integral diverges: decay exponent {d} <= s"
                )));
            }
            1.0 + d - s
        }
    };
    let cfg = QuadratureConfig {
        rel_tol: 1e-6,
        abs_tol: 1e-12,
        ..Default::default()
    };
    let cost = Cell::new(0u64);
    let est = integrate_kernel_semi_log(
        |ln_p, jac| match f(ln_p.exp()) {
            Ok(e) => {
                cost.set(cost.get() + e.evaluations);
                e.value * ((s - 1.0) * ln_p + jac).exp()
            }
            Err(_) => f64::NAN,
        },
        s - 1.0,
        rho,
        &cfg,
    )?;
    Ok((est.value, cost.get() + est.evaluations))
}

/// Execute every entry of `plan`, concurrently across entries, with
/// deterministic order-preserving assembly. Out-of-domain points become
/// skips, never silent passes.
pub fn run_suite(plan: &[PlanEntry]) -> SuiteReport {
    let checks: Vec<CheckReport> = plan
        .par_iter()
        .map(|entry| {
            check_identity(entry.identity, &entry.point, entry.tolerance).unwrap_or_else(|e| {
                CheckReport::skipped(entry.identity, entry.point, entry.tolerance, e.to_string())
            })
        })
        .collect();
    SuiteReport::from_checks(checks)
}

fn ep() -> EvalPoint {
    EvalPoint::default()
}

fn with_params(mut pt: EvalPoint, params: (f64, f64, f64)) -> EvalPoint {
    pt.alpha = Some(params.0);
    pt.beta = Some(params.1);
    pt.gamma = Some(params.2);
    pt
}

const P111: (f64, f64, f64) = (1.0, 1.0, 1.0);
const PFRAC: (f64, f64, f64) = (0.7, 1.3, 2.0);

/// The shipped default plan: every identity in the catalog at four or
/// more in-domain points.
pub fn default_plan() -> Vec<PlanEntry> {
    let mut plan = Vec::new();
    let mut push = |identity: IdentityId, point: EvalPoint, tolerance: f64| {
        plan.push(PlanEntry {
            identity,
            point,
            tolerance,
        })
    };
    let beta_pt = |x: f64, y: f64, p: f64, params| {
        let mut e = with_params(ep(), params);
        e.x = Some(x);
        e.y = Some(y);
        e.p = Some(p);
        e
    };
    let gamma_pt = |x: f64, p: f64, params| {
        let mut e = with_params(ep(), params);
        e.x = Some(x);
        e.p = Some(p);
        e
    };
    let ghf_pt = |a: f64, b: f64, c: f64, z: f64, p: f64, params| {
        let mut e = with_params(ep(), params);
        e.a = Some(a);
        e.b = Some(b);
        e.c = Some(c);
        e.z = Some(z);
        e.p = Some(p);
        e
    };
    let chf_pt = |b: f64, c: f64, z: f64, p: f64, params| {
        let mut e = with_params(ep(), params);
        e.b = Some(b);
        e.c = Some(c);
        e.z = Some(z);
        e.p = Some(p);
        e
    };

    // 2D polar product of two generalized gamma values
    for (x, y, p, params) in [
        (1.0, 1.0, 0.0, P111),
        (1.2, 0.8, 0.5, P111),
        (1.0, 1.5, 1.0, P111),
        (1.0, 1.0, 0.5, PFRAC),
    ] {
        push(IdentityId::Thm1Product, beta_pt(x, y, p, params), 1e-4);
    }

    // binomial-weight summation (requires y < 1)
    for (x, y, p, params) in [
        (1.2, 0.4, 0.5, PFRAC),
        (1.5, 0.3, 0.5, P111),
        (1.2, 0.5, 1.0, P111),
        (0.8, 0.2, 0.3, PFRAC),
    ] {
        push(IdentityId::Thm2Summation, beta_pt(x, y, p, params), 1e-3);
    }

    // three-term functional relation
    for params in [P111, PFRAC, (1.5, 1.0, 1.0)] {
        for p in [0.2, 1.0] {
            for (x, y) in [(1.3, 2.1), (0.5, 0.5)] {
                push(IdentityId::Thm3Functional, beta_pt(x, y, p, params), 1e-8);
            }
        }
    }

    // argument-shift summation
    for (x, y, p, params) in [
        (1.2, 0.8, 0.5, P111),
        (1.5, 1.2, 1.0, P111),
        (1.2, 0.8, 0.5, PFRAC),
        (0.8, 1.4, 0.2, P111),
    ] {
        push(IdentityId::Thm4Summation, beta_pt(x, y, p, params), 1e-3);
    }

    // five-representation agreement (includes p = 0 and gamma = 2)
    for (x, y, p, params) in [
        (1.5, 2.5, 1.0, P111),
        (0.8, 1.2, 0.5, PFRAC),
        (1.3, 2.1, 0.0, P111),
        (2.0, 3.0, 2.0, PFRAC),
        (0.9, 0.9, 0.5, (0.5, 1.0, 1.0)),
        (1.1, 1.7, 1.0, (1.0, 1.0, 2.0)),
    ] {
        push(IdentityId::Thm5Representations, beta_pt(x, y, p, params), 1e-7);
    }

    // Mellin transform of the generalized beta (s <= gamma - 0.25)
    for (x, y, s, params) in [
        (1.0, 1.0, 0.5, P111),
        (1.5, 2.0, 0.6, P111),
        (1.0, 1.2, 1.5, PFRAC),
        (0.8, 0.8, 0.75, PFRAC),
    ] {
        let mut e = beta_pt(x, y, 0.0, params);
        e.p = None;
        e.s = Some(s);
        push(IdentityId::Thm6MellinBeta, e, 1e-3);
    }

    // series vs integral, Gauss family
    for params in [P111, PFRAC] {
        for p in [0.0, 0.5] {
            for z in [-0.5, 0.3, 0.7] {
                push(
                    IdentityId::GhfSeriesVsIntegral,
                    ghf_pt(0.8, 1.2, 2.9, z, p, params),
                    1e-6,
                );
            }
        }
    }

    // series vs integral, confluent family
    for params in [P111, PFRAC] {
        for p in [0.0, 0.5] {
            for z in [-2.0, 0.5, 2.0] {
                push(
                    IdentityId::ChfSeriesVsIntegral,
                    chf_pt(1.2, 3.4, z, p, params),
                    1e-6,
                );
            }
        }
    }

    // derivative formulas vs finite differences
    for (n, a, b, c, z, p, params) in [
        (1, 1.0, 1.0, 2.0, 0.3, 0.0, P111),
        (2, 1.0, 1.0, 2.0, 0.25, 0.5, PFRAC),
        (1, 0.8, 1.2, 2.9, -0.3, 0.5, P111),
        (2, 0.5, 1.0, 2.5, 0.2, 0.3, P111),
    ] {
        let mut e = ghf_pt(a, b, c, z, p, params);
        e.n = Some(n);
        push(IdentityId::DiffGhf, e, 1e-4);
    }
    for (n, b, c, z, p, params) in [
        (1, 1.0, 2.0, 0.5, 0.0, P111),
        (2, 1.2, 3.4, 0.4, 0.5, PFRAC),
        (1, 1.5, 2.5, -0.6, 0.3, P111),
        (2, 1.0, 2.0, 0.3, 0.2, P111),
    ] {
        let mut e = chf_pt(b, c, z, p, params);
        e.n = Some(n);
        push(IdentityId::DiffChf, e, 1e-4);
    }

    // Mellin transforms of the hypergeometric families in p
    for (a, b, c, z, s, params) in [
        (0.8, 1.2, 2.9, 0.3, 0.5, P111),
        (0.5, 1.0, 2.5, -0.4, 0.6, P111),
        (0.8, 1.2, 2.9, 0.3, 1.5, PFRAC),
        (1.0, 1.5, 4.0, 0.2, 0.5, P111),
    ] {
        let mut e = ghf_pt(a, b, c, z, 0.0, params);
        e.p = None;
        e.s = Some(s);
        push(IdentityId::MellinGhf, e, 1e-3);
    }
    for (b, c, z, s, params) in [
        (1.2, 3.4, 0.5, 0.5, P111),
        (1.0, 2.0, -0.4, 0.6, P111),
        (1.2, 3.4, 0.5, 1.5, PFRAC),
        (1.5, 2.5, 0.3, 0.5, P111),
    ] {
        let mut e = chf_pt(b, c, z, 0.0, params);
        e.p = None;
        e.s = Some(s);
        push(IdentityId::MellinChf, e, 1e-3);
    }

    // Pfaff-type transformation
    for (z, p, params) in [
        (-1.0, 0.0, P111),
        (-0.6, 0.5, PFRAC),
        (0.4, 0.5, P111),
        (-0.3, 1.0, PFRAC),
    ] {
        push(IdentityId::Pfaff, ghf_pt(0.5, 1.0, 2.5, z, p, params), 1e-7);
    }

    // remark transformation variants
    for (z, p, params) in [
        (0.4, 0.0, P111),
        (0.5, 0.3, P111),
        (1.3, 0.5, PFRAC),
        (2.0, 0.5, P111),
    ] {
        push(
            IdentityId::RemarkTransform1,
            ghf_pt(0.5, 1.0, 2.5, z, p, params),
            1e-7,
        );
    }
    for (z, p, params) in [
        (0.4, 0.0, P111),
        (0.5, 0.3, P111),
        (-0.4, 0.5, PFRAC),
        (1.5, 0.2, P111),
    ] {
        push(
            IdentityId::RemarkTransform2,
            ghf_pt(0.5, 1.0, 2.5, z, p, params),
            1e-7,
        );
    }

    // Kummer-type transformation
    for (b, c, z, p, params) in [
        (1.0, 3.0, 0.7, 0.0, P111),
        (1.2, 3.1, -0.9, 1.0, PFRAC),
        (1.5, 2.5, 0.4, 0.5, P111),
        (0.8, 2.0, -0.5, 0.2, PFRAC),
    ] {
        push(IdentityId::Kummer, chf_pt(b, c, z, p, params), 1e-7);
    }

    // contiguous recurrence
    for (a, b, c, z, p, params) in [
        (0.5, 1.0, 2.5, 0.3, 0.0, P111),
        (1.0, 1.5, 4.0, -0.4, 0.5, P111),
        (0.8, 1.2, 2.9, 0.25, 0.5, PFRAC),
        (0.5, 1.0, 2.5, 0.2, 0.2, P111),
    ] {
        push(
            IdentityId::RecurrenceDeltaA,
            ghf_pt(a, b, c, z, p, params),
            1e-7,
        );
    }

    // evaluation at z = 1
    for (a, b, c, p, params) in [
        (0.5, 1.0, 3.0, 0.0, P111),
        (0.5, 1.0, 3.0, 0.5, PFRAC),
        (0.0, 1.0, 3.0, 0.5, PFRAC),
        (0.3, 1.2, 3.1, 0.5, P111),
    ] {
        let mut e = ghf_pt(a, b, c, 1.0, p, params);
        e.z = None;
        push(IdentityId::ValueAtOne, e, 1e-6);
    }

    // reduction to the exp-kernel extended functions
    for (x, y, p) in [(2.0, 3.0, 0.1), (1.3, 2.1, 1.0), (0.5, 0.5, 5.0)] {
        push(IdentityId::ReductionChaudhry, beta_pt(x, y, p, P111), 1e-8);
    }
    for (x, p) in [(2.0, 0.1), (1.5, 1.0), (2.5, 5.0)] {
        push(IdentityId::ReductionChaudhry, gamma_pt(x, p, P111), 1e-8);
    }

    // reduction to the classical functions
    for (x, y) in [(2.0, 3.0), (0.5, 4.0), (2.5, 2.5)] {
        push(IdentityId::ReductionClassical, beta_pt(x, y, 0.0, P111), 1e-8);
    }
    for x in [2.0, 0.5, 5.0] {
        push(IdentityId::ReductionClassical, gamma_pt(x, 0.0, P111), 1e-8);
    }

    plan
}
