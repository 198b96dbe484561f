//! Classical special functions: gamma, beta, Pochhammer, Gauss and Kummer
//! hypergeometric functions, and the Chaudhry exp-kernel extended gamma and
//! beta functions.
//!
//! These are the reference oracles for every reduction test of the
//! Mittag-Leffler-generalized family: the `alpha = beta = gamma = 1` case
//! must reproduce the Chaudhry functions, and additionally `p = 0` must
//! reproduce the classical ones.

use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, integrate_unit, Estimate, QuadratureConfig};

/// Oracles run tighter than the ML family so their error is negligible in
/// comparisons.
pub const ORACLE_REL_TOL: f64 = 1e-12;

// Lanczos approximation, g = 7, 9 coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const LN_SQRT_2PI: f64 = 0.91893853320467274178032973640562;

fn lanczos_ln_gamma(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// sin(pi x) with argument reduction; exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - x.floor();
    if r == 0.0 {
        return 0.0;
    }
    let s = if r > 0.5 {
        (std::f64::consts::PI * (1.0 - r)).sin()
    } else {
        (std::f64::consts::PI * r).sin()
    };
    // floor parity flips the sign
    if (x.floor() as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

pub fn is_nonpositive_integer(x: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() < 1e-9
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        std::f64::consts::PI.ln() - sin_pi(x).abs().ln() - lanczos_ln_gamma(1.0 - x)
    } else {
        lanczos_ln_gamma(x)
    }
}

/// (ln |Gamma(x)|, sign of Gamma(x)) for non-pole x of either sign.
pub fn ln_gamma_sign(x: f64) -> (f64, f64) {
    if x > 0.0 {
        (ln_gamma(x), 1.0)
    } else {
        let s = sin_pi(x);
        let lg = std::f64::consts::PI.ln() - s.abs().ln() - lanczos_ln_gamma(1.0 - x);
        (lg, s.signum())
    }
}

/// Gamma function on the real line (reflection used for negative
/// non-integer arguments).
pub fn gamma_fn(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    let (lg, sign) = ln_gamma_sign(x);
    Ok(sign * lg.exp())
}

/// 1/Gamma(x): entire, exactly zero at non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    let (lg, sign) = ln_gamma_sign(x);
    sign * (-lg).exp()
}

/// Euler beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x+y).
pub fn beta_fn(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "beta_fn requires x > 0 and y > 0, got ({x}, {y})"
        )));
    }
    Ok((ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp())
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut prod = 1.0f64;
    for k in 0..n {
        prod *= a + k as f64;
    }
    prod
}

/// The (a, b, c) parameter triple of a hypergeometric function under the
/// standing condition c > b > 0.
#[derive(Debug, Clone, Copy)]
pub struct HypArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypArgs {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(c > b && b > 0.0) {
            return Err(Error::Domain(format!(
                "hypergeometric parameters require c > b > 0, got b = {b}, c = {c}"
            )));
        }
        Ok(HypArgs { a, b, c })
    }
}

fn oracle_cfg() -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: ORACLE_REL_TOL,
        abs_tol: 0.0,
        ..Default::default()
    }
}

/// 2F1 via its Taylor series; requires |z| < 1.
pub fn gauss_2f1_series(h: &HypArgs, z: f64) -> Result<Estimate> {
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "2F1 series requires |z| < 1, got z = {z}"
        )));
    }
    let mut t = 1.0f64;
    let est = crate::quad::sum_series(
        |n| {
            if n == 0 {
                return 1.0;
            }
            let k = (n - 1) as f64;
            t *= (h.a + k) * (h.b + k) / ((h.c + k) * (n as f64)) * z;
            t
        },
        ORACLE_REL_TOL,
        4000,
    );
    Ok(est)
}

/// 2F1 via the Euler integral representation; requires z < 1.
pub fn gauss_2f1_integral(h: &HypArgs, z: f64) -> Result<Estimate> {
    if !(z < 1.0) {
        return Err(Error::Domain(format!(
            "2F1 integral representation requires z < 1, got z = {z}"
        )));
    }
    let bnorm = beta_fn(h.b, h.c - h.b)?;
    let (a, b, c) = (h.a, h.b, h.c);
    let cfg = oracle_cfg().with_exponents(b - 1.0, c - b - 1.0);
    let mut est = integrate_unit(
        |t| ((b - 1.0) * t.ln() + (c - b - 1.0) * (1.0 - t).ln() - a * (1.0 - z * t).ln()).exp(),
        &cfg,
    )?;
    est.value /= bnorm;
    est.err_estimate /= bnorm.abs();
    Ok(est)
}

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
///
/// Series for |z| <= 0.8, Euler integral otherwise.
pub fn gauss_2f1(h: &HypArgs, z: f64) -> Result<Estimate> {
    if z.abs() <= 0.8 {
        gauss_2f1_series(h, z)
    } else {
        gauss_2f1_integral(h, z)
    }
}

/// 1F1 via its Taylor series (entire in z).
pub fn kummer_1f1_series(b: f64, c: f64, z: f64) -> Result<Estimate> {
    if !(c > b && b > 0.0) {
        return Err(Error::Domain(format!(
            "1F1 requires c > b > 0, got b = {b}, c = {c}"
        )));
    }
    let mut t = 1.0f64;
    let est = crate::quad::sum_series(
        |n| {
            if n == 0 {
                return 1.0;
            }
            let k = (n - 1) as f64;
            t *= (b + k) / ((c + k) * (n as f64)) * z;
            t
        },
        ORACLE_REL_TOL,
        4000,
    );
    Ok(est)
}

/// 1F1 via the Euler integral representation.
pub fn kummer_1f1_integral(b: f64, c: f64, z: f64) -> Result<Estimate> {
    if !(c > b && b > 0.0) {
        return Err(Error::Domain(format!(
            "1F1 requires c > b > 0, got b = {b}, c = {c}"
        )));
    }
    let bnorm = beta_fn(b, c - b)?;
    let cfg = oracle_cfg().with_exponents(b - 1.0, c - b - 1.0);
    let mut est = integrate_unit(
        |t| ((b - 1.0) * t.ln() + (c - b - 1.0) * (1.0 - t).ln() + z * t).exp(),
        &cfg,
    )?;
    est.value /= bnorm;
    est.err_estimate /= bnorm.abs();
    Ok(est)
}

/// Confluent hypergeometric function 1F1(b; c; z) = Phi(b; c; z).
pub fn kummer_1f1(b: f64, c: f64, z: f64) -> Result<Estimate> {
    kummer_1f1_series(b, c, z)
}

/// Chaudhry extended gamma: Gamma_p(x) = int_0^inf t^{x-1} exp(-t - p/t) dt.
pub fn chaudhry_gamma_p(x: f64, p: f64) -> Result<Estimate> {
    if p < 0.0 {
        return Err(Error::Domain(format!("p must be >= 0, got {p}")));
    }
    if p == 0.0 && x <= 0.0 {
        return Err(Error::Domain(format!(
            "chaudhry_gamma_p with p = 0 requires x > 0, got x = {x}"
        )));
    }
    let mu = if p > 0.0 { 0.0 } else { x - 1.0 };
    let cfg = oracle_cfg().with_exponents(mu, 2.0);
    integrate_semi_infinite(|t| ((x - 1.0) * t.ln() - t - p / t).exp(), &cfg)
}

/// Chaudhry extended beta:
/// B_p(x, y) = int_0^1 t^{x-1} (1-t)^{y-1} exp(-p/(t(1-t))) dt.
pub fn chaudhry_beta_p(x: f64, y: f64, p: f64) -> Result<Estimate> {
    if p < 0.0 {
        return Err(Error::Domain(format!("p must be >= 0, got {p}")));
    }
    if p == 0.0 && !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "chaudhry_beta_p with p = 0 requires x > 0 and y > 0, got ({x}, {y})"
        )));
    }
    let (mu, nu) = if p > 0.0 {
        (0.0, 0.0)
    } else {
        (x - 1.0, y - 1.0)
    };
    let cfg = oracle_cfg().with_exponents(mu, nu);
    integrate_unit(
        |t| ((x - 1.0) * t.ln() + (y - 1.0) * (1.0 - t).ln() - p / (t * (1.0 - t))).exp(),
        &cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_table() {
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() <= 24.0 * 1e-13);
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() <= 1e-13);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() <= PI.sqrt() * 1e-13);
        for n in 1..=10 {
            let mut fact = 1.0;
            for k in 1..n {
                fact *= k as f64;
            }
            let g = gamma_fn(n as f64).unwrap();
            assert!((g - fact).abs() <= fact * 1e-13, "Gamma({n})");
        }
    }

    #[test]
    fn gamma_poles() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-3.0).is_err());
        // negative non-integer x via reflection
        let g = gamma_fn(-0.5).unwrap();
        assert!((g - (-2.0 * PI.sqrt())).abs() <= 2.0 * PI.sqrt() * 1e-12);
    }

    #[test]
    fn gamma_recurrence() {
        for x in [0.5, 1.5, 3.2, 7.7] {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs(), "x = {x}");
        }
    }

    #[test]
    fn rgamma_zeros_and_values() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-7.0), 0.0);
        assert!((rgamma(3.0) - 0.5).abs() <= 1e-13);
        let truth = 1.0 / gamma_fn(-0.1).unwrap();
        assert!((rgamma(-0.1) - truth).abs() <= truth.abs() * 1e-12);
    }

    #[test]
    fn beta_values() {
        assert!((beta_fn(1.0, 1.0).unwrap() - 1.0).abs() <= 1e-14);
        assert!((beta_fn(2.0, 3.0).unwrap() - 1.0 / 12.0).abs() <= 1e-14);
        let truth = PI / 16.0;
        assert!((beta_fn(2.5, 1.5).unwrap() - truth).abs() <= truth * 1e-13);
        assert!(beta_fn(-1.0, 2.0).is_err());
    }

    #[test]
    fn beta_shift_identity() {
        // B(b, c-b) = (c/b) B(b+1, c-b)
        for (b, c) in [(1.0, 2.5), (0.7, 1.9), (2.0, 5.0), (1.3, 3.4)] {
            let lhs = beta_fn(b, c - b).unwrap();
            let rhs = (c / b) * beta_fn(b + 1.0, c - b).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs(), "(b,c)=({b},{c})");
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 6), 720.0);
        assert!((pochhammer(2.5, 3) - 39.375).abs() <= 1e-12);
        // recurrence (a)_{n+1} = a (a+1)_n
        let a = 1.8;
        for n in 0..8 {
            let lhs = pochhammer(a, n + 1);
            let rhs = a * pochhammer(a + 1.0, n);
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
        }
    }

    #[test]
    fn gauss_2f1_at_zero_is_one() {
        let h = HypArgs::new(0.4, 1.1, 2.3).unwrap();
        assert_eq!(gauss_2f1(&h, 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn gauss_2f1_log_case() {
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let h = HypArgs::new(1.0, 1.0, 2.0).unwrap();
        let v = gauss_2f1(&h, 0.5).unwrap().value;
        let truth = -(0.5f64.ln()) / 0.5;
        assert!((v - truth).abs() <= truth * 1e-11);
    }

    #[test]
    fn gauss_2f1_against_brute_force() {
        // independent compensated 500-term summation oracle
        let h = HypArgs::new(0.3, 0.7, 1.9).unwrap();
        let z = -0.4;
        let mut term = 1.0f64;
        let mut oracle = 0.0f64;
        let mut comp = 0.0f64;
        for n in 0..500 {
            let s = oracle + term;
            comp += if oracle.abs() >= term.abs() {
                (oracle - s) + term
            } else {
                (term - s) + oracle
            };
            oracle = s;
            let k = n as f64;
            term *= (h.a + k) * (h.b + k) / ((h.c + k) * (k + 1.0)) * z;
        }
        oracle += comp;
        let v = gauss_2f1(&h, z).unwrap().value;
        assert!((v - oracle).abs() <= oracle.abs() * 1e-11);
        // frozen cross-check (mpmath, 30 digits)
        assert!((v - 0.961377855164469395).abs() <= 1e-12);
    }

    #[test]
    fn gauss_2f1_series_integral_agreement() {
        for (h, z) in [
            (HypArgs::new(0.5, 1.0, 2.5).unwrap(), 0.6),
            (HypArgs::new(1.2, 0.8, 2.0).unwrap(), -0.7),
            (HypArgs::new(0.3, 0.7, 1.9).unwrap(), 0.4),
        ] {
            let s = gauss_2f1_series(&h, z).unwrap().value;
            let i = gauss_2f1_integral(&h, z).unwrap().value;
            assert!((s - i).abs() <= 1e-8 * s.abs(), "z = {z}");
        }
    }

    #[test]
    fn gauss_2f1_beta_coefficient_series() {
        // 2F1 = sum (a)_n [B(b+n, c-b)/B(b, c-b)] z^n / n!
        let h = HypArgs::new(0.6, 1.2, 2.9).unwrap();
        let z = 0.35;
        let bnorm = beta_fn(h.b, h.c - h.b).unwrap();
        let mut sum = 0.0;
        let mut pref = 1.0; // (a)_n z^n / n!
        for n in 0..200u32 {
            sum += pref * beta_fn(h.b + n as f64, h.c - h.b).unwrap() / bnorm;
            pref *= (h.a + n as f64) * z / (n as f64 + 1.0);
        }
        let v = gauss_2f1(&h, z).unwrap().value;
        assert!((v - sum).abs() <= 1e-10 * sum.abs());
    }

    #[test]
    fn kummer_1f1_values() {
        assert_eq!(kummer_1f1(0.8, 1.9, 0.0).unwrap().value, 1.0);
        // Phi(1;2;z) = (e^z - 1)/z
        let v = kummer_1f1(1.0, 2.0, 1.0).unwrap().value;
        let truth = std::f64::consts::E - 1.0;
        assert!((v - truth).abs() <= truth * 1e-11);
        // frozen (mpmath): 1F1(0.5; 1.5; -2)
        let v = kummer_1f1(0.5, 1.5, -2.0).unwrap().value;
        assert!((v - 0.598144006661304101).abs() <= 1e-11);
    }

    #[test]
    fn kummer_1f1_series_integral_agreement() {
        for (b, c, z) in [(1.0, 2.0, 1.0), (0.5, 1.5, -2.0), (1.2, 3.4, 2.0)] {
            let s = kummer_1f1_series(b, c, z).unwrap().value;
            let i = kummer_1f1_integral(b, c, z).unwrap().value;
            assert!((s - i).abs() <= 1e-8 * s.abs(), "(b,c,z)=({b},{c},{z})");
        }
    }

    #[test]
    fn kummer_1f1_beta_coefficient_series() {
        let (b, c) = (1.2, 2.9);
        let z = 0.8;
        let bnorm = beta_fn(b, c - b).unwrap();
        let mut sum = 0.0;
        let mut zfac = 1.0;
        for n in 0..200u32 {
            sum += beta_fn(b + n as f64, c - b).unwrap() / bnorm * zfac;
            zfac *= z / (n as f64 + 1.0);
        }
        let v = kummer_1f1(b, c, z).unwrap().value;
        assert!((v - sum).abs() <= 1e-10 * sum.abs());
    }

    #[test]
    fn chaudhry_beta_reduces_to_classical() {
        let v = chaudhry_beta_p(2.0, 3.0, 0.0).unwrap().value;
        assert!((v - 1.0 / 12.0).abs() <= 1e-12 / 12.0);
    }

    #[test]
    fn chaudhry_gamma_frozen_value() {
        // Gamma_1(1) = 2 K_1(2), frozen from a 30-digit Bessel evaluation.
        let v = chaudhry_gamma_p(1.0, 1.0).unwrap();
        assert!(v.converged);
        assert!((v.value - 0.279731763633044855).abs() <= 1e-12);
    }

    #[test]
    fn chaudhry_beta_symmetry() {
        let a = chaudhry_beta_p(1.3, 2.7, 0.5).unwrap().value;
        let b = chaudhry_beta_p(2.7, 1.3, 0.5).unwrap().value;
        assert!((a - b).abs() <= 1e-12 * a.abs());
    }
}
