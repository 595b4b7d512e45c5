//! The trigonometric kernel Q_{2m,n,gamma}(beta), its closed forms and the
//! location of its maximum in beta.
//!
//! Q_{2m,n,gamma}(beta) = int_{-pi/2}^{pi/2} |cos(beta - (n+1)phi)|^gamma cos^{2m} phi dphi.
//!
//! For m <= n the value is independent of beta; for m >= n+1 (and gamma above
//! the regime threshold) the maximum sits at beta = 0 and has an explicit
//! double-factorial/Beta expression.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, kink_points, QuadratureConfig};
use crate::search::grid_golden_max;
use crate::specfun::{beta_fn, binomial, double_factorial};

/// Parameters of one kernel integral: exponent mu = 2m, phase multiplier n+1,
/// kink power gamma, phase offset beta.
#[derive(Debug, Clone, Copy)]
pub struct QSpec {
    pub m: u32,
    pub n: u32,
    pub gamma: f64,
    pub beta: f64,
}

/// Which side of the m/n divide a spec sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// m <= n: beta-independent value.
    Low,
    /// m >= n+1: maximum at beta = 0 when gamma > 2*floor(m/(n+1)) - 2.
    High,
}

impl QSpec {
    pub fn new(m: u32, n: u32, gamma: f64, beta: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= -1.0 {
            return Err(Error::domain(format!(
                "kernel exponent gamma must be finite and > -1, got {gamma}"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::domain("beta must be finite"));
        }
        Ok(QSpec { m, n, gamma, beta })
    }

    pub fn regime(&self) -> Regime {
        if self.m <= self.n {
            Regime::Low
        } else {
            Regime::High
        }
    }
}

/// gamma threshold of the high-regime closed form: 2*floor(m/(n+1)) - 2.
fn high_regime_gamma_floor(m: u32, n: u32) -> f64 {
    2.0 * f64::from(m / (n + 1)) - 2.0
}

/// Kernel integrand with an integer fast path for the cosine power.
fn power(base: f64, exp: f64) -> f64 {
    if exp == 0.0 {
        1.0
    } else if exp.fract() == 0.0 && exp.abs() <= 128.0 {
        base.powi(exp as i32)
    } else {
        base.powf(exp)
    }
}

/// Quadrature evaluation of Q on [-pi/2, pi/2], panels split at the cosine kinks.
pub fn q_numeric(spec: &QSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let np1 = f64::from(spec.n) + 1.0;
    let mu = f64::from(2 * spec.m);
    let (beta, gamma) = (spec.beta, spec.gamma);
    let kinks = kink_points(beta, spec.n, -FRAC_PI_2, FRAC_PI_2);
    let f = |phi: f64| power((beta - np1 * phi).cos().abs(), gamma) * power(phi.cos(), mu);
    Ok(integrate_panels(f, -FRAC_PI_2, FRAC_PI_2, &kinks, cfg)?.value)
}

/// Closed-form value of max_beta Q (equals Q at beta = 0), or the constant
/// value in the low regime. Refuses parameters outside the hypotheses.
pub fn q_closed(m: u32, n: u32, gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= -1.0 {
        return Err(Error::domain(format!(
            "kernel exponent gamma must be finite and > -1, got {gamma}"
        )));
    }
    let first = double_factorial(2 * i64::from(m) - 1)? / double_factorial(2 * i64::from(m))?
        * beta_fn((gamma + 1.0) / 2.0, 0.5)?;
    if m <= n {
        return Ok(first);
    }
    let floor = high_regime_gamma_floor(m, n);
    if gamma <= floor {
        return Err(Error::domain(format!(
            "closed form for m >= n+1 requires gamma > 2*floor(m/(n+1)) - 2 = {floor}, got {gamma} (m={m}, n={n})"
        )));
    }
    let top = m / (n + 1);
    let mut sum = 0.0;
    for j in 1..=top {
        sum += binomial(u64::from(2 * m), u64::from(m - j * (n + 1)))
            / beta_fn(gamma / 2.0 + f64::from(j) + 1.0, gamma / 2.0 - f64::from(j) + 1.0)?;
    }
    let prefactor = PI / (2f64.powf(f64::from(2 * m) + gamma - 1.0) * (gamma + 1.0));
    Ok(first + prefactor * sum)
}

/// The reduced cosine series for sum_{j=0}^{n} cos^{2m}((theta + j pi)/(n+1)).
pub fn g_reduced(m: u32, n: u32, theta: f64) -> f64 {
    let np1 = f64::from(n) + 1.0;
    let dfr = double_factorial(2 * i64::from(m) - 1).expect("m >= 0")
        / double_factorial(2 * i64::from(m)).expect("m >= 0");
    let mut acc = dfr * np1;
    let top = m / (n + 1);
    let scale = np1 / 2f64.powi(2 * m as i32 - 1);
    for s in 1..=top {
        acc += scale
            * binomial(u64::from(2 * m), u64::from(m - s * (n + 1)))
            * (2.0 * f64::from(s) * theta).cos();
    }
    acc
}

/// Maximize Q over beta in [0, pi/2] (periodicity and evenness make that
/// interval sufficient). Returns (beta_star, max value); flat objectives and
/// endpoint maxima resolve to the smallest beta.
pub fn q_maximize(m: u32, n: u32, gamma: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    QSpec::new(m, n, gamma, 0.0)?;
    let noise = flat_noise(cfg, q_numeric(&QSpec { m, n, gamma, beta: 0.0 }, cfg)?);
    let r = grid_golden_max(
        |beta| q_numeric(&QSpec { m, n, gamma, beta }, cfg),
        0.0,
        FRAC_PI_2,
        128,
        1e-10,
        noise,
    )?;
    Ok((r.x, r.value))
}

/// Value resolution of a quadrature-backed objective: the configured
/// tolerance, with a 1e-12 floor for the flat tie-break contract.
pub(crate) fn flat_noise(cfg: &QuadratureConfig, scale: f64) -> f64 {
    (4.0 * (cfg.abs_tol + cfg.rel_tol * scale.abs())).max(1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn numeric_low_regime_is_beta_independent() {
        // m=0, n=3, gamma=1: value 2 = B(1, 1/2), any beta
        for beta in [0.0, 0.3, 0.7, 1.2] {
            let v = q_numeric(&QSpec::new(0, 3, 1.0, beta).unwrap(), &cfg()).unwrap();
            assert!((v - 2.0).abs() < 1e-10, "beta={beta}: {v}");
        }
    }

    #[test]
    fn numeric_matches_wallis() {
        // m=1, n=0, gamma=2 at beta=0 reduces to cos^4: 3 pi / 8
        let v = q_numeric(&QSpec::new(1, 0, 2.0, 0.0).unwrap(), &cfg()).unwrap();
        assert!((v - 3.0 * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn numeric_low_regime_beta_shifted() {
        // m=2, n=4, gamma=2: (3/8) B(3/2, 1/2) = 3 pi / 16, independent of beta
        let v = q_numeric(&QSpec::new(2, 4, 2.0, 1.1).unwrap(), &cfg()).unwrap();
        assert!((v - 3.0 * PI / 16.0).abs() < 1e-11);
    }

    #[test]
    fn closed_high_regime_values() {
        // (1,0,2): pi/4 + pi/8 = 3 pi/8, matches the direct cos^4 integral
        let v = q_closed(1, 0, 2.0).unwrap();
        assert!((v - 3.0 * PI / 8.0).abs() < 1e-13);
        // frozen 30-digit references
        assert!((q_closed(3, 1, 2.0).unwrap() - 0.638_136_007_760_426_75).abs() < 1e-13);
        assert!((q_closed(5, 2, 1.5).unwrap() - 0.496_025_396_710_395_43).abs() < 1e-13);
    }

    #[test]
    fn closed_low_regime_values() {
        assert!((q_closed(0, 5, 1.0).unwrap() - 2.0).abs() < 1e-13);
        // (3,6,1): (15/48) * 2 = 5/8
        assert!((q_closed(3, 6, 1.0).unwrap() - 0.625).abs() < 1e-13);
    }

    #[test]
    fn closed_rejects_out_of_regime() {
        // m=4, n=1: floor = 2, gamma must exceed 2
        let e = q_closed(4, 1, 2.0).unwrap_err();
        assert!(e.to_string().contains("gamma"), "{e}");
        assert!(q_closed(4, 1, 2.0 + 1e-9).is_ok());
        assert!(q_closed(6, 0, 4.0).is_err()); // floor = 10
    }

    #[test]
    fn g_reduced_examples() {
        assert!((g_reduced(1, 0, 0.0) - 1.0).abs() < 1e-14);
        // m <= n kills the sum: constant 4 * 3/8 = 3/2
        assert!((g_reduced(2, 3, 0.3) - 1.5).abs() < 1e-14);
        // m=2, n=1 at theta=0: 3/4 + 1/4 = 1, also the raw sum value
        assert!((g_reduced(2, 1, 0.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn g_reduced_matches_raw_sum() {
        for m in 0..=6u32 {
            for n in 0..=6u32 {
                for k in 0..50 {
                    let theta = -3.0 + 6.0 * k as f64 / 49.0;
                    let raw: f64 = (0..=n)
                        .map(|j| {
                            ((theta + f64::from(j) * PI) / (f64::from(n) + 1.0))
                                .cos()
                                .powi(2 * m as i32)
                        })
                        .sum();
                    let red = g_reduced(m, n, theta);
                    assert!(
                        (raw - red).abs() < 1e-12,
                        "m={m} n={n} theta={theta}: raw={raw} red={red}"
                    );
                }
            }
        }
    }

    #[test]
    fn maximize_high_regime_at_zero() {
        // gamma = 2 sits exactly on the closed-form threshold for (m=2, n=0),
        // but the numeric maximum is still at 0: expanding cos^2 gives
        // Q(beta) = 3 pi/16 + (pi/8) cos 2 beta, so Q(0) = 5 pi/16 (= int cos^6).
        let (beta, v) = q_maximize(2, 0, 2.0, &cfg()).unwrap();
        assert_eq!(beta, 0.0);
        assert!((v - 5.0 * PI / 16.0).abs() < 1e-10);
        assert!(q_closed(2, 0, 2.0).is_err());
    }

    #[test]
    fn maximize_flat_ties_to_zero() {
        // m=1, n=3, gamma=1: flat objective of value 2 * (1/2) = 1
        let (beta, v) = q_maximize(1, 3, 1.0, &cfg()).unwrap();
        assert_eq!(beta, 0.0);
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn maximize_matches_closed_form() {
        let (_, v) = q_maximize(3, 1, 2.0, &cfg()).unwrap();
        assert!((v - q_closed(3, 1, 2.0).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn symmetry_in_beta() {
        let c = cfg();
        for (m, n, gamma) in [(2u32, 0u32, 2.0f64), (3, 1, 3.0), (1, 2, 1.5)] {
            for beta in [0.2, 0.9, 1.4] {
                let v = q_numeric(&QSpec { m, n, gamma, beta }, &c).unwrap();
                let v_neg = q_numeric(&QSpec { m, n, gamma, beta: -beta }, &c).unwrap();
                let v_per = q_numeric(&QSpec { m, n, gamma, beta: beta + PI }, &c).unwrap();
                assert!((v - v_neg).abs() < 1e-10);
                assert!((v - v_per).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn spec_rejects_bad_gamma() {
        assert!(QSpec::new(1, 1, -1.0, 0.0).is_err());
        assert!(QSpec::new(1, 1, f64::NAN, 0.0).is_err());
    }
}
