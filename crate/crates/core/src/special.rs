//! Complex log-gamma, digamma, h(s) = π^{-s/2}Γ(s/2), χ(s), ζ(s), ζ'(s), θ(t) and Z(t).

use crate::error::{pole, Error, Result};
use crate::C64;


const LN_PI: f64 = 1.144_729_885_849_400_2;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_2 .. B_16
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Real part below which log_gamma/digamma shift upward before the asymptotic series.
const STIRLING_RE: f64 = 10.0;

/// s = 1/2 + it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub t: f64,
    pub s: C64,
}

impl CriticalPoint {
    pub fn new(t: f64) -> Self {
        CriticalPoint { t, s: C64::new(0.5, t) }
    }
}

/// h(s) together with its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub value: C64,
    pub log_value: C64,
}

fn is_gamma_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of log Γ(z).
///
/// The shift z → z+n is undone with a sum of principal logarithms, which keeps the
/// result continuous off the negative real axis (same determination as mpmath's loggamma).
pub fn log_gamma(z: C64) -> Result<C64> {
    if is_gamma_pole(z) {
        return Err(pole(z));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    let mut w = z;
    let mut shift = C64::new(0.0, 0.0);
    while w.re < STIRLING_RE {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: C64) -> C64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut p = inv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += p * (b / (n * (n - 1.0)));
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: C64) -> Result<C64> {
    if is_gamma_pole(z) {
        return Err(pole(z));
    }
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < STIRLING_RE {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut p = inv2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += p * (b / n);
        p *= inv2;
    }
    Ok(acc + w.ln() - inv * 0.5 - series)
}

/// log h(s) = -(s/2) log π + log Γ(s/2).
pub fn log_h(s: C64) -> Result<C64> {
    Ok(-s * (0.5 * LN_PI) + log_gamma(s * 0.5)?)
}

pub fn h_factor(s: C64) -> Result<GammaFactor> {
    let log_value = log_h(s)?;
    Ok(GammaFactor { value: log_value.exp(), log_value })
}

/// χ(s) = h(1-s)/h(s).
pub fn chi(s: C64) -> Result<C64> {
    Ok((log_h(1.0 - s)? - log_h(s)?).exp())
}

/// h'(s)/h(s) = -½ log π + ½ ψ(s/2).
pub fn h_log_derivative(s: C64) -> Result<C64> {
    Ok(digamma(s * 0.5)? * 0.5 - 0.5 * LN_PI)
}

/// Riemann–Siegel theta, θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn theta_rs(t: f64) -> f64 {
    match log_gamma(C64::new(0.25, 0.5 * t)) {
        Ok(l) => l.im - 0.5 * t * LN_PI,
        Err(_) => f64::NAN,
    }
}

/// Euler–Maclaurin term count giving ~1e-12 for |Im s| ≤ 100.
pub fn em_terms(s: C64) -> usize {
    (3.0 * s.im.abs()).ceil() as usize + 20
}

/// ζ(s) by Euler–Maclaurin with `terms` Dirichlet terms and B_2..B_12 corrections.
pub fn zeta_em(s: C64, terms: usize) -> Result<C64> {
    if s == C64::new(1.0, 0.0) {
        return Err(pole(s));
    }
    if terms < 10 {
        return Err(Error::Domain(format!("zeta_em needs at least 10 terms, got {terms}")));
    }
    let n = terms as f64;
    let ln_n = n.ln();
    let mut sum = C64::new(0.0, 0.0);
    for k in (1..terms).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * ln_n).exp();
    sum += n_s * n / (s - 1.0) + n_s * 0.5;
    // P_k(s) = s(s+1)...(s+2k-2), times N^{-s-2k+1}/(2k)!
    let mut poch = s;
    let mut npow = n_s / n;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI.iter().take(6).enumerate() {
        let kk = k as f64 + 1.0;
        sum += poch * npow * (b / fact);
        poch *= (s + 2.0 * kk - 1.0) * (s + 2.0 * kk);
        npow /= n * n;
        fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
    }
    Ok(sum)
}

/// ζ'(s): the Euler–Maclaurin formula differentiated term by term.
pub fn zeta_prime_em(s: C64, terms: usize) -> Result<C64> {
    if s == C64::new(1.0, 0.0) {
        return Err(pole(s));
    }
    if terms < 10 {
        return Err(Error::Domain(format!("zeta_prime_em needs at least 10 terms, got {terms}")));
    }
    let n = terms as f64;
    let ln_n = n.ln();
    let mut sum = C64::new(0.0, 0.0);
    for k in (2..terms).rev() {
        let l = (k as f64).ln();
        sum -= (-s * l).exp() * l;
    }
    let n_s = (-s * ln_n).exp();
    let sm1 = s - 1.0;
    sum += -(n_s * n) * ln_n / sm1 - n_s * n / (sm1 * sm1) - n_s * (0.5 * ln_n);
    let mut poch = s;
    let mut dpoch = C64::new(1.0, 0.0);
    let mut npow = n_s / n;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI.iter().take(6).enumerate() {
        let kk = k as f64 + 1.0;
        sum += (dpoch - poch * ln_n) * npow * (b / fact);
        let a1 = s + 2.0 * kk - 1.0;
        let a2 = s + 2.0 * kk;
        dpoch = dpoch * a1 * a2 + poch * (a1 + a2);
        poch *= a1 * a2;
        npow /= n * n;
        fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
    }
    Ok(sum)
}

/// ζ(s) anywhere: Euler–Maclaurin for Re s ≥ 0, the functional equation otherwise.
pub fn zeta(s: C64) -> Result<C64> {
    if s.re >= 0.0 {
        zeta_em(s, em_terms(s))
    } else {
        let r = 1.0 - s;
        Ok(chi(s)? * zeta_em(r, em_terms(r))?)
    }
}

/// ζ'(s) anywhere. Left of the strip, differentiates ζ = χ·ζ(1-s) with χ'/χ = -(h'/h)(1-s) - (h'/h)(s).
pub fn zeta_prime(s: C64) -> Result<C64> {
    if s.re >= 0.0 {
        zeta_prime_em(s, em_terms(s))
    } else {
        let r = 1.0 - s;
        let ch = chi(s)?;
        let d = h_log_derivative(r)? + h_log_derivative(s)?;
        let zr = zeta_em(r, em_terms(r))?;
        let zpr = zeta_prime_em(r, em_terms(r))?;
        Ok(-ch * d * zr - ch * zpr)
    }
}

/// Z(t) = e^{iθ(t)} ζ(1/2+it), with the imaginary residual returned alongside.
pub fn hardy_z_with_residual(t: f64) -> Result<(f64, f64)> {
    let s = C64::new(0.5, t);
    let z = C64::from_polar(1.0, theta_rs(t)) * zeta_em(s, em_terms(s))?;
    Ok((z.re, z.im))
}

pub fn hardy_z(t: f64) -> Result<f64> {
    let (re, im) = hardy_z_with_residual(t)?;
    if im.abs() > 1e-6 {
        return Err(Error::Consistency(format!("Z({t}) has imaginary residual {im:e}")));
    }
    Ok(re)
}

/// Analytic continuation of Z off the line: exp(½(log h(s) − log h(1−s)))·ζ(s).
pub fn hardy_z_complex(s: C64) -> Result<C64> {
    let rot = ((log_h(s)? - log_h(1.0 - s)?) * 0.5).exp();
    Ok(rot * zeta(s)?)
}
