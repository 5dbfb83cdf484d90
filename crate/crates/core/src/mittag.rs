//! The Mittag-Leffler kernel
//! (1/2πi) Σ_{|n|≤N} (-1)^n z e^{πinα}/(z²-n²) → cos(παz)/(e^{πiz} - e^{-πiz}), |α| ≤ 1.

use crate::error::{pole, Error, Result};
use crate::C64;
use std::f64::consts::PI;

pub const POLE_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLKernelInput {
    pub z: C64,
    pub alpha: f64,
    pub n: u64,
}

impl MLKernelInput {
    pub fn new(z: C64, alpha: f64, n: u64) -> Result<Self> {
        check(z, alpha)?;
        Ok(MLKernelInput { z, alpha, n })
    }
}

fn check(z: C64, alpha: f64) -> Result<()> {
    if !(alpha.abs() <= 1.0) {
        return Err(Error::Domain(format!("|alpha| must be at most 1, got {alpha}")));
    }
    let near = C64::new(z.re.round(), 0.0);
    if (z - near).norm() < POLE_GUARD {
        return Err(pole(near));
    }
    Ok(())
}

/// (-1)^n cos(παn) with the product nα reduced modulo 2 first.
fn signed_cos(alpha: f64, n: u64) -> f64 {
    let x = alpha * n as f64;
    let r = x - 2.0 * (x / 2.0).round();
    let c = (PI * r).cos();
    if n.is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// 1/(e^{πix} - e^{-πix}) without forming exponentials larger than 1.
#[inline]
pub fn recip_sine_denominator(x: C64) -> C64 {
    let i = C64::i();
    if x.im >= 0.0 {
        let a = (i * PI * x).exp();
        a / (a * a - 1.0)
    } else {
        let b = (-i * PI * x).exp();
        b / (1.0 - b * b)
    }
}

/// Symmetric partial sum; ±n are combined into 2z cos(πnα)/(z²-n²) and added smallest first.
pub fn ml_partial(input: &MLKernelInput) -> Result<C64> {
    let MLKernelInput { z, alpha, n } = *input;
    check(z, alpha)?;
    let z2 = z * z;
    let mut sum = C64::new(0.0, 0.0);
    for k in (1..=n).rev() {
        let kf = k as f64;
        sum += z * (2.0 * signed_cos(alpha, k)) / (z2 - kf * kf);
    }
    sum += z.inv();
    Ok(sum / (C64::i() * 2.0 * PI))
}

/// cos(παz)/(e^{πiz} - e^{-πiz}); for |Im z| > 30 the ratio is rearranged so that no
/// exponential larger than 1 is formed.
pub fn ml_closed(z: C64, alpha: f64) -> Result<C64> {
    if z.im == 0.0 && z.re == z.re.round() {
        return Err(pole(z));
    }
    if !(alpha.abs() <= 1.0) {
        return Err(Error::Domain(format!("|alpha| must be at most 1, got {alpha}")));
    }
    let i = C64::i();
    let w = z * PI;
    if z.im > 30.0 {
        // multiply through by e^{iw}, |e^{iw}| < 1
        let num = ((i * (1.0 + alpha) * w).exp() + (i * (1.0 - alpha) * w).exp()) * 0.5;
        Ok(-num / (1.0 - (i * 2.0 * w).exp()))
    } else if z.im < -30.0 {
        let num = ((-i * (1.0 + alpha) * w).exp() + (-i * (1.0 - alpha) * w).exp()) * 0.5;
        Ok(num / (1.0 - (-i * 2.0 * w).exp()))
    } else {
        Ok((w * alpha).cos() / (i * 2.0 * w.sin()))
    }
}

/// Partial sum of 1/z + Σ_{n=1}^{N} (-1)^n cos(παn) [(1/(z+n) - 1/n) + (1/(z-n) + 1/n)],
/// which tends to π cos(παz)/sin(πz).
pub fn ml_remark_lhs(z: C64, alpha: f64, n: u64) -> Result<C64> {
    check(z, alpha)?;
    let mut sum = C64::new(0.0, 0.0);
    for k in (1..=n).rev() {
        let kf = k as f64;
        let pair = ((z + kf).inv() - 1.0 / kf) + ((z - kf).inv() + 1.0 / kf);
        sum += pair * signed_cos(alpha, k);
    }
    Ok(sum + z.inv())
}

/// Bound on |ml_partial(N) - ml_closed| for N > |z| + 1: the tail of Σ 2|z|/(n²-|z|²) over 2π.
pub fn ml_tail_bound(z: C64, n: u64) -> f64 {
    let r = z.norm();
    let nf = n as f64;
    if nf <= r + 1.0 {
        return f64::INFINITY;
    }
    (r / PI) / (nf - r - 1.0)
}
