//! The Mordell integral Φ(z,τ) = ∫_{0↑1} e^{-πiτx²+2πizx}/(e^{πix} - e^{-πix}) dx.
//!
//! The line has direction 3π/4 - arg(τ)/2 (Im x increasing for 0 ≤ arg τ ≤ π) and is moved
//! to cross the real axis at the half-integer nearest the saddle z/τ; the poles crossed on
//! the way are added back as ρ_n = (-1)^n e^{-πiτn²+2πizn}.

use crate::error::{Error, Result};
use crate::mittag::recip_sine_denominator;
use crate::quad::{integrate_line_refined, log_magnitude_window, ContourSpec, QuadConfig, QuadResult};
use crate::C64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MordellInput {
    pub z: C64,
    pub tau: C64,
}

impl MordellInput {
    pub fn new(z: C64, tau: C64) -> Result<Self> {
        if tau.norm() == 0.0 || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::Domain("tau must be nonzero and finite".into()));
        }
        Ok(MordellInput { z, tau })
    }

    /// q = e^{πiτ}.
    pub fn q(&self) -> C64 {
        (C64::i() * PI * self.tau).exp()
    }
}

/// √(-iτ) = √|τ| e^{i(arg τ - π/2)/2}; equals e^{-πi/4}√τ for τ > 0.
pub fn sqrt_minus_i_tau(tau: C64) -> C64 {
    C64::from_polar(tau.norm().sqrt(), 0.5 * (tau.arg() - PI / 2.0))
}

fn rho(z: C64, tau: C64, n: i64) -> C64 {
    let nf = n as f64;
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    (C64::i() * PI * (-tau * nf * nf + z * (2.0 * nf))).exp() * sign
}

/// Φ(z,τ) by quadrature.
pub fn phi(z: C64, tau: C64, cfg: &QuadConfig) -> Result<QuadResult> {
    let input = MordellInput::new(z, tau)?;
    let psi = 0.75 * PI - 0.5 * tau.arg();
    if psi.sin() < 0.2 {
        return Err(Error::Contour(format!("arg tau = {} leaves no upward decaying direction", tau.arg())));
    }
    let x0 = input.z / input.tau;
    let cstar = x0.re - x0.im * psi.cos() / psi.sin();
    let crossing = if cstar.abs() > 1e6 {
        return Err(Error::Contour(format!("saddle {x0} is too far from the real axis")));
    } else {
        cstar.floor() + 0.5
    };
    phi_on_line(z, tau, crossing, psi, cfg)
}

/// Φ(z,τ) along the line crossing at `crossing` (not an integer) with direction `psi`.
pub fn phi_on_line(z: C64, tau: C64, crossing: f64, psi: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    if (crossing - crossing.round()).abs() < 0.2 {
        return Err(Error::Contour(format!("crossing {crossing} is too close to an integer")));
    }
    let i = C64::i();
    let phase = move |x: C64| i * PI * (-tau * x * x + z * x * 2.0);
    let anchor = C64::new(crossing, 0.0);
    let x0 = z / tau;
    let u0 = ((x0 - anchor) * C64::from_polar(1.0, -psi)).re;
    let drop = (1.0 / cfg.tol.clamp(1e-16, 1e-2)).ln() + 15.0;
    let (lo, hi) = log_magnitude_window(|x| phase(x).re - PI * x.im.abs(), anchor, psi, u0, drop, 0.25, 400.0)?;
    let length = hi - lo;
    let spec = ContourSpec {
        anchor,
        direction_angle: psi,
        center: 0.5 * (lo + hi),
        half_length: 0.5 * length,
        panels: cfg.panels_for(length),
        nodes_per_panel: cfg.nodes,
        pole_clearance: Some(0.15),
    };
    let mut r = integrate_line_refined(|x| phase(x).exp() * recip_sine_denominator(x), &spec, cfg)?;
    let scale = r.value.norm();
    let c = crossing.floor() as i64;
    if c >= 1 {
        for n in 1..=c {
            r.value -= rho(z, tau, n);
        }
    } else {
        for n in (c + 1)..=0 {
            r.value += rho(z, tau, n);
        }
    }
    if cfg.estimate_error {
        r.check(cfg.tol * scale.max(r.value.norm()).max(1.0))?;
    }
    Ok(r)
}

fn rational_prefactor(z: C64, a: i64, b: i64) -> Result<(C64, f64)> {
    if a <= 0 || b <= 0 {
        return Err(Error::Domain(format!("a and b must be positive, got {a}, {b}")));
    }
    let sign = if (b * (a + 1)) % 2 == 0 { 1.0 } else { -1.0 };
    let e = (-C64::i() * 2.0 * PI * b as f64 * z).exp() * sign;
    let pre = 1.0 - e;
    if pre.norm() < 1e-8 {
        return Err(Error::Removable { re: z.re, im: z.im });
    }
    Ok((e, pre.norm()))
}

/// Φ(z, a/b) from the closed form obtained by eliminating Φ(z+a) between the shift and
/// telescoping relations.
pub fn phi_rational_pos(z: C64, a: i64, b: i64) -> Result<C64> {
    let (e, _) = rational_prefactor(z, a, b)?;
    let i = C64::i();
    let (af, bf) = (a as f64, b as f64);
    let first: C64 = (0..b)
        .map(|n| {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (-i * PI * (z * 2.0 * nf + nf * nf * af / bf)).exp() * sign
        })
        .sum();
    let second: C64 = (0..a)
        .map(|m| {
            let w = z + m as f64 + 0.5;
            (i * PI * bf / af * w * w).exp()
        })
        .sum();
    let weight = C64::from_polar(1.0, 0.75 * PI) / (af / bf).sqrt();
    Ok((first + e * weight * second) / (1.0 - e))
}

/// Φ(z, -a/b). The Gaussian sum runs over (z - m - 1/2)²; see [`phi_rational_neg_printed`].
pub fn phi_rational_neg(z: C64, a: i64, b: i64) -> Result<C64> {
    rational_neg(z, a, b, -0.5)
}

/// Same closed form with (z - m + 1/2)² in the Gaussian sum, which does not match Φ.
pub fn phi_rational_neg_printed(z: C64, a: i64, b: i64) -> Result<C64> {
    rational_neg(z, a, b, 0.5)
}

fn rational_neg(z: C64, a: i64, b: i64, half: f64) -> Result<C64> {
    let (e, _) = rational_prefactor(z, a, b)?;
    let i = C64::i();
    let (af, bf) = (a as f64, b as f64);
    let first: C64 = (0..b)
        .map(|n| {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (i * PI * (-z * 2.0 * nf + nf * nf * af / bf)).exp() * sign
        })
        .sum();
    let second: C64 = (0..a)
        .map(|m| {
            let w = z - m as f64 + half;
            (-i * PI * bf / af * w * w).exp()
        })
        .sum();
    let weight = C64::from_polar(1.0, -0.75 * PI) / (af / bf).sqrt();
    Ok((first + e * weight * second) / (1.0 - e))
}

/// Zwegers' h(z,τ) = ∫_R e^{πiτx² - 2πzx}/cosh(πx) dx, Im τ > 0.
pub fn zwegers_h(z: C64, tau: C64, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(tau.im > 0.0) {
        return Err(Error::NoDecay);
    }
    let i = C64::i();
    let f = move |x: C64| (i * PI * tau * x * x - z * (2.0 * PI) * x).exp() / (x * PI).cosh();
    let log_mag = |x: C64| (i * PI * tau * x * x - z * (2.0 * PI) * x).re - PI * x.re.abs();
    let drop = (1.0 / cfg.tol.clamp(1e-16, 1e-2)).ln() + 15.0;
    // peak of -π Im τ x² + (2π|Re z| - π)|x| sits near the origin or at (2Re z ∓ 1)/(2 Im τ)
    let u0 = -(2.0 * z.re.abs() - 1.0).max(0.0) / (2.0 * tau.im) * z.re.signum();
    let (lo, hi) = log_magnitude_window(log_mag, C64::new(0.0, 0.0), 0.0, u0, drop, 0.25, 400.0)?;
    let length = hi - lo;
    let spec = ContourSpec {
        anchor: C64::new(0.0, 0.0),
        direction_angle: 0.0,
        center: 0.5 * (lo + hi),
        half_length: 0.5 * length,
        panels: cfg.panels_for(length),
        nodes_per_panel: cfg.nodes,
        pole_clearance: None,
    };
    integrate_line_refined(f, &spec, cfg)
}

/// Right side of Φ(z+a,τ) - Φ(z,τ) = (i/√(-iτ)) Σ_{m<a} e^{(πi/τ)(z+m+1/2)²}.
pub fn phi_shift_a(z: C64, tau: C64, a: u32) -> C64 {
    let i = C64::i();
    let s: C64 = (0..a)
        .map(|m| {
            let w = z + m as f64 + 0.5;
            (i * PI / tau * w * w).exp()
        })
        .sum();
    i / sqrt_minus_i_tau(tau) * s
}

/// Right side of Φ(z,τ) - (-1)^b e^{-2πibz} q^{-b²} Φ(z+bτ) = Σ_{n<b} (-1)^n e^{-2πinz} q^{-n²}.
pub fn telescoped_sum(z: C64, tau: C64, b: u32) -> C64 {
    let i = C64::i();
    (0..b)
        .map(|n| {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (-i * PI * (z * 2.0 * nf + tau * nf * nf)).exp() * sign
        })
        .sum()
}

/// Relation residuals, each divided by 1 + Σ|terms|.
pub mod residuals {
    use super::*;

    fn norm(terms: &[C64]) -> f64 {
        1.0 + terms.iter().map(|t| t.norm()).sum::<f64>()
    }

    /// Φ(z+1) - Φ(z) - (i/√(-iτ)) e^{(πi/τ)(z+1/2)²}.
    pub fn shift_one(z: C64, tau: C64, cfg: &QuadConfig) -> Result<f64> {
        let a = phi(z + 1.0, tau, cfg)?.value;
        let b = phi(z, tau, cfg)?.value;
        let c = phi_shift_a(z, tau, 1);
        Ok((a - b - c).norm() / norm(&[a, b, c]))
    }

    /// Φ(z+τ) + e^{2πiz+πiτ}Φ(z) - e^{2πiz+πiτ}.
    pub fn shift_tau(z: C64, tau: C64, cfg: &QuadConfig) -> Result<f64> {
        let e = (C64::i() * PI * (z * 2.0 + tau)).exp();
        let a = phi(z + tau, tau, cfg)?.value;
        let b = e * phi(z, tau, cfg)?.value;
        Ok((a + b - e).norm() / norm(&[a, b, e]))
    }

    /// Φ(z/τ - 1/2, -1/τ) + i√(-iτ) e^{-πiz²/τ} Φ(z + 1/2, τ).
    pub fn modular(z: C64, tau: C64, cfg: &QuadConfig) -> Result<f64> {
        let a = phi(z / tau - 0.5, -tau.inv(), cfg)?.value;
        let b = C64::i() * sqrt_minus_i_tau(tau) * (-C64::i() * PI * z * z / tau).exp() * phi(z + 0.5, tau, cfg)?.value;
        Ok((a + b).norm() / norm(&[a, b]))
    }

    /// Φ(z) - ½ e^{-πiτ/4 + πiz} h(z - τ/2, τ).
    pub fn zwegers(z: C64, tau: C64, cfg: &QuadConfig) -> Result<f64> {
        let a = phi(z, tau, cfg)?.value;
        let b = (C64::i() * PI * (z - tau * 0.25)).exp() * 0.5 * zwegers_h(z - tau * 0.5, tau, cfg)?.value;
        Ok((a - b).norm() / norm(&[a, b]))
    }

    /// Φ(z) - (-1)^b e^{-2πibz} q^{-b²} Φ(z+bτ) - Σ.
    pub fn telescoping(z: C64, tau: C64, b: u32, cfg: &QuadConfig) -> Result<f64> {
        let bf = b as f64;
        let sign = if b.is_multiple_of(2) { 1.0 } else { -1.0 };
        let a = phi(z, tau, cfg)?.value;
        let c = (-C64::i() * PI * (z * 2.0 * bf + tau * bf * bf)).exp() * sign * phi(z + tau * bf, tau, cfg)?.value;
        let s = telescoped_sum(z, tau, b);
        Ok((a - c - s).norm() / norm(&[a, c, s]))
    }
}
