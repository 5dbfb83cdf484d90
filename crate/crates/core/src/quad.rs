//! Composite Gauss–Legendre quadrature along straight lines x = anchor + u e^{iθ} in the complex plane.

use crate::error::{Error, Result};
use crate::C64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Cached rules for n ≤ 64.
    pub fn cached(n: usize) -> &'static GaussLegendre {
        static RULES: [OnceLock<GaussLegendre>; 65] = [const { OnceLock::new() }; 65];
        assert!((1..=64).contains(&n), "cached Gauss-Legendre order must be 1..=64");
        RULES[n].get_or_init(|| GaussLegendre::new(n))
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Straight integration line: x(u) = anchor + u e^{iθ}, u ∈ [center - U, center + U].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub anchor: C64,
    pub direction_angle: f64,
    /// Midpoint of the u-interval (0 for an interval symmetric about the anchor).
    pub center: f64,
    pub half_length: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Minimum allowed distance from a node to the nearest integer; `None` disables the check.
    pub pole_clearance: Option<f64>,
}

impl ContourSpec {
    pub fn new(anchor: C64, direction_angle: f64, half_length: f64) -> Self {
        ContourSpec {
            anchor,
            direction_angle,
            center: 0.0,
            half_length,
            panels: 24,
            nodes_per_panel: 16,
            pole_clearance: None,
        }
    }

    pub fn point(&self, u: f64) -> C64 {
        self.anchor + C64::from_polar(u, self.direction_angle)
    }

    fn validate(&self) -> Result<()> {
        if !(self.half_length > 0.0 && self.half_length.is_finite()) {
            return Err(Error::Contour(format!("half_length must be positive, got {}", self.half_length)));
        }
        if self.panels == 0 || !(2..=64).contains(&self.nodes_per_panel) {
            return Err(Error::Contour(format!(
                "need panels >= 1 and 2..=64 nodes per panel, got {} x {}",
                self.panels, self.nodes_per_panel
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub err_estimate: f64,
    /// Rounding part of `err_estimate`, 16ε·∫|f|.
    pub roundoff: f64,
    pub nodes_used: usize,
}

impl QuadResult {
    /// Fails when the truncation part of the estimate exceeds `bound`.
    pub fn check(&self, bound: f64) -> Result<()> {
        let trunc = self.err_estimate - self.roundoff;
        if trunc > bound {
            return Err(Error::Convergence { estimate: self.err_estimate, tol: bound });
        }
        Ok(())
    }
}

/// Panel/node budget and target tolerance for contour integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub panels: usize,
    pub nodes: usize,
    pub tol: f64,
    /// Compute the embedded lower-order estimate (roughly 1.5x the cost).
    pub estimate_error: bool,
}

/// Contour length that receives `panels` panels; longer contours get proportionally more.
pub const REFERENCE_LENGTH: f64 = 12.0;

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { panels: 24, nodes: 16, tol: 1e-12, estimate_error: true }
    }
}

impl QuadConfig {
    /// Cheap settings for grid scans where only the sign structure matters.
    pub fn fast() -> Self {
        QuadConfig { panels: 12, nodes: 12, tol: 1e-9, estimate_error: false }
    }

    /// Panel count for a contour of the given length.
    pub fn panels_for(&self, length: f64) -> usize {
        ((self.panels as f64 * length / REFERENCE_LENGTH).ceil() as usize).max(2)
    }

    /// Default settings with `LEVINSON_QUAD_TOL` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = QuadConfig::default();
        if let Ok(v) = std::env::var("LEVINSON_QUAD_TOL") {
            cfg.tol = v
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("LEVINSON_QUAD_TOL is not a number: {v:?}")))?;
        }
        Ok(cfg)
    }
}

/// Composite Gauss–Legendre over the line, Jacobian included. The error estimate is the
/// difference to the half-order rule on the same panels plus a roundoff floor.
pub fn integrate_line<F: Fn(C64) -> C64>(f: F, spec: &ContourSpec) -> Result<QuadResult> {
    integrate_line_opts(f, spec, true)
}

pub fn integrate_line_opts<F: Fn(C64) -> C64>(f: F, spec: &ContourSpec, estimate: bool) -> Result<QuadResult> {
    spec.validate()?;
    let hi = GaussLegendre::cached(spec.nodes_per_panel);
    let lo = GaussLegendre::cached((spec.nodes_per_panel / 2).max(1));
    let dir = C64::from_polar(1.0, spec.direction_angle);
    let width = 2.0 * spec.half_length / spec.panels as f64;
    let half = 0.5 * width;
    let start = spec.center - spec.half_length;
    let eval = |u: f64| -> Result<C64> {
        let x = spec.anchor + dir * u;
        if let Some(clear) = spec.pole_clearance {
            if (x - C64::new(x.re.round(), 0.0)).norm() < clear {
                return Err(Error::Contour(format!(
                    "node {x} is within {clear} of the integer {}",
                    x.re.round()
                )));
            }
        }
        let v = f(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NodeSingularity { re: x.re, im: x.im });
        }
        Ok(v)
    };
    let mut total = C64::new(0.0, 0.0);
    let mut est = 0.0;
    let mut abs_sum = 0.0;
    let mut count = 0;
    for p in 0..spec.panels {
        let mid = start + (p as f64 + 0.5) * width;
        let mut acc = C64::new(0.0, 0.0);
        let mut panel_abs = 0.0;
        for (x, w) in hi.nodes.iter().zip(&hi.weights) {
            let v = eval(mid + half * x)?;
            acc += v * *w;
            panel_abs += w * v.norm();
        }
        abs_sum += panel_abs;
        count += hi.nodes.len();
        total += acc;
        if estimate {
            let mut acc_lo = C64::new(0.0, 0.0);
            for (x, w) in lo.nodes.iter().zip(&lo.weights) {
                acc_lo += eval(mid + half * x)? * *w;
            }
            count += lo.nodes.len();
            // Geometric convergence: the n-point error is about the square of the
            // relative n/2-point error.
            if panel_abs > 0.0 {
                let d = (acc - acc_lo).norm();
                est += d * (d / panel_abs).min(1.0);
            }
        }
    }
    let value = total * dir * half;
    let floor = 16.0 * f64::EPSILON * abs_sum * half;
    let err = if estimate { est * half + floor } else { floor };
    Ok(QuadResult { value, err_estimate: err, roundoff: floor, nodes_used: count })
}

/// Panel doublings tried by [`integrate_line_refined`] before giving up.
pub const MAX_DOUBLINGS: u32 = 3;

/// [`integrate_line_opts`] under `cfg`, doubling the panel count while the truncation
/// estimate exceeds `cfg.tol · max(1, |value|)`. The last attempt is returned either way.
pub fn integrate_line_refined<F: Fn(C64) -> C64>(f: F, spec: &ContourSpec, cfg: &QuadConfig) -> Result<QuadResult> {
    let mut spec = *spec;
    let mut r = integrate_line_opts(&f, &spec, cfg.estimate_error)?;
    if !cfg.estimate_error {
        return Ok(r);
    }
    for _ in 0..MAX_DOUBLINGS {
        if r.check(cfg.tol * r.value.norm().max(1.0)).is_ok() {
            break;
        }
        spec.panels *= 2;
        r = integrate_line_opts(&f, &spec, true)?;
    }
    Ok(r)
}

/// As [`integrate_line`], failing with a convergence error when the estimate exceeds
/// `tol · max(1, |value|)`.
pub fn integrate_line_tol<F: Fn(C64) -> C64>(f: F, spec: &ContourSpec, tol: f64) -> Result<QuadResult> {
    let r = integrate_line(f, spec)?;
    r.check(tol * r.value.norm().max(1.0))?;
    Ok(r)
}

/// Half-length U such that e^{-c U²} is below `tol` with margin: max(3, sqrt((ln(1/tol)+5)/c)).
pub fn auto_truncate(decay_coeff: f64, tol: f64) -> Result<f64> {
    if !(decay_coeff > 0.0) {
        return Err(Error::NoDecay);
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(((tol.recip().ln() + 5.0) / decay_coeff).sqrt().max(3.0))
}

/// Interval [lo, hi] of u around `u0` outside which Re φ(anchor + u e^{iθ}) stays below
/// its running maximum minus `drop`. Scans outward in steps of `step`.
pub fn log_magnitude_window<P: Fn(C64) -> f64>(
    log_mag: P,
    anchor: C64,
    theta: f64,
    u0: f64,
    drop: f64,
    step: f64,
    max_half: f64,
) -> Result<(f64, f64)> {
    let dir = C64::from_polar(1.0, theta);
    let mut peak = log_mag(anchor + dir * u0);
    let mut edges = [0.0; 2];
    for (slot, sign) in [(0usize, -1.0), (1, 1.0)] {
        let mut u = u0;
        let mut below = 0;
        loop {
            u += sign * step;
            if (u - u0).abs() > max_half {
                return Err(Error::NoDecay);
            }
            let v = log_mag(anchor + dir * u);
            if v.is_nan() {
                continue;
            }
            if v > peak {
                peak = v;
                below = 0;
            } else if v < peak - drop {
                below += 1;
                if below >= 2 {
                    break;
                }
            } else {
                below = 0;
            }
        }
        edges[slot] = u;
    }
    Ok((edges[0], edges[1]))
}
