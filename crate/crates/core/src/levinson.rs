//! Levinson's f(s,τ), the auxiliary functions R_τ(s) = (f(s,τ) + f(s,1/τ̄))/2, Riemann's
//! R_i, Levinson's L(s), and Levinson pairs.
//!
//! f is integrated along a line of direction θ = -π/4 - arg(τ)/2 (Im x decreasing). The line
//! is translated to cross the real axis at the half-integer N+1/2 nearest the saddle of
//! e^{-πiτx²}x^{-s}; each integer m ≤ N it passes contributes its residue, which is m^{-s}.

use crate::error::{Error, Result};
use crate::gauss_fourier::{v_table, ReducedRational};
use crate::quad::{integrate_line_refined, log_magnitude_window, ContourSpec, GaussLegendre, QuadConfig, QuadResult};
use crate::special::{self, h_factor, hardy_z, log_h, theta_rs};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

/// |Re s - 1/2| limit of the validated box.
pub const BOX_SIGMA: f64 = 50.0;
/// |Im s| limit of the validated box.
pub const BOX_T: f64 = 150.0;

const POLE_CLEARANCE: f64 = 0.2;
const SCAN_STEP: f64 = 0.25;
const SCAN_MAX: f64 = 400.0;
/// e^{-π Im τ M²} < 1e-18 fixes the theta-series tail length M.
const SERIES_LOG_EPS: f64 = 41.45;
const MAX_SERIES_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauParam {
    Upper(C64),
    Rational(ReducedRational),
}

impl TauParam {
    pub fn upper(tau: C64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::Domain(format!("upper tau needs Im > 0, got {tau}")));
        }
        Ok(TauParam::Upper(tau))
    }

    pub fn rational(a: i64, b: i64) -> Result<Self> {
        Ok(TauParam::Rational(ReducedRational::new(a, b)?))
    }

    pub fn value(&self) -> C64 {
        match self {
            TauParam::Upper(t) => *t,
            TauParam::Rational(r) => C64::new(r.value(), 0.0),
        }
    }

    /// 1/τ̄.
    pub fn reciprocal_conj(&self) -> TauParam {
        match self {
            TauParam::Upper(t) => TauParam::Upper(t.conj().inv()),
            TauParam::Rational(r) => TauParam::Rational(r.recip()),
        }
    }

    /// -1/τ.
    pub fn neg_recip(&self) -> TauParam {
        match self {
            TauParam::Upper(t) => TauParam::Upper(-t.inv()),
            TauParam::Rational(r) => TauParam::Rational(r.recip().neg()),
        }
    }

    /// -τ̄.
    pub fn neg_conj(&self) -> TauParam {
        match self {
            TauParam::Upper(t) => TauParam::Upper(-t.conj()),
            TauParam::Rational(r) => TauParam::Rational(r.neg()),
        }
    }

    pub fn on_unit_circle(&self) -> bool {
        match self {
            TauParam::Upper(t) => (t.norm_sqr() - 1.0).abs() < 1e-15,
            TauParam::Rational(r) => r.a().abs() == 1 && r.b() == 1,
        }
    }
}

impl std::fmt::Display for TauParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TauParam::Upper(t) => write!(f, "{}{:+}i", t.re, t.im),
            TauParam::Rational(r) => write!(f, "{r}"),
        }
    }
}

/// Which rational-τ kernel to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RationalVariant {
    /// Kernel rebuilt from the finite Fourier expansion; reproduces the printed examples.
    #[default]
    Corrected,
    /// The displayed theorem with its prefactors and frequencies as printed.
    TheoremLiteral,
}

pub fn check_box(s: C64) -> Result<()> {
    if (s.re - 0.5).abs() > BOX_SIGMA || s.im.abs() > BOX_T || !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::OutOfRange(format!(
            "s = {s} (box |Re s - 1/2| <= {BOX_SIGMA}, |Im s| <= {BOX_T})"
        )));
    }
    Ok(())
}

/// Direction -π/4 - α/2 with α = arg τ ∈ [0, π].
pub fn default_direction(tau: C64) -> f64 {
    -PI / 4.0 - tau.arg().clamp(0.0, PI) / 2.0
}

/// The part of the integrand multiplying e^{-πiτx²}x^{-s}.
trait LineKernel {
    fn value(&self, x: C64) -> C64;
    /// 2πi · residue at x = m of e^{-πiτx²}·value(x), i.e. the weight of m^{-s}.
    fn residue_weight(&self, m: i64) -> C64;
}

/// prefactor · Σ c_k cos(ω_k x) / (e^{πix} - e^{-πix}), 0 ≤ ω_k ≤ π.
#[derive(Debug, Clone)]
pub struct CosKernel {
    pub tau: ReducedRational,
    pub prefactor: f64,
    pub terms: Vec<(C64, f64)>,
}

impl CosKernel {
    /// Corrected kernel: b^{-1/2} Σ_{k mod P} V(k) cos(2πkx/P).
    pub fn corrected(tau: ReducedRational) -> Self {
        let table = v_table(tau);
        CosKernel {
            tau,
            prefactor: 1.0 / (tau.b() as f64).sqrt(),
            terms: table.cosine_coefficients(),
        }
    }

    /// Kernel as displayed in the theorem: even a uses b^{-1/2}, k mod b, cos(kπx/b);
    /// odd a uses (2√b)^{-1}, k mod 2b, cos(kπx/2b).
    pub fn theorem_literal(tau: ReducedRational) -> Self {
        let table = v_table(tau);
        let b = tau.b();
        let (prefactor, kmax, scale) = if tau.is_odd_numerator() {
            (0.5 / (b as f64).sqrt(), b, PI / (2.0 * b as f64))
        } else {
            (1.0 / (b as f64).sqrt(), b / 2, PI / b as f64)
        };
        let terms = (0..=kmax)
            .map(|k| {
                let once = k == 0 || (tau.is_odd_numerator() && k == b) || (!tau.is_odd_numerator() && 2 * k == b);
                let c = if once { table.get(k) } else { table.get(k) + table.get(-k) };
                (c, k as f64 * scale)
            })
            .collect();
        CosKernel { tau, prefactor, terms }
    }

    fn at_integer(&self, m: i64) -> C64 {
        let s: C64 = self.terms.iter().map(|&(c, w)| c * (w * m as f64).cos()).sum();
        s * self.prefactor
    }
}

impl LineKernel for CosKernel {
    #[inline]
    fn value(&self, x: C64) -> C64 {
        let i = C64::i();
        let mut acc = C64::new(0.0, 0.0);
        let den = if x.im >= 0.0 {
            let a = (i * PI * x).exp();
            for &(c, w) in &self.terms {
                acc += if w == 0.0 {
                    c * a
                } else {
                    c * 0.5 * ((i * (PI + w) * x).exp() + (i * (PI - w) * x).exp())
                };
            }
            a * a - 1.0
        } else {
            let b = (-i * PI * x).exp();
            for &(c, w) in &self.terms {
                acc += if w == 0.0 {
                    c * b
                } else {
                    c * 0.5 * ((-i * (PI - w) * x).exp() + (-i * (PI + w) * x).exp())
                };
            }
            1.0 - b * b
        };
        acc * self.prefactor / den
    }

    fn residue_weight(&self, m: i64) -> C64 {
        // e^{-πiτm²}(-1)^m = e^{2πi(-a m² + b m)/(2b)}
        let (a, b, mm) = (self.tau.a() as i128, self.tau.b() as i128, m as i128);
        crate::gauss_fourier::unit_root(-a * mm * mm + b * mm, 2 * b) * self.at_integer(m)
    }
}

/// (1/2πi) Σ_{n∈Z} x e^{πiτn²}/(x²-n²), truncated per node at n ≤ |x| + M.
struct ThetaKernel {
    q: Vec<C64>,
    tail: usize,
}

impl ThetaKernel {
    fn new(tau: C64, max_abs_x: f64) -> Result<Self> {
        let m = (SERIES_LOG_EPS / (PI * tau.im)).sqrt().ceil() as usize + 1;
        if m > MAX_SERIES_TERMS {
            return Err(Error::NearRealAxis(MAX_SERIES_TERMS));
        }
        let n_max = max_abs_x.ceil() as usize + m + 1;
        let i = C64::i();
        let q = (0..=n_max).map(|n| (i * PI * tau * (n * n) as f64).exp()).collect();
        Ok(ThetaKernel { q, tail: m })
    }
}

impl LineKernel for ThetaKernel {
    #[inline]
    fn value(&self, x: C64) -> C64 {
        let n_max = (x.norm().ceil() as usize + self.tail).min(self.q.len() - 1);
        let x2 = x * x;
        let mut sum = C64::new(0.0, 0.0);
        for n in (1..=n_max).rev() {
            let nf = n as f64;
            sum += self.q[n] / (x2 - nf * nf);
        }
        (sum * 2.0 * x + x.inv()) / (C64::i() * 2.0 * PI)
    }

    fn residue_weight(&self, _m: i64) -> C64 {
        C64::new(1.0, 0.0)
    }
}

/// Line crossing the real axis at `crossing` with direction angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub crossing: f64,
    pub theta: f64,
}

fn saddle(s: C64, tau: C64) -> C64 {
    (-s / (C64::i() * 2.0 * PI * tau)).sqrt()
}

/// Saddle-adapted line: crosses at N + 1/2 with N the integer part of the saddle's
/// projection along the default direction.
pub fn plan_line(s: C64, tau: C64) -> Line {
    let theta = default_direction(tau);
    let (_, c) = oriented_saddle(s, tau, theta);
    let n = if c >= 1.0 { c.floor() } else { 0.0 };
    Line { crossing: n + 0.5, theta }
}

fn oriented_saddle(s: C64, tau: C64, theta: f64) -> (C64, f64) {
    let mut x0 = saddle(s, tau);
    let mut c = x0.re - x0.im * theta.cos() / theta.sin();
    if c < 0.0 {
        x0 = -x0;
        c = -c;
    }
    (x0, c)
}

fn integrate_kernel<K: LineKernel, B: FnOnce(f64) -> Result<K>>(
    s: C64,
    tau: C64,
    line: Line,
    build: B,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    check_box(s)?;
    if (line.crossing - line.crossing.round()).abs() < POLE_CLEARANCE / line.theta.sin().abs() {
        return Err(Error::Contour(format!("line crosses the real axis at {} (too close to an integer)", line.crossing)));
    }
    let i = C64::i();
    let phi = move |x: C64| -i * PI * tau * x * x - s * x.ln();
    let (x0, _) = oriented_saddle(s, tau, line.theta);
    let anchor = C64::new(line.crossing, 0.0);
    let u0 = ((x0 - anchor) * C64::from_polar(1.0, -line.theta)).re;
    let drop = (1.0 / cfg.tol.clamp(1e-16, 1e-2)).ln() + 15.0;
    let (lo, hi) = log_magnitude_window(|x| phi(x).re, anchor, line.theta, u0, drop, SCAN_STEP, SCAN_MAX)?;
    let dir = C64::from_polar(1.0, line.theta);
    let max_abs = (anchor + dir * lo).norm().max((anchor + dir * hi).norm()).max(line.crossing + 1.0);
    let kernel = build(max_abs)?;
    let length = hi - lo;
    let spec = ContourSpec {
        anchor,
        direction_angle: line.theta,
        center: 0.5 * (lo + hi),
        half_length: 0.5 * length,
        panels: cfg.panels_for(length),
        nodes_per_panel: cfg.nodes,
        pole_clearance: Some(POLE_CLEARANCE),
    };
    let mut r = integrate_line_refined(|x| phi(x).exp() * kernel.value(x), &spec, cfg)?;
    let scale = r.value.norm();
    let top = line.crossing.floor() as i64;
    for m in 1..=top {
        r.value += kernel.residue_weight(m) * (-s * (m as f64).ln()).exp();
    }
    if cfg.estimate_error {
        r.check(cfg.tol * scale.max(r.value.norm()).max(1.0))?;
    }
    Ok(r)
}

/// f(s,τ) for Im τ > 0.
pub fn f_upper(s: C64, tau: C64, cfg: &QuadConfig) -> Result<QuadResult> {
    f_upper_on(s, tau, plan_line(s, tau), cfg)
}

/// f(s,τ) for Im τ > 0 along an explicit line (any admissible line gives the same value).
pub fn f_upper_on(s: C64, tau: C64, line: Line, cfg: &QuadConfig) -> Result<QuadResult> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!("f_upper needs Im tau > 0 (got {tau}); use f_rational for real tau")));
    }
    integrate_kernel(s, tau, line, |m| ThetaKernel::new(tau, m), cfg)
}

/// f(s,a/b) through the cosine kernel.
pub fn f_rational(s: C64, tau: ReducedRational, cfg: &QuadConfig) -> Result<QuadResult> {
    f_rational_variant(s, tau, RationalVariant::Corrected, cfg)
}

pub fn f_rational_variant(s: C64, tau: ReducedRational, variant: RationalVariant, cfg: &QuadConfig) -> Result<QuadResult> {
    let t = C64::new(tau.value(), 0.0);
    f_rational_on(s, tau, variant, plan_line(s, t), cfg)
}

pub fn f_rational_on(
    s: C64,
    tau: ReducedRational,
    variant: RationalVariant,
    line: Line,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    let kernel = match variant {
        RationalVariant::Corrected => CosKernel::corrected(tau),
        RationalVariant::TheoremLiteral => CosKernel::theorem_literal(tau),
    };
    integrate_kernel(s, C64::new(tau.value(), 0.0), line, |_| Ok(kernel), cfg)
}

/// Integral of prefactor·e^{-πiτx²}x^{-s}Σc_k cos(ω_k x)/(e^{πix}-e^{-πix}) for a hand-built kernel.
pub fn cos_kernel_integral(s: C64, kernel: &CosKernel, cfg: &QuadConfig) -> Result<QuadResult> {
    let t = C64::new(kernel.tau.value(), 0.0);
    integrate_kernel(s, t, plan_line(s, t), |_| Ok(kernel.clone()), cfg)
}

/// 2πi·Res weight of the given kernel at x = m (1 for the corrected kernel).
pub fn cos_kernel_residue_weight(kernel: &CosKernel, m: i64) -> C64 {
    kernel.residue_weight(m)
}

pub fn f_value(s: C64, tau: &TauParam, cfg: &QuadConfig) -> Result<QuadResult> {
    match tau {
        TauParam::Upper(t) => f_upper(s, *t, cfg),
        TauParam::Rational(r) => f_rational(s, *r, cfg),
    }
}

/// R_τ(s) = (f(s,τ) + f(s,1/τ̄))/2, a single evaluation when |τ| = 1.
pub fn r_tau(s: C64, tau: &TauParam, cfg: &QuadConfig) -> Result<QuadResult> {
    let a = f_value(s, tau, cfg)?;
    if tau.on_unit_circle() {
        return Ok(a);
    }
    let b = f_value(s, &tau.reciprocal_conj(), cfg)?;
    Ok(QuadResult {
        value: (a.value + b.value) * 0.5,
        err_estimate: 0.5 * (a.err_estimate + b.err_estimate),
        roundoff: 0.5 * (a.roundoff + b.roundoff),
        nodes_used: a.nodes_used + b.nodes_used,
    })
}

/// 2f(s, τ+iε/4) - f(s, τ+iε): removes the √ε term of f(s, τ+iε) - f(s, τ).
pub fn f_rational_limit_extrapolated(s: C64, tau: ReducedRational, eps: f64, cfg: &QuadConfig) -> Result<C64> {
    let t = tau.value();
    let near = f_upper(s, C64::new(t, eps / 4.0), cfg)?.value;
    let far = f_upper(s, C64::new(t, eps), cfg)?.value;
    Ok(near * 2.0 - far)
}

/// R_i(s) = h(s)^{-1}(-1/s + ∫_1^∞ x^{s/2-1} ψ(x) dx), ψ(x) = Σ_{n≥1} e^{-πn²x}.
pub fn r_i_theta_integral(s: C64) -> Result<C64> {
    let h = h_factor(s)?.value;
    if s == C64::new(0.0, 0.0) {
        return Err(Error::Pole { re: 0.0, im: 0.0 });
    }
    let a = (0.5 * s.re - 1.0).max(0.0);
    let mut x_max: f64 = 15.0;
    for _ in 0..8 {
        x_max = (45.0 + a * x_max.ln()) / PI;
    }
    let span = x_max.ln();
    let panels = 24 + (s.im.abs() * span / 3.0).ceil() as usize;
    let rule = GaussLegendre::cached(16);
    // substitute x = e^v, v ∈ [0, ln X]
    let width = span / panels as f64;
    let mut total = C64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * width;
        for (node, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = mid + 0.5 * width * node;
            let x = v.exp();
            let psi: f64 = (1..=5).map(|n| (-PI * (n * n) as f64 * x).exp()).sum();
            total += (s * 0.5 * v).exp() * psi * (w * 0.5 * width);
        }
    }
    Ok((total - s.inv()) / h)
}

/// Levinson's L(s) = ζ(s) + ζ'(s)/((h'/h)(1-s) + (h'/h)(s)).
pub fn levinson_l(s: C64) -> Result<C64> {
    let den = levinson_l_denominator(s)?;
    if den.norm() < 1e-10 {
        return Err(Error::SingularDenominator(den.norm()));
    }
    Ok(special::zeta(s)? + special::zeta_prime(s)? / den)
}

/// -log π + ½ψ(s/2) + ½ψ((1-s)/2).
pub fn levinson_l_denominator(s: C64) -> Result<C64> {
    Ok(special::h_log_derivative(s)? + special::h_log_derivative(1.0 - s)?)
}

pub type LevFn = Arc<dyn Fn(C64) -> Result<C64> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairProvenance {
    Completed,
    LevinsonFPair,
    Manual,
}

#[derive(Clone)]
pub struct LevinsonPair {
    pub f: LevFn,
    pub g: LevFn,
    pub provenance: PairProvenance,
}

impl std::fmt::Debug for LevinsonPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LevinsonPair").field("provenance", &self.provenance).finish()
    }
}

/// g*(s) = conj(g(conj s)).
pub fn conj_fn(g: LevFn) -> LevFn {
    Arc::new(move |s: C64| Ok(g(s.conj())?.conj()))
}

/// Completes f to a pair with g(s) = χ(s)(ζ(1-s) - f(1-s)).
pub fn pair_complete(f: LevFn) -> LevinsonPair {
    let f2 = f.clone();
    let g: LevFn = Arc::new(move |s: C64| {
        let r = 1.0 - s;
        Ok(special::chi(s)? * (special::zeta(r)? - f2(r)?))
    });
    LevinsonPair { f, g, provenance: PairProvenance::Completed }
}

/// v = (f + g*)/2.
pub fn pair_symmetrize(pair: &LevinsonPair) -> LevFn {
    let f = pair.f.clone();
    let gs = conj_fn(pair.g.clone());
    Arc::new(move |s: C64| Ok((f(s)? + gs(s)?) * 0.5))
}

pub fn pair_swap(pair: &LevinsonPair) -> LevinsonPair {
    LevinsonPair { f: pair.g.clone(), g: pair.f.clone(), provenance: PairProvenance::Manual }
}

/// λP₁ + (1-λ)P₂.
pub fn pair_combine(lambda: f64, p1: &LevinsonPair, p2: &LevinsonPair) -> LevinsonPair {
    let (f1, f2, g1, g2) = (p1.f.clone(), p2.f.clone(), p1.g.clone(), p2.g.clone());
    LevinsonPair {
        f: Arc::new(move |s| Ok(f1(s)? * lambda + f2(s)? * (1.0 - lambda))),
        g: Arc::new(move |s| Ok(g1(s)? * lambda + g2(s)? * (1.0 - lambda))),
        provenance: PairProvenance::Manual,
    }
}

/// (f(·,τ), f*(·,1/τ̄)).
pub fn levinson_f_pair(tau: TauParam, cfg: QuadConfig) -> LevinsonPair {
    let dual = tau.reciprocal_conj();
    let f: LevFn = Arc::new(move |s| Ok(f_value(s, &tau, &cfg)?.value));
    let fd: LevFn = Arc::new(move |s| Ok(f_value(s, &dual, &cfg)?.value));
    LevinsonPair { f, g: conj_fn(fd), provenance: PairProvenance::LevinsonFPair }
}

/// [h(s)ζ(s) - h(s)f(s) - h(1-s)g(1-s)] / (1 + |h(s)ζ(s)|).
pub fn pair_residual(pair: &LevinsonPair, s: C64) -> Result<C64> {
    let hs = log_h(s)?.exp();
    let h1 = log_h(1.0 - s)?.exp();
    let hz = hs * special::zeta(s)?;
    Ok((hz - hs * (pair.f)(s)? - h1 * (pair.g)(1.0 - s)?) / (1.0 + hz.norm()))
}

/// Pair residual with g = f*.
pub fn levinson_residual(f: &LevFn, s: C64) -> Result<C64> {
    let pair = LevinsonPair { f: f.clone(), g: conj_fn(f.clone()), provenance: PairProvenance::Manual };
    pair_residual(&pair, s)
}

/// Fixed grid for pair checks: three ordinates on each of four vertical lines off σ = 1/2.
pub const PAIR_GRID: [(f64, f64); 12] = [
    (0.2, 3.0),
    (0.2, 11.5),
    (0.2, 23.0),
    (0.35, 6.0),
    (0.35, 17.0),
    (0.35, 29.0),
    (0.7, 4.5),
    (0.7, 13.0),
    (0.7, 26.0),
    (0.85, 8.0),
    (0.85, 19.5),
    (0.85, 33.0),
];

pub fn pair_grid() -> impl Iterator<Item = C64> {
    PAIR_GRID.iter().map(|&(a, b)| C64::new(a, b))
}

/// One point of the critical-line identity Z(t) = 2 Re(e^{iθ(t)} R_τ(1/2+it)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityPoint {
    pub t: f64,
    pub z: f64,
    pub reconstructed: f64,
    /// |Z - 2Re(e^{iθ}R)| / (1 + |Z|).
    pub residual: f64,
    pub r_magnitude: f64,
}

pub fn identity_point(tau: &TauParam, t: f64, cfg: &QuadConfig) -> Result<IdentityPoint> {
    let z = hardy_z(t)?;
    let r = r_tau(C64::new(0.5, t), tau, cfg)?.value;
    let rec = 2.0 * (C64::from_polar(1.0, theta_rs(t)) * r).re;
    Ok(IdentityPoint { t, z, reconstructed: rec, residual: (z - rec).abs() / (1.0 + z.abs()), r_magnitude: r.norm() })
}

/// Identity at `points` equally spaced t in [t_min, t_max]; parallel over points when asked.
pub fn identity_sweep(
    tau: &TauParam,
    t_min: f64,
    t_max: f64,
    points: usize,
    cfg: &QuadConfig,
    parallel: bool,
) -> Result<Vec<IdentityPoint>> {
    let ts: Vec<f64> = (0..points)
        .map(|k| if points == 1 { t_min } else { t_min + (t_max - t_min) * k as f64 / (points - 1) as f64 })
        .collect();
    if parallel {
        ts.par_iter().map(|&t| identity_point(tau, t, cfg)).collect()
    } else {
        ts.iter().map(|&t| identity_point(tau, t, cfg)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleTag {
    M1,
    M43,
    M32,
    M2,
    M3,
}

impl ExampleTag {
    pub const ALL: [ExampleTag; 5] = [ExampleTag::M1, ExampleTag::M43, ExampleTag::M32, ExampleTag::M2, ExampleTag::M3];

    pub fn name(&self) -> &'static str {
        match self {
            ExampleTag::M1 => "m1",
            ExampleTag::M43 => "m43",
            ExampleTag::M32 => "m32",
            ExampleTag::M2 => "m2",
            ExampleTag::M3 => "m3",
        }
    }

    pub fn tau(&self) -> ReducedRational {
        let (a, b) = match self {
            ExampleTag::M1 => (-1, 1),
            ExampleTag::M43 => (-4, 3),
            ExampleTag::M32 => (-3, 2),
            ExampleTag::M2 => (-2, 1),
            ExampleTag::M3 => (-3, 1),
        };
        ReducedRational::new(a, b).expect("static")
    }

    /// The printed pieces: (outer factor, kernel), where e^{πiβx²} appears as τ = -β.
    pub fn pieces(&self) -> Vec<CosKernel> {
        let e = |k: i128, n: i128| crate::gauss_fourier::unit_root(k, n);
        let one = C64::new(1.0, 0.0);
        let i = C64::i();
        let r = |a: i64, b: i64| ReducedRational::new(a, b).expect("static");
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        let k = |tau, prefactor, terms| CosKernel { tau, prefactor, terms };
        match self {
            ExampleTag::M1 => vec![k(r(-1, 1), 1.0, vec![(one, 0.0)])],
            ExampleTag::M43 => vec![
                k(r(-4, 3), 1.0 / (2.0 * s3), vec![(e(-1, 12) * 2.0, PI / 3.0), (i, PI)]),
                k(r(-3, 4), 0.25, vec![(e(1, 8), 0.0), (one * 2.0, PI / 2.0), (e(-3, 8), PI)]),
            ],
            ExampleTag::M32 => vec![
                k(r(-3, 2), 1.0 / (2.0 * s2), vec![(e(-1, 8), 0.0), (e(1, 8), PI)]),
                k(r(-2, 3), 1.0 / (2.0 * s3), vec![(e(1, 12) * 2.0, PI / 3.0), (-i, PI)]),
            ],
            ExampleTag::M2 => vec![
                k(r(-2, 1), 0.5, vec![(one, PI)]),
                k(r(-1, 2), 1.0 / (2.0 * s2), vec![(e(1, 8), 0.0), (e(-1, 8), PI)]),
            ],
            ExampleTag::M3 => vec![
                k(r(-3, 1), 0.5, vec![(one, 0.0)]),
                k(r(-1, 3), 1.0 / (2.0 * s3), vec![(i, 0.0), (e(-1, 12) * 2.0, 2.0 * PI / 3.0)]),
            ],
        }
    }
}

impl std::str::FromStr for ExampleTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ExampleTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown example {s:?} (m1, m43, m32, m2, m3)")))
    }
}

/// The printed formula for R_τ evaluated with its hard-coded coefficients.
pub fn example_formula(tag: ExampleTag, s: C64, cfg: &QuadConfig) -> Result<QuadResult> {
    let mut out = QuadResult { value: C64::new(0.0, 0.0), err_estimate: 0.0, roundoff: 0.0, nodes_used: 0 };
    for piece in tag.pieces() {
        let r = cos_kernel_integral(s, &piece, cfg)?;
        out.value += r.value;
        out.err_estimate += r.err_estimate;
        out.roundoff += r.roundoff;
        out.nodes_used += r.nodes_used;
    }
    Ok(out)
}
