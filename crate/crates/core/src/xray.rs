//! Grid evaluation and the zero curves Re f = 0, Im f = 0 ("x-rays") as line segments.

use crate::error::{Error, Result};
use crate::levinson::{r_tau, TauParam};
use crate::mordell::phi;
use crate::quad::QuadConfig;
use crate::special::{hardy_z_complex, log_h, zeta};
use crate::C64;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

pub const MAX_GRID_POINTS: usize = 40_000_000;
/// Fraction of failed points above which a grid is rejected.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) {
            return Err(Error::Domain(format!("empty window ({x0},{x1})x({y0},{y1})")));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::Domain(format!("grid needs at least 2x2 points, got {nx}x{ny}")));
        }
        if nx.saturating_mul(ny) > MAX_GRID_POINTS {
            return Err(Error::Domain(format!("grid {nx}x{ny} exceeds {MAX_GRID_POINTS} points")));
        }
        Ok(Window { x0, x1, y0, y1, nx, ny })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + (self.x1 - self.x0) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + (self.y1 - self.y0) * j as f64 / (self.ny - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FuncId {
    #[serde(rename = "rtau")]
    Rtau,
    #[serde(rename = "h_rtau")]
    HRtau,
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "zeta")]
    Zeta,
    #[serde(rename = "L")]
    L,
    #[serde(rename = "phi-slice")]
    PhiSlice,
}

impl FuncId {
    pub fn name(&self) -> &'static str {
        match self {
            FuncId::Rtau => "rtau",
            FuncId::HRtau => "h_rtau",
            FuncId::Z => "z",
            FuncId::Zeta => "zeta",
            FuncId::L => "L",
            FuncId::PhiSlice => "phi-slice",
        }
    }
}

impl std::str::FromStr for FuncId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rtau" => FuncId::Rtau,
            "h_rtau" => FuncId::HRtau,
            "z" => FuncId::Z,
            "zeta" => FuncId::Zeta,
            "L" | "l" => FuncId::L,
            "phi-slice" | "phi" => FuncId::PhiSlice,
            _ => return Err(Error::Domain(format!("unknown function {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct XRayParams {
    /// τ for rtau / h_rtau.
    pub tau: Option<TauParam>,
    /// τ for the Φ(·, τ) slice.
    pub phi_tau: Option<C64>,
    pub quad: QuadConfig,
}

impl Default for XRayParams {
    fn default() -> Self {
        XRayParams { tau: None, phi_tau: None, quad: QuadConfig::fast() }
    }
}

/// Row-major values, `values[j * nx + i]` at (x(i), y(j)); failed points are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub window: Window,
    pub values: Vec<C64>,
    pub failures: usize,
}

impl Grid {
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[j * self.window.nx + i]
    }
}

/// The function a grid samples; `s = x + iy`.
pub fn point_fn(func: FuncId, params: &XRayParams) -> Result<Box<dyn Fn(C64) -> Result<C64> + Send + Sync>> {
    let cfg = params.quad;
    let need_tau = || params.tau.ok_or_else(|| Error::Domain(format!("{} needs tau", func.name())));
    Ok(match func {
        FuncId::Rtau => {
            let tau = need_tau()?;
            Box::new(move |s| Ok(r_tau(s, &tau, &cfg)?.value))
        }
        FuncId::HRtau => {
            let tau = need_tau()?;
            Box::new(move |s| Ok(log_h(s)?.exp() * r_tau(s, &tau, &cfg)?.value))
        }
        FuncId::Z => Box::new(hardy_z_complex),
        FuncId::Zeta => Box::new(zeta),
        FuncId::L => Box::new(crate::levinson::levinson_l),
        FuncId::PhiSlice => {
            let tau = params.phi_tau.ok_or_else(|| Error::Domain("phi-slice needs tau".into()))?;
            Box::new(move |z| Ok(phi(z, tau, &cfg)?.value))
        }
    })
}

pub fn grid_eval(func: FuncId, params: &XRayParams, window: &Window, parallel: bool) -> Result<Grid> {
    let f = point_fn(func, params)?;
    grid_eval_fn(f, window, parallel)
}

/// Samples any function on the window; rows run in parallel when asked.
pub fn grid_eval_fn<F>(f: F, window: &Window, parallel: bool) -> Result<Grid>
where
    F: Fn(C64) -> Result<C64> + Sync,
{
    let row = |j: usize| -> Vec<C64> {
        let y = window.y(j);
        (0..window.nx)
            .map(|i| match f(C64::new(window.x(i), y)) {
                Ok(v) if v.re.is_finite() && v.im.is_finite() => v,
                _ => C64::new(f64::NAN, f64::NAN),
            })
            .collect()
    };
    let rows: Vec<Vec<C64>> = if parallel {
        (0..window.ny).into_par_iter().map(row).collect()
    } else {
        (0..window.ny).map(row).collect()
    };
    let values: Vec<C64> = rows.into_iter().flatten().collect();
    let failures = values.iter().filter(|v| v.re.is_nan()).count();
    let total = values.len();
    if failures as f64 > MAX_FAILURE_FRACTION * total as f64 {
        return Err(Error::GridFailures { failed: failures, total });
    }
    Ok(Grid { window: *window, values, failures })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    ReZero,
    ImZero,
}

impl CurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::ReZero => "re_zero",
            CurveKind::ImZero => "im_zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub curve: CurveKind,
    pub p1: [f64; 2],
    pub p2: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XRaySegmentSet {
    pub func_id: String,
    pub window: Window,
    pub segments: Vec<Segment>,
}

impl XRaySegmentSet {
    /// Segments of `kind` that cross the vertical line x = `x_line` with mid-height in (y_lo, y_hi).
    pub fn count_crossings(&self, kind: CurveKind, x_line: f64, y_lo: f64, y_hi: f64) -> usize {
        self.segments
            .iter()
            .filter(|s| s.curve == kind)
            .filter(|s| (s.p1[0] < x_line) != (s.p2[0] < x_line))
            .filter(|s| {
                let y = 0.5 * (s.p1[1] + s.p2[1]);
                y > y_lo && y < y_hi
            })
            .count()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(b"curve,x1,y1,x2,y2\n")?;
        for s in &self.segments {
            writeln!(
                w,
                "{},{},{},{},{}",
                s.curve.name(),
                fmt_g9(s.p1[0]),
                fmt_g9(s.p1[1]),
                fmt_g9(s.p2[0]),
                fmt_g9(s.p2[1])
            )?;
        }
        Ok(())
    }
}

/// printf("%.9g")-style formatting.
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.8e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mant.to_string());
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn lerp(p: [f64; 2], q: [f64; 2], a: f64, b: f64) -> [f64; 2] {
    let t = a / (a - b);
    [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
}

/// Marching squares on one scalar field; saddle cells are split by the sign of the corner mean.
fn march_row(field: &dyn Fn(usize, usize) -> f64, window: &Window, j: usize, kind: CurveKind) -> Vec<Segment> {
    let mut out = Vec::new();
    for i in 0..window.nx - 1 {
        let (x0, x1, y0, y1) = (window.x(i), window.x(i + 1), window.y(j), window.y(j + 1));
        let bl = field(i, j);
        let br = field(i + 1, j);
        let tr = field(i + 1, j + 1);
        let tl = field(i, j + 1);
        if bl.is_nan() || br.is_nan() || tr.is_nan() || tl.is_nan() {
            continue;
        }
        let pbl = [x0, y0];
        let pbr = [x1, y0];
        let ptr = [x1, y1];
        let ptl = [x0, y1];
        let bottom = || lerp(pbl, pbr, bl, br);
        let right = || lerp(pbr, ptr, br, tr);
        let top = || lerp(ptl, ptr, tl, tr);
        let left = || lerp(pbl, ptl, bl, tl);
        let case = (bl > 0.0) as u8 | ((br > 0.0) as u8) << 1 | ((tr > 0.0) as u8) << 2 | ((tl > 0.0) as u8) << 3;
        let center_pos = (bl + br + tr + tl) > 0.0;
        let mut push = |a: [f64; 2], b: [f64; 2]| out.push(Segment { curve: kind, p1: a, p2: b });
        match case {
            0 | 15 => {}
            1 | 14 => push(left(), bottom()),
            2 | 13 => push(bottom(), right()),
            3 | 12 => push(left(), right()),
            4 | 11 => push(right(), top()),
            6 | 9 => push(bottom(), top()),
            7 | 8 => push(left(), top()),
            5 => {
                if center_pos {
                    push(left(), top());
                    push(bottom(), right());
                } else {
                    push(left(), bottom());
                    push(right(), top());
                }
            }
            10 => {
                if center_pos {
                    push(left(), bottom());
                    push(right(), top());
                } else {
                    push(left(), top());
                    push(bottom(), right());
                }
            }
            _ => unreachable!(),
        }
    }
    out
}

/// Zero curves of Re and Im; segments ordered by family, then cell row, then cell column.
pub fn marching_segments(grid: &Grid, func_id: &str, parallel: bool) -> XRaySegmentSet {
    let w = grid.window;
    let mut segments = Vec::new();
    for kind in [CurveKind::ReZero, CurveKind::ImZero] {
        let field = |i: usize, j: usize| {
            let v = grid.at(i, j);
            match kind {
                CurveKind::ReZero => v.re,
                CurveKind::ImZero => v.im,
            }
        };
        let rows: Vec<Vec<Segment>> = if parallel {
            (0..w.ny - 1).into_par_iter().map(|j| march_row(&field, &w, j, kind)).collect()
        } else {
            (0..w.ny - 1).map(|j| march_row(&field, &w, j, kind)).collect()
        };
        segments.extend(rows.into_iter().flatten());
    }
    XRaySegmentSet { func_id: func_id.to_string(), window: w, segments }
}

/// grid_eval followed by marching_segments.
pub fn xray(func: FuncId, params: &XRayParams, window: &Window, parallel: bool) -> Result<(Grid, XRaySegmentSet)> {
    let grid = grid_eval(func, params, window, parallel)?;
    let set = marching_segments(&grid, func.name(), parallel);
    Ok((grid, set))
}
