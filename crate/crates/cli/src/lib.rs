//! The `levinson` command line: argument parsing, configuration and dispatch.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use levinson_core::levinson::{self as lev, LevFn};
use levinson_core::xray::{self, XRayParams};
use levinson_core::{gauss_fourier, mordell, special};
use levinson_core::{c, ExampleTag, FuncId, QuadConfig, RationalVariant, ReducedRational, TauParam, Window, C64};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;


pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(levinson_core::Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<levinson_core::Error> for CliError {
    fn from(e: levinson_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// Parses `[-]A/B`, `[-]A`, `i`, `RE+IMi`, `RE-IMi`, `IMi`.
pub fn parse_tau(text: &str) -> CliResult<TauParam> {
    let s = text.trim();
    if s.is_empty() {
        return usage("empty tau");
    }
    if let Some(body) = s.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(k, ch)| (ch == '+' || ch == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
            .map(|(k, _)| k)
            .last();
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re: f64 = re_txt.parse().or_else(|_| usage(format!("bad real part in tau {text:?}")))?;
        let im: f64 = match im_txt {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => t.parse().or_else(|_| usage(format!("bad imaginary part in tau {text:?}")))?,
        };
        return complex_tau(re, im);
    }
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().or_else(|_| usage(format!("bad numerator in tau {text:?}")))?;
        let b: i64 = b.trim().parse().or_else(|_| usage(format!("bad denominator in tau {text:?}")))?;
        if a == 0 {
            return usage("tau must be nonzero");
        }
        if b == 0 {
            return usage(format!("zero denominator in tau {text:?}"));
        }
        return Ok(TauParam::rational(a, b)?);
    }
    if let Ok(a) = s.parse::<i64>() {
        if a == 0 {
            return usage("tau must be nonzero");
        }
        return Ok(TauParam::rational(a, 1)?);
    }
    match s.parse::<f64>() {
        Ok(0.0) => usage("tau must be nonzero"),
        Ok(_) => usage(format!("real tau must be rational, written A/B (got {text:?})")),
        Err(_) => usage(format!("cannot parse tau {text:?}")),
    }
}

fn complex_tau(re: f64, im: f64) -> CliResult<TauParam> {
    if re == 0.0 && im == 0.0 {
        return usage("tau must be nonzero");
    }
    if im < 0.0 {
        return usage("tau must lie in the closed upper half-plane");
    }
    if im == 0.0 {
        if re.fract() == 0.0 && re.abs() < 1e15 {
            return Ok(TauParam::rational(re as i64, 1)?);
        }
        return usage("real tau must be rational, written A/B");
    }
    Ok(TauParam::upper(c(re, im))?)
}

/// "RE,IM".
pub fn parse_complex(text: &str) -> CliResult<C64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [re, im] => match (re.parse::<f64>(), im.parse::<f64>()) {
            (Ok(re), Ok(im)) => Ok(c(re, im)),
            _ => usage(format!("expected RE,IM, got {text:?}")),
        },
        _ => usage(format!("expected RE,IM, got {text:?}")),
    }
}

/// "X0,X1,Y0,Y1".
pub fn parse_window(text: &str, nx: usize, ny: usize) -> CliResult<Window> {
    let v: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .or_else(|_| usage(format!("expected X0,X1,Y0,Y1, got {text:?}")))?;
    if v.len() != 4 {
        return usage(format!("expected X0,X1,Y0,Y1, got {text:?}"));
    }
    Window::new(v[0], v[1], v[2], v[3], nx, ny).or_else(|e| usage(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Validated run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliConfig {
    pub quad_tol: f64,
    pub quad_panels: usize,
    pub quad_nodes: usize,
    pub output_format: Option<OutputFormat>,
    /// 0 = rayon's default.
    pub threads: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        let q = QuadConfig::default();
        CliConfig { quad_tol: q.tol, quad_panels: q.panels, quad_nodes: q.nodes, output_format: None, threads: 0 }
    }
}

impl CliConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(1e-14..=1e-4).contains(&self.quad_tol) {
            return usage(format!("quad tolerance must lie in [1e-14, 1e-4], got {}", self.quad_tol));
        }
        if self.quad_panels == 0 || self.quad_nodes == 0 {
            return usage("quad panels and nodes must be positive");
        }
        if self.quad_panels.saturating_mul(self.quad_nodes) > 1_000_000 {
            return usage("quad panels x nodes must not exceed 1e6");
        }
        Ok(())
    }

    pub fn quad(&self) -> QuadConfig {
        QuadConfig { panels: self.quad_panels, nodes: self.quad_nodes, tol: self.quad_tol, estimate_error: true }
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.output_format.unwrap_or(default)
    }
}

#[derive(Debug, Parser)]
#[command(name = "levinson", version, about = "Riemann auxiliary functions, Mordell integrals and Gauss sums")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Panels per 12 units of contour length
    #[arg(long, global = true)]
    quad_panels: Option<usize>,
    /// Gauss-Legendre nodes per panel
    #[arg(long, global = true)]
    quad_nodes: Option<usize>,
    /// Relative quadrature tolerance (overrides LEVINSON_QUAD_TOL)
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    /// Worker threads, 0 = all cores (overrides LEVINSON_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format for stdout
    #[arg(long, global = true, value_enum)]
    output_format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate a single function value
    Eval(EvalArgs),
    /// Check identities and print the worst residual
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Quadratic Gauss sum S(a,b) and its classification
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
    /// Table of V_tau(n) for rational tau
    Vtable {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Mordell integral Phi(z, tau)
    Mordell {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Complex tau as RE,IM (quadrature)
        #[arg(long, allow_hyphen_values = true, conflicts_with = "rat", required_unless_present = "rat")]
        tau: Option<String>,
        /// Rational tau as [-]A/B (closed form)
        #[arg(long, allow_hyphen_values = true)]
        rat: Option<String>,
    },
    /// Zero curves Re f = 0 and Im f = 0 on a grid
    Xray(XrayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalFunc {
    Rtau,
    F,
    Zeta,
    ZetaPrime,
    Z,
    Theta,
    L,
    H,
    Chi,
    Ri,
    Example,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(value_enum)]
    func: EvalFunc,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Complex argument RE,IM
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Real argument for z and theta
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Example tag: m1, m43, m32, m2, m3
    #[arg(long)]
    tag: Option<String>,
    /// Use the rational kernel exactly as printed in the theorem
    #[arg(long)]
    theorem_literal: bool,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Z(t) = 2 Re(e^{i theta(t)} R_tau(1/2+it)) on a t-grid
    Identity {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 2.0)]
        t_min: f64,
        #[arg(long, default_value_t = 60.0)]
        t_max: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Pair identity for (f(., tau), f*(., 1/conj tau)) on the fixed 12-point grid
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// The five printed examples against the generic rational evaluator
    Examples {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum XrayFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct XrayArgs {
    /// rtau, h_rtau, z, zeta, L or phi-slice
    #[arg(long)]
    func: String,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "-20,50,0,140")]
    window: String,
    #[arg(long, default_value_t = 400)]
    nx: usize,
    #[arg(long, default_value_t = 800)]
    ny: usize,
    #[arg(long)]
    out: std::path::PathBuf,
    #[arg(long, value_enum, default_value_t = XrayFormat::Csv)]
    format: XrayFormat,
}

fn env_number<T: std::str::FromStr>(name: &str) -> CliResult<Option<T>> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map(Some).or_else(|_| usage(format!("{name} is not a valid number: {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn build_config(g: &GlobalArgs) -> CliResult<CliConfig> {
    let mut cfg = CliConfig::default();
    if let Some(t) = env_number::<f64>("LEVINSON_QUAD_TOL")? {
        cfg.quad_tol = t;
    }
    if let Some(n) = env_number::<usize>("LEVINSON_THREADS")? {
        cfg.threads = n;
    }
    if let Some(t) = g.quad_tol {
        cfg.quad_tol = t;
    }
    if let Some(n) = g.threads {
        cfg.threads = n;
    }
    if let Some(p) = g.quad_panels {
        cfg.quad_panels = p;
    }
    if let Some(n) = g.quad_nodes {
        cfg.quad_nodes = n;
    }
    cfg.output_format = g.output_format;
    cfg.validate()?;
    Ok(cfg)
}

fn cj(z: C64) -> Value {
    json!([z.re, z.im])
}

struct Out<'a> {
    w: &'a mut dyn Write,
    format: OutputFormat,
}

impl Out<'_> {
    fn emit(&mut self, value: &Value, text: impl FnOnce() -> String) -> CliResult<()> {
        match self.format {
            OutputFormat::Text => writeln!(self.w, "{}", text())?,
            _ => writeln!(self.w, "{value}")?,
        }
        Ok(())
    }
}

fn need<'a>(v: &'a Option<String>, what: &str) -> CliResult<&'a str> {
    v.as_deref().map_or_else(|| usage(format!("--{what} is required")), Ok)
}

fn cmd_eval(a: &EvalArgs, cfg: &CliConfig, out: &mut Out) -> CliResult<i32> {
    let q = cfg.quad();
    let s = || parse_complex(need(&a.s, "s")?);
    let tau = || parse_tau(need(&a.tau, "tau")?);
    let (name, arg, value, err): (&str, Value, C64, Option<f64>) = match a.func {
        EvalFunc::Rtau => {
            let (s, tau) = (s()?, tau()?);
            let r = lev::r_tau(s, &tau, &q)?;
            ("rtau", cj(s), r.value, Some(r.err_estimate))
        }
        EvalFunc::F => {
            let (s, tau) = (s()?, tau()?);
            let r = match (tau, a.theorem_literal) {
                (TauParam::Rational(t), true) => lev::f_rational_variant(s, t, RationalVariant::TheoremLiteral, &q)?,
                (_, true) => return usage("--theorem-literal needs a rational tau"),
                (tau, false) => lev::f_value(s, &tau, &q)?,
            };
            ("f", cj(s), r.value, Some(r.err_estimate))
        }
        EvalFunc::Zeta => {
            let s = s()?;
            ("zeta", cj(s), special::zeta(s)?, None)
        }
        EvalFunc::ZetaPrime => {
            let s = s()?;
            ("zeta-prime", cj(s), special::zeta_prime(s)?, None)
        }
        EvalFunc::Z => match (a.t, &a.s) {
            (Some(t), None) => ("z", json!(t), c(special::hardy_z(t)?, 0.0), None),
            (None, Some(_)) => {
                let s = s()?;
                ("z", cj(s), special::hardy_z_complex(s)?, None)
            }
            _ => return usage("z takes exactly one of --t or --s"),
        },
        EvalFunc::Theta => {
            let t = a.t.map_or_else(|| usage("--t is required"), Ok)?;
            ("theta", json!(t), c(special::theta_rs(t), 0.0), None)
        }
        EvalFunc::L => {
            let s = s()?;
            ("L", cj(s), lev::levinson_l(s)?, None)
        }
        EvalFunc::H => {
            let s = s()?;
            ("h", cj(s), special::h_factor(s)?.value, None)
        }
        EvalFunc::Chi => {
            let s = s()?;
            ("chi", cj(s), special::chi(s)?, None)
        }
        EvalFunc::Ri => {
            let s = s()?;
            ("ri", cj(s), lev::r_i_theta_integral(s)?, None)
        }
        EvalFunc::Example => {
            let s = s()?;
            let tag: ExampleTag = need(&a.tag, "tag")?.parse().or_else(|e: levinson_core::Error| usage(e.to_string()))?;
            let r = lev::example_formula(tag, s, &q)?;
            ("example", cj(s), r.value, Some(r.err_estimate))
        }
    };
    let mut obj = json!({ "func": name, "arg": arg, "value": cj(value) });
    if let Some(tau) = &a.tau {
        obj["tau"] = json!(tau);
    }
    if let Some(e) = err {
        obj["err_estimate"] = json!(e);
    }
    out.emit(&obj, || format!("{} {}", value.re, value.im))?;
    Ok(EXIT_OK)
}

fn verdict(max: f64, tol: f64) -> i32 {
    if max <= tol {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

fn cmd_verify(v: &VerifyCmd, cfg: &CliConfig, out: &mut Out) -> CliResult<i32> {
    let q = cfg.quad();
    match v {
        VerifyCmd::Identity { tau, t_min, t_max, points, tol } => {
            let tau = parse_tau(tau)?;
            if *points == 0 || !(t_min <= t_max) {
                return usage("need points >= 1 and t-min <= t-max");
            }
            let pts = lev::identity_sweep(&tau, *t_min, *t_max, *points, &q, true)?;
            let worst = pts.iter().max_by(|a, b| a.residual.total_cmp(&b.residual)).expect("non-empty");
            let obj = json!({
                "tau": tau.to_string(),
                "grid": { "t_min": t_min, "t_max": t_max, "points": points },
                "max_residual": worst.residual,
                "argmax_t": worst.t,
                "argmax": worst.t,
                "z": worst.z,
                "reconstructed": worst.reconstructed,
                "tol": tol,
            });
            out.emit(&obj, || format!("max residual {:.3e} at t = {} (Z = {}, reconstructed {})", worst.residual, worst.t, worst.z, worst.reconstructed))?;
            Ok(verdict(worst.residual, *tol))
        }
        VerifyCmd::Pair { tau, tol } => {
            let tau = parse_tau(tau)?;
            let pair = lev::levinson_f_pair(tau, q);
            let r: LevFn = Arc::new(move |s| Ok(lev::r_tau(s, &tau, &q)?.value));
            let mut worst = (0.0, c(0.0, 0.0));
            let mut worst_lf: f64 = 0.0;
            for s in lev::pair_grid() {
                let p = lev::pair_residual(&pair, s)?.norm();
                if p >= worst.0 {
                    worst = (p, s);
                }
                worst_lf = worst_lf.max(lev::levinson_residual(&r, s)?.norm());
            }
            let grid: Vec<Value> = lev::pair_grid().map(cj).collect();
            let obj = json!({
                "tau": tau.to_string(),
                "grid": grid,
                "max_residual": worst.0,
                "argmax": cj(worst.1),
                "levinson_max_residual": worst_lf,
                "tol": tol,
            });
            out.emit(&obj, || format!("max pair residual {:.3e} at s = {}; R_tau residual {:.3e}", worst.0, worst.1, worst_lf))?;
            Ok(verdict(worst.0.max(worst_lf), *tol))
        }
        VerifyCmd::Examples { tol } => {
            let points = [c(0.5, 5.0), c(0.25, 14.0), c(0.8, 30.0), c(1.5, 2.0), c(-0.5, 21.0)];
            let mut rows = Vec::new();
            let mut overall = (0.0, "", c(0.0, 0.0));
            for tag in ExampleTag::ALL {
                let tau = TauParam::Rational(tag.tau());
                let mut worst = (0.0, c(0.0, 0.0));
                for &s in &points {
                    let a = lev::example_formula(tag, s, &q)?.value;
                    let b = lev::r_tau(s, &tau, &q)?.value;
                    let d = (a - b).norm() / b.norm().max(1.0);
                    if d >= worst.0 {
                        worst = (d, s);
                    }
                }
                if worst.0 >= overall.0 {
                    overall = (worst.0, tag.name(), worst.1);
                }
                rows.push(json!({ "tag": tag.name(), "tau": tag.tau().to_string(), "max_residual": worst.0, "argmax": cj(worst.1) }));
            }
            let obj = json!({
                "examples": rows,
                "grid": points.iter().copied().map(cj).collect::<Vec<_>>(),
                "max_residual": overall.0,
                "argmax": { "tag": overall.1, "s": cj(overall.2) },
                "tol": tol,
            });
            out.emit(&obj, || format!("max deviation {:.3e} ({} at s = {})", overall.0, overall.1, overall.2))?;
            Ok(verdict(overall.0, *tol))
        }
    }
}

fn cmd_gauss(a: i64, b: i64, out: &mut Out) -> CliResult<i32> {
    let g = gauss_fourier::gauss_sum_classify(a, b)?;
    let obj = serde_json::to_value(g).expect("serializable");
    out.emit(&obj, || format!("{} {} {:?}", g.value.re, g.value.im, g.magnitude_class))?;
    Ok(EXIT_OK)
}

fn parse_rational(text: &str) -> CliResult<ReducedRational> {
    match parse_tau(text)? {
        TauParam::Rational(r) => Ok(r),
        TauParam::Upper(_) => usage(format!("expected a rational A/B, got {text:?}")),
    }
}

fn cmd_vtable(tau: &str, cfg: &CliConfig, out: &mut Out) -> CliResult<i32> {
    let t = parse_rational(tau)?;
    let v = gauss_fourier::v_table(t);
    match cfg.format_or(OutputFormat::Csv) {
        OutputFormat::Json => {
            let values: Vec<Value> = v.values.iter().copied().map(cj).collect();
            out.emit(&json!({ "tau": t.to_string(), "period": v.period, "values": values }), String::new)?;
        }
        _ => {
            writeln!(out.w, "n,re,im,abs")?;
            for (n, x) in v.values.iter().enumerate() {
                writeln!(out.w, "{n},{:e},{:e},{:e}", x.re, x.im, x.norm())?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_mordell(z: &str, tau: &Option<String>, rat: &Option<String>, cfg: &CliConfig, out: &mut Out) -> CliResult<i32> {
    let z = parse_complex(z)?;
    let (value, err, tau_txt) = match (tau, rat) {
        (Some(t), None) => {
            let t = parse_complex(t)?;
            let r = mordell::phi(z, t, &cfg.quad())?;
            (r.value, Some(r.err_estimate), format!("{},{}", t.re, t.im))
        }
        (None, Some(r)) => {
            let r = parse_rational(r)?;
            let v = if r.a() > 0 {
                mordell::phi_rational_pos(z, r.a(), r.b())?
            } else {
                mordell::phi_rational_neg(z, -r.a(), r.b())?
            };
            (v, None, r.to_string())
        }
        _ => return usage("give exactly one of --tau RE,IM or --rat A/B"),
    };
    let obj = json!({ "z": cj(z), "tau": tau_txt, "value": cj(value), "err_estimate": err });
    out.emit(&obj, || format!("{} {}", value.re, value.im))?;
    Ok(EXIT_OK)
}

fn cmd_xray(a: &XrayArgs, cfg: &CliConfig, explicit_quad: bool, out: &mut Out) -> CliResult<i32> {
    let func: FuncId = a.func.parse().or_else(|e: levinson_core::Error| usage(e.to_string()))?;
    let window = parse_window(&a.window, a.nx, a.ny)?;
    // grid scans only need the sign pattern, so the cheap rule is the default
    let quad = if explicit_quad { cfg.quad() } else { QuadConfig::fast() };
    let mut params = XRayParams { quad, ..Default::default() };
    match func {
        FuncId::Rtau | FuncId::HRtau => params.tau = Some(parse_tau(need(&a.tau, "tau")?)?),
        FuncId::PhiSlice => params.phi_tau = Some(parse_tau(need(&a.tau, "tau")?)?.value()),
        _ => {}
    }
    let (grid, set) = xray::xray(func, &params, &window, true)?;
    let file = std::fs::File::create(&a.out)?;
    let mut w = std::io::BufWriter::new(file);
    match a.format {
        XrayFormat::Csv => set.write_csv(&mut w)?,
        XrayFormat::Json => {
            serde_json::to_writer(&mut w, &set).map_err(std::io::Error::from)?;
            w.write_all(b"\n")?;
        }
    }
    w.flush()?;
    let count = |k| set.segments.iter().filter(|s| s.curve == k).count();
    let obj = json!({
        "func": func.name(),
        "tau": a.tau,
        "window": window,
        "segments": set.segments.len(),
        "re_zero": count(levinson_core::CurveKind::ReZero),
        "im_zero": count(levinson_core::CurveKind::ImZero),
        "failed_points": grid.failures,
        "out": a.out.display().to_string(),
    });
    out.emit(&obj, || format!("{} segments written to {} ({} failed points)", set.segments.len(), a.out.display(), grid.failures))?;
    Ok(EXIT_OK)
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    let cfg = build_config(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    let explicit_quad = cli.global.quad_panels.is_some() || cli.global.quad_nodes.is_some() || cli.global.quad_tol.is_some();
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| {
        let mut out = Out { w: &mut buf, format: cfg.format_or(OutputFormat::Json) };
        match &cli.cmd {
            Cmd::Eval(a) => cmd_eval(a, &cfg, &mut out),
            Cmd::Verify(v) => cmd_verify(v, &cfg, &mut out),
            Cmd::Gauss { a, b } => cmd_gauss(*a, *b, &mut out),
            Cmd::Vtable { tau } => cmd_vtable(tau, &cfg, &mut out),
            Cmd::Mordell { z, tau, rat } => cmd_mordell(z, tau, rat, &cfg, &mut out),
            Cmd::Xray(a) => cmd_xray(a, &cfg, explicit_quad, &mut out),
        }
    });
    stdout.write_all(&buf)?;
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_grammar() {
        assert_eq!(parse_tau("-3/2").unwrap(), TauParam::rational(-3, 2).unwrap());
        assert_eq!(parse_tau("-6/4").unwrap(), TauParam::rational(-3, 2).unwrap());
        assert_eq!(parse_tau("6/-4").unwrap(), TauParam::rational(-3, 2).unwrap());
        assert_eq!(parse_tau("-3").unwrap(), TauParam::rational(-3, 1).unwrap());
        assert_eq!(parse_tau("i").unwrap().value(), c(0.0, 1.0));
        assert_eq!(parse_tau("2i").unwrap().value(), c(0.0, 2.0));
        assert_eq!(parse_tau("1+i").unwrap().value(), c(1.0, 1.0));
        assert_eq!(parse_tau("0.3+0.7i").unwrap().value(), c(0.3, 0.7));
        assert_eq!(parse_tau("-1.5+2e-1i").unwrap().value(), c(-1.5, 0.2));
        assert_eq!(parse_tau("2+0i").unwrap(), TauParam::rational(2, 1).unwrap());
    }

    #[test]
    fn tau_rejections() {
        let msg = |s: &str| parse_tau(s).unwrap_err().to_string();
        assert!(msg("0").contains("nonzero"));
        assert!(msg("0/5").contains("nonzero"));
        assert!(msg("0+0i").contains("nonzero"));
        assert!(msg("1-2i").contains("upper half-plane"));
        assert!(msg("0.5").contains("rational"));
        assert!(parse_tau("1/0").is_err());
        assert!(parse_tau("abc").is_err());
    }

    #[test]
    fn config_bounds() {
        let ok = CliConfig::default();
        assert!(ok.validate().is_ok());
        assert!(CliConfig { quad_tol: 1e-15, ..ok }.validate().is_err());
        assert!(CliConfig { quad_tol: 1e-3, ..ok }.validate().is_err());
        assert!(CliConfig { quad_panels: 2000, quad_nodes: 1000, ..ok }.validate().is_err());
    }

    #[test]
    fn complex_and_window() {
        assert_eq!(parse_complex("0.5,-14").unwrap(), c(0.5, -14.0));
        assert!(parse_complex("0.5").is_err());
        let w = parse_window("-20,50,0,140", 4, 8).unwrap();
        assert_eq!((w.x0, w.x1, w.y0, w.y1), (-20.0, 50.0, 0.0, 140.0));
        assert!(parse_window("1,0,0,1", 4, 4).is_err());
    }
}
