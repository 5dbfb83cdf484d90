//! Quadratic Gauss sums S(a,b) and the finite Fourier coefficients V_τ(n) of
//! u_τ(m) = (-1)^m e^{πiτm²} for rational τ = a/b.
//!
//! Every root of unity is evaluated from an angle reduced in integer arithmetic.

use crate::error::{Error, Result};
use crate::C64;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// e^{2πi num/den}, exact on multiples of π/4.
pub fn unit_root(num: i128, den: i128) -> C64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den);
    if (8 * r) % den == 0 {
        let h = 8 * r / den;
        let q = FRAC_1_SQRT_2;
        return match h {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(q, q),
            2 => C64::new(0.0, 1.0),
            3 => C64::new(-q, q),
            4 => C64::new(-1.0, 0.0),
            5 => C64::new(-q, -q),
            6 => C64::new(0.0, -1.0),
            _ => C64::new(q, -q),
        };
    }
    // Fold into (-1/2, 1/2] of a turn so the argument to sin/cos stays small.
    let mut x = r as f64 / den as f64;
    if 2 * r > den {
        x = (r - den) as f64 / den as f64;
    }
    let (s, c) = (2.0 * PI * x).sin_cos();
    C64::new(c, s)
}

/// τ = a/b with gcd(|a|, b) = 1, b ≥ 1, a ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedRational {
    a: i64,
    b: i64,
}

impl ReducedRational {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b == 0 {
            return Err(Error::Domain("denominator must be nonzero".into()));
        }
        if a == 0 {
            return Err(Error::Domain("tau must be nonzero".into()));
        }
        let g = gcd(a, b);
        let sign = if b < 0 { -1 } else { 1 };
        Ok(ReducedRational { a: sign * a / g, b: sign * b / g })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.b as f64
    }

    pub fn neg(&self) -> Self {
        ReducedRational { a: -self.a, b: self.b }
    }

    /// 1/τ, which for real τ is also 1/conj(τ).
    pub fn recip(&self) -> Self {
        ReducedRational::new(self.b, self.a).expect("a is nonzero")
    }

    pub fn is_odd_numerator(&self) -> bool {
        self.a % 2 != 0
    }

    /// Period of u_τ and V_τ: b for odd a, 2b for even a.
    pub fn period(&self) -> i64 {
        if self.is_odd_numerator() {
            self.b
        } else {
            2 * self.b
        }
    }
}

impl std::fmt::Display for ReducedRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b == 1 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.b)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MagnitudeClass {
    Zero,
    SqrtB,
    /// |S| = sqrt(2b), occurring for b ≡ 0 mod 4.
    #[serde(rename = "sqrt_2b")]
    SqrtTwoB,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussSumValue {
    pub value: C64,
    pub magnitude_class: MagnitudeClass,
    /// h with value/|value| = e^{πih/4}.
    pub unity_power: Option<u8>,
    /// gcd multiplier d from S(a,b) = d·S(a/d, b/d).
    pub multiplier: i64,
}

impl GaussSumValue {
    /// Magnitude of the reduced sum implied by the class.
    pub fn class_magnitude(&self, reduced_b: i64) -> f64 {
        match self.magnitude_class {
            MagnitudeClass::Zero => 0.0,
            MagnitudeClass::SqrtB => (reduced_b as f64).sqrt(),
            MagnitudeClass::SqrtTwoB => (2.0 * reduced_b as f64).sqrt(),
        }
    }
}

/// Literal S(a,b) = Σ_{n<b} e^{2πi a n²/b}.
pub fn gauss_sum_direct(a: i64, b: i64) -> C64 {
    assert!(b >= 1, "b must be positive");
    let (a, b) = (a as i128, b as i128);
    (0..b).map(|n| unit_root(a * n * n, b)).sum()
}

/// Classify S(a,b): reduce by d = gcd, then zero for b ≡ 2 (4), else |S| = √b (b odd) or √(2b) (4 | b).
pub fn gauss_sum_classify(a: i64, b: i64) -> Result<GaussSumValue> {
    if b <= 0 {
        return Err(Error::Domain(format!("gauss sum modulus must be positive, got {b}")));
    }
    let d = if a == 0 { b } else { gcd(a, b) };
    let (ar, br) = (a / d, b / d);
    let reduced = gauss_sum_direct(ar, br);
    let value = reduced * d as f64;
    let class = if br % 4 == 2 {
        MagnitudeClass::Zero
    } else if br % 2 == 1 {
        MagnitudeClass::SqrtB
    } else {
        MagnitudeClass::SqrtTwoB
    };
    let mut g = GaussSumValue { value, magnitude_class: class, unity_power: None, multiplier: d };
    if class != MagnitudeClass::Zero {
        let mag = g.class_magnitude(br);
        let unit = reduced / mag;
        if (unit.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Consistency(format!("|S({ar},{br})| = {} disagrees with class", reduced.norm())));
        }
        let h = (unit.arg() / (PI / 4.0)).round().rem_euclid(8.0) as u8;
        g.unity_power = Some(h);
    }
    Ok(g)
}

/// Value reconstructed from the classification alone.
pub fn gauss_sum_reconstruct(g: &GaussSumValue, b: i64) -> C64 {
    let br = b / g.multiplier;
    match g.unity_power {
        None => C64::new(0.0, 0.0),
        Some(h) => unit_root(h as i128, 8) * g.class_magnitude(br) * g.multiplier as f64,
    }
}

/// u_τ(m) = (-1)^m e^{πi a m²/b} = e^{2πi (a m² + b m)/(2b)}.
pub fn u_seq(tau: ReducedRational, m: i64) -> C64 {
    let (a, b, m) = (tau.a as i128, tau.b as i128, m as i128);
    unit_root(a * m * m + b * m, 2 * b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    OddNumerator,
    EvenNumerator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VTable {
    pub tau: ReducedRational,
    pub period: i64,
    pub values: Vec<C64>,
    pub parity: Parity,
}

impl VTable {
    /// V(n) for any integer n.
    pub fn get(&self, n: i64) -> C64 {
        self.values[n.rem_euclid(self.period) as usize]
    }

    /// u_τ(m) rebuilt by the forward expansion u(m) = b^{-1/2} Σ_{k mod P} V(k) e^{2πikm/P}.
    pub fn reconstruct_u(&self, m: i64) -> C64 {
        let p = self.period as i128;
        let sum: C64 = (0..p).map(|k| self.values[k as usize] * unit_root(k * m as i128, p)).sum();
        sum / (self.tau.b as f64).sqrt()
    }

    /// Cosine coefficients over the representatives k = 0..=P/2 of k mod P:
    /// Σ_{k mod P} V(k) e^{2πikx/P} = Σ_k c_k cos(2πkx/P) when V is even in k.
    pub fn cosine_coefficients(&self) -> Vec<(C64, f64)> {
        let p = self.period;
        (0..=p / 2)
            .map(|k| {
                let c = if k == 0 || 2 * k == p { self.get(k) } else { self.get(k) + self.get(p - k) };
                (c, 2.0 * PI * k as f64 / p as f64)
            })
            .collect()
    }
}

/// V_τ(n) from the inverse sums: odd a, b^{-1/2} Σ_{m mod b}; even a, (2√b)^{-1} Σ_{m mod 2b}; kernel u(m) e^{-2πinm/P}.
pub fn v_table(tau: ReducedRational) -> VTable {
    let (a, b) = (tau.a as i128, tau.b as i128);
    let odd = tau.is_odd_numerator();
    let p = tau.period() as i128;
    let scale = if odd { 1.0 / (b as f64).sqrt() } else { 0.5 / (b as f64).sqrt() };
    let values = (0..p)
        .map(|n| {
            // u(m) e^{-2πinm/P} = e^{2πi (a m² + b m - 2bnm/P)/(2b)}
            let shift = if odd { 2 * n } else { n };
            let s: C64 = (0..p).map(|m| unit_root(a * m * m + b * m - shift * m, 2 * b)).sum();
            s * scale
        })
        .collect();
    VTable {
        tau,
        period: p as i64,
        values,
        parity: if odd { Parity::OddNumerator } else { Parity::EvenNumerator },
    }
}

/// Closed form V_{1/b}(n) = (-1)^n e^{πi/4} e^{-πib/4} e^{-πin²/b}.
pub fn v_remark_formula(b: i64, n: i64) -> C64 {
    let (b, n) = (b as i128, n as i128);
    unit_root(4 * b * n + b - b * b - 4 * n * n, 8 * b)
}
