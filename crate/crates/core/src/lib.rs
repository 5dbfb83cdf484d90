//! Riemann auxiliary functions R_τ(s), Levinson pairs, the Mordell integral,
//! quadratic Gauss sums and the supporting special functions, in double precision.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gauss_fourier;
pub mod levinson;
pub mod mittag;
pub mod mordell;
pub mod quad;
pub mod special;
pub mod xray;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use gauss_fourier::{GaussSumValue, MagnitudeClass, Parity, ReducedRational, VTable};
pub use levinson::{ExampleTag, LevinsonPair, PairProvenance, RationalVariant, TauParam};
pub use quad::{ContourSpec, QuadConfig, QuadResult};
pub use xray::{CurveKind, FuncId, Grid, Segment, Window, XRaySegmentSet};

/// Complex number from real and imaginary parts.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
