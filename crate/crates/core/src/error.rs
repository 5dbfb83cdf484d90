use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical consistency check failed: {0}")]
    Consistency(String),
    #[error("integrand not finite at node {re}{im:+}i")]
    NodeSingularity { re: f64, im: f64 },
    #[error("quadrature did not converge (estimate {estimate:e}, tolerance {tol:e})")]
    Convergence { estimate: f64, tol: f64 },
    #[error("integrand has no Gaussian decay along the contour (rotate it)")]
    NoDecay,
    #[error("contour configuration: {0}")]
    Contour(String),
    #[error("tau too close to the real axis: theta series needs more than {0} terms")]
    NearRealAxis(usize),
    #[error("{0} is outside the validated range")]
    OutOfRange(String),
    #[error("removable singularity at z = {re}{im:+}i; perturb z")]
    Removable { re: f64, im: f64 },
    #[error("singular denominator (|d| = {0:e})")]
    SingularDenominator(f64),
    #[error("{failed} of {total} grid points failed")]
    GridFailures { failed: usize, total: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pole(z: num_complex::Complex64) -> Error {
    Error::Pole { re: z.re, im: z.im }
}
