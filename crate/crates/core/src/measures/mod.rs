//! Numeric layer for the orthogonality measures, their complex-parameter
//! deformations, the Poisson measure with complex intensity and the Fock
//! measure, together with the special functions and quadrature they need.

mod checks;
pub mod quad;
pub mod special;
mod spec;

pub use checks::{
    falling_moment_check, fock_density_mixture, fock_moment_check, mellin_convolution_check, moment_check,
    orthogonality_check, orthogonality_gram, polynomial_integral, MomentCheck,
};
pub use quad::{CompensatedSum, QuadConfig, QuadResult};
pub use special::{bessel_k, bessel_k_series, complex_gamma, ln_gamma};
pub use spec::{density, integrate, poisson_expect, MeasureSpec};
pub(crate) use spec::parameter_in_domain;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma function pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },
    #[error("{0}")]
    Domain(String),
    #[error("point {0} is outside the support")]
    OutsideSupport(String),
    #[error("no convergence after {evaluations} evaluations: best estimate {re}{im:+}i, error estimate {error:e}")]
    NotConverged { re: f64, im: f64, error: f64, evaluations: usize },
    #[error("series terms do not decay: {0}")]
    Divergent(String),
}

impl Error {
    /// Best estimate carried by a non-convergence error.
    pub fn best_estimate(&self) -> Option<num_complex::Complex64> {
        match self {
            Error::NotConverged { re, im, .. } => Some(num_complex::Complex64::new(*re, *im)),
            _ => None,
        }
    }
}
