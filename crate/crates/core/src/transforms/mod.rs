//! Coherent states, the transforms `𝓢`, `𝕋` and `𝕊 = 𝕋∘𝓢`, the Fock space
//! `𝔽_{η,σ}`, and the probabilistic representations of `𝕊`.
//!
//! Every series here carries an implementation-derived tail bound; see the
//! individual functions for the majorants used.

mod coherent;
mod domain;
mod fock;
mod maps;
mod montecarlo;
mod series;

pub use coherent::{
    annihilator_eigen_check, coherent_e, coherent_e_closed, coherent_truncation, curly_e, curly_e_series,
};
pub use domain::{in_domain, in_domain_exact, Region};
pub use fock::{fock_inner, fock_kernel, kernel_gram, FockElement};
pub use maps::{
    eval_sheffer, isometry_check, rho_expectation, transform_curly_s, transform_curly_s_exact,
    transform_curly_s_by_moments, transform_s, transform_s_exact, transform_s_quadrature, transform_t,
    transform_t_exact, transform_t_poisson, v_integral_action, v_symbolic,
};
pub use montecarlo::{monte_carlo_rho, MonteCarloEstimate};
pub use series::SeriesEval;

use crate::{measures, sheffer, weylalg};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("tolerance {tol:e} not reached within {terms} terms (partial sum {best})")]
    Unreachable { tol: f64, terms: usize, best: num_complex::Complex64 },
    #[error("z = {re}{im:+}i is outside the {region} region: {predicate} violated")]
    OutsideDomain { region: Region, predicate: &'static str, re: f64, im: f64 },
    #[error("x = {0} is outside the support of the orthogonality measure")]
    OutsideSupport(f64),
    #[error("truncation order must be at least 1")]
    Order,
    #[error("Fock elements over different spaces: (eta, sigma) = ({0}, {1}) vs ({2}, {3})")]
    SpaceMismatch(f64, f64, f64, f64),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Measure(#[from] measures::Error),
    #[error(transparent)]
    Sheffer(#[from] sheffer::Error),
    #[error(transparent)]
    Operator(#[from] weylalg::Error),
}
