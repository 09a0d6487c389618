//! Orthogonal Sheffer sequences of the Meixner class: parameters, exact
//! polynomials via the three-term recurrence, ladder operators and changes of
//! basis between monomials, falling-β factorials and the sequence itself.

mod convert;
mod exact;
mod params;

pub use convert::{
    falling_beta_to_monomial, monomial_to_falling_beta, monomial_to_sheffer,
    series_coefficients_by_difference, sheffer_to_monomial, to_falling_beta, to_monomial,
    to_sheffer, ConversionTables,
};
pub use exact::{annihilator, lower, raise, sheffer_poly, sheffer_polys, shifted_poly, shifted_polys, Basis, ExactPoly};
pub use params::{validate_params, Class, MeixnerParams};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("expected a polynomial in the {expected} basis, got {found}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("need {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
