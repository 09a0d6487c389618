//! Exact combinatorial kernel: Gaussian rationals, Stirling and Lah numbers,
//! generalized factorials and generalized Stirling numbers.

mod factorial;
mod gauss;
mod stirling;

pub use factorial::{binomial, factorial, gen_stirling, genfact, rising};
pub use gauss::{GaussRational, ParseGaussError};
pub use stirling::{lah, stirling1, stirling2, table, StirlingKind, StirlingTable};

pub(crate) use gauss::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatError {
    #[error("{what}({n}, {k}) is outside its index triangle")]
    IndexOutOfTriangle { what: &'static str, n: usize, k: usize },
}
