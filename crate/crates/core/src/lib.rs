//! Orthogonal Sheffer sequences of the Meixner class with an exact symbolic
//! layer (Gaussian rationals, Stirling numbers, Weyl-algebra normal ordering)
//! and a numeric layer (measures, quadrature, generalized Segal–Bargmann
//! transforms).
//!
//! The exact layer never rounds. The numeric layer uses `f64` / [`Complex64`]
//! and reports error estimates alongside values.
//!
//! [`Complex64`]: num_complex::Complex64

pub mod combinat;
pub mod measures;
pub mod par;
pub mod poly;
pub mod sheffer;
pub mod transforms;
pub mod weylalg;

pub use combinat::GaussRational;
pub use poly::Poly;
