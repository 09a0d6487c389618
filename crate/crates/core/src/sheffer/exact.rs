use std::fmt;

use super::{Error, MeixnerParams};
use crate::combinat::GaussRational;
use crate::poly::Poly;

/// Meaning of coefficient `n` in an [`ExactPoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `z^n`
    Monomial,
    /// `(z|β)_n`
    FallingBeta,
    /// `s_n`
    Sheffer,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Monomial => "monomial",
            Basis::FallingBeta => "falling-beta",
            Basis::Sheffer => "sheffer",
        })
    }
}

/// Polynomial over [`GaussRational`] in a tagged basis. The falling-β and
/// Sheffer bases refer to the parameters the polynomial is used with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    basis: Basis,
    coeffs: Poly,
}

impl ExactPoly {
    pub fn new(basis: Basis, coeffs: Vec<GaussRational>) -> Self {
        Self { basis, coeffs: Poly::new(coeffs) }
    }

    pub fn from_poly(basis: Basis, coeffs: Poly) -> Self {
        Self { basis, coeffs }
    }

    pub fn zero(basis: Basis) -> Self {
        Self { basis, coeffs: Poly::zero() }
    }

    /// The `n`-th basis element.
    pub fn basis_element(basis: Basis, n: usize) -> Self {
        Self { basis, coeffs: Poly::monomial(n) }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        self.coeffs.coeffs()
    }

    pub fn coeff(&self, n: usize) -> GaussRational {
        self.coeffs.coeff(n)
    }

    /// Coefficient vector as a [`Poly`]; a genuine polynomial only in the monomial basis.
    pub fn as_poly(&self) -> &Poly {
        &self.coeffs
    }

    pub fn into_poly(self) -> Poly {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn expect_basis(&self, basis: Basis) -> Result<&Self, Error> {
        if self.basis == basis {
            Ok(self)
        } else {
            Err(Error::BasisMismatch { expected: basis, found: self.basis })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        other.expect_basis(self.basis)?;
        Ok(Self { basis: self.basis, coeffs: &self.coeffs + &other.coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        other.expect_basis(self.basis)?;
        Ok(Self { basis: self.basis, coeffs: &self.coeffs - &other.coeffs })
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self { basis: self.basis, coeffs: self.coeffs.scale(c) }
    }
}

fn recurrence(params: &MeixnerParams, offset: &GaussRational, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    if n == 0 {
        return out;
    }
    out.push(Poly::linear(-offset));
    for m in 1..n {
        let mg = GaussRational::from(m as i64);
        let shift = &(params.lambda() * &mg) + offset;
        let weight = &(params.sigma() * &mg) + &(&(params.eta() * &mg) * &GaussRational::from(m as i64 - 1));
        let next = &out[m].mul_linear(&-shift) - &out[m - 1].scale(&weight);
        out.push(next);
    }
    out
}

/// `s_0, ..., s_n` in the monomial basis, from
/// `s_{m+1} = (x - λm - l) s_m - (σm + ηm(m-1)) s_{m-1}`.
pub fn sheffer_polys(params: &MeixnerParams, n: usize) -> Vec<Poly> {
    recurrence(params, &params.ell(), n)
}

/// `p_0, ..., p_n`: the same recurrence with `l` replaced by `σ/α`.
pub fn shifted_polys(params: &MeixnerParams, n: usize) -> Vec<Poly> {
    recurrence(params, params.sigma_over_alpha(), n)
}

/// `s_n` in the monomial basis.
pub fn sheffer_poly(params: &MeixnerParams, n: usize) -> ExactPoly {
    let p = sheffer_polys(params, n).pop().expect("nonempty");
    ExactPoly::from_poly(Basis::Monomial, p)
}

/// `p_n` in the monomial basis.
pub fn shifted_poly(params: &MeixnerParams, n: usize) -> ExactPoly {
    let p = shifted_polys(params, n).pop().expect("nonempty");
    ExactPoly::from_poly(Basis::Monomial, p)
}

/// `∂⁻`: `s_n ↦ n s_{n-1}`.
pub fn lower(p: &ExactPoly) -> Result<ExactPoly, Error> {
    p.expect_basis(Basis::Sheffer)?;
    Ok(ExactPoly::from_poly(Basis::Sheffer, p.coeffs.derivative()))
}

/// `∂⁺`: `s_n ↦ s_{n+1}`.
pub fn raise(p: &ExactPoly) -> Result<ExactPoly, Error> {
    p.expect_basis(Basis::Sheffer)?;
    Ok(ExactPoly::from_poly(Basis::Sheffer, p.coeffs.mul_x()))
}

/// `A⁻ = σ∂⁻ + η∂⁺(∂⁻)²`.
pub fn annihilator(params: &MeixnerParams, p: &ExactPoly) -> Result<ExactPoly, Error> {
    let d = lower(p)?;
    let dd = lower(&d)?;
    let first = d.scale(params.sigma());
    let second = raise(&dd)?.scale(params.eta());
    first.add(&second)
}
