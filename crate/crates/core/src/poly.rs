//! Dense univariate polynomials over [`GaussRational`] in the monomial basis.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::combinat::{genfact, GaussRational};

/// Polynomial `Σ c_k z^k`, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<GaussRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(n: usize) -> Self {
        let mut c = vec![GaussRational::zero(); n + 1];
        c[n] = GaussRational::one();
        Self { coeffs: c }
    }

    /// `z + c`.
    pub fn linear(c: GaussRational) -> Self {
        Self::new(vec![c, GaussRational::one()])
    }

    /// `(z + shift | h)_n` expanded in monomials.
    pub fn genfact(shift: &GaussRational, h: &GaussRational, n: usize) -> Self {
        let mut p = Self::one();
        for j in 0..n {
            let root = shift - &(h * &GaussRational::from(j as i64));
            p = p.mul_linear(&root);
        }
        p
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `z`.
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(GaussRational::zero());
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }

    /// Multiplication by `(z + c)`.
    pub fn mul_linear(&self, c: &GaussRational) -> Self {
        &self.mul_x() + &self.scale(c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * &GaussRational::from(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, z: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex64();
        }
        acc
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussRational::to_complex64).collect()
    }

    /// `p(z + c)`.
    pub fn shift(&self, c: &GaussRational) -> Self {
        let lin = Self::linear(c.clone());
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// `(p(z + h) - p(z)) / h`, or the derivative when `h = 0`.
    pub fn h_difference(&self, h: &GaussRational) -> Self {
        if h.is_zero() {
            return self.derivative();
        }
        let inv = h.inv().expect("nonzero h");
        (&self.shift(h) - self).scale(&inv)
    }

    /// Coefficients of `self` in the basis `((z|h)_k)_k`.
    pub fn to_genfact_basis(&self, h: &GaussRational) -> Vec<GaussRational> {
        // repeated synthetic division by (z - j h): the remainder at step j is the
        // j-th Newton coefficient on the nodes 0, h, 2h, ...
        let mut rest = self.coeffs.clone();
        let mut out = Vec::with_capacity(rest.len());
        let mut j = 0i64;
        while !rest.is_empty() {
            let node = h * &GaussRational::from(j);
            let n = rest.len();
            let mut quotient = vec![GaussRational::zero(); n - 1];
            let mut carry = GaussRational::zero();
            for i in (0..n).rev() {
                let v = &rest[i] + &(&carry * &node);
                if i == 0 {
                    out.push(v);
                } else {
                    quotient[i - 1] = v.clone();
                    carry = v;
                }
            }
            rest = quotient;
            j += 1;
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Inverse of [`Poly::to_genfact_basis`].
    pub fn from_genfact_basis(coeffs: &[GaussRational], h: &GaussRational) -> Self {
        let mut acc = Self::zero();
        let mut basis = Self::one();
        for (j, c) in coeffs.iter().enumerate() {
            acc = &acc + &basis.scale(c);
            basis = basis.mul_linear(&-(h * &GaussRational::from(j as i64)));
        }
        acc
    }

    /// Evaluates `(shift|h)_n` without building the polynomial.
    pub fn genfact_value(z: &GaussRational, h: &GaussRational, n: usize) -> GaussRational {
        genfact(z, h, n)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![GaussRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> GaussRational {
        GaussRational::ratio(p, r)
    }

    #[test]
    fn genfact_poly_matches_values() {
        let h = GaussRational::from_integers(1, 2);
        let shift = q(1, 3);
        for n in 0..6 {
            let p = Poly::genfact(&shift, &h, n);
            for z in [q(0, 1), q(5, 2), GaussRational::from_integers(-1, 1)] {
                assert_eq!(p.eval(&z), genfact(&(&z + &shift), &h, n));
            }
        }
    }

    #[test]
    fn genfact_basis_round_trip() {
        let p = Poly::new(vec![q(1, 2), q(-3, 1), GaussRational::i(), q(7, 5)]);
        for h in [q(1, 1), q(-2, 3), GaussRational::from_integers(1, 1), q(0, 1)] {
            let c = p.to_genfact_basis(&h);
            assert_eq!(Poly::from_genfact_basis(&c, &h), p);
        }
        // z^2 = (z|1)_2 + (z|1)_1
        let c = Poly::monomial(2).to_genfact_basis(&q(1, 1));
        assert_eq!(c, vec![q(0, 1), q(1, 1), q(1, 1)]);
    }

    #[test]
    fn h_difference_lowers_genfact() {
        let h = q(3, 2);
        for n in 1..6 {
            let p = Poly::genfact(&GaussRational::zero(), &h, n);
            let lowered = Poly::genfact(&GaussRational::zero(), &h, n - 1).scale(&GaussRational::from(n as i64));
            assert_eq!(p.h_difference(&h), lowered);
        }
        assert_eq!(Poly::monomial(3).h_difference(&GaussRational::zero()), Poly::monomial(2).scale(&q(3, 1)));
    }

    #[test]
    fn shift_composes() {
        let p = Poly::new(vec![q(1, 1), q(2, 1), q(3, 1)]);
        let a = q(1, 2);
        let b = GaussRational::from_integers(0, -1);
        assert_eq!(p.shift(&a).shift(&b), p.shift(&(&a + &b)));
        assert_eq!(p.shift(&a).eval(&q(0, 1)), p.eval(&a));
    }
}
