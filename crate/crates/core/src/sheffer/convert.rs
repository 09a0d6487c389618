//! Changes of basis. The monomial/sequence conversions use the closed
//! expansions in terms of Stirling and generalized Stirling numbers:
//!
//! `z^n = Σ_i [Σ_{k=i..n} (α-β)^{n-k} S(n,k) S(k,i;-β,σ/α)] p_i(z)` and
//! `p_n(z) = Σ_i [Σ_{k=i..n} S(n,k;β,-σ/α) (α-β)^{k-i} s(k,i)] z^i`,
//!
//! where `p_n` is the sequence with recurrence offset `σ/α`, so that
//! `s_n(x) = p_n(x + c)` with `c = σ/α - l`.

use num_traits::Zero;

use super::{Basis, Error, ExactPoly, MeixnerParams};
use crate::combinat::{binomial, factorial, gen_stirling, stirling1, stirling2, GaussRational};
use crate::poly::Poly;

/// Lower-triangular matrices relating monomials to `p_n` up to a fixed degree.
#[derive(Debug, Clone)]
pub struct ConversionTables {
    shift: GaussRational,
    /// `monomial_in_p[n][i]`: coefficient of `p_i` in `z^n`.
    monomial_in_p: Vec<Vec<GaussRational>>,
    /// `p_in_monomial[n][i]`: coefficient of `z^i` in `p_n`.
    p_in_monomial: Vec<Vec<GaussRational>>,
}

fn stirling_q(first: bool, n: usize, k: usize) -> GaussRational {
    let v = if first { stirling1(n, k) } else { stirling2(n, k) };
    GaussRational::from(v.expect("k <= n"))
}

impl ConversionTables {
    pub fn new(params: &MeixnerParams, max_degree: usize) -> Self {
        let diff = params.alpha() - params.beta();
        let neg_beta = -params.beta();
        let soa = params.sigma_over_alpha();
        let neg_soa = -soa;
        let n = max_degree;
        let diff_pow: Vec<GaussRational> = (0..=n).map(|e| diff.pow(e as u32)).collect();

        // S(k, i; -β, σ/α) and S(k, i; β, -σ/α)
        let gen = |h: &GaussRational, r: &GaussRational| -> Vec<Vec<GaussRational>> {
            (0..=n)
                .map(|k| (0..=k).map(|i| gen_stirling(k, i, h, r).expect("i <= k")).collect())
                .collect()
        };
        let g_up = gen(&neg_beta, soa);
        let g_down = gen(params.beta(), &neg_soa);

        let mut monomial_in_p = Vec::with_capacity(n + 1);
        let mut p_in_monomial = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut up = Vec::with_capacity(m + 1);
            let mut down = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let mut a = GaussRational::zero();
                let mut b = GaussRational::zero();
                for k in i..=m {
                    a += &(&diff_pow[m - k] * &stirling_q(false, m, k)) * &g_up[k][i];
                    b += &(&g_down[m][k] * &diff_pow[k - i]) * &stirling_q(true, k, i);
                }
                up.push(a);
                down.push(b);
            }
            monomial_in_p.push(up);
            p_in_monomial.push(down);
        }
        Self { shift: params.shift(), monomial_in_p, p_in_monomial }
    }

    pub fn max_degree(&self) -> usize {
        self.monomial_in_p.len() - 1
    }

    /// Coefficients of `z^n` in `p_0, ..., p_n`.
    pub fn monomial_in_p(&self, n: usize) -> &[GaussRational] {
        &self.monomial_in_p[n]
    }

    /// Monomial coefficients of `p_n`, ascending.
    pub fn p_in_monomial(&self, n: usize) -> &[GaussRational] {
        &self.p_in_monomial[n]
    }

    fn check(&self, p: &Poly) {
        let d = p.degree().unwrap_or(0);
        assert!(d <= self.max_degree(), "degree {d} exceeds table size {}", self.max_degree());
    }

    /// Sheffer coefficients of a polynomial given in monomials.
    pub fn monomial_to_sheffer(&self, f: &Poly) -> Poly {
        self.check(f);
        let g = f.shift(&-&self.shift);
        let mut out = vec![GaussRational::zero(); g.coeffs().len()];
        for (n, gn) in g.coeffs().iter().enumerate() {
            if gn.is_zero() {
                continue;
            }
            for (i, t) in self.monomial_in_p[n].iter().enumerate() {
                out[i] += gn * t;
            }
        }
        Poly::new(out)
    }

    /// Monomial coefficients of `Σ c_n s_n`.
    pub fn sheffer_to_monomial(&self, c: &Poly) -> Poly {
        self.check(c);
        let mut out = vec![GaussRational::zero(); c.coeffs().len()];
        for (n, cn) in c.coeffs().iter().enumerate() {
            if cn.is_zero() {
                continue;
            }
            for (i, t) in self.p_in_monomial[n].iter().enumerate() {
                out[i] += cn * t;
            }
        }
        Poly::new(out).shift(&self.shift)
    }
}

/// Falling-β coefficients from `z^n = Σ_k β^{n-k} S(n,k) (z|β)_k`.
pub fn monomial_to_falling_beta(beta: &GaussRational, f: &Poly) -> Poly {
    let mut out = vec![GaussRational::zero(); f.coeffs().len()];
    for (n, fnc) in f.coeffs().iter().enumerate() {
        if fnc.is_zero() {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(n + 1) {
            *slot += &(fnc * &beta.pow((n - k) as u32)) * &stirling_q(false, n, k);
        }
    }
    Poly::new(out)
}

/// Monomial coefficients from `(z|β)_n = Σ_k β^{n-k} s(n,k) z^k`.
pub fn falling_beta_to_monomial(beta: &GaussRational, c: &Poly) -> Poly {
    let mut out = vec![GaussRational::zero(); c.coeffs().len()];
    for (n, cn) in c.coeffs().iter().enumerate() {
        if cn.is_zero() {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(n + 1) {
            *slot += &(cn * &beta.pow((n - k) as u32)) * &stirling_q(true, n, k);
        }
    }
    Poly::new(out)
}

pub fn monomial_to_sheffer(params: &MeixnerParams, f: &Poly) -> Poly {
    ConversionTables::new(params, f.degree().unwrap_or(0)).monomial_to_sheffer(f)
}

pub fn sheffer_to_monomial(params: &MeixnerParams, c: &Poly) -> Poly {
    ConversionTables::new(params, c.degree().unwrap_or(0)).sheffer_to_monomial(c)
}

pub fn to_monomial(params: &MeixnerParams, p: &ExactPoly) -> ExactPoly {
    let poly = match p.basis() {
        Basis::Monomial => p.as_poly().clone(),
        Basis::FallingBeta => falling_beta_to_monomial(params.beta(), p.as_poly()),
        Basis::Sheffer => sheffer_to_monomial(params, p.as_poly()),
    };
    ExactPoly::from_poly(Basis::Monomial, poly)
}

pub fn to_sheffer(params: &MeixnerParams, p: &ExactPoly) -> ExactPoly {
    let poly = match p.basis() {
        Basis::Sheffer => p.as_poly().clone(),
        _ => monomial_to_sheffer(params, to_monomial(params, p).as_poly()),
    };
    ExactPoly::from_poly(Basis::Sheffer, poly)
}

pub fn to_falling_beta(params: &MeixnerParams, p: &ExactPoly) -> ExactPoly {
    let poly = match p.basis() {
        Basis::FallingBeta => p.as_poly().clone(),
        _ => monomial_to_falling_beta(params.beta(), to_monomial(params, p).as_poly()),
    };
    ExactPoly::from_poly(Basis::FallingBeta, poly)
}

/// `n`-th falling-β coefficient of `φ` from its samples `φ(βk)`, `k = 0..=n`:
/// `f_n = (-1)^n/(n! β^n) Σ_k (-1)^k C(n,k) φ(βk)`.
pub fn series_coefficients_by_difference(
    values: &[GaussRational],
    beta: &GaussRational,
    n: usize,
) -> Result<GaussRational, Error> {
    if beta.is_zero() {
        return Err(Error::ZeroBeta);
    }
    if values.len() <= n {
        return Err(Error::TooFewSamples { needed: n + 1, got: values.len() });
    }
    let mut acc = GaussRational::zero();
    for (k, v) in values.iter().take(n + 1).enumerate() {
        let term = v * &GaussRational::from(binomial(n, k));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let mut denom = GaussRational::from(factorial(n)) * beta.pow(n as u32);
    if n % 2 == 1 {
        denom = -denom;
    }
    Ok(&acc / &denom)
}
