//! Concrete operators acting on exact polynomials.
//!
//! Monomial-basis operators act on `f(z)`; Sheffer-basis operators act on the
//! coefficient vector of `f = Σ c_n s_n`.

use num_traits::Zero;

use super::{Error, Gen, NormalForm};
use crate::combinat::{binomial, genfact, rising, stirling2, GaussRational};
use crate::poly::Poly;
use crate::sheffer::{self, Basis, ExactPoly, MeixnerParams};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConcreteOp {
    /// multiplication by `z`
    Z,
    /// `d/dz`
    D,
    /// `D_h f = (f(z+h) - f(z))/h`, `D_0 = D`
    DH(GaussRational),
    /// `Z + σ/α`
    ScriptU,
    /// `αD_β + 1`
    ScriptV,
    /// `Z + βZD + σ/α`
    BlackU,
    /// `αD + 1`
    BlackV,
    /// `∂⁺ + β∂⁺∂⁻ + σ/α` (Sheffer basis)
    RawU,
    /// `α∂⁻ + 1` (Sheffer basis)
    RawV,
    /// `Z + λZD + σ/α + σD + ηZD²`
    Rho,
    /// `(Z + σ/α)(αD_β + 1)`
    ScriptR,
    /// `σ∂⁻ + η∂⁺(∂⁻)²` (Sheffer basis)
    Annihilator,
    /// `∂⁺` (Sheffer basis)
    Raise,
    /// `∂⁻` (Sheffer basis)
    Lower,
}

impl ConcreteOp {
    /// Basis the operator expects its argument (and returns its value) in.
    pub fn natural_basis(&self) -> Basis {
        match self {
            ConcreteOp::RawU | ConcreteOp::RawV | ConcreteOp::Annihilator | ConcreteOp::Raise | ConcreteOp::Lower => {
                Basis::Sheffer
            }
            _ => Basis::Monomial,
        }
    }
}

fn mono(params: &MeixnerParams, op: &ConcreteOp, f: &Poly) -> Poly {
    let soa = params.sigma_over_alpha();
    match op {
        ConcreteOp::Z => f.mul_x(),
        ConcreteOp::D => f.derivative(),
        ConcreteOp::DH(h) => f.h_difference(h),
        ConcreteOp::ScriptU => f.mul_linear(soa),
        ConcreteOp::ScriptV => &f.h_difference(params.beta()).scale(params.alpha()) + f,
        ConcreteOp::BlackU => {
            let zd = f.derivative().mul_x();
            &f.mul_linear(soa) + &zd.scale(params.beta())
        }
        ConcreteOp::BlackV => &f.derivative().scale(params.alpha()) + f,
        ConcreteOp::Rho => {
            let d = f.derivative();
            let zd = d.mul_x();
            let zdd = d.derivative().mul_x();
            let mut acc = f.mul_linear(soa);
            acc = &acc + &zd.scale(params.lambda());
            acc = &acc + &d.scale(params.sigma());
            &acc + &zdd.scale(params.eta())
        }
        ConcreteOp::ScriptR => mono(params, &ConcreteOp::ScriptU, &mono(params, &ConcreteOp::ScriptV, f)),
        _ => unreachable!("sheffer-basis operator"),
    }
}

fn seq(params: &MeixnerParams, op: &ConcreteOp, p: &ExactPoly) -> Result<ExactPoly, sheffer::Error> {
    match op {
        ConcreteOp::Raise => sheffer::raise(p),
        ConcreteOp::Lower => sheffer::lower(p),
        ConcreteOp::Annihilator => sheffer::annihilator(params, p),
        ConcreteOp::RawU => {
            let up = sheffer::raise(p)?;
            let number = sheffer::raise(&sheffer::lower(p)?)?.scale(params.beta());
            up.add(&number)?.add(&p.scale(params.sigma_over_alpha()))
        }
        ConcreteOp::RawV => sheffer::lower(p)?.scale(params.alpha()).add(p),
        _ => unreachable!("monomial-basis operator"),
    }
}

/// Applies `op` to `p`, which must be in `op.natural_basis()`.
pub fn apply_concrete(params: &MeixnerParams, op: &ConcreteOp, p: &ExactPoly) -> Result<ExactPoly, Error> {
    let basis = op.natural_basis();
    p.expect_basis(basis)?;
    match basis {
        Basis::Monomial => Ok(ExactPoly::from_poly(Basis::Monomial, mono(params, op, p.as_poly()))),
        _ => Ok(seq(params, op, p)?),
    }
}

/// A pair of concrete operators satisfying `[V, U] = βV + (α - β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    /// `U`, `V` on Sheffer coefficients.
    Sheffer,
    /// `Z + σ/α`, `αD_β + 1` on monomials.
    FallingBeta,
    /// `Z + βZD + σ/α`, `αD + 1` on monomials.
    Fock,
}

impl Realization {
    pub const ALL: [Realization; 3] = [Realization::Sheffer, Realization::FallingBeta, Realization::Fock];

    pub fn ops(self) -> (ConcreteOp, ConcreteOp) {
        match self {
            Realization::Sheffer => (ConcreteOp::RawU, ConcreteOp::RawV),
            Realization::FallingBeta => (ConcreteOp::ScriptU, ConcreteOp::ScriptV),
            Realization::Fock => (ConcreteOp::BlackU, ConcreteOp::BlackV),
        }
    }

    pub fn basis(self) -> Basis {
        self.ops().0.natural_basis()
    }
}

/// Applies the word (rightmost letter first) to `p`.
pub fn apply_word(params: &MeixnerParams, real: Realization, word: &[Gen], p: &ExactPoly) -> Result<ExactPoly, Error> {
    let (u, v) = real.ops();
    let mut acc = p.clone();
    for g in word.iter().rev() {
        acc = apply_concrete(params, if *g == Gen::U { &u } else { &v }, &acc)?;
    }
    Ok(acc)
}

/// `Σ c_{jk} U^j V^k p` in the given realization.
pub fn apply_normal_form(
    params: &MeixnerParams,
    real: Realization,
    nf: &NormalForm,
    p: &ExactPoly,
) -> Result<ExactPoly, Error> {
    let (u, v) = real.ops();
    p.expect_basis(real.basis())?;
    let max_k = nf.iter().map(|(&(_, k), _)| k).max().unwrap_or(0);
    let mut v_pows = vec![p.clone()];
    for _ in 0..max_k {
        let next = apply_concrete(params, &v, v_pows.last().expect("nonempty"))?;
        v_pows.push(next);
    }
    let mut acc = ExactPoly::zero(real.basis());
    for (&(j, k), c) in nf.iter() {
        let mut term = v_pows[k as usize].clone();
        for _ in 0..j {
            term = apply_concrete(params, &u, &term)?;
        }
        acc = acc.add(&term.scale(c))?;
    }
    Ok(acc)
}

/// `𝓡ⁿ1 = Σ_{k} (α-β)^{n-k} S(n,k) (z + σ/α | -β)_k` in monomials.
pub fn script_r_on_one(params: &MeixnerParams, n: usize) -> ExactPoly {
    let diff = params.alpha() - params.beta();
    let neg_beta = -params.beta();
    let mut acc = Poly::zero();
    for k in 0..=n {
        let w = diff.pow((n - k) as u32) * GaussRational::from(stirling2(n, k).expect("k <= n"));
        if w.is_zero() {
            continue;
        }
        acc = &acc + &Poly::genfact(params.sigma_over_alpha(), &neg_beta, k).scale(&w);
    }
    ExactPoly::from_poly(Basis::Monomial, acc)
}

/// `Φ(zⁿ) = Σ_k (α-β)^{n-k} S(n,k) (σ/α|-β)_k`: the `n`-th moment of the
/// orthogonality measure, or for Meixner-II of the shifted variable `x + σ/α`.
pub fn moments(params: &MeixnerParams, n: usize) -> GaussRational {
    let diff = params.alpha() - params.beta();
    let neg_beta = -params.beta();
    (0..=n)
        .map(|k| {
            diff.pow((n - k) as u32)
                * GaussRational::from(stirling2(n, k).expect("k <= n"))
                * genfact(params.sigma_over_alpha(), &neg_beta, k)
        })
        .sum()
}

/// `∫ xⁿ dμ` for every class; Meixner-II undoes the shift binomially.
pub fn raw_moment(params: &MeixnerParams, n: usize) -> GaussRational {
    let c = params.shift();
    if c.is_zero() {
        return moments(params, n);
    }
    let neg_c = -&c;
    (0..=n)
        .map(|j| GaussRational::from(binomial(n, j)) * neg_c.pow((n - j) as u32) * moments(params, j))
        .sum()
}

/// `βⁿ (σ/η)^{(n)}`: the integral of `(x|α-β)_n` (of `(x + σ/α|α-β)_n` for Meixner-II).
pub fn falling_alpha_beta_moment(params: &MeixnerParams, n: usize) -> GaussRational {
    params.beta().pow(n as u32) * rising(&(params.sigma() / params.eta()), n)
}
