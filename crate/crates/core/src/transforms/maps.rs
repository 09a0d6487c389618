//! The transforms `𝕊`, `𝓢`, `𝕋` on polynomials, exactly and numerically, and
//! the integral representation of `V = α∂⁻ + 1`.

use std::cell::RefCell;

use num_complex::Complex64;

use super::coherent::{coherent_e, Numeric};
use super::domain::require;
use super::series::SeriesEval;
use super::{Error, Region};
use crate::combinat::{stirling2, GaussRational};
use crate::measures::{integrate, poisson_expect, CompensatedSum, MeasureSpec, QuadConfig, QuadResult};
use crate::poly::Poly;
use crate::sheffer::{to_falling_beta, to_monomial, to_sheffer, Basis, Class, ExactPoly, MeixnerParams};
use crate::weylalg::{apply_concrete, ConcreteOp};

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Numeric value of `Σ c_n s_n(x)` by the three-term recurrence.
pub fn eval_sheffer(params: &MeixnerParams, coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let p = Numeric::new(params);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    let mut sum = CompensatedSum::new();
    for (n, c) in coeffs.iter().enumerate() {
        sum.add(c * cur);
        let nf = n as f64;
        let next = (x - p.lambda * nf - p.ell) * cur - (p.sigma * nf + p.eta * nf * (nf - 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    sum.value()
}

/// Runs a fallible evaluation inside an infallible integrand, keeping the
/// first error.
struct ErrorSlot(RefCell<Option<Error>>);

impl ErrorSlot {
    fn new() -> Self {
        Self(RefCell::new(None))
    }

    fn catch(&self, r: Result<Complex64, Error>) -> Complex64 {
        r.unwrap_or_else(|e| {
            self.0.borrow_mut().get_or_insert(e);
            Complex64::new(f64::NAN, 0.0)
        })
    }

    fn finish<T>(self, r: Result<T, crate::measures::Error>) -> Result<T, Error> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => Ok(r?),
        }
    }
}

/// `(𝕊f)(z) = Σ f_n zⁿ` for `f = Σ f_n s_n`.
pub fn transform_s(sheffer_coeffs: &[Complex64], z: Complex64) -> SeriesEval {
    SeriesEval::finite(horner(sheffer_coeffs, z), sheffer_coeffs.len())
}

/// `(𝕊f)(z) = ∫ f E(·,z) dμ` by quadrature, with `E` from its certified series.
pub fn transform_s_quadrature(
    params: &MeixnerParams,
    sheffer_coeffs: &[Complex64],
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    let spec = MeasureSpec::orthogonality(params);
    let slot = ErrorSlot::new();
    let tol = (0.01 * cfg.rel_tol).max(1e-15);
    let f = |x: Complex64| {
        let e = slot.catch(coherent_e(params, x.re, z, tol).map(|s| s.value));
        eval_sheffer(params, sheffer_coeffs, x) * e
    };
    let r = integrate(&spec, &f, cfg);
    slot.finish(r)
}

/// Exact `𝕊f` as a monomial polynomial in `z`: the Sheffer coefficients of `f`.
pub fn transform_s_exact(params: &MeixnerParams, f: &ExactPoly) -> Poly {
    to_sheffer(params, f).into_poly()
}

/// Exact `𝓢f` by definition: `Σ f_n s_n ↦ Σ f_n (z|β)_n`.
pub fn transform_curly_s_exact(params: &MeixnerParams, f: &ExactPoly) -> ExactPoly {
    ExactPoly::from_poly(Basis::FallingBeta, to_sheffer(params, f).into_poly())
}

/// Exact `𝓢f` as a monomial polynomial in `z` from the integral
/// representation: `f(x)` (Meixner-II: `f(x+z)`) is integrated against
/// `μ_{α,β,αz+σ}` using `∫ (x + ζ/α - l)ⁿ dμ_ζ = Σ_k (α-β)^{n-k} S(n,k) (ζ/α|-β)_k`.
pub fn transform_curly_s_by_moments(params: &MeixnerParams, f: &ExactPoly) -> Poly {
    // with u = x + ζ/α - l the integrand is f(u - σ/α + l) for every class
    let h = to_monomial(params, f).into_poly().shift(&-params.shift());
    let diff = params.alpha() - params.beta();
    let neg_beta = -params.beta();
    let mut acc = Poly::zero();
    for (n, c) in h.coeffs().iter().enumerate() {
        for k in 0..=n {
            let w = c * &(&diff.pow((n - k) as u32) * &GaussRational::from(stirling2(n, k).expect("k <= n")));
            acc = &acc + &Poly::genfact(params.sigma_over_alpha(), &neg_beta, k).scale(&w);
        }
    }
    acc
}

/// `(𝓢f)(z) = ∫ f dμ_{α,β,αz+σ}` by quadrature; for Meixner-II the shifted
/// form `∫ f(x+z) dμ_{α,β,αz+σ}` on `Ψ`. Only polynomial `f` is supported.
pub fn transform_curly_s(
    params: &MeixnerParams,
    f: &ExactPoly,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    let p = Numeric::new(params);
    let coeffs = to_monomial(params, f).into_poly().to_complex_coeffs();
    let offset = match p.class {
        Class::MeixnerSecond => {
            require(Region::Shifted, z, params)?;
            z
        }
        _ => {
            require(Region::Expansion, z, params)?;
            Complex64::new(0.0, 0.0)
        }
    };
    let spec = MeasureSpec::with_parameter(params, p.alpha * z + p.sigma)?;
    Ok(integrate(&spec, &|x: Complex64| horner(&coeffs, x + offset), cfg)?)
}

/// `(𝕋g)(z) = Σ g_n zⁿ` for `g = Σ g_n (·|β)_n`.
pub fn transform_t(falling_coeffs: &[Complex64], z: Complex64) -> SeriesEval {
    SeriesEval::finite(horner(falling_coeffs, z), falling_coeffs.len())
}

/// `(𝕋g)(z) = ∫ g(βξ) dπ_{z/β}(ξ)`.
pub fn transform_t_poisson(
    params: &MeixnerParams,
    falling_coeffs: &[Complex64],
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    let beta = Numeric::new(params).beta;
    let g = |xi: usize| {
        // (βξ|β)_n = βⁿ ξ(ξ-1)…(ξ-n+1)
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = CompensatedSum::new();
        for (n, c) in falling_coeffs.iter().enumerate() {
            sum.add(c * term);
            term *= beta * (xi as f64 - n as f64);
        }
        sum.value()
    };
    Ok(poisson_expect(z / beta, &g, cfg)?)
}

/// Exact `𝕋g` as a monomial polynomial: the falling-β coefficients of `g`.
pub fn transform_t_exact(params: &MeixnerParams, g: &ExactPoly) -> Poly {
    to_falling_beta(params, g).into_poly()
}

/// `(𝕊f)(z) = ∫ f dρ_z` with the random measure `ρ_z = ∫ μ_{α,β,ηξ+σ} dπ_{z/β}(ξ)`;
/// Meixner-II integrates `f(x + βξ)` instead of `f(x)`.
pub fn rho_expectation(params: &MeixnerParams, f: &ExactPoly, z: Complex64, cfg: &QuadConfig) -> Result<QuadResult, Error> {
    let p = Numeric::new(params);
    let coeffs = to_monomial(params, f).into_poly().to_complex_coeffs();
    let slot = ErrorSlot::new();
    let inner = |xi: usize| {
        let r = (|| {
            let spec = MeasureSpec::with_parameter(params, Complex64::new(p.eta * xi as f64 + p.sigma, 0.0))?;
            let offset = if p.class == Class::MeixnerSecond { p.beta * xi as f64 } else { Complex64::new(0.0, 0.0) };
            Ok(integrate(&spec, &|x: Complex64| horner(&coeffs, x + offset), cfg)?.value)
        })();
        slot.catch(r)
    };
    let r = poisson_expect(z / p.beta, &inner, cfg);
    slot.finish(r)
}

/// `(‖f‖²_{L²(μ)}, Σ |f_n|² n!(σ|-η)_n)` for `f = Σ f_n s_n`.
pub fn isometry_check(params: &MeixnerParams, sheffer_coeffs: &[Complex64], cfg: &QuadConfig) -> Result<(f64, f64), Error> {
    let spec = MeasureSpec::orthogonality(params);
    let quad = integrate(&spec, &|x: Complex64| Complex64::new(eval_sheffer(params, sheffer_coeffs, x).norm_sqr(), 0.0), cfg)?;
    let exact = sheffer_coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c.norm_sqr() * params.norm_sqr(n).to_complex64().re)
        .sum();
    Ok((quad.value.re, exact))
}

/// `(Vp)(z)` for `V = α∂⁻ + 1` from its integral form against `μ_{α,β,η}`:
/// `∫ p(z+x)` for Laguerre, `∫ (α/β p(z+x) - (α-β)/β p(z))` for Meixner-I and
/// the same with `p(z+x+β)` for Meixner-II.
pub fn v_integral_action(params: &MeixnerParams, p: &ExactPoly, z: Complex64, cfg: &QuadConfig) -> Result<Complex64, Error> {
    let np = Numeric::new(params);
    let coeffs = to_monomial(params, p).into_poly().to_complex_coeffs();
    let spec = MeasureSpec::with_parameter(params, Complex64::new(np.eta, 0.0))?;
    match np.class {
        Class::Laguerre => Ok(integrate(&spec, &|x: Complex64| horner(&coeffs, z + x), cfg)?.value),
        Class::MeixnerFirst | Class::MeixnerSecond => {
            let offset = if np.class == Class::MeixnerSecond { np.beta } else { Complex64::new(0.0, 0.0) };
            let ratio = np.alpha / np.beta;
            let moved = integrate(&spec, &|x: Complex64| horner(&coeffs, z + x + offset), cfg)?.value;
            Ok(ratio * moved - (ratio - 1.0) * horner(&coeffs, z))
        }
    }
}

/// Symbolic `Vp` in the monomial basis.
pub fn v_symbolic(params: &MeixnerParams, p: &ExactPoly) -> Result<ExactPoly, Error> {
    let applied = apply_concrete(params, &ConcreteOp::RawV, &to_sheffer(params, p))?;
    Ok(to_monomial(params, &applied))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheffer::sheffer_poly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sheffer_values() {
        let p = MeixnerParams::reference(Class::Laguerre);
        // s_2(x) = x² - 4x + 2
        let v = eval_sheffer(&p, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], c(3.0, 0.0));
        assert!((v - (-1.0)).norm() < 1e-14);
    }

    #[test]
    fn curly_s_of_s2_at_one_vanishes() {
        let p = MeixnerParams::reference(Class::Laguerre);
        let f = sheffer_poly(&p, 2);
        let v = transform_curly_s(&p, &f, c(1.0, 0.0), &QuadConfig::default()).unwrap().value;
        assert!(v.norm() < 1e-8, "{v}");
    }

    #[test]
    fn curly_s_outside_domain() {
        let p = MeixnerParams::reference(Class::Laguerre);
        let err = transform_curly_s(&p, &sheffer_poly(&p, 1), c(-10.0, 0.0), &QuadConfig::default()).unwrap_err();
        assert!(err.to_string().contains("Re(αz) > −σ/2 violated"), "{err}");
    }

    #[test]
    fn v_on_first_polynomial() {
        for class in Class::ALL {
            let p = MeixnerParams::reference(class);
            let s1 = sheffer_poly(&p, 1);
            let z = c(0.0, 0.0);
            let want = v_symbolic(&p, &s1).unwrap().as_poly().eval_complex(z);
            let got = v_integral_action(&p, &s1, z, &QuadConfig::default()).unwrap();
            assert!((got - want).norm() < 1e-8, "{class}: {got} vs {want}");
        }
        let lag = MeixnerParams::reference(Class::Laguerre);
        let got = v_integral_action(&lag, &sheffer_poly(&lag, 1), c(0.0, 0.0), &QuadConfig::default()).unwrap();
        assert!(got.norm() < 1e-8);
    }
}
