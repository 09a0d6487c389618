//! Quadrature oracles for identities of the exact layer.

use num_complex::Complex64;

use super::quad::{integrate_half_line, QuadConfig};
use super::spec::{density, integrate, MeasureSpec};
use super::special::gamma;
use super::Error;
use crate::combinat::GaussRational;
use crate::par::Execution;
use crate::poly::Poly;
use crate::sheffer::{sheffer_polys, MeixnerParams};
use crate::weylalg::raw_moment;

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// `∫ p dμ` for a polynomial given by ascending complex coefficients.
pub fn polynomial_integral(spec: &MeasureSpec, coeffs: &[Complex64], cfg: &QuadConfig) -> Result<Complex64, Error> {
    Ok(integrate(spec, &|x| horner(coeffs, x), cfg)?.value)
}

/// Numeric `∫ s_m s_n dμ_{α,β,σ}` next to the exact `δ_{mn} n!(σ|-η)_n`.
pub fn orthogonality_check(
    params: &MeixnerParams,
    m: usize,
    n: usize,
    cfg: &QuadConfig,
) -> Result<(Complex64, GaussRational), Error> {
    let polys = sheffer_polys(params, m.max(n));
    let product = &polys[m] * &polys[n];
    let value = polynomial_integral(&MeasureSpec::orthogonality(params), &product.to_complex_coeffs(), cfg)?;
    let expected = if m == n { params.norm_sqr(n) } else { GaussRational::from(0) };
    Ok((value, expected))
}

/// Gram matrix `[∫ s_i s_j dμ]_{i,j ≤ n_max}`; entries are independent and
/// evaluated under `exec`.
pub fn orthogonality_gram(
    params: &MeixnerParams,
    n_max: usize,
    cfg: &QuadConfig,
    exec: Execution,
) -> Result<Vec<Vec<(Complex64, GaussRational)>>, Error> {
    let spec = MeasureSpec::orthogonality(params);
    let polys: Vec<Poly> = sheffer_polys(params, n_max);
    let size = n_max + 1;
    let entries = exec.map_range(size * size, |k| {
        let (i, j) = (k / size, k % size);
        let product = &polys[i] * &polys[j];
        let value = polynomial_integral(&spec, &product.to_complex_coeffs(), cfg)?;
        let expected = if i == j { params.norm_sqr(i) } else { GaussRational::from(0) };
        Ok((value, expected))
    });
    let mut rows = Vec::with_capacity(size);
    let mut it = entries.into_iter();
    for _ in 0..size {
        rows.push(it.by_ref().take(size).collect::<Result<Vec<_>, Error>>()?);
    }
    Ok(rows)
}

/// A numeric moment next to its exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCheck {
    pub n: usize,
    pub quadrature: Complex64,
    pub exact: GaussRational,
}

impl MomentCheck {
    pub fn abs_error(&self) -> f64 {
        (self.quadrature - self.exact.to_complex64()).norm()
    }

    /// Relative error, absolute when the exact value vanishes.
    pub fn rel_error(&self) -> f64 {
        let scale = self.exact.to_complex64().norm();
        if scale == 0.0 {
            self.abs_error()
        } else {
            self.abs_error() / scale
        }
    }
}

/// `∫ xⁿ dμ_{α,β,σ}` by quadrature against the exact moment functional.
pub fn moment_check(params: &MeixnerParams, n: usize, cfg: &QuadConfig) -> Result<MomentCheck, Error> {
    let spec = MeasureSpec::orthogonality(params);
    let quadrature = integrate(&spec, &|x: Complex64| x.powu(n as u32), cfg)?.value;
    Ok(MomentCheck { n, quadrature, exact: raw_moment(params, n) })
}

/// `∫ (x + c|α-β)_n dμ_{α,β,σ}` against `βⁿ (σ/η)^{(n)}`, with `c` the
/// offset between `s_n` and the unshifted family (zero unless Meixner-II).
pub fn falling_moment_check(params: &MeixnerParams, n: usize, cfg: &QuadConfig) -> Result<MomentCheck, Error> {
    let spec = MeasureSpec::orthogonality(params);
    let h = (params.alpha() - params.beta()).to_complex64();
    let c = params.shift().to_complex64();
    let f = |x: Complex64| (0..n).map(|j| x + c - h * j as f64).product::<Complex64>();
    let quadrature = integrate(&spec, &f, cfg)?.value;
    Ok(MomentCheck { n, quadrature, exact: crate::weylalg::falling_alpha_beta_moment(params, n) })
}

/// `∫ z^m conj(z)^n dλ_{η,σ}` next to `δ_{mn} n! (σ|-η)_n`.
pub fn fock_moment_check(eta: f64, sigma: f64, m: usize, n: usize, cfg: &QuadConfig) -> Result<(Complex64, f64), Error> {
    let spec = MeasureSpec::FockLambda { eta, sigma };
    let f = |z: Complex64| z.powu(m as u32) * z.conj().powu(n as u32);
    let value = integrate(&spec, &f, cfg)?.value;
    let expected = if m == n { (0..n).map(|j| (j + 1) as f64 * (sigma + eta * j as f64)).product() } else { 0.0 };
    Ok((value, expected))
}

/// `Λ_{η,σ}(r)` from the gamma-mixture integral
/// `(πΓ(σ/η))^{-1} η^{-σ/η} ∫_0^∞ exp(-r²/t - t/η) t^{σ/η-2} dt`.
pub fn fock_density_mixture(eta: f64, sigma: f64, r: f64, cfg: &QuadConfig) -> Result<f64, Error> {
    if !(eta > 0.0 && sigma > 0.0 && r > 0.0) {
        return Err(Error::Domain(format!("mixture density needs eta, sigma, r > 0, got {eta}, {sigma}, {r}")));
    }
    let s = sigma / eta;
    let f = |t: f64| Complex64::new((-r * r / t - t / eta + (s - 2.0) * t.ln()).exp(), 0.0);
    // maximizer of the log-integrand
    let peak = 0.5 * eta * ((s - 2.0) + ((s - 2.0).powi(2) + 4.0 * r * r / eta).sqrt());
    let width = peak.max(1e-3 * eta);
    let v = integrate_half_line(&f, 0.0, 1.0, width, peak + 60.0 * eta, cfg)?.value.re;
    Ok(v / (std::f64::consts::PI * gamma(s)? * eta.powf(s)))
}

/// `(ψ(r), πσ Λ_{σ,σ}(√r))` with `ψ = f₁ ∗ f₂`, `f₁ = e^{-t}`, `f₂ = e^{-t/σ}`
/// and `(f ∗ g)(r) = ∫_0^∞ f(t) g(r/t) dt/t`.
pub fn mellin_convolution_check(sigma: f64, r: f64, cfg: &QuadConfig) -> Result<(f64, f64), Error> {
    if !(sigma > 0.0 && r > 0.0) {
        return Err(Error::Domain(format!("need sigma > 0 and r > 0, got {sigma}, {r}")));
    }
    let f = |t: f64| Complex64::new((-t - r / (sigma * t)).exp() / t, 0.0);
    let peak = (r / sigma).sqrt();
    let lhs = integrate_half_line(&f, 0.0, 1.0, peak, peak + 60.0, cfg)?.value.re;
    let spec = MeasureSpec::FockLambda { eta: sigma, sigma };
    let rhs = std::f64::consts::PI * sigma * density(&spec, Complex64::new(r.sqrt(), 0.0))?.re;
    Ok((lhs, rhs))
}
