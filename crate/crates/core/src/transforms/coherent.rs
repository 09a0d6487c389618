//! Nonlinear coherent states `E(x,z) = Σ zⁿ s_n(x)/(n!(σ|-η)_n)` and the
//! falling-β generating function `𝓔(x,z) = Σ (z|β)_n s_n(x)/(n!(σ|-η)_n)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use num_traits::Zero;

use super::series::{certified_sum, SeriesEval};
use super::domain::require;
use super::{Error, Region};
use crate::combinat::GaussRational;
use crate::measures::ln_gamma;
use crate::sheffer::{annihilator, Basis, Class, ExactPoly, MeixnerParams};

/// `f64` images of the exact parameters.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Numeric {
    pub class: Class,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub sigma: f64,
    pub eta: f64,
    pub lambda: f64,
    pub ell: f64,
}

impl Numeric {
    pub fn new(params: &MeixnerParams) -> Self {
        Self {
            class: params.class(),
            alpha: params.alpha().to_complex64(),
            beta: params.beta().to_complex64(),
            sigma: params.sigma().to_complex64().re,
            eta: params.eta().to_complex64().re,
            lambda: params.lambda().to_complex64().re,
            ell: params.ell().to_complex64().re,
        }
    }

    /// Lattice index of `x` for Meixner-I, where the support is `(α-β)ℕ₀`.
    pub fn lattice_index(&self, x: f64) -> Result<usize, Error> {
        let n = x / (self.alpha.re - self.beta.re);
        let r = n.round();
        if r < 0.0 || (n - r).abs() > 1e-9 * r.max(1.0) {
            return Err(Error::OutsideSupport(x));
        }
        Ok(r as usize)
    }

    pub fn check_support(&self, x: f64) -> Result<(), Error> {
        match self.class {
            Class::Laguerre if !(x > 0.0) => Err(Error::OutsideSupport(x)),
            Class::MeixnerFirst => self.lattice_index(x).map(|_| ()),
            _ if !x.is_finite() => Err(Error::OutsideSupport(x)),
            _ => Ok(()),
        }
    }

    /// `π/2 - Arg α` and `w = -ix/(2 Im α) - iσα/(2η Im α)` for Meixner-II.
    fn meixner_tilt(&self, x: f64) -> (f64, Complex64) {
        let b = self.alpha.im;
        let i = Complex64::i();
        let w = -i * x / (2.0 * b) - i * self.sigma * self.alpha / (2.0 * self.eta * b);
        (FRAC_PI_2 - self.alpha.arg(), w)
    }
}

/// `E(x,z)` by its defining series.
///
/// With `c = (|λ| + √(λ²+4η))/2` and `A = |x| + |l| + max(σc/η, c)` the
/// three-term recurrence gives `|s_n(x)| <= Π_{k<n} (A + ck)`, so the terms
/// are dominated by `M_n = |z|ⁿ Π (A+ck) / (n!(σ|-η)_n)`, whose ratio
/// `|z|(A+cn)/((n+1)(σ+ηn))` decreases in `n` because `A >= c`.
pub fn coherent_e(params: &MeixnerParams, x: f64, z: Complex64, tol: f64) -> Result<SeriesEval, Error> {
    let p = Numeric::new(params);
    p.check_support(x)?;
    let c = 0.5 * (p.lambda.abs() + (p.lambda * p.lambda + 4.0 * p.eta).sqrt());
    let a = x.abs() + p.ell.abs() + (p.sigma * c / p.eta).max(c);
    let zn = z.norm();
    // b_n = zⁿ s_n(x) / ρ_n with b_{n+1} = (z(x-λn-l) b_n - z² b_{n-1}) / ((n+1)(σ+ηn))
    let mut prev = Complex64::zero();
    let mut cur = Complex64::new(1.0, 0.0);
    let mut majorant = 1.0;
    certified_sum(
        |n| {
            let out = (cur, majorant);
            let nf = n as f64;
            let denom = (nf + 1.0) * (p.sigma + p.eta * nf);
            let next = (z * (x - p.lambda * nf - p.ell) * cur - z * z * prev) / denom;
            prev = cur;
            cur = next;
            majorant *= zn * (a + c * nf) / denom;
            out
        },
        |n| {
            let nf = n as f64;
            zn * (a + c * nf) / ((nf + 1.0) * (p.sigma + p.eta * nf))
        },
        tol,
    )
}

/// `E(x,z) = ∫ 𝓔(x, βξ) dπ_{z/β}(ξ)` with the class-specific closed forms
/// of `𝓔(x, βξ)`, summed over `ξ` with a certified geometric tail.
pub fn coherent_e_closed(params: &MeixnerParams, x: f64, z: Complex64, tol: f64) -> Result<SeriesEval, Error> {
    let p = Numeric::new(params);
    p.check_support(x)?;
    let intensity = z / p.beta;
    let rate = intensity.norm();
    let shape = p.sigma / p.eta;
    // ratio(k) = 𝓔(x, β(k+1)) / 𝓔(x, βk), and a bound on sup_{j>=k} |ratio(j)|
    let (ratio, ratio_sup): (Box<dyn Fn(f64) -> Complex64>, Box<dyn Fn(f64) -> f64>) = match p.class {
        Class::Laguerre => {
            let u = x / p.alpha.re;
            (Box::new(move |k| Complex64::new(u / (shape + k), 0.0)), Box::new(move |k| u.abs() / (shape + k)))
        }
        Class::MeixnerFirst => {
            let n = p.lattice_index(x)? as f64;
            let q = 1.0 - p.beta.re / p.alpha.re;
            let (eta, sigma) = (p.eta, p.sigma);
            (
                Box::new(move |k| Complex64::new(q * (eta * k + sigma + eta * n) / (eta * k + sigma), 0.0)),
                Box::new(move |k| q * (eta * k + sigma + eta * n) / (eta * k + sigma)),
            )
        }
        Class::MeixnerSecond => {
            let (tilt, w) = p.meixner_tilt(x);
            let factor = Complex64::from_polar(2.0 * tilt.cos(), tilt);
            let wn = w.norm();
            (
                Box::new(move |k| factor * (w + k) / (shape + k)),
                Box::new(move |k| factor.norm() * ((wn + k) / (shape + k)).max(1.0)),
            )
        }
    };
    let mut weight = (-intensity).exp();
    let mut profile = Complex64::new(1.0, 0.0);
    certified_sum(
        |k| {
            let t = weight * profile;
            let kf = k as f64;
            weight *= intensity / (kf + 1.0);
            profile *= ratio(kf);
            (t, t.norm())
        },
        |k| {
            let kf = k as f64;
            rate / (kf + 1.0) * ratio_sup(kf)
        },
        tol,
    )
}

/// Closed form of `𝓔(x,z)` for `z` in the expansion region.
pub fn curly_e(params: &MeixnerParams, x: f64, z: Complex64) -> Result<Complex64, Error> {
    let p = Numeric::new(params);
    p.check_support(x)?;
    require(Region::Expansion, z, params)?;
    let shape = Complex64::new(p.sigma / p.eta, 0.0);
    let zeta_shape = (p.alpha * z + p.sigma) / p.eta;
    match p.class {
        Class::Laguerre => {
            let alpha = p.alpha.re;
            let log = ln_gamma(shape)? - ln_gamma(zeta_shape)? + z / alpha * (x / alpha).ln();
            Ok(log.exp())
        }
        Class::MeixnerFirst => {
            let n = p.lattice_index(x)?;
            let q = Complex64::new(1.0 - p.beta.re / p.alpha.re, 0.0);
            let ratio: Complex64 =
                (0..n).map(|j| (p.alpha * z + p.sigma + p.eta * j as f64) / (p.sigma + p.eta * j as f64)).product();
            Ok(q.powc(z / p.beta) * ratio)
        }
        Class::MeixnerSecond => {
            let (tilt, w) = p.meixner_tilt(x);
            let s = p.alpha * z / p.eta;
            let log = s * (2.0 * tilt.cos()).ln() + ln_gamma(shape)? - ln_gamma(zeta_shape)?
                + Complex64::i() * tilt * s
                + ln_gamma(w + s)?
                - ln_gamma(w)?;
            Ok(log.exp())
        }
    }
}

/// Partial sum of the defining series of `𝓔(x,z)` over `n < terms`; exact
/// up to rounding when `z ∈ βℕ₀`, where `(z|β)_n` vanishes eventually.
pub fn curly_e_series(params: &MeixnerParams, x: f64, z: Complex64, terms: usize) -> Result<Complex64, Error> {
    let p = Numeric::new(params);
    p.check_support(x)?;
    let mut prev = Complex64::zero();
    let mut cur = Complex64::new(1.0, 0.0);
    let mut fall = Complex64::new(1.0, 0.0);
    let mut sum = crate::measures::CompensatedSum::new();
    for n in 0..terms {
        sum.add(fall * cur);
        let nf = n as f64;
        // a_n = s_n(x)/ρ_n
        let next = ((x - p.lambda * nf - p.ell) * cur - prev) / ((nf + 1.0) * (p.sigma + p.eta * nf));
        prev = cur;
        cur = next;
        fall *= z - p.beta * nf;
        if fall == Complex64::zero() {
            break;
        }
    }
    Ok(sum.value())
}

/// Exact coherent-state truncation `Σ_{n<=order} zⁿ s_n / ρ_n` in the Sheffer
/// basis.
pub fn coherent_truncation(params: &MeixnerParams, z: &GaussRational, order: usize) -> ExactPoly {
    let coeffs = (0..=order)
        .map(|n| &z.pow(n as u32) * &params.norm_sqr(n).inv().expect("positive norms"))
        .collect();
    ExactPoly::new(Basis::Sheffer, coeffs)
}

/// Checks `A⁻E_N = z E_{N-1}` exactly; returns the largest coefficient of
/// the difference, which is `0` when the identity holds.
pub fn annihilator_eigen_check(params: &MeixnerParams, z: &GaussRational, order: usize) -> Result<f64, Error> {
    if order == 0 {
        return Err(Error::Order);
    }
    let e_n = coherent_truncation(params, z, order);
    let lowered = annihilator(params, &e_n)?;
    let target = coherent_truncation(params, z, order - 1).scale(z);
    let diff = lowered.sub(&target)?;
    Ok(diff.coeffs().iter().map(GaussRational::max_abs_component).fold(0.0, f64::max))
}
