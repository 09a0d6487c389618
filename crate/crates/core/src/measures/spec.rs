use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;

use super::quad::{gauss_laguerre, integrate_half_line, CompensatedSum, QuadConfig, QuadResult};
use super::special::{bessel_k, gamma, ln_gamma};
use super::Error;
use crate::sheffer::{Class, MeixnerParams};

/// Trapezoid nodes on the circle for the angular part of Fock integrals;
/// exact for trigonometric polynomials of degree below this.
const ANGULAR_NODES: usize = 64;

/// A measure with possibly complex parameter `ζ`.
///
/// `Gamma`, `NegBinomial` and `Meixner` are the orthogonality measures with
/// `σ` replaced by `ζ`; with `η = αβ` their shapes are `ζ/η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureSpec {
    /// Gamma law with shape `ζ/α²` and scale `α`.
    Gamma { alpha: f64, zeta: Complex64 },
    /// Pascal law on `(α-β)ℕ₀`.
    NegBinomial { alpha: f64, beta: f64, zeta: Complex64 },
    /// Meixner law on `ℝ` with `β = conj(α)`.
    Meixner { alpha: Complex64, zeta: Complex64 },
    /// `e^{-ζ} Σ ζⁿ δ_n / n!` on `ℕ₀`.
    PoissonComplex { zeta: Complex64 },
    /// Gamma mixture of complex Gaussians on `ℂ`.
    FockLambda { eta: f64, sigma: f64 },
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Gamma { alpha, zeta } => write!(f, "gamma(alpha={alpha}, zeta={zeta})"),
            MeasureSpec::NegBinomial { alpha, beta, zeta } => {
                write!(f, "negative-binomial(alpha={alpha}, beta={beta}, zeta={zeta})")
            }
            MeasureSpec::Meixner { alpha, zeta } => write!(f, "meixner(alpha={alpha}, zeta={zeta})"),
            MeasureSpec::PoissonComplex { zeta } => write!(f, "poisson(zeta={zeta})"),
            MeasureSpec::FockLambda { eta, sigma } => write!(f, "fock(eta={eta}, sigma={sigma})"),
        }
    }
}

fn real(z: Complex64) -> Complex64 {
    Complex64::new(z.re, 0.0)
}

/// `ζ` lies in the validity domain of the family parametrized by `α`:
/// every `ζ` when `α > β > 0`, `Re ζ > 0` otherwise, plus the sector
/// `|Im ζ| < Re ζ · Im α / Re α` when `α` is non-real with `Re α > 0`.
pub(crate) fn parameter_in_domain(class: Class, alpha: Complex64, zeta: Complex64) -> bool {
    match class {
        Class::MeixnerFirst => zeta.is_finite(),
        Class::Laguerre => zeta.re > 0.0,
        Class::MeixnerSecond => {
            if !(zeta.re > 0.0) {
                return false;
            }
            alpha.re == 0.0 || zeta.im.abs() < zeta.re * alpha.im / alpha.re
        }
    }
}

impl MeasureSpec {
    /// `μ_{α,β,ζ}` for the family of `params`.
    pub fn with_parameter(params: &MeixnerParams, zeta: Complex64) -> Result<Self, Error> {
        let alpha = params.alpha().to_complex64();
        let spec = match params.class() {
            Class::Laguerre => MeasureSpec::Gamma { alpha: alpha.re, zeta },
            Class::MeixnerFirst => {
                MeasureSpec::NegBinomial { alpha: alpha.re, beta: params.beta().to_complex64().re, zeta }
            }
            Class::MeixnerSecond => MeasureSpec::Meixner { alpha, zeta },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The orthogonality measure `μ_{α,β,σ}`.
    pub fn orthogonality(params: &MeixnerParams) -> Self {
        Self::with_parameter(params, params.sigma().to_complex64()).expect("σ > 0 is always admissible")
    }

    /// The Fock measure matching `params`.
    pub fn fock(params: &MeixnerParams) -> Self {
        MeasureSpec::FockLambda { eta: params.eta().to_complex64().re, sigma: params.sigma().to_complex64().re }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |why: &str| Err(Error::Domain(format!("{self}: {why}")));
        match *self {
            MeasureSpec::Gamma { alpha, zeta } => {
                if !(alpha > 0.0) {
                    return bad("alpha must be positive");
                }
                if !parameter_in_domain(Class::Laguerre, Complex64::new(alpha, 0.0), zeta) {
                    return bad("Re(zeta) must be positive");
                }
            }
            MeasureSpec::NegBinomial { alpha, beta, zeta } => {
                if !(alpha > beta && beta > 0.0) {
                    return bad("need alpha > beta > 0");
                }
                if !zeta.is_finite() {
                    return bad("zeta must be finite");
                }
            }
            MeasureSpec::Meixner { alpha, zeta } => {
                if !(alpha.im > 0.0 && alpha.re >= 0.0) {
                    return bad("need Im(alpha) > 0 and Re(alpha) >= 0");
                }
                if !parameter_in_domain(Class::MeixnerSecond, alpha, zeta) {
                    return bad("zeta outside the admissible sector");
                }
            }
            MeasureSpec::PoissonComplex { zeta } => {
                if !zeta.is_finite() {
                    return bad("zeta must be finite");
                }
            }
            MeasureSpec::FockLambda { eta, sigma } => {
                if !(eta > 0.0 && sigma > 0.0) {
                    return bad("need eta > 0 and sigma > 0");
                }
            }
        }
        Ok(())
    }
}

/// `|Γ(c+iy)|`-type tails of the Meixner density: the log-density decays like
/// `-Arg(α) x / Im α` on the right and `-(π - Arg α)|x| / Im α` on the left.
fn meixner_decay_rates(alpha: Complex64) -> (f64, f64) {
    let arg = alpha.arg();
    (arg / alpha.im, (PI - arg) / alpha.im)
}

fn meixner_log_density(alpha: Complex64, zeta: Complex64, x: f64) -> Result<Complex64, Error> {
    let b = alpha.im;
    let eta = alpha.norm_sqr();
    let tilt = FRAC_PI_2 - alpha.arg();
    let i = Complex64::i();
    let s = zeta / eta;
    let log_c = s * (2.0 * tilt.cos()).ln() - (4.0 * b * PI).ln() - ln_gamma(s)? + tilt * zeta * alpha.re / (b * eta);
    let g1 = i * x / (2.0 * b) + i * zeta * alpha.conj() / (2.0 * eta * b);
    let g2 = -i * x / (2.0 * b) - i * zeta * alpha / (2.0 * eta * b);
    Ok(log_c + tilt * x / b + ln_gamma(g1)? + ln_gamma(g2)?)
}

fn as_real_point(x: Complex64) -> Result<f64, Error> {
    if x.im != 0.0 || !x.re.is_finite() {
        return Err(Error::OutsideSupport(x.to_string()));
    }
    Ok(x.re)
}

fn as_lattice_index(x: f64, step: f64) -> Option<usize> {
    let n = x / step;
    let r = n.round();
    (r >= 0.0 && (n - r).abs() <= 1e-9 * r.max(1.0)).then_some(r as usize)
}

fn fock_density_radial(eta: f64, sigma: f64, r: f64) -> Result<f64, Error> {
    let s = sigma / eta;
    if r == 0.0 {
        if s <= 1.0 {
            return Err(Error::Domain("Fock density is unbounded at the origin for sigma <= eta".into()));
        }
        // limit of r^{s-1} K_{1-s}(2r/√η)
        let lim = 0.5 * gamma(s - 1.0)? * eta.powf(0.5 * (s - 1.0));
        return Ok(2.0 * eta.powf(-0.5 * (1.0 + s)) / (PI * gamma(s)?) * lim);
    }
    let k = bessel_k(1.0 - s, 2.0 * r / eta.sqrt())?;
    Ok(2.0 * eta.powf(-0.5 * (1.0 + s)) / (PI * gamma(s)?) * r.powf(s - 1.0) * k)
}

/// Pointwise density (or point mass) of `spec` at `x`.
pub fn density(spec: &MeasureSpec, x: Complex64) -> Result<Complex64, Error> {
    spec.validate()?;
    match *spec {
        MeasureSpec::Gamma { alpha, zeta } => {
            let x = as_real_point(x)?;
            if x <= 0.0 {
                return Err(Error::OutsideSupport(x.to_string()));
            }
            let s = zeta / (alpha * alpha);
            let v = ((s - 1.0) * x.ln() - x / alpha - ln_gamma(s)? - s * alpha.ln()).exp();
            Ok(if zeta.im == 0.0 { real(v) } else { v })
        }
        MeasureSpec::NegBinomial { alpha, beta, zeta } => {
            let x = as_real_point(x)?;
            let n = as_lattice_index(x, alpha - beta).ok_or_else(|| Error::OutsideSupport(x.to_string()))?;
            let s = zeta / (alpha * beta);
            let q = beta / alpha;
            let mut w = Complex64::new(1.0 - q, 0.0).powc(s);
            for k in 0..n {
                w *= q * (s + k as f64) / (k + 1) as f64;
            }
            Ok(w)
        }
        MeasureSpec::Meixner { alpha, zeta } => {
            let v = meixner_log_density(alpha, zeta, as_real_point(x)?)?.exp();
            Ok(if zeta.im == 0.0 { real(v) } else { v })
        }
        MeasureSpec::PoissonComplex { zeta } => {
            let x = as_real_point(x)?;
            let n = as_lattice_index(x, 1.0).ok_or_else(|| Error::OutsideSupport(x.to_string()))?;
            let mut w = (-zeta).exp();
            for k in 0..n {
                w *= zeta / (k + 1) as f64;
            }
            Ok(w)
        }
        MeasureSpec::FockLambda { eta, sigma } => {
            Ok(Complex64::new(fock_density_radial(eta, sigma, x.norm())?, 0.0))
        }
    }
}

/// Sums `Σ_n term(n)` for weights with eventually geometric decay.
///
/// From `min_terms` on, the largest ratio `q` of consecutive magnitudes over
/// the last six terms is used as a geometric majorant: summation stops once
/// `q < 1` and `|t_n| q/(1-q)` is below a hundredth of the tolerance. The value
/// reported as `error` is that tail estimate. This is a heuristic for the
/// growth of general summands; for weights alone it is a bound once the
/// weight ratio is decreasing.
fn sum_series<T: FnMut(usize) -> Complex64>(mut term: T, min_terms: usize, cfg: &QuadConfig) -> Result<QuadResult, Error> {
    cfg.validate()?;
    const WINDOW: usize = 6;
    let cap = cfg.max_nodes.min(1_000_000);
    let mut sum = CompensatedSum::new();
    let mut recent: VecDeque<f64> = VecDeque::with_capacity(WINDOW + 1);
    let mut zero_run = 0usize;
    for n in 0..cap {
        let t = term(n);
        if !t.is_finite() {
            return Err(Error::Divergent(format!("term {n} is not finite")));
        }
        sum.add(t);
        let mag = t.norm();
        zero_run = if mag == 0.0 { zero_run + 1 } else { 0 };
        recent.push_back(mag);
        if recent.len() > WINDOW {
            recent.pop_front();
        }
        if n < min_terms || recent.len() < WINDOW {
            continue;
        }
        if zero_run >= 16 {
            return Ok(QuadResult { value: sum.value(), error: 0.0, evaluations: n + 1 });
        }
        let q = recent
            .iter()
            .zip(recent.iter().skip(1))
            .filter(|(a, _)| **a > 0.0)
            .map(|(a, b)| b / a)
            .fold(0.0f64, f64::max);
        if q < 1.0 {
            let tail = mag * q / (1.0 - q);
            if tail <= 0.01 * cfg.target(sum.value()) {
                return Ok(QuadResult { value: sum.value(), error: tail, evaluations: n + 1 });
            }
        }
    }
    let v = sum.value();
    Err(Error::NotConverged { re: v.re, im: v.im, error: f64::INFINITY, evaluations: cap })
}

/// `e^{-ζ} Σ ζᵏ f(k) / k!`.
pub fn poisson_expect<F: Fn(usize) -> Complex64 + ?Sized>(zeta: Complex64, f: &F, cfg: &QuadConfig) -> Result<QuadResult, Error> {
    if !zeta.is_finite() {
        return Err(Error::Domain(format!("poisson intensity {zeta} is not finite")));
    }
    let mut w = (-zeta).exp();
    let min_terms = zeta.norm().ceil() as usize + 8;
    sum_series(
        |k| {
            let t = w * f(k);
            w *= zeta / (k + 1) as f64;
            t
        },
        min_terms,
        cfg,
    )
}

fn integrate_gamma<F: Fn(Complex64) -> Complex64 + ?Sized>(
    alpha: f64,
    zeta: Complex64,
    f: &F,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    let s = zeta / (alpha * alpha);
    let a = s.re - 1.0;
    // y^{s-1} = y^{a} y^{i Im s}; Γ(Re s)/Γ(s) renormalizes the weight
    let norm = if s.im == 0.0 { Complex64::new(1.0, 0.0) } else { (ln_gamma(real(s))? - ln_gamma(s)?).exp() };
    let mut prev: Option<Complex64> = None;
    let mut evaluations = 0;
    let mut n = 16;
    while n <= 128 {
        let (nodes, weights) = gauss_laguerre(n, a)?;
        let terms: Vec<Complex64> = nodes
            .iter()
            .zip(&weights)
            .map(|(y, w)| {
                let phase = if s.im == 0.0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, s.im * y.ln()).exp() };
                f(Complex64::new(alpha * y, 0.0)) * phase * *w
            })
            .collect();
        let value = terms.iter().copied().collect::<CompensatedSum>().value() * norm;
        // cancellation between nodes limits agreement to rounding level
        let floor = 64.0 * f64::EPSILON * norm.norm() * terms.iter().map(|t| t.norm()).sum::<f64>();
        evaluations += n;
        if let Some(p) = prev {
            let diff = (value - p).norm();
            if diff <= cfg.target(value).max(floor) {
                return Ok(QuadResult { value, error: diff, evaluations });
            }
        }
        prev = Some(value);
        n *= 2;
    }
    // non-polynomial integrands: fall back to panels on the density itself
    let g = |x: f64| {
        let x = Complex64::new(x, 0.0);
        let d = ((s - 1.0) * x.ln() - x / alpha - ln_gamma(s).unwrap_or_default() - s * alpha.ln()).exp();
        f(x) * d
    };
    let extent = alpha * (s.norm() + 60.0);
    let mut r = integrate_half_line(&g, 0.0, 1.0, alpha * s.re.max(1.0), extent, cfg)?;
    r.evaluations += evaluations;
    Ok(r)
}

fn integrate_meixner<F: Fn(Complex64) -> Complex64 + ?Sized>(
    alpha: Complex64,
    zeta: Complex64,
    f: &F,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    meixner_log_density(alpha, zeta, 0.0)?;
    // the densities are centred at the origin; both half-lines start there
    let g = |x: f64| match meixner_log_density(alpha, zeta, x) {
        Ok(ld) => f(Complex64::new(x, 0.0)) * ld.exp(),
        Err(_) => Complex64::new(f64::NAN, 0.0),
    };
    let (right_rate, left_rate) = meixner_decay_rates(alpha);
    let width = alpha.norm() * (1.0 + zeta.norm() / alpha.norm_sqr()).sqrt();
    let depth = (1.0 / cfg.abs_tol.max(1e-300)).ln() + 10.0;
    let right = integrate_half_line(&g, 0.0, 1.0, width, depth / right_rate, cfg)?;
    let left = integrate_half_line(&g, 0.0, -1.0, width, depth / left_rate, cfg)?;
    Ok(QuadResult {
        value: right.value + left.value,
        error: right.error + left.error,
        evaluations: right.evaluations + left.evaluations,
    })
}

fn integrate_fock<F: Fn(Complex64) -> Complex64 + ?Sized>(eta: f64, sigma: f64, f: &F, cfg: &QuadConfig) -> Result<QuadResult, Error> {
    // ∫_ℂ f dλ = ∫_0^∞ r Λ(r) ∫_0^{2π} f(re^{iφ}) dφ dr, angular part by the
    // periodic trapezoid rule
    let step = 2.0 * PI / ANGULAR_NODES as f64;
    let g = |r: f64| {
        let mut ring = CompensatedSum::new();
        let mut magnitude = 0.0;
        for k in 0..ANGULAR_NODES {
            let v = f(Complex64::from_polar(r, k as f64 * step));
            magnitude += v.norm();
            ring.add(v);
        }
        let mut ring = ring.value();
        // angular cancellation down to rounding level means an exact zero
        if ring.norm() <= 64.0 * f64::EPSILON * magnitude {
            ring = Complex64::new(0.0, 0.0);
        }
        let ring = ring * step;
        match fock_density_radial(eta, sigma, r) {
            Ok(d) => ring * (r * d),
            Err(_) => Complex64::new(f64::NAN, 0.0),
        }
    };
    let scale = eta.sqrt() * (1.0 + sigma / eta).sqrt();
    let depth = (1.0 / cfg.abs_tol.max(1e-300)).ln() + 10.0;
    integrate_half_line(&g, 0.0, 1.0, scale, depth * eta.sqrt(), cfg)
}

/// `∫ f dμ` for the measure `spec`; points of real supports are passed with
/// zero imaginary part.
pub fn integrate<F: Fn(Complex64) -> Complex64 + ?Sized>(spec: &MeasureSpec, f: &F, cfg: &QuadConfig) -> Result<QuadResult, Error> {
    spec.validate()?;
    cfg.validate()?;
    match *spec {
        MeasureSpec::Gamma { alpha, zeta } => integrate_gamma(alpha, zeta, f, cfg),
        MeasureSpec::NegBinomial { alpha, beta, zeta } => {
            let s = zeta / (alpha * beta);
            let q = beta / alpha;
            let step = alpha - beta;
            let mut w = Complex64::new(1.0 - q, 0.0).powc(s);
            let mode = (s.norm() * q / (1.0 - q)).ceil() as usize;
            sum_series(
                |n| {
                    let t = w * f(Complex64::new(step * n as f64, 0.0));
                    w *= q * (s + n as f64) / (n + 1) as f64;
                    t
                },
                mode + 8,
                cfg,
            )
        }
        MeasureSpec::Meixner { alpha, zeta } => integrate_meixner(alpha, zeta, f, cfg),
        MeasureSpec::PoissonComplex { zeta } => poisson_expect(zeta, &|k| f(Complex64::new(k as f64, 0.0)), cfg),
        MeasureSpec::FockLambda { eta, sigma } => integrate_fock(eta, sigma, f, cfg),
    }
}
