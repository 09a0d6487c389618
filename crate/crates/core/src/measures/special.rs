//! Complex gamma function and the modified Bessel function of the second kind.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::{gauss_kronrod, QuadConfig};
use super::Error;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_sqrt_2pi() -> f64 {
    0.5 * (2.0 * PI).ln()
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `ln sin(πz)` without overflow for large `|Im z|`. The imaginary part is
/// only determined modulo `2π`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = e^{-iπz} (e^{2iπz} - 1) / (2i), and |e^{2iπz}| <= 1 here
    let i = Complex64::i();
    let ipz = i * PI * z;
    let small = (ipz * 2.0).exp();
    -ipz + (small - 1.0).ln() - (i * 2.0).ln()
}

/// `ln Γ(z)` up to a multiple of `2πi` in the imaginary part.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, Error> {
    if is_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let rest = ln_gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - rest);
    }
    let w = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += *c / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    Ok(ln_sqrt_2pi() + (w + 0.5) * t.ln() - t + acc.ln())
}

pub fn complex_gamma(z: Complex64) -> Result<Complex64, Error> {
    if z.im == 0.0 && z.re > 0.0 && z.re.fract() == 0.0 && z.re <= 171.0 {
        // exact on the factorial lattice
        let n = z.re as u32;
        return Ok(Complex64::new((1..n).map(f64::from).product(), 0.0));
    }
    let v = ln_gamma(z)?.exp();
    if z.im == 0.0 {
        return Ok(Complex64::new(v.re, 0.0));
    }
    Ok(v)
}

/// Real gamma function for real arguments.
pub fn gamma(x: f64) -> Result<f64, Error> {
    complex_gamma(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64, Error> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma_real needs a positive argument, got {x}")));
    }
    ln_gamma(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// `exp(ln Γ(a) - ln Γ(b))`, stable for large arguments.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64, Error> {
    Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
}

/// `K_θ(x)` from `∫_0^∞ e^{-x cosh t} cosh(θt) dt`.
///
/// The integrand is unimodal in `t`; the upper limit is pushed past the peak
/// until the log-integrand is 60 units below its maximum, which leaves a tail
/// under `e^{-60}` relative to the integral.
pub fn bessel_k(theta: f64, x: f64) -> Result<f64, Error> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k needs x > 0, got {x}")));
    }
    let th = theta.abs();
    let log_f = |t: f64| th * t - x * t.cosh();
    let peak = (th / x).asinh();
    let top = log_f(peak);
    let mut upper = peak.max(1.0);
    while log_f(upper) > top - 60.0 {
        upper *= 1.5;
    }
    // scale out e^{top} so the integrand stays near unity around the peak
    let integrand = |t: f64| {
        let a = (th * t - x * t.cosh() - top).exp();
        let b = (-th * t - x * t.cosh() - top).exp();
        Complex64::new(0.5 * (a + b), 0.0)
    };
    let cfg = QuadConfig { rel_tol: 1e-13, abs_tol: 0.0, max_nodes: 200_000 };
    let mut total = 0.0;
    let mut lo = 0.0;
    for hi in [peak, upper] {
        if hi > lo {
            total += gauss_kronrod(&integrand, lo, hi, &cfg)?.value.re;
            lo = hi;
        }
    }
    Ok(total * top.exp())
}

/// Modified Bessel function of the first kind by its power series; `θ` must
/// not be a negative integer.
pub fn bessel_i_series(theta: f64, x: f64) -> Result<f64, Error> {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(theta) / gamma(theta + 1.0)?;
    let mut sum = 0.0;
    for k in 0..10_000usize {
        sum += term;
        let kf = k as f64 + 1.0;
        term *= q / (kf * (kf + theta));
        if term.abs() <= 1e-17 * sum.abs() && kf > theta.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Domain("bessel_i_series failed to converge".into()))
}

/// `K_θ(x)` through `π/(2 sin θπ) (I_{-θ} - I_θ)`, with the integer-order
/// limit evaluated by its logarithmic series. Intended as an independent
/// cross-check for moderate `x`; it loses digits near integer `θ` and for
/// large `x`.
pub fn bessel_k_series(theta: f64, x: f64) -> Result<f64, Error> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_k needs x > 0, got {x}")));
    }
    let th = theta.abs();
    if th.fract() != 0.0 {
        let s = (th * PI).sin();
        return Ok(PI / (2.0 * s) * (bessel_i_series(-th, x)? - bessel_i_series(th, x)?));
    }
    let n = th as usize;
    let half = 0.5 * x;
    let q = half * half;
    let euler = 0.577_215_664_901_532_9;
    let mut finite = 0.0;
    for k in 0..n {
        let f_nk = gamma((n - k) as f64)?;
        let f_k = gamma((k + 1) as f64)?;
        finite += f_nk / f_k * (-q).powi(k as i32);
    }
    finite *= 0.5 * half.powi(-(n as i32));
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let log_part = -sign * half.ln() * bessel_i_series(n as f64, x)?;
    // ψ(k+1) + ψ(n+k+1) with ψ(m+1) = -γ + H_m
    let mut h_k = 0.0;
    let mut h_nk: f64 = (1..=n).map(|j| 1.0 / j as f64).sum();
    let mut term = half.powi(n as i32) / gamma((n + 1) as f64)?;
    let mut digamma_sum = 0.0;
    for k in 0..10_000usize {
        let psi = -2.0 * euler + h_k + h_nk;
        let add = psi * term;
        digamma_sum += add;
        if add.abs() <= 1e-18 * digamma_sum.abs() && k > 2 {
            break;
        }
        let kf = (k + 1) as f64;
        h_k += 1.0 / kf;
        h_nk += 1.0 / (kf + n as f64);
        term *= q / (kf * (kf + n as f64));
    }
    Ok(finite + log_part + sign * 0.5 * digamma_sum)
}
