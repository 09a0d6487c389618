//! The Fock space `𝔽_{η,σ}` of entire functions `Σ f_n zⁿ` with
//! `Σ |f_n|² n!(σ|-η)_n < ∞`, and its reproducing kernel.

use num_complex::Complex64;

use super::series::{certified_sum, SeriesEval};
use super::Error;
use crate::measures::CompensatedSum;

/// `ρ_{n+1}/ρ_n = (n+1)(σ+ηn)`.
fn norm_step(eta: f64, sigma: f64, n: usize) -> f64 {
    (n as f64 + 1.0) * (sigma + eta * n as f64)
}

/// A truncated element of `𝔽_{η,σ}`. `tail_bound` bounds the squared norm
/// `Σ_{n>=len} |f_n|² n!(σ|-η)_n` of the discarded part.
#[derive(Debug, Clone, PartialEq)]
pub struct FockElement {
    pub coeffs: Vec<Complex64>,
    pub eta: f64,
    pub sigma: f64,
    pub tail_bound: f64,
}

impl FockElement {
    /// A polynomial, so the tail is empty.
    pub fn polynomial(coeffs: Vec<Complex64>, eta: f64, sigma: f64) -> Result<Self, Error> {
        check_space(eta, sigma)?;
        Ok(Self { coeffs, eta, sigma, tail_bound: 0.0 })
    }

    /// The kernel section `w ↦ 𝕂(z,w)`, with coefficients `conj(z)ⁿ/ρ_n`,
    /// truncated once the squared-norm tail is below `tol` times the norm.
    pub fn kernel_section(eta: f64, sigma: f64, z: Complex64, tol: f64) -> Result<Self, Error> {
        check_space(eta, sigma)?;
        let r2 = z.norm_sqr();
        // |g_n|² ρ_n = |z|^{2n}/ρ_n
        let mut weight = 1.0;
        let mut coeff = Complex64::new(1.0, 0.0);
        let mut coeffs = Vec::new();
        let eval = certified_sum(
            |n| {
                coeffs.push(coeff);
                let out = (Complex64::new(weight, 0.0), weight);
                let step = norm_step(eta, sigma, n);
                weight *= r2 / step;
                coeff *= z.conj() / step;
                out
            },
            |n| r2 / norm_step(eta, sigma, n),
            tol,
        )?;
        Ok(Self { coeffs, eta, sigma, tail_bound: eval.tail_bound })
    }

    /// `Σ f_n zⁿ` over the stored coefficients.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Squared norm of the stored truncation.
    pub fn norm_sqr(&self) -> f64 {
        let mut rho = 1.0;
        let mut sum = 0.0;
        for (n, c) in self.coeffs.iter().enumerate() {
            sum += c.norm_sqr() * rho;
            rho *= norm_step(self.eta, self.sigma, n);
        }
        sum
    }
}

fn check_space(eta: f64, sigma: f64) -> Result<(), Error> {
    if eta >= 0.0 && sigma > 0.0 && eta.is_finite() && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("Fock space needs eta >= 0 and sigma > 0, got {eta}, {sigma}")))
    }
}

/// `⟨φ, ψ⟩ = Σ φ_n conj(ψ_n) n!(σ|-η)_n`.
pub fn fock_inner(phi: &FockElement, psi: &FockElement) -> Result<Complex64, Error> {
    if phi.eta != psi.eta || phi.sigma != psi.sigma {
        return Err(Error::SpaceMismatch(phi.eta, phi.sigma, psi.eta, psi.sigma));
    }
    let mut rho = 1.0;
    let mut sum = CompensatedSum::new();
    for (n, (a, b)) in phi.coeffs.iter().zip(&psi.coeffs).enumerate() {
        sum.add(a * b.conj() * rho);
        rho *= norm_step(phi.eta, phi.sigma, n);
    }
    Ok(sum.value())
}

/// `𝕂(z,w) = Σ (conj(z) w)ⁿ / (n!(σ|-η)_n)` with a certified tail.
pub fn fock_kernel(eta: f64, sigma: f64, z: Complex64, w: Complex64, tol: f64) -> Result<SeriesEval, Error> {
    check_space(eta, sigma)?;
    let u = z.conj() * w;
    let un = u.norm();
    let mut t = Complex64::new(1.0, 0.0);
    certified_sum(
        |n| {
            let out = (t, t.norm());
            t *= u / norm_step(eta, sigma, n);
            out
        },
        |n| un / norm_step(eta, sigma, n),
        tol,
    )
}

/// `[𝕂(z_i, z_j)]_{i,j}`.
pub fn kernel_gram(eta: f64, sigma: f64, points: &[Complex64], tol: f64) -> Result<Vec<Vec<Complex64>>, Error> {
    points
        .iter()
        .map(|&z| points.iter().map(|&w| Ok(fock_kernel(eta, sigma, z, w, tol)?.value)).collect())
        .collect()
}
