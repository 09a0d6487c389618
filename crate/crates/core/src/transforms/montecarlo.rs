//! Sampling the random measure `ρ_z` for the Laguerre class: `ξ ~ Poisson(z/β)`,
//! then `x ~ Gamma(shape (ηξ+σ)/α², scale α)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

use super::coherent::Numeric;
use super::Error;
use crate::par::Execution;
use crate::sheffer::{to_monomial, Class, ExactPoly, MeixnerParams};

const CHUNKS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Default)]
struct Welford {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        let n = self.n + other.n;
        if n == 0.0 {
            return self;
        }
        let d = other.mean - self.mean;
        Welford { n, mean: self.mean + d * other.n / n, m2: self.m2 + other.m2 + d * d * self.n * other.n / n }
    }
}

/// Monte Carlo estimate of `∫ f dρ_z = (𝕊f)(z)` for the Laguerre class and
/// real `z >= 0`. The samples are split into fixed chunks with their own
/// seeds, so the result does not depend on `exec`.
pub fn monte_carlo_rho(
    params: &MeixnerParams,
    f: &ExactPoly,
    z: f64,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<MonteCarloEstimate, Error> {
    if params.class() != Class::Laguerre {
        return Err(Error::Unsupported("Monte Carlo sampling is implemented for the Laguerre class".into()));
    }
    if !(z >= 0.0 && z.is_finite()) || samples < 2 {
        return Err(Error::Unsupported(format!("need real z >= 0 and at least 2 samples, got z = {z}, {samples}")));
    }
    let p = Numeric::new(params);
    let (alpha, beta) = (p.alpha.re, p.beta.re);
    let coeffs: Vec<f64> = to_monomial(params, f).as_poly().to_complex_coeffs().iter().map(|c| c.re).collect();
    let intensity = z / beta;
    let poisson = if intensity > 0.0 {
        Some(Poisson::new(intensity).map_err(|e| Error::Unsupported(e.to_string()))?)
    } else {
        None
    };
    let parts = exec.map_range(CHUNKS, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let count = samples / CHUNKS + usize::from(chunk < samples % CHUNKS);
        let mut acc = Welford::default();
        for _ in 0..count {
            let xi = poisson.as_ref().map_or(0.0, |d| d.sample(&mut rng));
            let shape = (p.eta * xi + p.sigma) / (alpha * alpha);
            let x = Gamma::new(shape, alpha).expect("positive shape and scale").sample(&mut rng);
            acc.push(coeffs.iter().rev().fold(0.0, |a, c| a * x + c));
        }
        acc
    });
    let total = parts.into_iter().fold(Welford::default(), Welford::merge);
    let variance = total.m2 / (total.n - 1.0);
    Ok(MonteCarloEstimate { mean: total.mean, std_error: (variance / total.n).sqrt(), samples, seed })
}
