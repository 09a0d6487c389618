use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::Error;
use crate::combinat::GaussRational;

/// The three orthogonal Sheffer families of the Meixner class with `η > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// `α = β > 0`: Laguerre polynomials, gamma measure.
    Laguerre,
    /// `α > β > 0`: Meixner polynomials, negative binomial measure.
    MeixnerFirst,
    /// `β = conj(α)`, `Im α > 0`, `Re α >= 0`: Meixner–Pollaczek polynomials.
    MeixnerSecond,
}

impl Class {
    pub const ALL: [Class; 3] = [Class::Laguerre, Class::MeixnerFirst, Class::MeixnerSecond];

    pub fn name(self) -> &'static str {
        match self {
            Class::Laguerre => "laguerre",
            Class::MeixnerFirst => "meixner-1",
            Class::MeixnerSecond => "meixner-2",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "laguerre" => Ok(Class::Laguerre),
            "meixner-1" | "meixner-i" | "meixnerfirst" | "meixner-first" => Ok(Class::MeixnerFirst),
            "meixner-2" | "meixner-ii" | "meixnersecond" | "meixner-second" => Ok(Class::MeixnerSecond),
            _ => Err(Error::InvalidParams(format!("unknown class `{s}`"))),
        }
    }
}

/// Validated `(α, β, σ, class)` with the derived `λ = α+β`, `η = αβ` and the
/// recurrence offset `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeixnerParams {
    alpha: GaussRational,
    beta: GaussRational,
    sigma: GaussRational,
    class: Class,
    lambda: GaussRational,
    eta: GaussRational,
    sigma_over_alpha: GaussRational,
}

impl MeixnerParams {
    pub fn new(
        alpha: GaussRational,
        beta: GaussRational,
        sigma: GaussRational,
        class: Class,
    ) -> Result<Self, Error> {
        if !sigma.is_positive_real() {
            return Err(Error::InvalidParams(format!("sigma must be a positive real, got {sigma}")));
        }
        let bad = |why: &str| Err(Error::InvalidParams(format!("{class}: {why} (alpha={alpha}, beta={beta})")));
        match class {
            Class::Laguerre => {
                if !alpha.is_positive_real() || alpha != beta {
                    return bad("requires alpha = beta > 0");
                }
            }
            Class::MeixnerFirst => {
                if !alpha.is_positive_real() || !beta.is_positive_real() || alpha.re() <= beta.re() {
                    return bad("requires real alpha > beta > 0");
                }
            }
            Class::MeixnerSecond => {
                if alpha.re().is_negative() || !alpha.im().is_positive() || beta != alpha.conj() {
                    return bad("requires Re(alpha) >= 0, Im(alpha) > 0 and beta = conj(alpha)");
                }
            }
        }
        let lambda = &alpha + &beta;
        let eta = &alpha * &beta;
        let sigma_over_alpha = &sigma / &alpha;
        Ok(Self { alpha, beta, sigma, class, lambda, eta, sigma_over_alpha })
    }

    /// Laguerre(1,1,1), Meixner-I(2,1,2) and Meixner-II(1+i,1-i,1).
    pub fn reference(class: Class) -> Self {
        let (a, b, s) = match class {
            Class::Laguerre => ((1, 0), (1, 0), 1),
            Class::MeixnerFirst => ((2, 0), (1, 0), 2),
            Class::MeixnerSecond => ((1, 1), (1, -1), 1),
        };
        Self::new(
            GaussRational::from_integers(a.0, a.1),
            GaussRational::from_integers(b.0, b.1),
            GaussRational::from(s),
            class,
        )
        .expect("reference parameters are valid")
    }

    pub fn alpha(&self) -> &GaussRational {
        &self.alpha
    }

    pub fn beta(&self) -> &GaussRational {
        &self.beta
    }

    pub fn sigma(&self) -> &GaussRational {
        &self.sigma
    }

    pub fn class(&self) -> Class {
        self.class
    }

    pub fn lambda(&self) -> &GaussRational {
        &self.lambda
    }

    pub fn eta(&self) -> &GaussRational {
        &self.eta
    }

    pub fn sigma_over_alpha(&self) -> &GaussRational {
        &self.sigma_over_alpha
    }

    /// Constant term `l` of the recurrence: `σ/α`, or `0` for Meixner-II.
    pub fn ell(&self) -> GaussRational {
        match self.class {
            Class::MeixnerSecond => GaussRational::zero(),
            _ => self.sigma_over_alpha.clone(),
        }
    }

    /// Shift `c` with `s_n(x) = p_n(x + c)`.
    pub fn shift(&self) -> GaussRational {
        &self.sigma_over_alpha - &self.ell()
    }

    /// `ρ_n = n! (σ|-η)_n`, the squared norm of `s_n`.
    pub fn norm_sqr(&self, n: usize) -> GaussRational {
        let mut acc = GaussRational::one();
        for k in 0..n {
            let k = GaussRational::from(k as i64);
            acc *= &(&k + &GaussRational::one()) * &(&self.sigma + &(&self.eta * &k));
        }
        acc
    }
}

/// Validates a parameter set. Same as [`MeixnerParams::new`].
pub fn validate_params(
    alpha: GaussRational,
    beta: GaussRational,
    sigma: GaussRational,
    class: Class,
) -> Result<MeixnerParams, Error> {
    MeixnerParams::new(alpha, beta, sigma, class)
}
