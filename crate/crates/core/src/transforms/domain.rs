use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinat::GaussRational;
use crate::sheffer::{Class, MeixnerParams};

/// The three open sets on which the transforms are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Where the falling-β expansions converge: all of `ℂ` for Meixner-I,
    /// `Re(αz) > -σ/2` when `|α| = |β|`.
    Expansion,
    /// Admissible measure parameters `ζ` (see [`crate::measures::MeasureSpec`]).
    Parameter,
    /// `{z : αz + σ ∈ Parameter}`.
    Shifted,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Expansion, Region::Parameter, Region::Shifted];

    pub fn name(self) -> &'static str {
        match self {
            Region::Expansion => "expansion",
            Region::Parameter => "parameter",
            Region::Shifted => "shifted",
        }
    }

    /// Human-readable form of the defining inequality for `params`.
    pub fn predicate(self, params: &MeixnerParams) -> &'static str {
        match (self, params.class()) {
            (_, Class::MeixnerFirst) => "z finite",
            (Region::Expansion, _) => "Re(αz) > −σ/2",
            (Region::Parameter, Class::Laguerre) => "Re(ζ) > 0",
            (Region::Parameter, _) => "Re(ζ) > 0 and |Im ζ|·Re α < Re ζ·Im α",
            (Region::Shifted, Class::Laguerre) => "Re(αz + σ) > 0",
            (Region::Shifted, _) => "ζ = αz + σ with Re(ζ) > 0 and |Im ζ|·Re α < Re ζ·Im α",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "expansion" => Ok(Region::Expansion),
            "parameter" => Ok(Region::Parameter),
            "shifted" => Ok(Region::Shifted),
            other => Err(format!("unknown region {other:?} (expected expansion, parameter or shifted)")),
        }
    }
}

fn parameter_exact(params: &MeixnerParams, zeta: &GaussRational) -> bool {
    let alpha = params.alpha();
    match params.class() {
        Class::MeixnerFirst => true,
        Class::Laguerre => zeta.re().is_positive(),
        Class::MeixnerSecond => {
            if !zeta.re().is_positive() {
                return false;
            }
            // |Im ζ| Re α < Re ζ Im α, vacuous when Re α = 0
            alpha.re().is_zero() || zeta.im().abs() * alpha.re() < zeta.re() * alpha.im()
        }
    }
}

/// Exact membership of `z` in `region`.
pub fn in_domain_exact(region: Region, z: &GaussRational, params: &MeixnerParams) -> bool {
    match region {
        Region::Expansion => match params.class() {
            Class::MeixnerFirst => true,
            _ => {
                let half_sigma = params.sigma().re() / BigRational::from_integer(2.into());
                (params.alpha() * z).re() > &-half_sigma
            }
        },
        Region::Parameter => parameter_exact(params, z),
        Region::Shifted => parameter_exact(params, &(params.alpha() * z + params.sigma())),
    }
}

/// `Ok` when `z ∈ region`, otherwise the error naming the violated predicate.
pub(crate) fn require(region: Region, z: Complex64, params: &MeixnerParams) -> Result<(), super::Error> {
    if in_domain(region, z, params) {
        Ok(())
    } else {
        Err(super::Error::OutsideDomain { region, predicate: region.predicate(params), re: z.re, im: z.im })
    }
}

/// Floating-point membership of `z` in `region`, by the same inequalities.
pub fn in_domain(region: Region, z: Complex64, params: &MeixnerParams) -> bool {
    let alpha = params.alpha().to_complex64();
    let sigma = params.sigma().to_complex64().re;
    match region {
        Region::Expansion => match params.class() {
            Class::MeixnerFirst => z.is_finite(),
            _ => (alpha * z).re > -0.5 * sigma,
        },
        Region::Parameter => crate::measures::parameter_in_domain(params.class(), alpha, z),
        Region::Shifted => crate::measures::parameter_in_domain(params.class(), alpha, alpha * z + sigma),
    }
}
