use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{lah, CombinatError, GaussRational};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Generalized factorial `(z|h)_n = z(z-h)...(z-(n-1)h)`, with `(z|h)_0 = 1`.
pub fn genfact(z: &GaussRational, h: &GaussRational, n: usize) -> GaussRational {
    let mut acc = GaussRational::one();
    let mut term = z.clone();
    for _ in 0..n {
        acc *= &term;
        term -= h;
    }
    acc
}

/// Rising factorial `z^{(n)} = (z|-1)_n`.
pub fn rising(z: &GaussRational, n: usize) -> GaussRational {
    genfact(z, &-GaussRational::one(), n)
}

/// `S(n, k; h, r)`: coefficient of `(z|-h)_k` in `(z+r|h)_n`, evaluated by the
/// Lah-number sum `Σ_j C(n,j) (-h)^{n-j-k} L(n-j,k) (r|h)_j` for `k >= 1`
/// and `(r|h)_n` for `k = 0`.
pub fn gen_stirling(
    n: usize,
    k: usize,
    h: &GaussRational,
    r: &GaussRational,
) -> Result<GaussRational, CombinatError> {
    if k > n {
        return Err(CombinatError::IndexOutOfTriangle { what: "gen_stirling", n, k });
    }
    if k == 0 {
        return Ok(genfact(r, h, n));
    }
    let minus_h = -h;
    let mut acc = GaussRational::zero();
    // (r|h)_j built incrementally
    let mut r_fact = GaussRational::one();
    for j in 0..=n - k {
        if j > 0 {
            r_fact *= r - &(h * &GaussRational::from((j - 1) as i64));
        }
        let coeff = GaussRational::from(binomial(n, j) * lah(n - j, k)?);
        acc += coeff * minus_h.pow((n - j - k) as u32) * &r_fact;
    }
    Ok(acc)
}
