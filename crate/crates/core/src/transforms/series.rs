use num_complex::Complex64;

use super::Error;
use crate::measures::CompensatedSum;

/// Truncated series value with a rigorous bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

impl SeriesEval {
    pub(crate) fn finite(value: Complex64, terms_used: usize) -> Self {
        Self { value, terms_used, tail_bound: 0.0 }
    }
}

pub(crate) const TERM_CAP: usize = 20_000;

/// Sums `Σ t_n` where `term(n)` returns `t_n` together with a majorant
/// `M_n >= |t_n|`, and `ratio(n)` bounds `M_{k+1}/M_k` for every `k >= n`.
/// Once `ratio(N) < 1` the remainder after `N` is at most `M_N q/(1-q)`.
/// Stops when that bound is below `tol · |S|` (or `tol` when `S = 0`).
pub(crate) fn certified_sum<T, R>(mut term: T, ratio: R, tol: f64) -> Result<SeriesEval, Error>
where
    T: FnMut(usize) -> (Complex64, f64),
    R: Fn(usize) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    let mut sum = CompensatedSum::new();
    for n in 0..TERM_CAP {
        let (t, majorant) = term(n);
        if !t.is_finite() || !majorant.is_finite() {
            return Err(Error::Unreachable { tol, terms: n, best: sum.value() });
        }
        sum.add(t);
        let q = ratio(n);
        if majorant == 0.0 {
            // every later majorant vanishes too
            return Ok(SeriesEval { value: sum.value(), terms_used: n + 1, tail_bound: 0.0 });
        }
        if q < 1.0 {
            let tail = majorant * q / (1.0 - q);
            let value = sum.value();
            let scale = if value.norm() > 0.0 { value.norm() } else { 1.0 };
            if tail <= tol * scale {
                return Ok(SeriesEval { value, terms_used: n + 1, tail_bound: tail });
            }
        }
    }
    Err(Error::Unreachable { tol, terms: TERM_CAP, best: sum.value() })
}
