//! Quadrature primitives: adaptive Gauss–Kronrod on intervals and half-lines,
//! generalized Gauss–Laguerre rules, and compensated summation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::special::ln_gamma_real;
use super::Error;

/// Tolerances and work limits for numeric integration.
///
/// Tail handling per measure:
/// * gamma: Gauss–Laguerre rules of doubling size until two consecutive
///   rules agree;
/// * Meixner and the Fock radial part: geometrically growing panels until
///   two consecutive panels are negligible and the exponential decay bound
///   is below `abs_tol`;
/// * negative binomial and Poisson: the series is summed until the term
///   ratio is below one and the resulting geometric tail is below `abs_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Budget on integrand evaluations (series terms for discrete measures).
    pub max_nodes: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-14, max_nodes: 2_000_000 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || self.max_nodes == 0 {
            return Err(Error::Domain(format!("invalid quadrature config {self:?}")));
        }
        Ok(())
    }

    pub(crate) fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Integral estimate with an error estimate and the work spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

impl QuadResult {
    pub(crate) fn not_converged(self) -> Error {
        Error::NotConverged { re: self.value.re, im: self.value.im, error: self.error, evaluations: self.evaluations }
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (s, c) = acc;
    let t = *s + x;
    if s.abs() >= x.abs() {
        *c += (*s - t) + x;
    } else {
        *c += (x - t) + *s;
    }
    *s = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = Self::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then(other.a.total_cmp(&self.a))
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod_panel<F: Fn(f64) -> Complex64 + ?Sized>(f: &F, a: f64, b: f64) -> Panel {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = fc.norm() * WGK[7];
    let mut values = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(mid - dx), f(mid + dx));
        values[j] = (f1, f2);
        kron += (f1 + f2) * WGK[j];
        abs_k += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).norm() * WGK[7];
    for (j, (f1, f2)) in values.iter().enumerate() {
        asc += ((f1 - mean).norm() + (f2 - mean).norm()) * WGK[j];
    }
    let value = kron * half;
    let resasc = asc * half.abs();
    let resabs = abs_k * half.abs();
    let mut error = ((kron - gauss) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Panel { a, b, value, error }
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`.
///
/// The panel with the largest error is bisected until the summed error is
/// below the tolerance; the final sum runs over panels in position order.
pub fn gauss_kronrod<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let first = kronrod_panel(f, a, b);
    let mut evaluations = 15;
    let mut total_err = first.error;
    let mut total = first.value;
    heap.push(first);
    loop {
        if total_err <= cfg.target(total) || !total.is_finite() {
            break;
        }
        if evaluations + 30 > cfg.max_nodes {
            break;
        }
        let worst = heap.pop().expect("nonempty panel heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval too small to split further
            heap.push(worst);
            break;
        }
        let left = kronrod_panel(f, worst.a, mid);
        let right = kronrod_panel(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).collect::<CompensatedSum>().value();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    let result = QuadResult { value, error, evaluations };
    if !value.is_finite() {
        return Err(Error::Domain("integrand produced a non-finite value".into()));
    }
    if error > cfg.target(value) {
        return Err(result.not_converged());
    }
    Ok(result)
}

/// Integrates `f` over `[start, ∞)` (or `(-∞, start]` when `direction < 0`)
/// on panels whose widths grow by 3/2. Stops once `x` has passed
/// `min_extent` and two consecutive panels each contributed less than the
/// tolerance.
pub fn integrate_half_line<F: Fn(f64) -> Complex64 + ?Sized>(
    f: &F,
    start: f64,
    direction: f64,
    first_width: f64,
    min_extent: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, Error> {
    cfg.validate()?;
    let sign = direction.signum();
    let mut sum = CompensatedSum::new();
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut lo = 0.0;
    let mut width = first_width;
    let mut quiet = 0;
    while evaluations < cfg.max_nodes {
        let hi = lo + width;
        let local = QuadConfig {
            rel_tol: cfg.rel_tol,
            abs_tol: (0.1 * cfg.target(sum.value())).max(cfg.abs_tol * 0.1),
            max_nodes: cfg.max_nodes - evaluations,
        };
        let g = |t: f64| f(start + sign * t);
        let r = match gauss_kronrod(&g, lo, hi, &local) {
            Ok(r) => r,
            Err(Error::NotConverged { re, im, error: e, evaluations: n }) => {
                let best = sum.value() + Complex64::new(re, im);
                return Err(Error::NotConverged { re: best.re, im: best.im, error: error + e, evaluations: evaluations + n });
            }
            Err(e) => return Err(e),
        };
        sum.add(r.value);
        error += r.error;
        evaluations += r.evaluations;
        if r.value.norm() <= cfg.target(sum.value()) {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 2 && hi >= min_extent {
            // the substitution x = start + sign·t keeps the orientation of a half-line
            return Ok(QuadResult { value: sum.value(), error, evaluations });
        }
        lo = hi;
        width *= 1.5;
    }
    let value = sum.value();
    Err(Error::NotConverged { re: value.re, im: value.im, error, evaluations })
}

/// Generalized Laguerre polynomial `L_n^{(a)}(x)` and `L_{n-1}^{(a)}(x)`.
fn laguerre_pair(n: usize, a: f64, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    if n == 0 {
        return (prev, 0.0);
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Nodes and weights of the `n`-point Gauss rule for the probability density
/// `y^a e^{-y} / Γ(a+1)` on `(0, ∞)`, `a > -1`.
///
/// Nodes come from the Golub–Welsch eigenproblem and are polished by Newton
/// steps; weights use `Γ(n+a+1)/(n! y [L_n^{(a)'}(y)]^2)`, which keeps the
/// tiny weights of the far nodes accurate in relative terms.
pub fn gauss_laguerre(n: usize, a: f64) -> Result<(Vec<f64>, Vec<f64>), Error> {
    if !(a > -1.0) || n == 0 || n > 160 {
        return Err(Error::Domain(format!("gauss_laguerre needs a > -1 and 1 <= n <= 160, got n={n}, a={a}")));
    }
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        jac[(k, k)] = 2.0 * kf + a + 1.0;
        if k + 1 < n {
            let off = ((kf + 1.0) * (kf + 1.0 + a)).sqrt();
            jac[(k, k + 1)] = off;
            jac[(k + 1, k)] = off;
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    let nf = n as f64;
    let log_scale = ln_gamma_real(nf + a + 1.0)? - ln_gamma_real(nf + 1.0)? - ln_gamma_real(a + 1.0)?;
    let mut weights = Vec::with_capacity(n);
    for y in nodes.iter_mut() {
        let mut deriv = 0.0;
        for _ in 0..3 {
            let (ln, lm) = laguerre_pair(n, a, *y);
            deriv = (nf * ln - (nf + a) * lm) / *y;
            let step = ln / deriv;
            *y -= step;
            if step.abs() <= 1e-16 * y.abs() {
                break;
            }
        }
        let (ln, lm) = laguerre_pair(n, a, *y);
        if ln.is_finite() {
            deriv = (nf * ln - (nf + a) * lm) / *y;
        }
        weights.push((log_scale - y.ln() - 2.0 * deriv.abs().ln()).exp());
    }
    Ok((nodes, weights))
}
