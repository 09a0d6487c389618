//! One PASS/FAIL line per acceptance criterion, printed uncaptured (the test
//! has no libtest harness). Criterion 11 (Monte Carlo) is
//! reported but does not gate.

use std::time::{Duration, Instant};

use meixner::combinat::GaussRational;
use meixner::measures::{
    density, fock_density_mixture, fock_moment_check, mellin_convolution_check, moment_check, orthogonality_gram,
    MeasureSpec, QuadConfig,
};
use meixner::par::Execution;
use meixner::poly::Poly;
use meixner::sheffer::{shifted_polys, sheffer_poly, Basis, Class, ConversionTables, ExactPoly, MeixnerParams};
use meixner::transforms::{
    annihilator_eigen_check, coherent_e, coherent_e_closed, monte_carlo_rho, rho_expectation, transform_curly_s,
    transform_curly_s_by_moments, transform_s_exact, transform_t_exact, v_integral_action, v_symbolic,
};
use meixner::weylalg::{normal_order, uv_power_closed_form, vn_u_relation_check, OperatorExpr};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 20_240_601;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = b.norm();
    if s == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / s
    }
}

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRational {
    let re = GaussRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=5));
    let im = GaussRational::ratio(rng.random_range(-9..=9), rng.random_range(1..=5));
    &re + &(&GaussRational::i() * &im)
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> ExactPoly {
    ExactPoly::new(Basis::Monomial, (0..=degree).map(|_| random_gauss(rng)).collect())
}

fn references() -> Vec<MeixnerParams> {
    Class::ALL.iter().map(|&class| MeixnerParams::reference(class)).collect()
}

/// Tracks the worst relative error of a family of comparisons.
struct Worst {
    tol: f64,
    value: f64,
    at: String,
}

impl Worst {
    fn new(tol: f64) -> Self {
        Self { tol, value: 0.0, at: String::new() }
    }

    fn record(&mut self, err: f64, at: impl FnOnce() -> String) {
        if !(err <= self.value) {
            self.value = err;
            self.at = at();
        }
    }

    fn ok(&self) -> bool {
        self.value <= self.tol
    }

    fn summary(&self) -> String {
        format!("worst rel error {:.2e} (tol {:.0e}) at {}", self.value, self.tol, self.at)
    }
}

fn verdict(checks: &[&Worst]) -> Outcome {
    let text = checks.iter().map(|w| w.summary()).collect::<Vec<_>>().join("; ");
    if checks.iter().all(|w| w.ok()) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..20 {
        let (a, b) = (random_gauss(&mut rng), random_gauss(&mut rng));
        for n in 0..=8u32 {
            let expr = OperatorExpr::power(OperatorExpr::product(OperatorExpr::U, OperatorExpr::V), n);
            if uv_power_closed_form(n, &a, &b) != normal_order(&expr, &a, &b) {
                return Err(format!("(UV)^{n} differs at trial {trial}, a = {a}, b = {b}"));
            }
        }
    }
    Ok("(UV)^n closed form equals rewriting for n <= 8 at 20 random (a, b)".into())
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for trial in 0..20 {
        let (a, b) = (random_gauss(&mut rng), random_gauss(&mut rng));
        for n in 0..=10u32 {
            if !vn_u_relation_check(n, &a, &b) {
                return Err(format!("V^n U relation fails for n = {n} at trial {trial}, a = {a}, b = {b}"));
            }
        }
    }
    Ok("V^n U relation exact for n <= 10 at 20 random (a, b)".into())
}

fn criterion_3() -> Outcome {
    let cfg = QuadConfig::default();
    let mut worst = [Worst::new(1e-6), Worst::new(1e-6), Worst::new(1e-5)];
    for (w, p) in worst.iter_mut().zip(references()) {
        let gram = orthogonality_gram(&p, 5, &cfg, Execution::Parallel).map_err(|e| e.to_string())?;
        for (i, row) in gram.iter().enumerate() {
            for (j, (v, e)) in row.iter().enumerate() {
                // off-diagonal entries are measured against the larger norm
                let scale = p.norm_sqr(i.max(j)).to_complex64().norm();
                w.record((v - e.to_complex64()).norm() / scale, || format!("{} ({i},{j})", p.class()));
            }
        }
    }
    verdict(&worst.iter().collect::<Vec<_>>())
}

fn criterion_4() -> Outcome {
    let cfg = QuadConfig::default();
    let mut worst = [Worst::new(1e-8), Worst::new(1e-8), Worst::new(1e-6)];
    for (w, p) in worst.iter_mut().zip(references()) {
        let n_max = if p.class() == Class::MeixnerSecond { 6 } else { 8 };
        for n in 0..=n_max {
            let m = moment_check(&p, n, &cfg).map_err(|e| e.to_string())?;
            w.record(m.rel_error(), || format!("{} n={n}", p.class()));
        }
    }
    verdict(&worst.iter().collect::<Vec<_>>())
}

fn criterion_5() -> Outcome {
    let cfg = QuadConfig::default();
    let mut moments = Worst::new(1e-6);
    let mut forms = Worst::new(1e-6);
    for (eta, sigma) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0)] {
        for n in 0..=5 {
            let (v, e) = fock_moment_check(eta, sigma, n, n, &cfg).map_err(|e| e.to_string())?;
            moments.record(rel(v, c(e, 0.0)), || format!("moment η={eta} σ={sigma} n={n}"));
        }
        let spec = MeasureSpec::FockLambda { eta, sigma };
        for r in [0.1, 0.5, 1.0, 2.0, 3.5] {
            let bessel = density(&spec, c(r, 0.0)).map_err(|e| e.to_string())?.re;
            let mixture = fock_density_mixture(eta, sigma, r, &cfg).map_err(|e| e.to_string())?;
            forms.record(((bessel - mixture) / bessel).abs(), || format!("density η={eta} σ={sigma} r={r}"));
        }
    }
    verdict(&[&moments, &forms])
}

fn criterion_6() -> Outcome {
    let cfg = QuadConfig::default();
    let mut worst = Worst::new(1e-6);
    for sigma in [1.0, 2.0] {
        for z in [c(0.5, 0.0), c(1.0, 1.0), c(-1.5, 0.5)] {
            let (lhs, rhs) = mellin_convolution_check(sigma, z.norm_sqr(), &cfg).map_err(|e| e.to_string())?;
            worst.record(((lhs - rhs) / rhs).abs(), || format!("σ={sigma} z={z}"));
        }
    }
    verdict(&[&worst])
}

fn grid_points(class: Class) -> [f64; 3] {
    match class {
        Class::Laguerre => [0.5, 1.0, 3.0],
        Class::MeixnerFirst => [0.0, 1.0, 3.0],
        Class::MeixnerSecond => [-1.0, 0.0, 2.0],
    }
}

fn criterion_7() -> Outcome {
    let mut worst = Worst::new(1e-6);
    for p in references() {
        for x in grid_points(p.class()) {
            for z in [c(1.0, 0.0), c(0.5, 0.5), c(-1.5, 1.0)] {
                let a = coherent_e(&p, x, z, 1e-14).map_err(|e| e.to_string())?.value;
                let b = coherent_e_closed(&p, x, z, 1e-14).map_err(|e| e.to_string())?.value;
                worst.record(rel(a, b), || format!("{} x={x} z={z}", p.class()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
        for order in 1..=5 {
            let z = random_gauss(&mut rng);
            let residual = annihilator_eigen_check(&p, &z, order).map_err(|e| e.to_string())?;
            if residual != 0.0 {
                return Err(format!("A⁻E_N ≠ zE_(N-1) for {} N={order} z={z}", p.class()));
            }
        }
    }
    verdict(&[&worst]).map(|s| format!("{s}; annihilator identity exact for N <= 5"))
}

fn criterion_8() -> Outcome {
    let cfg = QuadConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    for p in references() {
        let mut polys: Vec<ExactPoly> = (0..=6).map(|n| sheffer_poly(&p, n)).collect();
        polys.extend((0..=6).map(|d| random_poly(&mut rng, d)));
        for f in &polys {
            let composed = transform_t_exact(&p, &ExactPoly::from_poly(Basis::Monomial, transform_curly_s_by_moments(&p, f)));
            if composed != transform_s_exact(&p, f) {
                return Err(format!("𝕋∘𝓢 ≠ 𝕊 for {} on {f:?}", p.class()));
            }
        }
    }
    let mut curly = Worst::new(1e-6);
    let mut rho = Worst::new(1e-6);
    for p in references() {
        let beta = p.beta().to_complex64();
        let zs = match p.class() {
            Class::Laguerre => [c(1.0, 0.0), c(0.5, 0.5), c(-0.3, 1.0)],
            Class::MeixnerFirst => [c(1.0, 0.0), c(-2.0, 1.0), c(0.0, 0.5)],
            Class::MeixnerSecond => [c(1.0, 0.0), c(0.5, 0.0), c(-0.2, 0.1)],
        };
        for z in zs {
            for d in [2, 4] {
                let f = random_poly(&mut rng, d);
                // Σ f_n (z|β)_n from the exact Sheffer coefficients
                let coeffs = transform_s_exact(&p, &f).to_complex_coeffs();
                let want: Complex64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, a)| a * (0..n).map(|j| z - beta * j as f64).product::<Complex64>())
                    .sum();
                let got = transform_curly_s(&p, &f, z, &cfg).map_err(|e| e.to_string())?.value;
                curly.record(rel(got, want), || format!("{} z={z} degree {d}", p.class()));
            }
        }
        let zs = match p.class() {
            Class::MeixnerSecond => [beta, 2.0 * beta],
            _ => [c(1.0, 0.0), c(1.0, 0.5)],
        };
        for z in zs {
            for n in 0..=3 {
                let got = rho_expectation(&p, &sheffer_poly(&p, n), z, &cfg).map_err(|e| e.to_string())?.value;
                rho.record(rel(got, z.powu(n as u32)), || format!("{} z={z} s_{n}", p.class()));
            }
        }
    }
    verdict(&[&curly, &rho]).map(|s| format!("𝕊 = 𝕋∘𝓢 exact to degree 6; {s}"))
}

fn criterion_9() -> Outcome {
    let cfg = QuadConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut worst = Worst::new(1e-6);
    for p in references() {
        for _ in 0..4 {
            let degree = rng.random_range(0..=5);
            let f = random_poly(&mut rng, degree);
            let symbolic = v_symbolic(&p, &f).map_err(|e| e.to_string())?;
            for _ in 0..5 {
                let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let want = symbolic.as_poly().eval_complex(z);
                let got = v_integral_action(&p, &f, z, &cfg).map_err(|e| e.to_string())?;
                worst.record((got - want).norm() / want.norm().max(1.0), || format!("{} z={z}", p.class()));
            }
        }
    }
    verdict(&[&worst])
}

/// Coefficients of `target` in the triangular basis `basis[0..]` by back substitution.
fn triangular_solve(basis: &[Poly], target: &Poly) -> Poly {
    let mut rest = target.clone();
    let mut out = vec![GaussRational::zero(); target.coeffs().len()];
    for i in (0..out.len()).rev() {
        let lead = basis[i].coeff(i);
        let c = &rest.coeff(i) / &lead;
        rest = &rest - &basis[i].scale(&c);
        out[i] = c;
    }
    Poly::new(out)
}

fn criterion_10() -> Outcome {
    for p in references() {
        let tables = ConversionTables::new(&p, 8);
        let shifted = shifted_polys(&p, 8);
        for n in 0..=8 {
            let expansion = Poly::new(tables.monomial_in_p(n).to_vec());
            if expansion != triangular_solve(&shifted, &Poly::monomial(n)) {
                return Err(format!("monomial expansion of z^{n} differs for {}", p.class()));
            }
            if Poly::new(tables.p_in_monomial(n).to_vec()) != shifted[n] {
                return Err(format!("monomial coefficients of p_{n} differ for {}", p.class()));
            }
        }
    }
    Ok("both expansions equal the triangular solve for n <= 8, all classes".into())
}

fn criterion_11() -> Outcome {
    let p = MeixnerParams::reference(Class::Laguerre);
    let est = monte_carlo_rho(&p, &sheffer_poly(&p, 2), 1.0, 1_000_000, SEED, Execution::Parallel)
        .map_err(|e| e.to_string())?;
    let dev = (est.mean - 1.0).abs() / est.std_error;
    let text = format!("mean {:.5} ± {:.5} (seed {}), {:.2} standard errors from 1", est.mean, est.std_error, est.seed, dev);
    if dev <= 3.0 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome, Option<Duration>, bool); 11] = [
        (1, criterion_1, Some(Duration::from_secs(5)), true),
        (2, criterion_2, Some(Duration::from_secs(1)), true),
        (3, criterion_3, Some(Duration::from_secs(60)), true),
        (4, criterion_4, Some(Duration::from_secs(30)), true),
        (5, criterion_5, Some(Duration::from_secs(30)), true),
        (6, criterion_6, None, true),
        (7, criterion_7, None, true),
        (8, criterion_8, None, true),
        (9, criterion_9, None, true),
        (10, criterion_10, Some(Duration::from_secs(5)), true),
        (11, criterion_11, Some(Duration::from_secs(300)), false),
    ];
    let mut failed = Vec::new();
    for (id, run, budget, gating) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(text), Some(b)) if elapsed > b => Err(format!("{text}; over the {}s budget", b.as_secs())),
            (o, _) => o,
        };
        let tag = if gating { "" } else { " (optional)" };
        match &outcome {
            Ok(text) => println!("criterion {id:>2}: PASS{tag} [{:.2}s] {text}", elapsed.as_secs_f64()),
            Err(text) => println!("criterion {id:>2}: FAIL{tag} [{:.2}s] {text}", elapsed.as_secs_f64()),
        }
        if outcome.is_err() && gating {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
