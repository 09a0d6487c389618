use meixner::combinat::{genfact, stirling2, GaussRational};
use meixner::measures::{
    bessel_k, bessel_k_series, complex_gamma, density, falling_moment_check, fock_density_mixture, fock_moment_check,
    integrate, moment_check, orthogonality_gram, poisson_expect, MeasureSpec, QuadConfig,
};
use meixner::par::Execution;
use meixner::sheffer::{Class, MeixnerParams};
use num_complex::Complex64;
use proptest::prelude::*;

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

#[test]
fn moments_match_exact_functional() {
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        let (n_max, tol) = if class == Class::MeixnerSecond { (6, 1e-6) } else { (8, 1e-8) };
        for n in 0..=n_max {
            let m = moment_check(&p, n, &cfg).unwrap();
            assert!(m.rel_error() < tol, "{class} n={n}: {} vs {}", m.quadrature, m.exact);
        }
    }
}

#[test]
fn falling_moments() {
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        for n in 0..=6 {
            let m = falling_moment_check(&p, n, &cfg).unwrap();
            assert!(m.rel_error() < 1e-8, "{class} n={n}: {} vs {}", m.quadrature, m.exact);
        }
    }
}

#[test]
fn gram_matrix_is_diagonal_norms() {
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        let seq = orthogonality_gram(&p, 5, &cfg, Execution::Sequential).unwrap();
        let par = orthogonality_gram(&p, 5, &cfg, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        let tol = if class == Class::MeixnerSecond { 1e-5 } else { 1e-6 };
        for (i, row) in seq.iter().enumerate() {
            for (j, (v, e)) in row.iter().enumerate() {
                let scale = p.norm_sqr(i.max(j)).to_complex64().norm();
                assert!((v - e.to_complex64()).norm() < tol * scale, "{class} ({i},{j}): {v} vs {e}");
            }
        }
    }
}

#[test]
fn fock_moments() {
    let cfg = QuadConfig::default();
    for (eta, sigma) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0)] {
        for m in 0..=5 {
            for n in 0..=5 {
                let (v, e) = fock_moment_check(eta, sigma, m, n, &cfg).unwrap();
                let scale = if m == n { e } else { 1.0 };
                assert!((v - e).norm() < 1e-6 * scale, "η={eta} σ={sigma} ({m},{n}): {v} vs {e}");
            }
        }
    }
}

#[test]
fn fock_density_two_forms() {
    let cfg = QuadConfig::default();
    for (eta, sigma) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (0.5, 1.5)] {
        let spec = MeasureSpec::FockLambda { eta, sigma };
        for r in [0.1, 0.5, 1.0, 2.0, 3.5] {
            let bessel = density(&spec, c(r, 0.0)).unwrap().re;
            let mixture = fock_density_mixture(eta, sigma, r, &cfg).unwrap();
            assert!(((bessel - mixture) / bessel).abs() < 1e-8, "η={eta} σ={sigma} r={r}: {bessel} vs {mixture}");
        }
    }
}

#[test]
fn complex_parameter_densities_agree_with_real_ones() {
    // a tiny imaginary nudge switches every density onto its complex path
    let cases = [
        (MeasureSpec::Gamma { alpha: 1.5, zeta: c(0.7, 0.0) }, vec![0.2, 1.0, 6.0]),
        (MeasureSpec::NegBinomial { alpha: 2.0, beta: 0.5, zeta: c(1.3, 0.0) }, vec![0.0, 1.5, 6.0]),
        (MeasureSpec::Meixner { alpha: c(1.0, 2.0), zeta: c(0.9, 0.0) }, vec![-3.0, 0.0, 2.5]),
        (MeasureSpec::Meixner { alpha: c(0.0, 1.0), zeta: c(2.0, 0.0) }, vec![-1.0, 0.5, 7.0]),
    ];
    for (spec, points) in cases {
        for x in points {
            let a = density(&spec, c(x, 0.0)).unwrap();
            assert_eq!(a.im, 0.0);
            let nudged = match spec {
                MeasureSpec::Gamma { alpha, zeta } => MeasureSpec::Gamma { alpha, zeta: zeta + c(0.0, 1e-300) },
                MeasureSpec::NegBinomial { alpha, beta, zeta } => {
                    MeasureSpec::NegBinomial { alpha, beta, zeta: zeta + c(0.0, 1e-300) }
                }
                MeasureSpec::Meixner { alpha, zeta } => MeasureSpec::Meixner { alpha, zeta: zeta + c(0.0, 1e-300) },
                other => other,
            };
            let b = density(&nudged, c(x, 0.0)).unwrap();
            assert!(rel(b, a) < 1e-12, "{spec} at {x}: {a} vs {b}");
        }
    }
}

#[test]
fn gamma_measure_with_complex_shape() {
    // E[xⁿ] = αⁿ (ζ/α²)^{(n)}
    let cfg = QuadConfig::default();
    for (alpha, zeta) in [(1.0, c(1.0, 0.5)), (2.0, c(3.0, -2.0)), (0.5, c(0.3, 0.1))] {
        let spec = MeasureSpec::Gamma { alpha, zeta };
        let s = zeta / (alpha * alpha);
        for n in 0..=6u32 {
            let want = (0..n).map(|j| (s + j as f64) * alpha).product::<Complex64>();
            let got = integrate(&spec, &|x: Complex64| x.powu(n), &cfg).unwrap().value;
            assert!(rel(got, want) < 1e-8, "α={alpha} ζ={zeta} n={n}: {got} vs {want}");
        }
    }
}

#[test]
fn negative_binomial_with_complex_parameter() {
    // ∫ (x|α-β)_n dμ = βⁿ (ζ/η)^{(n)} for every complex ζ
    let cfg = QuadConfig::default();
    let (alpha, beta) = (2.0, 1.0);
    for zeta in [c(1.0, 1.0), c(-2.5, 0.0), c(-1.0, 3.0), c(4.0, -0.5)] {
        let spec = MeasureSpec::NegBinomial { alpha, beta, zeta };
        let s = zeta / (alpha * beta);
        for n in 0..=6u32 {
            let want = (0..n).map(|j| (s + j as f64) * beta).product::<Complex64>();
            let f = |x: Complex64| (0..n).map(|j| x - (alpha - beta) * j as f64).product::<Complex64>();
            let got = integrate(&spec, &f, &cfg).unwrap().value;
            assert!((got - want).norm() < 1e-8 * want.norm().max(1.0), "ζ={zeta} n={n}: {got} vs {want}");
        }
    }
}

/// `∫ (x + ζ/α)ⁿ dμ_{α,β,ζ} = Σ_k (α-β)^{n-k} S(n,k) (ζ/α|-β)_k`.
fn meixner_shifted_moment(alpha: &GaussRational, zeta: &GaussRational, n: usize) -> GaussRational {
    let beta = alpha.conj();
    let diff = alpha - &beta;
    let offset = zeta * &alpha.inv().unwrap();
    (0..=n)
        .map(|k| {
            diff.pow((n - k) as u32) * GaussRational::from(stirling2(n, k).unwrap()) * genfact(&offset, &-&beta, k)
        })
        .sum()
}

#[test]
fn meixner_measure_with_complex_parameter() {
    let cfg = QuadConfig::default();
    let cases = [
        (GaussRational::from_integers(1, 1), "1+1/2i".parse::<GaussRational>().unwrap()),
        (GaussRational::from_integers(0, 1), "3/2-2i".parse::<GaussRational>().unwrap()),
        ("1/2+2i".parse::<GaussRational>().unwrap(), "2+1i".parse::<GaussRational>().unwrap()),
    ];
    for (alpha, zeta) in cases {
        let a = alpha.to_complex64();
        let z = zeta.to_complex64();
        let spec = MeasureSpec::Meixner { alpha: a, zeta: z };
        let offset = z / a;
        for n in 0..=6usize {
            let want = meixner_shifted_moment(&alpha, &zeta, n).to_complex64();
            let got = integrate(&spec, &|x: Complex64| (x + offset).powu(n as u32), &cfg).unwrap().value;
            assert!((got - want).norm() < 1e-6 * want.norm().max(1.0), "α={a} ζ={z} n={n}: {got} vs {want}");
        }
    }
}

#[test]
fn poisson_falling_factorial_identity() {
    let cfg = QuadConfig::default();
    for zeta in [c(0.0, 0.0), c(3.0, 1.0), c(-2.0, 0.0), c(-1.0, 1.0), c(0.5, -2.0), c(6.0, 0.0)] {
        for n in 0..=8usize {
            let f = |k: usize| c((0..n).map(|j| k as f64 - j as f64).product::<f64>(), 0.0);
            let got = poisson_expect(zeta, &f, &cfg).unwrap().value;
            let want = zeta.powu(n as u32);
            assert!((got - want).norm() <= 1e-10 * want.norm().max(1.0), "ζ={zeta} n={n}: {got} vs {want}");
        }
    }
}

#[test]
fn bessel_two_paths_at_reference_point() {
    let a = bessel_k(1.0, 2.0).unwrap();
    let b = bessel_k_series(1.0, 2.0).unwrap();
    assert!(((a - b) / b).abs() < 1e-9);
    let half = bessel_k(0.5, 1.0).unwrap();
    let closed = (std::f64::consts::PI / 2.0).sqrt() * (-1f64).exp();
    assert!(((half - closed) / closed).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_commutes_with_conjugation(re in -20.0f64..20.0, im in 0.01f64..20.0) {
        let z = c(re, im);
        let a = complex_gamma(z.conj()).unwrap();
        let b = complex_gamma(z).unwrap().conj();
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn gamma_recurrence(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let z = c(re, im);
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn bessel_order_symmetry(theta in 0.0f64..6.0, x in 0.05f64..40.0) {
        let a = bessel_k(theta, x).unwrap();
        let b = bessel_k(-theta, x).unwrap();
        prop_assert!(((a - b) / a).abs() < 1e-10);
    }

    #[test]
    fn bessel_series_agrees_off_integers(theta in 0.05f64..3.0, x in 0.1f64..5.0) {
        prop_assume!((theta - theta.round()).abs() > 0.05);
        let a = bessel_k(theta, x).unwrap();
        let b = bessel_k_series(theta, x).unwrap();
        prop_assert!(((a - b) / a).abs() < 1e-9, "θ={} x={}: {} vs {}", theta, x, a, b);
    }
}
