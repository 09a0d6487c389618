use meixner::combinat::GaussRational;
use meixner::measures::QuadConfig;
use meixner::par::Execution;
use meixner::poly::Poly;
use meixner::sheffer::{falling_beta_to_monomial, sheffer_poly, Basis, Class, ExactPoly, MeixnerParams};
use meixner::transforms::{
    annihilator_eigen_check, coherent_e, coherent_e_closed, curly_e, curly_e_series, fock_inner, fock_kernel,
    in_domain, isometry_check, kernel_gram, monte_carlo_rho, rho_expectation, transform_curly_s,
    transform_curly_s_by_moments, transform_curly_s_exact, transform_s, transform_s_exact, transform_s_quadrature,
    transform_t, transform_t_exact, transform_t_poisson, v_integral_action, v_symbolic, Error, FockElement, Region,
};
use nalgebra::DMatrix;
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

fn g(s: &str) -> GaussRational {
    s.parse().unwrap()
}

fn unit(n: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); n + 1];
    v[n] = c(1.0, 0.0);
    v
}

/// `(z|β)_n` by its defining product.
fn falling(z: Complex64, beta: Complex64, n: usize) -> Complex64 {
    (0..n).map(|j| z - beta * j as f64).product()
}

fn support_points(class: Class) -> [f64; 3] {
    match class {
        Class::Laguerre => [0.5, 1.0, 3.0],
        // α - β = 1 at the reference set
        Class::MeixnerFirst => [0.0, 1.0, 3.0],
        Class::MeixnerSecond => [-1.0, 0.0, 2.0],
    }
}

#[test]
fn coherent_state_two_paths() {
    let zs = [c(1.0, 0.0), c(0.5, 0.5), c(-1.5, 1.0)];
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        for x in support_points(class) {
            for z in zs {
                let series = coherent_e(&p, x, z, 1e-14).unwrap();
                let closed = coherent_e_closed(&p, x, z, 1e-14).unwrap();
                assert!(rel(series.value, closed.value) < 1e-8, "{class} x={x} z={z}: {} vs {}", series.value, closed.value);
            }
        }
    }
}

#[test]
fn coherent_state_documented_points() {
    let lag = MeixnerParams::reference(Class::Laguerre);
    let a = coherent_e(&lag, 1.0, c(1.0, 0.0), 1e-14).unwrap().value;
    let b = coherent_e_closed(&lag, 1.0, c(1.0, 0.0), 1e-14).unwrap().value;
    assert!(rel(a, b) < 1e-8);
    // Meixner-I: x = (α-β)·1
    let m1 = MeixnerParams::reference(Class::MeixnerFirst);
    let a = coherent_e(&m1, 1.0, c(1.0, 0.0), 1e-14).unwrap().value;
    let b = coherent_e_closed(&m1, 1.0, c(1.0, 0.0), 1e-14).unwrap().value;
    assert!(rel(a, b) < 1e-8);
    let m2 = MeixnerParams::new(g("i"), g("-i"), g("1"), Class::MeixnerSecond).unwrap();
    let a = coherent_e(&m2, 0.0, c(1.0, 0.0), 1e-14).unwrap().value;
    let b = coherent_e_closed(&m2, 0.0, c(1.0, 0.0), 1e-14).unwrap().value;
    assert!(rel(a, b) < 1e-6);
}

#[test]
fn coherent_series_error_is_within_tail_bound() {
    // Laguerre(1,1,1), x = 1: the truncation error of a loose evaluation stays
    // below its certificate, measured against a tight one
    let p = MeixnerParams::reference(Class::Laguerre);
    for z in [c(2.0, 0.0), c(-3.0, 1.0), c(0.0, 5.0)] {
        let loose = coherent_e(&p, 1.0, z, 1e-6).unwrap();
        let tight = coherent_e(&p, 1.0, z, 1e-15).unwrap();
        assert!((loose.value - tight.value).norm() <= loose.tail_bound + 1e-13 * tight.value.norm());
    }
}

#[test]
fn coherent_state_pairs_to_powers() {
    // ⟨E(·,z), s_n⟩ = zⁿ
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        let z = c(0.8, -0.3);
        for n in 0..=3 {
            let v = transform_s_quadrature(&p, &unit(n), z, &cfg).unwrap().value;
            assert!(rel(v, z.powu(n as u32)) < 1e-6, "{class} n={n}: {v}");
        }
    }
    let lag = MeixnerParams::reference(Class::Laguerre);
    let f = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)];
    let z = c(1.0, 1.0);
    let want = z + 2.0 * z * z;
    assert_eq!(transform_s(&f, z).value, want);
    let quad = transform_s_quadrature(&lag, &f, z, &cfg).unwrap().value;
    assert!(rel(quad, want) < 1e-6, "{quad}");
}

#[test]
fn curly_e_documented_values() {
    let lag = MeixnerParams::reference(Class::Laguerre);
    // Γ(1)/Γ(2)·2¹
    assert!((curly_e(&lag, 2.0, c(1.0, 0.0)).unwrap() - 2.0).norm() < 1e-13);
    assert!((curly_e_series(&lag, 2.0, c(1.0, 0.0), 64).unwrap() - 2.0).norm() < 1e-8);
    assert!(matches!(curly_e(&lag, 2.0, c(-0.6, 0.0)), Err(Error::OutsideDomain { .. })));
}

#[test]
fn curly_e_closed_forms_match_finite_series_on_the_lattice() {
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        let beta = p.beta().to_complex64();
        for x in support_points(class) {
            for k in 0..5 {
                let z = beta * k as f64;
                let closed = curly_e(&p, x, z).unwrap();
                let series = curly_e_series(&p, x, z, k + 1).unwrap();
                assert!(rel(closed, series) < 1e-10, "{class} x={x} k={k}: {closed} vs {series}");
            }
        }
    }
}

#[test]
fn annihilator_eigenvectors_up_to_order_five() {
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        for z in [g("0"), g("1"), g("-3/7+2/5i"), g("11/3")] {
            for order in 1..=5 {
                assert_eq!(annihilator_eigen_check(&p, &z, order).unwrap(), 0.0, "{class} z={z} N={order}");
            }
        }
        assert!(matches!(annihilator_eigen_check(&p, &g("1"), 0), Err(Error::Order)));
    }
}

#[test]
fn s_of_sheffer_polynomials_is_a_power() {
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        for n in 0..6 {
            assert_eq!(transform_s_exact(&p, &sheffer_poly(&p, n)), Poly::monomial(n));
        }
    }
}

fn in_domain_points(class: Class) -> [Complex64; 3] {
    match class {
        Class::Laguerre => [c(1.0, 0.0), c(0.5, 0.5), c(-0.3, 1.0)],
        Class::MeixnerFirst => [c(1.0, 0.0), c(-2.0, 1.0), c(0.0, 0.5)],
        // αz + σ must stay in the sector |Im ζ| < Re ζ
        Class::MeixnerSecond => [c(1.0, 0.0), c(0.5, 0.0), c(-0.2, 0.1)],
    }
}

#[test]
fn curly_s_integral_form() {
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        let beta = p.beta().to_complex64();
        for z in in_domain_points(class) {
            assert!(in_domain(if class == Class::MeixnerSecond { Region::Shifted } else { Region::Expansion }, z, &p));
            for n in 0..=4 {
                let v = transform_curly_s(&p, &sheffer_poly(&p, n), z, &cfg).unwrap().value;
                let want = falling(z, beta, n);
                assert!((v - want).norm() < 1e-6 * want.norm().max(1.0), "{class} z={z} n={n}: {v} vs {want}");
            }
        }
    }
    let lag = MeixnerParams::reference(Class::Laguerre);
    let v = transform_curly_s(&lag, &sheffer_poly(&lag, 2), c(1.0, 0.0), &cfg).unwrap().value;
    assert!(v.norm() < 1e-8);
}

#[test]
fn curly_s_domain_errors_name_the_predicate() {
    let cfg = QuadConfig::default();
    let lag = MeixnerParams::reference(Class::Laguerre);
    let err = transform_curly_s(&lag, &sheffer_poly(&lag, 1), c(-10.0, 0.0), &cfg).unwrap_err();
    assert!(err.to_string().contains("Re(αz) > −σ/2"), "{err}");
    let m2 = MeixnerParams::reference(Class::MeixnerSecond);
    // αz + σ = 1/2 + 1/2 i lies on the sector boundary
    let err = transform_curly_s(&m2, &sheffer_poly(&m2, 1), c(0.0, 0.5), &cfg).unwrap_err();
    assert!(matches!(err, Error::OutsideDomain { region: Region::Shifted, .. }), "{err}");
}

#[test]
fn t_transform_two_paths() {
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        for z in [c(0.3, 0.0), c(2.0, 1.0), c(-1.0, 0.5)] {
            assert_eq!(transform_t(&unit(0), z).value, c(1.0, 0.0));
            let one = transform_t_poisson(&p, &unit(1), z, &cfg).unwrap().value;
            assert!(rel(one, z) < 1e-9, "{class} z={z}: {one}");
            let cube = transform_t_poisson(&p, &unit(3), z, &cfg).unwrap().value;
            assert!(rel(cube, z.powu(3)) < 1e-9, "{class} z={z}: {cube}");
        }
    }
}

#[test]
fn rho_expectation_reproduces_powers() {
    let cfg = QuadConfig::default();
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        let beta = p.beta().to_complex64();
        let zs = match class {
            Class::MeixnerSecond => [beta, 2.0 * beta],
            _ => [c(1.0, 0.0), c(1.0, 0.5)],
        };
        for z in zs {
            for n in 0..=3 {
                let v = rho_expectation(&p, &sheffer_poly(&p, n), z, &cfg).unwrap().value;
                let want = z.powu(n as u32);
                assert!(rel(v, want) < 1e-6, "{class} z={z} n={n}: {v} vs {want}");
            }
        }
    }
    let m2 = MeixnerParams::new(g("i"), g("-i"), g("1"), Class::MeixnerSecond).unwrap();
    let beta = c(0.0, -1.0);
    let v = rho_expectation(&m2, &sheffer_poly(&m2, 1), beta, &cfg).unwrap().value;
    assert!(rel(v, beta) < 1e-6, "{v}");
}

#[test]
fn fock_documented_values() {
    let (eta, sigma) = (1.0, 2.0);
    for m in 0..5 {
        for n in 0..5 {
            let a = FockElement::polynomial(unit(m), eta, sigma).unwrap();
            let b = FockElement::polynomial(unit(n), eta, sigma).unwrap();
            // n!(2|-1)_n = n!(n+1)!
            let want = if m == n { (1..=n).map(|k| (k * (k + 1)) as f64).product() } else { 0.0 };
            assert_eq!(fock_inner(&a, &b).unwrap(), c(want, 0.0));
        }
    }
    let k = fock_kernel(0.0, 1.0, c(1.0, 0.0), c(1.0, 0.0), 1e-15).unwrap();
    assert!((k.value - std::f64::consts::E).norm() < 1e-10 * std::f64::consts::E);
    let phi = FockElement::polynomial(vec![c(0.5, 0.0), c(-1.0, 1.0), c(0.0, 0.0), c(0.25, -2.0)], 2.0, 1.0).unwrap();
    for z in [c(0.3, 0.4), c(-1.0, 2.0)] {
        let section = FockElement::kernel_section(2.0, 1.0, z, 1e-15).unwrap();
        let v = fock_inner(&phi, &section).unwrap();
        assert!(rel(v, phi.eval(z)) < 1e-9);
        // 𝕂(z,z) = ‖𝕂(z,·)‖²
        let kz = fock_kernel(2.0, 1.0, z, z, 1e-15).unwrap().value;
        assert!((section.norm_sqr() - kz.re).abs() <= section.tail_bound + 1e-12 * kz.re);
    }
}

fn min_eigenvalue(gram: &[Vec<Complex64>]) -> (f64, f64, f64) {
    let n = gram.len();
    let m = DMatrix::from_fn(n, n, |i, j| gram[i][j]);
    let asym = (&m - m.adjoint()).norm();
    let eig = m.symmetric_eigenvalues();
    (eig.min(), eig.max(), asym)
}

#[test]
fn kernel_positivity() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (eta, sigma) in [(1.0, 1.0), (2.0, 1.0), (0.0, 1.5), (0.5, 3.0)] {
        let points: Vec<Complex64> =
            (0..5).map(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
        let gram = kernel_gram(eta, sigma, &points, 1e-15).unwrap();
        let (lo, hi, asym) = min_eigenvalue(&gram);
        assert!(asym <= 1e-12 * hi, "not Hermitian: {asym}");
        assert!(lo >= -1e-9 * hi, "η={eta} σ={sigma}: min eigenvalue {lo}");
    }
}

#[test]
fn v_on_first_polynomial_at_zero() {
    let lag = MeixnerParams::reference(Class::Laguerre);
    let one = ExactPoly::new(Basis::Monomial, vec![g("1")]);
    let v = v_integral_action(&lag, &one, c(0.4, 0.0), &QuadConfig::default()).unwrap();
    assert!((v - 1.0).norm() < 1e-10);
    let v = v_integral_action(&lag, &sheffer_poly(&lag, 1), c(0.0, 0.0), &QuadConfig::default()).unwrap();
    assert!(v.norm() < 1e-8, "{v}");
}

#[test]
fn monte_carlo_estimate_is_reproducible() {
    let lag = MeixnerParams::reference(Class::Laguerre);
    let f = sheffer_poly(&lag, 2);
    let a = monte_carlo_rho(&lag, &f, 1.0, 20_000, 3, Execution::Sequential).unwrap();
    let b = monte_carlo_rho(&lag, &f, 1.0, 20_000, 3, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(monte_carlo_rho(&MeixnerParams::reference(Class::MeixnerFirst), &f, 1.0, 100, 3, Execution::Sequential).is_err());
}

fn all_params() -> Vec<MeixnerParams> {
    let mut v: Vec<_> = Class::ALL.iter().map(|&c| MeixnerParams::reference(c)).collect();
    v.push(MeixnerParams::new(g("3/2"), g("3/2"), g("5/7"), Class::Laguerre).unwrap());
    v.push(MeixnerParams::new(g("5/2"), g("1/3"), g("3"), Class::MeixnerFirst).unwrap());
    v.push(MeixnerParams::new(g("i"), g("-i"), g("1"), Class::MeixnerSecond).unwrap());
    v.push(MeixnerParams::new(g("2+1/2i"), g("2-1/2i"), g("3/4"), Class::MeixnerSecond).unwrap());
    v
}

fn gauss_small() -> impl Strategy<Value = GaussRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| &GaussRational::ratio(a, b) + &(&GaussRational::i() * &GaussRational::ratio(c, d)))
}

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = ExactPoly> {
    prop::collection::vec(gauss_small(), 1..=max_degree + 1).prop_map(|v| ExactPoly::new(Basis::Monomial, v))
}

fn complex_coeffs(max_degree: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b)), 1..=max_degree + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_factors_through_curly_s_and_t(f in poly_strategy(6), which in 0usize..7) {
        let p = &all_params()[which];
        let curly = transform_curly_s_by_moments(p, &f);
        // the integral route agrees with the definition Σ f_n s_n ↦ Σ f_n (z|β)_n
        let by_definition = falling_beta_to_monomial(p.beta(), transform_curly_s_exact(p, &f).as_poly());
        prop_assert_eq!(&curly, &by_definition);
        let composed = transform_t_exact(p, &ExactPoly::from_poly(Basis::Monomial, curly));
        prop_assert_eq!(composed, transform_s_exact(p, &f));
    }

    #[test]
    fn annihilator_at_random_points(re in -20i64..20, im in -20i64..20, d in 1i64..9, which in 0usize..7, order in 1usize..=5) {
        let p = &all_params()[which];
        let z = &GaussRational::ratio(re, d) + &(&GaussRational::i() * &GaussRational::ratio(im, d));
        prop_assert_eq!(annihilator_eigen_check(p, &z, order).unwrap(), 0.0);
    }

    #[test]
    fn isometry_on_polynomials(f in complex_coeffs(5), class in 0usize..3) {
        let p = MeixnerParams::reference(Class::ALL[class]);
        let (quad, exact) = isometry_check(&p, &f, &QuadConfig::default()).unwrap();
        prop_assert!(((quad - exact) / exact).abs() < 1e-6, "{} vs {}", quad, exact);
    }

    #[test]
    fn v_integral_matches_symbolic(f in poly_strategy(5), class in 0usize..3, zr in -2.0f64..2.0, zi in -2.0f64..2.0) {
        let p = MeixnerParams::reference(Class::ALL[class]);
        let z = c(zr, zi);
        let want = v_symbolic(&p, &f).unwrap().as_poly().eval_complex(z);
        let got = v_integral_action(&p, &f, z, &QuadConfig::default()).unwrap();
        prop_assert!((got - want).norm() < 1e-6 * want.norm().max(1.0), "{} vs {}", got, want);
    }

    #[test]
    fn flat_kernel_is_exponential(zr in -3.0f64..3.0, zi in -3.0f64..3.0, wr in -3.0f64..3.0, wi in -3.0f64..3.0, sigma in 0.2f64..4.0) {
        let (z, w) = (c(zr, zi), c(wr, wi));
        let u = z.conj() * w / sigma;
        // terms of size e^{|u|} summing to e^{Re u} lose e^{|u| - Re u} to rounding
        prop_assume!(u.norm() - u.re < 7.0);
        let k = fock_kernel(0.0, sigma, z, w, 1e-14).unwrap();
        let want = (z.conj() * w / sigma).exp();
        prop_assert!(rel(k.value, want) < 1e-10);
    }
}
