//! Verification suites. Each check returns report rows; checks run under the
//! library's execution policy and the report is sorted by row id.

use meixner::combinat::{lah, table, GaussRational, StirlingKind, StirlingTable};
use meixner::measures::{
    density, fock_density_mixture, fock_moment_check, mellin_convolution_check, moment_check, orthogonality_check,
    MeasureSpec, QuadConfig,
};
use meixner::par::Execution;
use meixner::poly::Poly;
use meixner::sheffer::{shifted_polys, sheffer_poly, Basis, Class, ConversionTables, ExactPoly, MeixnerParams};
use meixner::transforms::{
    annihilator_eigen_check, coherent_e, coherent_e_closed, fock_kernel, isometry_check, monte_carlo_rho,
    rho_expectation, transform_curly_s, transform_curly_s_by_moments, transform_s_exact, transform_t_exact,
    transform_t_poisson, v_integral_action, v_symbolic,
};
use meixner::weylalg::{normal_order, raw_moment, uv_power_closed_form, vn_u_relation_check, OperatorExpr};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Report, ReportRow};

pub const DEFAULT_SEED: u64 = 20_240_601;
const STIRLING_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Exact,
    Numeric,
    All,
    Slow,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Numeric => "numeric",
            Suite::All => "all",
            Suite::Slow => "slow",
        }
    }
}

pub struct Context {
    pub params: Vec<MeixnerParams>,
    pub cfg: QuadConfig,
    pub seed: u64,
    first: StirlingTable,
    second: StirlingTable,
}

impl Context {
    /// `extra` is checked by the exact suite next to the reference sets.
    pub fn new(extra: Option<MeixnerParams>, cfg: QuadConfig, seed: u64) -> Self {
        let mut params: Vec<_> = Class::ALL.iter().map(|&c| MeixnerParams::reference(c)).collect();
        if let Some(p) = extra {
            if !params.contains(&p) {
                params.push(p);
            }
        }
        Self {
            params,
            cfg,
            seed,
            first: table(StirlingKind::FirstSigned, STIRLING_MAX),
            second: table(StirlingKind::Second, STIRLING_MAX),
        }
    }

    /// Adds one to a seeded entry `S(n,k)` with `2 <= n <= 8`, `1 <= k < n`;
    /// returns the entry.
    pub fn corrupt_stirling(&mut self) -> (usize, usize) {
        let mut rng = self.rng(99);
        let n = rng.random_range(2..=8);
        let k = rng.random_range(1..n);
        let v = self.second.get(n, k) + 1;
        self.second.set(n, k, v);
        (n, k)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
    }

    fn references(&self) -> &[MeixnerParams] {
        &self.params[..3]
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

fn poly_text(p: &Poly) -> String {
    p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type Check = fn(&Context) -> Vec<ReportRow>;

fn stirling_identities(ctx: &Context) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for n in 0..=STIRLING_MAX {
        // Σ_k s(n,k) S(k,m) = δ_{nm}
        let inverse: Vec<String> = (0..=n)
            .map(|m| (m..=n).map(|k| ctx.first.get(n, k) * ctx.second.get(k, m)).sum::<num_bigint::BigInt>().to_string())
            .collect();
        let delta: Vec<String> = (0..=n).map(|m| if m == n { "1" } else { "0" }.to_string()).collect();
        rows.push(ReportRow::exact(format!("combinat/stirling-inverse/n={n:02}"), format!("n={n}"), delta.join(" "), inverse.join(" ")));
        // L(n,m) = Σ_k |s(n,k)| S(k,m), with L(n,0) = 0 for n >= 1
        let via: Vec<String> = (0..=n)
            .map(|m| (m..=n).map(|k| ctx.first.get(n, k).abs() * ctx.second.get(k, m)).sum::<num_bigint::BigInt>().to_string())
            .collect();
        let direct: Vec<String> = (0..=n).map(|m| lah(n, m).unwrap_or_default().to_string()).collect();
        rows.push(ReportRow::exact(format!("combinat/stirling-lah/n={n:02}"), format!("n={n}"), direct.join(" "), via.join(" ")));
    }
    rows
}

fn weyl_identities(ctx: &Context) -> Vec<ReportRow> {
    let mut rng = ctx.rng(1);
    let pairs: Vec<_> = (0..20).map(|_| (random_gauss(&mut rng), random_gauss(&mut rng))).collect();
    let mut rows = Vec::new();
    for n in 0..=8u32 {
        let expr = OperatorExpr::power(OperatorExpr::product(OperatorExpr::U, OperatorExpr::V), n);
        let mut pick = None;
        for (a, b) in &pairs {
            let (closed, rewritten) = (uv_power_closed_form(n, a, b), normal_order(&expr, a, b));
            let bad = closed != rewritten;
            if bad || pick.is_none() {
                pick = Some((format!("a={a} b={b}"), closed.to_string(), rewritten.to_string()));
            }
            if bad {
                break;
            }
        }
        let (inputs, e, a) = pick.expect("20 trials");
        rows.push(ReportRow::exact(format!("weylalg/uv-power-closed-form/n={n:02}"), inputs, e, a));
    }
    for n in 0..=10u32 {
        let ok = pairs.iter().all(|(a, b)| vn_u_relation_check(n, a, b));
        rows.push(ReportRow::exact(format!("weylalg/vn-u-relation/n={n:02}"), "20 seeded (a, b)", "true".into(), ok.to_string()));
    }
    rows
}

fn triangular_solve(basis: &[Poly], target: &Poly) -> Poly {
    let mut rest = target.clone();
    let mut out = vec![GaussRational::zero(); target.coeffs().len()];
    for i in (0..out.len()).rev() {
        let coef = &rest.coeff(i) / &basis[i].coeff(i);
        rest = &rest - &basis[i].scale(&coef);
        out[i] = coef;
    }
    Poly::new(out)
}

fn sheffer_identities(ctx: &Context) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for (idx, p) in ctx.params.iter().enumerate() {
        let tag = format!("{}#{idx}", p.class());
        let tables = ConversionTables::new(p, 8);
        let shifted = shifted_polys(p, 8);
        for n in 0..=8 {
            let closed = Poly::new(tables.monomial_in_p(n).to_vec());
            let solved = triangular_solve(&shifted, &Poly::monomial(n));
            rows.push(ReportRow::exact(format!("sheffer/monomial-expansion/{tag}/n={n:02}"), format!("z^{n}"), poly_text(&solved), poly_text(&closed)));
            let closed = Poly::new(tables.p_in_monomial(n).to_vec());
            rows.push(ReportRow::exact(format!("sheffer/p-expansion/{tag}/n={n:02}"), format!("p_{n}"), poly_text(&shifted[n]), poly_text(&closed)));
            // the moment functional annihilates s_n for n >= 1
            let s = sheffer_poly(p, n);
            let value: GaussRational = s.coeffs().iter().enumerate().map(|(i, a)| a * &raw_moment(p, i)).sum();
            let want = if n == 0 { "1" } else { "0" };
            rows.push(ReportRow::exact(format!("weylalg/moment-functional/{tag}/n={n:02}"), format!("s_{n}"), want.into(), value.to_string()));
        }
    }
    rows
}

fn transform_identities(ctx: &Context) -> Vec<ReportRow> {
    let mut rng = ctx.rng(2);
    let mut rows = Vec::new();
    for (idx, p) in ctx.params.iter().enumerate() {
        let tag = format!("{}#{idx}", p.class());
        for order in 1..=5 {
            let z = random_gauss(&mut rng);
            let residual = annihilator_eigen_check(p, &z, order).map(|r| r.to_string()).unwrap_or_else(|e| e.to_string());
            rows.push(ReportRow::exact(format!("transforms/annihilator-eigen/{tag}/N={order}"), format!("z={z}"), "0".into(), residual));
        }
        for d in 0..=6 {
            let f = random_poly(&mut rng, d);
            let composed = transform_t_exact(p, &ExactPoly::from_poly(Basis::Monomial, transform_curly_s_by_moments(p, &f)));
            rows.push(ReportRow::exact(
                format!("transforms/s-equals-t-curly-s/{tag}/deg={d}"),
                format!("f={}", poly_text(f.as_poly())),
                poly_text(&transform_s_exact(p, &f)),
                poly_text(&composed),
            ));
        }
    }
    rows
}

fn measure_checks(ctx: &Context) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for p in ctx.references() {
        let tol = if p.class() == Class::MeixnerSecond { 1e-5 } else { 1e-6 };
        for m in 0..=5 {
            for n in m..=5 {
                let scale = p.norm_sqr(n).to_complex64().norm();
                let r = orthogonality_check(p, m, n, &ctx.cfg);
                let expected = r.as_ref().map(|(_, e)| e.to_complex64()).unwrap_or(if m == n { c(scale, 0.0) } else { c(0.0, 0.0) });
                rows.push(ReportRow::numeric(format!("measures/orthogonality/{}/m={m},n={n}", p.class()), format!("m={m} n={n}"), expected, r.map(|(v, _)| v), tol, scale));
            }
        }
        let (n_max, tol) = if p.class() == Class::MeixnerSecond { (6, 1e-6) } else { (8, 1e-8) };
        for n in 0..=n_max {
            let r = moment_check(p, n, &ctx.cfg);
            let exact = r.as_ref().map(|m| m.exact.to_complex64()).unwrap_or(c(f64::NAN, 0.0));
            // absolute error when the exact moment vanishes
            let floor = if exact.norm() == 0.0 { 1.0 } else { 0.0 };
            rows.push(ReportRow::numeric(format!("measures/moment/{}/n={n:02}", p.class()), format!("n={n}"), exact, r.map(|m| m.quadrature), tol, floor));
        }
    }
    for (eta, sigma) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0)] {
        for n in 0..=5 {
            let want: f64 = (0..n).map(|k| (k + 1) as f64 * (sigma + eta * k as f64)).product();
            let r = fock_moment_check(eta, sigma, n, n, &ctx.cfg);
            rows.push(ReportRow::numeric(format!("measures/fock-moment/eta={eta},sigma={sigma}/n={n}"), format!("n={n}"), c(want, 0.0), r.map(|(v, _)| v), 1e-6, 0.0));
        }
        let spec = MeasureSpec::FockLambda { eta, sigma };
        for r in [0.1, 0.5, 1.0, 2.0, 3.5] {
            let bessel = density(&spec, c(r, 0.0)).map(|v| v.re).unwrap_or(f64::NAN);
            let mixture = fock_density_mixture(eta, sigma, r, &ctx.cfg).map(|v| c(v, 0.0));
            rows.push(ReportRow::numeric(format!("measures/fock-density-forms/eta={eta},sigma={sigma}/r={r}"), format!("r={r}"), c(bessel, 0.0), mixture, 1e-6, 0.0));
        }
    }
    for sigma in [1.0, 2.0] {
        for r in [0.25, 1.0, 4.0] {
            let res = mellin_convolution_check(sigma, r, &ctx.cfg);
            let (lhs, rhs) = res.clone().unwrap_or((f64::NAN, f64::NAN));
            rows.push(ReportRow::numeric(format!("measures/mellin/sigma={sigma}/r={r}"), format!("|z|^2={r}"), c(rhs, 0.0), res.map(|_| c(lhs, 0.0)), 1e-6, 0.0));
        }
    }
    rows
}

fn grid(class: Class) -> [f64; 3] {
    match class {
        Class::Laguerre => [0.5, 1.0, 3.0],
        Class::MeixnerFirst => [0.0, 1.0, 3.0],
        Class::MeixnerSecond => [-1.0, 0.0, 2.0],
    }
}

fn transform_checks(ctx: &Context) -> Vec<ReportRow> {
    let mut rng = ctx.rng(3);
    let mut rows = Vec::new();
    for p in ctx.references() {
        let class = p.class();
        let beta = p.beta().to_complex64();
        for x in grid(class) {
            for z in [c(1.0, 0.0), c(0.5, 0.5), c(-1.5, 1.0)] {
                let id = format!("transforms/coherent-dual-path/{class}/x={x},z={z}");
                let closed = coherent_e_closed(p, x, z, 1e-14).map(|s| s.value);
                let row = match coherent_e(p, x, z, 1e-14) {
                    Ok(s) => ReportRow::numeric(id, format!("x={x} z={z}"), closed.clone().unwrap_or(c(f64::NAN, 0.0)), Ok::<_, String>(s.value), 1e-6, 0.0),
                    Err(e) => ReportRow::numeric(id, format!("x={x} z={z}"), c(f64::NAN, 0.0), Err(e), 1e-6, 0.0),
                };
                rows.push(match closed {
                    Err(e) => ReportRow::numeric(row.id, row.inputs, c(f64::NAN, 0.0), Err(e), 1e-6, 0.0),
                    Ok(_) => row,
                });
            }
        }
        let zs = match class {
            Class::Laguerre => [c(1.0, 0.0), c(0.5, 0.5), c(-0.3, 1.0)],
            Class::MeixnerFirst => [c(1.0, 0.0), c(-2.0, 1.0), c(0.0, 0.5)],
            Class::MeixnerSecond => [c(1.0, 0.0), c(0.5, 0.0), c(-0.2, 0.1)],
        };
        for z in zs {
            for n in 0..=4 {
                let want: Complex64 = (0..n).map(|j| z - beta * j as f64).product();
                let got = transform_curly_s(p, &sheffer_poly(p, n), z, &ctx.cfg).map(|r| r.value);
                rows.push(ReportRow::numeric(format!("transforms/curly-s-integral/{class}/z={z}/s_{n}"), format!("f=s_{n} z={z}"), want, got, 1e-6, 1.0));
            }
        }
        let zs = if class == Class::MeixnerSecond { [beta, 2.0 * beta] } else { [c(1.0, 0.0), c(1.0, 0.5)] };
        for z in zs {
            for n in 0..=3 {
                let got = rho_expectation(p, &sheffer_poly(p, n), z, &ctx.cfg).map(|r| r.value);
                rows.push(ReportRow::numeric(format!("transforms/rho-expectation/{class}/z={z}/s_{n}"), format!("f=s_{n} z={z}"), z.powu(n as u32), got, 1e-6, 0.0));
            }
        }
        for n in 0..=3 {
            let mut unit = vec![c(0.0, 0.0); n + 1];
            unit[n] = c(1.0, 0.0);
            let z = c(2.0, 1.0);
            let got = transform_t_poisson(p, &unit, z, &ctx.cfg).map(|r| r.value);
            // Poisson falling-factorial identity: E[(βξ|β)_n] = z^n for ξ ~ Poisson(z/β)
            rows.push(ReportRow::numeric(format!("transforms/t-poisson/{class}/n={n}"), format!("g=(.|beta)_{n} z={z}"), z.powu(n as u32), got, 1e-10, 0.0));
        }
        for trial in 0..4 {
            let degree = rng.random_range(0..=5);
            let f = random_poly(&mut rng, degree);
            let symbolic = v_symbolic(p, &f);
            for k in 0..5 {
                let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let id = format!("transforms/v-integral/{class}/trial={trial}/point={k}");
                let inputs = format!("f={} z={z}", poly_text(f.as_poly()));
                match &symbolic {
                    Ok(s) => {
                        let got = v_integral_action(p, &f, z, &ctx.cfg);
                        rows.push(ReportRow::numeric(id, inputs, s.as_poly().eval_complex(z), got, 1e-6, 1.0));
                    }
                    Err(e) => rows.push(ReportRow::numeric(id, inputs, c(f64::NAN, 0.0), Err(e.to_string()), 1e-6, 1.0)),
                }
            }
            let coeffs: Vec<Complex64> = (0..=degree).map(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
            let res = isometry_check(p, &coeffs, &ctx.cfg);
            let exact = res.as_ref().map(|&(_, e)| e).unwrap_or(f64::NAN);
            rows.push(ReportRow::numeric(format!("transforms/isometry/{class}/trial={trial}"), format!("degree {degree}"), c(exact, 0.0), res.map(|(q, _)| c(q, 0.0)), 1e-6, 0.0));
        }
    }
    for (z, w) in [(c(1.0, 0.0), c(1.0, 0.0)), (c(0.5, -1.0), c(1.5, 0.5))] {
        let want = (z.conj() * w).exp();
        let got = fock_kernel(0.0, 1.0, z, w, 1e-15).map(|s| s.value);
        rows.push(ReportRow::numeric(format!("transforms/flat-kernel/z={z},w={w}"), "eta=0 sigma=1", want, got, 1e-10, 0.0));
    }
    rows
}

fn monte_carlo(ctx: &Context) -> Vec<ReportRow> {
    let p = MeixnerParams::reference(Class::Laguerre);
    let est = monte_carlo_rho(&p, &sheffer_poly(&p, 2), 1.0, 1_000_000, ctx.seed, Execution::Parallel);
    let id = "slow/monte-carlo-rho/laguerre/s_2,z=1";
    match est {
        // three standard errors, expressed relative to the exact value 1
        Ok(e) => vec![ReportRow::numeric::<String>(id, format!("samples={} seed={}", e.samples, e.seed), c(1.0, 0.0), Ok(c(e.mean, 0.0)), 3.0 * e.std_error, 0.0)],
        Err(e) => vec![ReportRow::numeric(id, "samples=1000000", c(1.0, 0.0), Err(e), 0.0, 0.0)],
    }
}

pub fn run(suite: Suite, ctx: &Context, exec: Execution) -> Report {
    let exact: [Check; 4] = [stirling_identities, weyl_identities, sheffer_identities, transform_identities];
    let numeric: [Check; 2] = [measure_checks, transform_checks];
    let checks: Vec<Check> = match suite {
        Suite::Exact => exact.to_vec(),
        Suite::Numeric => numeric.to_vec(),
        Suite::All => exact.iter().chain(&numeric).copied().collect(),
        Suite::Slow => vec![monte_carlo],
    };
    let rows = exec.map(&checks, |check| check(ctx)).into_iter().flatten().collect();
    Report::new(suite.name(), ctx.seed, rows)
}
