//! Command implementations. Each returns the full output text so the binary and
//! the tests see identical bytes.

use meixner::combinat::GaussRational;
use meixner::measures::{density, moment_check, MeasureSpec, QuadConfig};
use meixner::poly::Poly;
use meixner::sheffer::{monomial_to_sheffer, sheffer_poly, to_falling_beta, Basis, ExactPoly, MeixnerParams};
use meixner::transforms::{coherent_e, fock_kernel, transform_curly_s, transform_s, transform_t};
use meixner::weylalg::{normal_order, parse_operator};
use num_complex::Complex64;
use serde_json::json;

use crate::{CliError, Format};

pub const POLY_MAX: usize = 64;
pub const MOMENTS_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolyBasis {
    /// `s_n` in powers of `x`
    Monomial,
    /// `x^n` in the orthogonal basis `s_k`
    Sheffer,
    /// `s_n` in falling factorials `(x|β)_k`
    FallingBeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Coherent,
    Kernel,
    #[value(name = "transform-S")]
    TransformS,
    #[value(name = "transform-curlyS")]
    TransformCurlyS,
    #[value(name = "transform-T")]
    TransformT,
    Density,
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Failure(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("fields are UTF-8"))
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain JSON values");
    s.push('\n');
    s
}

/// Coefficients listed from the highest degree down.
pub fn poly(params: &MeixnerParams, n: usize, basis: PolyBasis, format: Format) -> Result<String, CliError> {
    if n > POLY_MAX {
        return Err(CliError::Input(format!("-n {n} exceeds the limit {POLY_MAX}")));
    }
    let coeffs: Poly = match basis {
        PolyBasis::Monomial => sheffer_poly(params, n).into_poly(),
        PolyBasis::Sheffer => monomial_to_sheffer(params, &Poly::monomial(n)),
        PolyBasis::FallingBeta => to_falling_beta(params, &sheffer_poly(params, n)).into_poly(),
    };
    let mut desc: Vec<String> = (0..=n).rev().map(|k| coeffs.coeff(k).to_string()).collect();
    if desc.is_empty() {
        desc.push("0".into());
    }
    Ok(match format {
        Format::Text => format!("{}\n", desc.join(", ")),
        Format::Csv => {
            let rows: Vec<_> = desc.iter().enumerate().map(|(i, c)| vec![(n - i).to_string(), c.clone()]).collect();
            csv_text(&["degree", "coefficient"], &rows)?
        }
        Format::Json => json_text(&json!({
            "n": n,
            "basis": match basis {
                PolyBasis::Monomial => "monomial",
                PolyBasis::Sheffer => "sheffer",
                PolyBasis::FallingBeta => "falling-beta",
            },
            "order": "descending",
            "coefficients": desc,
        })),
    })
}

fn scalar(name: &str, text: &str) -> Result<GaussRational, CliError> {
    text.parse().map_err(|e| CliError::Input(format!("--{name}: {e}; scalars must be rational or Gaussian rational literals")))
}

pub fn normal_order_cmd(
    params: &MeixnerParams,
    expr: &str,
    a: Option<&str>,
    b: Option<&str>,
    format: Format,
) -> Result<String, CliError> {
    let a = match a {
        Some(t) => scalar("a", t)?,
        None => params.beta().clone(),
    };
    let b = match b {
        Some(t) => scalar("b", t)?,
        None => params.alpha() - params.beta(),
    };
    let parsed = parse_operator(expr).map_err(|e| CliError::Input(e.to_string()))?;
    let nf = normal_order(&parsed, &a, &b);
    Ok(match format {
        Format::Text => format!("{nf}\n"),
        Format::Csv => {
            let rows: Vec<_> = nf.iter().rev().map(|(&(j, k), c)| vec![j.to_string(), k.to_string(), c.to_string()]).collect();
            csv_text(&["j", "k", "coefficient"], &rows)?
        }
        Format::Json => json_text(&json!({ "a": a.to_string(), "b": b.to_string(), "terms": nf.lines() })),
    })
}

pub fn moments(params: &MeixnerParams, n_max: usize, cfg: &QuadConfig, format: Format) -> Result<String, CliError> {
    if n_max > MOMENTS_MAX {
        return Err(CliError::Input(format!("--n-max {n_max} exceeds the limit {MOMENTS_MAX}")));
    }
    let mut rows = Vec::new();
    for n in 0..=n_max {
        // quadrature failures stay in their row
        let row = match moment_check(params, n, cfg) {
            Ok(m) => vec![n.to_string(), m.exact.to_string(), crate::report::complex_text(m.quadrature), format!("{:e}", m.rel_error())],
            Err(e) => vec![n.to_string(), meixner::weylalg::raw_moment(params, n).to_string(), format!("error: {e}"), String::new()],
        };
        rows.push(row);
    }
    let header = ["n", "exact", "numeric", "rel_err"];
    Ok(match format {
        Format::Text | Format::Csv => csv_text(&header, &rows)?,
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| json!({ "n": r[0].parse::<usize>().expect("index"), "exact": r[1], "numeric": r[2], "rel_err": r[3] }))
                .collect();
            json_text(&serde_json::Value::Array(items))
        }
    })
}

pub struct EvalArgs {
    pub what: What,
    pub x: f64,
    pub z: Complex64,
    pub w: Complex64,
    pub eta: Option<f64>,
    pub sigma: Option<f64>,
    pub coeffs: Vec<GaussRational>,
    pub tol: f64,
}

/// Parses `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(text)?, 0.0)),
    }
}

/// Evenly spaced grid values.
#[derive(Debug, Clone, PartialEq)]
pub struct Range(pub Vec<f64>);

/// Parses `start:stop:count`; `count = 1` gives `start`.
pub fn parse_range(text: &str) -> Result<Range, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("{text:?}: expected start:stop:count"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    let (a, b) = (num(a)?, num(b)?);
    let n: usize = n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?;
    if n == 0 {
        return Err("count must be positive".into());
    }
    if n == 1 {
        return Ok(Range(vec![a]));
    }
    Ok(Range((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()))
}

fn real_part(name: &str, z: &GaussRational) -> Result<f64, CliError> {
    if !z.is_real() {
        return Err(CliError::Input(format!("{name} = {z} is not real; pass --{name}")));
    }
    Ok(z.to_complex64().re)
}

fn eval_one(params: &MeixnerParams, cfg: &QuadConfig, args: &EvalArgs, x: f64, z: Complex64) -> Result<Complex64, CliError> {
    let numeric: Vec<Complex64> = args.coeffs.iter().rev().map(GaussRational::to_complex64).collect();
    Ok(match args.what {
        What::Coherent => coherent_e(params, x, z, args.tol)?.value,
        What::Kernel => {
            let eta = match args.eta {
                Some(e) => e,
                None => real_part("eta", params.eta())?,
            };
            let sigma = match args.sigma {
                Some(s) => s,
                None => real_part("sigma", params.sigma())?,
            };
            fock_kernel(eta, sigma, z, args.w, args.tol)?.value
        }
        What::TransformS => transform_s(&numeric, z).value,
        What::TransformCurlyS => {
            let f = ExactPoly::new(Basis::Monomial, args.coeffs.iter().rev().cloned().collect());
            transform_curly_s(params, &f, z, cfg)?.value
        }
        What::TransformT => transform_t(&numeric, z).value,
        What::Density => density(&MeasureSpec::orthogonality(params), Complex64::new(x, 0.0))?,
    })
}

pub fn eval(params: &MeixnerParams, cfg: &QuadConfig, args: &EvalArgs, format: Format) -> Result<String, CliError> {
    let v = eval_one(params, cfg, args, args.x, args.z)?;
    Ok(match format {
        Format::Text => format!("{}\n", crate::report::complex_text(v)),
        Format::Csv => csv_text(&["value_re", "value_im"], &[vec![v.re.to_string(), v.im.to_string()]])?,
        Format::Json => json_text(&json!({ "what": what_name(args.what), "re": v.re, "im": v.im })),
    })
}

fn what_name(w: What) -> &'static str {
    match w {
        What::Coherent => "coherent",
        What::Kernel => "kernel",
        What::TransformS => "transform-S",
        What::TransformCurlyS => "transform-curlyS",
        What::TransformT => "transform-T",
        What::Density => "density",
    }
}

/// Plot-ready table over `xs × res × ims`; points where evaluation fails are
/// reported as errors, so a grid must lie inside the domain.
pub fn eval_grid(
    params: &MeixnerParams,
    cfg: &QuadConfig,
    args: &EvalArgs,
    xs: &[f64],
    res: &[f64],
    ims: &[f64],
    format: Format,
) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for &x in xs {
        for &re in res {
            for &im in ims {
                let z = Complex64::new(re, im);
                let v = eval_one(params, cfg, args, x, z)?;
                rows.push([x, re, im, v.re, v.im]);
            }
        }
    }
    let header = ["x", "z_re", "z_im", "value_re", "value_im"];
    Ok(match format {
        Format::Text | Format::Csv => {
            let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(f64::to_string).collect()).collect();
            csv_text(&header, &text)?
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| json!({ "x": r[0], "z_re": r[1], "z_im": r[2], "value_re": r[3], "value_im": r[4] }))
                .collect();
            json_text(&serde_json::Value::Array(items))
        }
    })
}
