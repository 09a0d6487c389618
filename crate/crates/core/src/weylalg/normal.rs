use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OperatorExpr;
use crate::combinat::{stirling2, GaussRational};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    U,
    V,
}

/// `Σ c_{jk} U^j V^k` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), GaussRational>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(0, 0, GaussRational::one())
    }

    pub fn term(j: u32, k: u32, c: GaussRational) -> Self {
        let mut nf = Self::zero();
        nf.add_term(j, k, c);
        nf
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), GaussRational)>>(terms: I) -> Self {
        let mut nf = Self::zero();
        for ((j, k), c) in terms {
            nf.add_term(j, k, c);
        }
        nf
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, k)).or_insert_with(GaussRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(j, k));
        }
    }

    pub fn get(&self, j: u32, k: u32) -> GaussRational {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(GaussRational::zero)
    }

    /// Terms in ascending `(j, k)` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &GaussRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(j, k), c) in &other.terms {
            out.add_term(j, k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussRational::one()))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&key, v)| (key, v * c)))
    }

    /// One line per term, `(j, k)` descending, formatted `U^jV^k:c`; the
    /// identity term prints as `1:c`.
    pub fn lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .rev()
            .map(|(&(j, k), c)| {
                let mut word = String::new();
                if j > 0 {
                    word.push_str(&format!("U^{j}"));
                }
                if k > 0 {
                    word.push_str(&format!("V^{k}"));
                }
                if word.is_empty() {
                    word.push('1');
                }
                format!("{word}:{c}")
            })
            .collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.lines().join(", "))
    }
}

/// Which `VU` occurrence a rewrite step acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// The algebra with relation `VU = UV + aV + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylAlgebra {
    a: GaussRational,
    b: GaussRational,
}

impl WeylAlgebra {
    pub fn new(a: GaussRational, b: GaussRational) -> Self {
        Self { a, b }
    }

    pub fn a(&self) -> &GaussRational {
        &self.a
    }

    pub fn b(&self) -> &GaussRational {
        &self.b
    }

    /// Normal form of a single word, by repeated application of the rewrite rule.
    pub fn normalize_word(&self, word: &[Gen], strategy: RewriteOrder) -> NormalForm {
        let mut rng = match strategy {
            RewriteOrder::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut pending: BTreeMap<Vec<Gen>, GaussRational> = BTreeMap::new();
        pending.insert(word.to_vec(), GaussRational::one());
        let mut out = NormalForm::zero();
        while let Some((w, c)) = pending.pop_first() {
            if c.is_zero() {
                continue;
            }
            let inversions: Vec<usize> =
                (0..w.len().saturating_sub(1)).filter(|&i| w[i] == Gen::V && w[i + 1] == Gen::U).collect();
            if inversions.is_empty() {
                let j = w.iter().filter(|g| **g == Gen::U).count() as u32;
                out.add_term(j, w.len() as u32 - j, c);
                continue;
            }
            let i = match (&strategy, rng.as_mut()) {
                (RewriteOrder::Leftmost, _) => inversions[0],
                (RewriteOrder::Rightmost, _) => *inversions.last().expect("nonempty"),
                (_, Some(r)) => inversions[r.random_range(0..inversions.len())],
                (RewriteOrder::Random(_), None) => unreachable!(),
            };
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let mut keep_v = w.clone();
            keep_v.remove(i + 1);
            let mut dropped = keep_v.clone();
            dropped.remove(i);
            for (word, coeff) in [(swapped, c.clone()), (keep_v, &c * &self.a), (dropped, &c * &self.b)] {
                if coeff.is_zero() {
                    continue;
                }
                *pending.entry(word).or_insert_with(GaussRational::zero) += coeff;
            }
        }
        out
    }

    /// Product of normal forms; each `V^k U^m` junction is rewritten once.
    pub fn mul(&self, lhs: &NormalForm, rhs: &NormalForm) -> NormalForm {
        let mut junctions: HashMap<(u32, u32), NormalForm> = HashMap::new();
        let mut out = NormalForm::zero();
        for (&(j, k), c) in lhs.iter() {
            for (&(m, l), d) in rhs.iter() {
                let cd = c * d;
                if k == 0 || m == 0 {
                    out.add_term(j + m, k + l, cd);
                    continue;
                }
                let mid = junctions.entry((k, m)).or_insert_with(|| {
                    let mut w = vec![Gen::V; k as usize];
                    w.extend(std::iter::repeat_n(Gen::U, m as usize));
                    self.normalize_word(&w, RewriteOrder::Leftmost)
                });
                for (&(p, q), e) in mid.iter() {
                    out.add_term(j + p, q + l, &cd * e);
                }
            }
        }
        out
    }

    pub fn normal_order(&self, expr: &OperatorExpr) -> NormalForm {
        match expr {
            OperatorExpr::U => NormalForm::term(1, 0, GaussRational::one()),
            OperatorExpr::V => NormalForm::term(0, 1, GaussRational::one()),
            OperatorExpr::Scalar(c) => NormalForm::term(0, 0, c.clone()),
            OperatorExpr::Sum(x, y) => self.normal_order(x).add(&self.normal_order(y)),
            OperatorExpr::Difference(x, y) => self.normal_order(x).sub(&self.normal_order(y)),
            OperatorExpr::Product(x, y) => self.mul(&self.normal_order(x), &self.normal_order(y)),
            OperatorExpr::Power(x, n) => {
                let base = self.normal_order(x);
                let mut acc = NormalForm::identity();
                for _ in 0..*n {
                    acc = self.mul(&acc, &base);
                }
                acc
            }
        }
    }

    /// `(UV)^n = Σ_{k=1..n} b^{n-k} S(n,k) (U|-a)_k V^k`, with `(U|-a)_k`
    /// expanded in powers of `U`.
    pub fn uv_power_closed_form(&self, n: u32) -> NormalForm {
        if n == 0 {
            return NormalForm::identity();
        }
        let minus_a = -&self.a;
        let mut out = NormalForm::zero();
        for k in 1..=n {
            let weight = self.b.pow(n - k) * GaussRational::from(stirling2(n as usize, k as usize).expect("k <= n"));
            let rising = Poly::genfact(&GaussRational::zero(), &minus_a, k as usize);
            for (j, c) in rising.coeffs().iter().enumerate() {
                out.add_term(j as u32, k, &weight * c);
            }
        }
        out
    }

    /// `(U + na) V^n + nb V^{n-1}`.
    pub fn vn_u_normal_form(&self, n: u32) -> NormalForm {
        let ng = GaussRational::from(n as i64);
        let mut out = NormalForm::term(1, n, GaussRational::one());
        out.add_term(0, n, &ng * &self.a);
        if n >= 1 {
            out.add_term(0, n - 1, &ng * &self.b);
        }
        out
    }

    /// True iff rewriting `V^n U` gives `(U + na) V^n + nb V^{n-1}`.
    pub fn vn_u_relation_check(&self, n: u32) -> bool {
        let mut w = vec![Gen::V; n as usize];
        w.push(Gen::U);
        self.normalize_word(&w, RewriteOrder::Leftmost) == self.vn_u_normal_form(n)
    }
}

pub fn normal_order(expr: &OperatorExpr, a: &GaussRational, b: &GaussRational) -> NormalForm {
    WeylAlgebra::new(a.clone(), b.clone()).normal_order(expr)
}

pub fn uv_power_closed_form(n: u32, a: &GaussRational, b: &GaussRational) -> NormalForm {
    WeylAlgebra::new(a.clone(), b.clone()).uv_power_closed_form(n)
}

pub fn vn_u_normal_form(n: u32, a: &GaussRational, b: &GaussRational) -> NormalForm {
    WeylAlgebra::new(a.clone(), b.clone()).vn_u_normal_form(n)
}

pub fn vn_u_relation_check(n: u32, a: &GaussRational, b: &GaussRational) -> bool {
    WeylAlgebra::new(a.clone(), b.clone()).vn_u_relation_check(n)
}
