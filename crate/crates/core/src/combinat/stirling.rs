//! Stirling numbers of both kinds and unsigned Lah numbers, memoized in
//! triangular tables that grow on demand.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CombinatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// Signed `s(n, k)`: coefficient of `z^k` in `(z)_n`.
    FirstSigned,
    /// `S(n, k)`: coefficient of `(z)_k` in `z^n`.
    Second,
    /// Unsigned `L(n, k)`: `(z)_n = Σ (-1)^{n-k} L(n,k) (z)^{(k)}`.
    Lah,
}

/// Triangular table of big integers indexed by `(n, k)` with `0 <= k <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind) -> Self {
        Self { kind, rows: vec![vec![BigInt::one()]] }
    }

    pub fn with_max_n(kind: StirlingKind, max_n: usize) -> Self {
        let mut t = Self::new(kind);
        t.grow_to(max_n);
        t
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Extends the table with the triangle recurrence until it covers row `n`.
    pub fn grow_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len() - 1;
            let prev = &self.rows[m];
            let mut next = vec![BigInt::zero(); m + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                let left = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                let here = prev.get(k).cloned().unwrap_or_default();
                *slot = match self.kind {
                    // s(m+1, k) = s(m, k-1) - m s(m, k)
                    StirlingKind::FirstSigned => left - BigInt::from(m) * here,
                    // S(m+1, k) = S(m, k-1) + k S(m, k)
                    StirlingKind::Second => left + BigInt::from(k) * here,
                    // L(m+1, k) = L(m, k-1) + (m + k) L(m, k)
                    StirlingKind::Lah => left + BigInt::from(m + k) * here,
                };
            }
            self.rows.push(next);
        }
    }

    /// Entry `(n, k)`; zero outside the triangle. Panics when `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> &BigInt {
        static ZERO: OnceLock<BigInt> = OnceLock::new();
        self.rows[n].get(k).unwrap_or_else(|| ZERO.get_or_init(BigInt::zero))
    }

    /// Overwrites one entry. Exists so verification suites can be exercised
    /// against a deliberately corrupted table.
    pub fn set(&mut self, n: usize, k: usize, value: BigInt) {
        self.grow_to(n);
        if k <= n {
            self.rows[n][k] = value;
        }
    }
}

fn shared(kind: StirlingKind) -> &'static RwLock<StirlingTable> {
    static FIRST: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    static SECOND: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    static LAH: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    let cell = match kind {
        StirlingKind::FirstSigned => &FIRST,
        StirlingKind::Second => &SECOND,
        StirlingKind::Lah => &LAH,
    };
    cell.get_or_init(|| RwLock::new(StirlingTable::new(kind)))
}

fn lookup(kind: StirlingKind, n: usize, k: usize) -> BigInt {
    let lock = shared(kind);
    {
        let t = lock.read().expect("stirling table poisoned");
        if t.max_n() >= n {
            return t.get(n, k).clone();
        }
    }
    let mut t = lock.write().expect("stirling table poisoned");
    t.grow_to(n);
    t.get(n, k).clone()
}

/// Returns a snapshot of the shared table covering rows `0..=max_n`.
pub fn table(kind: StirlingKind, max_n: usize) -> StirlingTable {
    let lock = shared(kind);
    {
        let t = lock.read().expect("stirling table poisoned");
        if t.max_n() >= max_n {
            let mut snap = t.clone();
            snap.rows.truncate(max_n + 1);
            return snap;
        }
    }
    let mut t = lock.write().expect("stirling table poisoned");
    t.grow_to(max_n);
    let mut snap = t.clone();
    snap.rows.truncate(max_n + 1);
    snap
}

/// Signed Stirling number of the first kind.
pub fn stirling1(n: usize, k: usize) -> Result<BigInt, CombinatError> {
    if k > n {
        return Err(CombinatError::IndexOutOfTriangle { what: "stirling1", n, k });
    }
    Ok(lookup(StirlingKind::FirstSigned, n, k))
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, k: usize) -> Result<BigInt, CombinatError> {
    if k > n {
        return Err(CombinatError::IndexOutOfTriangle { what: "stirling2", n, k });
    }
    Ok(lookup(StirlingKind::Second, n, k))
}

/// Unsigned Lah number `L(n, k) = C(n-1, k-1) n!/k!`, defined for `1 <= k <= n`
/// (and `L(0, 0) = 1`).
pub fn lah(n: usize, k: usize) -> Result<BigInt, CombinatError> {
    if k > n || (k == 0 && n >= 1) {
        return Err(CombinatError::IndexOutOfTriangle { what: "lah", n, k });
    }
    Ok(lookup(StirlingKind::Lah, n, k))
}
