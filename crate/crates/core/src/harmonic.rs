//! Generalized harmonic numbers `H_n^<m>` and the two shifted sums used in
//! the pole expansions:
//!
//! * `H_l(x) = sum_{i=1}^{n} 1/(i - x)^l`
//! * `Hcal_l(x) = sum_{i=0, i != k}^{n} 1/(i + x)^l`
//!
//! Both depend on `n`, and `Hcal` additionally on the excluded index `k`;
//! these are explicit parameters here.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exact_arith::Rational;

/// Demand-filled table of `H_n^<m>`, one column per order `m`.
///
/// Columns only grow, and always by appending the next partial sum, so the
/// fill order is deterministic regardless of which reader triggers it.
#[derive(Debug, Default)]
pub struct HarmonicCache {
    columns: RwLock<BTreeMap<u32, Vec<Rational>>>,
}

impl HarmonicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u32, m: u32) -> Result<Rational> {
        if m == 0 {
            return Err(Error::domain("harmonic order m must be at least 1"));
        }
        let idx = n as usize;
        {
            let columns = self.columns.read().expect("harmonic cache poisoned");
            if let Some(v) = columns.get(&m).and_then(|col| col.get(idx)) {
                return Ok(v.clone());
            }
        }
        let mut columns = self.columns.write().expect("harmonic cache poisoned");
        let col = columns.entry(m).or_insert_with(|| vec![Rational::zero()]);
        while col.len() <= idx {
            let i = col.len() as u32;
            let term = Rational::from(i).pow(m).recip()?;
            let next = col.last().expect("column starts non-empty") + term;
            col.push(next);
        }
        Ok(col[idx].clone())
    }

    /// Number of cached entries across all orders.
    pub fn len(&self) -> usize {
        let columns = self.columns.read().expect("harmonic cache poisoned");
        columns.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global() -> &'static HarmonicCache {
    static CACHE: OnceLock<HarmonicCache> = OnceLock::new();
    CACHE.get_or_init(HarmonicCache::new)
}

/// `H_n^<m> = sum_{k=1}^{n} 1/k^m`, with `H_0^<m> = 0`.
pub fn harmonic_number(n: u32, m: u32) -> Result<Rational> {
    global().get(n, m)
}

/// Infallible lookup for internal callers that always pass `m >= 1`.
pub(crate) fn hn(n: u32, m: u32) -> Rational {
    debug_assert!(m >= 1);
    global().get(n, m).expect("harmonic order is positive")
}

/// `H_l(x) = sum_{i=1}^{n} 1/(i - x)^l`.
pub fn shifted_h(order: u32, x: &Rational, n: u32) -> Result<Rational> {
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    let mut acc = Rational::zero();
    for i in 1..=n {
        let base = Rational::from(i) - x;
        if base.is_zero() {
            return Err(Error::domain(format!("x = {x} is a pole of H_{order}")));
        }
        acc += base.pow(order).recip()?;
    }
    Ok(acc)
}

/// `Hcal_l(x) = sum_{i=0, i != excluded_k}^{n} 1/(i + x)^l`.
pub fn shifted_hcal(order: u32, x: &Rational, n: u32, excluded_k: u32) -> Result<Rational> {
    if order == 0 {
        return Err(Error::domain("order must be at least 1"));
    }
    if excluded_k > n {
        return Err(Error::domain(format!(
            "excluded index {excluded_k} exceeds n = {n}"
        )));
    }
    let mut acc = Rational::zero();
    for i in (0..=n).filter(|&i| i != excluded_k) {
        let base = Rational::from(i) + x;
        if base.is_zero() {
            return Err(Error::domain(format!("x = {x} is a pole of Hcal_{order}")));
        }
        acc += base.pow(order).recip()?;
    }
    Ok(acc)
}
