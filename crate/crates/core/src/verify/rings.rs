//! Rings the summation plans run in for the fast checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::ZLaurent;
use crate::catalog::SumRing;
use crate::cyclotomic::{CycloCache, LocalRing, LocalSeries};
use crate::error::{Error, Result};

/// `Q[q]/Φ_n^E` through its local model. Univariate plans only.
pub struct LocalSum {
    pub ring: LocalRing,
}

impl SumRing for LocalSum {
    type Elem = LocalSeries;

    fn one(&self) -> LocalSeries {
        self.ring.one()
    }

    fn zero(&self) -> LocalSeries {
        self.ring.zero()
    }

    fn mul_binomial(&self, x: &LocalSeries, i: i64, j: i64) -> Result<LocalSeries> {
        if i != 0 {
            return Err(Error::Domain("local backend needs a univariate sum".into()));
        }
        Ok(match self.ring.one_minus_q_pow(j) {
            Some(s) => self.ring.mul_sparse(x, &s),
            None => self.ring.zero(),
        })
    }

    fn mul_monomial(&self, x: &LocalSeries, i: i64, j: i64) -> Result<LocalSeries> {
        if i != 0 {
            return Err(Error::Domain("local backend needs a univariate sum".into()));
        }
        if j == 0 {
            return Ok(x.clone());
        }
        Ok(self.ring.mul_sparse(x, &self.ring.q_pow(j)))
    }

    fn add(&self, x: &LocalSeries, y: &LocalSeries) -> LocalSeries {
        self.ring.add_shifted(x, y, 0)
    }

    fn tidy(&self, x: &mut LocalSeries) {
        self.ring.reduce(x);
    }
}

/// `K[a^±]` with `K = Q(ζ_n)`, elements stored as rows `a^i → c(ζ)` with
/// `c` a length-`n` vector over `Z[x]/(x^n - 1)`. Reduction to `Φ_n` is lazy.
pub struct CycloPolyA {
    n: usize,
    phi: Arc<ZLaurent>,
}

pub type ARows = BTreeMap<i64, Vec<BigInt>>;

impl CycloPolyA {
    pub fn new(n: u64, cache: &CycloCache) -> Result<Self> {
        Ok(CycloPolyA {
            n: n as usize,
            phi: cache.phi_z(n)?,
        })
    }

    fn rot(&self, j: i64) -> usize {
        j.rem_euclid(self.n as i64) as usize
    }

    fn shifted(&self, x: &ARows, i: i64, j: i64) -> ARows {
        let r = self.rot(j);
        x.iter()
            .map(|(&a, row)| {
                let mut out = vec![BigInt::zero(); self.n];
                for (k, v) in row.iter().enumerate() {
                    out[(k + r) % self.n] = v.clone();
                }
                (a + i, out)
            })
            .collect()
    }

    fn reduce_row(&self, row: &[BigInt]) -> Vec<BigInt> {
        let (_, r) = ZLaurent::from_coeffs(0, row.to_vec()).divrem_monic(&self.phi);
        let mut out = vec![BigInt::zero(); self.n];
        for (k, c) in r.coeffs().iter().enumerate() {
            out[k + r.offset() as usize] = c.clone();
        }
        out
    }

    /// Whether every `a`-coefficient vanishes at `ζ`.
    pub fn is_zero(&self, x: &ARows) -> bool {
        x.values()
            .all(|row| self.reduce_row(row).iter().all(|c| c.is_zero()))
    }

    /// The monomial `c · a^i q^j`.
    pub fn monomial(&self, c: i64, i: i64, j: i64) -> ARows {
        let mut row = vec![BigInt::zero(); self.n];
        row[self.rot(j)] = BigInt::from(c);
        ARows::from([(i, row)])
    }

    pub fn sub(&self, x: &ARows, y: &ARows) -> ARows {
        let neg: ARows = y
            .iter()
            .map(|(&a, row)| (a, row.iter().map(|v| -v).collect()))
            .collect();
        self.add(x, &neg)
    }

    pub fn mul(&self, x: &ARows, y: &ARows) -> ARows {
        let mut out = ARows::new();
        for (&ia, ra) in x {
            for (&ib, rb) in y {
                let slot = out
                    .entry(ia + ib)
                    .or_insert_with(|| vec![BigInt::zero(); self.n]);
                for (ka, va) in ra.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (kb, vb) in rb.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        slot[(ka + kb) % self.n] += va * vb;
                    }
                }
            }
        }
        out
    }
}

impl SumRing for CycloPolyA {
    type Elem = ARows;

    fn one(&self) -> ARows {
        self.monomial(1, 0, 0)
    }

    fn zero(&self) -> ARows {
        ARows::new()
    }

    fn mul_binomial(&self, x: &ARows, i: i64, j: i64) -> Result<ARows> {
        Ok(self.sub(x, &self.shifted(x, i, j)))
    }

    fn mul_monomial(&self, x: &ARows, i: i64, j: i64) -> Result<ARows> {
        Ok(self.shifted(x, i, j))
    }

    fn add(&self, x: &ARows, y: &ARows) -> ARows {
        let mut out = x.clone();
        for (&a, row) in y {
            let slot = out.entry(a).or_insert_with(|| vec![BigInt::zero(); self.n]);
            for (s, v) in slot.iter_mut().zip(row) {
                *s += v;
            }
        }
        out
    }

    fn tidy(&self, x: &mut ARows) {
        let rows = std::mem::take(x);
        for (a, row) in rows {
            let r = self.reduce_row(&row);
            if r.iter().any(|c| !c.is_zero()) {
                x.insert(a, r);
            }
        }
    }

    fn check_den(&self, i: i64, j: i64) -> Result<()> {
        if i == 0 && self.rot(j) == 0 {
            return Err(Error::NonUnit {
                n: self.n as u64,
                detail: format!("denominator factor 1 - q^{j}"),
            });
        }
        Ok(())
    }
}
