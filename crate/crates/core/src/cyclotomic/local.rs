//! Local expansion at a primitive `n`-th root of unity.
//!
//! `Q[q]/Φ_n^E` is isomorphic to `K[t]/t^E` with `K = Q(ζ)` and `t = q - ζ`.
//! `K` is represented redundantly by `Z[x]/(x^n - 1)`, so multiplication by
//! a power of `ζ` is a rotation and nothing needs inverting. Only the final
//! zero test reduces modulo `Φ_n`.
//!
//! The point is that `q^m = Σ_i C(m,i) ζ^(m-i) t^i` has one rotation per
//! `t`-index, so multiplying by a binomial `1 - q^m` costs `O(E^2 n)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

use super::CycloCache;
use crate::algebra::ZLaurent;
use crate::error::Result;

/// Truncation parameters: root order `n` and precision `E`.
#[derive(Clone, Debug)]
pub struct LocalRing {
    n: usize,
    e: usize,
    phi: Arc<ZLaurent>,
}

/// `Σ_{i<E} c_i(ζ) t^i` with each `c_i` a length-`n` coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    coeffs: Vec<Vec<BigInt>>,
}

/// A series whose `t`-coefficients are short sums of `c·ζ^r`, stored as
/// `t^val · Σ_i terms[i] t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSeries {
    val: usize,
    terms: Vec<Vec<(BigInt, usize)>>,
}

impl SparseSeries {
    /// The power of `t` factored out.
    pub fn val(&self) -> usize {
        self.val
    }
}

impl LocalRing {
    pub fn new(n: u64, e: usize, cache: &CycloCache) -> Result<Self> {
        let phi = cache.phi_z(n)?;
        Ok(LocalRing {
            n: n as usize,
            e,
            phi,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.e
    }

    fn rot(&self, m: i64) -> usize {
        m.rem_euclid(self.n as i64) as usize
    }

    pub fn zero(&self) -> LocalSeries {
        LocalSeries {
            coeffs: vec![vec![BigInt::zero(); self.n]; self.e],
        }
    }

    pub fn constant(&self, c: BigInt) -> LocalSeries {
        let mut s = self.zero();
        if self.e > 0 {
            s.coeffs[0][0] = c;
        }
        s
    }

    pub fn one(&self) -> LocalSeries {
        self.constant(BigInt::one())
    }

    /// `q^m` for any integer `m`, via generalized binomial coefficients.
    pub fn q_pow(&self, m: i64) -> SparseSeries {
        let mut terms = Vec::with_capacity(self.e);
        let mut binom = BigInt::one();
        for i in 0..self.e as i64 {
            if i > 0 {
                binom = binom * BigInt::from(m - i + 1) / BigInt::from(i);
            }
            terms.push(if binom.is_zero() {
                Vec::new()
            } else {
                vec![(binom.clone(), self.rot(m - i))]
            });
        }
        SparseSeries { val: 0, terms }
    }

    /// `c·q^m`.
    pub fn scaled_q_pow(&self, c: &BigInt, m: i64) -> SparseSeries {
        let mut s = self.q_pow(m);
        for t in s.terms.iter_mut().flatten() {
            t.0 *= c;
        }
        s
    }

    /// `1 - q^m`, with the factor `t` split off when `n | m`. Returns `None`
    /// for `m = 0`, where the binomial is zero.
    pub fn one_minus_q_pow(&self, m: i64) -> Option<SparseSeries> {
        if m == 0 {
            return None;
        }
        let mut s = self.q_pow(m);
        for t in s.terms.iter_mut().flatten() {
            t.0 = -&t.0;
        }
        if self.rot(m) == 0 {
            // constant term 1 - ζ^m vanishes exactly
            s.terms.remove(0);
            s.terms.push(Vec::new());
            s.val = 1;
        } else if let Some(first) = s.terms.first_mut() {
            first.push((BigInt::one(), 0));
        }
        Some(s)
    }

    /// `x · s`, truncated at `t^E`.
    pub fn mul_sparse(&self, x: &LocalSeries, s: &SparseSeries) -> LocalSeries {
        let mut out = self.zero();
        let n = self.n;
        for (j, cj) in x.coeffs.iter().enumerate() {
            if cj.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (i, ti) in s.terms.iter().enumerate() {
                let dst = j + i + s.val;
                if dst >= self.e {
                    break;
                }
                for (c, r) in ti {
                    let row = &mut out.coeffs[dst];
                    let unit = c.is_one();
                    for (k, v) in cj.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let slot = &mut row[(k + r) % n];
                        if unit {
                            *slot += v;
                        } else {
                            *slot += v * c;
                        }
                    }
                }
            }
        }
        out
    }

    /// `x + t^shift · y`, truncated.
    pub fn add_shifted(&self, x: &LocalSeries, y: &LocalSeries, shift: usize) -> LocalSeries {
        let mut out = x.clone();
        for (i, row) in y.coeffs.iter().enumerate() {
            if i + shift >= self.e {
                break;
            }
            for (slot, v) in out.coeffs[i + shift].iter_mut().zip(row) {
                *slot += v;
            }
        }
        out
    }

    pub fn scale(&self, x: &LocalSeries, c: &BigInt) -> LocalSeries {
        LocalSeries {
            coeffs: x
                .coeffs
                .iter()
                .map(|row| row.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    /// Reduces every coefficient modulo `Φ_n`. Value-preserving in `K`; keeps
    /// coefficient sizes down during long accumulations.
    pub fn reduce(&self, x: &mut LocalSeries) {
        for row in x.coeffs.iter_mut() {
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            let (_, r) = ZLaurent::from_coeffs(0, std::mem::take(row)).divrem_monic(&self.phi);
            let mut fresh = vec![BigInt::zero(); self.n];
            for (k, c) in r.coeffs().iter().enumerate() {
                fresh[k + r.offset() as usize] = c.clone();
            }
            *row = fresh;
        }
    }

    /// Index of the first `t`-coefficient that is nonzero in `K`, or `None`
    /// if all `E` coefficients vanish.
    pub fn valuation(&self, x: &LocalSeries) -> Option<usize> {
        for (i, row) in x.coeffs.iter().enumerate() {
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            let (_, r) = ZLaurent::from_coeffs(0, row.clone()).divrem_monic(&self.phi);
            if !r.is_zero() {
                return Some(i);
            }
        }
        None
    }
}

impl LocalSeries {
    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{val_phi_z, Valuation};

    fn val_via_local(factors: &[i64], n: u64, e: usize) -> Option<usize> {
        let cache = CycloCache::new();
        let ring = LocalRing::new(n, e, &cache).unwrap();
        let mut x = ring.one();
        for &m in factors {
            x = ring.mul_sparse(&x, &ring.one_minus_q_pow(m).unwrap());
        }
        ring.valuation(&x)
    }

    #[test]
    fn binomial_products_match_exact_division() {
        let cache = CycloCache::new();
        let cases: &[(&[i64], u64)] = &[
            (&[4, 8, 3], 4),
            (&[6, -6, 5, 12], 6),
            (&[7, 14, 21], 7),
            (&[1, 2, 3], 5),
            (&[-10, 15], 5),
        ];
        for (factors, n) in cases {
            let mut p = ZLaurent::one();
            for &m in *factors {
                p = p.mul_one_minus(m);
            }
            let exact = val_phi_z(&p, *n, &cache).unwrap();
            let local = val_via_local(factors, *n, 6);
            assert_eq!(
                local.map(|v| Valuation::Finite(v as i64)),
                Some(exact),
                "{factors:?} at {n}"
            );
        }
    }

    #[test]
    fn precision_cap_reports_none() {
        assert_eq!(val_via_local(&[3, 6, 9], 3, 2), None);
        assert_eq!(val_via_local(&[3, 6, 9], 3, 4), Some(3));
    }

    #[test]
    fn q_pow_n_is_one_plus_higher_terms() {
        let cache = CycloCache::new();
        let ring = LocalRing::new(5, 3, &cache).unwrap();
        let x = ring.mul_sparse(&ring.one(), &ring.q_pow(5));
        let diff = ring.add_shifted(&x, &ring.constant(BigInt::from(-1)), 0);
        assert_eq!(ring.valuation(&diff), Some(1));
    }

    #[test]
    fn sums_cancel_exactly() {
        // (1 - q^6) - (1 - q^3)(1 + q^3) = 0
        let cache = CycloCache::new();
        let ring = LocalRing::new(3, 4, &cache).unwrap();
        let a = ring.mul_sparse(&ring.one(), &ring.one_minus_q_pow(6).unwrap());
        let mut b = ring.mul_sparse(&ring.one(), &ring.one_minus_q_pow(3).unwrap());
        let plus = ring.add_shifted(&b, &ring.mul_sparse(&b, &ring.q_pow(3)), 0);
        b = ring.scale(&plus, &BigInt::from(-1));
        let mut z = ring.add_shifted(&a, &b, 0);
        ring.reduce(&mut z);
        assert_eq!(ring.valuation(&z), None);
    }
}
