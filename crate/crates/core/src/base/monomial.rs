use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use crate::error::{AdicError, Result};

/// Exponent vector of a monomial in `x₁..x_n`.
///
/// Ordered graded-lexicographically: lower total degree first, then larger
/// exponents of earlier variables first (`1 < x₁ < x₂ < x₁² < x₁x₂ < x₂²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Position in the graded-lex basis of `A_N` (independent of `N`).
    pub fn index(&self) -> usize {
        let n = self.nvars();
        let d = self.degree();
        let below = if d == 0 { 0 } else { binomial(n + d - 1, n) };
        let mut rank = 0;
        let mut rem = d;
        for (i, &e) in self.0.iter().enumerate() {
            let m = n - i - 1;
            let e = e as usize;
            if m >= 1 && rem > e {
                rank += binomial(rem - e + m - 1, m);
            }
            rem -= e;
        }
        below + rank
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of monomials of degree ≤ k in n variables, i.e. `dim_k A_k`.
pub fn level_dim(n: usize, k: usize) -> usize {
    binomial(n + k, n)
}

/// All monomials of total degree exactly `d`, in basis order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(rem);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=rem).rev() {
            cur.push(e);
            rec(n, i + 1, rem - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All monomials of degree ≤ k, in basis order.
pub fn monomials_up_to(n: usize, k: usize) -> Vec<Monomial> {
    (0..=k).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// The coefficient field, the number of variables and the maximal adic precision `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingConfigRepr", into = "RingConfigRepr")]
pub struct RingConfig {
    field: PrimeField,
    n: usize,
    precision: usize,
}

#[derive(Serialize, Deserialize)]
struct RingConfigRepr {
    p: u32,
    n: usize,
    #[serde(rename = "N")]
    precision: usize,
}

impl TryFrom<RingConfigRepr> for RingConfig {
    type Error = AdicError;
    fn try_from(r: RingConfigRepr) -> Result<Self> {
        RingConfig::new(r.p, r.n, r.precision)
    }
}

impl From<RingConfig> for RingConfigRepr {
    fn from(c: RingConfig) -> Self {
        RingConfigRepr { p: c.field.characteristic(), n: c.n, precision: c.precision }
    }
}

impl RingConfig {
    pub fn new(p: u32, n: usize, precision: usize) -> Result<Self> {
        if n == 0 {
            return Err(AdicError::InvalidConfig("need at least one variable".into()));
        }
        Ok(Self { field: PrimeField::new(p)?, n, precision })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn with_precision(&self, precision: usize) -> Self {
        Self { precision, ..*self }
    }

    pub fn level_dim(&self, k: usize) -> usize {
        level_dim(self.n, k)
    }

    pub fn check_level(&self, k: usize) -> Result<()> {
        if k > self.precision {
            return Err(AdicError::PrecisionExceeded { level: k, precision: self.precision });
        }
        Ok(())
    }
}

/// Basis descriptor for the artinian quotient `A_k = A/𝔞^{k+1}`.
#[derive(Clone, Debug)]
pub struct LevelRing {
    config: RingConfig,
    level: usize,
    basis: Vec<Monomial>,
}

/// Builds the ordered monomial basis of `A_k`.
pub fn make_level_ring(config: RingConfig, k: usize) -> Result<LevelRing> {
    config.check_level(k)?;
    Ok(LevelRing { config, level: k, basis: monomials_up_to(config.nvars(), k) })
}

impl LevelRing {
    pub fn config(&self) -> RingConfig {
        self.config
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of `basis[i] · basis[j]`, or `None` when the product vanishes in `A_k`.
    pub fn mul_index(&self, i: usize, j: usize) -> Option<usize> {
        let m = self.basis[i].mul(&self.basis[j]);
        (m.degree() <= self.level).then(|| m.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_ring_sizes() {
        let cfg = RingConfig::new(5, 2, 3).unwrap();
        assert_eq!(make_level_ring(cfg, 3).unwrap().dim(), 10);
        let cfg = RingConfig::new(2, 1, 0).unwrap();
        let r = make_level_ring(cfg, 0).unwrap();
        assert_eq!(r.basis(), &[Monomial(vec![0])]);
        let cfg = RingConfig::new(7, 3, 1).unwrap();
        let r = make_level_ring(cfg, 1).unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.basis()[1], Monomial(vec![1, 0, 0]));
        assert_eq!(r.basis()[3], Monomial(vec![0, 0, 1]));
    }

    #[test]
    fn level_beyond_precision_fails() {
        let cfg = RingConfig::new(5, 2, 3).unwrap();
        assert!(matches!(make_level_ring(cfg, 4), Err(AdicError::PrecisionExceeded { .. })));
    }

    #[test]
    fn index_matches_enumeration() {
        for n in 1..=4 {
            let all = monomials_up_to(n, 5);
            for (i, m) in all.iter().enumerate() {
                assert_eq!(m.index(), i, "{m:?}");
            }
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(sorted, all);
        }
    }

    #[test]
    fn multiplication_table_commutes() {
        let cfg = RingConfig::new(5, 3, 3).unwrap();
        let r = make_level_ring(cfg, 3).unwrap();
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                assert_eq!(r.mul_index(i, j), r.mul_index(j, i));
            }
        }
    }
}
