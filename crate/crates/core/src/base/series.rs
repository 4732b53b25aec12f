use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Matrix;
use super::monomial::{monomials_up_to, Monomial, RingConfig};
use crate::error::{AdicError, Result};

/// The 𝔞-adic order of a truncated series.
///
/// A series that vanishes at precision `N` only has order known to be `> N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdicOrder {
    Exact(usize),
    AtLeast(usize),
}

/// An element of `k[[x₁..x_n]]` known modulo `𝔞^{N+1}`.
///
/// Canonical form: only monomials of degree ≤ N, no explicit zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    config: RingConfig,
    coeffs: BTreeMap<Monomial, u32>,
}

impl TruncatedSeries {
    pub fn zero(config: RingConfig) -> Self {
        Self { config, coeffs: BTreeMap::new() }
    }

    pub fn constant(config: RingConfig, c: u32) -> Self {
        Self::monomial(config, Monomial::one(config.nvars()), c)
    }

    pub fn one(config: RingConfig) -> Self {
        Self::constant(config, 1)
    }

    /// The variable `x_i` (zero-based).
    pub fn var(config: RingConfig, i: usize) -> Self {
        Self::monomial(config, Monomial::var(config.nvars(), i), 1)
    }

    pub fn monomial(config: RingConfig, m: Monomial, c: u32) -> Self {
        Self::from_terms(config, [(m, c)])
    }

    /// Sums the given terms; degrees above `N` are dropped.
    pub fn from_terms(config: RingConfig, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = config.field();
        let mut coeffs = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), config.nvars(), "monomial arity mismatch");
            if m.degree() > config.precision() {
                continue;
            }
            let e = coeffs.entry(m).or_insert(0);
            *e = f.add(*e, c % config.p());
        }
        coeffs.retain(|_, c| *c != 0);
        Self { config, coeffs }
    }

    pub fn config(&self) -> RingConfig {
        self.config
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&Monomial::one(self.config.nvars()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.constant_term() != 0
    }

    pub fn ord(&self) -> AdicOrder {
        match self.coeffs.keys().next() {
            Some(m) => AdicOrder::Exact(m.degree()),
            None => AdicOrder::AtLeast(self.config.precision() + 1),
        }
    }

    /// Largest degree of a nonzero term (0 for the zero series).
    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.config != other.config {
            return Err(AdicError::ConfigMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_terms(self.config, self.terms().chain(other.terms()).map(|(m, c)| (m.clone(), c))))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let cap = self.config.precision();
        let f = self.config.field();
        let mut terms = Vec::new();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a.degree() + b.degree() <= cap {
                    terms.push((a.mul(b), f.mul(ca, cb)));
                }
            }
        }
        Ok(Self::from_terms(self.config, terms))
    }

    /// Panicking variant of [`try_add`](Self::try_add) for operands known to share a config.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series config mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series config mismatch")
    }

    pub fn neg(&self) -> Self {
        let f = self.config.field();
        Self { config: self.config, coeffs: self.coeffs.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.config.field();
        Self::from_terms(self.config, self.terms().map(|(m, v)| (m.clone(), f.mul(v, c))))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.config);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops all terms of degree > k.
    pub fn truncate(&self, k: usize) -> Self {
        Self {
            config: self.config,
            coeffs: self.coeffs.iter().filter(|(m, _)| m.degree() <= k).map(|(m, &c)| (m.clone(), c)).collect(),
        }
    }

    /// Reinterprets the series in a config of different precision (truncating if lower).
    pub fn with_precision(&self, precision: usize) -> Self {
        Self::from_terms(self.config.with_precision(precision), self.terms().map(|(m, c)| (m.clone(), c)))
    }

    /// Inverse of a unit, as a geometric series in the non-constant part.
    pub fn inverse(&self) -> Option<Self> {
        let f = self.config.field();
        let c0 = self.constant_term();
        if c0 == 0 {
            return None;
        }
        let c0inv = f.inv(c0);
        let g = self.scale(c0inv).sub(&Self::one(self.config));
        let ng = g.neg();
        let mut acc = Self::one(self.config);
        let mut power = Self::one(self.config);
        for _ in 0..self.config.precision() {
            power = power.mul(&ng);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Some(acc.scale(c0inv))
    }

    /// Coefficient vector in the monomial basis of `A_k`.
    pub fn to_dense(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0; self.config.level_dim(k)];
        for (m, c) in self.terms() {
            if m.degree() <= k {
                v[m.index()] = c;
            }
        }
        v
    }

    pub fn from_dense(config: RingConfig, v: &[u32]) -> Self {
        let basis = monomials_up_to(config.nvars(), config.precision());
        Self::from_terms(config, v.iter().zip(basis).map(|(&c, m)| (m, c)))
    }

    /// Matrix of multiplication by this series on `A_k`.
    pub fn action_matrix(&self, k: usize) -> Matrix {
        let n = self.config.nvars();
        let field = self.config.field();
        let d = self.config.level_dim(k);
        let mut m = Matrix::zeros(field, d, d);
        let basis = monomials_up_to(n, k);
        for (mono, c) in self.terms() {
            let dm = mono.degree();
            if dm > k {
                continue;
            }
            for (j, b) in basis.iter().enumerate() {
                if b.degree() + dm > k {
                    break;
                }
                m.add_at(mono.mul(b).index(), j, c);
            }
        }
        m
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Matrix with entries in the truncated series ring; maps `Â^cols → Â^rows`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    config: RingConfig,
    rows: usize,
    cols: usize,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn zeros(config: RingConfig, rows: usize, cols: usize) -> Self {
        Self { config, rows, cols, entries: vec![TruncatedSeries::zero(config); rows * cols] }
    }

    pub fn identity(config: RingConfig, n: usize) -> Self {
        Self::from_fn(config, n, n, |i, j| {
            if i == j {
                TruncatedSeries::one(config)
            } else {
                TruncatedSeries::zero(config)
            }
        })
    }

    pub fn from_fn(config: RingConfig, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> TruncatedSeries) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.config(), config, "entry config mismatch");
                entries.push(e);
            }
        }
        Self { config, rows, cols, entries }
    }

    /// Row-major entries.
    pub fn from_entries(config: RingConfig, rows: usize, cols: usize, entries: Vec<TruncatedSeries>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(AdicError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| e.config() != config) {
            return Err(AdicError::ConfigMismatch);
        }
        Ok(Self { config, rows, cols, entries })
    }

    /// Constant matrix lifted from level 0.
    pub fn from_constant(config: RingConfig, m: &Matrix) -> Self {
        Self::from_fn(config, m.rows(), m.cols(), |i, j| TruncatedSeries::constant(config, m.get(i, j)))
    }

    pub fn config(&self) -> RingConfig {
        self.config
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruncatedSeries) {
        assert_eq!(v.config(), self.config);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[TruncatedSeries] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncatedSeries::is_zero)
    }

    pub fn mul(&self, other: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.cols, other.rows, "series matrix product extent mismatch");
        let mut out = SeriesMatrix::zeros(self.config, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        SeriesMatrix { config: self.config, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &SeriesMatrix) -> SeriesMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SeriesMatrix {
        self.map(TruncatedSeries::neg)
    }

    pub fn scale(&self, c: u32) -> SeriesMatrix {
        self.map(|e| e.scale(c))
    }

    pub fn map(&self, f: impl Fn(&TruncatedSeries) -> TruncatedSeries) -> SeriesMatrix {
        SeriesMatrix { config: self.config, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.config, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(&self, other: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.rows, other.rows);
        SeriesMatrix::from_fn(self.config, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        SeriesMatrix { config: self.config, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn block_diag(config: RingConfig, blocks: &[SeriesMatrix]) -> SeriesMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = SeriesMatrix::zeros(config, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &SeriesMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.config, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.config, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// `self ⊗ I_r`: every entry becomes an `r × r` scalar block.
    pub fn kron_identity(&self, r: usize) -> SeriesMatrix {
        SeriesMatrix::from_fn(self.config, self.rows * r, self.cols * r, |i, j| {
            if i % r == j % r {
                self.get(i / r, j / r).clone()
            } else {
                TruncatedSeries::zero(self.config)
            }
        })
    }

    /// `I_r ⊗ self`: block diagonal with `r` copies.
    pub fn identity_kron(&self, r: usize) -> SeriesMatrix {
        SeriesMatrix::block_diag(self.config, &vec![self.clone(); r])
    }

    /// Reduction modulo 𝔞: the constant-term matrix.
    pub fn constant_part(&self) -> Matrix {
        Matrix::from_fn(self.config.field(), self.rows, self.cols, |i, j| self.get(i, j).constant_term())
    }

    /// Matrix of the induced map `A_k^cols → A_k^rows` (generator-major coordinates).
    pub fn realize(&self, k: usize) -> Matrix {
        let d = self.config.level_dim(k);
        let mut m = Matrix::zeros(self.config.field(), self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    m.set_block(i * d, j * d, &e.action_matrix(k));
                }
            }
        }
        m
    }

    /// Smallest order among nonzero entries, if any entry is nonzero.
    pub fn min_order(&self) -> Option<usize> {
        self.entries
            .iter()
            .filter_map(|e| match e.ord() {
                AdicOrder::Exact(o) => Some(o),
                AdicOrder::AtLeast(_) => None,
            })
            .min()
    }

    /// Largest order among nonzero entries (0 if all entries vanish).
    pub fn max_order(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|e| match e.ord() {
                AdicOrder::Exact(o) => Some(o),
                AdicOrder::AtLeast(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Inverse over `Â` at precision N, when the constant part is invertible.
    pub fn inverse(&self) -> Option<SeriesMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let c_inv = SeriesMatrix::from_constant(self.config, &self.constant_part().inverse()?);
        let e = c_inv.mul(self).sub(&SeriesMatrix::identity(self.config, self.rows));
        let ne = e.neg();
        let mut acc = SeriesMatrix::identity(self.config, self.rows);
        let mut power = acc.clone();
        for _ in 0..self.config.precision() {
            power = power.mul(&ne);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Some(acc.mul(&c_inv))
    }

    /// Column `j` as a vector in `A_k^rows` (generator-major coordinates).
    pub fn column_dense(&self, j: usize, k: usize) -> Vec<u32> {
        (0..self.rows).flat_map(|i| self.get(i, j).to_dense(k)).collect()
    }

    /// Series column vector from generator-major coordinates at level k ≤ N.
    pub fn column_from_dense(config: RingConfig, rows: usize, k: usize, v: &[u32]) -> Vec<TruncatedSeries> {
        let d = config.level_dim(k);
        let basis = monomials_up_to(config.nvars(), k);
        (0..rows)
            .map(|i| TruncatedSeries::from_terms(config, basis.iter().cloned().zip(v[i * d..(i + 1) * d].iter().copied())))
            .collect()
    }

    pub fn from_columns(config: RingConfig, rows: usize, columns: &[Vec<TruncatedSeries>]) -> SeriesMatrix {
        SeriesMatrix::from_fn(config, rows, columns.len(), |i, j| columns[j][i].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(p: u32, n: usize, big_n: usize) -> RingConfig {
        RingConfig::new(p, n, big_n).unwrap()
    }

    /// Schoolbook convolution on dense univariate coefficient lists.
    fn convolve(a: &[i64], b: &[i64], cap: usize) -> Vec<i64> {
        let mut out = vec![0; cap + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= cap {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    fn univariate(c: RingConfig, coeffs: &[i64]) -> TruncatedSeries {
        let f = c.field();
        TruncatedSeries::from_terms(c, coeffs.iter().enumerate().map(|(i, &v)| (Monomial(vec![i as u32]), f.from_i64(v))))
    }

    #[test]
    fn order_examples() {
        let c = cfg(5, 2, 5);
        assert_eq!(TruncatedSeries::zero(c).ord(), AdicOrder::AtLeast(6));
        let f = TruncatedSeries::var(c, 0).add(&TruncatedSeries::monomial(c, Monomial(vec![0, 2]), 1));
        assert_eq!(f.ord(), AdicOrder::Exact(1));
        let g = TruncatedSeries::monomial(c, Monomial(vec![2, 1]), 3);
        assert_eq!(g.ord(), AdicOrder::Exact(3));
    }

    #[test]
    fn arithmetic_examples() {
        let c = cfg(5, 1, 4);
        let x = TruncatedSeries::var(c, 0);
        assert_eq!(x.mul(&TruncatedSeries::one(c)), x);
        assert!(x.mul(&x.pow(4)).is_zero());
        let one = TruncatedSeries::one(c);
        let lhs = one.add(&x).mul(&one.sub(&x));
        let expected = univariate(c, &convolve(&[1, 1], &[1, -1], 4));
        assert_eq!(lhs, expected);
        assert_eq!(lhs, one.sub(&x.pow(2)));
    }

    #[test]
    fn config_mismatch_is_an_error() {
        let a = TruncatedSeries::one(cfg(5, 1, 4));
        let b = TruncatedSeries::one(cfg(5, 1, 3));
        assert_eq!(a.try_mul(&b), Err(AdicError::ConfigMismatch));
    }

    #[test]
    fn series_inverse() {
        let c = cfg(101, 2, 6);
        let f = TruncatedSeries::constant(c, 3).add(&TruncatedSeries::var(c, 0)).add(&TruncatedSeries::var(c, 1).pow(2));
        assert_eq!(f.mul(&f.inverse().unwrap()), TruncatedSeries::one(c));
        assert!(TruncatedSeries::var(c, 0).inverse().is_none());
    }

    #[test]
    fn action_matrix_matches_multiplication() {
        let c = cfg(5, 2, 4);
        let f = TruncatedSeries::var(c, 0).add(&TruncatedSeries::constant(c, 2));
        let g = TruncatedSeries::var(c, 1).pow(2).add(&TruncatedSeries::var(c, 0));
        for k in 0..=4 {
            let lhs = f.action_matrix(k).mul_vec(&g.to_dense(k));
            assert_eq!(lhs, f.mul(&g).to_dense(k));
        }
    }

    #[test]
    fn matrix_inverse() {
        let c = cfg(5, 2, 4);
        let x = TruncatedSeries::var(c, 0);
        let y = TruncatedSeries::var(c, 1);
        let one = TruncatedSeries::one(c);
        let m = SeriesMatrix::from_entries(c, 2, 2, vec![one.add(&x), y.clone(), x.mul(&y), TruncatedSeries::constant(c, 2)]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SeriesMatrix::identity(c, 2));
        assert_eq!(inv.mul(&m), SeriesMatrix::identity(c, 2));
    }

    fn arb_series(c: RingConfig) -> impl Strategy<Value = TruncatedSeries> {
        let basis = monomials_up_to(c.nvars(), c.precision());
        let len = basis.len();
        proptest::collection::vec(0..c.p(), len).prop_map(move |v| {
            // Sparsify so that orders vary.
            let v: Vec<u32> = v.iter().enumerate().map(|(i, &x)| if i % 3 == 0 { x } else { x % 2 }).collect();
            TruncatedSeries::from_terms(c, basis.iter().cloned().zip(v))
        })
    }

    fn order_value(o: AdicOrder) -> usize {
        match o {
            AdicOrder::Exact(v) | AdicOrder::AtLeast(v) => v,
        }
    }

    proptest! {
        #[test]
        fn order_is_additive(f in arb_series(cfg(5, 2, 5)), g in arb_series(cfg(5, 2, 5))) {
            if let (AdicOrder::Exact(a), AdicOrder::Exact(b)) = (f.ord(), g.ord()) {
                if a + b <= 5 {
                    prop_assert_eq!(f.mul(&g).ord(), AdicOrder::Exact(a + b));
                }
            }
        }

        #[test]
        fn order_of_sum(f in arb_series(cfg(2, 2, 4)), g in arb_series(cfg(2, 2, 4))) {
            let s = order_value(f.add(&g).ord());
            let (a, b) = (order_value(f.ord()), order_value(g.ord()));
            prop_assert!(s >= a.min(b));
            if a != b {
                prop_assert_eq!(s, a.min(b));
            }
        }

        #[test]
        fn ring_axioms(f in arb_series(cfg(101, 2, 3)), g in arb_series(cfg(101, 2, 3)), h in arb_series(cfg(101, 2, 3))) {
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }
    }
}
