//! Bounded complexes of level modules.
//!
//! Sign conventions, fixed everywhere in the crate:
//! the shift `C[k]` has `(C[k])^i = C^{i+k}` and differential `(−1)^k d`;
//! the cone of `f: S → T` has `cone^i = S^{i+1} ⊕ T^i` and `d(x, y) = (−dx, f(x) + dy)`;
//! the tensor product has `d(m ⊗ n) = dm ⊗ n + (−1)^p m ⊗ dn` for `m` in degree `p`.

use std::fmt;

use crate::base::{Matrix, PrimeField, RingConfig};
use crate::error::{AdicError, Result};
use crate::level::{tensor_level, LevelModule, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelComplex {
    config: RingConfig,
    level: usize,
    lo: i32,
    terms: Vec<LevelModule>,
    diffs: Vec<Matrix>,
}

/// `H^i` with representatives: `reps` maps `H → C^i`, `classify` maps cycles of `C^i` to `H`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub module: LevelModule,
    pub reps: Matrix,
    pub classify: Matrix,
}

/// An extended integer for `inf`, `sup` and `amp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(i32),
    PosInf,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::PosInf => write!(f, "+inf"),
        }
    }
}

/// `inf`, `sup`, `amp` of the cohomology and its dimensions per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub inf: Bound,
    pub sup: Bound,
    pub amp: Bound,
    /// `(degree, dim H^degree)` for every degree in the complex's range.
    pub dims: Vec<(i32, usize)>,
}

impl CohomologyProfile {
    pub fn from_dims(dims: Vec<(i32, usize)>) -> Self {
        let nonzero: Vec<i32> = dims.iter().filter(|(_, d)| *d > 0).map(|(i, _)| *i).collect();
        match (nonzero.first(), nonzero.last()) {
            (Some(&a), Some(&b)) => Self { inf: Bound::Finite(a), sup: Bound::Finite(b), amp: Bound::Finite(b - a), dims },
            _ => Self { inf: Bound::PosInf, sup: Bound::NegInf, amp: Bound::NegInf, dims },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sup == Bound::NegInf
    }

    pub fn dim(&self, i: i32) -> usize {
        self.dims.iter().find(|(d, _)| *d == i).map_or(0, |(_, v)| *v)
    }
}

impl LevelComplex {
    /// Validated constructor; `diffs[j]` maps the term in degree `lo + j` to the next one.
    pub fn new(lo: i32, terms: Vec<LevelModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(AdicError::Shape("use LevelComplex::zero for the empty complex".into()));
        };
        let (config, level) = (first.config(), first.level());
        let c = Self { config, level, lo, terms, diffs };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if self.diffs.len() + 1 != self.terms.len().max(1) {
            return Err(AdicError::Shape("need one differential between consecutive terms".into()));
        }
        for (j, t) in self.terms.iter().enumerate() {
            if t.config() != self.config || t.level() != self.level {
                return Err(AdicError::Shape(format!("term in degree {} lives over a different ring", self.lo + j as i32)));
            }
        }
        for (j, d) in self.diffs.iter().enumerate() {
            if !self.terms[j].is_linear_map(&self.terms[j + 1], d) {
                return Err(AdicError::Invariant(format!("differential in degree {} is not A-linear", self.lo + j as i32)));
            }
        }
        for j in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[j + 1].mul(&self.diffs[j]).is_zero() {
                return Err(AdicError::NotAComplex(self.lo + j as i32));
            }
        }
        Ok(())
    }

    pub fn zero(config: RingConfig, level: usize) -> Self {
        Self { config, level, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// A single module in the given degree.
    pub fn concentrated(m: LevelModule, degree: i32) -> Self {
        Self { config: m.config(), level: m.level(), lo: degree, terms: vec![m], diffs: Vec::new() }
    }

    pub fn config(&self) -> RingConfig {
        self.config
    }

    pub fn field(&self) -> PrimeField {
        self.config.field()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Top degree; `lo − 1` for the empty complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn terms(&self) -> &[LevelModule] {
        &self.terms
    }

    pub fn term(&self, i: i32) -> Option<&LevelModule> {
        if i < self.lo {
            return None;
        }
        self.terms.get((i - self.lo) as usize)
    }

    /// The term in degree `i`, or the zero module.
    pub fn term_or_zero(&self, i: i32) -> LevelModule {
        self.term(i).cloned().unwrap_or_else(|| LevelModule::zero(self.config, self.level))
    }

    pub fn dim(&self, i: i32) -> usize {
        self.term(i).map_or(0, LevelModule::dim)
    }

    /// `d^i: C^i → C^{i+1}` (a zero matrix outside the range).
    pub fn diff(&self, i: i32) -> Matrix {
        if i >= self.lo && ((i - self.lo) as usize) < self.diffs.len() {
            return self.diffs[(i - self.lo) as usize].clone();
        }
        Matrix::zeros(self.field(), self.dim(i + 1), self.dim(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(LevelModule::is_zero)
    }

    pub fn cohomology(&self, i: i32) -> Cohomology {
        let term = self.term_or_zero(i);
        let z = self.diff(i).kernel();
        let sub = term.submodule(&z);
        let b = sub.coords.mul(&self.diff(i - 1));
        let q = sub.module.quotient(&b);
        Cohomology {
            degree: i,
            reps: sub.inclusion.mul(&q.lift),
            classify: q.proj.mul(&sub.coords),
            module: if q.module.dim() == 0 { LevelModule::zero(self.config, self.level) } else { q.module },
        }
    }

    /// `dim H^i` without building the module.
    pub fn cohomology_dim(&self, i: i32) -> usize {
        let d_out = self.diff(i).rank();
        let d_in = self.diff(i - 1).rank();
        self.dim(i) - d_out - d_in
    }

    pub fn profile(&self) -> CohomologyProfile {
        CohomologyProfile::from_dims(self.degrees().map(|i| (i, self.cohomology_dim(i))).collect())
    }

    /// `Σ(−1)^i dim C^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| sign(i) * self.dim(i) as i64).sum()
    }

    /// `Σ(−1)^i dim H^i`.
    pub fn cohomology_euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| sign(i) * self.cohomology_dim(i) as i64).sum()
    }

    /// `C[k]`.
    pub fn shift(&self, k: i32) -> LevelComplex {
        let diffs = if k.rem_euclid(2) == 1 { self.diffs.iter().map(Matrix::neg).collect() } else { self.diffs.clone() };
        Self { lo: self.lo - k, diffs, ..self.clone() }
    }

    /// Same complex on an explicit degree range (padding with zero terms).
    pub fn widened(&self, lo: i32, hi: i32) -> LevelComplex {
        let (lo, hi) = (lo.min(self.lo), hi.max(self.hi()));
        let terms = (lo..=hi).map(|i| self.term_or_zero(i)).collect();
        let diffs = (lo..hi).map(|i| self.diff(i)).collect();
        Self { lo, terms, diffs, ..self.clone() }
    }

    pub fn direct_sum(&self, other: &LevelComplex) -> Result<LevelComplex> {
        if self.config != other.config || self.level != other.level {
            return Err(AdicError::ConfigMismatch);
        }
        if self.terms.is_empty() {
            return Ok(other.clone());
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        let (lo, hi) = (self.lo.min(other.lo), self.hi().max(other.hi()));
        let terms = (lo..=hi).map(|i| self.term_or_zero(i).direct_sum(&other.term_or_zero(i))).collect::<Result<Vec<_>>>()?;
        let diffs = (lo..hi).map(|i| Matrix::block_diag(self.field(), &[self.diff(i), other.diff(i)])).collect();
        Ok(Self { lo, terms, diffs, ..self.clone() })
    }

    /// Termwise base change `A_k ⊗ −` to a lower level, with the projection chain map.
    pub fn base_change_to(&self, k: usize) -> Result<(LevelComplex, Vec<Matrix>)> {
        if k > self.level {
            return Err(AdicError::LevelMismatch(k, self.level));
        }
        let mut terms = Vec::new();
        let mut projs = Vec::new();
        let mut lifts = Vec::new();
        for t in &self.terms {
            let q = t.quotient(&t.power_submodule(k + 1));
            terms.push(q.module.at_level(k)?);
            projs.push(q.proj);
            lifts.push(q.lift);
        }
        let diffs = self.diffs.iter().enumerate().map(|(j, d)| projs[j + 1].mul(&d.mul(&lifts[j]))).collect();
        Ok((Self { level: k, terms, diffs, ..self.clone() }, projs))
    }
}

fn sign(i: i32) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// A morphism of complexes; `maps[j]` is the component in degree `lo + j`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: LevelComplex,
    pub target: LevelComplex,
    lo: i32,
    maps: Vec<Matrix>,
}

impl ChainMap {
    /// Validated constructor; `components(i)` gives the matrix `S^i → T^i`.
    pub fn new(source: LevelComplex, target: LevelComplex, mut components: impl FnMut(i32) -> Matrix) -> Result<Self> {
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        let maps: Vec<Matrix> = (lo..=hi).map(&mut components).collect();
        let f = Self { source, target, lo, maps };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        for i in self.lo..=self.hi() {
            let m = self.component(i);
            let (s, t) = (self.source.term_or_zero(i), self.target.term_or_zero(i));
            if !s.is_linear_map(&t, &m) {
                return Err(AdicError::NotAChainMap(i));
            }
            if self.target.diff(i).mul(&m) != self.component(i + 1).mul(&self.source.diff(i)) {
                return Err(AdicError::NotAChainMap(i));
            }
        }
        Ok(())
    }

    fn hi(&self) -> i32 {
        self.lo + self.maps.len() as i32 - 1
    }

    pub fn component(&self, i: i32) -> Matrix {
        if i >= self.lo && i <= self.hi() {
            return self.maps[(i - self.lo) as usize].clone();
        }
        Matrix::zeros(self.source.field(), self.target.dim(i), self.source.dim(i))
    }

    pub fn identity(c: &LevelComplex) -> Self {
        let maps = c.terms.iter().map(LevelModule::identity).collect();
        Self { source: c.clone(), target: c.clone(), lo: c.lo, maps }
    }

    pub fn zero(source: &LevelComplex, target: &LevelComplex) -> Self {
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        let maps = (lo..=hi).map(|i| Matrix::zeros(source.field(), target.dim(i), source.dim(i))).collect();
        Self { source: source.clone(), target: target.clone(), lo, maps }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(AdicError::Shape("chain maps do not compose".into()));
        }
        ChainMap::new(first.source.clone(), self.target.clone(), |i| self.component(i).mul(&first.component(i)))
    }

    /// `f[k]`, with components `f^{i+k}`.
    pub fn shift(&self, k: i32) -> ChainMap {
        Self { source: self.source.shift(k), target: self.target.shift(k), lo: self.lo - k, maps: self.maps.clone() }
    }

    /// Matrix of `H^i(f)` in the bases returned by [`LevelComplex::cohomology`].
    pub fn on_cohomology(&self, i: i32) -> Matrix {
        let hs = self.source.cohomology(i);
        let ht = self.target.cohomology(i);
        ht.classify.mul(&self.component(i)).mul(&hs.reps)
    }

    pub fn is_quasi_iso(&self) -> bool {
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).all(|i| {
            let h = self.on_cohomology(i);
            h.rows() == h.cols() && h.rank() == h.rows()
        })
    }
}

/// The mapping cone with its triangle maps `T → cone → S[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: LevelComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

pub fn cone(f: &ChainMap) -> Result<Cone> {
    let (s, t) = (&f.source, &f.target);
    let field = s.field();
    let lo = (s.lo - 1).min(t.lo);
    let hi = (s.hi() - 1).max(t.hi());
    let mut terms = Vec::new();
    for i in lo..=hi {
        terms.push(s.term_or_zero(i + 1).direct_sum(&t.term_or_zero(i))?);
    }
    let mut diffs = Vec::new();
    for i in lo..hi {
        let (a, b) = (s.dim(i + 1), t.dim(i));
        let (a2, b2) = (s.dim(i + 2), t.dim(i + 1));
        let mut d = Matrix::zeros(field, a2 + b2, a + b);
        d.set_block(0, 0, &s.diff(i + 1).neg());
        d.set_block(a2, 0, &f.component(i + 1));
        d.set_block(a2, a, &t.diff(i));
        diffs.push(d);
    }
    let complex = if terms.is_empty() { LevelComplex::zero(s.config, s.level) } else { LevelComplex::new(lo, terms, diffs)? };
    let inclusion = ChainMap::new(t.clone(), complex.clone(), |i| {
        let (a, b) = (s.dim(i + 1), t.dim(i));
        let mut m = Matrix::zeros(field, a + b, b);
        m.set_block(a, 0, &Matrix::identity(field, b));
        m
    })?;
    let shifted = s.shift(1);
    let projection = ChainMap::new(complex.clone(), shifted, |i| {
        let (a, b) = (s.dim(i + 1), t.dim(i));
        let mut m = Matrix::zeros(field, a, a + b);
        m.set_block(0, 0, &Matrix::identity(field, a));
        m
    })?;
    Ok(Cone { complex, inclusion, projection })
}

/// Checks exactness of `H^i(S) → H^i(T) → H^i(cone) → H^{i+1}(S) → H^{i+1}(T)` in every degree.
pub fn verify_long_exact_sequence(f: &ChainMap) -> Result<bool> {
    let c = cone(f)?;
    let f1 = f.shift(1);
    let lo = c.complex.lo.min(f.source.lo - 1).min(f.target.lo);
    let hi = c.complex.hi().max(f.source.hi()).max(f.target.hi());
    for i in lo..=hi {
        let hf = f.on_cohomology(i);
        let hinc = c.inclusion.on_cohomology(i);
        let hproj = c.projection.on_cohomology(i);
        let hf1 = f1.on_cohomology(i);
        let dt = f.target.cohomology_dim(i);
        let dc = c.complex.cohomology_dim(i);
        let ds = f.source.cohomology_dim(i + 1);
        if !hinc.mul(&hf).is_zero() || !hproj.mul(&hinc).is_zero() || !hf1.mul(&hproj).is_zero() {
            return Ok(false);
        }
        if hf.rank() + hinc.rank() != dt || hinc.rank() + hproj.rank() != dc || hproj.rank() + hf1.rank() != ds {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationSide {
    /// `τ^{≤i}`, with its inclusion into the complex.
    AtMost,
    /// `τ^{≥i}`, with the projection from the complex.
    AtLeast,
}

#[derive(Clone, Debug)]
pub struct Truncation {
    pub complex: LevelComplex,
    pub map: ChainMap,
}

/// Smart truncation at degree `i`.
pub fn smart_truncate(c: &LevelComplex, i: i32, side: TruncationSide) -> Result<Truncation> {
    let field = c.field();
    match side {
        TruncationSide::AtMost => {
            let hi = i.min(c.hi());
            if hi < c.lo {
                let z = LevelComplex::zero(c.config, c.level);
                return Ok(Truncation { map: ChainMap::zero(&z, c), complex: z });
            }
            let z = c.term_or_zero(hi).submodule(&c.diff(hi).kernel());
            let mut terms: Vec<LevelModule> = (c.lo..hi).map(|j| c.term_or_zero(j)).collect();
            terms.push(z.module.clone());
            let mut diffs: Vec<Matrix> = (c.lo..hi - 1).map(|j| c.diff(j)).collect();
            if hi > c.lo {
                diffs.push(z.coords.mul(&c.diff(hi - 1)));
            }
            let t = LevelComplex::new(c.lo, terms, diffs)?;
            let map = ChainMap::new(t.clone(), c.clone(), |j| {
                if j < hi {
                    c.term_or_zero(j).identity()
                } else if j == hi {
                    z.inclusion.clone()
                } else {
                    Matrix::zeros(field, c.dim(j), 0)
                }
            })?;
            Ok(Truncation { complex: t, map })
        }
        TruncationSide::AtLeast => {
            let lo = i.max(c.lo);
            if lo > c.hi() {
                let z = LevelComplex::zero(c.config, c.level);
                return Ok(Truncation { map: ChainMap::zero(c, &z), complex: z });
            }
            let q = c.term_or_zero(lo).quotient(&c.diff(lo - 1));
            let mut terms = vec![q.module.clone()];
            terms.extend((lo + 1..=c.hi()).map(|j| c.term_or_zero(j)));
            let mut diffs = Vec::new();
            if lo < c.hi() {
                diffs.push(c.diff(lo).mul(&q.lift));
            }
            diffs.extend((lo + 1..c.hi()).map(|j| c.diff(j)));
            let t = LevelComplex::new(lo, terms, diffs)?;
            let map = ChainMap::new(c.clone(), t.clone(), |j| {
                if j > lo {
                    c.term_or_zero(j).identity()
                } else if j == lo {
                    q.proj.clone()
                } else {
                    Matrix::zeros(field, 0, c.dim(j))
                }
            })?;
            Ok(Truncation { complex: t, map })
        }
    }
}

/// A summand `C^p ⊗ D^q` of a total degree: `(p, q, offset, tensor)`.
type TensorBlock = (i32, i32, usize, Tensor);

/// Total complex of `C ⊗_{A_k} D` with the data needed to form elements `m ⊗ n`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: LevelComplex,
    blocks: Vec<(i32, Vec<TensorBlock>)>,
}

impl TensorComplex {
    fn blocks_in(&self, m: i32) -> &[TensorBlock] {
        self.blocks.iter().find(|(d, _)| *d == m).map_or(&[], |(_, b)| b.as_slice())
    }

    /// Coordinates of `x ⊗ y` in the total term of degree `p + q`.
    pub fn element(&self, p: i32, x: &[u32], q: i32, y: &[u32]) -> Vec<u32> {
        let m = p + q;
        let dim = self.complex.dim(m);
        let mut out = vec![0; dim];
        for (bp, bq, off, t) in self.blocks_in(m) {
            if *bp == p && *bq == q {
                let xy: Vec<u32> = x.iter().flat_map(|&a| y.iter().map(move |&b| (a, b))).map(|(a, b)| self.complex.field().mul(a, b)).collect();
                let v = t.proj.mul_vec(&xy);
                out[*off..*off + v.len()].copy_from_slice(&v);
            }
        }
        out
    }
}

/// `C ⊗ D` over `A_k`. For complexes of free modules this is the derived tensor product.
pub fn tensor_complex(c: &LevelComplex, d: &LevelComplex) -> Result<TensorComplex> {
    if c.config != d.config || c.level != d.level {
        return Err(AdicError::ConfigMismatch);
    }
    let field = c.field();
    if c.terms.is_empty() || d.terms.is_empty() {
        return Ok(TensorComplex { complex: LevelComplex::zero(c.config, c.level), blocks: Vec::new() });
    }
    let (lo, hi) = (c.lo + d.lo, c.hi() + d.hi());
    let mut blocks = Vec::new();
    let mut terms = Vec::new();
    for m in lo..=hi {
        let mut parts = Vec::new();
        let mut mods = Vec::new();
        let mut off = 0;
        for p in c.lo..=c.hi() {
            let q = m - p;
            if q < d.lo || q > d.hi() {
                continue;
            }
            let t = tensor_level(&c.term_or_zero(p), &d.term_or_zero(q))?;
            mods.push(t.module.clone());
            let dim = t.module.dim();
            parts.push((p, q, off, t));
            off += dim;
        }
        terms.push(LevelModule::direct_sum_all(c.config, c.level, &mods)?);
        blocks.push((m, parts));
    }
    let mut diffs = Vec::new();
    for m in lo..hi {
        let src = &blocks[(m - lo) as usize].1;
        let tgt = &blocks[(m + 1 - lo) as usize].1;
        let mut dm = Matrix::zeros(field, terms[(m + 1 - lo) as usize].dim(), terms[(m - lo) as usize].dim());
        for (p, q, off, t) in src {
            for (p2, q2, off2, t2) in tgt {
                let piece = if *p2 == p + 1 && q2 == q {
                    let k = c.diff(*p).kron(&d.term_or_zero(*q).identity());
                    t2.proj.mul(&k).mul(&t.lift)
                } else if p2 == p && *q2 == q + 1 {
                    let k = c.term_or_zero(*p).identity().kron(&d.diff(*q));
                    let k = if p.rem_euclid(2) == 1 { k.neg() } else { k };
                    t2.proj.mul(&k).mul(&t.lift)
                } else {
                    continue;
                };
                dm.set_block(*off2, *off, &piece);
            }
        }
        diffs.push(dm);
    }
    let complex = LevelComplex::new(lo, terms, diffs)?;
    Ok(TensorComplex { complex, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::TruncatedSeries;

    fn cfg() -> RingConfig {
        RingConfig::new(5, 1, 4).unwrap()
    }

    fn koszul_x(level: usize) -> LevelComplex {
        let c = cfg();
        let a = LevelModule::free(c, level, 1);
        let x = TruncatedSeries::var(c, 0).action_matrix(level);
        LevelComplex::new(-1, vec![a.clone(), a], vec![x]).unwrap()
    }

    #[test]
    fn single_module_and_identity_complex() {
        let c = cfg();
        let m = LevelModule::free(c, 2, 1);
        let s = LevelComplex::concentrated(m.clone(), 0);
        let p = s.profile();
        assert_eq!((p.inf, p.sup, p.amp), (Bound::Finite(0), Bound::Finite(0), Bound::Finite(0)));
        let id = LevelComplex::new(0, vec![m.clone(), m.clone()], vec![m.identity()]).unwrap();
        assert!(id.profile().is_zero());
        let z = LevelComplex::zero(c, 2).profile();
        assert_eq!((z.inf, z.sup, z.amp), (Bound::PosInf, Bound::NegInf, Bound::NegInf));
    }

    #[test]
    fn rejects_nonzero_square() {
        let c = cfg();
        let m = LevelModule::free(c, 1, 1);
        let err = LevelComplex::new(3, vec![m.clone(), m.clone(), m.clone()], vec![m.identity(), m.identity()]).unwrap_err();
        assert_eq!(err, AdicError::NotAComplex(3));
    }

    #[test]
    fn koszul_of_x_has_residue_field_on_top() {
        // Per level, H⁰ = A₀ and H^{-1} = ker(x) = (x^k), the truncation artifact.
        let k = koszul_x(3);
        assert_eq!(k.cohomology(0).dim(), 1);
        assert_eq!(k.cohomology(-1).dim(), 1);
        assert_eq!(k.euler_characteristic(), k.cohomology_euler_characteristic());
    }

    #[test]
    fn profile_amplitude() {
        let c = cfg();
        let m = LevelModule::residue_field(c, 0);
        let a = LevelComplex::concentrated(m.clone(), -2).direct_sum(&LevelComplex::concentrated(m, 1)).unwrap();
        assert_eq!(a.profile().amp, Bound::Finite(3));
    }

    #[test]
    fn cone_of_identity_is_acyclic_and_cone_of_zero_splits() {
        let k = koszul_x(2);
        let c = cone(&ChainMap::identity(&k)).unwrap();
        assert!(c.complex.profile().is_zero());
        assert!(ChainMap::identity(&k).is_quasi_iso());
        let z = cone(&ChainMap::zero(&k, &k)).unwrap();
        let split = k.direct_sum(&k.shift(1)).unwrap();
        assert_eq!(z.complex.profile().dims, split.widened(z.complex.lo(), z.complex.hi()).profile().dims);
        assert!(verify_long_exact_sequence(&ChainMap::zero(&k, &k)).unwrap());
        assert!(verify_long_exact_sequence(&ChainMap::identity(&k)).unwrap());
    }

    #[test]
    fn zero_map_into_nonacyclic_is_not_quasi_iso() {
        let k = koszul_x(2);
        let z = LevelComplex::zero(cfg(), 2);
        assert!(!ChainMap::zero(&z, &k).is_quasi_iso());
    }

    #[test]
    fn truncations() {
        let k = koszul_x(3);
        let top = smart_truncate(&k, 0, TruncationSide::AtLeast).unwrap();
        assert_eq!(top.complex.lo(), 0);
        assert_eq!(top.complex.dim(0), 1);
        assert!(top.map.on_cohomology(0).is_invertible());
        let low = smart_truncate(&k, -1, TruncationSide::AtMost).unwrap();
        assert_eq!(low.complex.profile().dims, vec![(-1, 1)]);
        let single = LevelComplex::concentrated(LevelModule::free(cfg(), 1, 1), 0);
        assert_eq!(smart_truncate(&single, 2, TruncationSide::AtMost).unwrap().complex, single);
    }

    #[test]
    fn shift_moves_cohomology() {
        let k = koszul_x(2);
        let s = k.shift(1);
        for i in -3..=1 {
            assert_eq!(s.cohomology_dim(i), k.cohomology_dim(i + 1));
        }
    }

    #[test]
    fn tensor_with_unit_complex() {
        let c = cfg();
        let k = koszul_x(2);
        let unit = LevelComplex::concentrated(LevelModule::free(c, 2, 1), 0);
        let t = tensor_complex(&unit, &k).unwrap();
        assert_eq!(t.complex.profile().dims, k.profile().dims);
    }
}
