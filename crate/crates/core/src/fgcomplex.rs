//! Bounded complexes of finitely generated modules over `Â`.
//!
//! Each term is a presentation `coker(Â^s → Â^r)` and each differential is a
//! series matrix between the free covers that respects the relations. The
//! complex is realized at level `k` by reducing everything modulo `𝔞^{k+1}`.
//!
//! Cohomology of the realizations is not the reduction of the true cohomology:
//! reduction creates spurious cycles of high degree (e.g. `ker(x) = (x^k)` in
//! `A_k`). The *stable* cohomology read at level `ℓ` is the image of
//! `H^i(C_N) → H^i(C_ℓ)`; for `N − ℓ` beyond the Artin–Rees constants of the
//! complex it equals the image of the true `H^i(C)` in `H^i(C_ℓ)`. A reading is
//! flagged precision-stable when the image computed from level `N − 1`
//! agrees with the one computed from `N`.

use crate::base::{Matrix, RingConfig, SeriesMatrix};
use crate::complex::{ChainMap, Cohomology, CohomologyProfile, LevelComplex};
use crate::error::{AdicError, Result};
use crate::level::LevelModule;
use crate::tower::{free_truncation, FgPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgComplex {
    config: RingConfig,
    lo: i32,
    terms: Vec<FgPresentation>,
    diffs: Vec<SeriesMatrix>,
}

/// A complex realized at one level, with the cover projections and their sections per degree.
#[derive(Clone, Debug)]
pub struct Realized {
    pub complex: LevelComplex,
    pub projections: Vec<Matrix>,
    pub sections: Vec<Matrix>,
}

impl Realized {
    fn index(&self, i: i32) -> Option<usize> {
        let j = i - self.complex.lo();
        (j >= 0 && (j as usize) < self.projections.len()).then_some(j as usize)
    }

    /// Cover coordinates → term coordinates in degree `i`.
    pub fn projection(&self, i: i32, cover_dim: usize) -> Matrix {
        match self.index(i) {
            Some(j) => self.projections[j].clone(),
            None => Matrix::zeros(self.complex.field(), 0, cover_dim),
        }
    }

    pub fn section(&self, i: i32, cover_dim: usize) -> Matrix {
        match self.index(i) {
            Some(j) => self.sections[j].clone(),
            None => Matrix::zeros(self.complex.field(), cover_dim, 0),
        }
    }
}

/// The image of `H^i(C_top) → H^i(C_reading)`.
#[derive(Clone, Debug)]
pub struct StableCohomology {
    pub degree: i32,
    pub top: usize,
    pub reading: usize,
    pub module: LevelModule,
    /// Representatives in the realized term at the reading level.
    pub reps: Matrix,
    /// Classes of stable cycles of the realized term at the reading level.
    pub classify: Matrix,
    /// The image computed from level `top − 1` has the same dimension.
    pub precision_stable: bool,
}

impl StableCohomology {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// Stable cohomology in every degree of the complex.
#[derive(Clone, Debug)]
pub struct StableProfile {
    pub profile: CohomologyProfile,
    pub top: usize,
    pub reading: usize,
    pub degrees: Vec<StableCohomology>,
}

impl StableProfile {
    pub fn precision_stable(&self) -> bool {
        self.degrees.iter().all(|h| h.precision_stable)
    }

    pub fn get(&self, i: i32) -> Option<&StableCohomology> {
        self.degrees.iter().find(|h| h.degree == i)
    }
}

impl FgComplex {
    /// Validated constructor; `diffs[j]` maps the cover in degree `lo + j` to the next cover.
    pub fn new(lo: i32, terms: Vec<FgPresentation>, diffs: Vec<SeriesMatrix>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(AdicError::Shape("use FgComplex::zero for the empty complex".into()));
        };
        let c = Self { config: first.config(), lo, terms, diffs };
        c.check_shapes()?;
        c.realize(c.config.precision())?;
        Ok(c)
    }

    pub(crate) fn from_parts(config: RingConfig, lo: i32, terms: Vec<FgPresentation>, diffs: Vec<SeriesMatrix>) -> Self {
        Self { config, lo, terms, diffs }
    }

    fn check_shapes(&self) -> Result<()> {
        if self.diffs.len() + 1 != self.terms.len() {
            return Err(AdicError::Shape("need one differential between consecutive terms".into()));
        }
        for (j, d) in self.diffs.iter().enumerate() {
            if d.config() != self.config || self.terms[j].config() != self.config {
                return Err(AdicError::ConfigMismatch);
            }
            if d.cols() != self.terms[j].rank() || d.rows() != self.terms[j + 1].rank() {
                return Err(AdicError::Shape(format!("differential in degree {} has the wrong extent", self.lo + j as i32)));
            }
        }
        Ok(())
    }

    pub fn zero(config: RingConfig) -> Self {
        Self { config, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn concentrated(m: FgPresentation, degree: i32) -> Self {
        Self { config: m.config(), lo: degree, terms: vec![m], diffs: Vec::new() }
    }

    /// A complex of free modules `Â^{r_j}`.
    pub fn free(config: RingConfig, lo: i32, diffs: Vec<SeriesMatrix>, ranks: Vec<usize>) -> Result<Self> {
        let terms = ranks.iter().map(|&r| FgPresentation::free(config, r)).collect();
        if ranks.is_empty() {
            return Ok(Self::zero(config));
        }
        Self::new(lo, terms, diffs)
    }

    pub fn config(&self) -> RingConfig {
        self.config
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn terms(&self) -> &[FgPresentation] {
        &self.terms
    }

    pub fn term(&self, i: i32) -> Option<&FgPresentation> {
        if i < self.lo {
            return None;
        }
        self.terms.get((i - self.lo) as usize)
    }

    pub fn term_or_zero(&self, i: i32) -> FgPresentation {
        self.term(i).cloned().unwrap_or_else(|| FgPresentation::free(self.config, 0))
    }

    /// Rank of the cover in degree `i`.
    pub fn rank(&self, i: i32) -> usize {
        self.term(i).map_or(0, FgPresentation::rank)
    }

    pub fn diff(&self, i: i32) -> SeriesMatrix {
        if i >= self.lo && ((i - self.lo) as usize) < self.diffs.len() {
            return self.diffs[(i - self.lo) as usize].clone();
        }
        SeriesMatrix::zeros(self.config, self.rank(i + 1), self.rank(i))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.rank() == 0)
    }

    /// Every term is free (no relations other than zero).
    pub fn has_free_terms(&self) -> bool {
        self.terms.iter().all(|t| t.relations().is_zero())
    }

    /// Same complex at a lower precision.
    pub fn with_precision(&self, precision: usize) -> FgComplex {
        let config = self.config.with_precision(precision);
        let re = |m: &SeriesMatrix| m.map(|e| e.with_precision(precision));
        Self {
            config,
            lo: self.lo,
            terms: self.terms.iter().map(|t| FgPresentation::new(re(t.relations()))).collect(),
            diffs: self.diffs.iter().map(re).collect(),
        }
    }

    pub fn realize(&self, k: usize) -> Result<Realized> {
        self.config.check_level(k)?;
        if self.terms.is_empty() {
            return Ok(Realized { complex: LevelComplex::zero(self.config, k), projections: Vec::new(), sections: Vec::new() });
        }
        let pres: Vec<_> = self.terms.iter().map(|t| t.level(k)).collect::<Result<_>>()?;
        let mut diffs = Vec::new();
        for (j, d) in self.diffs.iter().enumerate() {
            let dk = d.realize(k);
            // Relations must map into relations.
            let rel_ker = pres[j].projection.matrix.kernel();
            if !pres[j + 1].projection.matrix.mul(&dk).mul(&rel_ker).is_zero() {
                return Err(AdicError::Invariant(format!("differential in degree {} does not respect relations at level {k}", self.lo + j as i32)));
            }
            diffs.push(pres[j + 1].projection.matrix.mul(&dk).mul(&pres[j].section));
        }
        let projections = pres.iter().map(|p| p.projection.matrix.clone()).collect();
        let sections = pres.iter().map(|p| p.section.clone()).collect();
        let terms = pres.into_iter().map(|p| p.module).collect();
        let complex = LevelComplex::new(self.lo, terms, diffs)?;
        Ok(Realized { complex, projections, sections })
    }

    /// Per-degree maps `C_from → C_to` of realized terms, `to ≤ from`.
    pub fn transition(&self, from: &Realized, from_level: usize, to: &Realized, to_level: usize, i: i32) -> Matrix {
        let r = self.rank(i);
        let t = free_truncation(self.config, r, from_level, to_level);
        let dc_from = r * self.config.level_dim(from_level);
        let dc_to = r * self.config.level_dim(to_level);
        to.projection(i, dc_to).mul(&t).mul(&from.section(i, dc_from))
    }

    /// Largest order of a differential entry (at least 1): the default reading margin.
    pub fn margin(&self) -> usize {
        let rel = self.terms.iter().map(|t| t.relations().max_order()).max().unwrap_or(0);
        self.diffs.iter().map(SeriesMatrix::max_order).max().unwrap_or(0).max(rel).max(1)
    }

    /// `N − margin`, the default level at which stable cohomology is read.
    pub fn reading_level(&self) -> Result<usize> {
        let n = self.config.precision();
        let m = self.margin();
        if n < m + 1 {
            return Err(AdicError::PrecisionInsufficient(format!("precision {n} leaves no room for a reading margin of {m}")));
        }
        Ok(n - m)
    }

    /// Stable cohomology in every degree, read at `reading` from `top = N`.
    pub fn stable_profile_at(&self, reading: usize) -> Result<StableProfile> {
        let top = self.config.precision();
        if reading > top {
            return Err(AdicError::PrecisionExceeded { level: reading, precision: top });
        }
        let r_top = self.realize(top)?;
        let r_read = self.realize(reading)?;
        // The same computation one step lower in both precision and reading level.
        let lower = if reading >= 1 { Some((self.realize(top - 1)?, self.realize(reading - 1)?)) } else { None };
        let mut degrees = Vec::new();
        for i in self.degrees() {
            let h_top = r_top.complex.cohomology(i);
            let h_read = r_read.complex.cohomology(i);
            let (module, reps, classify) = stable_image(self, &h_top, &r_top, top, &h_read, &r_read, reading, i);
            let precision_stable = match &lower {
                Some((rp, rr)) => {
                    let h_prev = rp.complex.cohomology(i);
                    let h_rr = rr.complex.cohomology(i);
                    let (m2, _, _) = stable_image(self, &h_prev, rp, top - 1, &h_rr, rr, reading - 1, i);
                    m2.dim() == module.dim()
                }
                None => false,
            };
            degrees.push(StableCohomology { degree: i, top, reading, module, reps, classify, precision_stable });
        }
        let profile = CohomologyProfile::from_dims(degrees.iter().map(|h| (h.degree, h.dim())).collect());
        Ok(StableProfile { profile, top, reading, degrees })
    }

    pub fn stable_profile(&self) -> Result<StableProfile> {
        self.stable_profile_at(self.reading_level()?)
    }

    pub fn shift(&self, k: i32) -> FgComplex {
        let diffs = if k.rem_euclid(2) == 1 { self.diffs.iter().map(SeriesMatrix::neg).collect() } else { self.diffs.clone() };
        Self { lo: self.lo - k, diffs, ..self.clone() }
    }

    pub fn direct_sum(&self, other: &FgComplex) -> Result<FgComplex> {
        if self.config != other.config {
            return Err(AdicError::ConfigMismatch);
        }
        if self.terms.is_empty() {
            return Ok(other.clone());
        }
        if other.terms.is_empty() {
            return Ok(self.clone());
        }
        let (lo, hi) = (self.lo.min(other.lo), self.hi().max(other.hi()));
        let terms = (lo..=hi).map(|i| self.term_or_zero(i).direct_sum(&other.term_or_zero(i))).collect();
        let diffs = (lo..hi).map(|i| SeriesMatrix::block_diag(self.config, &[self.diff(i), other.diff(i)])).collect();
        Ok(Self::from_parts(self.config, lo, terms, diffs))
    }

    /// Change of basis on the covers: `P_i` invertible, new differential `P_{i+1} d P_i^{-1}`, relations `P_i R_i`.
    pub fn conjugate(&self, bases: &[SeriesMatrix]) -> Result<FgComplex> {
        if bases.len() != self.terms.len() {
            return Err(AdicError::Shape("need one base change per term".into()));
        }
        let invs: Vec<SeriesMatrix> = bases.iter().map(|b| b.inverse().ok_or_else(|| AdicError::Precondition("base change is not invertible".into()))).collect::<Result<_>>()?;
        let terms = self.terms.iter().zip(bases).map(|(t, b)| FgPresentation::new(b.mul(t.relations()))).collect();
        let diffs = self.diffs.iter().enumerate().map(|(j, d)| bases[j + 1].mul(d).mul(&invs[j])).collect();
        Ok(Self::from_parts(self.config, self.lo, terms, diffs))
    }

    /// The realizations at every level with the truncation chain maps.
    pub fn complete(&self) -> Result<TowerComplex> {
        let n = self.config.precision();
        let levels: Vec<Realized> = (0..=n).map(|k| self.realize(k)).collect::<Result<_>>()?;
        let mut transitions = Vec::new();
        for k in 0..n {
            let (hi, lo) = (&levels[k + 1], &levels[k]);
            transitions.push(ChainMap::new(hi.complex.clone(), lo.complex.clone(), |i| self.transition(hi, k + 1, lo, k, i))?);
        }
        Ok(TowerComplex { levels: levels.into_iter().map(|r| r.complex).collect(), transitions })
    }
}

#[allow(clippy::too_many_arguments)]
fn stable_image(
    c: &FgComplex,
    h_top: &Cohomology,
    r_top: &Realized,
    top: usize,
    h_read: &Cohomology,
    r_read: &Realized,
    reading: usize,
    i: i32,
) -> (LevelModule, Matrix, Matrix) {
    let t = c.transition(r_top, top, r_read, reading, i);
    let img = h_read.classify.mul(&t).mul(&h_top.reps);
    let sub = h_read.module.submodule(&img);
    let reps = h_read.reps.mul(&sub.inclusion);
    let classify = sub.coords.mul(&h_read.classify);
    (sub.module, reps, classify)
}

/// A morphism of f.g. complexes given on the covers.
#[derive(Clone, Debug)]
pub struct FgChainMap {
    pub source: FgComplex,
    pub target: FgComplex,
    lo: i32,
    maps: Vec<SeriesMatrix>,
}

impl FgChainMap {
    pub fn new(source: FgComplex, target: FgComplex, mut components: impl FnMut(i32) -> SeriesMatrix) -> Result<Self> {
        let f = Self::from_fn(source, target, &mut components);
        let n = f.source.config.precision();
        f.realize(n, &f.source.realize(n)?, &f.target.realize(n)?)?;
        Ok(f)
    }

    pub(crate) fn from_fn(source: FgComplex, target: FgComplex, mut components: impl FnMut(i32) -> SeriesMatrix) -> Self {
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        let maps = (lo..=hi).map(&mut components).collect();
        Self { source, target, lo, maps }
    }

    pub fn component(&self, i: i32) -> SeriesMatrix {
        let hi = self.lo + self.maps.len() as i32 - 1;
        if i >= self.lo && i <= hi {
            return self.maps[(i - self.lo) as usize].clone();
        }
        SeriesMatrix::zeros(self.source.config, self.target.rank(i), self.source.rank(i))
    }

    /// The induced chain map of realizations at level `k`.
    pub fn realize(&self, k: usize, src: &Realized, tgt: &Realized) -> Result<ChainMap> {
        let cfg = self.source.config;
        let d = cfg.level_dim(k);
        for i in self.source.degrees() {
            let fk = self.component(i).realize(k);
            let ker = src.projection(i, self.source.rank(i) * d).kernel();
            if !tgt.projection(i, self.target.rank(i) * d).mul(&fk).mul(&ker).is_zero() {
                return Err(AdicError::Invariant(format!("map in degree {i} does not respect relations at level {k}")));
            }
        }
        ChainMap::new(src.complex.clone(), tgt.complex.clone(), |i| {
            let fk = self.component(i).realize(k);
            tgt.projection(i, self.target.rank(i) * d).mul(&fk).mul(&src.section(i, self.source.rank(i) * d))
        })
    }

    /// Matrix of the induced map on stable cohomology in degree `i`.
    pub fn on_stable(&self, k: usize, src: &Realized, tgt: &Realized, hs: &StableCohomology, ht: &StableCohomology) -> Result<Matrix> {
        let f = self.realize(k, src, tgt)?;
        Ok(ht.classify.mul(&f.component(hs.degree)).mul(&hs.reps))
    }
}

/// `cone(f)^i = S^{i+1} ⊕ T^i` with `d(x, y) = (−dx, f(x) + dy)`, on presentations.
pub fn fg_cone(f: &FgChainMap) -> FgComplex {
    let (s, t) = (&f.source, &f.target);
    let cfg = s.config;
    let lo = (s.lo - 1).min(t.lo);
    let hi = (s.hi() - 1).max(t.hi());
    let terms = (lo..=hi).map(|i| s.term_or_zero(i + 1).direct_sum(&t.term_or_zero(i))).collect();
    let diffs = (lo..hi)
        .map(|i| {
            let (a, b) = (s.rank(i + 1), t.rank(i));
            let (a2, b2) = (s.rank(i + 2), t.rank(i + 1));
            let mut d = SeriesMatrix::zeros(cfg, a2 + b2, a + b);
            d.set_block(0, 0, &s.diff(i + 1).neg());
            d.set_block(a2, 0, &f.component(i + 1));
            d.set_block(a2, a, &t.diff(i));
            d
        })
        .collect();
    FgComplex::from_parts(cfg, lo, terms, diffs)
}

/// Level complexes `C₀..C_N` with truncation chain maps `C_{k+1} → C_k`.
#[derive(Clone, Debug)]
pub struct TowerComplex {
    pub levels: Vec<LevelComplex>,
    pub transitions: Vec<ChainMap>,
}

impl TowerComplex {
    pub fn precision(&self) -> usize {
        self.levels.len() - 1
    }

    /// Whether the level-wise `H^i` form a tower: each induced map `H^i_{k+1} → H^i_k`
    /// is surjective with kernel `𝔞^{k+1}H^i_{k+1}`.
    pub fn cohomology_is_tower(&self, i: i32) -> Vec<bool> {
        (0..self.precision())
            .map(|k| {
                let h = self.transitions[k].on_cohomology(i);
                let upper = self.levels[k + 1].cohomology(i).module;
                let lower_dim = self.levels[k].cohomology_dim(i);
                if h.rank() != lower_dim {
                    return false;
                }
                let ker = h.kernel();
                let power = upper.power_submodule(k + 1);
                ker.cols() == power.cols() && ker.spans(&power)
            })
            .collect()
    }

    /// Level-wise quasi-isomorphism test for a family of chain maps into this tower.
    pub fn is_levelwise_quasi_iso(maps: &[ChainMap]) -> bool {
        maps.iter().all(ChainMap::is_quasi_iso)
    }
}
