//! Torsion modules as directed systems, the injective hull of the residue
//! field, Matlis duality, Bass numbers and the Ext criterion for cofiniteness.

use serde::Serialize;

use crate::base::{Matrix, RingConfig, SeriesMatrix, TruncatedSeries};
use crate::complex::{ChainMap, LevelComplex};
use crate::error::{AdicError, Result};
use crate::fgcomplex::{FgChainMap, FgComplex};
use crate::koszul::{hom_free, hom_free_map, koszul_vars, rhom_a0_level, rhom_a0_level_map, IndComplex};
use crate::level::LevelModule;
use crate::tower::{complete_fg, free_inclusion, FgPresentation, TowerModule};

/// A directed system `T₀ → T₁ → …` of level modules with injective A-linear transitions.
///
/// Stage `t` is killed by `𝔞^{ℓ_t+1}` where `ℓ_t` is its level; levels never
/// decrease along the system. The colimit is the torsion module it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndTorsionModule {
    config: RingConfig,
    stages: Vec<LevelModule>,
    transitions: Vec<Matrix>,
}

impl IndTorsionModule {
    pub fn new(stages: Vec<LevelModule>, transitions: Vec<Matrix>) -> Result<Self> {
        let Some(first) = stages.first() else {
            return Err(AdicError::Shape("an ind-system needs at least one stage".into()));
        };
        let config = first.config();
        if transitions.len() + 1 != stages.len() {
            return Err(AdicError::Shape("need one transition per consecutive pair of stages".into()));
        }
        for w in stages.windows(2) {
            if w[1].config() != config || w[1].level() < w[0].level() {
                return Err(AdicError::Shape("stage levels must not decrease".into()));
            }
        }
        for (t, iota) in transitions.iter().enumerate() {
            let (a, b) = (&stages[t], &stages[t + 1]);
            if iota.rows() != b.dim() || iota.cols() != a.dim() {
                return Err(AdicError::Shape(format!("transition {t} has the wrong extent")));
            }
            let linear = a.actions().iter().zip(b.actions()).all(|(xa, xb)| iota.mul(xa) == xb.mul(iota));
            if !linear {
                return Err(AdicError::Invariant(format!("transition {t} is not A-linear")));
            }
            if iota.rank() != a.dim() {
                return Err(AdicError::Invariant(format!("transition {t} is not injective")));
            }
        }
        Ok(Self { config, stages, transitions })
    }

    /// The filtration `T[𝔞^{t+1}]` of a module killed by a power of `𝔞`, with `budget + 1` stages.
    pub fn from_module(m: &LevelModule, budget: usize) -> Result<Self> {
        let cfg = m.config();
        cfg.check_level(budget)?;
        let mut stages = Vec::new();
        let mut spans = Vec::new();
        for t in 0..=budget {
            let ker = crate::tower::annihilator_kernel(m, t + 1);
            let sub = m.submodule(&ker);
            stages.push(sub.module.at_level(t)?);
            spans.push(sub);
        }
        let transitions = (0..budget).map(|t| spans[t + 1].coords.mul(&spans[t].inclusion)).collect();
        Self::new(stages, transitions)
    }

    pub fn zero(config: RingConfig, budget: usize) -> Result<Self> {
        config.check_level(budget)?;
        let stages = (0..=budget).map(|t| LevelModule::zero(config, t)).collect();
        let transitions = (0..budget).map(|_| Matrix::zeros(config.field(), 0, 0)).collect();
        Ok(Self { config, stages, transitions })
    }

    pub fn config(&self) -> RingConfig {
        self.config
    }

    pub fn budget(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stage(&self, t: usize) -> &LevelModule {
        &self.stages[t]
    }

    pub fn stages(&self) -> &[LevelModule] {
        &self.stages
    }

    pub fn transition(&self, t: usize) -> &Matrix {
        &self.transitions[t]
    }

    /// Composite `T_from → T_to` for `from ≤ to`.
    pub fn transition_between(&self, from: usize, to: usize) -> Matrix {
        let mut m = self.stages[from].identity();
        for t in from..to {
            m = self.transitions[t].mul(&m);
        }
        m
    }

    pub fn dims(&self) -> Vec<usize> {
        self.stages.iter().map(LevelModule::dim).collect()
    }

    /// Stages regarded at the common top level, with transitions as chain maps in degree `degree`.
    pub fn as_complexes(&self, degree: i32) -> (Vec<LevelComplex>, Vec<ChainMap>) {
        let top = self.stages.last().map_or(0, LevelModule::level);
        let complexes: Vec<LevelComplex> =
            self.stages.iter().map(|s| LevelComplex::concentrated(s.at_level(top).expect("raising the level is always allowed"), degree)).collect();
        let maps = self
            .transitions
            .iter()
            .enumerate()
            .map(|(t, iota)| ChainMap::new(complexes[t].clone(), complexes[t + 1].clone(), |_| iota.clone()).expect("transitions are A-linear"))
            .collect();
        (complexes, maps)
    }

    pub fn direct_sum(&self, other: &IndTorsionModule) -> Result<IndTorsionModule> {
        if self.config != other.config || self.budget() != other.budget() {
            return Err(AdicError::ConfigMismatch);
        }
        let stages = self
            .stages
            .iter()
            .zip(&other.stages)
            .map(|(a, b)| {
                let l = a.level().max(b.level());
                a.at_level(l)?.direct_sum(&b.at_level(l)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let transitions = self.transitions.iter().zip(&other.transitions).map(|(a, b)| Matrix::block_diag(self.config.field(), &[a.clone(), b.clone()])).collect();
        Self::new(stages, transitions)
    }
}

/// `J(𝔪)`: stage `t` is the k-linear dual of `A_t`, transitions dual to the ring surjections.
pub fn injective_hull(config: RingConfig, budget: usize) -> Result<IndTorsionModule> {
    config.check_level(budget)?;
    let stages = (0..=budget).map(|t| LevelModule::free(config, t, 1).dual()).collect();
    let transitions = (0..budget).map(|t| free_inclusion(config, 1, t, t + 1)).collect();
    IndTorsionModule::new(stages, transitions)
}

/// `Hom_A(M, J(𝔪))`: stage `t` is the dual of `M/𝔞^{t+1}M`.
pub fn matlis_dual_fg(m: &FgPresentation) -> Result<IndTorsionModule> {
    let tower = complete_fg(m)?;
    dual_of_tower(&tower)
}

pub fn dual_of_tower(tower: &TowerModule) -> Result<IndTorsionModule> {
    let stages = tower.levels().iter().map(LevelModule::dual).collect();
    let transitions = (0..tower.precision()).map(|k| tower.transition(k).transpose()).collect();
    IndTorsionModule::new(stages, transitions)
}

/// The tower of stage duals `T_t^*` with the transposed transitions.
pub fn dual_tower(t: &IndTorsionModule) -> Result<TowerModule> {
    let levels: Vec<LevelModule> = t.stages.iter().enumerate().map(|(k, s)| s.at_level(k).map(|m| m.dual())).collect::<Result<_>>()?;
    let transitions = t.transitions.iter().map(Matrix::transpose).collect();
    TowerModule::new(levels, transitions).map_err(|e| AdicError::NotCofinite(format!("stage duals do not form a tower: {e}")))
}

/// A presentation reconstructed from a cofinite ind-module, with the identification
/// of its completion with the stage duals.
#[derive(Clone, Debug)]
pub struct DualBack {
    pub presentation: FgPresentation,
    /// Per level `k`, an invertible A-linear map from level `k` of the completed
    /// presentation to `T_k^*`.
    pub identifications: Vec<Matrix>,
}

/// Quasi-inverse of [`matlis_dual_fg`]: reads a finitely generated module off the stage duals.
///
/// Minimal generators and relations are taken at the top stage and lifted to
/// polynomial relations; every level of the result is then identified with the
/// corresponding stage dual.
pub fn matlis_dual_back(t: &IndTorsionModule) -> Result<DualBack> {
    let config = t.config;
    let tower = dual_tower(t)?;
    let b = tower.precision();
    let top = tower.level(b);
    let cover = top.free_cover();
    let r = cover.generators.cols();
    let columns: Vec<Vec<TruncatedSeries>> =
        (0..cover.relations.cols()).map(|c| SeriesMatrix::column_from_dense(config, r, b, &cover.relations.column(c))).collect();
    let presentation = FgPresentation::new(SeriesMatrix::from_columns(config, r, &columns));
    let mut identifications = Vec::new();
    for k in 0..=b {
        let lvl = presentation.level(k)?;
        // e_j ↦ image of generator j in T_k^* through the tower.
        let gens_top = cover.cover.mul(&free_inclusion(config, r, 0, b));
        let gens_k = tower.transition_between(b, k).mul(&gens_top);
        let cov_k = tower.level(k).cover_matrix(&gens_k);
        let phi = cov_k.mul(&lvl.section);
        let ok = lvl.module.is_linear_map(tower.level(k), &phi) && phi.is_invertible() && cov_k.mul(&lvl.projection.matrix.kernel()).is_zero();
        if !ok {
            return Err(AdicError::NotCofinite(format!("reconstructed module does not match the stage duals at level {k}")));
        }
        identifications.push(phi);
    }
    Ok(DualBack { presentation, identifications })
}

/// A stage of a torsion system reads `μ_q` as either a stabilized rank or a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BassValue {
    Finite(usize),
    /// Ranks were still growing at the last stage; the value is the last rank seen.
    AtLeast(usize),
}

impl std::fmt::Display for BassValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BassValue::Finite(v) => write!(f, "{v}"),
            BassValue::AtLeast(v) => write!(f, "≥{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BassDegree {
    pub degree: i32,
    pub value: BassValue,
    /// Rank of `Ext^q(A₀, stage t) → Ext^q(A₀, last stage)` for every stage before the last.
    pub ranks: Vec<usize>,
}

/// `μ_q = dim Ext^q(A₀, colim T_t)`, read through the images of the stages in the last stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BassProfile {
    pub degrees: Vec<BassDegree>,
    /// Index of the last stage.
    pub budget: usize,
    /// Reading level for stages given by f.g. complexes.
    pub reading: Option<usize>,
}

impl BassProfile {
    pub fn get(&self, q: i32) -> BassValue {
        self.degrees.iter().find(|d| d.degree == q).map_or(BassValue::Finite(0), |d| d.value)
    }

    pub fn all_finite(&self) -> bool {
        self.degrees.iter().all(|d| matches!(d.value, BassValue::Finite(_)))
    }

    pub fn stamp(&self) -> String {
        match self.reading {
            Some(r) => format!("stages 0..={}, reading level {r}", self.budget),
            None => format!("stages 0..={}", self.budget),
        }
    }
}

/// A bounded complex of torsion modules given as a directed system.
#[derive(Clone, Debug)]
pub enum TorsionComplex {
    /// Stages of level complexes, each killed by a power of `𝔞`.
    Levels { stages: Vec<LevelComplex>, transitions: Vec<ChainMap> },
    /// Stages `Hom(K(x^t), M)` of finitely generated complexes.
    Telescope(IndComplex),
}

impl TorsionComplex {
    pub fn from_module(m: &IndTorsionModule, degree: i32) -> Self {
        let (stages, transitions) = m.as_complexes(degree);
        TorsionComplex::Levels { stages, transitions }
    }

    pub fn num_stages(&self) -> usize {
        match self {
            TorsionComplex::Levels { stages, .. } => stages.len(),
            TorsionComplex::Telescope(ind) => ind.stages.len(),
        }
    }

    pub fn config(&self) -> RingConfig {
        match self {
            TorsionComplex::Levels { stages, .. } => stages[0].config(),
            TorsionComplex::Telescope(ind) => ind.config(),
        }
    }

    /// Degrees where `Ext(A₀, −)` can be nonzero: the stage degrees widened by `n` above.
    pub fn ext_window(&self) -> (i32, i32) {
        let n = self.config().nvars() as i32;
        let (lo, hi) = match self {
            TorsionComplex::Levels { stages, .. } => {
                (stages.iter().map(LevelComplex::lo).min().unwrap_or(0), stages.iter().map(LevelComplex::hi).max().unwrap_or(-1))
            }
            TorsionComplex::Telescope(ind) => (ind.stages.iter().map(FgComplex::lo).min().unwrap_or(0), ind.stages.iter().map(FgComplex::hi).max().unwrap_or(-1)),
        };
        (lo, hi + n)
    }
}

fn bass_value(ranks: &[usize]) -> BassValue {
    let b = ranks.len();
    if ranks[b - 2] == ranks[b - 1] {
        BassValue::Finite(ranks[b - 1])
    } else {
        BassValue::AtLeast(ranks[b - 1])
    }
}

/// Bass numbers over the Ext window of the input.
pub fn bass_numbers(m: &TorsionComplex) -> Result<BassProfile> {
    let stages = m.num_stages();
    if stages < 3 {
        return Err(AdicError::Precondition("Bass numbers need at least three stages".into()));
    }
    let last = stages - 1;
    let (lo, hi) = m.ext_window();
    match m {
        TorsionComplex::Levels { stages: st, transitions } => {
            let ext: Vec<LevelComplex> = st.iter().map(rhom_a0_level).collect::<Result<_>>()?;
            let maps: Vec<ChainMap> = transitions.iter().enumerate().map(|(t, f)| rhom_a0_level_map(f, &ext[t], &ext[t + 1])).collect::<Result<_>>()?;
            let mut to_top: Vec<ChainMap> = Vec::new();
            let mut acc = ChainMap::identity(&ext[last]);
            for t in (0..last).rev() {
                acc = acc.compose(&maps[t])?;
                to_top.push(acc.clone());
            }
            to_top.reverse();
            let degrees = (lo..=hi)
                .map(|q| {
                    let ranks: Vec<usize> = to_top.iter().map(|f| f.on_cohomology(q).rank()).collect();
                    BassDegree { degree: q, value: bass_value(&ranks), ranks }
                })
                .collect();
            Ok(BassProfile { degrees, budget: last, reading: None })
        }
        TorsionComplex::Telescope(ind) => {
            let k = koszul_vars(ind.config()).complex;
            let ext: Vec<FgComplex> = ind.stages.iter().map(|s| hom_free(&k, s)).collect::<Result<_>>()?;
            let maps: Vec<FgChainMap> = ind.transitions.iter().enumerate().map(|(t, g)| hom_free_map(&k, g, &ext[t], &ext[t + 1])).collect::<Result<_>>()?;
            let reading = ext.iter().map(FgComplex::reading_level).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0);
            let sys = IndComplex { stages: ext, transitions: maps };
            let coh = sys.cohomology(reading)?;
            let degrees = (lo..=hi)
                .map(|q| {
                    let ranks: Vec<usize> = coh.iter().find(|h| h.degree == q).map_or(vec![0; last], |h| h.ranks_into_top[..last].to_vec());
                    BassDegree { degree: q, value: bass_value(&ranks), ranks }
                })
                .collect();
            Ok(BassProfile { degrees, budget: last, reading: Some(reading) })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CofinitenessVerdict {
    pub cofinite: bool,
    pub profile: BassProfile,
    pub stamp: String,
}

/// Cofinite at the given budget iff every `Ext^q(A₀, M)` in the window has a stabilized finite rank.
pub fn is_cohomologically_cofinite(m: &TorsionComplex) -> Result<CofinitenessVerdict> {
    let profile = bass_numbers(m)?;
    let cofinite = profile.all_finite();
    let stamp = profile.stamp();
    Ok(CofinitenessVerdict { cofinite, profile, stamp })
}

/// The two cofiniteness tests for a single module over `F_p[[t]]`.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub ext_verdict: CofinitenessVerdict,
    /// The module was reconstructed as the Matlis dual of a f.g. module.
    pub dual_verdict: bool,
    pub dual: Option<FgPresentation>,
    pub agree: bool,
}

pub fn hartshorne_compare_n1(m: &IndTorsionModule) -> Result<ComparisonReport> {
    if m.config().nvars() != 1 {
        return Err(AdicError::Precondition("the comparison is implemented for one variable".into()));
    }
    let ext_verdict = is_cohomologically_cofinite(&TorsionComplex::from_module(m, 0))?;
    let dual = match matlis_dual_back(m) {
        Ok(back) => {
            // The Matlis dual of the reconstruction must match the stages again.
            let again = matlis_dual_fg(&back.presentation)?;
            (again.dims().get(..m.dims().len()) == Some(&m.dims()[..])).then_some(back.presentation)
        }
        Err(AdicError::NotCofinite(_)) => None,
        Err(e) => return Err(e),
    };
    let dual_verdict = dual.is_some();
    Ok(ComparisonReport { agree: dual_verdict == ext_verdict.cofinite, ext_verdict, dual_verdict, dual })
}

/// `⊕_{i≥1} A/𝔞^i` through a growing window: stage `t` is `⊕_{i=1..t+1} A/𝔞^i`.
pub fn growing_window_sum(config: RingConfig, budget: usize) -> Result<IndTorsionModule> {
    config.check_level(budget)?;
    let field = config.field();
    let mut stages = Vec::new();
    for t in 0..=budget {
        let parts: Vec<LevelModule> = (0..=t).map(|i| LevelModule::free(config, i, 1).at_level(t)).collect::<Result<_>>()?;
        stages.push(LevelModule::direct_sum_all(config, t, &parts)?);
    }
    let transitions = (0..budget)
        .map(|t| {
            let (a, b) = (stages[t].dim(), stages[t + 1].dim());
            Matrix::from_fn(field, b, a, |i, j| u32::from(i == j))
        })
        .collect();
    IndTorsionModule::new(stages, transitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::telescope_gamma;

    #[test]
    fn injective_hull_has_one_bass_number() {
        for n in 1..=2 {
            let c = RingConfig::new(3, n, 5).unwrap();
            let j = injective_hull(c, 4).unwrap();
            let prof = bass_numbers(&TorsionComplex::from_module(&j, 0)).unwrap();
            assert_eq!(prof.get(0), BassValue::Finite(1));
            for q in 1..=n as i32 {
                assert_eq!(prof.get(q), BassValue::Finite(0), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn growing_window_is_not_cofinite() {
        let c = RingConfig::new(5, 1, 6).unwrap();
        let m = growing_window_sum(c, 5).unwrap();
        let v = is_cohomologically_cofinite(&TorsionComplex::from_module(&m, 0)).unwrap();
        assert!(!v.cofinite);
        assert!(matches!(v.profile.get(0), BassValue::AtLeast(_)));
        let r = hartshorne_compare_n1(&m).unwrap();
        assert!(r.agree && !r.dual_verdict);
    }

    #[test]
    fn local_cohomology_of_the_ring_is_cofinite() {
        let c = RingConfig::new(3, 1, 9).unwrap();
        let a = FgComplex::concentrated(FgPresentation::free(c, 1), 0);
        let tel = telescope_gamma(&a, 4).unwrap();
        let v = is_cohomologically_cofinite(&TorsionComplex::Telescope(tel)).unwrap();
        assert!(v.cofinite, "{:?}", v.profile);
        assert_eq!(v.profile.get(1), BassValue::Finite(1));
        assert_eq!(v.profile.get(0), BassValue::Finite(0));
    }

    #[test]
    fn injective_hull_is_dual_to_the_ring() {
        let c = RingConfig::new(5, 1, 6).unwrap();
        let r = hartshorne_compare_n1(&injective_hull(c, 5).unwrap()).unwrap();
        assert!(r.agree && r.dual_verdict);
        assert_eq!(r.dual.unwrap().rank(), 1);
    }
}
