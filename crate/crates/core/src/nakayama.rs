//! Completeness certificates, generators of top cohomology of adically free
//! complexes, the top-degree Künneth isomorphism and conservativity probes.

use serde::Serialize;

use crate::base::{Matrix, RingConfig, SeriesMatrix, TruncatedSeries};
use crate::complex::{tensor_complex, LevelComplex};
use crate::error::{AdicError, Result};
use crate::fgcomplex::{FgComplex, TowerComplex};
use crate::koszul::derived_tensor_a0;
use crate::level::tensor_level;
use crate::resolve::{resolve_complex, FreeResolution};
use crate::tower::{free_truncation, IndexSet};

/// A bounded complex whose terms are `F_dec(Z_i, Â)`; countable index sets are
/// materialized through a window.
#[derive(Clone, Debug)]
pub struct AdicFreeComplex {
    pub complex: FgComplex,
    pub index: Vec<IndexSet>,
}

impl AdicFreeComplex {
    pub fn from_free(complex: FgComplex) -> Result<Self> {
        if !complex.has_free_terms() {
            return Err(AdicError::Precondition("terms must be free".into()));
        }
        let index = complex.degrees().map(|i| IndexSet::Finite(complex.rank(i))).collect();
        Ok(Self { complex, index })
    }

    pub fn windowed(config: RingConfig, lo: i32, diffs: Vec<SeriesMatrix>, index: Vec<IndexSet>) -> Result<Self> {
        let ranks = index.iter().map(IndexSet::materialized).collect();
        let complex = FgComplex::free(config, lo, diffs, ranks)?;
        Ok(Self { complex, index })
    }

    pub fn config(&self) -> RingConfig {
        self.complex.config()
    }

    pub fn has_window(&self) -> bool {
        self.index.iter().any(|i| !i.is_finite())
    }

    pub fn realize(&self, k: usize) -> Result<LevelComplex> {
        Ok(self.complex.realize(k)?.complex)
    }
}

/// `d(δ_i) = δ_i − t·δ_{i+1}` from `F_dec(ℕ, Â)` in degree −1 to degree 0, one variable.
pub fn example_complex(config: RingConfig, window: usize) -> Result<AdicFreeComplex> {
    if config.nvars() != 1 {
        return Err(AdicError::Precondition("the example lives over one variable".into()));
    }
    let t = TruncatedSeries::var(config, 0);
    let d = SeriesMatrix::from_fn(config, window + 1, window, |r, c| {
        if r == c {
            TruncatedSeries::one(config)
        } else if r == c + 1 {
            t.neg()
        } else {
            TruncatedSeries::zero(config)
        }
    });
    AdicFreeComplex::windowed(config, -1, vec![d], vec![IndexSet::Countable { window }, IndexSet::Countable { window: window + 1 }])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CompletenessVerdict {
    AdicallyFreeTerms,
    AdicallyProjectiveTerms,
    CompleteCohomology,
    FgCohomology,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletenessCertificate {
    pub verdict: CompletenessVerdict,
    pub evidence: Vec<String>,
}

/// What a completeness certificate can inspect.
#[derive(Clone, Copy, Debug)]
pub enum ComplexInput<'a> {
    AdicFree(&'a AdicFreeComplex),
    Fg(&'a FgComplex),
    Towers(&'a TowerComplex),
    Level(&'a LevelComplex),
}

pub fn completeness_certificate(input: ComplexInput<'_>) -> CompletenessCertificate {
    match input {
        ComplexInput::AdicFree(c) => CompletenessCertificate {
            verdict: CompletenessVerdict::AdicallyFreeTerms,
            evidence: c.index.iter().zip(c.complex.degrees()).map(|(ix, i)| format!("degree {i}: decaying functions on {ix:?}")).collect(),
        },
        ComplexInput::Fg(c) if c.has_free_terms() => CompletenessCertificate {
            verdict: CompletenessVerdict::AdicallyFreeTerms,
            evidence: c.degrees().map(|i| format!("degree {i}: free of rank {}", c.rank(i))).collect(),
        },
        ComplexInput::Fg(c) => {
            let mut evidence: Vec<String> = c.degrees().map(|i| format!("degree {i}: presented by {} generators", c.rank(i))).collect();
            if let Ok(p) = c.stable_profile() {
                evidence.push(format!("stable cohomology dims {:?} at reading level {}", p.profile.dims, p.reading));
            }
            CompletenessCertificate { verdict: CompletenessVerdict::FgCohomology, evidence }
        }
        ComplexInput::Towers(t) => {
            let top = &t.levels[t.precision()];
            let degrees: Vec<i32> = top.degrees().collect();
            let free = t.levels.iter().all(|l| l.terms().iter().all(|m| m.is_free()));
            if free {
                return CompletenessCertificate {
                    verdict: CompletenessVerdict::AdicallyProjectiveTerms,
                    evidence: vec![format!("every term is free at levels 0..={}", t.precision())],
                };
            }
            let checks: Vec<(i32, bool)> = degrees.iter().map(|&i| (i, t.cohomology_is_tower(i).iter().all(|&b| b))).collect();
            if checks.iter().all(|c| c.1) {
                CompletenessCertificate {
                    verdict: CompletenessVerdict::CompleteCohomology,
                    evidence: checks.iter().map(|(i, _)| format!("H^{i} forms a tower at levels 0..={}", t.precision())).collect(),
                }
            } else {
                let bad: Vec<i32> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
                CompletenessCertificate { verdict: CompletenessVerdict::Unknown, evidence: vec![format!("cohomology fails the tower test in degrees {bad:?}")] }
            }
        }
        ComplexInput::Level(c) => CompletenessCertificate {
            verdict: CompletenessVerdict::Unknown,
            evidence: vec![format!("a single level-{} complex carries no tower data", c.level())],
        },
    }
}

/// A free complex quasi-isomorphic to `M` and its completion.
#[derive(Clone, Debug)]
pub struct FreeCompletion {
    pub resolution: FreeResolution,
    pub completed: TowerComplex,
    /// `sup` of the free complex equals `sup` of the stable cohomology of `M`.
    pub sup_matches: bool,
    pub quasi_iso: bool,
    /// Level `k` of the completion is the level-`k` realization of the free complex.
    pub tau_levelwise: Vec<bool>,
}

pub fn free_to_complete(m: &FgComplex) -> Result<FreeCompletion> {
    let resolution = resolve_complex(m, m.lo() - m.config().nvars() as i32 - 1)?;
    let q = &resolution.complex;
    let completed = q.complete()?;
    let tau_levelwise = (0..=m.config().precision()).map(|k| q.realize(k).map(|r| r.complex == completed.levels[k])).collect::<Result<_>>()?;
    let sup_h = if m.is_empty() { None } else { m.stable_profile()?.profile.dims.iter().filter(|d| d.1 > 0).map(|d| d.0).max() };
    let sup_q = q.degrees().filter(|&i| q.rank(i) > 0).max();
    let quasi_iso = resolution.is_quasi_iso()?;
    Ok(FreeCompletion { sup_matches: sup_h == sup_q, quasi_iso, tau_levelwise, completed, resolution })
}

/// Finite generators of `H^{i₀}(P)` lifted from a basis of `L₀ = H^{i₀}(A₀ ⊗ P)`.
#[derive(Clone, Debug)]
pub struct NakayamaGenerators {
    pub degree: i32,
    pub l0_dim: usize,
    /// Cycles at the top level, one column per generator.
    pub generators: Matrix,
    /// Generation of the (stable) cycles modulo boundaries at each level `0..=N`.
    pub generates: Vec<bool>,
    /// Some term is a window of a countable index set.
    pub window_dependent: bool,
}

impl NakayamaGenerators {
    pub fn verified(&self) -> bool {
        self.generates.iter().all(|&b| b)
    }
}

pub fn nakayama_generators(p: &AdicFreeComplex, i0: i32) -> Result<NakayamaGenerators> {
    let config = p.config();
    let c = &p.complex;
    let n = config.precision();
    let l0 = p.realize(0)?;
    if let Some(i) = (i0 + 1..=c.hi()).find(|&i| l0.cohomology_dim(i) != 0) {
        return Err(AdicError::Precondition(format!("sup mismatch: H^{i}(A₀ ⊗ P) is nonzero above degree {i0}")));
    }
    let h0 = l0.cohomology(i0);
    let top = p.realize(n)?;
    let r = c.rank(i0);
    let z_top = top.diff(i0).kernel();
    let trunc0 = free_truncation(config, r, n, 0);
    let system = trunc0.mul(&z_top).hstack(&l0.diff(i0 - 1));
    let y = system.solve(&h0.reps).ok_or_else(|| AdicError::Invariant("level-0 classes do not lift to cycles".into()))?;
    let generators = z_top.mul(&y.block(0, 0, z_top.cols(), y.cols()));
    let mut generates = Vec::new();
    for k in 0..=n {
        let lk = p.realize(k)?;
        let t = free_truncation(config, r, n, k);
        let term = lk.term_or_zero(i0);
        let span = term.closure(&t.mul(&generators)).hstack(&lk.diff(i0 - 1));
        generates.push(span.spans(&t.mul(&z_top)));
    }
    Ok(NakayamaGenerators { degree: i0, l0_dim: h0.module.dim(), generators, generates, window_dependent: p.has_window() })
}

/// Windowed version: `L₀` must not grow when the window grows by one.
pub fn nakayama_generators_windowed(build: impl Fn(usize) -> Result<AdicFreeComplex>, window: usize, i0: i32) -> Result<NakayamaGenerators> {
    let a = build(window)?.realize(0)?.cohomology_dim(i0);
    let b = build(window + 1)?.realize(0)?.cohomology_dim(i0);
    if b > a {
        return Err(AdicError::NotFinitelyGenerated(window));
    }
    nakayama_generators(&build(window)?, i0)
}

/// The map `H^i(M) ⊗ H^j(N) → H^{i+j}(M ⊗ N)`, `[m] ⊗ [n] ↦ [m ⊗ n]`, in the top degrees.
#[derive(Clone, Debug)]
pub struct KunnethWitness {
    /// Matrix from `H^i(M) ⊗_A H^j(N)` to `H^{i+j}(M ⊗ N)`.
    pub map: Matrix,
    pub source_dim: usize,
    pub target_dim: usize,
    /// The bilinear map factors through the tensor product over `A`.
    pub balanced: bool,
    pub linear: bool,
    pub invertible: bool,
}

impl KunnethWitness {
    pub fn is_isomorphism(&self) -> bool {
        self.balanced && self.linear && self.invertible
    }
}

pub fn kunneth_top(m: &LevelComplex, n: &LevelComplex, i: i32, j: i32) -> Result<KunnethWitness> {
    let free = |c: &LevelComplex| c.terms().iter().all(|t| t.is_free());
    if !free(m) || !free(n) {
        return Err(AdicError::Precondition("terms must be free over the level ring".into()));
    }
    if (i + 1..=m.hi()).any(|d| m.cohomology_dim(d) != 0) || (j + 1..=n.hi()).any(|d| n.cohomology_dim(d) != 0) {
        return Err(AdicError::Precondition("degrees must be at least the cohomological sup".into()));
    }
    let (hm, hn) = (m.cohomology(i), n.cohomology(j));
    let t = tensor_complex(m, n)?;
    let ht = t.complex.cohomology(i + j);
    let tens = tensor_level(&hm.module, &hn.module)?;
    let field = m.field();
    let (a, b) = (hm.module.dim(), hn.module.dim());
    let mut cols = Vec::with_capacity(a * b);
    for x in 0..a {
        for y in 0..b {
            let v = t.element(i, &hm.reps.column(x), j, &hn.reps.column(y));
            cols.push(ht.classify.mul_vec(&v));
        }
    }
    let phi = Matrix::from_columns(field, ht.module.dim(), &cols);
    let psi = phi.mul(&tens.lift);
    let balanced = psi.mul(&tens.proj) == phi;
    let linear = tens.module.is_linear_map(&ht.module, &psi);
    let invertible = psi.is_square() && psi.is_invertible();
    Ok(KunnethWitness { source_dim: tens.module.dim(), target_dim: ht.module.dim(), map: psi, balanced, linear, invertible })
}

/// Evidence that `A₀ ⊗^L M ≠ 0` in the top degree of a nonzero `M`.
#[derive(Clone, Debug, Serialize)]
pub struct ConservativityRecord {
    pub sup: i32,
    /// `dim H^sup(A₀ ⊗^L M)`.
    pub tensor_dim: usize,
    /// Minimal generator count of `H^sup(M)`, i.e. `dim A₀ ⊗ H^sup(M)`.
    pub top_generators: usize,
    /// A nonzero class of `H^sup(A₀ ⊗^L M)` at the reading level.
    pub witness: Vec<u32>,
    pub precision_stable: bool,
}

pub fn conservativity_probe(m: &FgComplex) -> Result<ConservativityRecord> {
    let prof = m.stable_profile()?;
    let Some(sup) = prof.profile.dims.iter().filter(|d| d.1 > 0).map(|d| d.0).max() else {
        return Err(AdicError::Precondition("the complex has zero cohomology".into()));
    };
    let top_generators = prof.get(sup).map_or(0, |h| h.module.num_generators());
    let d = derived_tensor_a0(m)?;
    let dp = d.stable_profile_at(prof.reading.min(d.reading_level()?))?;
    let h = dp.get(sup);
    let tensor_dim = h.map_or(0, |h| h.dim());
    let witness = h.filter(|h| h.dim() > 0).map_or(Vec::new(), |h| h.reps.column(0));
    Ok(ConservativityRecord { sup, tensor_dim, top_generators, witness, precision_stable: prof.precision_stable() && dp.precision_stable() })
}

/// Level-wise diagnostics of the windowed example.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub window: usize,
    pub levels: usize,
    /// `d` is injective at each level.
    pub injective: Vec<bool>,
    pub certificate: CompletenessCertificate,
    /// `dim H⁰` of the window at each level.
    pub h0_dims: Vec<usize>,
    /// `δ₀ ≡ t^k δ_k` modulo the image of `d` at level `k`.
    pub divisible: Vec<bool>,
    pub summary: String,
}

pub fn example_diagnostic(config: RingConfig, window: usize) -> Result<ExampleReport> {
    let levels = config.precision();
    let ex = example_complex(config, window)?;
    let mut injective = Vec::new();
    let mut h0_dims = Vec::new();
    let mut divisible = Vec::new();
    for k in 0..=levels {
        let c = ex.realize(k)?;
        let d = c.diff(-1);
        injective.push(d.kernel().cols() == 0);
        h0_dims.push(c.cohomology_dim(0));
        let dk = config.level_dim(k);
        let mut v = vec![0u32; (window + 1) * dk];
        v[0] = 1;
        if k <= window {
            let tk = TruncatedSeries::var(config, 0).pow(k).to_dense(k);
            for (s, &x) in tk.iter().enumerate() {
                v[k * dk + s] = config.field().sub(v[k * dk + s], x);
            }
            divisible.push(d.spans(&Matrix::from_columns(config.field(), v.len(), &[v])));
        } else {
            divisible.push(false);
        }
    }
    let certificate = completeness_certificate(ComplexInput::AdicFree(&ex));
    let ok = injective.iter().all(|&b| b) && certificate.verdict == CompletenessVerdict::AdicallyFreeTerms;
    let summary = if ok {
        format!(
            "consistent with the known example at levels 0..={levels} (window {window}): d is injective and the terms are adically free; \
             non-completeness of H⁰ is not verifiable at finite precision and is not certified"
        )
    } else {
        format!("not consistent with the known example at levels 0..={levels} (window {window})")
    };
    Ok(ExampleReport { window, levels, injective, certificate, h0_dims, divisible, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::koszul_vars;
    use crate::tower::FgPresentation;

    #[test]
    fn multiplication_by_x_has_one_generator() {
        let c = RingConfig::new(5, 1, 5).unwrap();
        let x = TruncatedSeries::var(c, 0);
        let p = AdicFreeComplex::from_free(FgComplex::free(c, -1, vec![SeriesMatrix::from_fn(c, 1, 1, |_, _| x.clone())], vec![1, 1]).unwrap()).unwrap();
        let g = nakayama_generators(&p, 0).unwrap();
        assert_eq!(g.l0_dim, 1);
        assert_eq!(g.generators.cols(), 1);
        assert!(g.verified());
    }

    #[test]
    fn vanishing_top_cohomology_gives_no_generators() {
        let c = RingConfig::new(5, 1, 4).unwrap();
        let one = SeriesMatrix::identity(c, 1);
        let p = AdicFreeComplex::from_free(FgComplex::free(c, -1, vec![one], vec![1, 1]).unwrap()).unwrap();
        let g = nakayama_generators(&p, 0).unwrap();
        assert_eq!(g.generators.cols(), 0);
        assert!(g.verified());
    }

    #[test]
    fn residue_field_completes_to_koszul() {
        let c = RingConfig::new(3, 2, 5).unwrap();
        let m = FgComplex::concentrated(FgPresentation::residue_field(c), 0);
        let f = free_to_complete(&m).unwrap();
        assert!(f.sup_matches && f.quasi_iso && f.tau_levelwise.iter().all(|&b| b));
        let k = koszul_vars(c).complex;
        assert!(k.degrees().all(|i| k.rank(i) == f.resolution.complex.rank(i)));
    }

    #[test]
    fn koszul_complex_resolves_minimally() {
        let c = RingConfig::new(3, 2, 5).unwrap();
        let k = koszul_vars(c).complex;
        let f = free_to_complete(&k).unwrap();
        assert!(f.sup_matches && f.quasi_iso);
        assert_eq!((f.resolution.complex.lo(), f.resolution.complex.hi()), (-2, 0));
    }

    #[test]
    fn certificates_by_term_kind() {
        let c = RingConfig::new(5, 1, 3).unwrap();
        let ex = example_complex(c, 3).unwrap();
        assert_eq!(completeness_certificate(ComplexInput::AdicFree(&ex)).verdict, CompletenessVerdict::AdicallyFreeTerms);
        let fg = FgComplex::concentrated(FgPresentation::residue_field(c), 0);
        assert_eq!(completeness_certificate(ComplexInput::Fg(&fg)).verdict, CompletenessVerdict::FgCohomology);
        assert_eq!(completeness_certificate(ComplexInput::Towers(&fg.complete().unwrap())).verdict, CompletenessVerdict::CompleteCohomology);
        let lvl = fg.realize(2).unwrap().complex;
        assert_eq!(completeness_certificate(ComplexInput::Level(&lvl)).verdict, CompletenessVerdict::Unknown);
    }

    #[test]
    fn probe_on_cyclic_module() {
        let c = RingConfig::new(5, 1, 6).unwrap();
        let x3 = TruncatedSeries::var(c, 0).pow(3);
        let m = FgComplex::concentrated(FgPresentation::cyclic(c, &[x3]), 0);
        let r = conservativity_probe(&m).unwrap();
        assert_eq!((r.sup, r.tensor_dim, r.top_generators), (0, 1, 1));
        assert!(!r.witness.is_empty());
    }

    #[test]
    fn example_diagnostic_report() {
        let c = RingConfig::new(5, 1, 6).unwrap();
        let r = example_diagnostic(c, 8).unwrap();
        assert!(r.injective.iter().all(|&b| b));
        assert!(r.divisible.iter().all(|&b| b));
        assert!(r.summary.starts_with("consistent"));
    }
}
