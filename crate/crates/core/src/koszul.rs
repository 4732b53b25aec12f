//! Koszul complexes and the derived functors against the residue field.
//!
//! `K = K(Â; a₁..a_n)` sits in degrees `−n..0`; the basis of `K^{−j}` is the
//! `j`-subsets of `{0..n−1}` in lexicographic order and
//! `d(e_I) = Σ_s (−1)^s a_{i_s} e_{I∖i_s}`. For the variables this is a free
//! resolution of `A₀`, so `K ⊗ M` computes `A₀ ⊗^L M` and `Hom(K, M)` computes
//! `RHom(A₀, M)`.
//!
//! Hom complexes use `(df) = d∘f − (−1)^{|f|} f∘d`.

use crate::base::{binomial, Matrix, RingConfig, SeriesMatrix, TruncatedSeries};
use crate::complex::{ChainMap, LevelComplex};
use crate::error::{AdicError, Result};
use crate::fgcomplex::{FgChainMap, FgComplex, StableCohomology};
use crate::level::LevelModule;
use crate::tower::FgPresentation;

/// `j`-subsets of `{0..n−1}` in lexicographic order.
pub fn subsets(n: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, j, &mut Vec::new(), &mut out);
    out
}

fn subset_index(n: usize, s: &[usize]) -> usize {
    subsets(n, s.len()).iter().position(|t| t == s).expect("valid subset")
}

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub sequence: Vec<TruncatedSeries>,
    pub complex: FgComplex,
}

/// `d^{−j}: K^{−j} → K^{−j+1}` as a series matrix.
fn koszul_differential(config: RingConfig, seq: &[TruncatedSeries], j: usize) -> SeriesMatrix {
    let n = seq.len();
    let src = subsets(n, j);
    let tgt = subsets(n, j - 1);
    let mut d = SeriesMatrix::zeros(config, tgt.len(), src.len());
    for (c, s) in src.iter().enumerate() {
        for (pos, &i) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(pos);
            let r = tgt.iter().position(|t| *t == rest).expect("subset");
            let a = if pos % 2 == 0 { seq[i].clone() } else { seq[i].neg() };
            d.set(r, c, a);
        }
    }
    d
}

/// The Koszul complex of a sequence in `𝔞`.
pub fn koszul(seq: &[TruncatedSeries]) -> Result<KoszulComplex> {
    let Some(first) = seq.first() else {
        return Err(AdicError::Precondition("the sequence must be nonempty".into()));
    };
    let config = first.config();
    if let Some(i) = seq.iter().position(TruncatedSeries::is_unit) {
        return Err(AdicError::UnitGenerator(i));
    }
    let n = seq.len();
    let ranks: Vec<usize> = (0..=n).rev().map(|j| binomial(n, j)).collect();
    let diffs = (1..=n).rev().map(|j| koszul_differential(config, seq, j)).collect();
    let complex = FgComplex::free(config, -(n as i32), diffs, ranks)?;
    Ok(KoszulComplex { sequence: seq.to_vec(), complex })
}

/// The Koszul complex on the variables, a free resolution of `A₀`.
pub fn koszul_vars(config: RingConfig) -> KoszulComplex {
    let vars: Vec<_> = (0..config.nvars()).map(|i| TruncatedSeries::var(config, i)).collect();
    koszul(&vars).expect("variables are not units")
}

/// Koszul complex of `(x₁^t..x_n^t)`.
pub fn koszul_powers(config: RingConfig, t: usize) -> KoszulComplex {
    let seq: Vec<_> = (0..config.nvars()).map(|i| TruncatedSeries::var(config, i).pow(t)).collect();
    koszul(&seq).expect("positive powers of variables are not units")
}

/// `K^∨ = Hom(K, Â)` with an explicit chain isomorphism `K^∨ → K[−n]`.
#[derive(Clone, Debug)]
pub struct KoszulDual {
    pub dual: FgComplex,
    pub iso: FgChainMap,
    /// Per degree `j`, the global sign multiplying `sgn(I, I^c)`.
    pub degree_signs: Vec<i32>,
}

/// Sign of the shuffle `(I, I^c)`.
fn shuffle_sign(i: &[usize], comp: &[usize]) -> i32 {
    let inversions: usize = i.iter().map(|&a| comp.iter().filter(|&&b| b < a).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn koszul_dual(k: &KoszulComplex) -> Result<KoszulDual> {
    let c = &k.complex;
    let config = c.config();
    let n = k.sequence.len();
    let dual = hom_free(c, &FgComplex::concentrated(FgPresentation::free(config, 1), 0))?;
    let target = c.shift(-(n as i32));
    let perm = |j: usize, sign: i32| -> SeriesMatrix {
        let src = subsets(n, j);
        let mut m = SeriesMatrix::zeros(config, binomial(n, n - j), src.len());
        for (col, s) in src.iter().enumerate() {
            let comp: Vec<usize> = (0..n).filter(|x| !s.contains(x)).collect();
            let row = subset_index(n, &comp);
            let e = shuffle_sign(s, &comp) * sign;
            m.set(row, col, TruncatedSeries::constant(config, config.field().from_i64(e as i64)));
        }
        m
    };
    // Fix the per-degree signs one at a time so that the square in each degree commutes.
    let mut signs = vec![1i32];
    for j in 0..n {
        let lhs = |s: i32| target.diff(j as i32).mul(&perm(j, signs[j])).sub(&perm(j + 1, s).mul(&dual.diff(j as i32)));
        let s = if lhs(1).is_zero() {
            1
        } else if lhs(-1).is_zero() {
            -1
        } else {
            return Err(AdicError::Invariant(format!("no sign makes the duality square commute in degree {j}")));
        };
        signs.push(s);
    }
    let iso = FgChainMap::new(dual.clone(), target, |i| {
        if i < 0 || i > n as i32 {
            SeriesMatrix::zeros(config, 0, 0)
        } else {
            perm(i as usize, signs[i as usize])
        }
    })?;
    Ok(KoszulDual { dual, iso, degree_signs: signs })
}

/// `F ⊗ M` for a complex `F` of free modules: the `(a, b)` block is `(M^b)^{rank F^a}`.
pub fn tensor_free(f: &FgComplex, m: &FgComplex) -> Result<FgComplex> {
    if !f.has_free_terms() {
        return Err(AdicError::Unsupported("the left factor must have free terms".into()));
    }
    let config = f.config();
    if f.is_empty() || m.terms().is_empty() {
        return Ok(FgComplex::zero(config));
    }
    let (lo, hi) = (f.lo() + m.lo(), f.hi() + m.hi());
    let blocks = |t: i32| -> Vec<(i32, i32)> { f.degrees().filter_map(|a| m.degrees().contains(&(t - a)).then_some((a, t - a))).collect() };
    let mut terms = Vec::new();
    for t in lo..=hi {
        let mut pres = FgPresentation::free(config, 0);
        for (a, b) in blocks(t) {
            let rb = m.term_or_zero(b).relations().identity_kron(f.rank(a));
            pres = pres.direct_sum(&FgPresentation::new(rb));
        }
        terms.push(pres);
    }
    let mut diffs = Vec::new();
    for t in lo..hi {
        let src = blocks(t);
        let tgt = blocks(t + 1);
        let rows: usize = tgt.iter().map(|&(a, b)| f.rank(a) * m.rank(b)).sum();
        let cols: usize = src.iter().map(|&(a, b)| f.rank(a) * m.rank(b)).sum();
        let mut d = SeriesMatrix::zeros(config, rows, cols);
        let mut col_off = 0;
        for &(a, b) in &src {
            let mut row_off = 0;
            for &(a2, b2) in &tgt {
                if a2 == a + 1 && b2 == b {
                    d.set_block(row_off, col_off, &f.diff(a).kron_identity(m.rank(b)));
                } else if a2 == a && b2 == b + 1 {
                    let piece = m.diff(b).identity_kron(f.rank(a));
                    d.set_block(row_off, col_off, &if a.rem_euclid(2) == 1 { piece.neg() } else { piece });
                }
                row_off += f.rank(a2) * m.rank(b2);
            }
            col_off += f.rank(a) * m.rank(b);
        }
        diffs.push(d);
    }
    FgComplex::new(lo, terms, diffs)
}

/// `Hom(F, M)` for a complex `F` of free modules: the `(a, b)` block is `(M^b)^{rank F^a}` in degree `b − a`.
pub fn hom_free(f: &FgComplex, m: &FgComplex) -> Result<FgComplex> {
    if !f.has_free_terms() {
        return Err(AdicError::Unsupported("the source must have free terms".into()));
    }
    let config = f.config();
    if f.is_empty() || m.terms().is_empty() {
        return Ok(FgComplex::zero(config));
    }
    let (lo, hi) = (m.lo() - f.hi(), m.hi() - f.lo());
    let blocks = |t: i32| -> Vec<(i32, i32)> { f.degrees().rev().filter_map(|a| m.degrees().contains(&(t + a)).then_some((a, t + a))).collect() };
    let mut terms = Vec::new();
    for t in lo..=hi {
        let mut pres = FgPresentation::free(config, 0);
        for (a, b) in blocks(t) {
            pres = pres.direct_sum(&FgPresentation::new(m.term_or_zero(b).relations().identity_kron(f.rank(a))));
        }
        terms.push(pres);
    }
    let mut diffs = Vec::new();
    for t in lo..hi {
        let src = blocks(t);
        let tgt = blocks(t + 1);
        let rows: usize = tgt.iter().map(|&(a, b)| f.rank(a) * m.rank(b)).sum();
        let cols: usize = src.iter().map(|&(a, b)| f.rank(a) * m.rank(b)).sum();
        let mut d = SeriesMatrix::zeros(config, rows, cols);
        let mut col_off = 0;
        for &(a, b) in &src {
            let mut row_off = 0;
            for &(a2, b2) in &tgt {
                if a2 == a && b2 == b + 1 {
                    d.set_block(row_off, col_off, &m.diff(b).identity_kron(f.rank(a)));
                } else if a2 == a - 1 && b2 == b {
                    // −(−1)^t f∘d_F, with f∘d_F given by the transpose of d_F.
                    let piece = f.diff(a - 1).transpose().kron_identity(m.rank(b));
                    d.set_block(row_off, col_off, &if t.rem_euclid(2) == 0 { piece.neg() } else { piece });
                }
                row_off += f.rank(a2) * m.rank(b2);
            }
            col_off += f.rank(a) * m.rank(b);
        }
        diffs.push(d);
    }
    FgComplex::new(lo, terms, diffs)
}

/// `A₀ ⊗^L M`, computed as `K ⊗ M`.
pub fn derived_tensor_a0(m: &FgComplex) -> Result<FgComplex> {
    tensor_free(&koszul_vars(m.config()).complex, m)
}

/// `RHom(A₀, M)`, computed as `Hom(K, M)`.
pub fn rhom_a0(m: &FgComplex) -> Result<FgComplex> {
    hom_free(&koszul_vars(m.config()).complex, m)
}

/// `Ext^j(A₀, M)` as stable cohomology of `Hom(K, M)`.
pub fn ext_a0(m: &FgComplex, j: i32) -> Result<StableCohomology> {
    let h = rhom_a0(m)?;
    let prof = h.stable_profile()?;
    Ok(prof.get(j).cloned().unwrap_or_else(|| zero_stable(h.config(), j, prof.top, prof.reading)))
}

fn zero_stable(config: RingConfig, degree: i32, top: usize, reading: usize) -> StableCohomology {
    let f = config.field();
    StableCohomology {
        degree,
        top,
        reading,
        module: LevelModule::zero(config, reading),
        reps: Matrix::zeros(f, 0, 0),
        classify: Matrix::zeros(f, 0, 0),
        precision_stable: true,
    }
}

/// Level version of `Hom(F, C)` for a free complex `F` given by series differentials.
fn hom_free_level(f: &FgComplex, c: &LevelComplex) -> Result<LevelComplex> {
    let config = c.config();
    let field = c.field();
    if f.is_empty() || c.terms().is_empty() {
        return Ok(LevelComplex::zero(config, c.level()));
    }
    let (lo, hi) = (c.lo() - f.hi(), c.hi() - f.lo());
    let blocks = |t: i32| -> Vec<(i32, i32)> { f.degrees().rev().filter_map(|a| c.degrees().contains(&(t + a)).then_some((a, t + a))).collect() };
    let mut terms = Vec::new();
    for t in lo..=hi {
        let parts: Vec<LevelModule> = blocks(t).iter().flat_map(|&(a, b)| vec![c.term_or_zero(b); f.rank(a)]).collect();
        terms.push(LevelModule::direct_sum_all(config, c.level(), &parts)?);
    }
    let mut diffs = Vec::new();
    for t in lo..hi {
        let src = blocks(t);
        let tgt = blocks(t + 1);
        let rows = terms[(t + 1 - lo) as usize].dim();
        let cols = terms[(t - lo) as usize].dim();
        let mut d = Matrix::zeros(field, rows, cols);
        let mut col_off = 0;
        for &(a, b) in &src {
            let mut row_off = 0;
            let db = c.dim(b);
            for &(a2, b2) in &tgt {
                if a2 == a && b2 == b + 1 {
                    let piece = Matrix::block_diag(field, &vec![c.diff(b); f.rank(a)]);
                    d.set_block(row_off, col_off, &piece);
                } else if a2 == a - 1 && b2 == b {
                    let df = f.diff(a - 1);
                    let term = c.term_or_zero(b);
                    let neg = t.rem_euclid(2) == 0;
                    for jj in 0..f.rank(a - 1) {
                        for ii in 0..f.rank(a) {
                            let e = df.get(ii, jj);
                            if e.is_zero() {
                                continue;
                            }
                            let act = term.series_action(e);
                            let act = if neg { act.neg() } else { act };
                            d.set_block(row_off + jj * db, col_off + ii * db, &act);
                        }
                    }
                }
                row_off += f.rank(a2) * c.dim(b2);
            }
            col_off += f.rank(a) * db;
        }
        diffs.push(d);
    }
    LevelComplex::new(lo, terms, diffs)
}

/// Level version of `F ⊗ C` for a free complex `F`.
fn tensor_free_level(f: &FgComplex, c: &LevelComplex) -> Result<LevelComplex> {
    let config = c.config();
    let field = c.field();
    if f.is_empty() || c.terms().is_empty() {
        return Ok(LevelComplex::zero(config, c.level()));
    }
    let (lo, hi) = (f.lo() + c.lo(), f.hi() + c.hi());
    let blocks = |t: i32| -> Vec<(i32, i32)> { f.degrees().filter_map(|a| c.degrees().contains(&(t - a)).then_some((a, t - a))).collect() };
    let mut terms = Vec::new();
    for t in lo..=hi {
        let parts: Vec<LevelModule> = blocks(t).iter().flat_map(|&(a, b)| vec![c.term_or_zero(b); f.rank(a)]).collect();
        terms.push(LevelModule::direct_sum_all(config, c.level(), &parts)?);
    }
    let mut diffs = Vec::new();
    for t in lo..hi {
        let src = blocks(t);
        let tgt = blocks(t + 1);
        let mut d = Matrix::zeros(field, terms[(t + 1 - lo) as usize].dim(), terms[(t - lo) as usize].dim());
        let mut col_off = 0;
        for &(a, b) in &src {
            let mut row_off = 0;
            let db = c.dim(b);
            for &(a2, b2) in &tgt {
                if a2 == a + 1 && b2 == b {
                    let df = f.diff(a);
                    let term = c.term_or_zero(b);
                    for r in 0..f.rank(a + 1) {
                        for s in 0..f.rank(a) {
                            let e = df.get(r, s);
                            if !e.is_zero() {
                                d.set_block(row_off + r * db, col_off + s * db, &term.series_action(e));
                            }
                        }
                    }
                } else if a2 == a && b2 == b + 1 {
                    let piece = Matrix::block_diag(field, &vec![c.diff(b); f.rank(a)]);
                    d.set_block(row_off, col_off, &if a.rem_euclid(2) == 1 { piece.neg() } else { piece });
                }
                row_off += f.rank(a2) * c.dim(b2);
            }
            col_off += f.rank(a) * db;
        }
        diffs.push(d);
    }
    LevelComplex::new(lo, terms, diffs)
}

/// `A₀ ⊗^L C` for a complex of level modules, which are `A`-modules killed by a power of `𝔞`.
pub fn derived_tensor_a0_level(c: &LevelComplex) -> Result<LevelComplex> {
    tensor_free_level(&koszul_vars(c.config()).complex, c)
}

/// `RHom(A₀, C)` for a complex of level modules.
pub fn rhom_a0_level(c: &LevelComplex) -> Result<LevelComplex> {
    hom_free_level(&koszul_vars(c.config()).complex, c)
}

/// The map `Hom(K, S) → Hom(K, T)` induced by a chain map `S → T`.
pub fn rhom_a0_level_map(f: &ChainMap, src: &LevelComplex, tgt: &LevelComplex) -> Result<ChainMap> {
    let k = koszul_vars(f.source.config()).complex;
    let field = f.source.field();
    let lo = f.source.lo().min(f.target.lo());
    let hi = f.source.hi().max(f.target.hi());
    // Degrees absent from one side contribute zero-width blocks, so one layout serves both.
    ChainMap::new(src.clone(), tgt.clone(), |t| {
        let blocks: Vec<Matrix> =
            k.degrees().rev().filter(|a| (lo..=hi).contains(&(t + a))).map(|a| Matrix::block_diag(field, &vec![f.component(t + a); k.rank(a)])).collect();
        Matrix::block_diag(field, &blocks)
    })
}

/// The map `Hom(F, S) → Hom(F, T)` induced by `g: S → T`, for the complexes built by [`hom_free`].
pub fn hom_free_map(f: &FgComplex, g: &FgChainMap, src: &FgComplex, tgt: &FgComplex) -> Result<FgChainMap> {
    let config = f.config();
    let lo = g.source.lo().min(g.target.lo());
    let hi = g.source.hi().max(g.target.hi());
    FgChainMap::new(src.clone(), tgt.clone(), |t| {
        let blocks: Vec<SeriesMatrix> = f.degrees().rev().filter(|a| (lo..=hi).contains(&(t + a))).map(|a| g.component(t + a).identity_kron(f.rank(a))).collect();
        SeriesMatrix::block_diag(config, &blocks)
    })
}

/// The chain map `K(x^{t+1}) → K(x^t)`, `e_I ↦ (Π_{i∈I} x_i) e_I`.
pub fn koszul_power_transition(config: RingConfig, t: usize) -> Result<FgChainMap> {
    let n = config.nvars();
    let src = koszul_powers(config, t + 1).complex;
    let tgt = koszul_powers(config, t).complex;
    FgChainMap::new(src, tgt, |deg| {
        let j = (-deg) as usize;
        if deg > 0 || j > n {
            return SeriesMatrix::zeros(config, 0, 0);
        }
        let subs = subsets(n, j);
        let mut m = SeriesMatrix::zeros(config, subs.len(), subs.len());
        for (c, s) in subs.iter().enumerate() {
            let mut e = TruncatedSeries::one(config);
            for &i in s {
                e = e.mul(&TruncatedSeries::var(config, i));
            }
            m.set(c, c, e);
        }
        m
    })
}

/// The directed system `Hom(K(x^t), M)`, `t = 1..=stages`, whose colimit computes `RΓ_𝔞(M)`.
#[derive(Clone, Debug)]
pub struct IndComplex {
    pub stages: Vec<FgComplex>,
    /// `transitions[s]` maps stage `s` (index `t = s + 1`) to stage `s + 1`.
    pub transitions: Vec<FgChainMap>,
}

/// Per-degree data of the telescope: stage cohomology dimensions and the
/// ranks of the maps from each stage into the last one.
#[derive(Clone, Debug)]
pub struct TelescopeCohomology {
    pub degree: i32,
    pub reading: usize,
    pub stage_dims: Vec<usize>,
    /// Rank of `H(stage s) → H(last stage)`.
    pub ranks_into_top: Vec<usize>,
    /// For `s = 1, 2`: rank of `ker 𝔞^s` of each stage mapped into the last stage.
    pub socle_ranks: Vec<Vec<usize>>,
    /// The socle-filtered ranks agree between the last two compared stages.
    pub stable: bool,
}

pub fn telescope_gamma(m: &FgComplex, stages: usize) -> Result<IndComplex> {
    if stages == 0 {
        return Err(AdicError::Precondition("need at least one stage".into()));
    }
    let config = m.config();
    let mut st = Vec::new();
    for t in 1..=stages {
        st.push(hom_free(&koszul_powers(config, t).complex, m)?);
    }
    let mut transitions = Vec::new();
    for t in 1..stages {
        let c = koszul_power_transition(config, t)?;
        // f ↦ f∘c multiplies the e_I^* component by Π_{i∈I} x_i.
        let (src, tgt) = (st[t - 1].clone(), st[t].clone());
        let n = config.nvars();
        let map = FgChainMap::new(src, tgt, |deg| {
            let mut blocks = Vec::new();
            for a in (-(n as i32)..=0).rev() {
                let b = deg + a;
                if m.degrees().contains(&b) {
                    blocks.push(c.component(a).transpose().kron_identity(m.rank(b)));
                }
            }
            SeriesMatrix::block_diag(config, &blocks)
        })?;
        transitions.push(map);
    }
    Ok(IndComplex { stages: st, transitions })
}

impl IndComplex {
    pub fn config(&self) -> RingConfig {
        self.stages[0].config()
    }

    /// Stage cohomology read at a common level, with ranks of the maps into the last stage.
    pub fn cohomology(&self, reading: usize) -> Result<Vec<TelescopeCohomology>> {
        let config = self.config();
        let top = config.precision();
        let last = self.stages.len() - 1;
        let lo = self.stages.iter().map(FgComplex::lo).min().unwrap_or(0);
        let hi = self.stages.iter().map(FgComplex::hi).max().unwrap_or(-1);
        let profiles: Vec<_> = self.stages.iter().map(|s| s.stable_profile_at(reading)).collect::<Result<_>>()?;
        let realized: Vec<_> = self.stages.iter().map(|s| s.realize(reading)).collect::<Result<_>>()?;
        // Composite chain maps stage s → last stage at the reading level.
        let mut to_top: Vec<Option<ChainMap>> = vec![None; self.stages.len()];
        for s in (0..last).rev() {
            let step = self.transitions[s].realize(reading, &realized[s], &realized[s + 1])?;
            to_top[s] = Some(match &to_top[s + 1] {
                Some(rest) => rest.compose(&step)?,
                None => step,
            });
        }
        let mut out = Vec::new();
        for i in lo..=hi {
            let mut stage_dims = Vec::new();
            let mut ranks = Vec::new();
            let mut socle_ranks = vec![Vec::new(), Vec::new()];
            let h_last = profiles[last].get(i);
            for s in 0..=last {
                let h = profiles[s].get(i);
                let dim = h.map_or(0, StableCohomology::dim);
                stage_dims.push(dim);
                let (Some(h), Some(hl)) = (h, h_last) else {
                    ranks.push(0);
                    socle_ranks[0].push(0);
                    socle_ranks[1].push(0);
                    continue;
                };
                let map = match &to_top[s] {
                    Some(f) => hl.classify.mul(&f.component(i)).mul(&h.reps),
                    None => h.module.identity(),
                };
                ranks.push(map.rank());
                for (e, sr) in socle_ranks.iter_mut().enumerate() {
                    let ker = crate::tower::annihilator_kernel(&h.module, e + 1);
                    sr.push(map.mul(&ker).rank());
                }
            }
            let stable = last >= 2 && socle_ranks.iter().all(|r| r[last - 2] == r[last - 1]);
            out.push(TelescopeCohomology { degree: i, reading, stage_dims, ranks_into_top: ranks, socle_ranks, stable });
        }
        let _ = top;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn unit_generator_rejected() {
        let c = RingConfig::new(5, 2, 3).unwrap();
        let seq = [TruncatedSeries::one(c), TruncatedSeries::var(c, 1)];
        assert_eq!(koszul(&seq).unwrap_err(), AdicError::UnitGenerator(0));
    }

    #[test]
    fn koszul_ranks() {
        let c = RingConfig::new(5, 3, 2).unwrap();
        let k = koszul_vars(c);
        assert_eq!((-3..=0).map(|i| k.complex.rank(i)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn koszul_on_variables_resolves_residue_field() {
        for n in 1..=3 {
            let c = RingConfig::new(3, n, 4).unwrap();
            let prof = koszul_vars(c).complex.stable_profile().unwrap();
            assert!(prof.precision_stable());
            assert_eq!(prof.profile.dim(0), 1);
            for i in -(n as i32)..0 {
                assert_eq!(prof.profile.dim(i), 0, "n={n} degree {i}");
            }
        }
    }

    #[test]
    fn koszul_dual_is_shifted_koszul() {
        for n in 1..=3 {
            let c = RingConfig::new(5, n, 3).unwrap();
            let d = koszul_dual(&koszul_vars(c)).unwrap();
            assert_eq!(d.degree_signs.len(), n + 1);
        }
    }

    #[test]
    fn derived_functors_of_the_ring() {
        let c = RingConfig::new(5, 2, 4).unwrap();
        let a = FgComplex::concentrated(FgPresentation::free(c, 1), 0);
        let t = derived_tensor_a0(&a).unwrap().stable_profile().unwrap();
        assert_eq!(t.profile.dims.iter().map(|d| d.1).sum::<usize>(), 1);
        assert_eq!(t.profile.dim(0), 1);
        let e = ext_a0(&a, 2).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(ext_a0(&a, 1).unwrap().dim(), 0);
    }

    #[test]
    fn level_and_series_tensor_agree_on_residue_field() {
        // A₀ ⊗^L A₀ is the exterior algebra on n generators.
        let c = RingConfig::new(3, 2, 4).unwrap();
        let m = FgComplex::concentrated(FgPresentation::residue_field(c), 0);
        let series = derived_tensor_a0(&m).unwrap().stable_profile().unwrap();
        let level = derived_tensor_a0_level(&LevelComplex::concentrated(LevelModule::free(c, 0, 1), 0)).unwrap();
        for (i, want) in [(-2, 1), (-1, 2), (0, 1)] {
            assert_eq!(series.profile.dim(i), want);
            assert_eq!(level.cohomology_dim(i), want);
        }
        let rhom = rhom_a0_level(&LevelComplex::concentrated(LevelModule::free(c, 0, 1), 0)).unwrap();
        assert_eq!((0..=2).map(|i| rhom.cohomology_dim(i)).collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn telescope_in_one_variable() {
        let c = RingConfig::new(3, 1, 8).unwrap();
        let a = FgComplex::concentrated(FgPresentation::free(c, 1), 0);
        let tel = telescope_gamma(&a, 4).unwrap();
        let h = tel.cohomology(4).unwrap();
        let h1 = h.iter().find(|x| x.degree == 1).unwrap();
        assert_eq!(h1.stage_dims, vec![1, 2, 3, 4]);
        assert_eq!(h1.ranks_into_top, vec![1, 2, 3, 4]);
        let h0 = h.iter().find(|x| x.degree == 0).unwrap();
        assert!(h0.stage_dims.iter().all(|&d| d == 0));
    }
}
