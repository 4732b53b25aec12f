//! Seeded random instances. Every generator is a pure function of its RNG
//! state, so `(kind, seed, size)` always yields the same object.

use adic_core::base::monomial::monomials_up_to;
use adic_core::complex::LevelComplex;
use adic_core::fgcomplex::FgComplex;
use adic_core::koszul::koszul_vars;
use adic_core::level::LevelModule;
use adic_core::matlis::IndTorsionModule;
use adic_core::resolve::resolve_free_fg;
use adic_core::tower::FgPresentation;
use adic_core::{AdicError, Matrix, RingConfig, SeriesMatrix, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Documented bounds on generated sizes.
pub const MAX_DIM: usize = 12;
pub const MAX_DEGREES: usize = 4;
pub const MAX_INDEX: usize = 6;
pub const MAX_PRECISION: usize = 6;

/// RNG for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Series with terms in degrees `min_deg..=max_deg`.
pub fn series(rng: &mut impl Rng, config: RingConfig, min_deg: usize, max_deg: usize) -> TruncatedSeries {
    let p = config.p();
    let mut terms = Vec::new();
    for m in monomials_up_to(config.nvars(), max_deg.min(config.precision())) {
        if m.degree() >= min_deg && rng.gen_bool(0.5) {
            terms.push((m, rng.gen_range(0..p)));
        }
    }
    TruncatedSeries::from_terms(config, terms)
}

/// A nonzero series in `𝔞` of order between 1 and `max_ord`.
pub fn nonunit(rng: &mut impl Rng, config: RingConfig, max_ord: usize) -> TruncatedSeries {
    let ord = rng.gen_range(1..=max_ord.max(1));
    let lead = adic_core::base::monomial::monomials_of_degree(config.nvars(), ord);
    let m = lead[rng.gen_range(0..lead.len())].clone();
    let c = rng.gen_range(1..config.p());
    TruncatedSeries::monomial(config, m, c).add(&series(rng, config, ord + 1, ord + 2))
}

pub fn series_matrix(rng: &mut impl Rng, config: RingConfig, rows: usize, cols: usize, min_deg: usize, max_deg: usize) -> SeriesMatrix {
    SeriesMatrix::from_fn(config, rows, cols, |_, _| series(rng, config, min_deg, max_deg))
}

/// Invertible constant part plus higher terms.
pub fn invertible(rng: &mut impl Rng, config: RingConfig, r: usize) -> SeriesMatrix {
    let field = config.field();
    let p = config.p();
    let constant = loop {
        let m = Matrix::from_fn(field, r, r, |_, _| rng.gen_range(0..p));
        if m.is_invertible() {
            break m;
        }
    };
    SeriesMatrix::from_constant(config, &constant).add(&series_matrix(rng, config, r, r, 1, 2))
}

/// A presentation with `rank ≤ max_rank` generators and relations of order `≥ 1`.
pub fn presentation(rng: &mut impl Rng, config: RingConfig, max_rank: usize, max_rels: usize, max_ord: usize) -> FgPresentation {
    let r = rng.gen_range(1..=max_rank.max(1));
    let s = rng.gen_range(0..=max_rels);
    let rel = SeriesMatrix::from_fn(config, r, s, |_, _| if rng.gen_bool(0.3) { TruncatedSeries::zero(config) } else { nonunit(rng, config, max_ord) });
    let u = invertible(rng, config, r);
    FgPresentation::new(u.mul(&rel))
}

/// A finite-length module `⊕ A/(x^{e_i})` over one variable, disguised by a base change.
pub fn finite_length_presentation(rng: &mut impl Rng, config: RingConfig, max_rank: usize, max_exp: usize) -> (FgPresentation, usize) {
    let r = rng.gen_range(1..=max_rank.max(1));
    let exps: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=max_exp)).collect();
    let x = TruncatedSeries::var(config, 0);
    let d = SeriesMatrix::from_fn(config, r, r, |i, j| if i == j { x.pow(exps[i]) } else { TruncatedSeries::zero(config) });
    let u = invertible(rng, config, r);
    let v = invertible(rng, config, r);
    (FgPresentation::new(u.mul(&d).mul(&v)), exps.into_iter().max().unwrap_or(1))
}

/// A level module: a quotient of a free module by the closure of random vectors.
pub fn level_module(rng: &mut impl Rng, config: RingConfig, level: usize, max_dim: usize) -> Result<LevelModule, AdicError> {
    if max_dim > MAX_DIM || level > MAX_PRECISION {
        return Err(AdicError::InvalidConfig(format!("bounds exceeded: dim {max_dim}, level {level}")));
    }
    let d = config.level_dim(level);
    let rank = (max_dim / d).max(1);
    let free = LevelModule::free(config, level, rank);
    let p = config.p();
    let vecs = Matrix::from_fn(config.field(), free.dim(), rng.gen_range(0..=rank), |_, _| rng.gen_range(0..p));
    let q = free.quotient(&free.closure(&vecs));
    Ok(q.module)
}

/// A bounded complex of free level modules with at most `max_dim` dimensions per term.
///
/// Differentials send each generator to a random element of the kernel of the
/// next differential, so `d² = 0` holds by construction.
pub fn free_level_complex(rng: &mut impl Rng, config: RingConfig, level: usize, terms: usize, max_dim: usize) -> Result<LevelComplex, AdicError> {
    if terms > MAX_DEGREES + 1 || max_dim > MAX_DIM {
        return Err(AdicError::InvalidConfig("bounds exceeded".into()));
    }
    let d = config.level_dim(level);
    let max_rank = max_dim / d;
    if max_rank == 0 {
        return Err(AdicError::InvalidConfig(format!("level {level} does not fit in dimension {max_dim}")));
    }
    let field = config.field();
    let p = config.p();
    let lo = -(terms as i32 - 1);
    let ranks: Vec<usize> = (0..terms).map(|_| rng.gen_range(0..=max_rank)).collect();
    let modules: Vec<LevelModule> = ranks.iter().map(|&r| LevelModule::free(config, level, r)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    // Build from the top: the last differential is unconstrained.
    for j in (0..terms.saturating_sub(1)).rev() {
        let tgt = &modules[j + 1];
        let allowed = match diffs.first() {
            Some(next) => next.kernel(),
            None => tgt.identity(),
        };
        let imgs = if allowed.cols() == 0 {
            Matrix::zeros(field, tgt.dim(), ranks[j])
        } else {
            let coeffs = Matrix::from_fn(field, allowed.cols(), ranks[j], |_, _| rng.gen_range(0..p));
            allowed.mul(&coeffs)
        };
        // `allowed` is A-stable, so the A-linear extension stays inside it.
        let dj = tgt.cover_matrix(&imgs);
        diffs.insert(0, dj);
    }
    LevelComplex::new(lo, modules, diffs)
}

/// One summand type for bounded-above complexes of f.g. modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Piece {
    Free,
    Matrix,
    Koszul,
    Multiplication,
    Cyclic,
}

/// A random direct sum of pieces conjugated by random base changes, with the
/// expected `sup` of its cohomology.
pub fn fg_complex_with_sup(rng: &mut impl Rng, config: RingConfig, pieces: usize) -> Result<(FgComplex, i32), AdicError> {
    let n = config.nvars();
    let mut total = FgComplex::zero(config);
    let mut sup = i32::MIN;
    for _ in 0..pieces.max(1) {
        let kind = [Piece::Free, Piece::Matrix, Piece::Koszul, Piece::Multiplication, Piece::Cyclic][rng.gen_range(0..5)];
        let top = rng.gen_range(-1..=1);
        let c = match kind {
            Piece::Free => FgComplex::concentrated(FgPresentation::free(config, 1), top),
            Piece::Matrix => {
                let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                let m = SeriesMatrix::from_fn(config, b, a, |_, _| nonunit(rng, config, 2));
                FgComplex::free(config, top - 1, vec![m], vec![a, b])?
            }
            Piece::Koszul => koszul_vars(config).complex.shift(-top),
            Piece::Multiplication => {
                let f = nonunit(rng, config, 2);
                FgComplex::free(config, top - 1, vec![SeriesMatrix::from_fn(config, 1, 1, |_, _| f.clone())], vec![1, 1])?
            }
            Piece::Cyclic => {
                let rels: Vec<_> = (0..rng.gen_range(1..=n)).map(|_| nonunit(rng, config, 2)).collect();
                FgComplex::concentrated(FgPresentation::cyclic(config, &rels), top)
            }
        };
        sup = sup.max(top);
        total = total.direct_sum(&c)?;
    }
    // Base changes can push differential entries to high order through
    // cancellation; redraw a few times to keep the reading margin small.
    for _ in 0..8 {
        let bases: Vec<SeriesMatrix> = total.degrees().map(|i| invertible(rng, config, total.rank(i))).collect();
        let c = total.conjugate(&bases)?;
        if c.margin() <= total.margin().max(2) + 1 {
            return Ok((c, sup));
        }
    }
    Ok((total, sup))
}

/// A free complex with top term in degree 0: a resolution of a random presentation,
/// conjugated and padded with a split exact piece.
pub fn free_complex_sup0(rng: &mut impl Rng, config: RingConfig, max_rank: usize) -> Result<FgComplex, AdicError> {
    let m = presentation(rng, config, max_rank, max_rank, 2);
    let res = resolve_free_fg(&m, config.nvars())?;
    let mut c = res.complex;
    if rng.gen_bool(0.5) {
        let split = FgComplex::free(config, -1, vec![SeriesMatrix::identity(config, 1)], vec![1, 1])?;
        c = c.direct_sum(&split)?;
    }
    let bases: Vec<SeriesMatrix> = c.degrees().map(|i| invertible(rng, config, c.rank(i))).collect();
    c.conjugate(&bases)
}

/// An idempotent `U diag(1..1, 0..0) U⁻¹` on `Â^r`.
pub fn idempotent(rng: &mut impl Rng, config: RingConfig, r: usize) -> SeriesMatrix {
    let s = rng.gen_range(0..=r);
    let u = invertible(rng, config, r);
    let d = SeriesMatrix::from_fn(config, r, r, |i, j| if i == j && i < s { TruncatedSeries::one(config) } else { TruncatedSeries::zero(config) });
    u.mul(&d).mul(&u.inverse().expect("invertible constant part"))
}

/// A finite-length torsion module over one variable as its `𝔞`-power filtration.
pub fn torsion_module(rng: &mut impl Rng, config: RingConfig, budget: usize, max_rank: usize) -> Result<IndTorsionModule, AdicError> {
    let (m, loewy) = finite_length_presentation(rng, config, max_rank, 3);
    let level = m.level(loewy)?.module;
    IndTorsionModule::from_module(&level.at_level(config.precision())?, budget)
}
