//! Finite-dimensional modules over the level rings `A_k`.
//!
//! A module is a vector space over `F_p` (column vectors) together with the
//! commuting nilpotent action matrices of `x₁..x_n`. Maps are matrices acting
//! on column vectors from the left.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{monomial::monomials_up_to, Matrix, PrimeField, RingConfig, SeriesMatrix, TruncatedSeries};
use crate::error::{AdicError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelModule {
    config: RingConfig,
    level: usize,
    dim: usize,
    actions: Vec<Matrix>,
}

/// An `A_k`-linear map between two level modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    pub source: LevelModule,
    pub target: LevelModule,
    pub matrix: Matrix,
}

/// A quotient `M/S` with its projection and a linear (not A-linear) section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: LevelModule,
    pub proj: Matrix,
    pub lift: Matrix,
}

/// A submodule with its inclusion and a left inverse of the inclusion.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: LevelModule,
    pub inclusion: Matrix,
    pub coords: Matrix,
}

#[derive(Clone, Debug)]
pub struct Image {
    pub module: LevelModule,
    pub inclusion: Matrix,
    /// `source → image`, so that `inclusion · factorization = f`.
    pub factorization: Matrix,
}

/// `M ⊗_{A_k} N` with the projection from `M ⊗_k N` (index `a·dim N + b`) and a section.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: LevelModule,
    pub proj: Matrix,
    pub lift: Matrix,
}

/// `Hom_{A_k}(M, N)` as a module, with one matrix per basis vector.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: LevelModule,
    pub basis_maps: Vec<Matrix>,
}

/// A free cover `A_k^m → M` on a minimal generating set.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub generators: Matrix,
    pub cover: Matrix,
    /// Linear section `M → A_k^m` of the cover.
    pub section: Matrix,
    /// A-module generators of the kernel of the cover, as columns in `A_k^m`.
    pub relations: Matrix,
}

impl LevelModule {
    /// Validated constructor: actions must commute and `𝔞^{level+1}` must act as zero.
    pub fn new(config: RingConfig, level: usize, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        let m = Self::from_parts(config, level, dim, actions)?;
        m.check_invariants()?;
        Ok(m)
    }

    pub(crate) fn from_parts(config: RingConfig, level: usize, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        config.check_level(level)?;
        if actions.len() != config.nvars() {
            return Err(AdicError::Shape(format!("{} actions for {} variables", actions.len(), config.nvars())));
        }
        if actions.iter().any(|a| a.rows() != dim || a.cols() != dim || a.field() != config.field()) {
            return Err(AdicError::Shape(format!("action matrices must be {dim}x{dim} over F_{}", config.p())));
        }
        Ok(Self { config, level, dim, actions })
    }

    pub fn zero(config: RingConfig, level: usize) -> Self {
        Self { config, level, dim: 0, actions: vec![Matrix::zeros(config.field(), 0, 0); config.nvars()] }
    }

    /// The free module `A_k^r`, coordinates generator-major.
    pub fn free(config: RingConfig, level: usize, rank: usize) -> Self {
        let actions = (0..config.nvars())
            .map(|i| {
                let x = TruncatedSeries::var(config, i).action_matrix(level);
                Matrix::block_diag(config.field(), &vec![x; rank])
            })
            .collect();
        Self { config, level, dim: rank * config.level_dim(level), actions }
    }

    /// The residue field `A₀`, viewed as a module at the given level.
    pub fn residue_field(config: RingConfig, level: usize) -> Self {
        Self { config, level, dim: 1, actions: vec![Matrix::zeros(config.field(), 1, 1); config.nvars()] }
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

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..self.actions.len() {
            for j in i + 1..self.actions.len() {
                if self.actions[i].mul(&self.actions[j]) != self.actions[j].mul(&self.actions[i]) {
                    return Err(AdicError::Invariant(format!("actions of x{} and x{} do not commute", i + 1, j + 1)));
                }
            }
        }
        if self.power_submodule(self.level + 1).cols() != 0 {
            return Err(AdicError::Invariant(format!("𝔞^{} does not annihilate the module", self.level + 1)));
        }
        Ok(())
    }

    /// Same module regarded at another level; fails if `𝔞^{k+1}` does not kill it.
    pub fn at_level(&self, k: usize) -> Result<Self> {
        self.config.check_level(k)?;
        if k < self.level && self.power_submodule(k + 1).cols() != 0 {
            return Err(AdicError::Invariant(format!("module is not killed by 𝔞^{}", k + 1)));
        }
        Ok(Self { level: k, ..self.clone() })
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim)
    }

    /// `X^m` for every monomial of degree ≤ level, in basis order.
    pub fn monomial_actions(&self) -> Vec<Matrix> {
        let monos = monomials_up_to(self.config.nvars(), self.level);
        let mut out: Vec<Matrix> = Vec::with_capacity(monos.len());
        for m in &monos {
            if m.degree() == 0 {
                out.push(self.identity());
                continue;
            }
            let i = m.0.iter().position(|&e| e > 0).unwrap();
            let mut prev = m.clone();
            prev.0[i] -= 1;
            let x = self.actions[i].mul(&out[prev.index()]);
            out.push(x);
        }
        out
    }

    /// Action of a series; terms above the module's level act as zero.
    pub fn series_action(&self, f: &TruncatedSeries) -> Matrix {
        self.dense_action(&f.to_dense(self.level))
    }

    /// Action of an element of `A_k` given by its coefficient vector.
    pub fn dense_action(&self, coeffs: &[u32]) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dim, self.dim);
        if coeffs.iter().all(|&c| c == 0) {
            return acc;
        }
        for (c, x) in coeffs.iter().zip(self.monomial_actions()) {
            if *c != 0 {
                acc = acc.add(&x.scale(*c));
            }
        }
        acc
    }

    /// Basis of `𝔞^j M`.
    pub fn power_submodule(&self, j: usize) -> Matrix {
        let mut s = self.identity();
        for _ in 0..j {
            if s.cols() == 0 {
                break;
            }
            let mut stacked = Matrix::zeros(self.field(), self.dim, 0);
            for x in &self.actions {
                stacked = stacked.hstack(&x.mul(&s));
            }
            s = stacked.column_space();
        }
        s
    }

    /// Basis of the A-submodule generated by the given columns.
    pub fn closure(&self, gens: &Matrix) -> Matrix {
        let mut s = gens.column_space();
        loop {
            let mut stacked = s.clone();
            for x in &self.actions {
                stacked = stacked.hstack(&x.mul(&s));
            }
            let next = stacked.column_space();
            if next.cols() == s.cols() {
                return next;
            }
            s = next;
        }
    }

    /// Submodule spanned by the columns of `basis` (assumed invariant; need not be independent).
    pub fn submodule(&self, span: &Matrix) -> Submodule {
        let basis = span.column_space();
        let coords = basis.left_inverse().expect("column space basis has full column rank");
        let actions = self.actions.iter().map(|x| coords.mul(&x.mul(&basis))).collect();
        let module = Self { config: self.config, level: self.level, dim: basis.cols(), actions };
        debug_assert!(self.actions.iter().zip(&module.actions).all(|(x, a)| basis.mul(a) == x.mul(&basis)));
        Submodule { module, inclusion: basis, coords }
    }

    /// Quotient by the span of the given columns (assumed A-invariant).
    pub fn quotient(&self, span: &Matrix) -> Quotient {
        let f = self.field();
        let red = span.transpose().rref();
        let rows = &red.reduced;
        let free: Vec<usize> = (0..self.dim).filter(|c| !red.pivots.contains(c)).collect();
        let q = free.len();
        let mut proj = Matrix::zeros(f, q, self.dim);
        for (c, &j) in free.iter().enumerate() {
            proj.set(c, j, 1);
        }
        for (r, &pc) in red.pivots.iter().enumerate() {
            for (c, &j) in free.iter().enumerate() {
                proj.set(c, pc, f.neg(rows.get(r, j)));
            }
        }
        let mut lift = Matrix::zeros(f, self.dim, q);
        for (c, &j) in free.iter().enumerate() {
            lift.set(j, c, 1);
        }
        let actions = self.actions.iter().map(|x| proj.mul(&x.mul(&lift))).collect();
        let module = Self { config: self.config, level: self.level, dim: q, actions };
        Quotient { module, proj, lift }
    }

    /// Basis of `∩ ker x_i`.
    pub fn socle(&self) -> Matrix {
        let mut stacked = Matrix::zeros(self.field(), 0, self.dim);
        for x in &self.actions {
            stacked = stacked.vstack(x);
        }
        stacked.kernel()
    }

    /// `M/𝔞M` with its projection.
    pub fn top(&self) -> Quotient {
        self.quotient(&self.power_submodule(1))
    }

    /// Lifts of a basis of `M/𝔞M`; a minimal generating set by Nakayama.
    pub fn minimal_generators(&self) -> Matrix {
        self.top().lift
    }

    pub fn num_generators(&self) -> usize {
        self.top().module.dim
    }

    /// `A_k^m → M` on minimal generators, with A-module generators of its kernel.
    pub fn free_cover(&self) -> FreeCover {
        let gens = self.minimal_generators();
        let m = gens.cols();
        let free = Self::free(self.config, self.level, m);
        let cover = self.cover_matrix(&gens);
        let section = cover.solve(&self.identity()).expect("minimal generators generate");
        let ker = cover.kernel();
        let relations = if ker.cols() == 0 {
            ker
        } else {
            let sub = free.submodule(&ker);
            sub.inclusion.mul(&sub.module.minimal_generators())
        };
        FreeCover { generators: gens, cover, section, relations }
    }

    /// Matrix of `A_k^m → M`, `e_{j,b} ↦ x^b g_j`, for generator columns `g_j`.
    pub fn cover_matrix(&self, gens: &Matrix) -> Matrix {
        let monos = self.monomial_actions();
        let d = monos.len();
        let mut cover = Matrix::zeros(self.field(), self.dim, gens.cols() * d);
        for j in 0..gens.cols() {
            let g = Matrix::from_columns(self.field(), self.dim, &[gens.column(j)]);
            for (b, x) in monos.iter().enumerate() {
                cover.set_block(0, j * d + b, &x.mul(&g));
            }
        }
        cover
    }

    pub fn direct_sum(&self, other: &LevelModule) -> Result<LevelModule> {
        check_same(self, other)?;
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| Matrix::block_diag(self.field(), &[a.clone(), b.clone()])).collect();
        Ok(Self { config: self.config, level: self.level, dim: self.dim + other.dim, actions })
    }

    pub fn direct_sum_all(config: RingConfig, level: usize, parts: &[LevelModule]) -> Result<LevelModule> {
        parts.iter().try_fold(Self::zero(config, level), |acc, m| acc.direct_sum(m))
    }

    /// k-linear dual with the contragredient action (transposed matrices).
    pub fn dual(&self) -> LevelModule {
        Self { actions: self.actions.iter().map(Matrix::transpose).collect(), ..self.clone() }
    }

    /// Projective (equivalently free) over the local ring `A_k`.
    pub fn is_free(&self) -> bool {
        self.num_generators() * self.config.level_dim(self.level) == self.dim
    }

    pub fn is_linear_map(&self, target: &LevelModule, m: &Matrix) -> bool {
        m.rows() == target.dim
            && m.cols() == self.dim
            && self.actions.iter().zip(&target.actions).all(|(xs, xt)| m.mul(xs) == xt.mul(m))
    }
}

fn check_same(a: &LevelModule, b: &LevelModule) -> Result<()> {
    if a.config != b.config {
        return Err(AdicError::ConfigMismatch);
    }
    if a.level != b.level {
        return Err(AdicError::LevelMismatch(a.level, b.level));
    }
    Ok(())
}

impl LevelMap {
    pub fn new(source: LevelModule, target: LevelModule, matrix: Matrix) -> Result<Self> {
        check_same(&source, &target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(AdicError::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        if !source.is_linear_map(&target, &matrix) {
            return Err(AdicError::Invariant("map does not commute with the actions".into()));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(m: &LevelModule) -> Self {
        Self { source: m.clone(), target: m.clone(), matrix: m.identity() }
    }

    pub fn zero(source: &LevelModule, target: &LevelModule) -> Self {
        Self { source: source.clone(), target: target.clone(), matrix: Matrix::zeros(source.field(), target.dim, source.dim) }
    }

    pub fn compose(&self, first: &LevelMap) -> Result<LevelMap> {
        if first.target != self.source {
            return Err(AdicError::Shape("composition of incompatible maps".into()));
        }
        Ok(LevelMap { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&first.matrix) })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }
}

/// Cokernel of `A_k^s → A_k^r` given by a series matrix with `r` rows.
#[derive(Clone, Debug)]
pub struct PresentedLevel {
    pub module: LevelModule,
    pub projection: LevelMap,
    pub section: Matrix,
}

pub fn module_from_level_presentation(k: usize, relations: &SeriesMatrix) -> Result<PresentedLevel> {
    let config = relations.config();
    config.check_level(k)?;
    let r = relations.rows();
    let free = LevelModule::free(config, k, r);
    let gens = Matrix::from_columns(config.field(), free.dim(), &(0..relations.cols()).map(|j| relations.column_dense(j, k)).collect::<Vec<_>>());
    let span = free.closure(&gens);
    let q = free.quotient(&span);
    let projection = LevelMap { source: free, target: q.module.clone(), matrix: q.proj };
    Ok(PresentedLevel { module: q.module, projection, section: q.lift })
}

pub fn map_kernel(f: &LevelMap) -> Submodule {
    f.source.submodule(&f.matrix.kernel())
}

pub fn map_cokernel(f: &LevelMap) -> Quotient {
    f.target.quotient(&f.matrix.column_space())
}

pub fn map_image(f: &LevelMap) -> Image {
    let sub = f.target.submodule(&f.matrix);
    let factorization = sub.coords.mul(&f.matrix);
    Image { module: sub.module, inclusion: sub.inclusion, factorization }
}

/// `M ⊗_{A_k} N`, computed as `N^m` modulo the relations of a presentation of `M`.
pub fn tensor_level(m: &LevelModule, n: &LevelModule) -> Result<Tensor> {
    check_same(m, n)?;
    let field = m.field();
    let cover = m.free_cover();
    let g = cover.generators.cols();
    let d = m.config.level_dim(m.level);
    let dn = n.dim;
    let big = LevelModule::direct_sum_all(m.config, m.level, &vec![n.clone(); g])?;
    let nmon = n.monomial_actions();
    // Relation images: for each kernel generator κ, the map N → N^g, y ↦ (κ_j · y)_j.
    let mut rel = Matrix::zeros(field, g * dn, 0);
    for c in 0..cover.relations.cols() {
        let kappa = cover.relations.column(c);
        let mut block = Matrix::zeros(field, g * dn, dn);
        for j in 0..g {
            let act = combine(field, dn, &nmon, &kappa[j * d..(j + 1) * d]);
            block.set_block(j * dn, 0, &act);
        }
        rel = rel.hstack(&block);
    }
    let q = big.quotient(&rel);
    // Projection from M ⊗_k N: a ⊗ b ↦ (u_a[j] · b)_j with u_a = section(a).
    let dm = m.dim;
    let mut from_k = Matrix::zeros(field, g * dn, dm * dn);
    for a in 0..dm {
        let u = cover.section.column(a);
        let mut block = Matrix::zeros(field, g * dn, dn);
        for j in 0..g {
            block.set_block(j * dn, 0, &combine(field, dn, &nmon, &u[j * d..(j + 1) * d]));
        }
        for b in 0..dn {
            for r in 0..g * dn {
                from_k.set(r, a * dn + b, block.get(r, b));
            }
        }
    }
    let proj = q.proj.mul(&from_k);
    // Section: (y_j)_j ↦ Σ_j g_j ⊗ y_j.
    let mut to_k = Matrix::zeros(field, dm * dn, g * dn);
    for j in 0..g {
        for a in 0..dm {
            let ga = cover.generators.get(a, j);
            if ga == 0 {
                continue;
            }
            for b in 0..dn {
                to_k.set(a * dn + b, j * dn + b, ga);
            }
        }
    }
    let lift = to_k.mul(&q.lift);
    Ok(Tensor { module: q.module, proj, lift })
}

fn combine(field: PrimeField, dim: usize, monos: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut acc = Matrix::zeros(field, dim, dim);
    for (c, x) in coeffs.iter().zip(monos) {
        if *c != 0 {
            acc = acc.add(&x.scale(*c));
        }
    }
    acc
}

impl HomModule {
    /// Matrix of the homomorphism with the given coordinates.
    pub fn map_of(&self, coords: &[u32]) -> Matrix {
        let f = self.module.field();
        let (r, c) = self.basis_maps.first().map(|m| (m.rows(), m.cols())).unwrap_or((0, 0));
        let mut acc = Matrix::zeros(f, r, c);
        for (&a, m) in coords.iter().zip(&self.basis_maps) {
            if a != 0 {
                acc = acc.add(&m.scale(a));
            }
        }
        acc
    }
}

/// `Hom_{A_k}(M, N)`: a homomorphism is the choice of images of minimal
/// generators of `M` killed by the relations among them.
pub fn hom_level(m: &LevelModule, n: &LevelModule) -> Result<HomModule> {
    check_same(m, n)?;
    let field = m.field();
    let cover = m.free_cover();
    let g = cover.generators.cols();
    let d = m.config.level_dim(m.level);
    let dn = n.dim;
    let nmon = n.monomial_actions();
    let mut constraints = Matrix::zeros(field, 0, g * dn);
    for c in 0..cover.relations.cols() {
        let kappa = cover.relations.column(c);
        let mut row = Matrix::zeros(field, dn, g * dn);
        for j in 0..g {
            row.set_block(0, j * dn, &combine(field, dn, &nmon, &kappa[j * d..(j + 1) * d]));
        }
        constraints = constraints.vstack(&row);
    }
    let sol = if constraints.rows() == 0 { Matrix::identity(field, g * dn) } else { constraints.kernel() };
    let big = LevelModule::direct_sum_all(m.config, m.level, &vec![n.clone(); g])?;
    let coords = sol.left_inverse().unwrap_or_else(|| Matrix::zeros(field, 0, g * dn));
    let actions = big.actions.iter().map(|x| coords.mul(&x.mul(&sol))).collect();
    let module = LevelModule { config: m.config, level: m.level, dim: sol.cols(), actions };
    let basis_maps = (0..sol.cols())
        .map(|s| {
            let y = sol.column(s);
            let mut phi_free = Matrix::zeros(field, dn, g * d);
            for j in 0..g {
                let yj = Matrix::from_columns(field, dn, &[y[j * dn..(j + 1) * dn].to_vec()]);
                for (b, x) in nmon.iter().enumerate() {
                    phi_free.set_block(0, j * d + b, &x.mul(&yj));
                }
            }
            phi_free.mul(&cover.section)
        })
        .collect();
    Ok(HomModule { module, basis_maps })
}

/// `M/𝔞^{k+1}M` at level `k` for a module at level `k+1`, with the canonical projection.
pub fn base_change(m: &LevelModule) -> Result<(LevelModule, Matrix)> {
    if m.level == 0 {
        return Err(AdicError::Precondition("base change needs a module at level ≥ 1".into()));
    }
    let k = m.level - 1;
    base_change_to(m, k)
}

/// `M/𝔞^{k+1}M` regarded at level `k ≤ level(M)`.
pub fn base_change_to(m: &LevelModule, k: usize) -> Result<(LevelModule, Matrix)> {
    if k > m.level {
        return Err(AdicError::LevelMismatch(k, m.level));
    }
    let q = m.quotient(&m.power_submodule(k + 1));
    let module = LevelModule { level: k, ..q.module };
    Ok((module, q.proj))
}

/// Looks for an invertible A-linear map `M → N`.
///
/// Random elements of `Hom(M, N)` are tried first, then basis elements and
/// pairwise sums. A `None` answer is a strong but not absolute certificate of
/// non-isomorphism when the cheap invariants agree.
pub fn find_isomorphism(m: &LevelModule, n: &LevelModule) -> Result<Option<Matrix>> {
    check_same(m, n)?;
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(Matrix::zeros(m.field(), 0, 0)));
    }
    if m.num_generators() != n.num_generators() || m.socle().cols() != n.socle().cols() {
        return Ok(None);
    }
    for j in 1..=m.level {
        if m.power_submodule(j).cols() != n.power_submodule(j).cols() {
            return Ok(None);
        }
    }
    let hom = hom_level(m, n)?;
    let h = hom.basis_maps.len();
    if h == 0 {
        return Ok(None);
    }
    let p = m.config.p();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let try_coords = |coords: &[u32]| {
        let phi = hom.map_of(coords);
        phi.is_invertible().then_some(phi)
    };
    for _ in 0..3 {
        let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if let Some(phi) = try_coords(&c) {
            return Ok(Some(phi));
        }
    }
    for i in 0..h {
        let mut c = vec![0; h];
        c[i] = 1;
        if let Some(phi) = try_coords(&c) {
            return Ok(Some(phi));
        }
        for j in i + 1..h {
            c[j] = 1;
            if let Some(phi) = try_coords(&c) {
                return Ok(Some(phi));
            }
            c[j] = 0;
        }
    }
    for _ in 0..64 {
        let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if let Some(phi) = try_coords(&c) {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &LevelModule, n: &LevelModule) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Monomial;

    fn cfg(p: u32, n: usize, big_n: usize) -> RingConfig {
        RingConfig::new(p, n, big_n).unwrap()
    }

    fn quotient_ring(c: RingConfig, k: usize, rels: &[TruncatedSeries]) -> LevelModule {
        let m = SeriesMatrix::from_entries(c, 1, rels.len(), rels.to_vec()).unwrap();
        module_from_level_presentation(k, &m).unwrap().module
    }

    #[test]
    fn free_presentation_gives_level_ring() {
        let c = cfg(5, 2, 3);
        let m = module_from_level_presentation(3, &SeriesMatrix::zeros(c, 1, 0)).unwrap();
        assert_eq!(m.module.dim(), 10);
        m.module.check_invariants().unwrap();
    }

    #[test]
    fn quotient_by_x_has_dim_one() {
        // Oracle: rank of multiplication by x on A_2 (n = 1) is 2, so the cokernel has dim 1.
        let c = cfg(5, 1, 3);
        let x = TruncatedSeries::var(c, 0);
        assert_eq!(3 - x.action_matrix(2).rank(), 1);
        assert_eq!(quotient_ring(c, 2, &[x]).dim(), 1);
    }

    #[test]
    fn identity_relations_kill_everything() {
        let c = cfg(5, 2, 3);
        let m = module_from_level_presentation(2, &SeriesMatrix::identity(c, 3)).unwrap();
        assert_eq!(m.module.dim(), 0);
    }

    #[test]
    fn kernel_image_cokernel_contracts() {
        let c = cfg(5, 2, 2);
        let m = LevelModule::free(c, 2, 1);
        let id = LevelMap::identity(&m);
        assert_eq!(map_kernel(&id).module.dim(), 0);
        assert_eq!(map_image(&id).module.dim(), m.dim());
        let z = LevelMap::zero(&m, &m);
        assert_eq!(map_kernel(&z).module.dim(), m.dim());
        assert_eq!(map_cokernel(&z).module.dim(), m.dim());
    }

    #[test]
    fn tensor_examples() {
        let c = cfg(5, 1, 3);
        let k = 2;
        let x = TruncatedSeries::var(c, 0);
        let m1 = quotient_ring(c, k, std::slice::from_ref(&x));
        let m2 = quotient_ring(c, k, &[x.pow(2)]);
        let t = tensor_level(&m1, &m2).unwrap();
        assert_eq!(t.module.dim(), 1);
        let a = LevelModule::free(c, k, 1);
        let t = tensor_level(&a, &m2).unwrap();
        assert!(is_isomorphic(&t.module, &m2).unwrap());
        let r = LevelModule::residue_field(c, k);
        assert_eq!(tensor_level(&r, &a).unwrap().module.dim(), 1);
    }

    #[test]
    fn hom_examples() {
        let c = cfg(5, 1, 3);
        let x = TruncatedSeries::var(c, 0);
        let m1 = quotient_ring(c, 1, std::slice::from_ref(&x));
        let m2 = quotient_ring(c, 1, &[x.pow(2)]);
        let h = hom_level(&m1, &m2).unwrap();
        assert_eq!(h.module.dim(), 1);
        for phi in &h.basis_maps {
            assert!(m1.is_linear_map(&m2, phi));
        }
        let a = LevelModule::free(c, 1, 1);
        assert!(is_isomorphic(&hom_level(&a, &m2).unwrap().module, &m2).unwrap());
        let z = LevelModule::zero(c, 1);
        assert_eq!(hom_level(&m2, &z).unwrap().module.dim(), 0);
    }

    #[test]
    fn base_change_examples() {
        let c = cfg(5, 2, 4);
        let (f, _) = base_change(&LevelModule::free(c, 3, 2)).unwrap();
        assert_eq!(f.dim(), 2 * c.level_dim(2));
        assert!(f.is_free());
        let (r, _) = base_change(&LevelModule::residue_field(c, 3)).unwrap();
        assert_eq!(r.dim(), 1);
        let (a, _) = base_change(&LevelModule::free(c, 3, 1)).unwrap();
        assert_eq!(c.level_dim(3) - a.dim(), 4);
    }

    #[test]
    fn socle_of_level_ring() {
        let c = cfg(5, 2, 3);
        let a = LevelModule::free(c, 3, 1);
        assert_eq!(a.socle().cols(), 4);
        let y = TruncatedSeries::monomial(c, Monomial(vec![0, 1]), 1);
        assert_eq!(quotient_ring(c, 3, &[y]).socle().cols(), 1);
    }

    #[test]
    fn invalid_actions_rejected() {
        let c = cfg(5, 1, 2);
        let f = c.field();
        let bad = LevelModule::new(c, 0, 1, vec![Matrix::identity(f, 1)]);
        assert!(bad.is_err());
    }
}
