//! Formally projective towers and splittings of surjections from adically free modules.

use crate::base::{Matrix, SeriesMatrix};
use crate::error::{AdicError, Result};
use crate::tower::{decaying_free, free_truncation, universal_map, IndexSet, TowerModule, TowerMorphism};

/// Per-level freeness of a tower; over the local artinian `A_k` projective means free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityReport {
    pub per_level: Vec<bool>,
    pub projective: bool,
}

pub fn is_formally_projective(m: &TowerModule) -> ProjectivityReport {
    let per_level: Vec<bool> = m.levels().iter().map(|l| l.is_free()).collect();
    ProjectivityReport { projective: per_level.iter().all(|&b| b), per_level }
}

/// Splittings `β_k` of a tower surjection `α: F → P`, compatible along the towers.
#[derive(Clone, Debug)]
pub struct SplittingTower {
    pub alpha: TowerMorphism,
    pub betas: Vec<Matrix>,
}

impl SplittingTower {
    /// `α_k ∘ β_k = id` at every level.
    pub fn splits(&self) -> Vec<bool> {
        self.betas.iter().zip(&self.alpha.maps).enumerate().map(|(k, (b, a))| a.mul(b) == self.alpha.target.level(k).identity()).collect()
    }

    /// `θ^F ∘ β_{k+1} = β_k ∘ θ^P` for every adjacent pair.
    pub fn compatible(&self) -> Vec<bool> {
        let (f, p) = (&self.alpha.source, &self.alpha.target);
        (0..f.precision()).map(|k| f.transition(k).mul(&self.betas[k + 1]) == self.betas[k].mul(p.transition(k))).collect()
    }

    pub fn is_valid(&self) -> bool {
        let linear = self.betas.iter().enumerate().all(|(k, b)| self.alpha.target.level(k).is_linear_map(self.alpha.source.level(k), b));
        linear && self.splits().iter().all(|&x| x) && self.compatible().iter().all(|&x| x)
    }
}

/// A-linear map out of a free level module `P`, given on a basis `gens` of `P` by the images `imgs`.
fn extend_from_basis(p: &crate::level::LevelModule, gens: &Matrix, target: &crate::level::LevelModule, imgs: &Matrix) -> Result<Matrix> {
    let cover = p.cover_matrix(gens);
    let inv = cover.inverse().ok_or_else(|| AdicError::Invariant("generators are not a basis".into()))?;
    Ok(target.cover_matrix(imgs).mul(&inv))
}

/// Inductive construction of compatible splittings.
///
/// `β₀` is any linear section (level-0 modules are vector spaces). Given `β_k`, an
/// arbitrary A-linear section `β′` at level `k+1` is corrected to `β′ + χ̃`, where
/// `χ̃` lifts `χ = β_k θ^P − θ^F β′` into `ker α_{k+1}`.
pub fn lift_splittings(alpha: &TowerMorphism) -> Result<SplittingTower> {
    let (f, p) = (&alpha.source, &alpha.target);
    let report = is_formally_projective(p);
    if let Some(k) = report.per_level.iter().position(|&b| !b) {
        return Err(AdicError::NotProjective(k));
    }
    if !is_formally_projective(f).projective {
        return Err(AdicError::Precondition("the source must be adically free".into()));
    }
    if let Some(k) = alpha.maps.iter().zip(p.levels()).position(|(a, l)| a.rank() != l.dim()) {
        return Err(AdicError::NotSurjective(k));
    }
    let beta0 = alpha.maps[0].solve(&p.level(0).identity()).ok_or(AdicError::NotSurjective(0))?;
    let mut betas = vec![beta0];
    for k in 0..p.precision() {
        let (pk1, fk1) = (p.level(k + 1), f.level(k + 1));
        let a1 = &alpha.maps[k + 1];
        let gens = pk1.minimal_generators();
        let pre = a1.solve(&gens).ok_or_else(|| AdicError::NotSurjective(k + 1))?;
        let beta_prime = extend_from_basis(pk1, &gens, fk1, &pre)?;
        let chi = betas[k].mul(p.transition(k)).sub(&f.transition(k).mul(&beta_prime));
        if !alpha.maps[k].mul(&chi).is_zero() {
            return Err(AdicError::Invariant(format!("correction term does not land in the kernel at level {k}")));
        }
        // v with α_{k+1} v = 0 and θ^F v = χ(g_j), one column per generator.
        let stacked = a1.vstack(f.transition(k));
        let zeros = Matrix::zeros(a1.field(), a1.rows(), gens.cols());
        let rhs = zeros.vstack(&chi.mul(&gens));
        let v = stacked.solve(&rhs).ok_or_else(|| AdicError::Invariant(format!("kernel map is not surjective at level {k}")))?;
        let chi_lift = extend_from_basis(pk1, &gens, fk1, &v)?;
        betas.push(beta_prime.add(&chi_lift));
    }
    let tower = SplittingTower { alpha: alpha.clone(), betas };
    if !tower.is_valid() {
        let linear: Vec<bool> = tower.betas.iter().enumerate().map(|(k, b)| p.level(k).is_linear_map(f.level(k), b)).collect();
        return Err(AdicError::Invariant(format!("splitting identities fail: splits {:?}, squares {:?}, linear {linear:?}", tower.splits(), tower.compatible())));
    }
    Ok(tower)
}

/// Idempotents `e_k = β_k α_k` on an adically free module whose image is the given tower.
#[derive(Clone, Debug)]
pub struct SummandCertificate {
    pub splitting: SplittingTower,
    pub idempotents: Vec<Matrix>,
}

impl SummandCertificate {
    /// `e∘e = e`, and `α` restricted to the image of `e` is invertible with inverse `β`.
    pub fn verify(&self) -> bool {
        self.idempotents.iter().enumerate().all(|(k, e)| {
            let a = &self.splitting.alpha.maps[k];
            let b = &self.splitting.betas[k];
            e.mul(e) == *e && a.mul(e) == *a && e.mul(b) == *b && e.rank() == self.splitting.alpha.target.level(k).dim()
        })
    }
}

/// Present `P` as a quotient of an adically free module on lifted minimal generators, then split.
pub fn summand_certificate(p: &TowerModule) -> Result<SummandCertificate> {
    let n = p.precision();
    let top = p.level(n);
    let gens = top.minimal_generators();
    let elems: Vec<_> = (0..gens.cols()).map(|j| p.element_from_top(gens.column(j))).collect();
    let free = decaying_free(p.config(), IndexSet::Finite(gens.cols()));
    let alpha = universal_map(&free, &elems, p)?;
    let splitting = lift_splittings(&alpha)?;
    let idempotents = splitting.betas.iter().zip(&alpha.maps).map(|(b, a)| b.mul(a)).collect();
    Ok(SummandCertificate { splitting, idempotents })
}

/// The tower of images of an idempotent series matrix on `Â^r`, with the corestriction.
pub fn idempotent_image(e: &SeriesMatrix) -> Result<TowerMorphism> {
    let config = e.config();
    let r = e.rows();
    if e.cols() != r || e.mul(e) != *e {
        return Err(AdicError::Precondition("expected a square idempotent".into()));
    }
    let n = config.precision();
    let free = decaying_free(config, IndexSet::Finite(r));
    let f = free.tower();
    let subs: Vec<_> = (0..=n).map(|k| free.level(k).submodule(&e.realize(k))).collect();
    let transitions = (0..n).map(|k| subs[k].coords.mul(&free_truncation(config, r, k + 1, k)).mul(&subs[k + 1].inclusion)).collect();
    let levels = subs.iter().map(|s| s.module.clone()).collect();
    let p = TowerModule::new(levels, transitions)?;
    let maps = (0..=n).map(|k| subs[k].coords.mul(&e.realize(k))).collect();
    TowerMorphism::new(f, p, maps)
}
