//! Free resolutions at precision.
//!
//! A free complex `Q` with a quasi-isomorphism `φ: Q → M` is built from the
//! top degree down. In degree `i` the partial cone `Q^{i+1} ⊕ M^i` has a cycle
//! module `Z`; its stable image is read at the reading level of `M`. Minimal
//! generators of `Z` modulo the boundaries from `M^{i−1}` are lifted back to
//! cycles at level `N`, and each becomes a basis vector of `Q^i` with
//! `d_Q = −(Q-part)` and `φ = M-part`. This kills the cone's cohomology in degree `i`.

use crate::base::{RingConfig, SeriesMatrix};
use crate::error::{AdicError, Result};
use crate::fgcomplex::{fg_cone, FgChainMap, FgComplex, StableCohomology};
use crate::koszul::hom_free;
use crate::tower::FgPresentation;

/// A free complex with a map onto the resolved complex.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub complex: FgComplex,
    pub augmentation: FgChainMap,
    /// No cycles were left when the construction stopped.
    pub complete: bool,
    /// Level at which cycle images were read.
    pub reading: usize,
}

impl FreeResolution {
    /// Stable cohomology of the cone of the augmentation vanishes at the reading level.
    pub fn is_quasi_iso(&self) -> Result<bool> {
        let cone = fg_cone(&self.augmentation);
        let prof = cone.stable_profile_at(self.reading)?;
        Ok(prof.profile.is_zero())
    }
}

fn free_complex(config: RingConfig, lo: i32, ranks: &[usize], diffs: &[SeriesMatrix]) -> FgComplex {
    FgComplex::free(config, lo, diffs.to_vec(), ranks.to_vec()).expect("assembled from cycles")
}

/// Free resolution of a bounded complex, stopping below degree `floor`.
pub fn resolve_complex(m: &FgComplex, floor: i32) -> Result<FreeResolution> {
    let config = m.config();
    let top = config.precision();
    if m.is_empty() {
        let zero = FgComplex::zero(config);
        let aug = FgChainMap::new(zero.clone(), zero.clone(), |_| SeriesMatrix::zeros(config, 0, 0))?;
        return Ok(FreeResolution { complex: zero, augmentation: aug, complete: true, reading: top });
    }
    let reading = m.reading_level()?;
    let n = config.nvars() as i32;
    let guard = m.lo() - n - 2;
    // Q in degrees i+1..=hi+1 (a rank-0 cap in degree hi+1), stored from the bottom.
    let mut lo = m.hi() + 1;
    let mut ranks = vec![0usize];
    let mut diffs: Vec<SeriesMatrix> = Vec::new();
    let mut phis: Vec<SeriesMatrix> = vec![SeriesMatrix::zeros(config, m.rank(lo), 0)];
    let mut complete = false;
    let mut i = m.hi();
    loop {
        let q = free_complex(config, lo, &ranks, &diffs);
        let phi = FgChainMap::from_fn(q.clone(), m.clone(), |d| {
            if d >= lo && d < lo + ranks.len() as i32 {
                phis[(d - lo) as usize].clone()
            } else {
                SeriesMatrix::zeros(config, m.rank(d), q.rank(d))
            }
        });
        let cone = fg_cone(&phi);
        let r_top = cone.realize(top)?;
        let r_read = cone.realize(reading)?;
        let z = r_top.complex.diff(i).kernel();
        let t = cone.transition(&r_top, top, &r_read, reading, i);
        let image = t.mul(&z);
        let term = r_read.complex.term_or_zero(i);
        let sub = term.submodule(&image);
        // Boundaries coming from M^{i-1} need no generators.
        let bounds = sub.coords.mul(&r_read.complex.diff(i - 1));
        let quot = sub.module.quotient(&bounds);
        let gens = sub.inclusion.mul(&quot.lift).mul(&quot.module.minimal_generators());
        if gens.cols() == 0 && i < m.lo() {
            complete = true;
            break;
        }
        if i < floor {
            break;
        }
        if i < guard {
            return Err(AdicError::PrecisionInsufficient(format!("cycles persist in degree {i}; increase the precision")));
        }
        let y = image.solve(&gens).ok_or_else(|| AdicError::Invariant("generators are not in the image of the cycles".into()))?;
        let cycles = z.mul(&y);
        let qr = q.rank(i + 1);
        let mr = m.rank(i);
        let d_top = config.level_dim(top);
        let cover = r_top.section(i, (qr + mr) * d_top).mul(&cycles);
        let g = cover.cols();
        let cols: Vec<_> = (0..g).map(|c| SeriesMatrix::column_from_dense(config, qr + mr, top, &cover.column(c))).collect();
        let all = SeriesMatrix::from_columns(config, qr + mr, &cols);
        let dq = all.block(0, 0, qr, g).neg();
        let ph = all.block(qr, 0, mr, g);
        lo = i;
        ranks.insert(0, g);
        diffs.insert(0, dq);
        phis.insert(0, ph);
        i -= 1;
    }
    // Drop zero terms at both ends, including the cap.
    while ranks.last() == Some(&0) {
        ranks.pop();
        phis.pop();
        diffs.pop();
    }
    while ranks.first() == Some(&0) {
        ranks.remove(0);
        phis.remove(0);
        if !diffs.is_empty() {
            diffs.remove(0);
        }
        lo += 1;
    }
    let q = if ranks.is_empty() { FgComplex::zero(config) } else { free_complex(config, lo, &ranks, &diffs) };
    let augmentation = FgChainMap::new(q.clone(), m.clone(), |d| {
        if d >= lo && d < lo + ranks.len() as i32 {
            phis[(d - lo) as usize].clone()
        } else {
            SeriesMatrix::zeros(config, m.rank(d), q.rank(d))
        }
    })?;
    Ok(FreeResolution { complex: q, augmentation, complete, reading })
}

/// Minimal free resolution of a module to homological length `length`.
pub fn resolve_free_fg(m: &FgPresentation, length: usize) -> Result<FreeResolution> {
    resolve_complex(&FgComplex::concentrated(m.clone(), 0), -(length as i32))
}

/// `Ext^j(M, N)` as stable cohomology of `Hom(Q, N)` for a free resolution `Q` of `M`.
pub fn ext_fg(m: &FgPresentation, target: &FgPresentation, j: usize) -> Result<StableCohomology> {
    let config = m.config();
    let res = resolve_free_fg(m, j + 1)?;
    if !res.complete && res.complex.lo() > -(j as i32) - 1 {
        return Err(AdicError::PrecisionInsufficient("resolution too short for the requested degree".into()));
    }
    let h = hom_free(&res.complex, &FgComplex::concentrated(target.clone(), 0))?;
    let reading = h.reading_level().map(|r| r.min(res.reading))?;
    let prof = h.stable_profile_at(reading)?;
    Ok(match prof.get(j as i32) {
        Some(s) => s.clone(),
        None => empty_stable(config, j as i32, prof.top, prof.reading),
    })
}

fn empty_stable(config: RingConfig, degree: i32, top: usize, reading: usize) -> StableCohomology {
    let f = config.field();
    StableCohomology {
        degree,
        top,
        reading,
        module: crate::level::LevelModule::zero(config, reading),
        reps: crate::base::Matrix::zeros(f, 0, 0),
        classify: crate::base::Matrix::zeros(f, 0, 0),
        precision_stable: true,
    }
}
