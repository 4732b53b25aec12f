use adic_core::projective::{idempotent_image, is_formally_projective, lift_splittings, summand_certificate};
use adic_core::tower::{complete_fg, FgPresentation};
use adic_core::{RingConfig, SeriesMatrix, TruncatedSeries};
use proptest::prelude::*;

/// `U · diag(1..1, 0..0) · U⁻¹` with `rank` ones.
fn conjugated_projector(u: &SeriesMatrix, rank: usize) -> SeriesMatrix {
    let c = u.config();
    let d = SeriesMatrix::from_fn(c, u.rows(), u.rows(), |i, j| if i == j && i < rank { TruncatedSeries::one(c) } else { TruncatedSeries::zero(c) });
    u.mul(&d).mul(&u.inverse().unwrap())
}

#[test]
fn splitting_survives_nonconstant_idempotent() {
    // A single xy entry in U is enough to make the level-k+1 section disagree
    // with the truncated level-k splitting, so the correction term matters.
    let c = RingConfig::new(5, 2, 4).unwrap();
    let xy = TruncatedSeries::var(c, 0).mul(&TruncatedSeries::var(c, 1));
    let constant = [[0, 0, 2, 4], [0, 2, 0, 1], [2, 2, 0, 0], [2, 0, 2, 0]];
    let u = SeriesMatrix::from_fn(c, 4, 4, |i, j| {
        let k = TruncatedSeries::constant(c, constant[i][j]);
        if (i, j) == (2, 3) {
            k.add(&xy)
        } else {
            k
        }
    });
    let e = conjugated_projector(&u, 2);
    assert_eq!(e.mul(&e), e);
    let alpha = idempotent_image(&e).unwrap();
    assert!(is_formally_projective(&alpha.target).projective);
    let s = lift_splittings(&alpha).unwrap();
    assert!(s.is_valid());
    let cert = summand_certificate(&alpha.target).unwrap();
    assert!(cert.verify());
}

#[test]
fn non_free_target_is_rejected() {
    let c = RingConfig::new(3, 1, 3).unwrap();
    let p = complete_fg(&FgPresentation::cyclic(c, &[TruncatedSeries::var(c, 0).pow(2)])).unwrap();
    let report = is_formally_projective(&p);
    assert!(!report.projective);
    assert_eq!(report.per_level, vec![true, true, false, false]);
    assert!(summand_certificate(&p).is_err());
}

#[test]
fn non_idempotent_is_rejected() {
    let c = RingConfig::new(3, 1, 2).unwrap();
    let m = SeriesMatrix::from_fn(c, 1, 1, |_, _| TruncatedSeries::var(c, 0));
    assert!(idempotent_image(&m).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_idempotents_split(
        entries in proptest::collection::vec((0u32..5, 0u32..5, 0u32..5), 16),
        rank in 0usize..=4,
    ) {
        let c = RingConfig::new(5, 2, 4).unwrap();
        let (x, y) = (TruncatedSeries::var(c, 0), TruncatedSeries::var(c, 1));
        let mut u = SeriesMatrix::from_fn(c, 4, 4, |i, j| {
            let (a, b, k) = entries[4 * i + j];
            TruncatedSeries::constant(c, k).add(&x.scale(a)).add(&y.mul(&x).scale(b))
        });
        if !u.constant_part().is_invertible() {
            u = u.add(&SeriesMatrix::identity(c, 4).sub(&SeriesMatrix::from_fn(c, 4, 4, |i, j| TruncatedSeries::constant(c, u.constant_part().get(i, j)))));
        }
        let e = conjugated_projector(&u, rank);
        let alpha = idempotent_image(&e).unwrap();
        let s = lift_splittings(&alpha).unwrap();
        prop_assert!(s.is_valid());
        prop_assert_eq!(alpha.target.level(0).dim(), rank);
    }
}
