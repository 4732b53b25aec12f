use adic_core::base::monomial::monomials_up_to;
use adic_core::{RingConfig, SeriesMatrix, TruncatedSeries};
use proptest::prelude::*;

fn series(c: RingConfig) -> impl Strategy<Value = TruncatedSeries> {
    let monos = monomials_up_to(c.nvars(), c.precision());
    proptest::collection::vec(0..c.p(), monos.len()).prop_map(move |coeffs| TruncatedSeries::from_terms(c, monos.clone().into_iter().zip(coeffs)))
}

fn cfg() -> RingConfig {
    RingConfig::new(5, 2, 3).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in series(cfg()), b in series(cfg()), d in series(cfg())) {
        prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
        prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn units_invert(a in series(cfg())) {
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.mul(&inv), TruncatedSeries::one(cfg())),
            None => prop_assert_eq!(a.constant_term(), 0),
        }
    }

    #[test]
    fn action_matrices_are_multiplicative(a in series(cfg()), b in series(cfg()), k in 0usize..=3) {
        prop_assert_eq!(a.mul(&b).action_matrix(k), a.action_matrix(k).mul(&b.action_matrix(k)));
    }

    #[test]
    fn realization_is_multiplicative(e in proptest::collection::vec(series(cfg()), 8), k in 0usize..=3) {
        let c = cfg();
        let a = SeriesMatrix::from_entries(c, 2, 2, e[..4].to_vec()).unwrap();
        let b = SeriesMatrix::from_entries(c, 2, 2, e[4..].to_vec()).unwrap();
        prop_assert_eq!(a.mul(&b).realize(k), a.realize(k).mul(&b.realize(k)));
    }
}

#[test]
fn geometric_series() {
    let c = RingConfig::new(7, 1, 6).unwrap();
    let x = TruncatedSeries::var(c, 0);
    let inv = TruncatedSeries::one(c).sub(&x).inverse().unwrap();
    for i in 0..=6 {
        assert_eq!(inv.coeff(&adic_core::Monomial(vec![i])), 1);
    }
}

#[test]
fn dense_round_trip_respects_truncation() {
    let c = cfg();
    let f = TruncatedSeries::var(c, 0).add(&TruncatedSeries::var(c, 1).pow(3));
    let v = f.to_dense(2);
    assert_eq!(TruncatedSeries::from_dense(c, &v), f.truncate(2));
}
