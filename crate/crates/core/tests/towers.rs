use adic_core::tower::{complete_fg, completion_of_free, gamma_torsion, hom_into_complete, tau_bijective_at, FgPresentation};
use adic_core::{RingConfig, SeriesMatrix, TruncatedSeries};
use proptest::prelude::*;

fn power_ci(c: RingConfig, a: usize, b: usize) -> FgPresentation {
    FgPresentation::cyclic(c, &[TruncatedSeries::var(c, 0).pow(a), TruncatedSeries::var(c, 1).pow(b)])
}

/// Monomials `x^i y^j` with `i < a`, `j < b` and total degree at most `k`.
fn staircase_count(a: usize, b: usize, k: usize) -> usize {
    (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).filter(|(i, j)| i + j <= k).count()
}

#[test]
fn completion_levels_count_staircase_monomials() {
    let c = RingConfig::new(3, 2, 5).unwrap();
    for a in 1..=3 {
        for b in 1..=3 {
            let t = complete_fg(&power_ci(c, a, b)).unwrap();
            t.check_invariants().unwrap();
            let want: Vec<usize> = (0..=5).map(|k| staircase_count(a, b, k)).collect();
            assert_eq!(t.dims(), want, "a={a} b={b}");
        }
    }
}

#[test]
fn completion_of_free_module_is_decaying_free() {
    let c = RingConfig::new(5, 2, 3).unwrap();
    for size in 0..=3 {
        assert!(completion_of_free(c, size).unwrap().iter().all(|&b| b));
    }
}

#[test]
fn transitions_are_surjective() {
    let c = RingConfig::new(5, 1, 6).unwrap();
    let x = TruncatedSeries::var(c, 0);
    let m = FgPresentation::cyclic(c, &[x.pow(4)]).direct_sum(&FgPresentation::free(c, 1));
    let t = complete_fg(&m).unwrap();
    for k in 0..6 {
        assert_eq!(t.transition(k).rank(), t.level(k).dim());
    }
}

#[test]
fn gamma_of_mixed_module_is_its_torsion_part() {
    let c = RingConfig::new(5, 2, 7).unwrap();
    let m = power_ci(c, 2, 2).direct_sum(&FgPresentation::free(c, 1));
    let g = gamma_torsion(&m).unwrap();
    assert_eq!(g.module.dim(), 4);
}

#[test]
fn hom_into_completion_agrees_with_hom_from_completion() {
    let c = RingConfig::new(3, 2, 3).unwrap();
    let target = complete_fg(&power_ci(c, 2, 3)).unwrap();
    for m in [power_ci(c, 1, 2), FgPresentation::free(c, 2), FgPresentation::residue_field(c)] {
        let h = hom_into_complete(&m, &target).unwrap();
        assert!(h.agrees.iter().all(|&b| b));
    }
    // Hom(A, N) = N levelwise.
    let h = hom_into_complete(&FgPresentation::free(c, 1), &target).unwrap();
    let dims: Vec<usize> = h.levels.iter().map(|l| l.dim()).collect();
    assert_eq!(dims, target.dims());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_is_bijective_on_random_presentations(
        coeffs in proptest::collection::vec((0usize..3, 0usize..3, 0u32..5), 1..6),
        rows in 1usize..=2,
        k in 0usize..=3,
    ) {
        let c = RingConfig::new(5, 2, 3).unwrap();
        let entry = |shift: usize| {
            let mut s = TruncatedSeries::zero(c);
            for (i, (a, b, v)) in coeffs.iter().enumerate() {
                if (i + shift).is_multiple_of(2) {
                    let m = TruncatedSeries::var(c, 0).pow(*a).mul(&TruncatedSeries::var(c, 1).pow(*b)).scale(*v);
                    s = s.add(&m);
                }
            }
            s
        };
        let rels = SeriesMatrix::from_fn(c, rows, 2, |r, col| entry(r + col));
        let m = FgPresentation::new(rels);
        let w = tau_bijective_at(&m, k).unwrap();
        prop_assert!(w.bijective, "level {}: {} vs {}", k, w.source_dim, w.target_dim);
    }
}
