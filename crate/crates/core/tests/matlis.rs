use adic_core::base::binomial;
use adic_core::fgcomplex::FgComplex;
use adic_core::koszul::telescope_gamma;
use adic_core::matlis::{
    bass_numbers, dual_of_tower, growing_window_sum, hartshorne_compare_n1, injective_hull, is_cohomologically_cofinite, matlis_dual_back, matlis_dual_fg,
    BassValue, IndTorsionModule, TorsionComplex,
};
use adic_core::tower::{complete_fg, FgPresentation};
use adic_core::{RingConfig, TruncatedSeries};

fn bass(m: &IndTorsionModule) -> Vec<BassValue> {
    bass_numbers(&TorsionComplex::from_module(m, 0)).unwrap().degrees.iter().map(|d| d.value).collect()
}

#[test]
fn injective_hull_has_a_single_bass_number() {
    for n in 1..=2 {
        let c = RingConfig::new(3, n, 5).unwrap();
        let j = injective_hull(c, 5).unwrap();
        let mut want = vec![BassValue::Finite(0); n + 1];
        want[0] = BassValue::Finite(1);
        assert_eq!(bass(&j), want, "n={n}");
    }
}

#[test]
fn residue_field_bass_numbers_are_binomial() {
    for n in 1..=2 {
        let c = RingConfig::new(5, n, 4).unwrap();
        let k = matlis_dual_fg(&FgPresentation::residue_field(c)).unwrap();
        let want: Vec<BassValue> = (0..=n).map(|q| BassValue::Finite(binomial(n, q))).collect();
        assert_eq!(bass(&k), want, "n={n}");
    }
}

#[test]
fn dual_of_cyclic_module_has_truncated_stage_dims() {
    let c = RingConfig::new(5, 1, 6).unwrap();
    for a in 1..=4 {
        let m = FgPresentation::cyclic(c, &[TruncatedSeries::var(c, 0).pow(a)]);
        let d = matlis_dual_fg(&m).unwrap();
        let want: Vec<usize> = (0..=6).map(|t| a.min(t + 1)).collect();
        assert_eq!(d.dims(), want);
        let back = matlis_dual_back(&d).unwrap();
        assert_eq!(complete_fg(&back.presentation).unwrap().dims(), complete_fg(&m).unwrap().dims());
    }
}

#[test]
fn double_dual_of_two_variable_module_recovers_levels() {
    let c = RingConfig::new(3, 2, 4).unwrap();
    let (x, y) = (TruncatedSeries::var(c, 0), TruncatedSeries::var(c, 1));
    let m = FgPresentation::cyclic(c, &[x.pow(2), x.mul(&y), y.pow(3)]).direct_sum(&FgPresentation::free(c, 1));
    let t = complete_fg(&m).unwrap();
    let back = matlis_dual_back(&dual_of_tower(&t).unwrap()).unwrap();
    assert_eq!(complete_fg(&back.presentation).unwrap().dims(), t.dims());
    assert_eq!(back.identifications.len(), 5);
}

#[test]
fn growing_window_is_flagged() {
    let c = RingConfig::new(5, 1, 6).unwrap();
    let w = growing_window_sum(c, 5).unwrap();
    let v = is_cohomologically_cofinite(&TorsionComplex::from_module(&w, 0)).unwrap();
    assert!(!v.cofinite);
    assert!(matches!(v.profile.get(0), BassValue::AtLeast(_)));
    let cmp = hartshorne_compare_n1(&w).unwrap();
    assert!(cmp.agree && !cmp.dual_verdict);
    let cmp = hartshorne_compare_n1(&injective_hull(c, 5).unwrap()).unwrap();
    assert!(cmp.agree && cmp.dual_verdict);
}

#[test]
fn local_cohomology_of_the_ring_is_the_injective_hull_in_top_degree() {
    // RΓ(A) = E[-1] over one variable, so μ₁ = 1 and μ₀ = 0.
    let c = RingConfig::new(5, 1, 9).unwrap();
    let tel = telescope_gamma(&FgComplex::concentrated(FgPresentation::free(c, 1), 0), 4).unwrap();
    let prof = bass_numbers(&TorsionComplex::Telescope(tel)).unwrap();
    assert_eq!(prof.get(0), BassValue::Finite(0));
    assert_eq!(prof.get(1), BassValue::Finite(1));
}
