use adic_core::fgcomplex::FgComplex;
use adic_core::koszul::koszul_vars;
use adic_core::nakayama::{
    completeness_certificate, conservativity_probe, example_complex, example_diagnostic, free_to_complete, kunneth_top, nakayama_generators,
    nakayama_generators_windowed, AdicFreeComplex, ComplexInput, CompletenessVerdict,
};
use adic_core::tower::FgPresentation;
use adic_core::{AdicError, RingConfig, SeriesMatrix, TruncatedSeries};

#[test]
fn koszul_complex_top_cohomology_has_one_generator() {
    for n in 1..=2 {
        let c = RingConfig::new(3, n, 4).unwrap();
        let p = AdicFreeComplex::from_free(koszul_vars(c).complex).unwrap();
        let g = nakayama_generators(&p, 0).unwrap();
        assert_eq!(g.l0_dim, 1);
        assert_eq!(g.generators.cols(), 1);
        assert!(g.verified());
        assert!(!g.window_dependent);
    }
}

#[test]
fn sup_mismatch_is_reported() {
    let c = RingConfig::new(3, 1, 3).unwrap();
    let p = AdicFreeComplex::from_free(koszul_vars(c).complex).unwrap();
    assert!(matches!(nakayama_generators(&p, -1), Err(AdicError::Precondition(_))));
}

#[test]
fn windowed_example_has_cyclic_top_cohomology() {
    // The cokernel of δ_i ↦ δ_i − t·δ_{i+1} on a window is free of rank one on δ_w.
    let c = RingConfig::new(5, 1, 5).unwrap();
    let g = nakayama_generators_windowed(|w| example_complex(c, w), 6, 0).unwrap();
    assert_eq!(g.l0_dim, 1);
    assert!(g.verified());
    assert!(g.window_dependent);
    let p = example_complex(c, 6).unwrap();
    assert_eq!(completeness_certificate(ComplexInput::AdicFree(&p)).verdict, CompletenessVerdict::AdicallyFreeTerms);
}

#[test]
fn growing_top_cohomology_is_not_finitely_generated() {
    // Zero differential: L₀ grows with the window.
    let c = RingConfig::new(3, 1, 3).unwrap();
    let build = |w: usize| {
        let d = SeriesMatrix::zeros(c, w, w);
        AdicFreeComplex::windowed(
            c,
            -1,
            vec![d],
            vec![adic_core::tower::IndexSet::Countable { window: w }, adic_core::tower::IndexSet::Countable { window: w }],
        )
    };
    assert!(matches!(nakayama_generators_windowed(build, 3, 0), Err(AdicError::NotFinitelyGenerated(3))));
}

#[test]
fn example_diagnostic_is_injective_at_every_level() {
    let r = example_diagnostic(RingConfig::new(5, 1, 4).unwrap(), 8).unwrap();
    assert_eq!(r.injective, vec![true; 5]);
    assert!(r.divisible.iter().all(|&b| b));
    assert!(r.h0_dims.iter().enumerate().all(|(k, &d)| d == k + 1));
}

#[test]
fn free_replacement_of_a_module_completes_levelwise() {
    let c = RingConfig::new(5, 2, 4).unwrap();
    let xy = TruncatedSeries::var(c, 0).mul(&TruncatedSeries::var(c, 1));
    let m = FgComplex::concentrated(FgPresentation::cyclic(c, &[xy]), 0);
    let f = free_to_complete(&m).unwrap();
    assert!(f.sup_matches);
    assert!(f.quasi_iso);
    assert!(f.tau_levelwise.iter().all(|&b| b));
}

#[test]
fn kunneth_on_koszul_complexes() {
    let c = RingConfig::new(5, 2, 3).unwrap();
    let k = koszul_vars(c).complex;
    for level in 0..=2 {
        let l = k.realize(level).unwrap().complex;
        let w = kunneth_top(&l, &l, 0, 0).unwrap();
        assert!(w.is_isomorphism(), "level {level}: {} -> {}", w.source_dim, w.target_dim);
    }
}

#[test]
fn residue_field_is_detected_by_derived_reduction() {
    let c = RingConfig::new(3, 2, 5).unwrap();
    for m in [FgPresentation::residue_field(c), FgPresentation::free(c, 2)] {
        let r = conservativity_probe(&FgComplex::concentrated(m, 0)).unwrap();
        assert_eq!(r.sup, 0);
        assert!(r.tensor_dim > 0 && !r.witness.is_empty());
        assert_eq!(r.tensor_dim, r.top_generators);
    }
}
