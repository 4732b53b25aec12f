use adic_core::base::binomial;
use adic_core::fgcomplex::FgComplex;
use adic_core::koszul::{ext_a0, koszul, koszul_vars, telescope_gamma, TelescopeCohomology};
use adic_core::resolve::resolve_free_fg;
use adic_core::tower::{gamma_torsion, FgPresentation};
use adic_core::{RingConfig, SeriesMatrix, TruncatedSeries};

fn power_ci(c: RingConfig, a: usize, b: usize) -> FgPresentation {
    FgPresentation::cyclic(c, &[TruncatedSeries::var(c, 0).pow(a), TruncatedSeries::var(c, 1).pow(b)])
}

fn cyclic(c: RingConfig, f: TruncatedSeries) -> FgPresentation {
    FgPresentation::new(SeriesMatrix::from_fn(c, 1, 1, |_, _| f.clone()))
}

#[test]
fn ext_of_residue_field_into_artinian_complete_intersections() {
    // Koszul cohomology of (x, y) on A/(x^a, y^b): socle, Euler characteristic 0, top M/𝔪M.
    let c = RingConfig::new(5, 2, 6).unwrap();
    for (a, b) in [(1, 1), (1, 2), (2, 2)] {
        let m = FgComplex::concentrated(power_ci(c, a, b), 0);
        let dims: Vec<usize> = (0..=2).map(|j| ext_a0(&m, j).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 2, 1], "a={a} b={b}");
    }
}

#[test]
fn degenerate_sequence_has_lower_cohomology() {
    let c = RingConfig::new(5, 2, 4).unwrap();
    let k = koszul(&[TruncatedSeries::var(c, 0), TruncatedSeries::zero(c)]).unwrap();
    // K(x, 0) = K(x) ⊗ K(0): d^{-2} is injective, and H^{-1} ≅ A/(x) survives.
    let prof = k.complex.stable_profile().unwrap();
    assert_eq!(prof.get(-2).unwrap().dim(), 0);
    assert!(prof.get(-1).unwrap().dim() > 0);
    let regular = koszul_vars(c).complex.stable_profile().unwrap();
    assert_eq!(regular.get(-1).unwrap().dim(), 0);
    assert_eq!(regular.get(-2).unwrap().dim(), 0);
}

#[test]
fn betti_numbers_of_complete_intersections() {
    let c = RingConfig::new(3, 2, 6).unwrap();
    let r = resolve_free_fg(&power_ci(c, 2, 1), 2).unwrap();
    assert!(r.complete);
    let ranks: Vec<usize> = (-2..=0).map(|i| r.complex.rank(i)).collect();
    assert_eq!(ranks, vec![1, 2, 1]);
    let xy = TruncatedSeries::var(c, 0).mul(&TruncatedSeries::var(c, 1));
    let h = resolve_free_fg(&cyclic(c, xy), 2).unwrap();
    assert!(h.complete);
    assert_eq!((h.complex.lo(), h.complex.rank(-1), h.complex.rank(0)), (-1, 1, 1));
}

#[test]
fn derived_tensor_of_residue_field_is_exterior_algebra() {
    for n in 1..=3 {
        let c = RingConfig::new(3, n, 4).unwrap();
        let k = FgComplex::concentrated(FgPresentation::residue_field(c), 0);
        let t = adic_core::koszul::derived_tensor_a0(&k).unwrap();
        let prof = t.stable_profile().unwrap();
        for j in 0..=n {
            assert_eq!(prof.get(-(j as i32)).unwrap().dim(), binomial(n, j), "n={n} j={j}");
        }
    }
}

fn stage_dims(h: &[TelescopeCohomology], q: i32) -> Vec<usize> {
    h.iter().find(|x| x.degree == q).map_or(vec![], |x| x.stage_dims.clone())
}

#[test]
fn telescope_is_additive() {
    let c = RingConfig::new(5, 1, 8).unwrap();
    let x = TruncatedSeries::var(c, 0);
    let m = cyclic(c, x.pow(2));
    let a = FgPresentation::free(c, 1);
    let read = |p: &FgPresentation| {
        let tel = telescope_gamma(&FgComplex::concentrated(p.clone(), 0), 3).unwrap();
        tel.cohomology(4).unwrap()
    };
    let (hm, ha, hs) = (read(&m), read(&a), read(&m.direct_sum(&a)));
    for q in 0..=1 {
        let sum: Vec<usize> = stage_dims(&hm, q).iter().zip(stage_dims(&ha, q)).map(|(u, v)| u + v).collect();
        assert_eq!(stage_dims(&hs, q), sum, "q={q}");
    }
}

#[test]
fn gamma_matches_telescope_in_degree_zero() {
    let c = RingConfig::new(5, 1, 8).unwrap();
    let x = TruncatedSeries::var(c, 0);
    let cases = [(cyclic(c, x.pow(2)), 2), (FgPresentation::free(c, 1), 0), (cyclic(c, x.pow(3)).direct_sum(&FgPresentation::free(c, 1)), 3)];
    for (m, want) in cases {
        let g = gamma_torsion(&m).unwrap();
        assert_eq!(g.module.dim(), want);
        let tel = telescope_gamma(&FgComplex::concentrated(m.clone(), 0), 4).unwrap();
        let h0 = tel.cohomology(4).unwrap().into_iter().find(|h| h.degree == 0).unwrap();
        // Stage t reads ker 𝔞^t; by the last stage the chain has stabilized.
        assert_eq!(*h0.ranks_into_top.last().unwrap(), want);
        assert!(h0.ranks_into_top.windows(2).all(|w| w[0] <= w[1]));
    }
}
