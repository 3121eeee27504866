use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadalg::claims::{check_b, check_c, CheckOptions};
use quadalg::constructions::{
    b_complex, build_b, build_c, c_complex, c_complex_ranks, c_complex_shifts, BVariant,
};
use quadalg::freealg::{MonomialOrder, Presentation};
use quadalg::gbasis::buchberger_truncated;
use quadalg::grading::GradedAlgebra;
use quadalg::par::ExecMode;
use quadalg::resolution::{
    koszulity_report, minimal_resolution, parse_maps, verify_complex, verify_exactness, verify_minimality,
    write_maps, KoszulVerdict, Resolution, ResolutionOptions,
};
use quadalg::scalar::{Field, PrimeField, Rationals};

fn resolve<F: Field>(p: &Presentation<F>, imax: usize, jmax: u32, mode: ExecMode) -> Resolution<F> {
    let gb = buchberger_truncated(p, MonomialOrder::DegLex, jmax).unwrap();
    let alg = GradedAlgebra::new(gb);
    let opts = ResolutionOptions {
        mode,
        keep_solvers: false,
    };
    minimal_resolution(&alg, imax, jmax, opts).unwrap()
}

/// Nonzero cells `(i, i, rank)` for `i < m` and `(m, m+1, 1)`.
fn expected_c(m: usize) -> Vec<(usize, u32, u64)> {
    let ranks = c_complex_ranks(m);
    let shifts = c_complex_shifts(m);
    (0..=m).map(|i| (i, shifts[i], ranks[i] as u64)).collect()
}

#[test]
fn c_betti_tables_match_the_explicit_complexes() {
    let f = PrimeField::default();
    for m in 5..=7 {
        let r = resolve(&build_c(&f, m).unwrap(), m + 1, m as u32 + 3, ExecMode::Parallel);
        assert_eq!(r.betti_table().nonzero(), expected_c(m), "m = {m}");
    }
}

#[test]
fn c5_over_rationals() {
    let r = resolve(&build_c(&Rationals, 5).unwrap(), 6, 8, ExecMode::Parallel);
    assert_eq!(r.betti_table().nonzero(), expected_c(5));
}

#[test]
fn b_betti_table() {
    let f = PrimeField::default();
    let r = resolve(&build_b(&f, BVariant::Full).unwrap(), 5, 8, ExecMode::Parallel);
    assert_eq!(
        r.betti_table().nonzero(),
        vec![(0, 0, 1), (1, 1, 13), (2, 2, 14), (3, 3, 7), (4, 5, 1)]
    );
    let k = koszulity_report(&r.betti_table());
    assert_eq!(k.verdict, KoszulVerdict::NotKoszul { i: 4, j: 5, dim: 1 });
}

#[test]
fn sequential_resolution_is_identical() {
    let f = PrimeField::default();
    let p = build_c(&f, 6).unwrap();
    let a = resolve(&p, 7, 9, ExecMode::Parallel);
    let b = resolve(&p, 7, 9, ExecMode::Sequential);
    for i in 1..=7 {
        assert_eq!(a.differential(i), b.differential(i), "P_{i}");
    }
}

#[test]
fn computed_resolution_verifies() {
    let f = PrimeField::default();
    let p = build_c(&f, 5).unwrap();
    let r = resolve(&p, 6, 8, ExecMode::Parallel);
    let maps: Vec<_> = (1..=6).map(|i| r.differential(i)).collect();
    assert!(verify_complex(&maps, r.algebra()).unwrap().ok);
    assert!(verify_minimality(&maps));
    let ex = verify_exactness(&maps, r.algebra(), 8, ExecMode::Parallel).unwrap();
    assert!(ex.exact, "{:?}", ex.first_failure);
}

#[test]
fn explicit_complexes_verify_and_round_trip() {
    let f = PrimeField::default();
    for m in [5, 6] {
        let p = build_c(&f, m).unwrap();
        let cx = c_complex(&p, m).unwrap();
        let text = write_maps(Some(&cx.name), &cx.maps, &p);
        let back = parse_maps(&text, &p).unwrap();
        assert_eq!(back.maps, cx.maps);
        let alg = GradedAlgebra::new(buchberger_truncated(&p, MonomialOrder::DegLex, m as u32 + 3).unwrap());
        assert!(verify_complex(&back.maps, &alg).unwrap().ok);
        assert!(verify_exactness(&back.maps, &alg, m as u32 + 3, ExecMode::Sequential).unwrap().exact);
    }
    let p = build_b(&f, BVariant::Full).unwrap();
    let cx = b_complex(&p).unwrap();
    assert_eq!(cx.ranks(), vec![1, 13, 14, 7, 1]);
    assert_eq!(cx.shifts(), vec![0, 1, 2, 3, 5]);
}

#[test]
fn truncated_complex_is_not_exact() {
    // dropping the last map leaves homology at the top
    let f = PrimeField::default();
    let p = build_c(&f, 5).unwrap();
    let cx = c_complex(&p, 5).unwrap();
    let alg = GradedAlgebra::new(buchberger_truncated(&p, MonomialOrder::DegLex, 8).unwrap());
    let ex = verify_exactness(&cx.maps[..4], &alg, 8, ExecMode::Parallel).unwrap();
    let fail = ex.first_failure.unwrap();
    assert_eq!((fail.position, fail.degree), (4, 6));
}

#[test]
fn claim_suites_pass() {
    let f = PrimeField::default();
    let r = check_b(&f, BVariant::Full, CheckOptions::default()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for m in [5, 6] {
        let r = check_c(&f, m, CheckOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.claims.iter().all(|c| c.passed), "{}", r.to_text());
    }
}

#[test]
fn short_b_is_flagged() {
    let f = PrimeField::default();
    let r = check_b(&f, BVariant::Short, CheckOptions::default()).unwrap();
    assert!(!r.passed());
    let names: Vec<&str> = r.failures().iter().map(|c| c.name.as_str()).collect();
    assert!(names.iter().any(|n| n.starts_with("Hilbert series")), "{names:?}");
}

fn random_presentation(seed: u64) -> Presentation<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut text = format!("gens {}\n", names.join(" "));
    for _ in 0..rng.gen_range(1..=3) {
        let terms: Vec<String> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let c = rng.gen_range(1..5);
                format!("{c}*{}*{}", names[rng.gen_range(0..n)], names[rng.gen_range(0..n)])
            })
            .collect();
        text.push_str(&format!("rel {};\n", terms.join(" - ")));
    }
    Presentation::parse(&text, &PrimeField::default()).unwrap_or_else(|_| random_presentation(seed + 1000))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn poincare_hilbert_identity(seed in 0u64..10_000) {
        let p = random_presentation(seed);
        let r = resolve(&p, 5, 5, ExecMode::Parallel);
        let h = r.algebra().gb().hilbert_series(5).unwrap();
        prop_assert!(r.betti_table().euler_series().mul(&h).unwrap().is_one());
    }

    #[test]
    fn resolutions_are_minimal_complexes(seed in 0u64..10_000) {
        let p = random_presentation(seed);
        let r = resolve(&p, 4, 5, ExecMode::Sequential);
        let maps: Vec<_> = (1..=4).map(|i| r.differential(i)).collect();
        prop_assert!(verify_minimality(&maps));
        prop_assert!(verify_complex(&maps, r.algebra()).unwrap().ok);
    }
}
