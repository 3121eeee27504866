use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadalg::constructions::{build_b, build_c, BVariant};
use quadalg::freealg::{MonomialOrder, NcPoly, Presentation, Word};
use quadalg::gbasis::{buchberger_truncated, buchberger_with, GbOptions, TruncatedGb};
use quadalg::par::ExecMode;
use quadalg::scalar::{Field, PrimeField, Rationals};

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
    let letters: Vec<u16> = (0..len).map(|_| rng.gen_range(0..n) as u16).collect();
    Word::new(&letters, &vec![1; n])
}

/// Random `sum c·u·r·v` of total degree `d`.
fn ideal_element(p: &Presentation<PrimeField>, rng: &mut ChaCha8Rng, d: usize) -> NcPoly<PrimeField> {
    let f = p.field();
    let n = p.num_generators();
    let mut acc = NcPoly::zero(f);
    for _ in 0..rng.gen_range(1..=4) {
        let r = &p.relations()[rng.gen_range(0..p.relations().len())];
        let a = rng.gen_range(0..=d - 2);
        let u = random_word(rng, n, a);
        let v = random_word(rng, n, d - 2 - a);
        let c = f.from_i64(rng.gen_range(1..32003));
        acc = acc.add(&r.sandwich(&u, &v).scale(&c));
    }
    acc
}

fn gb(p: &Presentation<PrimeField>, d: u32) -> TruncatedGb<PrimeField> {
    buchberger_truncated(p, MonomialOrder::DegLex, d).unwrap()
}

#[test]
fn ideal_elements_reduce_to_zero() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for p in [build_b(&f, BVariant::Full).unwrap(), build_c(&f, 5).unwrap(), build_c(&f, 6).unwrap()] {
        let g = gb(&p, 7);
        for _ in 0..200 {
            let d = rng.gen_range(2..=7);
            let x = ideal_element(&p, &mut rng, d);
            assert!(g.normal_form(&x).unwrap().is_zero());
        }
    }
}

#[test]
fn basis_elements_have_normal_tails() {
    let f = PrimeField::default();
    for p in [build_b(&f, BVariant::Full).unwrap(), build_c(&f, 7).unwrap()] {
        let g = gb(&p, 8);
        let leads: Vec<&Word> = g.leading_words().collect();
        for b in g.basis() {
            let (lead, c) = b.leading().unwrap();
            assert!(f.is_one(c));
            for (w, _) in b.terms().filter(|(w, _)| *w != lead) {
                assert!(g.is_normal(w));
            }
            // no leading word divides another
            for l in &leads {
                assert!(*l == lead || !lead.has_factor(l.letters()));
            }
        }
    }
}

#[test]
fn parallel_and_sequential_bases_agree() {
    let f = PrimeField::default();
    let p = build_c(&f, 6).unwrap();
    let a = buchberger_with(&p, MonomialOrder::DegLex, 9, GbOptions::default()).unwrap();
    let b = buchberger_with(
        &p,
        MonomialOrder::DegLex,
        9,
        GbOptions {
            mode: ExecMode::Sequential,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(a.basis(), b.basis());
}

#[test]
fn rationals_and_prime_field_agree_on_dims() {
    let pq = build_c(&Rationals, 5).unwrap();
    let pp = build_c(&PrimeField::default(), 5).unwrap();
    let gq = buchberger_truncated(&pq, MonomialOrder::DegLex, 7).unwrap();
    assert_eq!(gq.dims(7).unwrap(), gb(&pp, 7).dims(7).unwrap());
}

#[test]
fn truncation_is_reported() {
    let f = PrimeField::default();
    let g = gb(&build_b(&f, BVariant::Full).unwrap(), 4);
    assert!(g.is_complete_at(4));
    assert!(g.dims(5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in any::<u64>(), c in 1u32..32003) {
        let f = PrimeField::default();
        let p = build_c(&f, 5).unwrap();
        let g = gb(&p, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(2..=6);
        let rand_poly = |rng: &mut ChaCha8Rng| {
            NcPoly::from_terms(&f, (0..4).map(|_| (random_word(rng, 15, d), rng.gen_range(1..32003u32))))
        };
        let x = rand_poly(&mut rng);
        let y = rand_poly(&mut rng);
        let nx = g.normal_form(&x).unwrap();
        prop_assert_eq!(g.normal_form(&nx).unwrap(), nx.clone());
        prop_assert!(nx.terms().all(|(w, _)| g.is_normal(w)));
        let lhs = g.normal_form(&x.add(&y.scale(&c))).unwrap();
        let rhs = nx.add(&g.normal_form(&y).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative_in_the_quotient(seed in any::<u64>()) {
        let f = PrimeField::default();
        let p = build_b(&f, BVariant::Full).unwrap();
        let g = gb(&p, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut part = |len: usize| {
            NcPoly::from_terms(&f, (0..3).map(|_| (random_word(&mut rng, 13, len), rng.gen_range(1..32003u32))))
        };
        let (a, b, c) = (part(2), part(1), part(3));
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }
}
