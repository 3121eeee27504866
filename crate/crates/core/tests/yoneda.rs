use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadalg::constructions::{build_b, build_c, BVariant};
use quadalg::freealg::{MonomialOrder, Presentation};
use quadalg::gbasis::buchberger_truncated;
use quadalg::grading::GradedAlgebra;
use quadalg::par::ExecMode;
use quadalg::resolution::{minimal_resolution, Resolution, ResolutionOptions};
use quadalg::scalar::{Field, PrimeField};
use quadalg::yoneda::{generation_profile, lift_cocycle, slots, yoneda_product, ExtClass, YonedaError};

fn resolve(p: &Presentation<PrimeField>, imax: usize, jmax: u32, keep: bool) -> Resolution<PrimeField> {
    let alg = GradedAlgebra::new(buchberger_truncated(p, MonomialOrder::DegLex, jmax).unwrap());
    let opts = ResolutionOptions {
        mode: ExecMode::Parallel,
        keep_solvers: keep,
    };
    minimal_resolution(&alg, imax, jmax, opts).unwrap()
}

fn c5() -> Resolution<PrimeField> {
    resolve(&build_c(&PrimeField::default(), 5).unwrap(), 6, 8, true)
}

fn random_class(res: &Resolution<PrimeField>, i: usize, j: u32, rng: &mut ChaCha8Rng) -> ExtClass<u32> {
    let n = slots(res, i, j).len();
    ExtClass {
        i,
        j,
        coords: (0..n).map(|_| rng.gen_range(0..32003)).collect(),
    }
}

fn combine(f: &PrimeField, a: u32, x: &ExtClass<u32>, b: u32, y: &ExtClass<u32>) -> ExtClass<u32> {
    ExtClass {
        i: x.i,
        j: x.j,
        coords: x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(p, q)| f.add(&f.mul(&a, p), &f.mul(&b, q)))
            .collect(),
    }
}

#[test]
fn unit_acts_trivially() {
    let res = c5();
    let f = res.algebra().field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let one = ExtClass::unit(&f);
    for (i, j) in [(1, 1), (2, 2), (5, 6)] {
        let e = random_class(&res, i, j, &mut rng);
        assert_eq!(yoneda_product(&one, &e, &res).unwrap(), e);
        assert_eq!(yoneda_product(&e, &one, &res).unwrap(), e);
    }
}

#[test]
fn product_is_bilinear() {
    let res = c5();
    let f = res.algebra().field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let (x, y) = (random_class(&res, 1, 1, &mut rng), random_class(&res, 1, 1, &mut rng));
        let z = random_class(&res, 2, 2, &mut rng);
        let (a, b) = (rng.gen_range(0..32003), rng.gen_range(0..32003));
        let lhs = yoneda_product(&combine(&f, a, &x, b, &y), &z, &res).unwrap();
        let rhs = combine(
            &f,
            a,
            &yoneda_product(&x, &z, &res).unwrap(),
            b,
            &yoneda_product(&y, &z, &res).unwrap(),
        );
        assert_eq!(lhs, rhs);
        let lhs = yoneda_product(&z, &combine(&f, a, &x, b, &y), &res).unwrap();
        let rhs = combine(
            &f,
            a,
            &yoneda_product(&z, &x, &res).unwrap(),
            b,
            &yoneda_product(&z, &y, &res).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn product_is_associative() {
    let res = c5();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let x = random_class(&res, 1, 1, &mut rng);
        let y = random_class(&res, 1, 1, &mut rng);
        let z = random_class(&res, 2, 2, &mut rng);
        let xy_z = yoneda_product(&yoneda_product(&x, &y, &res).unwrap(), &z, &res).unwrap();
        let x_yz = yoneda_product(&x, &yoneda_product(&y, &z, &res).unwrap(), &res).unwrap();
        assert_eq!(xy_z, x_yz);
        assert!(xy_z.coords.iter().any(|c| *c != 0));
    }
}

#[test]
fn lifts_are_chain_maps() {
    let res = c5();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (i, j, stages) in [(1, 1, 5), (2, 2, 4), (3, 3, 3), (5, 6, 1)] {
        let e = random_class(&res, i, j, &mut rng);
        let lift = lift_cocycle(&e, &res, stages).unwrap();
        assert_eq!(lift.check(&res).unwrap(), None, "({i},{j})");
    }
}

#[test]
fn new_generators_of_b_and_c() {
    let f = PrimeField::default();
    let res = resolve(&build_b(&f, BVariant::Full).unwrap(), 5, 8, true);
    let prof = generation_profile(&res, ExecMode::Parallel).unwrap();
    assert_eq!(prof.generator_bidegrees(), vec![(1, 1), (4, 5)]);
    for m in [5, 6] {
        let res = resolve(&build_c(&f, m).unwrap(), m + 1, m as u32 + 3, true);
        let prof = generation_profile(&res, ExecMode::Sequential).unwrap();
        assert_eq!(prof.generator_bidegrees(), vec![(1, 1), (m, m as u32 + 1)]);
        for &(i, span, b) in &prof.diagonal {
            assert_eq!(span, b, "m = {m}, i = {i}");
        }
    }
}

#[test]
fn errors() {
    let f = PrimeField::default();
    let p = build_c(&f, 5).unwrap();
    let res = resolve(&p, 3, 4, false);
    let e = ExtClass::basis(&res, 1, 1, 0);
    assert!(matches!(yoneda_product(&e, &e, &res), Err(YonedaError::NoSolvers)));
    let res = resolve(&p, 3, 4, true);
    let bad = ExtClass {
        i: 1,
        j: 1,
        coords: vec![1],
    };
    assert!(matches!(yoneda_product(&bad, &bad, &res), Err(YonedaError::BadClass { .. })));
    let e3 = ExtClass::basis(&res, 3, 3, 0);
    assert!(matches!(yoneda_product(&e3, &e, &res), Err(YonedaError::OutOfBounds { .. })));
}
