use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lienil::codec::{decode_matrix, encode_matrix, ElementCodec};
use lienil::dets::{ldet, preadjoint, preadjoint_by_minors, rdet, sdet, sdet_composed_form};
use lienil::grassmann::Grassmann;
use lienil::matrices::{is_transitive, Matrix, TransitiveMatrix};
use lienil::rings::{Ring, SampleRing};
use lienil::scalars::CyclotomicField;
use lienil::supermatrix::{example_algebra, ExampleKind};

fn random_matrix(e: &Grassmann, n: usize, seed: u64) -> Matrix<lienil::grassmann::GrassmannElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(n, n, |_, _| e.random_element(&mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn grassmann_products_associate(seed in any::<u64>()) {
        let e = Grassmann::rational(6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (e.random_element(&mut rng), e.random_element(&mut rng), e.random_element(&mut rng));
        prop_assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
        prop_assert_eq!(e.decode(&e.encode(&x)).unwrap(), x);
    }

    #[test]
    fn minors_and_trace_symmetry(seed in any::<u64>(), n in 1usize..=3) {
        let e = Grassmann::rational(6);
        let a = random_matrix(&e, n, seed);
        let adj = preadjoint(&e, &a).unwrap();
        let s = sdet(&e, &a).unwrap();
        prop_assert_eq!(&adj, &preadjoint_by_minors(&e, &a).unwrap());
        prop_assert_eq!(&s, &sdet_composed_form(&e, &a).unwrap());
        prop_assert_eq!(&a.mul(&e, &adj).unwrap().trace(&e).unwrap(), &s);
        prop_assert_eq!(&adj.mul(&e, &a).unwrap().trace(&e).unwrap(), &s);
        prop_assert_eq!(decode_matrix(&e, &encode_matrix(&e, &a)).unwrap(), a);
    }

    #[test]
    fn determinant_recursions(seed in any::<u64>(), n in 1usize..=3) {
        let e = Grassmann::rational(5);
        let a = random_matrix(&e, n, seed);
        let adj = preadjoint(&e, &a).unwrap();
        prop_assert_eq!(rdet(&e, &a, 2).unwrap(), rdet(&e, &a.mul(&e, &adj).unwrap(), 1).unwrap());
        prop_assert_eq!(ldet(&e, &a, 2).unwrap(), ldet(&e, &adj.mul(&e, &a).unwrap(), 1).unwrap());
    }

    #[test]
    fn transitive_from_units(seed in any::<u64>(), n in 1usize..=4) {
        let f = CyclotomicField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let units: Vec<_> = (0..n).map(|_| f.random_unit(&mut rng)).collect();
        let t = TransitiveMatrix::from_units(&f, &units).unwrap();
        prop_assert!(is_transitive(&f, t.matrix()));
        prop_assert!(t.square(&f).is_ok());
    }

    #[test]
    fn preadjoint_and_determinants_stay_in_the_algebra(seed in any::<u64>(), which in 0usize..3) {
        let kind = [ExampleKind::EvenOdd, ExampleKind::RootOfUnity, ExampleKind::Conjugation][which];
        let ex = example_algebra(kind, 2, 1, 4).unwrap();
        let a = ex.shape.sample(&mut ChaCha8Rng::seed_from_u64(seed));
        let e = ex.spec.ring();
        prop_assert!(ex.spec.is_supermatrix(&preadjoint(e, &a).unwrap()).unwrap());
        for k in 1..=2 {
            prop_assert!(ex.spec.delta().fixes(&rdet(e, &a, k).unwrap()));
            prop_assert!(ex.spec.delta().fixes(&ldet(e, &a, k).unwrap()));
        }
    }
}
