use num_traits::Signed;
use proptest::prelude::*;
use tracegate_core::arith::{int, poly_discriminant, rat, Integer, Rational};
use tracegate_core::ideal::{decompose_prime, valuation, FractionalIdeal};
use tracegate_core::{round2, NumberField};

fn fields() -> Vec<NumberField> {
    [
        &[-1i64, -1, 1][..],
        &[1, 0, 1],
        &[-1, -1, 0, 1],
        &[-8, -2, -1, 1],
        &[-2, 0, 0, 0, 1],
        &[1, 0, 5, 0, 1, 0, 1],
    ]
    .iter()
    .map(|c| NumberField::from_i64(c).unwrap())
    .collect()
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn element_strategy() -> impl Strategy<Value = (usize, Vec<Rational>, Vec<Rational>)> {
    (0usize..6).prop_flat_map(|i| {
        let d = fields()[i].degree();
        (Just(i), prop::collection::vec(small_rat(), d), prop::collection::vec(small_rat(), d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_is_linear_and_norm_multiplicative((i, a, b) in element_strategy(), k in small_rat()) {
        let f = &fields()[i];
        let (a, b) = (f.element(a), f.element(b));
        prop_assert_eq!((&a + &b).trace(), a.trace() + b.trace());
        prop_assert_eq!(a.scale(&k).trace(), a.trace() * &k);
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        prop_assert_eq!(a.trace(), a.matrix_trace());
    }

    #[test]
    fn minimal_polynomial_annihilates((i, a, _) in element_strategy()) {
        let f = &fields()[i];
        let a = f.element(a);
        let m = a.min_poly();
        prop_assert!(f.degree().is_multiple_of(m.degree().unwrap()));
        let mut acc = f.zero();
        for c in m.coeffs().iter().rev() {
            acc = &(&acc * &a) + &f.from_rational(c.clone());
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn rational_scalar_trace(i in 0usize..6, k in -50i64..50) {
        let f = &fields()[i];
        let d = f.degree() as i64;
        prop_assert_eq!(f.from_rational(rat(k, d)).trace(), rat(k, 1));
    }

    #[test]
    fn ideal_norm_is_multiplicative((i, a, b) in element_strategy()) {
        let f = &fields()[i];
        let o = round2(f).unwrap();
        let (a, b) = (f.element(a), f.element(b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ia = FractionalIdeal::principal(&o, &a).unwrap();
        let ib = FractionalIdeal::principal(&o, &b).unwrap();
        let prod = ia.mul(&ib).unwrap();
        prop_assert_eq!(prod.norm(), ia.norm() * ib.norm());
        prop_assert_eq!(ia.norm(), a.norm().abs());
        prop_assert_eq!(ia.mul(&ia.inverse().unwrap()).unwrap(), FractionalIdeal::unit(&o));
    }

    #[test]
    fn valuation_is_additive((i, a, b) in element_strategy(), p in prop::sample::select(vec![2i64, 3, 5, 13])) {
        let f = &fields()[i];
        let o = round2(f).unwrap();
        let (a, b) = (f.element(a), f.element(b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ia = FractionalIdeal::principal(&o, &a).unwrap();
        let ib = FractionalIdeal::principal(&o, &b).unwrap();
        let prod = ia.mul(&ib).unwrap();
        for q in decompose_prime(&o, &int(p)).unwrap() {
            prop_assert_eq!(
                valuation(&prod, &q).unwrap(),
                valuation(&ia, &q).unwrap() + valuation(&ib, &q).unwrap()
            );
        }
    }
}

#[test]
fn index_formula_and_splitting_degrees() {
    for f in fields() {
        let o = round2(&f).unwrap();
        assert_eq!(poly_discriminant(f.poly()), o.index() * o.index() * o.discriminant());
        assert!(o.verify_ring());
        for p in [2i64, 3, 5, 7, 11, 13] {
            let primes = decompose_prime(&o, &int(p)).unwrap();
            let sum: u32 = primes.iter().map(|q| q.e * q.f).sum();
            assert_eq!(sum as usize, f.degree());
            let norm: Rational = primes.iter().map(|q| q.ideal.norm()).product();
            let expected = Integer::from(p).pow(primes.iter().map(|q| q.f).sum::<u32>());
            assert_eq!(norm, Rational::from_integer(expected));
        }
    }
}
