use num_bigint::BigInt;
use partitions_core::cyclotomic::factor_denominator;
use partitions_core::discover::{discover_ps, Strategy as Fit};
use partitions_core::partial_fractions::partial_fractions;
use partitions_core::quasipoly::normalize_qps;
use partitions_core::series::{count_series, series_expand};
use partitions_core::{Polynomial, QuasiPolynomial, QuasiPolynomialSum, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..4).prop_map(Polynomial::from_coeffs)
}

fn quasi_polynomial() -> impl Strategy<Value = QuasiPolynomial> {
    (1usize..=6).prop_flat_map(|r| {
        prop::collection::vec(polynomial(), r).prop_map(|p| QuasiPolynomial::new(p).unwrap())
    })
}

fn qp_sum() -> impl Strategy<Value = QuasiPolynomialSum> {
    prop::collection::vec(quasi_polynomial(), 1..4).prop_map(|mut cs| {
        cs.sort_by_key(|c| c.period());
        cs.dedup_by_key(|c| c.period());
        QuasiPolynomialSum::new(0, cs).unwrap()
    })
}

fn rational_value(f: &QuasiPolynomialSum, n: u64) -> Rational {
    f.components().iter().map(|c| c.eval(&BigInt::from(n)).unwrap()).sum()
}

fn multiset() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=8, 1..6).prop_filter("sum at most 40", |s| s.iter().sum::<u64>() <= 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_periodicity(q in quasi_polynomial(), n in 0u64..200) {
        let r = q.period();
        let a = q.eval(&BigInt::from(n)).unwrap();
        let b = q.piece(n % r).eval(&Rational::from_integer(n.into()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normalization_is_idempotent_and_preserves_values(f in qp_sum()) {
        let once = normalize_qps(&f);
        prop_assert_eq!(normalize_qps(&once), once.clone());
        for n in 0..40 {
            prop_assert_eq!(rational_value(&f, n), rational_value(&once, n));
        }
    }

    #[test]
    fn partial_fractions_reconstruct_series(parts in multiset()) {
        let fact = factor_denominator(&parts).unwrap();
        let pf = partial_fractions(&Polynomial::one(), &fact).unwrap();
        let order = 3 * fact.degree() as usize;
        prop_assert_eq!(pf.series(order).unwrap(), series_expand(&Polynomial::one(), &parts, order).unwrap());
    }

    #[test]
    fn strategies_agree(parts in multiset()) {
        let a = discover_ps(&parts, Fit::PerComponent).unwrap();
        let b = discover_ps(&parts, Fit::GlobalFit).unwrap();
        prop_assert_eq!(&a.formula, &b.formula);
        let counts = count_series(&parts, 120);
        for (n, want) in counts.iter().enumerate() {
            prop_assert_eq!(&a.eval(&BigInt::from(n)).unwrap(), want);
        }
    }
}
