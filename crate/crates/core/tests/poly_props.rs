use proptest::prelude::*;

use smoothlocus::cli::parse_polynomial;
use smoothlocus::poly::{Coefficient, FieldSpec, Monomial, MonomialOrder, PolyRing, Polynomial};

const N: usize = 3;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::PrimeField(7))]
}

fn coeff(field: FieldSpec, num: i64, den: i64) -> Coefficient {
    match field {
        FieldSpec::Rationals => field.from_fraction(&num.into(), &den.into()).unwrap(),
        FieldSpec::PrimeField(_) => field.from_i64(num),
    }
}

fn poly_in(field: FieldSpec) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0u32..3, N), -4i64..=4, 1i64..=3);
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        let ring = PolyRing::new(field, N);
        Polynomial::from_terms(
            ring,
            ts.into_iter()
                .map(|(e, a, b)| (Monomial(e), coeff(field, a, b))),
        )
        .unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    field_strategy().prop_flat_map(|f| (poly_in(f), poly_in(f), poly_in(f)))
}

fn point(field: FieldSpec) -> impl Strategy<Value = Vec<Coefficient>> {
    prop::collection::vec((-5i64..=5, 1i64..=4), N)
        .prop_map(move |v| v.into_iter().map(|(a, b)| coeff(field, a, b)).collect())
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, N).prop_map(Monomial)
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::GrevLex),
        Just(MonomialOrder::Lex),
        (1usize..N).prop_map(MonomialOrder::Block)
    ]
}

proptest! {
    #[test]
    fn ring_axioms((p, q, r) in triple()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn terms_stay_canonical((p, q, _r) in triple()) {
        let prod = &p * &q;
        let ms: Vec<&Monomial> = prod.terms().iter().map(|(m, _)| m).collect();
        for w in ms.windows(2) {
            prop_assert_eq!(MonomialOrder::GrevLex.cmp(w[0], w[1]), std::cmp::Ordering::Greater);
        }
        prop_assert!(prod.terms().iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn derivative_is_a_derivation((p, q, _r) in triple(), j in 0..N) {
        let lhs = (&p * &q).partial_derivative(j).unwrap();
        let rhs = &(&p.partial_derivative(j).unwrap() * &q) + &(&p * &q.partial_derivative(j).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        (p, q, pt) in field_strategy().prop_flat_map(|f| (poly_in(f), poly_in(f), point(f)))
    ) {
        let ep = p.evaluate(&pt).unwrap();
        let eq = q.evaluate(&pt).unwrap();
        prop_assert_eq!((&p * &q).evaluate(&pt).unwrap(), &ep * &eq);
        prop_assert_eq!((&p + &q).evaluate(&pt).unwrap(), &ep + &eq);
    }

    #[test]
    fn exact_division_inverts_multiplication((p, q, _r) in triple()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
    }

    #[test]
    fn printing_round_trips((p, _q, _r) in triple()) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let text = p.display(&names).to_string();
        prop_assert_eq!(parse_polynomial(&text, p.field(), &names, 1, 1).unwrap(), p);
    }

    #[test]
    fn orders_are_monomial_orders(a in monomial(), b in monomial(), c in monomial(), ord in order()) {
        use std::cmp::Ordering::*;
        prop_assert_eq!(ord.cmp(&a, &b) == Equal, a == b);
        prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
        prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ord.cmp(&a, &b));
        prop_assert_ne!(ord.cmp(&Monomial::one(N), &a), Greater);
    }
}
