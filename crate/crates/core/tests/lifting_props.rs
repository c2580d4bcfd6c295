use graph_curves::lifting::{
    cmp_valuation, fiber_at_h0, homogenize_weight, initial_form, standard_weight, x_monomial, ValuedPolynomial,
    ValuedScalar,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::cmp::Ordering;

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar() -> impl Strategy<Value = ValuedScalar> {
    prop::collection::vec((rational(), rational()), 0..5).prop_map(ValuedScalar::from_terms)
}

/// Integral coefficients with integer exponents in `0..=max_exp`.
fn integral_scalar(max_exp: i64) -> impl Strategy<Value = ValuedScalar> {
    prop::collection::vec((0..=max_exp, -9i64..=9), 1..4).prop_map(|pairs| {
        ValuedScalar::from_terms(
            pairs
                .into_iter()
                .map(|(e, c)| (BigRational::from_integer(e.into()), BigRational::from_integer(c.into()))),
        )
    })
}

/// Integral polynomials in three variables with some coefficient of valuation zero.
fn integral_poly() -> impl Strategy<Value = ValuedPolynomial> {
    let term = (prop::collection::vec(0u32..3, 3), integral_scalar(6));
    (
        prop::collection::vec(term, 1..6),
        prop::collection::vec(0u32..3, 3),
        1i64..=9,
    )
        .prop_map(|(terms, m0, c0)| {
            let mut p = ValuedPolynomial::zero(3);
            for (x, c) in terms {
                p.add_term(x_monomial(x), c);
            }
            // force a unit coefficient so the special fiber is nonzero
            let unit = ValuedScalar::constant(BigRational::from_integer(c0.into()));
            let m = x_monomial(m0);
            let old = p.coefficient(&m);
            let fixed = if old
                .valuation()
                .is_some_and(|v| *v == BigRational::from_integer(0.into()))
            {
                old
            } else {
                &old + &unit
            };
            p.with_coefficient(&m, fixed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn valuation_axioms(a in scalar(), b in scalar()) {
        let (va, vb) = (a.valuation().cloned(), b.valuation().cloned());
        let prod = &a * &b;
        match (&va, &vb) {
            (Some(x), Some(y)) => prop_assert_eq!(prod.valuation().cloned(), Some(x + y)),
            _ => prop_assert!(prod.is_zero()),
        }
        let sum = &a + &b;
        let min = if cmp_valuation(va.as_ref(), vb.as_ref()) == Ordering::Greater { vb.clone() } else { va.clone() };
        prop_assert_ne!(cmp_valuation(sum.valuation(), min.as_ref()), Ordering::Less);
        if va != vb {
            prop_assert_eq!(sum.valuation().cloned(), min);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn special_fiber_is_the_initial_form(f in integral_poly()) {
        let w = standard_weight(3);
        let h = homogenize_weight(&f, &w).unwrap();
        prop_assert!(h.poly.is_weight_homogeneous());
        prop_assert_eq!(fiber_at_h0(&h).unwrap(), initial_form(&f, &w).unwrap());
        prop_assert_eq!(h.poly.at_h_one(), f);
    }
}
