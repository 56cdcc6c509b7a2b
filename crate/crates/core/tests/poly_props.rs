use knot_cluster::{LaurentPoly, Vars};
use num_bigint::BigInt;
use proptest::prelude::*;

const VARS: Vars = Vars::XY(2);

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, 4), -5i64..=5), 0..6)
        .prop_map(|ts| LaurentPoly::from_terms(VARS, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(VARS), a.clone());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_and_json_round_trip(a in poly()) {
        prop_assert_eq!(LaurentPoly::parse(VARS, &a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(LaurentPoly::parse(VARS, &a.to_tex()).unwrap(), a.clone());
        prop_assert_eq!(LaurentPoly::from_json(VARS, &a.to_json()).unwrap(), a);
    }

    #[test]
    fn shift_is_monomial_multiplication(a in poly(), s in prop::collection::vec(-3i32..=3, 4)) {
        let m = LaurentPoly::monomial(VARS, s.clone(), 1);
        prop_assert_eq!(a.shift(&s), &a * &m);
    }
}

#[test]
fn canonical_text() {
    let p = LaurentPoly::parse(Vars::Y(12), "y_1y_4 + y_{12} + 1 + y_1").unwrap();
    assert_eq!(p.to_string(), "1 + y1 + y12 + y1*y4");
    assert_eq!(p.to_tex(), "1+y_1+y_{12}+y_1y_4");
    assert!(LaurentPoly::parse(Vars::Y(3), "y4").is_err());
    assert!(LaurentPoly::parse(Vars::Y(3), "1 +").is_err());
}
