//! Ring axioms and canonicalization properties of the scalar ring.

use proptest::prelude::*;

use wres_core::sym::{canonicalize, q, vars, ScalarPoly, Symbol};

const N: u8 = 4;

fn arb_symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        Just(Symbol::ScalarCurv),
        Just(Symbol::FnF),
        Just(Symbol::FnG),
        (1u8..=4).prop_map(Symbol::OneForm),
        (1u8..=4, 1u8..=4).prop_filter_map("skip zero", |(k, l)| {
            match canonicalize(Symbol::TwoForm(k, l), N).ok()? {
                (_, Some(rep)) => Some(rep),
                _ => None,
            }
        }),
        (1u8..=4, 1u8..=4, 1u8..=4, 1u8..=4).prop_filter_map("skip zero", |(i, j, s, t)| {
            match canonicalize(Symbol::Riemann(i, j, s, t), N).ok()? {
                (_, Some(rep)) => Some(rep),
                _ => None,
            }
        }),
        Just(Symbol::HPrime0),
        Just(Symbol::ImagUnit),
    ]
}

fn arb_poly() -> impl Strategy<Value = ScalarPoly> {
    prop::collection::vec((arb_symbol(), 1u32..=2, -4i64..=4), 0..4).prop_map(|terms| {
        let mut p = ScalarPoly::zero();
        for (sym, exp, coeff) in terms {
            let t = ScalarPoly::var_pow(sym, exp as i32).scale(&q(coeff, 1));
            p = &p + &t;
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn derive_commutes_with_addition(a in arb_poly(), b in arb_poly(), j in 1u8..=4) {
        let left = (&a + &b).derive(j, N);
        let right = match (a.derive(j, N), b.derive(j, N)) {
            (Ok(da), Ok(db)) => Ok(&da + &db),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        prop_assert_eq!(left, right);
    }

    #[test]
    fn second_derivatives_commute(a in arb_poly(), j in 1u8..=4, k in 1u8..=4) {
        let jk = a.derive(j, N).and_then(|p| p.derive(k, N));
        let kj = a.derive(k, N).and_then(|p| p.derive(j, N));
        prop_assert_eq!(jk, kj);
    }

    #[test]
    fn canonicalize_is_idempotent_and_sign_consistent(
        i in 1u8..=4, j in 1u8..=4, s in 1u8..=4, t in 1u8..=4
    ) {
        let (sign, rep) = canonicalize(Symbol::Riemann(i, j, s, t), N).unwrap();
        if let Some(rep) = rep {
            let (sign2, rep2) = canonicalize(rep.clone(), N).unwrap();
            prop_assert_eq!(sign2, 1);
            prop_assert_eq!(rep2, Some(rep));
            prop_assert!(sign == 1 || sign == -1);
        } else {
            prop_assert_eq!(sign, 0);
        }
    }

    #[test]
    fn two_form_antisymmetry_is_a_ring_identity(k in 1u8..=4, l in 1u8..=4) {
        let forward = vars::a(k, l, N);
        let backward = vars::a(l, k, N);
        prop_assert_eq!(forward.clone(), -backward);
        if k == l {
            prop_assert!(forward.is_zero());
        }
    }
}
