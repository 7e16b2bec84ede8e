//! Algebraic properties of the Clifford engine: associativity, trace
//! cyclicity, and the antisymmetry gauge of two-form inputs.

use proptest::prelude::*;

use wres_core::clifford::Multivector;
use wres_core::gauge::{GaugeContext, PerturbationKind, PerturbationSpec};
use wres_core::perturb::{build_psi, endomorphism_e};
use wres_core::sym::{q, vars, ScalarPoly};

const N: u8 = 4;

fn arb_coeff() -> impl Strategy<Value = ScalarPoly> {
    (-3i64..=3, prop::sample::select(vec![0u8, 1, 2])).prop_map(|(c, which)| {
        let base = match which {
            0 => ScalarPoly::one(),
            1 => vars::s(),
            _ => vars::f(),
        };
        base.scale(&q(c, 1))
    })
}

fn arb_monomial() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::btree_set(1u8..=N, 0..=3).prop_map(|s| s.into_iter().collect())
}

fn arb_multivector() -> impl Strategy<Value = Multivector> {
    prop::collection::vec((arb_monomial(), arb_coeff()), 0..4).prop_map(|terms| {
        let mut mv = Multivector::zero(N);
        for (mono, coeff) in terms {
            mv = &mv + &Multivector::monomial(N, &mono, coeff).unwrap();
        }
        mv
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn clifford_product_associates(
        a in arb_multivector(), b in arb_multivector(), c in arb_multivector()
    ) {
        let left = a.cliff_mul(&b).unwrap().cliff_mul(&c).unwrap();
        let right = a.cliff_mul(&b.cliff_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn trace_is_cyclic(a in arb_multivector(), b in arb_multivector()) {
        let ab = a.cliff_mul(&b).unwrap().spinor_trace();
        let ba = b.cliff_mul(&a).unwrap().spinor_trace();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn grade_projection_partitions(a in arb_multivector()) {
        let mut sum = Multivector::zero(N);
        for k in 0..=N {
            sum = &sum + &a.grade_project(k).unwrap();
        }
        prop_assert_eq!(sum, a);
    }
}

#[test]
fn two_form_input_gauge_invariance() {
    // entering the two-form through lower-triangle labels a_{lk} = -a_{kl}
    // produces the same Clifford element and the same endomorphism
    let ctx = GaugeContext::new(N).unwrap();
    let psi = build_psi(
        &PerturbationSpec::new(PerturbationKind::TwoForm { imaginary: false }),
        &ctx,
    )
    .unwrap();
    let mut relabeled = Multivector::zero(N);
    for k in 1..=N {
        for l in 1..=N {
            if k == l {
                continue;
            }
            // write the (k,l) slot via the (l,k) coefficient with a sign
            let coeff = -vars::a(l, k, N);
            let ck = Multivector::generator(N, k).unwrap();
            let cl = Multivector::generator(N, l).unwrap();
            relabeled = &relabeled + &ck.cliff_mul(&cl).unwrap().scale(&coeff);
        }
    }
    assert_eq!(psi, relabeled);
    let e = endomorphism_e(
        &PerturbationSpec::new(PerturbationKind::TwoForm { imaginary: false }),
        &ctx,
    )
    .unwrap();
    // doubled upper-triangle form gives the same element
    let mut doubled = Multivector::zero(N);
    for k in 1..=N {
        for l in (k + 1)..=N {
            let coeff = vars::a(k, l, N).scale(&q(2, 1));
            let ck = Multivector::generator(N, k).unwrap();
            let cl = Multivector::generator(N, l).unwrap();
            doubled = &doubled + &ck.cliff_mul(&cl).unwrap().scale(&coeff);
        }
    }
    assert_eq!(psi, doubled);
    assert!(!e.is_zero());
}

#[test]
fn normal_trace_selects_one_forms() {
    // Tr[c(dx_n)Ψ] vanishes for 0-, 2- and 3-form Ψ and picks -d b_n for
    // a one-form: the mixed-case boundary term is nonzero only for
    // one-forms with a normal component.
    use wres_core::perturb::build_psi;
    let ctx = GaugeContext::new(N).unwrap();
    let c4 = Multivector::generator(N, N).unwrap();
    for kind in [
        PerturbationKind::Scalar,
        PerturbationKind::TwoForm { imaginary: false },
        PerturbationKind::General { grade: 3 },
    ] {
        let psi = build_psi(&PerturbationSpec::new(kind), &ctx).unwrap();
        assert!(c4.cliff_mul(&psi).unwrap().spinor_trace().is_zero());
    }
    let one_form = build_psi(&PerturbationSpec::new(PerturbationKind::OneFormReal), &ctx).unwrap();
    let tr = c4.cliff_mul(&one_form).unwrap().spinor_trace();
    assert_eq!(tr, vars::b(N).scale(&q(-4, 1)));
}
