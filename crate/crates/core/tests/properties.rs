use std::sync::OnceLock;

use proptest::prelude::*;
use qls_core::corpus::{klein_lambda, mixed_lambda, sweedler, taft, two_gen_lambda, z4_single_lifting};
use qls_core::frobenius::{modular_element_closed_form, nakayama, s2_closed_form};
use qls_core::hopf::{HopfElement, Lifting};

fn instances() -> &'static [Lifting] {
    static CELL: OnceLock<Vec<Lifting>> = OnceLock::new();
    CELL.get_or_init(|| vec![sweedler(), taft(3), z4_single_lifting(), two_gen_lambda(), mixed_lambda(), klein_lambda()])
}

/// A random element with small integer coefficients on a few basis monomials.
fn element(h: &Lifting, picks: &[(usize, i64)]) -> HopfElement {
    let basis = h.basis();
    picks.iter().fold(HopfElement::zero(), |acc, &(k, c)| {
        acc.add(&h.basis_element(&basis[k % basis.len()]).scale(&h.scalar(c)))
    })
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1024, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn comultiplication_is_an_algebra_map(k in 0usize..6, a in picks(), b in picks()) {
        let h = &instances()[k];
        let (a, b) = (element(h, &a), element(h, &b));
        prop_assert_eq!(h.comultiply(&h.mul(&a, &b)), h.tensor_mul(&h.comultiply(&a), &h.comultiply(&b)));
    }

    #[test]
    fn antipode_reverses_products(k in 0usize..6, a in picks(), b in picks()) {
        let h = &instances()[k];
        let (a, b) = (element(h, &a), element(h, &b));
        prop_assert_eq!(h.antipode(&h.mul(&a, &b), 1), h.mul(&h.antipode(&b, 1), &h.antipode(&a, 1)));
    }

    #[test]
    fn nakayama_and_s2_are_algebra_automorphisms(k in 0usize..6, a in picks(), b in picks()) {
        let h = &instances()[k];
        let (a, b) = (element(h, &a), element(h, &b));
        let rho = nakayama(h, &modular_element_closed_form(h), 1);
        let s2 = s2_closed_form(h);
        for f in [&rho, &s2] {
            prop_assert_eq!(f.apply(&h.mul(&a, &b)), h.mul(&f.apply(&a), &f.apply(&b)));
        }
        prop_assert_eq!(s2.apply(&a), h.antipode(&a, 2));
    }

    #[test]
    fn counit_is_multiplicative(k in 0usize..6, a in picks(), b in picks()) {
        let h = &instances()[k];
        let (a, b) = (element(h, &a), element(h, &b));
        prop_assert_eq!(h.counit(&h.mul(&a, &b)), &h.counit(&a) * &h.counit(&b));
    }
}
