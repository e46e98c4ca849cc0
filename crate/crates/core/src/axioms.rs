//! Exhaustive checks of the Hopf algebra axioms on the PBW basis.
//!
//! Multiplicativity of `Δ` and `ε` and anti-multiplicativity of `S` are
//! checked on products `a·b` with `a` a generator (`x_i` or a generator of
//! `G`) and `b` any basis element. Every basis element is a product of
//! generators, so by induction this covers all products.

use serde::Serialize;

use crate::hopf::{HopfElement, Lifting, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn run(axiom: &str, cases: impl IntoIterator<Item = (String, bool)>) -> AxiomResult {
    let mut checked = 0;
    for (label, ok) in cases {
        checked += 1;
        if !ok {
            return AxiomResult { axiom: axiom.into(), checked, failure: Some(label) };
        }
    }
    AxiomResult { axiom: axiom.into(), checked, failure: None }
}

fn generators(alg: &Lifting) -> Vec<(String, HopfElement)> {
    let mut out: Vec<(String, HopfElement)> = (0..alg.rank()).map(|i| (format!("x{}", i + 1), alg.x(i))).collect();
    out.extend(
        alg.group()
            .generators()
            .into_iter()
            .map(|g| (format!("g{g}"), alg.group_element(&g))),
    );
    out
}

pub fn coassociativity(alg: &Lifting) -> AxiomResult {
    run(
        "coassociativity",
        alg.basis().into_iter().map(|m| {
            let (l, r) = alg.coassociativity_sides(&alg.comultiply(&alg.basis_element(&m)));
            (m.to_string(), l == r)
        }),
    )
}

pub fn counit_axiom(alg: &Lifting) -> AxiomResult {
    let eps = |m: &Monomial| alg.scalar(m.is_group_like() as i64);
    run(
        "counit",
        alg.basis().into_iter().map(|m| {
            let b = alg.basis_element(&m);
            let d = alg.comultiply(&b);
            let ok = alg.apply_functional_left(&d, eps) == b && alg.apply_functional_right(&d, eps) == b;
            (m.to_string(), ok)
        }),
    )
}

pub fn antipode_axiom(alg: &Lifting) -> AxiomResult {
    let s = |m: &Monomial| alg.antipode(&alg.basis_element(m), 1);
    let id = |m: &Monomial| alg.basis_element(m);
    run(
        "antipode",
        alg.basis().into_iter().map(|m| {
            let b = alg.basis_element(&m);
            let d = alg.comultiply(&b);
            let expect = alg.constant(alg.counit(&b));
            let ok = alg.contract(&d, s, id) == expect && alg.contract(&d, id, s) == expect;
            (m.to_string(), ok)
        }),
    )
}

pub fn delta_multiplicative(alg: &Lifting) -> AxiomResult {
    let gens = generators(alg);
    let basis = alg.basis();
    let unit_ok = alg.comultiply(&alg.one()) == alg.tensor_one();
    let cases = std::iter::once(("Δ(1)".to_string(), unit_ok)).chain(gens.iter().flat_map(|(name, a)| {
        let da = alg.comultiply(a);
        basis.iter().map(move |m| {
            let b = alg.basis_element(m);
            let ok = alg.comultiply(&alg.mul(a, &b)) == alg.tensor_mul(&da, &alg.comultiply(&b));
            (format!("{name} * {m}"), ok)
        })
    }));
    run("comultiplication is multiplicative", cases)
}

pub fn counit_multiplicative(alg: &Lifting) -> AxiomResult {
    let gens = generators(alg);
    let basis = alg.basis();
    let cases = gens.iter().flat_map(|(name, a)| {
        basis.iter().map(move |m| {
            let b = alg.basis_element(m);
            let ok = alg.counit(&alg.mul(a, &b)) == &alg.counit(a) * &alg.counit(&b);
            (format!("{name} * {m}"), ok)
        })
    });
    run("counit is multiplicative", cases)
}

pub fn antipode_antimultiplicative(alg: &Lifting) -> AxiomResult {
    let gens = generators(alg);
    let basis = alg.basis();
    let cases = gens.iter().flat_map(|(name, a)| {
        let sa = alg.antipode(a, 1);
        basis.iter().map(move |m| {
            let b = alg.basis_element(m);
            let ok = alg.antipode(&alg.mul(a, &b), 1) == alg.mul(&alg.antipode(&b, 1), &sa);
            (format!("{name} * {m}"), ok)
        })
    });
    run("antipode is anti-multiplicative", cases)
}

/// `(a b) c = a (b c)` for generators `a`, `b` and basis elements `c`.
pub fn associativity(alg: &Lifting) -> AxiomResult {
    let gens = generators(alg);
    let basis = alg.basis();
    let mut cases = vec![];
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let ab = alg.mul(a, b);
            for m in &basis {
                let c = alg.basis_element(m);
                let ok = alg.mul(&ab, &c) == alg.mul(a, &alg.mul(b, &c));
                cases.push((format!("{na} * {nb} * {m}"), ok));
            }
        }
    }
    run("associativity", cases)
}

/// The full suite, in a fixed order.
pub fn hopf_axiom_suite(alg: &Lifting) -> Vec<AxiomResult> {
    vec![
        associativity(alg),
        coassociativity(alg),
        counit_axiom(alg),
        antipode_axiom(alg),
        delta_multiplicative(alg),
        counit_multiplicative(alg),
        antipode_antimultiplicative(alg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    #[test]
    fn small_instances_satisfy_all_axioms() {
        for h in [sweedler(), taft(3), z4_single_lifting(), mixed_lambda(), group_algebra(&[2, 3])] {
            for r in hopf_axiom_suite(&h) {
                assert!(r.passed(), "{r:?}");
                assert!(r.checked >= h.dim());
            }
        }
    }

    #[test]
    fn run_stops_at_first_failure() {
        let r = run("t", [("a".to_string(), true), ("b".to_string(), false), ("c".to_string(), false)]);
        assert_eq!(r.checked, 2);
        assert_eq!(r.failure.as_deref(), Some("b"));
    }
}
