use qls_core::config::InstanceConfig;
use qls_core::corpus::corpus;
use qls_core::hopf::{HopfElement, Lifting, Symbol};

fn liftings(max_dim: usize) -> Vec<(String, Lifting)> {
    corpus()
        .iter()
        .map(|c: &InstanceConfig| (c.name.clone(), c.build().expect("corpus instance builds")))
        .filter(|(_, h)| h.dim() <= max_dim)
        .collect()
}

fn alphabet(h: &Lifting) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = (0..h.rank()).map(Symbol::X).collect();
    out.extend(h.group().generators().into_iter().map(Symbol::G));
    out
}

fn words(alphabet: &[Symbol], len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |s| {
                    let mut w = w.clone();
                    w.push(s.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn symbol_element(h: &Lifting, s: &Symbol) -> HopfElement {
    match s {
        Symbol::X(i) => h.x(*i),
        Symbol::G(g) => h.group_element(g),
    }
}

#[test]
fn engine_matches_free_rewriting_on_short_words() {
    for (name, h) in liftings(64) {
        let alpha = alphabet(&h);
        let max_len = if alpha.len() > 4 { 3 } else { 4 };
        for len in 1..=max_len {
            for w in words(&alpha, len) {
                let engine = w.iter().fold(h.one(), |acc, s| h.mul(&acc, &symbol_element(&h, s)));
                let oracle = h.free_multiply_oracle(&w, 8).unwrap();
                assert_eq!(engine, oracle, "{name}: word {w:?}");
            }
        }
    }
}

#[test]
fn products_are_associative_on_small_instances() {
    for (name, h) in liftings(16) {
        let basis: Vec<HopfElement> = h.basis().iter().map(|m| h.basis_element(m)).collect();
        for a in &basis {
            for b in &basis {
                let ab = h.mul(a, b);
                for c in &basis {
                    assert_eq!(h.mul(&ab, c), h.mul(a, &h.mul(b, c)), "{name}: ({a})({b})({c})");
                }
            }
        }
    }
}

#[test]
fn power_relation_holds_after_reordering() {
    // x_i^{m_i} = λ_i (1 - g_i^{m_i}), whatever else sits in front
    for (name, h) in liftings(64) {
        for i in 0..h.rank() {
            let m = h.m()[i];
            let xm = (0..m).fold(h.one(), |acc, _| h.mul(&acc, &h.x(i)));
            let gm = h.group().power(&h.g()[i], m as i64);
            let expect = h.one().sub(&h.group_element(&gm)).scale(&h.lambda_diag()[i]);
            assert_eq!(xm, expect, "{name}: x{}^{m}", i + 1);
        }
    }
}
