//! The analysis pipeline and its text and JSON reports.
//!
//! Every check lands in an oracle ledger as pass, fail or skipped. A failure
//! means two independent computations of the same quantity disagree.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::axioms::hopf_axiom_suite;
use crate::config::{ConfigError, InstanceConfig};
use crate::corpus::corpus;
use crate::frobenius::{
    check_right_integral, convolution_order, dual_right_integral, frobenius_property_check,
    integral_lemma_checks, is_unimodular, modular_element_closed_form, modular_element_derived, nakayama,
    nakayama_inverse_sweedler, nakayama_order, nakayama_sweedler, right_integral, s2_closed_form, s2_derived,
    sigma_sample, DiagonalAutomorphism, IntegralLemmaChecks,
};
use crate::grading::{
    alpha_counit_identity, compute_h1_presentation, compute_l1_l2, eigen_decompose, equidimensionality_check,
    s2_not_strongly_graded_check, strongly_graded_bruteforce, strongly_graded_theorem, unimodularity_via_counit,
    GradingReport,
};
use crate::hopf::Lifting;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub check: String,
    pub level: u8,
    pub status: OracleStatus,
    pub detail: String,
}

/// A verdict computed from the closed form, and again by an oracle when one ran.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub closed_form: Value,
    pub oracle: Option<Value>,
    pub agreement: String,
}

fn verdict(name: &str, closed_form: Value, oracle: Option<Value>) -> Verdict {
    let agreement = match &oracle {
        None => "not checked",
        Some(v) if *v == closed_form => "agree",
        Some(_) => "disagree",
    };
    Verdict {
        name: name.into(),
        closed_form,
        oracle,
        agreement: agreement.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorValue {
    pub generator: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub name: String,
    pub valid: bool,
    pub oracle_level: u8,
    pub max_dim: usize,
    pub group_orders: Vec<u64>,
    pub rank: usize,
    pub dim: usize,
    pub m: Vec<u32>,
    /// `q[i][j] = χ_j(g_i)`.
    pub q: Vec<Vec<String>>,
    pub alpha_on_generators: Vec<GeneratorValue>,
    pub ord_rho: u32,
    pub ord_s2: u32,
    pub verdicts: Vec<Verdict>,
    pub rho_grading: GradingReport,
    pub s2_grading: Option<GradingReport>,
    pub oracles: Vec<OracleEntry>,
}

impl AnalysisReport {
    pub fn count(&self, status: OracleStatus) -> usize {
        self.oracles.iter().filter(|o| o.status == status).count()
    }

    pub fn consistent(&self) -> bool {
        self.count(OracleStatus::Fail) == 0 && self.verdicts.iter().all(|v| v.agreement != "disagree")
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn oracle(&self, check: &str) -> Option<&OracleEntry> {
        self.oracles.iter().find(|o| o.check == check)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub oracle_level: Option<u8>,
    pub max_dim: Option<usize>,
    pub s2_grading: bool,
}

struct Ledger {
    level: u8,
    max_dim: usize,
    dim: usize,
    entries: Vec<OracleEntry>,
}

impl Ledger {
    /// Records `check` at `level`, running `f` only when the level and size allow.
    fn check(&mut self, check: &str, level: u8, f: impl FnOnce() -> (bool, String)) {
        let (status, detail) = if self.level < level {
            (OracleStatus::Skipped, format!("needs oracle level {level}, running at {}", self.level))
        } else if level > 0 && self.dim > self.max_dim {
            (OracleStatus::Skipped, format!("dim H = {} exceeds max_dim = {}", self.dim, self.max_dim))
        } else {
            let (ok, detail) = f();
            (if ok { OracleStatus::Pass } else { OracleStatus::Fail }, detail)
        };
        self.entries.push(OracleEntry { check: check.into(), level, status, detail });
    }

    fn skip(&mut self, check: &str, level: u8, why: &str) {
        self.entries.push(OracleEntry {
            check: check.into(),
            level,
            status: OracleStatus::Skipped,
            detail: why.into(),
        });
    }

    fn runs(&self, level: u8) -> bool {
        self.level >= level && (level == 0 || self.dim <= self.max_dim)
    }
}

/// Pairs `(j, i)`, 1-based, with `λ_ji ≠ 0` and `λ_ji g_i g_j` not central.
fn noncentral_lambda_pairs(alg: &Lifting) -> Vec<String> {
    let grp = alg.group();
    let mut out = vec![];
    for j in 0..alg.rank() {
        for i in 0..alg.rank() {
            if i == j || alg.lambda(j, i).is_zero() {
                continue;
            }
            let e = alg.group_element(&grp.compose(&alg.g()[i], &alg.g()[j])).scale(alg.lambda(j, i));
            if !alg.commutes_with_generators(&e) {
                out.push(format!("({}, {})", j + 1, i + 1));
            }
        }
    }
    out
}

fn same_eigenvalues(a: &DiagonalAutomorphism, b: &DiagonalAutomorphism) -> bool {
    a.eigenvalues().zip(b.eigenvalues()).all(|((ma, ea), (mb, eb))| ma == mb && ea == eb)
}

/// Runs the whole pipeline on one instance.
pub fn analyze(cfg: &InstanceConfig, opts: &AnalyzeOptions) -> Result<AnalysisReport, ConfigError> {
    let alg = cfg.build()?;
    let level = opts.oracle_level.unwrap_or(cfg.oracle_level);
    let max_dim = opts.max_dim.unwrap_or(cfg.max_dim);
    Ok(analyze_lifting(&cfg.name, &alg, level, max_dim, opts.s2_grading))
}

pub fn analyze_lifting(name: &str, alg: &Lifting, level: u8, max_dim: usize, with_s2_grading: bool) -> AnalysisReport {
    let grp = alg.group();
    let n = alg.rank();
    let dim = alg.dim();
    let mut ledger = Ledger { level, max_dim, dim, entries: vec![] };

    let alpha = modular_element_closed_form(alg);
    let rho = nakayama(alg, &alpha, 1);
    let s2 = s2_closed_form(alg);
    let dec = eigen_decompose(alg, &rho);
    let (l1, l2) = compute_l1_l2(alg, &alpha);
    let theorem = strongly_graded_theorem(alg, &alpha, &dec, &l1, &l2);
    let unimodular = is_unimodular(alg, &alpha);
    let unimodular_counit = unimodularity_via_counit(&dec);
    let ord_rho = nakayama_order(alg, &alpha);
    let ord_rho_iter = rho.order_by_iteration();
    let ord_s2 = alg.s2_order();
    let ord_s2_iter = s2.order_by_iteration();
    let expected_dim = dim / dec.len();
    let dims_equal = dec.components().values().all(|c| c.len() == expected_dim);
    let rho_is_s2 = same_eigenvalues(&rho, &s2);

    // closed forms against each other
    ledger.check("eigenvalues of rho form the group L1", 0, || {
        (
            dec.eigenvalues_form_group() && dec.len() as u32 == l1.order,
            format!("{} eigenvalues, |L1| = {}", dec.len(), l1.order),
        )
    });
    ledger.check("L1 = L2 iff every component meets G iff each q_ii is in alpha(G)", 0, || {
        let witness = theorem
            .nsg_witness
            .as_ref()
            .map_or(String::new(), |w| format!(", epsilon vanishes on H_{w}"));
        (theorem.consistent(), format!("L1 = L2: {}{witness}", theorem.l1_equals_l2))
    });
    ledger.check("alpha trivial iff epsilon vanishes on H_w for w != 1", 0, || {
        (unimodular == unimodular_counit, format!("unimodular: {unimodular}"))
    });
    ledger.check("alpha(h) = omega^-i epsilon(h) on H_(omega^i)", 0, || {
        (alpha_counit_identity(alg, &alpha, &dec), format!("omega = {}", dec.omega()))
    });
    ledger.check("rho = S^2 iff unimodular", 0, || {
        (rho_is_s2 == unimodular, format!("rho = S^2 on the basis: {rho_is_s2}"))
    });
    ledger.check("ord rho = lcm(m_i, ord alpha) by iteration", 0, || {
        (ord_rho == ord_rho_iter, format!("formula {ord_rho}, iteration {ord_rho_iter}"))
    });
    ledger.check("ord S^2 = lcm(m_i) by iteration", 0, || {
        (ord_s2 == ord_s2_iter, format!("formula {ord_s2}, iteration {ord_s2_iter}"))
    });
    ledger.check("dim H_w = dim H / |L1|", 0, || {
        (dims_equal, format!("{} components of dimension {expected_dim}", dec.len()))
    });

    // algebraic oracles
    let sigmas = sigma_sample(n);
    ledger.check("right integrals t_sigma", 1, || {
        let bad = sigmas.iter().find(|s| {
            let t = right_integral(alg, s);
            t.is_zero() || check_right_integral(alg, &t).is_err()
        });
        match bad {
            None => (true, format!("{} permutations, all basis elements", sigmas.len())),
            Some(s) => (false, format!("fails for sigma = {s:?}")),
        }
    });
    let lemma = ledger.runs(1).then(|| {
        sigmas
            .iter()
            .map(|s| (s.clone(), integral_lemma_checks(alg, s)))
            .collect::<Vec<_>>()
    });
    let items: [(&str, fn(&IntegralLemmaChecks) -> bool); 4] = [
        ("integral lemma (1): lambda_ji g_i g_j is central", |c| c.lambda_off_central),
        ("integral lemma (2): lambda_i g_i^m_i is central", |c| c.lambda_diag_central),
        ("integral lemma (3): t_sigma g = t_sigma", |c| c.group_invariant),
        ("integral lemma (4): t_sigma x_sigma_n = 0", |c| c.last_generator_kills),
    ];
    for (k, (check, item)) in items.into_iter().enumerate() {
        ledger.check(check, 1, || {
            let bad = lemma.as_ref().unwrap().iter().find(|(_, c)| !item(c));
            match bad {
                None => (true, format!("{} permutations", sigmas.len())),
                // items (1) and (2) do not involve sigma
                Some(_) if k == 0 => (false, format!("fails for (j, i) = {}", noncentral_lambda_pairs(alg).join(", "))),
                Some(_) if k == 1 => (false, "fails".into()),
                Some((s, _)) => (false, format!("fails for sigma = {s:?}")),
            }
        });
    }
    let derived_alpha = ledger.runs(1).then(|| modular_element_derived(alg));
    ledger.check("modular element: derived = closed form", 1, || match &derived_alpha {
        Some(Ok(a)) => (*a == alpha, format!("derived weights {:?}", a.on_group.0)),
        Some(Err(e)) => (false, e.to_string()),
        None => unreachable!(),
    });
    let phi = ledger.runs(1).then(|| dual_right_integral(alg, max_dim));
    ledger.check("dual integral space is 1-dimensional", 1, || match &phi {
        Some(Ok(_)) => (true, "normalized by phi(t) = 1".into()),
        Some(Err(e)) => (false, e.to_string()),
        None => unreachable!(),
    });
    ledger.check("Frobenius pairing and phi(yx) = phi(rho(x)y)", 1, || match &phi {
        Some(Ok(phi)) => {
            let c = frobenius_property_check(alg, phi, &rho);
            let detail = match &c.witness {
                None => format!("pairing rank {} of {dim}", c.pairing_rank),
                Some((x, y)) => format!("pairing rank {}, fails at x = {x}, y = {y}", c.pairing_rank),
            };
            (c.passed(), detail)
        }
        _ => (false, "no dual integral".into()),
    });
    let alpha_f = alpha.as_functional(alg);
    ledger.check("rho(h) = alpha(S(h1)) S^2(h2)", 1, || {
        let bad = alg.basis().into_iter().find(|m| {
            let b = alg.basis_element(m);
            nakayama_sweedler(alg, &alpha_f, 1, &b) != rho.apply(&b)
        });
        (bad.is_none(), bad.map_or("all basis elements".into(), |m| format!("fails at {m}")))
    });
    ledger.check("rho^-1(h) = alpha(h1) S^-2(h2)", 1, || {
        let bad = alg.basis().into_iter().find(|m| {
            let b = alg.basis_element(m);
            nakayama_inverse_sweedler(alg, &alpha, &rho.apply(&b)) != b
        });
        (bad.is_none(), bad.map_or("all basis elements".into(), |m| format!("fails at {m}")))
    });
    let s2_oracle = ledger.runs(1).then(|| s2_derived(alg)).flatten();
    ledger.check("S^2 from the antipode = closed form", 1, || {
        (s2_oracle.as_ref() == Some(&s2), "all basis elements".into())
    });
    let ord_conv = ledger.runs(1).then(|| convolution_order(alg, &alpha_f));
    ledger.check("ord rho = lcm(ord_conv alpha, ord S^2)", 1, || {
        let oc = ord_conv.unwrap();
        (
            num_integer::lcm(oc, ord_s2) == ord_rho_iter && oc == alpha.order(alg),
            format!("ord_conv alpha = {oc}, ord S^2 = {ord_s2}"),
        )
    });
    let equi = ledger.runs(1).then(|| equidimensionality_check(alg, &dec));
    ledger.check("theta homomorphism with equal fibers", 1, || {
        let e = equi.as_ref().unwrap();
        (e.passed(dim), format!("alternative basis rank {} of {dim}", e.alternative_basis_rank))
    });
    let h1 = if theorem.verdict() {
        let h1 = ledger.runs(1).then(|| compute_h1_presentation(alg, &alpha, &dec));
        ledger.check("H1 presentation", 1, || match &h1 {
            Some(Ok(p)) => (
                p.passed(),
                format!("basis rank {} of dim H1 = {}", p.basis_rank, p.h1_dim),
            ),
            Some(Err(e)) => (false, e.to_string()),
            None => unreachable!(),
        });
        h1.and_then(Result::ok)
    } else {
        ledger.skip("H1 presentation", 1, "not strongly graded");
        None
    };

    // brute force and the axiom suite
    let bf = ledger.runs(2).then(|| strongly_graded_bruteforce(alg, &dec, max_dim)).flatten();
    ledger.check("brute-force strong grading agrees with L1 = L2", 2, || {
        let b = bf.as_ref().unwrap();
        (
            b.consistent() && b.verdict() == theorem.verdict(),
            format!("span criterion {}, 1-criterion {}", b.span_criterion, b.one_criterion),
        )
    });
    let s2_check = ledger.runs(2).then(|| s2_not_strongly_graded_check(alg, &s2, max_dim));
    ledger.check("S^2-grading is not strongly graded unless S^2 = id", 2, || {
        let c = s2_check.as_ref().unwrap();
        (
            c.consistent() == Some(true),
            format!("S^2 = id: {}, {} components", c.s2_is_identity, c.components),
        )
    });
    if ledger.runs(2) {
        for r in hopf_axiom_suite(alg) {
            let detail = match &r.failure {
                None => format!("{} cases", r.checked),
                Some(f) => format!("fails at {f}"),
            };
            ledger.check(&format!("Hopf axiom: {}", r.axiom), 2, || (r.passed(), detail));
        }
    } else {
        let why = if level < 2 {
            format!("needs oracle level 2, running at {level}")
        } else {
            format!("dim H = {dim} exceeds max_dim = {max_dim}")
        };
        ledger.skip("Hopf axiom suite", 2, &why);
    }

    let mut rho_grading = GradingReport::skeleton(&dec);
    rho_grading.l1 = Some(l1.clone());
    rho_grading.l2 = Some(l2.clone());
    rho_grading.strongly_graded_by_theorem = Some(theorem.clone());
    rho_grading.strongly_graded_by_bruteforce = bf.clone();
    rho_grading.unimodular = Some(unimodular_counit);
    rho_grading.equidimensional = equi.clone();
    rho_grading.h1 = h1;

    let s2_grading = with_s2_grading.then(|| {
        let d = eigen_decompose(alg, &s2);
        let mut g = GradingReport::skeleton(&d);
        g.strongly_graded_by_bruteforce = s2_check
            .as_ref()
            .and_then(|c| c.bruteforce.clone())
            .or_else(|| ledger.runs(2).then(|| strongly_graded_bruteforce(alg, &d, max_dim)).flatten());
        g
    });

    let derived_alpha_weights = match &derived_alpha {
        Some(Ok(a)) => Some(json!(a.on_group.0)),
        _ => None,
    };
    let verdicts = vec![
        verdict("modular element weights", json!(alpha.on_group.0), derived_alpha_weights),
        verdict("unimodular", json!(unimodular), Some(json!(unimodular_counit))),
        verdict(
            "strongly graded",
            json!(theorem.verdict()),
            bf.as_ref().map(|b| json!(b.verdict())),
        ),
        verdict(
            "equidimensional",
            json!(dims_equal),
            equi.as_ref().map(|e| json!(e.passed(dim))),
        ),
        verdict("ord rho", json!(ord_rho), Some(json!(ord_rho_iter))),
        verdict("ord S^2", json!(ord_s2), Some(json!(ord_s2_iter))),
        verdict("rho = S^2", json!(unimodular), Some(json!(rho_is_s2))),
    ];

    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        name: name.into(),
        valid: true,
        oracle_level: level,
        max_dim,
        group_orders: grp.orders().to_vec(),
        rank: n,
        dim,
        m: alg.m().to_vec(),
        q: (0..n).map(|i| (0..n).map(|j| alg.q(i, j).to_string()).collect()).collect(),
        alpha_on_generators: grp
            .generators()
            .into_iter()
            .map(|g| GeneratorValue { value: alpha.on(alg, &g).to_string(), generator: g.to_string() })
            .collect(),
        ord_rho,
        ord_s2,
        verdicts,
        rho_grading,
        s2_grading,
        oracles: ledger.entries,
    }
}

fn group_name(orders: &[u64]) -> String {
    if orders.is_empty() {
        return "trivial".into();
    }
    orders.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" x ")
}

fn render_grading(out: &mut String, g: &GradingReport) {
    let _ = writeln!(out, "{} grading: omega = {}, {} components", g.automorphism_name, g.omega, g.components.len());
    if let (Some(l1), Some(l2)) = (&g.l1, &g.l2) {
        let _ = writeln!(out, "  |L1| = {}, |L2| = {}", l1.order, l2.order);
    }
    for c in &g.components {
        let groups: Vec<String> = c.group_elements.iter().map(ToString::to_string).collect();
        let groups = if groups.is_empty() { "none".to_string() } else { groups.join(" ") };
        let _ = writeln!(
            out,
            "  H_{} (omega^{}): dim {}, group elements: {}",
            c.eigenvalue, c.power_of_omega, c.dim, groups
        );
    }
    if let Some(t) = &g.strongly_graded_by_theorem {
        let _ = writeln!(out, "  strongly graded (L1 = L2): {}", t.verdict());
        if let Some(w) = &t.nsg_witness {
            let _ = writeln!(out, "  epsilon vanishes on H_{w}");
        }
    }
    match &g.strongly_graded_by_bruteforce {
        Some(b) => {
            let _ = writeln!(out, "  strongly graded (brute force): {}", b.verdict());
        }
        None => {
            let _ = writeln!(out, "  strongly graded (brute force): not run");
        }
    }
    if let Some(u) = g.unimodular {
        let _ = writeln!(out, "  epsilon vanishes off H_1: {u}");
    }
    if let Some(e) = &g.equidimensional {
        let _ = writeln!(
            out,
            "  equidimensional: {} (theta homomorphism: {})",
            e.equal, e.theta_is_homomorphism
        );
    }
    if let Some(h) = &g.h1 {
        let list = |v: &[crate::group::GroupElement]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "  H1: gamma = {}, gamma~ = {}", list(&h.gamma), list(&h.gamma_tilde));
        for (i, y) in h.y.iter().enumerate() {
            let _ = writeln!(out, "    y{} = {y}", i + 1);
        }
        let _ = writeln!(out, "    N = {}", list(&h.n_subgroup));
        let r = &h.relations_verified;
        let _ = writeln!(
            out,
            "    relations: group {}, y_i y_j {}, y_i^m_i {}; basis rank {} of dim H1 = {}; kN claims {}; sign claim {}",
            r.group_commutation,
            r.braiding,
            r.powers,
            h.basis_rank,
            h.h1_dim,
            h.kn_membership.all(),
            h.sign_claim
        );
        let _ = writeln!(out, "    {}", h.completeness);
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance: {}", r.name);
    let _ = writeln!(
        out,
        "  G = {}, n = {}, dim H = {}, m = {:?}",
        group_name(&r.group_orders),
        r.rank,
        r.dim,
        r.m
    );
    let _ = writeln!(out, "  oracle level {}, max_dim {}", r.oracle_level, r.max_dim);
    let _ = writeln!(out, "  q = [{}]", r.q.iter().map(|row| row.join(", ")).collect::<Vec<_>>().join("; "));
    for g in &r.alpha_on_generators {
        let _ = writeln!(out, "  alpha{} = {}", g.generator, g.value);
    }
    let _ = writeln!(out, "  ord rho = {}, ord S^2 = {}", r.ord_rho, r.ord_s2);
    let _ = writeln!(out, "verdicts (closed form / oracle):");
    for v in &r.verdicts {
        let oracle = v.oracle.as_ref().map_or("-".to_string(), value_text);
        let _ = writeln!(
            out,
            "  {:<26} {} / {} ({})",
            v.name,
            value_text(&v.closed_form),
            oracle,
            v.agreement
        );
    }
    render_grading(&mut out, &r.rho_grading);
    if let Some(g) = &r.s2_grading {
        render_grading(&mut out, g);
    }
    let _ = writeln!(out, "oracles:");
    for o in &r.oracles {
        let tag = match o.status {
            OracleStatus::Pass => "PASS",
            OracleStatus::Fail => "FAIL",
            OracleStatus::Skipped => "SKIP",
        };
        let _ = writeln!(out, "  {tag} [{}] {}: {}", o.level, o.check, o.detail);
    }
    let _ = writeln!(
        out,
        "summary: {} pass, {} fail, {} skipped",
        r.count(OracleStatus::Pass),
        r.count(OracleStatus::Fail),
        r.count(OracleStatus::Skipped)
    );
    out
}

pub fn render_json(r: &AnalysisReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

/// Outcome of one corpus instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum CorpusEntry {
    Analyzed(Box<AnalysisReport>),
    Invalid { name: String, error: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusRun {
    pub schema_version: u32,
    pub instances: Vec<CorpusEntry>,
}

impl CorpusRun {
    pub fn exit_code(&self) -> i32 {
        let mut code = EXIT_OK;
        for e in &self.instances {
            match e {
                CorpusEntry::Analyzed(r) if !r.consistent() => return EXIT_INCONSISTENT,
                CorpusEntry::Invalid { .. } => code = EXIT_INVALID,
                _ => {}
            }
        }
        code
    }

    pub fn reports(&self) -> impl Iterator<Item = &AnalysisReport> {
        self.instances.iter().filter_map(|e| match e {
            CorpusEntry::Analyzed(r) => Some(r.as_ref()),
            CorpusEntry::Invalid { .. } => None,
        })
    }
}

/// Analyzes every bundled instance; instances run on separate threads.
pub fn run_corpus(opts: &AnalyzeOptions) -> CorpusRun {
    let configs = corpus();
    let instances = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|cfg| s.spawn(move || analyze(cfg, opts)))
            .collect();
        handles
            .into_iter()
            .zip(&configs)
            .map(|(h, cfg)| match h.join().expect("analysis thread panicked") {
                Ok(r) => CorpusEntry::Analyzed(Box::new(r)),
                Err(e) => CorpusEntry::Invalid { name: cfg.name.clone(), error: e.to_string() },
            })
            .collect()
    });
    CorpusRun { schema_version: SCHEMA_VERSION, instances }
}

pub fn render_corpus_text(run: &CorpusRun) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>4} {:>10} {:>9} {:>6} {:>5} {:>5} {:>5}  status",
        "instance", "dim", "unimodular", "strong", "ord rho", "pass", "fail", "skip"
    );
    for e in &run.instances {
        match e {
            CorpusEntry::Analyzed(r) => {
                let strong = r
                    .rho_grading
                    .strongly_graded_by_theorem
                    .as_ref()
                    .is_some_and(|t| t.verdict());
                let unimodular = r.verdict("unimodular").is_some_and(|v| v.closed_form == json!(true));
                let _ = writeln!(
                    out,
                    "{:<20} {:>4} {:>10} {:>9} {:>7} {:>5} {:>5} {:>5}  {}",
                    r.name,
                    r.dim,
                    unimodular,
                    strong,
                    r.ord_rho,
                    r.count(OracleStatus::Pass),
                    r.count(OracleStatus::Fail),
                    r.count(OracleStatus::Skipped),
                    if r.consistent() { "ok" } else { "DISAGREEMENT" }
                );
            }
            CorpusEntry::Invalid { name, error } => {
                let _ = writeln!(out, "{name:<20} invalid: {error}");
            }
        }
    }
    let disagreements = run.reports().filter(|r| !r.consistent()).count();
    let _ = writeln!(out, "{} instances, {disagreements} with disagreements", run.instances.len());
    out
}

pub fn render_corpus_json(run: &CorpusRun) -> String {
    serde_json::to_string_pretty(run).expect("corpus serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{example3_config, sweedler_config};

    fn opts(level: u8) -> AnalyzeOptions {
        AnalyzeOptions { oracle_level: Some(level), ..Default::default() }
    }

    #[test]
    fn sweedler_full_pipeline() {
        let r = analyze(&sweedler_config(), &opts(2)).unwrap();
        assert_eq!(r.dim, 4);
        assert_eq!(r.ord_rho, 2);
        assert_eq!(r.verdict("unimodular").unwrap().closed_form, json!(false));
        assert_eq!(r.verdict("strongly graded").unwrap().agreement, "agree");
        assert_eq!(r.verdict("strongly graded").unwrap().closed_form, json!(true));
        let dims: Vec<usize> = r.rho_grading.components.iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![2, 2]);
        assert_eq!(r.count(OracleStatus::Fail), 0);
        assert_eq!(r.count(OracleStatus::Skipped), 0);
        assert!(r.consistent());
    }

    #[test]
    fn example_instances() {
        let r3 = analyze(&example3_config(3), &opts(0)).unwrap();
        assert_eq!(r3.verdict("strongly graded").unwrap().closed_form, json!(true));
        let r4 = analyze(&example3_config(4), &opts(0)).unwrap();
        assert_eq!(r4.verdict("strongly graded").unwrap().closed_form, json!(false));
        assert_eq!(r4.verdict("unimodular").unwrap().closed_form, json!(true));
    }

    #[test]
    fn skips_are_recorded() {
        let r = analyze(&sweedler_config(), &opts(0)).unwrap();
        assert!(r.count(OracleStatus::Skipped) > 0);
        assert!(r.oracles.iter().all(|o| o.status != OracleStatus::Skipped || !o.detail.is_empty()));
        let capped = analyze(
            &sweedler_config(),
            &AnalyzeOptions { oracle_level: Some(2), max_dim: Some(2), s2_grading: false },
        )
        .unwrap();
        let skip = capped.oracle("right integrals t_sigma").unwrap();
        assert_eq!(skip.status, OracleStatus::Skipped);
        assert!(skip.detail.contains("max_dim"));
    }

    #[test]
    fn output_is_deterministic() {
        let o = AnalyzeOptions { oracle_level: Some(2), max_dim: None, s2_grading: true };
        let a = analyze(&example3_config(2), &o).unwrap();
        let b = analyze(&example3_config(2), &o).unwrap();
        assert_eq!(render_text(&a), render_text(&b));
        assert_eq!(render_json(&a), render_json(&b));
    }

    #[test]
    fn json_carries_every_verdict() {
        let o = AnalyzeOptions { oracle_level: Some(2), max_dim: None, s2_grading: true };
        let r = analyze(&sweedler_config(), &o).unwrap();
        let v: Value = serde_json::from_str(&render_json(&r)).unwrap();
        assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(v["verdicts"].as_array().unwrap().len(), r.verdicts.len());
        assert_eq!(v["oracles"].as_array().unwrap().len(), r.oracles.len());
        assert!(v["s2_grading"].is_object());
        assert!(v["rho_grading"]["h1"].is_object());
    }
}
