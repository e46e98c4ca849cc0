//! The bundled instance corpus, plus shorthand constructors for its members.

use crate::config::{InstanceConfig, LambdaEntry};
use crate::hopf::Lifting;

fn config(name: &str, orders: &[u64], g: &[&[i64]], chi: &[&[i64]]) -> InstanceConfig {
    InstanceConfig {
        name: name.to_string(),
        orders: orders.to_vec(),
        g: g.iter().map(|v| v.to_vec()).collect(),
        chi: chi.iter().map(|v| v.to_vec()).collect(),
        lambda_diag: vec![],
        lambda_off: vec![],
        oracle_level: 2,
        max_dim: 128,
    }
}

fn with_lambdas(mut c: InstanceConfig, diag: &[&str], off: &[(usize, usize, &str)]) -> InstanceConfig {
    c.lambda_diag = diag.iter().map(|s| s.to_string()).collect();
    c.lambda_off = off
        .iter()
        .map(|&(i, j, v)| LambdaEntry { i, j, value: v.to_string() })
        .collect();
    c
}

pub fn group_algebra_config(orders: &[u64]) -> InstanceConfig {
    let name = orders.iter().map(|d| format!("z{d}")).collect::<Vec<_>>().join("x");
    config(&format!("group-algebra-{name}"), orders, &[], &[])
}

pub fn sweedler_config() -> InstanceConfig {
    config("sweedler", &[2], &[&[1]], &[&[1]])
}

/// Taft algebra on `Z_n`: `χ(g) = ζ_n`, `λ = 0`.
pub fn taft_config(n: u64) -> InstanceConfig {
    config(&format!("taft-{n}"), &[n], &[&[1]], &[&[1]])
}

/// `G = Z_2`, `g_i = g`, `χ_i(g) = -1` for `n` generators.
pub fn example3_config(n: usize) -> InstanceConfig {
    let g: Vec<&[i64]> = vec![&[1]; n];
    config(&format!("exterior-z2-n{n}"), &[2], &g, &g)
}

/// `G = Z_4`, `χ(g) = -1`, `x² = 1 - g²`.
pub fn z4_single_lifting_config() -> InstanceConfig {
    with_lambdas(config("z4-lifting", &[4], &[&[1]], &[&[2]]), &["1"], &[])
}

/// `G = Z_4`, `g_1 = g_2 = g`, `χ_1(g) = i`, `χ_2(g) = -i`, `λ_12 = 1`.
pub fn two_gen_lambda_config() -> InstanceConfig {
    with_lambdas(
        config("z4-two-generator", &[4], &[&[1], &[1]], &[&[1], &[3]]),
        &["0", "0"],
        &[(1, 2, "1")],
    )
}

/// `G = Z_4`, `g_1 = g_2 = g`, `χ_1 = χ_2 = (g ↦ -1)`, with `λ_1`, `λ_2`, `λ_12` all nonzero.
pub fn mixed_lambda_config() -> InstanceConfig {
    with_lambdas(
        config("z4-mixed-lambda", &[4], &[&[1], &[1]], &[&[2], &[2]]),
        &["1", "2"],
        &[(1, 2, "1/2*z + 1")],
    )
}

/// `G = Z_2 × Z_2` with `χ_1 = χ_2` dual to `g_1 g_2` and `λ_12 = 1`.
pub fn klein_lambda_config() -> InstanceConfig {
    with_lambdas(
        config("klein-lambda", &[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 1]]),
        &["0", "0"],
        &[(1, 2, "1")],
    )
}

/// `G = Z_2 × Z_2`, two independent Sweedler-type generators.
pub fn klein_qls_config() -> InstanceConfig {
    config("klein-qls", &[2, 2], &[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]])
}

/// Every bundled instance, in report order.
pub fn corpus() -> Vec<InstanceConfig> {
    let mut out = vec![
        group_algebra_config(&[4]),
        group_algebra_config(&[2, 3]),
        sweedler_config(),
    ];
    out.extend((2..=5).map(taft_config));
    out.extend((1..=5).map(example3_config));
    out.extend([
        z4_single_lifting_config(),
        two_gen_lambda_config(),
        mixed_lambda_config(),
        klein_lambda_config(),
        klein_qls_config(),
    ]);
    out
}

fn build(c: InstanceConfig) -> Lifting {
    c.build().expect("corpus instance is valid")
}

pub fn group_algebra(orders: &[u64]) -> Lifting {
    build(group_algebra_config(orders))
}

pub fn sweedler() -> Lifting {
    build(sweedler_config())
}

pub fn taft(n: u64) -> Lifting {
    build(taft_config(n))
}

pub fn example3(n: usize) -> Lifting {
    build(example3_config(n))
}

pub fn z4_single_lifting() -> Lifting {
    build(z4_single_lifting_config())
}

pub fn two_gen_lambda() -> Lifting {
    build(two_gen_lambda_config())
}

pub fn mixed_lambda() -> Lifting {
    build(mixed_lambda_config())
}

pub fn klein_lambda() -> Lifting {
    build(klein_lambda_config())
}

pub fn klein_qls() -> Lifting {
    build(klein_qls_config())
}
