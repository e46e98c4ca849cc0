//! Instance configuration files.
//!
//! A configuration is a flat TOML document:
//!
//! ```toml
//! name = "z4-lifting"
//! orders = [4]              # G = Z_4
//! g = [[1]]                 # g_1 as an exponent tuple
//! chi = [[2]]               # chi_1 as a weight tuple
//! lambda_diag = ["1"]       # lambda_1, a z-polynomial literal
//! lambda_off = [{ i = 1, j = 2, value = "1/2*z - 1" }]   # only i < j
//! oracle_level = 2          # 0, 1 or 2
//! max_dim = 128
//! ```
//!
//! Indices are 1-based. `z` denotes `ζ_N` with `N` the exponent of `G`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycScalar};
use crate::group::{Character, FiniteAbelianGroup, GroupElement};
use crate::hopf::{Lifting, LiftingDatum, Violation};

pub const DEFAULT_ORACLE_LEVEL: u8 = 1;
pub const DEFAULT_MAX_DIM: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid scalar literal for {field}: {source}")]
    Scalar { field: String, source: CycError },
    #[error("invalid lifting datum: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub name: String,
    pub orders: Vec<u64>,
    pub g: Vec<Vec<i64>>,
    pub chi: Vec<Vec<i64>>,
    #[serde(default)]
    pub lambda_diag: Vec<String>,
    #[serde(default)]
    pub lambda_off: Vec<LambdaEntry>,
    #[serde(default = "default_level")]
    pub oracle_level: u8,
    #[serde(default = "default_max_dim")]
    pub max_dim: usize,
}

fn default_level() -> u8 {
    DEFAULT_ORACLE_LEVEL
}

fn default_max_dim() -> usize {
    DEFAULT_MAX_DIM
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

impl InstanceConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: InstanceConfig = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
            let message = e.message().to_string();
            if message.contains("missing field") || message.contains("unknown field") {
                ConfigError::Schema(format!("line {line}, column {column}: {message}"))
            } else {
                ConfigError::Syntax { line, column, message }
            }
        })?;
        if cfg.oracle_level > 2 {
            return Err(ConfigError::Schema(format!(
                "oracle_level must be 0, 1 or 2 (got {})",
                cfg.oracle_level
            )));
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    /// Builds the raw datum; constraint checking happens in [`LiftingDatum::validate`].
    pub fn to_datum(&self) -> Result<LiftingDatum, ConfigError> {
        let group = FiniteAbelianGroup::new(self.orders.clone())
            .map_err(|e| ConfigError::Schema(e.to_string()))?;
        let n = self.rank();
        let cond = group.conductor();
        let tuple = |what: &str, i: usize, v: &[i64]| {
            group.element(v).map_err(|_| {
                ConfigError::Schema(format!(
                    "{what}_{} has {} entries, group has {} cyclic factors",
                    i + 1,
                    v.len(),
                    group.rank()
                ))
            })
        };
        let g: Vec<GroupElement> = self
            .g
            .iter()
            .enumerate()
            .map(|(i, v)| tuple("g", i, v))
            .collect::<Result<_, _>>()?;
        let chi: Vec<Character> = self
            .chi
            .iter()
            .enumerate()
            .map(|(i, v)| tuple("chi", i, v).map(|e| Character(e.0)))
            .collect::<Result<_, _>>()?;
        let lambda_diag = if self.lambda_diag.is_empty() {
            vec![CycScalar::zero(cond); n]
        } else {
            self.lambda_diag
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    CycScalar::parse(cond, s).map_err(|source| ConfigError::Scalar {
                        field: format!("lambda_diag[{}]", i + 1),
                        source,
                    })
                })
                .collect::<Result<_, _>>()?
        };
        let mut lambda_off = BTreeMap::new();
        for e in &self.lambda_off {
            if e.i == 0 || e.j == 0 {
                return Err(ConfigError::Schema("lambda_off indices are 1-based".into()));
            }
            let v = CycScalar::parse(cond, &e.value).map_err(|source| ConfigError::Scalar {
                field: format!("lambda_off({},{})", e.i, e.j),
                source,
            })?;
            if lambda_off.insert((e.i - 1, e.j - 1), v).is_some() {
                return Err(ConfigError::Schema(format!("duplicate lambda_off({},{})", e.i, e.j)));
            }
        }
        Ok(LiftingDatum { group, g, chi, lambda_diag, lambda_off })
    }

    pub fn build(&self) -> Result<Lifting, ConfigError> {
        self.to_datum()?.validate().map_err(ConfigError::Invalid)
    }
}

/// Human-readable description of the configuration grammar.
pub const SCHEMA_TEXT: &str = r#"Instance configuration (TOML, unknown keys rejected)

  name          string            instance label
  orders        [int, ...]        cyclic factors d_1..d_k of G = Z_d1 x ... x Z_dk
  g             [[int, ...], ...] g_1..g_n as exponent tuples (one entry per factor)
  chi           [[int, ...], ...] chi_1..chi_n as weight tuples;
                                  chi(e) = z^(N * sum_j w_j e_j / d_j), N = exponent(G)
  lambda_diag   [scalar, ...]     lambda_1..lambda_n (optional, default all 0)
  lambda_off    [{i, j, value}]   lambda_ij for 1 <= i < j <= n (optional);
                                  lambda_ji is derived from lambda_ij + q_ij lambda_ji = 0
  oracle_level  0 | 1 | 2         0 closed forms, 1 + integral/Nakayama oracles,
                                  2 + brute-force grading and Hopf axiom suite (default 1)
  max_dim       int               oracle guard on dim H (default 128)

Scalar literals are polynomials in z = zeta_N with rational coefficients:
  scalar := ['+'|'-'] term (('+'|'-') term)*
  term   := factor ('*' factor)*
  factor := int ['/' int] | 'z' ['^' ['-'] int]
Example: "1/2*z^3 - z + 2"
"#;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SWEEDLER: &str = r#"
name = "sweedler"
orders = [2]
g = [[1]]
chi = [[1]]
"#;

    #[test]
    fn parses_sweedler() {
        let c = InstanceConfig::parse(SWEEDLER).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.oracle_level, 1);
        assert_eq!(c.max_dim, 128);
        assert_eq!(c.build().unwrap().dim(), 4);
        assert_eq!(InstanceConfig::parse(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn missing_chi_is_schema_error() {
        let text = "name = \"x\"\norders = [2]\ng = [[1]]\n";
        assert!(matches!(InstanceConfig::parse(text), Err(ConfigError::Schema(_))));
    }

    #[test]
    fn unknown_key_rejected() {
        let text = format!("{SWEEDLER}colour = 3\n");
        assert!(matches!(InstanceConfig::parse(&text), Err(ConfigError::Schema(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "name = \"x\"\norders = [2\n";
        match InstanceConfig::parse(text) {
            Err(ConfigError::Syntax { line, .. }) => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scalar_literal_in_config() {
        let text = r#"
name = "z4"
orders = [4]
g = [[1]]
chi = [[2]]
lambda_diag = ["1/2*z - 1"]
"#;
        let d = InstanceConfig::parse(text).unwrap().to_datum().unwrap();
        assert_eq!(d.lambda_diag[0], CycScalar::parse(4, "1/2*z - 1").unwrap());
        let bad = text.replace("1/2*z - 1", "1/2*w");
        assert!(matches!(
            InstanceConfig::parse(&bad).unwrap().to_datum(),
            Err(ConfigError::Scalar { .. })
        ));
    }

    #[test]
    fn invalid_datum_reports_violations() {
        let text = "name = \"x\"\norders = [2]\ng = [[1]]\nchi = [[0]]\n";
        match InstanceConfig::parse(text).unwrap().build() {
            Err(ConfigError::Invalid(v)) => assert_eq!(v, vec![Violation::TrivialSelfBraiding { i: 1 }]),
            other => panic!("{other:?}"),
        }
    }

    fn arb_config() -> impl Strategy<Value = InstanceConfig> {
        (
            "[a-z][a-z0-9-]{0,8}",
            prop::collection::vec(1u64..6, 1..3),
            0usize..3,
            0u8..3,
            1usize..500,
        )
            .prop_flat_map(|(name, orders, n, level, max_dim)| {
                let k = orders.len();
                (
                    Just(name),
                    Just(orders),
                    prop::collection::vec(prop::collection::vec(0i64..6, k), n),
                    prop::collection::vec(prop::collection::vec(0i64..6, k), n),
                    prop::collection::vec("(-?[0-9]{1,2}(/[1-9])?)( [+-] [0-9]\\*z\\^[0-3])?", n),
                    prop::collection::vec((1usize..4, 1usize..4, "[0-9]"), 0..2),
                    Just(level),
                    Just(max_dim),
                )
            })
            .prop_map(|(name, orders, g, chi, lambda_diag, off, oracle_level, max_dim)| InstanceConfig {
                name,
                orders,
                g,
                chi,
                lambda_diag,
                lambda_off: off.into_iter().map(|(i, j, value)| LambdaEntry { i, j, value }).collect(),
                oracle_level,
                max_dim,
            })
    }

    proptest! {
        #[test]
        fn config_round_trip(c in arb_config()) {
            prop_assert_eq!(InstanceConfig::parse(&c.to_toml()).unwrap(), c);
        }
    }
}
