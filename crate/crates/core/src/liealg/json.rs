use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::expr::Rational;

use super::LieAlgebra;

/// On-disk structure constants: 1-based indices, omitted pairs are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// Integers or strings `"p/q"`.
    pub coeffs: Vec<Value>,
}

/// Parses `"p"`, `"p/q"` or a JSON integer.
pub fn parse_rational(v: &Value) -> Option<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                None => s.parse::<BigInt>().ok().map(Rational::from_integer),
                Some((p, q)) => {
                    let p = p.trim().parse::<BigInt>().ok()?;
                    let q = q.trim().parse::<BigInt>().ok()?;
                    (!q.is_zero()).then(|| Rational::new(p, q))
                }
            }
        }
        _ => None,
    }
}

fn format_rational(r: &Rational) -> Value {
    if r.is_integer() {
        match i64::try_from(r.numer()) {
            Ok(i) => Value::from(i),
            Err(_) => Value::from(r.to_string()),
        }
    } else {
        Value::from(r.to_string())
    }
}

fn bad(msg: String) -> Error {
    Error::Input(msg)
}

impl AlgebraFile {
    /// An entry `(i, j)` also sets `(j, i)` to its negative unless `(j, i)`
    /// is listed itself, in which case validation sees both as given.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let m = self.dim;
        let mut a = LieAlgebra::abelian(m);
        let listed: BTreeSet<(usize, usize)> = self.brackets.iter().map(|b| (b.i, b.j)).collect();
        for b in &self.brackets {
            if b.i == 0 || b.j == 0 || b.i > m || b.j > m {
                return Err(bad(format!(
                    "bracket index ({}, {}) outside 1..={m}",
                    b.i, b.j
                )));
            }
            if b.coeffs.len() != m {
                return Err(bad(format!(
                    "bracket ({}, {}) has {} coefficients, expected {m}",
                    b.i,
                    b.j,
                    b.coeffs.len()
                )));
            }
            let coeffs = b
                .coeffs
                .iter()
                .map(|v| parse_rational(v).ok_or_else(|| bad(format!("bad coefficient {v}"))))
                .collect::<Result<Vec<_>>>()?;
            let (i, j) = (b.i - 1, b.j - 1);
            if !listed.contains(&(b.j, b.i)) {
                a.c[j][i] = coeffs.iter().map(|v| -v).collect();
            }
            a.c[i][j] = coeffs;
        }
        Ok(a)
    }

    pub fn from_algebra(a: &LieAlgebra) -> Self {
        let m = a.dim();
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let row = a.bracket_basis(i, j);
                if row.iter().any(|v| !v.is_zero()) {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        coeffs: row.iter().map(format_rational).collect(),
                    });
                }
            }
        }
        Self { dim: m, brackets }
    }
}

impl LieAlgebra {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile =
            serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
        file.to_algebra()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from_algebra(self))
            .expect("algebra file serializes")
    }
}
