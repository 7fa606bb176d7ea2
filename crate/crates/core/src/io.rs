//! JSON file formats for complexes, polynomials, lattice chains and towers.
//!
//! Polynomials are strings in the ring's variable names; every reader has
//! a writer with `write(read(write(x))) == write(x)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::growth::{GrowthError, QuotientTower};
use crate::homology::{FreeChainComplex, HomologyError, LaurentComplex};
use crate::lattice::{LatticeError, Sublattice};
use crate::laurent::{default_var_names, LaurentPoly};
use crate::ring::Matrix;
use crate::scalar::FieldSpec;
use crate::skewfield::{LatticeChain, SkewFieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Value { location: String, message: String },
    #[error(transparent)]
    Complex(#[from] HomologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Chain(#[from] SkewFieldError),
    #[error(transparent)]
    Tower(#[from] GrowthError),
}

fn json_err(e: serde_json::Error) -> IoError {
    IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn value_err(location: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Value {
        location: location.into(),
        message: message.to_string(),
    }
}

/// `{"field": "Q" | "Fp:<p>", "vars": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: String,
    pub vars: Vec<String>,
}

impl RingSpec {
    pub fn new(field: FieldSpec, rank: usize) -> Self {
        RingSpec {
            field: field.to_string(),
            vars: default_var_names(rank),
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec, IoError> {
        self.field.parse().map_err(|e| value_err("ring.field", e))
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    fn check(&self) -> Result<FieldSpec, IoError> {
        let field = self.field_spec()?;
        for (i, v) in self.vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') || v.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(value_err(format!("ring.vars[{i}]"), format!("bad variable name `{v}`")));
            }
            if self.vars[..i].contains(v) {
                return Err(value_err(format!("ring.vars[{i}]"), format!("duplicate variable `{v}`")));
            }
        }
        Ok(field)
    }

    pub fn parse_poly(&self, text: &str, location: &str) -> Result<LaurentPoly, IoError> {
        let field = self.check()?;
        LaurentPoly::parse(text, &self.var_refs(), field).map_err(|e| value_err(location, e))
    }

    pub fn show(&self, p: &LaurentPoly) -> String {
        p.display_with(&self.var_refs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    ring: RingSpec,
    ranks: Vec<usize>,
    /// `differentials[k-1]` is `A_k`, listed by rows.
    differentials: Vec<Vec<Vec<String>>>,
}

/// Reads a complex file; the returned ring spec carries the variable names.
pub fn read_complex(text: &str) -> Result<(LaurentComplex, RingSpec), IoError> {
    let raw: ComplexFile = serde_json::from_str(text).map_err(json_err)?;
    let field = raw.ring.check()?;
    let rank = raw.ring.vars.len();
    let proto = LaurentPoly::zero(rank, field);
    let mut diffs = Vec::new();
    for (k, rows) in raw.differentials.iter().enumerate() {
        let mut data = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let mut out = Vec::new();
            for (j, s) in row.iter().enumerate() {
                out.push(raw.ring.parse_poly(s, &format!("differentials[{k}][{i}][{j}]"))?);
            }
            data.push(out);
        }
        let r = raw.ranks.get(k).copied().unwrap_or(0);
        let c = raw.ranks.get(k + 1).copied().unwrap_or(0);
        let m = Matrix::from_rows(r, c, data, &proto).map_err(|e| value_err(format!("differentials[{k}]"), e))?;
        diffs.push(m);
    }
    let complex = FreeChainComplex::new(&proto, raw.ranks, diffs)?;
    Ok((complex, raw.ring))
}

pub fn write_complex(c: &LaurentComplex, ring: &RingSpec) -> String {
    let raw = ComplexFile {
        ring: ring.clone(),
        ranks: c.ranks().to_vec(),
        differentials: c
            .diffs()
            .iter()
            .map(|a| a.data().iter().map(|row| row.iter().map(|p| ring.show(p)).collect()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).unwrap() + "\n"
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    ring: RingSpec,
    poly: String,
}

pub fn read_poly(text: &str) -> Result<(LaurentPoly, RingSpec), IoError> {
    let raw: PolyFile = serde_json::from_str(text).map_err(json_err)?;
    let p = raw.ring.parse_poly(&raw.poly, "poly")?;
    Ok((p, raw.ring))
}

pub fn write_poly(p: &LaurentPoly, ring: &RingSpec) -> String {
    let raw = PolyFile {
        ring: ring.clone(),
        poly: ring.show(p),
    };
    serde_json::to_string_pretty(&raw).unwrap() + "\n"
}

/// `{"ambient": n, "levels": [gens of K_1, gens of K_2, ...]}`; `K_0 = ℤⁿ`
/// and the final `0` are implied when missing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFile {
    ambient: usize,
    levels: Vec<Vec<Vec<i64>>>,
}

pub fn read_chain(text: &str) -> Result<LatticeChain, IoError> {
    let raw: ChainFile = serde_json::from_str(text).map_err(json_err)?;
    for (i, level) in raw.levels.iter().enumerate() {
        for (j, g) in level.iter().enumerate() {
            if g.len() != raw.ambient {
                return Err(value_err(format!("levels[{i}][{j}]"), format!("expected {} entries", raw.ambient)));
            }
        }
    }
    Ok(LatticeChain::from_generators(raw.ambient, &raw.levels)?)
}

pub fn write_chain(chain: &LatticeChain) -> String {
    let raw = ChainFile {
        ambient: chain.ambient(),
        levels: chain.levels().iter().map(|l| l.basis().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&raw).unwrap() + "\n"
}

/// `{"diagonal": [m1, m2, ...]}` or `{"levels": [basis, basis, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum TowerFile {
    Diagonal { diagonal: Vec<i64> },
    Levels { levels: Vec<Vec<Vec<i64>>> },
}

/// `ambient` is the rank of the complex the tower will be used with.
pub fn read_tower(text: &str, ambient: usize) -> Result<QuotientTower, IoError> {
    let raw: TowerFile = serde_json::from_str(text).map_err(json_err)?;
    match raw {
        TowerFile::Diagonal { diagonal } => Ok(QuotientTower::diagonal(ambient, &diagonal)?),
        TowerFile::Levels { levels } => {
            let mut subs = Vec::new();
            for (i, basis) in levels.iter().enumerate() {
                if basis.iter().any(|b| b.len() != ambient) {
                    return Err(value_err(format!("levels[{i}]"), format!("expected vectors of length {ambient}")));
                }
                subs.push(Sublattice::new(ambient, basis)?);
            }
            Ok(QuotientTower::new(subs)?)
        }
    }
}

pub fn write_tower(tower: &QuotientTower) -> String {
    let raw = TowerFile::Levels {
        levels: tower.levels().iter().map(|l| l.basis().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&raw).unwrap() + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{"ring": {"field": "Q", "vars": ["t"]}, "ranks": [1, 1], "differentials": [[["t - 1"]]]}"#;

    #[test]
    fn complex_round_trip() {
        let (c, ring) = read_complex(CIRCLE).unwrap();
        let once = write_complex(&c, &ring);
        let (c2, ring2) = read_complex(&once).unwrap();
        assert_eq!(c2, c);
        assert_eq!(write_complex(&c2, &ring2), once);
    }

    #[test]
    fn complex_errors() {
        assert!(matches!(read_complex("{\"ring\": "), Err(IoError::Json { line: 1, .. })));
        let bad = CIRCLE.replace("t - 1", "t - q");
        match read_complex(&bad) {
            Err(IoError::Value { location, .. }) => assert_eq!(location, "differentials[0][0][0]"),
            other => panic!("{other:?}"),
        }
        let not_complex = r#"{"ring": {"field": "Q", "vars": ["t"]}, "ranks": [1, 1, 1],
            "differentials": [[["t - 1"]], [["1"]]]}"#;
        assert!(matches!(read_complex(not_complex), Err(IoError::Complex(HomologyError::NotAComplex { k: 2 }))));
        let bad_field = CIRCLE.replace("\"Q\"", "\"Fp:4\"");
        assert!(matches!(read_complex(&bad_field), Err(IoError::Value { .. })));
    }

    #[test]
    fn chain_and_tower_round_trip() {
        let chain = read_chain(r#"{"ambient": 2, "levels": [[[0, 1]]]}"#).unwrap();
        assert_eq!(chain.depth(), 2);
        assert_eq!(read_chain(&write_chain(&chain)).unwrap(), chain);
        let tower = read_tower(r#"{"diagonal": [2, 4]}"#, 2).unwrap();
        assert_eq!(tower.indices(), vec![4, 16]);
        let text = write_tower(&tower);
        assert_eq!(write_tower(&read_tower(&text, 2).unwrap()), text);
    }
}
