//! JSON file formats for matrices, generated pairs, and reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::generators::{FamilyParams, Instance, Relation};
use super::Family;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// `{"n": N, "entries": [[[re, im], ...], ...]}`, row-major, every real
/// written with 17 significant digits.
pub mod matrix_json {
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::value::RawValue;

    use super::{ComplexMatrix, C64};

    #[derive(Serialize)]
    struct Out {
        n: usize,
        entries: Vec<Vec<[Box<RawValue>; 2]>>,
    }

    #[derive(Deserialize)]
    struct In {
        n: usize,
        entries: Vec<Vec<[f64; 2]>>,
    }

    fn real(v: f64) -> Result<Box<RawValue>, serde_json::Error> {
        RawValue::from_string(format!("{v:.16e}"))
    }

    pub fn serialize<S: Serializer>(m: &ComplexMatrix, s: S) -> Result<S::Ok, S::Error> {
        let entries = m
            .rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|z| Ok([real(z.re)?, real(z.im)?]))
                    .collect::<Result<Vec<_>, serde_json::Error>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(S::Error::custom)?;
        Out { n: m.n(), entries }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexMatrix, D::Error> {
        let raw = In::deserialize(d)?;
        if raw.entries.len() != raw.n {
            return Err(D::Error::custom(format!(
                "n = {} but {} rows",
                raw.n,
                raw.entries.len()
            )));
        }
        let rows: Vec<Vec<C64>> = raw
            .entries
            .iter()
            .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// A generated (or hand-written) pair as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub params: FamilyParams,
    #[serde(default = "default_relation")]
    pub relation: Relation,
    #[serde(default = "default_k_lo")]
    pub k_lo: i64,
    #[serde(default)]
    pub k_hi: i64,
    #[serde(with = "matrix_json")]
    pub x: ComplexMatrix,
    #[serde(with = "matrix_json")]
    pub y: ComplexMatrix,
}

fn default_relation() -> Relation {
    Relation::Exp
}

fn default_k_lo() -> i64 {
    -1
}

impl From<&Instance> for PairFile {
    fn from(inst: &Instance) -> Self {
        Self {
            family: Some(inst.spec.family),
            n: inst.spec.n,
            seed: inst.spec.seed,
            params: inst.spec.params.clone(),
            relation: inst.relation,
            k_lo: inst.k_lo,
            k_hi: inst.k_hi,
            x: inst.x.clone(),
            y: inst.y.clone(),
        }
    }
}

impl PairFile {
    pub fn validate(&self) -> Result<()> {
        for m in [&self.x, &self.y] {
            if m.n() != self.n {
                return Err(Error::DimensionMismatch(self.n, m.n()));
            }
        }
        Ok(())
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_pair(path: &Path) -> Result<PairFile> {
    let pair: PairFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    pair.validate()?;
    Ok(pair)
}
