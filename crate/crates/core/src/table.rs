//! Tables of integrals keyed by exponent vectors over the nontrivial classes.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{group_table, GroupName};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzTable {
    pub group: GroupName,
    pub order: u32,
    pub entries: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Serialize, Deserialize)]
struct JsonIntegral {
    insertions: serde_json::Map<String, serde_json::Value>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    group: GroupName,
    order: u32,
    integrals: Vec<JsonIntegral>,
}

impl HurwitzTable {
    pub fn new(group: GroupName, order: u32) -> Self {
        HurwitzTable { group, order, entries: BTreeMap::new() }
    }

    pub fn get(&self, exponents: &[u32]) -> Option<&Rational> {
        self.entries.get(exponents)
    }

    pub fn insert(&mut self, exponents: Vec<u32>, value: Rational) {
        self.entries.insert(exponents, value);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of `other` that are missing here or carry a different value.
    pub fn mismatches(&self, other: &HurwitzTable) -> Vec<Vec<u32>> {
        let mut keys: Vec<&Vec<u32>> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().filter(|k| self.get(k) != other.get(k)).cloned().collect()
    }

    /// Same entries with all absent keys treated as zero on both sides.
    pub fn agrees_with(&self, other: &HurwitzTable) -> bool {
        let zero = Rational::zero();
        self.entries
            .keys()
            .chain(other.entries.keys())
            .all(|k| self.get(k).unwrap_or(&zero) == other.get(k).unwrap_or(&zero))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tokens = group_table(self.group).nontrivial_tokens();
        let integrals = self
            .entries
            .iter()
            .map(|(e, v)| {
                let mut insertions = serde_json::Map::new();
                for (tok, &k) in tokens.iter().zip(e) {
                    if k > 0 {
                        insertions.insert(tok.to_string(), k.into());
                    }
                }
                JsonIntegral { insertions, value: format_rational(v) }
            })
            .collect();
        serde_json::to_value(JsonTable { group: self.group, order: self.order, integrals }).expect("serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: JsonTable = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        let g = group_table(raw.group);
        let mut table = HurwitzTable::new(raw.group, raw.order);
        for item in raw.integrals {
            let mut e = vec![0u32; g.num_classes() - 1];
            for (tok, k) in &item.insertions {
                let idx = g.class_index(tok)?;
                if idx == 0 {
                    return Err(Error::Malformed("trivial class in table entry".into()));
                }
                let k = k.as_u64().ok_or_else(|| Error::Malformed(format!("exponent {k}")))?;
                e[idx - 1] = k as u32;
            }
            table.insert(e, parse_rational(&item.value)?);
        }
        Ok(table)
    }
}
