use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::key::{CorrelatorKey, Insertion, Provenance};
use super::theory::Theory;
use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::{ClassKind, Sector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub value: Rational,
    pub provenance: Provenance,
}

/// Known correlator values. Keys are stable by construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrelatorTable {
    entries: BTreeMap<CorrelatorKey, TableEntry>,
}

#[derive(Serialize, Deserialize)]
struct InsertionLine {
    sector: String,
    kind: ClassKind,
    tau: u32,
}

#[derive(Serialize, Deserialize)]
struct EntryLine {
    beta: u64,
    insertions: Vec<InsertionLine>,
    value: Rational,
    provenance: Provenance,
}

impl CorrelatorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: CorrelatorKey, value: Rational, provenance: Provenance) {
        self.entries.insert(key, TableEntry { value, provenance });
    }

    pub fn get(&self, key: &CorrelatorKey) -> Option<&TableEntry> {
        self.entries.get(key)
    }

    pub fn value(&self, key: &CorrelatorKey) -> Option<&Rational> {
        self.entries.get(key).map(|e| &e.value)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CorrelatorKey, &TableEntry)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CorrelatorKey> {
        self.entries.keys()
    }

    /// Adds `delta` to an existing entry; used to probe detectors.
    pub fn perturb(&mut self, key: &CorrelatorKey, delta: &Rational) -> Result<(), Error> {
        let entry = self
            .entries
            .get_mut(key)
            .ok_or_else(|| Error::MissingEntries(vec![key.to_string()]))?;
        entry.value += delta;
        Ok(())
    }

    /// Entries of `other` not already present are added.
    pub fn merge(&mut self, other: &CorrelatorTable) {
        for (k, e) in &other.entries {
            self.entries.entry(k.clone()).or_insert_with(|| e.clone());
        }
    }

    /// One JSON object per line, in key order.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (key, entry) in &self.entries {
            let line = EntryLine {
                beta: key.beta(),
                insertions: key
                    .insertions()
                    .iter()
                    .map(|i| InsertionLine {
                        sector: i.class.sector.to_string(),
                        kind: i.class.kind,
                        tau: i.descendant_power,
                    })
                    .collect(),
                value: entry.value.clone(),
                provenance: entry.provenance,
            };
            out.push_str(&serde_json::to_string(&line).expect("table lines serialize"));
            out.push('\n');
        }
        out
    }

    /// Parses JSON lines, resolving classes against `theory`. Blank lines are skipped.
    pub fn from_json_lines(text: &str, theory: &Theory) -> Result<Self, Error> {
        let mut table = CorrelatorTable::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: EntryLine =
                serde_json::from_str(line).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let insertions = parsed
                .insertions
                .iter()
                .map(|i| {
                    let sector: Sector = i.sector.parse()?;
                    Ok(Insertion::descendant(theory.find(sector, i.kind)?.clone(), i.tau))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            table.insert(CorrelatorKey::new(parsed.beta, insertions)?, parsed.value, parsed.provenance);
        }
        Ok(table)
    }
}
