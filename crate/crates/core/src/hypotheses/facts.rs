//! Externally asserted facts that cannot be computed from q-expansions.
//!
//! A facts file is a JSON object mapping keys to `{ "value": .., "provenance": .. }`.
//! Keys are a base name optionally followed by `:`-separated qualifiers; a
//! lookup tries the most specific key first and falls back to the bare name.
//!
//! | base key                     | qualifiers              |
//! |------------------------------|-------------------------|
//! | `image_contains_sl2`         | `<form>:<p>`            |
//! | `m_splits_at_p`              | `<p>:<D>`               |
//! | `t_mod_pn_splits_all_n`      | `<p>:<D>`               |
//! | `tamagawa_equal_at_p`        | `<p>:<D>:<D'>` (either order) |
//! | `m_invariants_vanish_at_ell` | `<ell>:<D>`             |

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactsError {
    #[error("facts file is not valid JSON: {0}")]
    Json(String),
    #[error("fact {0:?} has no provenance text")]
    MissingProvenance(String),
    #[error("fact {key:?} must have a boolean value")]
    NotBoolean { key: String },
    #[error("unrecognized fact key {0:?}")]
    UnknownKey(String),
    #[error("fact {key:?} contradicts {other:?}: T/p^nT splitting for all n includes n = 1")]
    Contradiction { key: String, other: String },
}

pub const IMAGE_CONTAINS_SL2: &str = "image_contains_sl2";
pub const M_SPLITS_AT_P: &str = "m_splits_at_p";
pub const T_MOD_PN_SPLITS_ALL_N: &str = "t_mod_pn_splits_all_n";
pub const TAMAGAWA_EQUAL_AT_P: &str = "tamagawa_equal_at_p";
pub const M_INVARIANTS_VANISH_AT_ELL: &str = "m_invariants_vanish_at_ell";

const KNOWN_KEYS: [&str; 5] = [
    IMAGE_CONTAINS_SL2,
    M_SPLITS_AT_P,
    T_MOD_PN_SPLITS_ALL_N,
    TAMAGAWA_EQUAL_AT_P,
    M_INVARIANTS_VANISH_AT_ELL,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactEntry {
    pub value: bool,
    pub provenance: String,
}

/// A fact that was consulted, with the exact key that matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactHit {
    pub key: String,
    pub value: bool,
    pub provenance: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactsFile {
    entries: BTreeMap<String, FactEntry>,
}

impl FactsFile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses and validates a facts document.
    pub fn from_json_str(s: &str) -> Result<Self, FactsError> {
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_str(s).map_err(|e| FactsError::Json(e.to_string()))?;
        let mut facts = FactsFile::new();
        for (key, v) in raw {
            let provenance = v
                .get("provenance")
                .and_then(|p| p.as_str())
                .unwrap_or_default()
                .to_string();
            let value = v
                .get("value")
                .and_then(|x| x.as_bool())
                .ok_or_else(|| FactsError::NotBoolean { key: key.clone() })?;
            facts.insert(&key, value, &provenance)?;
        }
        Ok(facts)
    }

    pub fn insert(&mut self, key: &str, value: bool, provenance: &str) -> Result<(), FactsError> {
        let base = key.split(':').next().unwrap_or_default();
        if !KNOWN_KEYS.contains(&base) {
            return Err(FactsError::UnknownKey(key.to_string()));
        }
        if provenance.trim().is_empty() {
            return Err(FactsError::MissingProvenance(key.to_string()));
        }
        let qualifiers = &key[base.len()..];
        let partner = match (base, value) {
            (T_MOD_PN_SPLITS_ALL_N, true) => Some((M_SPLITS_AT_P, false)),
            (M_SPLITS_AT_P, false) => Some((T_MOD_PN_SPLITS_ALL_N, true)),
            _ => None,
        };
        if let Some((other_base, bad)) = partner {
            let other = format!("{other_base}{qualifiers}");
            if self.entries.get(&other).is_some_and(|e| e.value == bad) {
                return Err(FactsError::Contradiction { key: key.to_string(), other });
            }
        }
        self.entries
            .insert(key.to_string(), FactEntry { value, provenance: provenance.to_string() });
        Ok(())
    }

    /// Builder-style [`FactsFile::insert`]; panics on an invalid entry.
    pub fn with(mut self, key: &str, value: bool, provenance: &str) -> Self {
        self.insert(key, value, provenance).expect("invalid fact");
        self
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &FactEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.entries).expect("facts serialize");
        s.push('\n');
        s
    }

    /// Tries each candidate key in order, returning the first present.
    pub fn lookup<S: AsRef<str>>(&self, candidates: &[S]) -> Option<FactHit> {
        candidates.iter().find_map(|k| {
            self.entries.get(k.as_ref()).map(|e| FactHit {
                key: k.as_ref().to_string(),
                value: e.value,
                provenance: e.provenance.clone(),
            })
        })
    }

    pub fn image_contains_sl2(&self, form: &str, p: u64) -> Option<FactHit> {
        self.lookup(&[format!("{IMAGE_CONTAINS_SL2}:{form}:{p}")])
    }

    pub fn m_splits(&self, p: u64, d: i64) -> Option<FactHit> {
        self.lookup(&[format!("{M_SPLITS_AT_P}:{p}:{d}"), format!("{M_SPLITS_AT_P}:{p}"), M_SPLITS_AT_P.into()])
    }

    pub fn t_splits_all_n(&self, p: u64, d: i64) -> Option<FactHit> {
        self.lookup(&[
            format!("{T_MOD_PN_SPLITS_ALL_N}:{p}:{d}"),
            format!("{T_MOD_PN_SPLITS_ALL_N}:{p}"),
            T_MOD_PN_SPLITS_ALL_N.into(),
        ])
    }

    pub fn tamagawa_equal(&self, p: u64, d: i64, d_prime: i64) -> Option<FactHit> {
        self.lookup(&[
            format!("{TAMAGAWA_EQUAL_AT_P}:{p}:{d}:{d_prime}"),
            format!("{TAMAGAWA_EQUAL_AT_P}:{p}:{d_prime}:{d}"),
        ])
    }

    pub fn m_invariants_vanish(&self, ell: u64, d: i64) -> Option<FactHit> {
        self.lookup(&[
            format!("{M_INVARIANTS_VANISH_AT_ELL}:{ell}:{d}"),
            format!("{M_INVARIANTS_VANISH_AT_ELL}:{ell}"),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_contradictory_splitting() {
        let mut f = FactsFile::new().with("t_mod_pn_splits_all_n:3:-3", true, "x");
        assert!(matches!(
            f.insert("m_splits_at_p:3:-3", false, "y"),
            Err(FactsError::Contradiction { .. })
        ));
        assert!(f.insert("m_splits_at_p:3:5", false, "y").is_ok());
        assert!(f.insert("m_splits_at_p:3:-3", true, "y").is_ok());
    }

    #[test]
    fn parses_and_looks_up() {
        let doc = r#"{
            "tamagawa_equal_at_p:11:517:33": {"value": true, "provenance": "Dummigan, Lemma 6.3"},
            "m_splits_at_p:13": {"value": false, "provenance": "local computation"}
        }"#;
        let facts = FactsFile::from_json_str(doc).unwrap();
        assert_eq!(facts.len(), 2);
        let hit = facts.tamagawa_equal(11, 33, 517).unwrap();
        assert!(hit.value);
        assert_eq!(hit.key, "tamagawa_equal_at_p:11:517:33");
        assert!(facts.tamagawa_equal(11, 517, 45).is_none());
        // qualified by D falls back to the p-only key
        assert_eq!(facts.m_splits(13, 5).unwrap().key, "m_splits_at_p:13");
        assert!(facts.m_splits(11, 5).is_none());
    }

    #[test]
    fn rejects_missing_provenance() {
        let doc = r#"{"m_splits_at_p": {"value": true, "provenance": "  "}}"#;
        assert_eq!(
            FactsFile::from_json_str(doc),
            Err(FactsError::MissingProvenance("m_splits_at_p".into()))
        );
        let doc = r#"{"m_splits_at_p": {"value": true}}"#;
        assert!(matches!(FactsFile::from_json_str(doc), Err(FactsError::MissingProvenance(_))));
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(FactsFile::from_json_str("[1,2]"), Err(FactsError::Json(_))));
        let doc = r#"{"m_splits_at_p": {"value": "yes", "provenance": "x"}}"#;
        assert!(matches!(FactsFile::from_json_str(doc), Err(FactsError::NotBoolean { .. })));
        let doc = r#"{"weather_is_nice": {"value": true, "provenance": "x"}}"#;
        assert!(matches!(FactsFile::from_json_str(doc), Err(FactsError::UnknownKey(_))));
    }

    #[test]
    fn serializes_round_trip() {
        let facts = FactsFile::new().with("m_splits_at_p:11:517", true, "assumed");
        let back = FactsFile::from_json_str(&facts.to_json_string()).unwrap();
        assert_eq!(back, facts);
    }
}
