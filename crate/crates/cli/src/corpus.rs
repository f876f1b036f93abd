use std::collections::BTreeMap;
use std::str::FromStr;

use dbl_core::chars::GenDecCase;
use dbl_core::groups::{FusionLabel, GroupSpec};
use serde::Serialize;

use crate::CliError;

/// The corpus shipped with the binary.
pub const DEFAULT_CORPUS: &str = include_str!("default_corpus.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    #[serde(serialize_with = "display")]
    pub spec: GroupSpec,
    pub expected_case: FusionLabel,
    pub expected_gendec_case: Option<GenDecCase>,
    pub n: u32,
    /// Bare words after the fixed columns.
    pub tags: Vec<String>,
    /// `key=value` words after the fixed columns.
    pub notes: BTreeMap<String, String>,
}

fn display<S: serde::Serializer>(spec: &GroupSpec, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(spec)
}

impl CorpusEntry {
    pub fn is_product(&self) -> bool {
        self.spec.is_product()
    }

    pub fn extended(&self) -> bool {
        self.has_tag("extended")
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.get(key).map(String::as_str)
    }

    fn parse_line(line: &str, lineno: usize) -> Result<Self, CliError> {
        let err = |msg: String| CliError::Corpus { line: lineno, msg };
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() < 5 {
            return Err(err(format!("expected at least 5 columns, found {}", words.len())));
        }
        let spec = GroupSpec::from_str(words[1]).map_err(|e| err(e.to_string()))?;
        spec.validate().map_err(|e| err(e.to_string()))?;
        let expected_case = FusionLabel::from_str(words[2]).map_err(|e| err(e.to_string()))?;
        let expected_gendec_case = match words[3] {
            "-" | "none" => None,
            w => Some(GenDecCase::from_str(w).map_err(|e| err(e.to_string()))?),
        };
        let n = words[4]
            .parse::<u32>()
            .map_err(|_| err(format!("bad defect exponent {:?}", words[4])))?;
        let mut tags = Vec::new();
        let mut notes = BTreeMap::new();
        for w in &words[5..] {
            match w.split_once('=') {
                Some((k, v)) => {
                    notes.insert(k.to_string(), v.to_string());
                }
                None => tags.push(w.to_string()),
            }
        }
        Ok(CorpusEntry {
            id: words[0].to_string(),
            spec,
            expected_case,
            expected_gendec_case,
            n,
            tags,
            notes,
        })
    }
}

/// Parse the line format `id spec expected_case gendec_case n [words…]`.
/// Blank lines and `#` comments are ignored; ids must be unique. Entries are
/// returned sorted by id.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CliError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let entry = CorpusEntry::parse_line(line, i + 1)?;
        if entries.iter().any(|e| e.id == entry.id) {
            return Err(CliError::Corpus {
                line: i + 1,
                msg: format!("duplicate id {}", entry.id),
            });
        }
        entries.push(entry);
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries)
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    parse_corpus(DEFAULT_CORPUS).expect("shipped corpus parses")
}
