//! Phoneme feature scales.
//!
//! Every scale is anchored in `[0, 1]`:
//!
//! | feature        | 0                  | 1                    |
//! |----------------|--------------------|----------------------|
//! | place          | bilabial           | glottal              |
//! | voicing        | voiceless/aspirated| voiced/unaspirated   |
//! | manner         | stop               | approximant/flap     |
//! | palatalization | plain              | palatalized          |
//! | frontness      | front              | back                 |
//! | height         | high               | low                  |
//! | rounding       | unrounded          | rounded              |
//!
//! The empty symbol `-` stands for a missing onset or nucleus.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::Scalar;

pub const NULL_SYMBOL: &str = "-";

/// `[place, voicing, manner, palatalization]`
pub type ConsonantFeatures<T> = [T; 4];
/// `[frontness, height, rounding]`
pub type VowelFeatures<T> = [T; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct PhonemeTable<T> {
    pub consonants: BTreeMap<String, ConsonantFeatures<T>>,
    pub vowels: BTreeMap<String, VowelFeatures<T>>,
}

impl<T: Scalar> PhonemeTable<T> {
    fn from_rows(consonants: &[(&str, [f64; 4])], vowels: &[(&str, [f64; 3])]) -> Self {
        PhonemeTable {
            consonants: consonants.iter().map(|(s, v)| (s.to_string(), v.map(T::lit))).collect(),
            vowels: vowels.iter().map(|(s, v)| (s.to_string(), v.map(T::lit))).collect(),
        }
    }

    pub fn consonant(&self, symbol: &str) -> Option<ConsonantFeatures<T>> {
        self.consonants.get(symbol).copied()
    }

    pub fn vowel(&self, symbol: &str) -> Option<VowelFeatures<T>> {
        self.vowels.get(symbol).copied()
    }

    /// Romanized Japanese (Hepburn, with kunrei spellings parsed as plain consonants).
    pub fn japanese() -> Self {
        Self::from_rows(
            &[
                ("-", [1.0, 1.0, 1.0, 0.0]),
                ("k", [0.85, 0.0, 0.0, 0.0]),
                ("g", [0.85, 1.0, 0.0, 0.0]),
                ("s", [0.35, 0.0, 0.5, 0.0]),
                ("z", [0.35, 1.0, 0.5, 0.0]),
                ("t", [0.35, 0.0, 0.0, 0.0]),
                ("d", [0.35, 1.0, 0.0, 0.0]),
                ("n", [0.35, 1.0, 0.75, 0.0]),
                ("h", [1.0, 0.0, 0.5, 0.0]),
                ("f", [0.0, 0.0, 0.5, 0.0]),
                ("b", [0.0, 1.0, 0.0, 0.0]),
                ("p", [0.0, 0.0, 0.0, 0.0]),
                ("m", [0.0, 1.0, 0.75, 0.0]),
                ("r", [0.35, 1.0, 1.0, 0.0]),
                ("w", [0.0, 1.0, 1.0, 0.0]),
                ("v", [0.1, 1.0, 0.5, 0.0]),
                ("sh", [0.6, 0.0, 0.5, 1.0]),
                ("ch", [0.6, 0.0, 0.25, 1.0]),
                ("j", [0.6, 1.0, 0.25, 1.0]),
                ("ts", [0.35, 0.0, 0.25, 0.0]),
                // moraic nasal
                ("N", [0.9, 1.0, 0.75, 0.0]),
            ],
            &[
                ("-", [0.5, 0.5, 0.0]),
                ("a", [0.5, 1.0, 0.0]),
                ("i", [0.0, 0.0, 0.0]),
                ("u", [1.0, 0.0, 0.0]),
                ("e", [0.0, 0.5, 0.0]),
                ("o", [1.0, 0.5, 1.0]),
            ],
        )
    }

    /// Pinyin initials and nuclei. Voicing encodes the unaspirated/aspirated contrast.
    pub fn mandarin() -> Self {
        Self::from_rows(
            &[
                ("-", [1.0, 1.0, 1.0, 0.0]),
                ("b", [0.0, 1.0, 0.0, 0.0]),
                ("p", [0.0, 0.0, 0.0, 0.0]),
                ("m", [0.0, 1.0, 0.75, 0.0]),
                ("f", [0.1, 0.0, 0.5, 0.0]),
                ("d", [0.35, 1.0, 0.0, 0.0]),
                ("t", [0.35, 0.0, 0.0, 0.0]),
                ("n", [0.35, 1.0, 0.75, 0.0]),
                ("l", [0.35, 1.0, 1.0, 0.0]),
                ("g", [0.85, 1.0, 0.0, 0.0]),
                ("k", [0.85, 0.0, 0.0, 0.0]),
                ("h", [0.85, 0.0, 0.5, 0.0]),
                ("j", [0.6, 1.0, 0.25, 1.0]),
                ("q", [0.6, 0.0, 0.25, 1.0]),
                ("x", [0.6, 0.0, 0.5, 1.0]),
                ("zh", [0.55, 1.0, 0.25, 0.0]),
                ("ch", [0.55, 0.0, 0.25, 0.0]),
                ("sh", [0.55, 0.0, 0.5, 0.0]),
                ("r", [0.55, 1.0, 1.0, 0.0]),
                ("z", [0.35, 1.0, 0.25, 0.0]),
                ("c", [0.35, 0.0, 0.25, 0.0]),
                ("s", [0.35, 0.0, 0.5, 0.0]),
            ],
            &[
                ("-", [0.5, 0.5, 0.0]),
                ("a", [0.5, 1.0, 0.0]),
                ("o", [1.0, 0.5, 1.0]),
                ("e", [1.0, 0.5, 0.0]),
                ("ê", [0.0, 0.5, 0.0]),
                ("i", [0.0, 0.0, 0.0]),
                ("u", [1.0, 0.0, 1.0]),
                ("ü", [0.0, 0.0, 1.0]),
                // apical vowel after sibilants
                ("ɨ", [0.5, 0.0, 0.0]),
                ("er", [0.5, 0.5, 0.0]),
            ],
        )
    }
}

/// Feature tables for both languages.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable<T> {
    pub japanese: PhonemeTable<T>,
    pub mandarin: PhonemeTable<T>,
}

impl<T: Scalar> Default for FeatureTable<T> {
    fn default() -> Self {
        FeatureTable { japanese: PhonemeTable::japanese(), mandarin: PhonemeTable::mandarin() }
    }
}

impl<T: Scalar> FeatureTable<T> {
    /// Overrides or extends the defaults from TSV rows:
    /// `<ja|cmn>\tconsonant\t<symbol>\t<place>\t<voicing>\t<manner>\t<palatalization>` or
    /// `<ja|cmn>\tvowel\t<symbol>\t<frontness>\t<height>\t<rounding>`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_overrides(mut self, text: &str, path: &str) -> Result<Self> {
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 3 {
                return Err(Error::parse(path, line_no, "expected language, kind and symbol"));
            }
            let table = match cols[0] {
                "ja" => &mut self.japanese,
                "cmn" => &mut self.mandarin,
                other => return Err(Error::parse(path, line_no, format!("unknown table {other:?}"))),
            };
            let values = cols[3..]
                .iter()
                .map(|v| v.parse::<T>().map_err(|_| Error::parse(path, line_no, format!("bad number {v:?}"))))
                .collect::<Result<Vec<T>>>()?;
            match (cols[1], values.as_slice()) {
                ("consonant", &[a, b, c, d]) => {
                    table.consonants.insert(cols[2].to_string(), [a, b, c, d]);
                }
                ("vowel", &[a, b, c]) => {
                    table.vowels.insert(cols[2].to_string(), [a, b, c]);
                }
                (kind, _) => {
                    return Err(Error::parse(path, line_no, format!("bad {kind:?} row with {} values", values.len())))
                }
            }
        }
        Ok(self)
    }
}
