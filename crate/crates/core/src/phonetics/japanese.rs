//! Romanized Japanese readings: mora splitting and per-mora features.

use crate::error::{Error, Result};
use crate::Scalar;

use super::table::{PhonemeTable, NULL_SYMBOL};
use super::{SyllableFeatures, SyllableMetric};

const VOWELS: &[char] = &['a', 'i', 'u', 'e', 'o'];

fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

fn expand_macrons(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    for c in word.chars().flat_map(char::to_lowercase) {
        match c {
            'ā' | 'â' => out.push_str("aa"),
            'ī' | 'î' => out.push_str("ii"),
            'ū' | 'û' => out.push_str("uu"),
            'ē' | 'ê' => out.push_str("ee"),
            'ō' | 'ô' => out.push_str("ou"),
            _ => out.push(c),
        }
    }
    out
}

/// Splits a romanized word into morae, e.g. `makaseru` -> `ma ka se ru`,
/// `nin` -> `ni n`, `gakkou` -> `ga k ko u`.
pub fn split_morae(word: &str) -> Result<Vec<String>> {
    let chars: Vec<char> = expand_macrons(word).chars().filter(|&c| c != '-').collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = || Error::UnknownSyllable(word.to_string());
    while i < chars.len() {
        let c = chars[i];
        if c == '\'' {
            i += 1;
            continue;
        }
        if is_vowel(c) {
            out.push(c.to_string());
            i += 1;
            continue;
        }
        if !c.is_ascii_lowercase() {
            return Err(bad());
        }
        let next = chars.get(i + 1).copied();
        if c == 'n' && !next.is_some_and(|n| is_vowel(n) || n == 'y') {
            out.push("n".into());
            i += 1;
            if next == Some('\'') {
                i += 1;
            }
            continue;
        }
        // geminate: doubled consonant, or the t of "tch"
        if next == Some(c) || (c == 't' && next == Some('c')) {
            out.push(c.to_string());
            i += 1;
            continue;
        }
        let mut j = i;
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        j += if matches!(two.as_str(), "ch" | "sh" | "ts") { 2 } else { 1 };
        if chars.get(j) == Some(&'y') && chars.get(j + 1).is_some_and(|&v| is_vowel(v)) {
            j += 1;
        }
        match chars.get(j) {
            Some(&v) if is_vowel(v) => {
                out.push(chars[i..=j].iter().collect());
                i = j + 1;
            }
            _ => return Err(bad()),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Decomposed mora: onset symbol, palatal glide, nucleus symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mora {
    pub onset: String,
    pub glide: bool,
    pub nucleus: String,
}

pub fn parse_mora(token: &str) -> Result<Mora> {
    let t = expand_macrons(token);
    let bad = || Error::UnknownSyllable(token.to_string());
    if t == "n" || t == "n'" || t == "nn" {
        return Ok(Mora { onset: "N".into(), glide: false, nucleus: NULL_SYMBOL.into() });
    }
    let chars: Vec<char> = t.chars().collect();
    let Some(&last) = chars.last() else {
        return Err(bad());
    };
    if chars.len() == 1 && !is_vowel(last) {
        // sokuon written as its consonant; `q` is an explicit marker
        let onset = if last == 'q' { "t".to_string() } else { last.to_string() };
        return Ok(Mora { onset, glide: false, nucleus: NULL_SYMBOL.into() });
    }
    if !is_vowel(last) {
        return Err(bad());
    }
    let head: String = chars[..chars.len() - 1].iter().collect();
    let (onset, glide) = match head.strip_suffix('y') {
        Some("") => (NULL_SYMBOL.to_string(), true),
        Some(h) => (h.to_string(), true),
        None if head.is_empty() => (NULL_SYMBOL.to_string(), false),
        None => (head.clone(), false),
    };
    Ok(Mora { onset, glide, nucleus: last.to_string() })
}

/// Japanese distance over morae with the shared 7-feature space.
#[derive(Debug, Clone)]
pub struct JapaneseMetric<T> {
    table: PhonemeTable<T>,
}

impl<T: Scalar> Default for JapaneseMetric<T> {
    fn default() -> Self {
        JapaneseMetric { table: PhonemeTable::japanese() }
    }
}

impl<T: Scalar> JapaneseMetric<T> {
    pub fn new(table: PhonemeTable<T>) -> Self {
        JapaneseMetric { table }
    }
}

impl<T: Scalar> SyllableMetric<T> for JapaneseMetric<T> {
    fn features(&self, token: &str) -> Result<SyllableFeatures<T>> {
        let m = parse_mora(token)?;
        let unknown = || Error::UnknownSyllable(token.to_string());
        let [place, voicing, manner, pal] = self.table.consonant(&m.onset).ok_or_else(unknown)?;
        let [front, height, round] = self.table.vowel(&m.nucleus).ok_or_else(unknown)?;
        Ok(SyllableFeatures {
            consonant_place: place,
            consonant_voicing: voicing,
            consonant_manner: manner,
            consonant_palatalization: if m.glide { T::one() } else { pal },
            vowel_frontness: front,
            vowel_height: height,
            vowel_rounding: round,
        })
    }

    fn distance(&self, a: &str, b: &str) -> Result<T> {
        Ok(self.features(a)?.distance(&self.features(b)?))
    }
}
