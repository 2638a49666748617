//! Pinyin syllables: onset, final and tone.
//!
//! The default Mandarin distance maps each syllable to the 7-feature space
//! (initial consonant, palatalization from the initial or an `i`/`ü`
//! medial, nucleus vowel with rounding from a `u`/`ü` medial), adds the coda
//! as one more unit-weight coordinate, and charges a fixed penalty of
//! `0.1 * D_seg_max` when tones differ. Syllables that differ only by tone
//! therefore stay close.

use crate::error::{Error, Result};
use crate::Scalar;

use super::table::{PhonemeTable, NULL_SYMBOL};
use super::{SyllableFeatures, SyllableMetric, FEATURE_WEIGHTS};

const INITIALS: [&str; 21] =
    ["zh", "ch", "sh", "b", "p", "m", "f", "d", "t", "n", "l", "g", "k", "h", "j", "q", "x", "r", "z", "c", "s"];

pub const TONE_PENALTY_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coda {
    None,
    I,
    U,
    N,
    Ng,
    R,
}

impl Coda {
    fn scale(self) -> f64 {
        match self {
            Coda::None => 0.0,
            Coda::I => 0.25,
            Coda::U => 0.5,
            Coda::R => 0.5,
            Coda::N => 0.75,
            Coda::Ng => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinyinSyllable {
    pub initial: String,
    pub medial: Option<char>,
    pub nucleus: String,
    pub coda: Coda,
    /// 1-4, or 5 for the neutral tone.
    pub tone: u8,
}

fn strip_tone_marks(s: &str) -> (String, Option<u8>) {
    let mut tone = None;
    let mut out = String::new();
    for c in s.chars() {
        let (base, t) = match c {
            'ā' => ('a', 1), 'á' => ('a', 2), 'ǎ' => ('a', 3), 'à' => ('a', 4),
            'ē' => ('e', 1), 'é' => ('e', 2), 'ě' => ('e', 3), 'è' => ('e', 4),
            'ī' => ('i', 1), 'í' => ('i', 2), 'ǐ' => ('i', 3), 'ì' => ('i', 4),
            'ō' => ('o', 1), 'ó' => ('o', 2), 'ǒ' => ('o', 3), 'ò' => ('o', 4),
            'ū' => ('u', 1), 'ú' => ('u', 2), 'ǔ' => ('u', 3), 'ù' => ('u', 4),
            'ǖ' => ('ü', 1), 'ǘ' => ('ü', 2), 'ǚ' => ('ü', 3), 'ǜ' => ('ü', 4),
            'v' => ('ü', 0),
            other => (other, 0),
        };
        if t > 0 {
            tone = Some(t);
        }
        out.push(base);
    }
    (out, tone)
}

pub fn parse_pinyin(token: &str) -> Result<PinyinSyllable> {
    let bad = || Error::UnknownSyllable(token.to_string());
    let lower = token.to_lowercase();
    let (digitless, digit_tone) = match lower.chars().last() {
        Some(d @ '0'..='5') => (&lower[..lower.len() - 1], Some(if d == '0' { 5 } else { d as u8 - b'0' })),
        _ => (lower.as_str(), None),
    };
    let (body, mark_tone) = strip_tone_marks(digitless);
    let tone = digit_tone.or(mark_tone).unwrap_or(5);
    if body.is_empty() {
        return Err(bad());
    }
    if body == "er" || body == "r" {
        return Ok(PinyinSyllable { initial: NULL_SYMBOL.into(), medial: None, nucleus: "er".into(), coda: Coda::None, tone });
    }

    let initial = INITIALS.iter().find(|i| body.starts_with(**i)).copied();
    let mut rest: String = body[initial.map_or(0, str::len)..].to_string();
    let palatal_initial = matches!(initial, Some("j" | "q" | "x"));

    // y- and w- spellings stand for medials or bare vowels
    if initial.is_none() {
        if let Some(r) = rest.strip_prefix('y') {
            rest = if r.starts_with('u') {
                format!("ü{}", &r[1..])
            } else if r.starts_with('i') {
                r.to_string()
            } else {
                format!("i{r}")
            };
        } else if let Some(r) = rest.strip_prefix('w') {
            rest = if r.starts_with('u') { r.to_string() } else { format!("u{r}") };
        }
    }
    if palatal_initial {
        if let Some(r) = rest.strip_prefix('u') {
            rest = format!("ü{r}");
        }
    }
    // abbreviated finals
    rest = match rest.as_str() {
        "iu" => "iou".into(),
        "ui" => "uei".into(),
        "un" => "uen".into(),
        "ün" => "ün".into(),
        "ong" => "ung".into(),
        "iong" => "üng".into(),
        _ => rest,
    };

    let chars: Vec<char> = rest.chars().collect();
    let is_v = |c: char| matches!(c, 'a' | 'e' | 'o' | 'i' | 'u' | 'ü' | 'ê');
    if chars.is_empty() || !is_v(chars[0]) {
        return Err(bad());
    }
    let (medial, nucleus_at) = if matches!(chars[0], 'i' | 'u' | 'ü') && chars.get(1).is_some_and(|&c| is_v(c)) {
        (Some(chars[0]), 1)
    } else {
        (None, 0)
    };
    let mut nucleus = chars[nucleus_at].to_string();
    let coda_str: String = chars[nucleus_at + 1..].iter().collect();
    let coda = match coda_str.as_str() {
        "" => Coda::None,
        "i" => Coda::I,
        "u" | "o" => Coda::U,
        "n" => Coda::N,
        "ng" => Coda::Ng,
        "r" => Coda::R,
        _ => return Err(bad()),
    };
    if nucleus == "i" && medial.is_none() && coda == Coda::None && matches!(initial, Some("z" | "c" | "s" | "zh" | "ch" | "sh" | "r")) {
        nucleus = "ɨ".into();
    }
    // "ie", "üe" have a front mid nucleus
    if nucleus == "e" && matches!(medial, Some('i' | 'ü')) && coda == Coda::None {
        nucleus = "ê".into();
    }
    Ok(PinyinSyllable { initial: initial.unwrap_or(NULL_SYMBOL).to_string(), medial, nucleus, coda, tone })
}

#[derive(Debug, Clone)]
pub struct MandarinMetric<T> {
    table: PhonemeTable<T>,
}

impl<T: Scalar> Default for MandarinMetric<T> {
    fn default() -> Self {
        MandarinMetric { table: PhonemeTable::mandarin() }
    }
}

impl<T: Scalar> MandarinMetric<T> {
    pub fn new(table: PhonemeTable<T>) -> Self {
        MandarinMetric { table }
    }

    /// Largest possible segmental distance: every coordinate at opposite ends of its scale.
    pub fn max_segmental_distance() -> T {
        let sq: f64 = FEATURE_WEIGHTS.iter().map(|w| w * w).sum::<f64>() + 1.0;
        T::lit(sq.sqrt())
    }

    pub fn tone_penalty() -> T {
        T::lit(TONE_PENALTY_FRACTION) * Self::max_segmental_distance()
    }

    fn decompose(&self, token: &str) -> Result<(SyllableFeatures<T>, T, u8)> {
        let s = parse_pinyin(token)?;
        let unknown = || Error::UnknownSyllable(token.to_string());
        let [place, voicing, manner, pal] = self.table.consonant(&s.initial).ok_or_else(unknown)?;
        let [front, height, round] = self.table.vowel(&s.nucleus).ok_or_else(unknown)?;
        let palatal = matches!(s.medial, Some('i' | 'ü'));
        let rounded = matches!(s.medial, Some('u' | 'ü'));
        let features = SyllableFeatures {
            consonant_place: place,
            consonant_voicing: voicing,
            consonant_manner: manner,
            consonant_palatalization: if palatal { T::one() } else { pal },
            vowel_frontness: front,
            vowel_height: height,
            vowel_rounding: if rounded { T::one() } else { round },
        };
        Ok((features, T::lit(s.coda.scale()), s.tone))
    }
}

impl<T: Scalar> SyllableMetric<T> for MandarinMetric<T> {
    fn features(&self, token: &str) -> Result<SyllableFeatures<T>> {
        Ok(self.decompose(token)?.0)
    }

    fn distance(&self, a: &str, b: &str) -> Result<T> {
        let (fa, ca, ta) = self.decompose(a)?;
        let (fb, cb, tb) = self.decompose(b)?;
        let seg = fa.distance(&fb);
        let coda = ca - cb;
        let segmental = (seg * seg + coda * coda).sqrt();
        Ok(if ta == tb { segmental } else { segmental + Self::tone_penalty() })
    }
}
