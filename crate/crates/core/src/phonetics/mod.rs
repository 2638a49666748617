//! Phonetic distances, class phoneticity and least phonetic chains.

mod japanese;
mod mandarin;
mod table;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use japanese::{parse_mora, split_morae, JapaneseMetric, Mora};
pub use mandarin::{parse_pinyin, Coda, MandarinMetric, PinyinSyllable, TONE_PENALTY_FRACTION};
pub use table::{FeatureTable, PhonemeTable, NULL_SYMBOL};

use crate::charstore::{AllographClass, CharStore, ClassId, Language, Reading};
use crate::error::{Error, Result};
use crate::graphcore::{Edge, InclusionGraph};
use crate::Scalar;

/// Weights of place, voicing, manner, palatalization, frontness, height, rounding.
pub const FEATURE_WEIGHTS: [f64; 7] = [4.0, 1.0, 4.0, 1.0, 5.0, 1.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SyllableFeatures<T> {
    pub consonant_place: T,
    pub consonant_voicing: T,
    pub consonant_manner: T,
    pub consonant_palatalization: T,
    pub vowel_frontness: T,
    pub vowel_height: T,
    pub vowel_rounding: T,
}

impl<T: Scalar> SyllableFeatures<T> {
    pub fn from_array(a: [T; 7]) -> Self {
        SyllableFeatures {
            consonant_place: a[0],
            consonant_voicing: a[1],
            consonant_manner: a[2],
            consonant_palatalization: a[3],
            vowel_frontness: a[4],
            vowel_height: a[5],
            vowel_rounding: a[6],
        }
    }

    pub fn to_array(&self) -> [T; 7] {
        [
            self.consonant_place,
            self.consonant_voicing,
            self.consonant_manner,
            self.consonant_palatalization,
            self.vowel_frontness,
            self.vowel_height,
            self.vowel_rounding,
        ]
    }

    /// Weighted Euclidean distance.
    pub fn distance(&self, other: &Self) -> T {
        syllable_distance(self, other)
    }
}

pub fn syllable_distance<T: Scalar>(a: &SyllableFeatures<T>, b: &SyllableFeatures<T>) -> T {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .zip(FEATURE_WEIGHTS)
        .map(|((&x, y), w)| {
            let d = T::lit(w) * (x - y);
            d * d
        })
        .sum::<T>()
        .sqrt()
}

/// Distance between two syllable tokens of one language. Implement this to
/// plug in a different phonetic model.
pub trait SyllableMetric<T>: Send + Sync {
    fn features(&self, token: &str) -> Result<SyllableFeatures<T>>;

    fn distance(&self, a: &str, b: &str) -> Result<T>;
}

/// Mean per-position syllable distance; for unequal lengths, the minimum over
/// all windows of the longer reading that match the shorter one's length.
pub fn reading_distance<T: Scalar>(metric: &dyn SyllableMetric<T>, a: &Reading, b: &Reading) -> Result<T> {
    if a.language() != b.language() {
        return Err(Error::LanguageMismatch(a.language().tag(), b.language().tag()));
    }
    let (short, long) = if a.len() <= b.len() { (a.syllables(), b.syllables()) } else { (b.syllables(), a.syllables()) };
    if short.is_empty() {
        return Err(Error::InvalidReading("empty reading".into()));
    }
    let k = T::from_count(short.len());
    let mut best: Option<T> = None;
    for window in long.windows(short.len()) {
        let mut total = T::zero();
        for (x, y) in short.iter().zip(window) {
            total = total + metric.distance(x, y)?;
        }
        let mean = total / k;
        if best.is_none_or(|b| mean < b) {
            best = Some(mean);
        }
    }
    Ok(best.expect("at least one window"))
}

/// Metrics for every supported language.
pub struct PhoneticModel<T> {
    pub mandarin: Box<dyn SyllableMetric<T>>,
    pub japanese: Box<dyn SyllableMetric<T>>,
}

impl<T: Scalar> Default for PhoneticModel<T> {
    fn default() -> Self {
        Self::from_table(FeatureTable::default())
    }
}

impl<T: Scalar> PhoneticModel<T> {
    pub fn from_table(table: FeatureTable<T>) -> Self {
        PhoneticModel {
            mandarin: Box::new(MandarinMetric::new(table.mandarin)),
            japanese: Box::new(JapaneseMetric::new(table.japanese)),
        }
    }

    pub fn metric(&self, language: Language) -> &dyn SyllableMetric<T> {
        match language {
            Language::Mandarin => self.mandarin.as_ref(),
            Language::JapaneseOn | Language::JapaneseKun => self.japanese.as_ref(),
        }
    }

    /// Checks that every syllable of the reading is covered by the metric.
    pub fn validate(&self, reading: &Reading) -> Result<()> {
        let m = self.metric(reading.language());
        for s in reading.syllables() {
            m.features(s)?;
        }
        Ok(())
    }
}

fn member_readings<'a>(store: &'a CharStore, class: &AllographClass, language: Language) -> Vec<&'a Reading> {
    class.members.iter().filter_map(|&c| store.get(c)).flat_map(|s| s.readings_in(language)).collect()
}

/// `d_min`: smallest reading distance over all member readings of the two
/// classes. `None` when either side has no reading in the language.
pub fn class_distance<T: Scalar>(
    store: &CharStore,
    model: &PhoneticModel<T>,
    a: &AllographClass,
    b: &AllographClass,
    language: Language,
) -> Result<Option<T>> {
    let (ra, rb) = (member_readings(store, a, language), member_readings(store, b, language));
    let metric = model.metric(language);
    let mut best: Option<T> = None;
    for x in &ra {
        for y in &rb {
            let d = reading_distance(metric, x, y)?;
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    Ok(best)
}

/// Phonetic annotation of one edge in one language. Both values are `None`
/// (unknown) when a side lacks readings.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhoneticityEdge<T> {
    pub d_min: Option<T>,
    pub phi: Option<T>,
}

/// Normalizes distances into phoneticity `1 - d / D`, with `D` the largest
/// finite distance. Returns the per-edge values and `D`.
pub fn phoneticity_from_distances<T: Scalar>(
    distances: &BTreeMap<Edge, Option<T>>,
    language: Language,
) -> Result<(BTreeMap<Edge, PhoneticityEdge<T>>, T)> {
    let max = distances
        .values()
        .flatten()
        .copied()
        .fold(None, |acc: Option<T>, d| Some(acc.map_or(d, |m| m.max(d))))
        .ok_or(Error::NoFiniteDistance(language.tag()))?;
    let out = distances
        .iter()
        .map(|(&e, &d)| {
            let phi = d.map(|d| if max == T::zero() { T::one() } else { T::one() - d / max });
            (e, PhoneticityEdge { d_min: d, phi })
        })
        .collect();
    Ok((out, max))
}

/// Computes `d_min` and phoneticity for every edge and records the
/// normalizer in the graph metadata. Returns the normalizer.
pub fn phoneticity<T: Scalar>(
    g: &mut InclusionGraph<T>,
    store: &CharStore,
    model: &PhoneticModel<T>,
    language: Language,
) -> Result<T> {
    let edges = g.edges();
    let classes = g.classes();
    let distances: BTreeMap<Edge, Option<T>> = edges
        .par_iter()
        .map(|&(s, c)| {
            class_distance(store, model, classes.class(s)?, classes.class(c)?, language).map(|d| ((s, c), d))
        })
        .collect::<Result<_>>()?;
    let (values, max) = phoneticity_from_distances(&distances, language)?;
    for (e, v) in values {
        g.attrs_mut(e).phonetic.insert(language, v);
    }
    g.meta.phi_normalizer.insert(language, max);
    Ok(max)
}

/// Greedy descent along incoming edges: from `start`, repeatedly move to the
/// subclass whose edge score is best according to `better(candidate, current)`.
/// Edges without a score are skipped; ties keep the lowest class id.
pub(crate) fn greedy_chain<T: Scalar>(
    g: &InclusionGraph<T>,
    start: ClassId,
    score: impl Fn(Edge) -> Option<T>,
    better: impl Fn(T, T) -> bool,
) -> Vec<ClassId> {
    let mut chain = vec![start];
    let mut cur = start;
    loop {
        let mut best: Option<(ClassId, T)> = None;
        for z in g.subclasses(cur) {
            if let Some(v) = score((z, cur)) {
                if best.is_none_or(|(_, b)| better(v, b)) {
                    best = Some((z, v));
                }
            }
        }
        match best {
            Some((z, _)) if !chain.contains(&z) => {
                chain.push(z);
                cur = z;
            }
            _ => return chain,
        }
    }
}

/// `p_0 = c`, `p_{i+1}` = the subclass of `p_i` with the smallest phoneticity.
pub fn least_phonetic_chain<T: Scalar>(g: &InclusionGraph<T>, c: ClassId, language: Language) -> Vec<ClassId> {
    greedy_chain(g, c, |e| g.phi(e, language), |a, b| a < b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram<T> {
    /// `bins + 1` boundaries over `[0, 1]`.
    pub boundaries: Vec<T>,
    pub counts: Vec<usize>,
}

impl<T: Scalar> Histogram<T> {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("bin_start,bin_end,count\n");
        for (i, n) in self.counts.iter().enumerate() {
            s.push_str(&format!("{},{},{}\n", self.boundaries[i], self.boundaries[i + 1], n));
        }
        s
    }
}

/// Bins phoneticity values in `[0, 1]`; the last bin includes 1.
pub fn histogram_of<T: Scalar>(values: &[T], bins: usize) -> Result<Histogram<T>> {
    if bins == 0 {
        return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
    }
    if values.is_empty() {
        return Err(Error::Empty("phoneticity values"));
    }
    let nb = T::from_count(bins);
    let mut counts = vec![0usize; bins];
    for &v in values {
        let i = (v * nb).floor().to_usize().unwrap_or(0).min(bins - 1);
        counts[i] += 1;
    }
    let boundaries = (0..=bins).map(|i| T::from_count(i) / nb).collect();
    Ok(Histogram { boundaries, counts })
}

pub fn phoneticity_histogram<T: Scalar>(g: &InclusionGraph<T>, language: Language, bins: usize) -> Result<Histogram<T>> {
    let values: Vec<T> = g.edges().into_iter().filter_map(|e| g.phi(e, language)).collect();
    histogram_of(&values, bins)
}
