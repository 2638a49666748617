//! Deterministic synthetic dataset in the on-disk input formats.
//!
//! Random primitives of two to four strokes are composed side by side or
//! stacked into larger characters, so inclusions are known by construction.
//! Each composed character takes its radical and topic from one component
//! and usually its readings from the other. Synset lemmas are two-character
//! words within a topic, and documents are labelled by topic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::io::{format_codepoint, format_strokes, write_text};
use crate::strokesig::{Stroke, StrokeType, STROKE_CODES};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub primitives: usize,
    pub level1: usize,
    pub level2: usize,
    pub variants: usize,
    /// Characters placed above the Basic Multilingual Plane.
    pub supplementary: usize,
    pub topics: usize,
    pub synsets_per_topic: usize,
    pub documents: usize,
    pub doc_len: usize,
    /// Probability that a document character is drawn from the document's own topic.
    pub topic_share: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            seed: 7,
            primitives: 40,
            level1: 110,
            level2: 130,
            variants: 20,
            supplementary: 5,
            topics: 5,
            synsets_per_topic: 9,
            documents: 1000,
            doc_len: 30,
            topic_share: 0.2,
        }
    }
}

/// File contents keyed by file name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticDataset {
    pub files: BTreeMap<&'static str, String>,
}

impl SyntheticDataset {
    pub fn get(&self, name: &str) -> &str {
        &self.files[name]
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|source| crate::Error::Io { path: dir.to_path_buf(), source })?;
        for (name, text) in &self.files {
            write_text(&dir.join(name), text)?;
        }
        Ok(())
    }
}

const PINYIN: &[&str] = &[
    "ma", "ba", "pa", "fa", "da", "ta", "na", "la", "ga", "ka", "ha", "zha", "cha", "sha", "za", "sa", "de", "te", "ge",
    "ke", "he", "ren", "shen", "chen", "zhen", "men", "ben", "gen", "hen", "ban", "pan", "man", "fan", "dan", "tan",
    "lan", "gan", "kan", "han", "mao", "bao", "dao", "tao", "lao", "gao", "hao", "ji", "qi", "xi", "ju", "qu", "xu",
    "li", "ni", "mi", "bi", "di", "ti", "shi", "zi", "yu", "wu", "yi", "wang", "yang", "zhong", "xue", "liu", "dui",
];

const MORAE: &[&str] = &[
    "ka", "ki", "ku", "ke", "ko", "sa", "shi", "su", "se", "so", "ta", "chi", "tsu", "te", "to", "na", "ni", "nu",
    "ne", "no", "ha", "hi", "fu", "he", "ho", "ma", "mi", "mu", "me", "mo", "ra", "ri", "ru", "re", "ro", "ga", "gi",
    "gu", "ge", "go", "kyo", "sho", "ya", "yo", "wa",
];

/// Stroke kinds used by the generator; a small pool so that type sequences
/// collide often and the geometry has to tell characters apart.
const STROKE_POOL: &[&str] = &["h", "s", "p", "d", "t", "hz", "sg", "pd"];

struct Glyph {
    cp: char,
    strokes: Vec<Stroke<f64>>,
    level: u8,
    /// Strokes of the first component, for composed glyphs.
    split: Option<usize>,
    topic: usize,
    radical: u8,
    cmn: Option<String>,
    on: Option<String>,
    kun: Option<String>,
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn primitive_strokes(rng: &mut ChaCha8Rng) -> Vec<Stroke<f64>> {
    let n = rng.random_range(2..=4);
    (0..n)
        .map(|_| {
            let code = STROKE_POOL.choose(rng).expect("nonempty pool");
            debug_assert!(STROKE_CODES.contains(code));
            let kind: StrokeType = code.parse().expect("valid code");
            loop {
                let a = (round3(rng.random_range(0.05..0.95)), round3(rng.random_range(0.05..0.95)));
                let b = (round3(rng.random_range(0.05..0.95)), round3(rng.random_range(0.05..0.95)));
                if (a.0 - b.0).abs() > 0.1 && (a.1 - b.1).abs() > 0.1 {
                    return Stroke::segment(kind, a, b);
                }
            }
        })
        .collect()
}

/// Side by side (`stacked == false`) or top and bottom.
fn compose(first: &[Stroke<f64>], second: &[Stroke<f64>], stacked: bool) -> Vec<Stroke<f64>> {
    let (a, b) = if stacked {
        ((1.0, 0.5, 0.0, 0.0), (1.0, 0.5, 0.0, 0.5))
    } else {
        ((0.5, 1.0, 0.0, 0.0), (0.5, 1.0, 0.5, 0.0))
    };
    first
        .iter()
        .map(|s| s.transformed(a.0, a.1, a.2, a.3))
        .chain(second.iter().map(|s| s.transformed(b.0, b.1, b.2, b.3)))
        .collect()
}

fn codepoint(i: usize, supplementary_from: usize) -> char {
    let base = if i >= supplementary_from { 0x20000 + (i - supplementary_from) } else { 0x4E00 + i };
    char::from_u32(base as u32).expect("valid codepoint")
}

fn random_on(rng: &mut ChaCha8Rng) -> String {
    let mut s = MORAE.choose(rng).unwrap().to_string();
    if rng.random_bool(0.4) {
        s.push('n');
    } else if rng.random_bool(0.3) {
        s.push_str(MORAE.choose(rng).unwrap());
    }
    s
}

fn random_kun(rng: &mut ChaCha8Rng) -> String {
    (0..rng.random_range(2..=4)).map(|_| *MORAE.choose(rng).unwrap()).collect()
}

fn random_cmn(rng: &mut ChaCha8Rng) -> String {
    format!("{}{}", PINYIN.choose(rng).unwrap(), rng.random_range(1..=4))
}

fn retone(reading: &str, rng: &mut ChaCha8Rng) -> String {
    let base = reading.trim_end_matches(|c: char| c.is_ascii_digit());
    if rng.random_bool(0.5) {
        reading.to_string()
    } else {
        format!("{base}{}", rng.random_range(1..=4))
    }
}

pub fn generate(config: &SyntheticConfig) -> SyntheticDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let total = config.primitives + config.level1 + config.level2 + config.variants;
    let supplementary_from = total - config.supplementary.min(total);
    let mut glyphs: Vec<Glyph> = Vec::with_capacity(total);
    let mut variant_pairs = Vec::new();

    for i in 0..config.primitives {
        glyphs.push(Glyph {
            cp: codepoint(i, supplementary_from),
            strokes: primitive_strokes(&mut rng),
            level: 0,
            split: None,
            topic: i % config.topics,
            radical: (i % 214 + 1) as u8,
            cmn: Some(random_cmn(&mut rng)),
            on: Some(random_on(&mut rng)),
            kun: rng.random_bool(0.6).then(|| random_kun(&mut rng)),
        });
    }

    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut compose_level = |glyphs: &mut Vec<Glyph>, rng: &mut ChaCha8Rng, level: u8, count: usize| {
        let first_pool: Vec<usize> = (0..glyphs.len()).filter(|&g| glyphs[g].level + 1 == level).collect();
        let prims: Vec<usize> = (0..config.primitives).collect();
        let mut made = 0;
        while made < count {
            let sem = *first_pool.choose(rng).unwrap();
            let phon = *prims.choose(rng).unwrap();
            if sem == phon || !used.insert((sem, phon)) {
                continue;
            }
            let i = glyphs.len();
            let stacked = rng.random_bool(0.3);
            let (s, p) = (&glyphs[sem], &glyphs[phon]);
            let inherit = rng.random_bool(0.7);
            let readingless = level == 2 && rng.random_bool(0.15);
            let mut glyph = Glyph {
                cp: codepoint(i, supplementary_from),
                strokes: compose(&s.strokes, &p.strokes, stacked),
                level,
                split: Some(s.strokes.len()),
                topic: s.topic,
                radical: s.radical,
                cmn: None,
                on: None,
                kun: None,
            };
            let (pc, po) = (p.cmn.clone(), p.on.clone());
            if !readingless {
                glyph.cmn = Some(match (inherit, pc) {
                    (true, Some(c)) => retone(&c, rng),
                    _ => random_cmn(rng),
                });
                glyph.on = Some(match (inherit, po) {
                    (true, Some(o)) => o,
                    _ => random_on(rng),
                });
                glyph.kun = rng.random_bool(0.5).then(|| random_kun(rng));
            }
            glyphs.push(glyph);
            made += 1;
        }
    };
    compose_level(&mut glyphs, &mut rng, 1, config.level1);
    compose_level(&mut glyphs, &mut rng, 2, config.level2);

    // variants: a composed character drawn with its components stacked differently
    let composed: Vec<usize> = (config.primitives..glyphs.len()).collect();
    let mut picked = BTreeSet::new();
    while picked.len() < config.variants.min(composed.len()) {
        picked.insert(*composed.choose(&mut rng).unwrap());
    }
    for src in picked {
        let i = glyphs.len();
        let g = &glyphs[src];
        let split = g.split.expect("composed glyph");
        // undo the layout by renormalizing each half to the unit square, then redo it the other way
        let renorm = |s: &[Stroke<f64>]| -> Vec<Stroke<f64>> {
            let xs = s.iter().flat_map(|t| t.skeleton.iter().map(|p| p.x));
            let ys = s.iter().flat_map(|t| t.skeleton.iter().map(|p| p.y));
            let (x0, x1) = xs.fold((f64::MAX, f64::MIN), |(a, b), x| (a.min(x), b.max(x)));
            let (y0, y1) = ys.fold((f64::MAX, f64::MIN), |(a, b), y| (a.min(y), b.max(y)));
            let (sx, sy) = (0.9 / (x1 - x0).max(1e-6), 0.9 / (y1 - y0).max(1e-6));
            s.iter().map(|t| t.transformed(sx, sy, 0.05 - x0 * sx, 0.05 - y0 * sy)).collect()
        };
        let (a, b) = g.strokes.split_at(split);
        let strokes = compose(&renorm(a), &renorm(b), true);
        let glyph = Glyph {
            cp: codepoint(i, supplementary_from),
            strokes,
            level: g.level,
            split: g.split,
            topic: g.topic,
            radical: g.radical,
            cmn: g.cmn.clone(),
            on: None,
            kun: None,
        };
        variant_pairs.push((g.cp, glyph.cp));
        glyphs.push(glyph);
    }

    let mut files = BTreeMap::new();

    let mut strokes = String::new();
    for g in &glyphs {
        writeln!(strokes, "{}", format_strokes(g.cp, &g.strokes)).unwrap();
    }
    files.insert("strokes.tsv", strokes);

    let mut readings = String::new();
    for g in &glyphs {
        for (tag, r) in [("cmn", &g.cmn), ("ja_on", &g.on), ("ja_kun", &g.kun)] {
            if let Some(r) = r {
                writeln!(readings, "{}\t{tag}\t{r}", format_codepoint(g.cp)).unwrap();
            }
        }
    }
    files.insert("readings.tsv", readings);

    let mut variants = String::new();
    for (a, b) in &variant_pairs {
        writeln!(variants, "{}\t{}", format_codepoint(*a), format_codepoint(*b)).unwrap();
    }
    files.insert("variants.tsv", variants);

    let mut radicals = String::new();
    for g in &glyphs {
        writeln!(radicals, "{}\t{}", format_codepoint(g.cp), g.radical).unwrap();
    }
    files.insert("radicals.tsv", radicals);

    // synsets: per topic a small tree of hypernym relations
    let by_topic: Vec<Vec<usize>> =
        (0..config.topics).map(|t| (0..glyphs.len()).filter(|&g| glyphs[g].topic == t).collect()).collect();
    let mut synsets = String::new();
    let mut relations = String::new();
    let mut glosses = String::new();
    let sid = |t: usize, j: usize| format!("t{t}s{j}");
    for (t, members) in by_topic.iter().enumerate() {
        for j in 0..config.synsets_per_topic {
            let mut lemmas = vec![format!("topic{t}-{j}")];
            for _ in 0..3 {
                let a = glyphs[*members.choose(&mut rng).unwrap()].cp;
                let b = glyphs[*members.choose(&mut rng).unwrap()].cp;
                lemmas.push(format!("{a}{b}"));
            }
            writeln!(synsets, "{}\t{}", sid(t, j), lemmas.join("|")).unwrap();
            if j > 0 {
                let parent = if j <= 3 { 0 } else { 1 + (j - 4) % 3 };
                writeln!(relations, "{}\thypernym\t{}", sid(t, j), sid(t, parent)).unwrap();
            }
            if j + 1 < config.synsets_per_topic && rng.random_bool(0.3) {
                writeln!(relations, "{}\tmeronym\t{}", sid(t, j + 1), sid(t, j)).unwrap();
            }
        }
        if config.topics > 1 {
            writeln!(relations, "{}\tantonym\t{}", sid(t, 0), sid((t + 1) % config.topics, 0)).unwrap();
        }
    }
    for (i, g) in glyphs.iter().enumerate().take(config.primitives) {
        let j = rng.random_range(0..config.synsets_per_topic);
        writeln!(glosses, "{}\ttopic{}-{j}", format_codepoint(g.cp), i % config.topics).unwrap();
    }
    files.insert("synsets.tsv", synsets);
    files.insert("relations.tsv", relations);
    files.insert("glosses.tsv", glosses);

    // corpus: a share of the characters from the document's topic, Zipf-like within it
    let mut corpus = String::new();
    let mut counts: [BTreeMap<char, u64>; 3] = Default::default();
    for d in 0..config.documents {
        let t = d % config.topics;
        let text: String = (0..config.doc_len)
            .map(|_| {
                let pool = if rng.random_bool(config.topic_share) { &by_topic[t] } else { &by_topic[rng.random_range(0..config.topics)] };
                let r: f64 = rng.random();
                let k = ((pool.len() as f64).powf(r) - 1.0) as usize;
                glyphs[pool[k.min(pool.len() - 1)]].cp
            })
            .collect();
        for c in text.chars() {
            *counts[0].entry(c).or_insert(0) += 1;
            *counts[1 + d % 2].entry(c).or_insert(0) += 1;
        }
        writeln!(corpus, "topic{t}\t{text}").unwrap();
    }
    files.insert("corpus.tsv", corpus);
    for (name, c) in ["freq.tsv", "freq_even.tsv", "freq_odd.tsv"].into_iter().zip(&counts) {
        let mut s = String::new();
        for (ch, n) in c {
            writeln!(s, "{}\t{n}", format_codepoint(*ch)).unwrap();
        }
        files.insert(name, s);
    }
    SyntheticDataset { files }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_readings, parse_strokes};

    #[test]
    fn deterministic_and_parseable() {
        let small = SyntheticConfig { level1: 20, level2: 20, variants: 4, documents: 20, ..Default::default() };
        let a = generate(&small);
        assert_eq!(a, generate(&small));
        assert_ne!(a, generate(&SyntheticConfig { seed: 8, ..small.clone() }));
        let strokes = parse_strokes::<f64>(a.get("strokes.tsv"), "strokes.tsv").unwrap();
        assert_eq!(strokes.len(), 40 + 20 + 20 + 4);
        parse_readings(a.get("readings.tsv"), "readings.tsv").unwrap();
    }
}
