//! Tab-separated input files. Blank lines and lines starting with `#` are
//! skipped everywhere; codepoints are hexadecimal, with or without `U+`.

use std::collections::BTreeMap;

use crate::charstore::{Language, Reading};
use crate::error::{Error, Result};
use crate::phonetics::split_morae;
use crate::semantics::{SemRelation, Synset};
use crate::strokesig::{Point, Stroke, StrokeType};
use crate::Scalar;

fn rows<'a>(text: &'a str) -> impl Iterator<Item = (usize, Vec<&'a str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split('\t').collect()))
}

fn columns<'a>(cols: &[&'a str], n: usize, path: &str, line: usize) -> Result<()> {
    if cols.len() != n {
        return Err(Error::parse(path, line, format!("expected {n} tab-separated columns, found {}", cols.len())));
    }
    Ok(())
}

pub fn parse_codepoint(s: &str) -> Option<char> {
    let hex = s.trim().trim_start_matches("U+").trim_start_matches("u+");
    u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
}

pub fn format_codepoint(c: char) -> String {
    format!("{:04X}", u32::from(c))
}

fn codepoint(s: &str, path: &str, line: usize) -> Result<char> {
    parse_codepoint(s).ok_or_else(|| Error::parse(path, line, format!("bad codepoint {s:?}")))
}

fn number<N: std::str::FromStr>(s: &str, path: &str, line: usize) -> Result<N> {
    s.trim().parse().map_err(|_| Error::parse(path, line, format!("bad number {s:?}")))
}

fn stroke<T: Scalar>(s: &str, path: &str, line: usize) -> Result<Stroke<T>> {
    let (kind, points) = s.split_once(':').ok_or_else(|| Error::parse(path, line, format!("stroke {s:?} lacks ':'")))?;
    let kind: StrokeType = kind.trim().parse().map_err(|e: Error| Error::parse(path, line, e.to_string()))?;
    let mut skeleton = Vec::new();
    for p in points.split(")-(") {
        let p = p.trim().trim_start_matches('(').trim_end_matches(')');
        let (x, y) = p.split_once(',').ok_or_else(|| Error::parse(path, line, format!("bad point {p:?}")))?;
        skeleton.push(Point::new(number(x, path, line)?, number(y, path, line)?));
    }
    Stroke::new(kind, skeleton).map_err(|e| Error::parse(path, line, e.to_string()))
}

/// `<hex>\t<type>:(x1,y1)-(x2,y2)-...;<type>:...`, strokes in drawing order.
pub fn parse_strokes<T: Scalar>(text: &str, path: &str) -> Result<BTreeMap<char, Vec<Stroke<T>>>> {
    let mut out = BTreeMap::new();
    for (line, cols) in rows(text) {
        columns(&cols, 2, path, line)?;
        let c = codepoint(cols[0], path, line)?;
        let strokes = cols[1]
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| stroke(s, path, line))
            .collect::<Result<Vec<_>>>()?;
        if strokes.is_empty() {
            return Err(Error::parse(path, line, "no strokes"));
        }
        if out.insert(c, strokes).is_some() {
            return Err(Error::parse(path, line, format!("U+{} listed twice", format_codepoint(c))));
        }
    }
    Ok(out)
}

pub fn format_strokes<T: Scalar>(c: char, strokes: &[Stroke<T>]) -> String {
    let body: Vec<String> = strokes
        .iter()
        .map(|s| {
            let pts: Vec<String> = s.skeleton.iter().map(|p| format!("({},{})", p.x, p.y)).collect();
            format!("{}:{}", s.kind, pts.join("-"))
        })
        .collect();
    format!("{}\t{}", format_codepoint(c), body.join(";"))
}

/// `<hex>\t<cmn|ja_on|ja_kun>\t<syllable>[ <syllable>...]`. Japanese tokens
/// are further split into morae.
pub fn parse_readings(text: &str, path: &str) -> Result<Vec<(char, Reading)>> {
    let mut out = Vec::new();
    for (line, cols) in rows(text) {
        columns(&cols, 3, path, line)?;
        let c = codepoint(cols[0], path, line)?;
        let language: Language = cols[1].parse().map_err(|e: Error| Error::parse(path, line, e.to_string()))?;
        let tokens = cols[2].split_whitespace();
        let syllables: Vec<String> = if language.is_japanese() {
            let mut v = Vec::new();
            for t in tokens {
                v.extend(split_morae(t).map_err(|e| Error::parse(path, line, e.to_string()))?);
            }
            v
        } else {
            tokens.map(str::to_string).collect()
        };
        let reading = Reading::new(language, syllables).map_err(|e| Error::parse(path, line, e.to_string()))?;
        out.push((c, reading));
    }
    Ok(out)
}

/// `<hex>\t<hex>` unordered pairs.
pub fn parse_variants(text: &str, path: &str) -> Result<Vec<(char, char)>> {
    rows(text)
        .map(|(line, cols)| {
            columns(&cols, 2, path, line)?;
            Ok((codepoint(cols[0], path, line)?, codepoint(cols[1], path, line)?))
        })
        .collect()
}

/// `<hex>\t<1..214>`.
pub fn parse_radicals(text: &str, path: &str) -> Result<BTreeMap<char, u8>> {
    let mut out = BTreeMap::new();
    for (line, cols) in rows(text) {
        columns(&cols, 2, path, line)?;
        let c = codepoint(cols[0], path, line)?;
        let r: u8 = number(cols[1], path, line)?;
        if !(1..=214).contains(&r) {
            return Err(Error::parse(path, line, format!("radical {r} outside 1..=214")));
        }
        out.insert(c, r);
    }
    Ok(out)
}

/// `<synset id>\t<lemma>[|<lemma>...]`.
pub fn parse_synsets(text: &str, path: &str) -> Result<Vec<Synset>> {
    rows(text)
        .map(|(line, cols)| {
            columns(&cols, 2, path, line)?;
            let lemmas = cols[1].split('|').map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect();
            Ok(Synset { id: cols[0].trim().to_string(), lemmas })
        })
        .collect()
}

/// `<src id>\t<type>\t<dst id>`.
pub fn parse_relations(text: &str, path: &str) -> Result<Vec<SemRelation>> {
    rows(text)
        .map(|(line, cols)| {
            columns(&cols, 3, path, line)?;
            Ok(SemRelation {
                source: cols[0].trim().to_string(),
                relation_type: cols[1].trim().to_string(),
                target: cols[2].trim().to_string(),
            })
        })
        .collect()
}

/// `<hex>\t<word>[|<word>...]`: dictionary gloss words per character.
pub fn parse_glosses(text: &str, path: &str) -> Result<BTreeMap<char, Vec<String>>> {
    let mut out: BTreeMap<char, Vec<String>> = BTreeMap::new();
    for (line, cols) in rows(text) {
        columns(&cols, 2, path, line)?;
        let c = codepoint(cols[0], path, line)?;
        out.entry(c).or_default().extend(cols[1].split('|').map(str::trim).filter(|w| !w.is_empty()).map(str::to_string));
    }
    Ok(out)
}

/// `<hex>\t<count>`.
pub fn parse_freq(text: &str, path: &str) -> Result<BTreeMap<char, u64>> {
    let mut out = BTreeMap::new();
    for (line, cols) in rows(text) {
        columns(&cols, 2, path, line)?;
        let c = codepoint(cols[0], path, line)?;
        if out.insert(c, number(cols[1], path, line)?).is_some() {
            return Err(Error::parse(path, line, format!("U+{} listed twice", format_codepoint(c))));
        }
    }
    Ok(out)
}

/// `<label>\t<document text>`, one document per line.
pub fn parse_corpus(text: &str, path: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() {
            continue;
        }
        let (label, doc) =
            l.split_once('\t').ok_or_else(|| Error::parse(path, i + 1, "expected <label>\\t<document text>"))?;
        out.push((label.to_string(), doc.to_string()));
    }
    Ok(out)
}
