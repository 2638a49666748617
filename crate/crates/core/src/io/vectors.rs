//! Sparse document vectors for the classifier.
//!
//! ```text
//! SINOGRAPH-VECTORS 1
//! VOCAB\t<n>
//! <index>\t<class id>\t<baseline|added>
//! DOCS\t<m>
//! <label>\t<index>:<value> <index>:<value> ...
//! ```

use std::fmt::Write as _;

use crate::charstore::ClassId;
use crate::classify::SparseVec;
use crate::error::{Error, Result};
use crate::features::{FeatureSet, Provenance, Vocabulary};
use crate::Scalar;

pub const VECTORS_HEADER: &str = "SINOGRAPH-VECTORS 1";

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFile<T> {
    pub vocabulary: Vocabulary,
    pub labels: Vec<String>,
    pub vectors: Vec<SparseVec<T>>,
}

impl<T: Scalar> VectorFile<T> {
    /// Normalized vectors of a feature set with their labels.
    pub fn from_features<S: AsRef<str>>(set: &FeatureSet<T>, labels: &[S]) -> Self {
        VectorFile {
            vocabulary: set.vocabulary.clone(),
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            vectors: set.to_sparse(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vocabulary.len()
    }
}

pub fn write_vectors<T: Scalar>(v: &VectorFile<T>) -> String {
    let mut s = String::new();
    writeln!(s, "{VECTORS_HEADER}").unwrap();
    writeln!(s, "VOCAB\t{}", v.vocabulary.len()).unwrap();
    for (i, (id, p)) in v.vocabulary.entries().enumerate() {
        let p = match p {
            Provenance::Baseline => "baseline",
            Provenance::AddedByChain => "added",
        };
        writeln!(s, "{i}\t{id}\t{p}").unwrap();
    }
    writeln!(s, "DOCS\t{}", v.vectors.len()).unwrap();
    for (label, x) in v.labels.iter().zip(&v.vectors) {
        let cells: Vec<String> = x.iter().map(|(i, w)| format!("{i}:{w}")).collect();
        writeln!(s, "{label}\t{}", cells.join(" ")).unwrap();
    }
    s
}

pub fn read_vectors<T: Scalar>(text: &str, path: &str) -> Result<VectorFile<T>> {
    let err = |line: usize, msg: String| Error::parse(path, line, msg);
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let mut next = |what: &str| lines.next().ok_or_else(|| err(0, format!("truncated file, expected {what}")));
    let (line, header) = next("header")?;
    if header != VECTORS_HEADER {
        return Err(err(line, format!("missing {VECTORS_HEADER:?} header")));
    }
    let size = |line: usize, l: &str, key: &str| -> Result<usize> {
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix('\t'))
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| err(line, format!("expected {key}\\t<count>")))
    };
    let (line, l) = next("VOCAB")?;
    let n = size(line, l, "VOCAB")?;
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let (line, l) = next("vocabulary entry")?;
        let cols: Vec<&str> = l.split('\t').collect();
        if cols.len() != 3 || cols[0].parse() != Ok(i) {
            return Err(err(line, format!("expected vocabulary entry {i}")));
        }
        let id = cols[1].parse::<u32>().map_err(|_| err(line, format!("bad class id {:?}", cols[1])))?;
        let p = match cols[2] {
            "baseline" => Provenance::Baseline,
            "added" => Provenance::AddedByChain,
            other => return Err(err(line, format!("bad provenance {other:?}"))),
        };
        entries.push((ClassId(id), p));
    }
    if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(err(line, "vocabulary ids must ascend".into()));
    }
    let (line, l) = next("DOCS")?;
    let m = size(line, l, "DOCS")?;
    let (mut labels, mut vectors) = (Vec::with_capacity(m), Vec::with_capacity(m));
    for _ in 0..m {
        let (line, l) = next("document")?;
        let (label, cells) = l.split_once('\t').ok_or_else(|| err(line, "expected <label>\\t<cells>".into()))?;
        let mut x = Vec::new();
        for cell in cells.split_whitespace() {
            let parsed = cell.split_once(':').and_then(|(i, w)| Some((i.parse::<usize>().ok()?, w.parse::<T>().ok()?)));
            let (i, w) = parsed.ok_or_else(|| err(line, format!("bad cell {cell:?}")))?;
            if i >= n {
                return Err(err(line, format!("index {i} outside vocabulary of {n}")));
            }
            x.push((i, w));
        }
        labels.push(label.to_string());
        vectors.push(x);
    }
    Ok(VectorFile { vocabulary: Vocabulary::from_entries(entries), labels, vectors })
}
