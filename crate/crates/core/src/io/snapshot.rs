//! Line-oriented graph snapshot.
//!
//! ```text
//! SINOGRAPH-GRAPH 1
//! META
//! phi_normalizer\t<language>\t<D>
//! semantic_normalizer\t<value>
//! semantic_coefficients\t<a>\t<b>\t<c>
//! NODES\tid\trepresentative\tmembers\tsynsets
//! <id>\t<hex>\t<hex>[,<hex>...]\t<synset>[|<synset>...]
//! EDGES\tsub\tsuper\tdmin_cmn\tphi_cmn\tdmin_ja_on\tphi_ja_on\tdmin_ja_kun\tphi_ja_kun\tf1\tf2\tr\ts_raw\ts
//! <sub>\t<super>\t...
//! ```
//!
//! `-` marks a value that was not computed, `unknown` a phonetic value that
//! is undefined for lack of readings. Numbers are written in their shortest
//! round-trip form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::tsv::{format_codepoint, parse_codepoint};
use crate::charstore::{AllographClass, ClassId, Language, Partition};
use crate::error::{Error, Result};
use crate::graphcore::{DiGraph, InclusionGraph};
use crate::phonetics::PhoneticityEdge;
use crate::semantics::SemanticityEdge;
use crate::Scalar;

pub const GRAPH_HEADER: &str = "SINOGRAPH-GRAPH 1";
const NOT_COMPUTED: &str = "-";
const UNKNOWN: &str = "unknown";

fn edge_columns() -> Vec<String> {
    let mut cols = vec!["sub".to_string(), "super".to_string()];
    for l in Language::ALL {
        cols.push(format!("dmin_{}", l.tag()));
        cols.push(format!("phi_{}", l.tag()));
    }
    cols.extend(["f1", "f2", "r", "s_raw", "s"].map(String::from));
    cols
}

fn opt<T: Scalar>(v: Option<T>) -> String {
    v.map_or_else(|| UNKNOWN.to_string(), |x| x.to_string())
}

pub fn write_snapshot<T: Scalar>(g: &InclusionGraph<T>) -> String {
    let mut s = String::new();
    writeln!(s, "{GRAPH_HEADER}").unwrap();
    writeln!(s, "META").unwrap();
    for (l, d) in &g.meta.phi_normalizer {
        writeln!(s, "phi_normalizer\t{}\t{d}", l.tag()).unwrap();
    }
    if let Some(n) = g.meta.semantic_normalizer {
        writeln!(s, "semantic_normalizer\t{n}").unwrap();
    }
    if let Some([a, b, c]) = g.meta.semantic_coefficients {
        writeln!(s, "semantic_coefficients\t{a}\t{b}\t{c}").unwrap();
    }
    writeln!(s, "NODES\tid\trepresentative\tmembers\tsynsets").unwrap();
    for class in g.classes().classes() {
        let members: Vec<String> = class.members.iter().map(|&c| format_codepoint(c)).collect();
        let synsets = g.annotation(class.id).map_or_else(
            || NOT_COMPUTED.to_string(),
            |set| set.iter().map(String::as_str).collect::<Vec<_>>().join("|"),
        );
        writeln!(s, "{}\t{}\t{}\t{synsets}", class.id, format_codepoint(class.representative), members.join(",")).unwrap();
    }
    writeln!(s, "EDGES\t{}", edge_columns()[..].join("\t")).unwrap();
    for e in g.edges() {
        let mut cols = vec![e.0.to_string(), e.1.to_string()];
        let attrs = g.attrs(e);
        for l in Language::ALL {
            match attrs.and_then(|a| a.phonetic.get(&l)) {
                Some(p) => {
                    cols.push(opt(p.d_min));
                    cols.push(opt(p.phi));
                }
                None => cols.extend([NOT_COMPUTED.to_string(), NOT_COMPUTED.to_string()]),
            }
        }
        match attrs.and_then(|a| a.semantic.as_ref()) {
            Some(v) => cols.extend([v.f1.to_string(), v.f2.to_string(), v.r.to_string(), v.raw.to_string(), v.s.to_string()]),
            None => cols.extend(std::iter::repeat_n(NOT_COMPUTED.to_string(), 5)),
        }
        writeln!(s, "{}", cols.join("\t")).unwrap();
    }
    s
}

#[derive(PartialEq)]
enum Section {
    Start,
    Meta,
    Nodes,
    Edges,
}

pub fn read_snapshot<T: Scalar>(text: &str, path: &str) -> Result<InclusionGraph<T>> {
    let err = |line: usize, msg: String| Error::parse(path, line, msg);
    let num = |s: &str, line: usize| -> Result<T> { s.parse::<T>().map_err(|_| err(line, format!("bad number {s:?}"))) };
    let count = |s: &str, line: usize| -> Result<u64> { s.parse::<u64>().map_err(|_| err(line, format!("bad count {s:?}"))) };
    let class_id = |s: &str, line: usize| -> Result<ClassId> {
        s.parse::<u32>().map(ClassId).map_err(|_| err(line, format!("bad class id {s:?}")))
    };
    let unknown_or = |s: &str, line: usize| -> Result<Option<T>> { if s == UNKNOWN { Ok(None) } else { num(s, line).map(Some) } };

    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, GRAPH_HEADER)) => {}
        _ => return Err(err(1, format!("missing {GRAPH_HEADER:?} header"))),
    }
    let mut section = Section::Start;
    let mut meta = crate::graphcore::GraphMeta::default();
    let mut classes = Vec::new();
    let mut annotations = BTreeMap::new();
    let mut edges: Vec<((ClassId, ClassId), Vec<String>, usize)> = Vec::new();
    let edge_cols = edge_columns();

    for (line, l) in lines {
        if l.is_empty() {
            continue;
        }
        let cols: Vec<&str> = l.split('\t').collect();
        match cols[0] {
            "META" if section == Section::Start => {
                section = Section::Meta;
                continue;
            }
            "NODES" if matches!(section, Section::Start | Section::Meta) => {
                section = Section::Nodes;
                continue;
            }
            "EDGES" if section == Section::Nodes => {
                if cols[1..] != edge_cols.iter().map(String::as_str).collect::<Vec<_>>()[..] {
                    return Err(err(line, "unexpected edge columns".into()));
                }
                section = Section::Edges;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Start => return Err(err(line, "expected a section header".into())),
            Section::Meta => match (cols[0], cols.len()) {
                ("phi_normalizer", 3) => {
                    let l: Language = cols[1].parse().map_err(|e: Error| err(line, e.to_string()))?;
                    meta.phi_normalizer.insert(l, num(cols[2], line)?);
                }
                ("semantic_normalizer", 2) => meta.semantic_normalizer = Some(num(cols[1], line)?),
                ("semantic_coefficients", 4) => {
                    meta.semantic_coefficients = Some([num(cols[1], line)?, num(cols[2], line)?, num(cols[3], line)?])
                }
                _ => return Err(err(line, format!("unknown META entry {:?}", cols[0]))),
            },
            Section::Nodes => {
                if cols.len() != 4 {
                    return Err(err(line, format!("expected 4 node columns, found {}", cols.len())));
                }
                let id = class_id(cols[0], line)?;
                let cp = |s: &str| parse_codepoint(s).ok_or_else(|| err(line, format!("bad codepoint {s:?}")));
                let representative = cp(cols[1])?;
                let members = cols[2].split(',').map(cp).collect::<Result<Vec<char>>>()?;
                if !members.contains(&representative) {
                    return Err(err(line, "representative is not a member".into()));
                }
                if cols[3] != NOT_COMPUTED {
                    annotations.insert(id, cols[3].split('|').map(str::to_string).collect::<BTreeSet<_>>());
                }
                classes.push(AllographClass { id, members, representative });
            }
            Section::Edges => {
                if cols.len() != edge_cols.len() {
                    return Err(err(line, format!("expected {} edge columns, found {}", edge_cols.len(), cols.len())));
                }
                let e = (class_id(cols[0], line)?, class_id(cols[1], line)?);
                edges.push((e, cols[2..].iter().map(|s| s.to_string()).collect(), line));
            }
        }
    }
    if section != Section::Edges {
        return Err(err(text.lines().count(), "truncated snapshot".into()));
    }

    let partition = Partition::from_classes(classes).map_err(|e| err(0, e.to_string()))?;
    let ids: Vec<ClassId> = partition.classes().iter().map(|c| c.id).collect();
    let mut dag = DiGraph::from_edges(ids, []);
    for &(e, _, line) in &edges {
        if e.0.index() >= partition.len() || e.1.index() >= partition.len() {
            return Err(err(line, format!("edge {} -> {} references a missing node", e.0, e.1)));
        }
        if !dag.add_edge(e.0, e.1) {
            return Err(err(line, format!("duplicate or self edge {} -> {}", e.0, e.1)));
        }
    }
    let mut g = InclusionGraph::from_parts(partition, dag);
    g.meta = meta;
    g.set_annotations(annotations);
    for (e, vals, line) in edges {
        let mut phonetic = BTreeMap::new();
        for (k, l) in Language::ALL.into_iter().enumerate() {
            let (d, p) = (vals[2 * k].as_str(), vals[2 * k + 1].as_str());
            if d == NOT_COMPUTED || p == NOT_COMPUTED {
                continue;
            }
            phonetic.insert(l, PhoneticityEdge { d_min: unknown_or(d, line)?, phi: unknown_or(p, line)? });
        }
        let sem = &vals[6..];
        let semantic = if sem.iter().all(|s| s == NOT_COMPUTED) {
            None
        } else {
            Some(SemanticityEdge {
                f1: count(&sem[0], line)?,
                f2: count(&sem[1], line)?,
                r: num(&sem[2], line)?,
                raw: num(&sem[3], line)?,
                s: num(&sem[4], line)?,
            })
        };
        if !phonetic.is_empty() || semantic.is_some() {
            let a = g.attrs_mut(e);
            a.phonetic = phonetic;
            a.semantic = semantic;
        }
    }
    Ok(g)
}
