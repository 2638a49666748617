//! File formats.

mod snapshot;
mod tsv;
mod vectors;

use std::path::Path;

pub use snapshot::{read_snapshot, write_snapshot, GRAPH_HEADER};
pub use tsv::{
    format_codepoint, format_strokes, parse_codepoint, parse_corpus, parse_freq, parse_glosses, parse_radicals,
    parse_readings, parse_relations, parse_strokes, parse_synsets, parse_variants,
};
pub use vectors::{read_vectors, write_vectors, VectorFile, VECTORS_HEADER};

use crate::error::{Error, Result};

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
