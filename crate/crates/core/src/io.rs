//! File formats. Everything is JSON except the one-line TSV search report.
//!
//! A coloring file lists the part sizes and then either every edge with its
//! color or the edge bits as hex (bit `i` of the byte stream is edge `i` in
//! lexicographic order, 1 = blue):
//!
//! ```json
//! {"parts": [2, 1], "edges": [[0, 2, "red"], [1, 2, "blue"]]}
//! {"parts": [2, 1], "bits": "02"}
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColorClass, EdgeColoring, MultipartiteShape};
use crate::search::SearchResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub parts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize, ColorClass)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits: Option<String>,
    /// Display names by vertex id.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, String>,
}

impl ColoringFile {
    /// Edge-list form.
    pub fn from_coloring(chi: &EdgeColoring) -> Self {
        let edges = chi
            .shape()
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (u, v, chi.edge_color(i)))
            .collect();
        ColoringFile { parts: chi.shape().part_sizes().to_vec(), edges: Some(edges), bits: None, labels: BTreeMap::new() }
    }

    pub fn with_labels(mut self, labels: &[String]) -> Self {
        self.labels = labels.iter().cloned().enumerate().collect();
        self
    }

    pub fn to_coloring(&self) -> Result<EdgeColoring> {
        if self.parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {:?} must be listed largest first", self.parts)));
        }
        let shape = Arc::new(MultipartiteShape::new(&self.parts)?);
        match (&self.edges, &self.bits) {
            (Some(edges), None) => EdgeColoring::from_edge_list(shape, edges),
            (None, Some(bits)) => EdgeColoring::from_hex(shape, bits),
            _ => Err(Error::Parse("a coloring needs exactly one of \"edges\" and \"bits\"".into())),
        }
    }
}

pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    serde_json::from_str::<ColoringFile>(text)?.to_coloring()
}

pub fn coloring_to_json(chi: &EdgeColoring) -> String {
    to_json(&ColoringFile::from_coloring(chi))
}

pub fn read_coloring(path: &Path) -> Result<EdgeColoring> {
    parse_coloring(&std::fs::read_to_string(path)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value))?;
    Ok(())
}

/// Part sizes from `"4,3,2"`.
pub fn parse_parts(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part size {p:?} in {s:?}"))))
        .collect()
}

pub const TSV_HEADER: &str = "shape\tt\tD\tclasses_enumerated\tpruned_by_rule\tseconds";

/// One report row. `seconds` is left empty when `timing` is off, which keeps
/// reports byte-identical across runs.
pub fn tsv_row(result: &SearchResult, timing: bool) -> String {
    let o = &result.outcome;
    let shape = o.shape.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let rules = o.counts.pruned_by_rule.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
    let d = if o.exceeds_d_max { format!(">{}", o.d_max) } else { o.d.to_string() };
    let seconds = if timing { format!("{:.3}", result.elapsed_secs) } else { String::new() };
    format!("{shape}\t{}\t{d}\t{}\t{rules}\t{seconds}", o.t, o.counts.classes)
}
