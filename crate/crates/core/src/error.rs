use std::fmt;

use crate::construct::CaseTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("vertex set is empty")]
    EmptySet,

    #[error("vertex {vertex} lies in a part of size {part_size}, so it has no unique clone")]
    NoUniqueClone { vertex: usize, part_size: usize },

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cap exceeded: {what} (limit {limit}, requested {requested}{})", estimate_suffix(*.estimated_classes))]
    CapExceeded {
        what: &'static str,
        limit: u64,
        requested: u64,
        estimated_classes: Option<f64>,
    },

    #[error("every cover candidate failed verification; see trace ({} steps)", .0.trace.cases.len())]
    ConstructionExhausted(Box<Exhausted>),

    #[error("inequality violated: {0}")]
    InequalityViolated(String),

    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn estimate_suffix(est: Option<f64>) -> String {
    match est {
        Some(e) => format!(", ~{e:.3e} coloring classes"),
        None => String::new(),
    }
}

/// Forensics for a failed construction: the coloring and every step tried.
#[derive(Debug, Clone)]
pub struct Exhausted {
    pub coloring: crate::graph::EdgeColoring,
    pub trace: CaseTrace,
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parts {:?}: ", self.coloring.shape().part_sizes())?;
        for case in &self.trace.cases {
            write!(f, "{} {:?}; ", case.label, case.witnesses)?;
        }
        Ok(())
    }
}
