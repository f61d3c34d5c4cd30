use std::path::PathBuf;

use thiserror::Error;

use crate::surface::{Diagnostic, SurfaceKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported surface {kind}: {reason}")]
    UnsupportedSurface { kind: SurfaceKind, reason: String },

    #[error("invalid triangulation: {}", join(.0))]
    InvalidTriangulation(Vec<Diagnostic>),

    #[error("illegal flip of edge {edge} (triangles {triangles:?})")]
    IllegalFlip { edge: usize, triangles: (usize, usize) },

    #[error("inadmissible weights at triangle {triangle}: {reason}")]
    Inadmissible { triangle: usize, reason: String },

    #[error("weight vector has length {found}, triangulation has {expected} edges")]
    WeightLength { expected: usize, found: usize },

    #[error("not an essential simple closed curve: {0}")]
    NotEssential(String),

    #[error("curves live on different triangulations")]
    MismatchedTriangulation,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent holonomy request: {0}")]
    Holonomy(String),

    #[error("invariant broken: {0}")]
    Invariant(String),

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

fn join(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
