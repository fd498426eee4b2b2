use thiserror::Error;

use crate::graph::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate input: n must be at least 1")]
    Degenerate,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanning(String),

    #[error("mixed vertex counts: expected n = {expected}, found n = {found}")]
    MixedN { expected: usize, found: usize },

    #[error("point lies on a facet of the cone of tree {tree}")]
    BoundaryPoint { tree: String },

    #[error("no generic point found after {attempts} draws with bound {bound}")]
    SamplingExhausted { attempts: usize, bound: u64 },

    #[error("path-cone evaluation matrix has rank {rank}, need {needed}; add more points")]
    RankDeficient { rank: usize, needed: usize },

    #[error("target indicator is not in the span of the path cones")]
    Inconsistent,

    #[error("joint kernel has dimension {0}, expected 1")]
    KernelDimension(usize),

    #[error("pairing {pairing} disagrees with closed form {closed_form} at s = {perm}")]
    Mismatch {
        perm: Permutation,
        pairing: String,
        closed_form: String,
    },

    #[error("invalid oriented graph: {0}")]
    InvalidOrientation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
