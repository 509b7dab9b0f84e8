//! Constructive reductions and the maps needed to move solutions across
//! them.
//!
//! Every reduction returns a [`ReductionArtifact`]: the output instance, the
//! correspondence tables (`maps`) that lift and project use, and a small
//! `meta` record with the parameters. Artifacts serialize to the bundle
//! format the CLI reads and writes.

mod forbidding;
mod frozen;
mod parts;
mod rst_to_list;
mod split;

pub use forbidding::{
    build_forbidding_path, check_forbidding_path, forbidding_length, switch_coloring, ForbiddingPath,
    ForbiddingReport, PairReport,
};
pub use frozen::{
    build_frozen_graph, lift_plain_sequence, list_to_plain, list_to_plain_artifact, project_plain_sequence,
    reduce_palette, Family, FrozenBlock, FrozenGadget, FrozenMaps, PaletteMaps,
};
pub use parts::{assign_parts, ColorSet, PartAssignment, PathEnds};
pub use rst_to_list::{
    lift_ts_sequence, project_recoloring_sequence, rst_to_list, rst_to_list_artifact, RstMaps, RstPath,
};
pub use split::{
    lcol_to_split, lcr_to_split, lift_split_sequence, project_split_sequence, ProjectionState, SplitMaps,
    SplitProjection,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, ColoringError, ReconfigInstance};
use crate::graph::{Graph, GraphError, Vertex};
use crate::oracle::OracleError;
use crate::sliding_tokens::{Restriction, StError, StInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    St(#[from] StError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("part assignment infeasible: {0}")]
    Parts(String),
    #[error("input sequence step {index} is invalid: {reason}")]
    BadStep { index: usize, reason: String },
    #[error("token configuration has no list coloring image: {0}")]
    Unrepresentable(String),
    #[error("artifact of kind {found} cannot be used here, expected {expected}")]
    WrongArtifact { expected: &'static str, found: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// `(2, k)`-colorability question produced by `lcol_to_split`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorabilityInstance {
    pub graph: Graph,
    pub d: usize,
    pub k: Color,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutInstance {
    St(StInstance),
    Reconfig(ReconfigInstance),
    Colorability(ColorabilityInstance),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Maps {
    RestrictSt { source: StInstance, trace: Vec<crate::sliding_tokens::Rewrite> },
    RstToList(RstMaps),
    ListToPlain(FrozenMaps),
    ReducePalette(PaletteMaps),
    Split(SplitMaps),
}

impl Maps {
    pub fn kind(&self) -> &'static str {
        match self {
            Maps::RestrictSt { .. } => "restrict_st",
            Maps::RstToList(_) => "rst_to_list",
            Maps::ListToPlain(_) => "list_to_plain",
            Maps::ReducePalette(_) => "reduce_palette",
            Maps::Split(m) if m.alpha.is_some() => "lcr_to_split",
            Maps::Split(_) => "lcol_to_split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub construction: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Palette of the source instance, when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Color>,
    /// Palette of the output instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_prime: Option<Color>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Color>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Meta {
    pub fn new(construction: &str) -> Meta {
        Meta {
            construction: construction.to_string(),
            d: None,
            k: None,
            k_prime: None,
            l: None,
            m: None,
            groups: None,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionArtifact {
    pub instance: OutInstance,
    pub maps: Maps,
    pub meta: Meta,
}

impl ReductionArtifact {
    pub fn reconfig(&self) -> Option<&ReconfigInstance> {
        match &self.instance {
            OutInstance::Reconfig(r) => Some(r),
            _ => None,
        }
    }

    pub fn wrong(&self, expected: &'static str) -> ReductionError {
        ReductionError::WrongArtifact { expected, found: self.maps.kind().to_string() }
    }
}

/// Wraps `restrict` so its result travels in the same bundle format.
pub fn restrict_artifact(st: &StInstance) -> Result<ReductionArtifact, ReductionError> {
    let Restriction { out, trace } = crate::sliding_tokens::restrict(st)?;
    let mut meta = Meta::new("restrict_st");
    meta.note = Some(format!("{} rewrites", trace.len()));
    Ok(ReductionArtifact { instance: OutInstance::St(out), maps: Maps::RestrictSt { source: st.clone(), trace }, meta })
}

/// Vertex label helper shared by the builders.
pub(crate) fn push_vertex(labels: &mut Vec<String>, label: String) -> Vertex {
    labels.push(label);
    labels.len() - 1
}
