//! On-disk JSON shapes. Internals use dense ids; files use vertex labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{
    coloring_by_label, coloring_from_labels, lists_by_label, lists_from_labels, sequence_by_label,
    sequence_from_labels, Color, Coloring, ColoringError, ListAssignment, ReconfigInstance, ReconfigSequence,
};
use crate::graph::{Graph, Vertex};
use crate::sliding_tokens::{StError, StInstance, TokenConfig, TsMoveSequence};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    St(#[from] StError),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: Color,
    pub colors: BTreeMap<String, Color>,
}

impl ColoringJson {
    pub fn from_coloring(g: &Graph, col: &Coloring) -> ColoringJson {
        ColoringJson { k: col.k(), colors: coloring_by_label(g, col) }
    }

    pub fn resolve(&self, g: &Graph) -> Result<Coloring, ColoringError> {
        coloring_from_labels(g, self.k, &self.colors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsJson {
    pub lists: BTreeMap<String, Vec<Color>>,
}

impl ListsJson {
    pub fn from_lists(g: &Graph, lists: &ListAssignment) -> ListsJson {
        ListsJson { lists: lists_by_label(g, lists) }
    }

    pub fn resolve(&self, g: &Graph) -> Result<ListAssignment, ColoringError> {
        lists_from_labels(g, &self.lists)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SequenceJson {
    pub steps: Vec<(String, Color)>,
}

impl SequenceJson {
    pub fn from_sequence(g: &Graph, seq: &ReconfigSequence) -> SequenceJson {
        SequenceJson { steps: sequence_by_label(g, seq) }
    }

    pub fn resolve(&self, g: &Graph) -> Result<ReconfigSequence, ColoringError> {
        sequence_from_labels(g, &self.steps)
    }
}

/// TS moves as label pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TsMovesJson {
    pub moves: Vec<(String, String)>,
}

impl TsMovesJson {
    pub fn from_moves(g: &Graph, moves: &TsMoveSequence) -> TsMovesJson {
        TsMovesJson { moves: moves.moves.iter().map(|&(a, b)| (g.label(a), g.label(b))).collect() }
    }

    pub fn resolve(&self, g: &Graph) -> Result<TsMoveSequence, IoError> {
        let index = g.label_index();
        let get = |l: &String| index.get(l).copied().ok_or_else(|| IoError::UnknownLabel(l.clone()));
        let moves = self.moves.iter().map(|(a, b)| Ok((get(a)?, get(b)?))).collect::<Result<_, IoError>>()?;
        Ok(TsMoveSequence { moves })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceJson {
    pub graph: Graph,
    pub d: usize,
    pub k: Color,
    pub alpha: BTreeMap<String, Color>,
    pub beta: BTreeMap<String, Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<BTreeMap<String, Vec<Color>>>,
}

impl TryFrom<InstanceJson> for ReconfigInstance {
    type Error = ColoringError;

    fn try_from(j: InstanceJson) -> Result<ReconfigInstance, ColoringError> {
        let alpha = coloring_from_labels(&j.graph, j.k, &j.alpha)?;
        let beta = coloring_from_labels(&j.graph, j.k, &j.beta)?;
        let lists = j.lists.as_ref().map(|l| lists_from_labels(&j.graph, l)).transpose()?;
        ReconfigInstance::new(j.graph, j.d, j.k, alpha, beta, lists)
    }
}

impl From<ReconfigInstance> for InstanceJson {
    fn from(i: ReconfigInstance) -> InstanceJson {
        InstanceJson {
            alpha: coloring_by_label(&i.graph, &i.alpha),
            beta: coloring_by_label(&i.graph, &i.beta),
            lists: i.lists.as_ref().map(|l| lists_by_label(&i.graph, l)),
            graph: i.graph,
            d: i.d,
            k: i.k,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StJson {
    pub graph: Graph,
    pub triangles: Vec<[Vertex; 3]>,
    pub token_edges: Vec<[Vertex; 2]>,
    pub link_edges: Vec<[Vertex; 2]>,
    #[serde(rename = "T_A")]
    pub t_a: Vec<Vertex>,
    #[serde(rename = "T_B")]
    pub t_b: Vec<Vertex>,
}

impl TryFrom<StJson> for StInstance {
    type Error = StError;

    fn try_from(j: StJson) -> Result<StInstance, StError> {
        StInstance::with_graph(
            j.graph,
            j.triangles,
            j.token_edges,
            j.link_edges,
            TokenConfig::new(j.t_a),
            TokenConfig::new(j.t_b),
        )
    }
}

impl From<StInstance> for StJson {
    fn from(s: StInstance) -> StJson {
        StJson {
            graph: s.graph,
            triangles: s.triangles,
            token_edges: s.token_edges,
            link_edges: s.link_edges,
            t_a: s.t_a.tokens.into_iter().collect(),
            t_b: s.t_b.tokens.into_iter().collect(),
        }
    }
}
