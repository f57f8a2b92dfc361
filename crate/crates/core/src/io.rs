//! File formats: graph JSON, labeling JSON and Graphviz DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, GraphKind, StackedBookCoord, VertexId};
use crate::labeling::{LabelError, Labeling};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub kind: GraphKind,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub num_vertices: usize,
    pub edges: Vec<[usize; 2]>,
    /// `[spoke, page]` per vertex, in vertex order.
    pub coords: Option<Vec<[usize; 2]>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        let (m, n) = g.book_params().unzip();
        Self {
            kind: g.kind(),
            m,
            n,
            num_vertices: g.num_vertices(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            coords: g
                .coords()
                .map(|cs| cs.iter().map(|c| [c.spoke, c.page]).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = FormatError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.num_vertices, &edges)?.with_kind(j.kind);
        match (j.coords, j.m, j.n) {
            (None, _, _) => Ok(g),
            (Some(cs), Some(m), Some(n)) => {
                let coords = cs
                    .iter()
                    .map(|c| StackedBookCoord::new(c[0], c[1]))
                    .collect();
                Ok(g.with_coords(m, n, coords)?)
            }
            (Some(_), _, _) => Err(FormatError::Invalid(
                "coords given without both m and n".into(),
            )),
        }
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph JSON serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph, FormatError> {
    let j: GraphJson = serde_json::from_str(text)?;
    Graph::try_from(j)
}

/// One labeled vertex, addressed by stacked-book coordinate or raw id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spoke: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub page: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    pub label: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_ref: Option<String>,
    pub labels: Vec<LabelEntry>,
}

impl LabelingJson {
    /// Entries use `(spoke, page)` when the graph has coordinates and raw
    /// vertex ids otherwise.
    pub fn from_labeling(g: &Graph, f: &Labeling, graph_ref: Option<String>) -> Self {
        let labels = g
            .vertices()
            .map(|v| match g.coord(v) {
                Some(c) => LabelEntry {
                    spoke: Some(c.spoke),
                    page: Some(c.page),
                    vertex: None,
                    label: f.get(v),
                },
                None => LabelEntry {
                    spoke: None,
                    page: None,
                    vertex: Some(v.0),
                    label: f.get(v),
                },
            })
            .collect();
        Self { graph_ref, labels }
    }

    pub fn to_labeling(&self, g: &Graph) -> Result<Labeling, FormatError> {
        let pairs = self
            .labels
            .iter()
            .map(|e| {
                let v = match (e.vertex, e.spoke, e.page) {
                    (Some(v), None, None) => VertexId(v),
                    (None, Some(spoke), Some(page)) => g
                        .vertex_at(StackedBookCoord::new(spoke, page))
                        .ok_or_else(|| {
                            FormatError::Invalid(format!("no vertex at spoke {spoke}, page {page}"))
                        })?,
                    _ => {
                        return Err(FormatError::Invalid(
                            "label entry needs either `vertex` or both `spoke` and `page`".into(),
                        ))
                    }
                };
                Ok((v, e.label))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Labeling::from_pairs(g.num_vertices(), pairs)?)
    }
}

pub fn labeling_to_json(g: &Graph, f: &Labeling, graph_ref: Option<String>) -> String {
    serde_json::to_string_pretty(&LabelingJson::from_labeling(g, f, graph_ref))
        .expect("labeling JSON serializes")
}

pub fn labeling_from_json(g: &Graph, text: &str) -> Result<Labeling, FormatError> {
    let j: LabelingJson = serde_json::from_str(text)?;
    j.to_labeling(g)
}

fn node_name(g: &Graph, v: VertexId) -> String {
    match g.coord(v) {
        Some(c) => c.to_string(),
        None => format!("v{}", v.0),
    }
}

/// Undirected DOT. With a labeling, node labels read `s<spoke>p<page>:<label>`.
/// An empty labeling counts as none.
pub fn export_dot(g: &Graph, f: Option<&Labeling>) -> String {
    let f = f.filter(|f| !f.is_empty());
    let mut out = String::new();
    writeln!(out, "graph {} {{", g.kind()).unwrap();
    for v in g.vertices() {
        let name = node_name(g, v);
        match f {
            Some(f) => writeln!(out, "  \"{name}\" [label=\"{name}:{}\"];", f.get(v)).unwrap(),
            None => writeln!(out, "  \"{name}\";").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(
            out,
            "  \"{}\" -- \"{}\";",
            node_name(g, VertexId(u)),
            node_name(g, VertexId(v))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
