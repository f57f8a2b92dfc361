//! Graph construction: stars, paths, Cartesian products and stacked-book graphs.
//!
//! Stacked-book vertices are numbered row-major over `(page, spoke)` with the
//! star center first on every page, so vertex `(page - 1) * m + (spoke - 1)`
//! is spoke `spoke` of page `page`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("star order must be at least 3, got {0}")]
    StarTooSmall(usize),
    #[error("path order must be at least 2, got {0}")]
    PathTooShort(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    ParallelEdge(usize, usize),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("coordinate (spoke {spoke}, page {page}) is outside the {m}x{n} stacked-book grid")]
    CoordOutOfRange {
        spoke: usize,
        page: usize,
        m: usize,
        n: usize,
    },
    #[error("coordinate list has {got} entries but the graph has {expected} vertices")]
    CoordCount { expected: usize, got: usize },
}

/// Dense vertex index in `0..num_vertices`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Position of a vertex inside `S_m □ P_n`. Spoke 1 is the star center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StackedBookCoord {
    pub spoke: usize,
    pub page: usize,
}

impl StackedBookCoord {
    pub const fn new(spoke: usize, page: usize) -> Self {
        Self { spoke, page }
    }

    pub fn is_center(&self) -> bool {
        self.spoke == 1
    }

    /// Vertex id under the row-major `(page, spoke)` numbering.
    pub fn to_vertex(self, m: usize) -> VertexId {
        VertexId((self.page - 1) * m + (self.spoke - 1))
    }

    pub fn from_vertex(v: VertexId, m: usize) -> Self {
        Self {
            spoke: v.0 % m + 1,
            page: v.0 / m + 1,
        }
    }
}

impl fmt::Display for StackedBookCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}p{}", self.spoke, self.page)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Star,
    Path,
    Product,
    StackedBook,
    Generic,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphKind::Star => "star",
            GraphKind::Path => "path",
            GraphKind::Product => "product",
            GraphKind::StackedBook => "stacked_book",
            GraphKind::Generic => "generic",
        };
        f.write_str(s)
    }
}

/// Immutable simple undirected connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    kind: GraphKind,
    book: Option<(usize, usize)>,
    coords: Option<Vec<StackedBookCoord>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, parallel edges,
    /// out-of-range endpoints and disconnected inputs.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if num_vertices == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); num_vertices];
        for &(u, v) in edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(GraphError::EdgeOutOfRange(u, v, num_vertices));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            if adjacency[u].contains(&v) {
                return Err(GraphError::ParallelEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let g = Self {
            adjacency,
            kind: GraphKind::Generic,
            book: None,
            coords: None,
        };
        g.check_connected()?;
        Ok(g)
    }

    /// Attaches stacked-book metadata. Coordinates must be in range and
    /// match the vertex count; they are not required to be in canonical order.
    pub fn with_coords(
        mut self,
        m: usize,
        n: usize,
        coords: Vec<StackedBookCoord>,
    ) -> Result<Self, GraphError> {
        if coords.len() != self.num_vertices() {
            return Err(GraphError::CoordCount {
                expected: self.num_vertices(),
                got: coords.len(),
            });
        }
        for c in &coords {
            if c.spoke == 0 || c.spoke > m || c.page == 0 || c.page > n {
                return Err(GraphError::CoordOutOfRange {
                    spoke: c.spoke,
                    page: c.page,
                    m,
                    n,
                });
            }
        }
        self.book = Some((m, n));
        self.coords = Some(coords);
        Ok(self)
    }

    pub(crate) fn with_kind(mut self, kind: GraphKind) -> Self {
        self.kind = kind;
        self
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let mut seen = vec![false; self.num_vertices()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(GraphError::Disconnected(v)),
            None => Ok(()),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// `(m, n)` for graphs carrying stacked-book coordinates.
    pub fn book_params(&self) -> Option<(usize, usize)> {
        self.book
    }

    pub fn coords(&self) -> Option<&[StackedBookCoord]> {
        self.coords.as_deref()
    }

    pub fn coord(&self, v: VertexId) -> Option<StackedBookCoord> {
        self.coords.as_ref().map(|c| c[v.0])
    }

    /// Looks up the vertex holding a stacked-book coordinate.
    pub fn vertex_at(&self, c: StackedBookCoord) -> Option<VertexId> {
        self.coords
            .as_ref()?
            .iter()
            .position(|x| *x == c)
            .map(VertexId)
    }

    pub fn neighbors(&self, v: VertexId) -> &[usize] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u.0].binary_search(&v.0).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }
}

/// Star `S_m`: vertex 0 is the center, vertices `1..m` are spokes.
pub fn build_star(m: usize) -> Result<Graph, GraphError> {
    if m < 3 {
        return Err(GraphError::StarTooSmall(m));
    }
    let edges: Vec<_> = (1..m).map(|v| (0, v)).collect();
    Ok(Graph::from_edges(m, &edges)?.with_kind(GraphKind::Star))
}

/// Path `P_n` with vertices `0..n` in order.
pub fn build_path(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::PathTooShort(n));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Ok(Graph::from_edges(n, &edges)?.with_kind(GraphKind::Path))
}

/// Cartesian product `g □ h`. Vertex `(a, x)` gets id `x * |V(g)| + a`, so the
/// factor `g` varies fastest.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let ng = g.num_vertices();
    let nh = h.num_vertices();
    let id = |a: usize, x: usize| x * ng + a;
    let mut edges = Vec::with_capacity(nh * g.num_edges() + ng * h.num_edges());
    for x in 0..nh {
        for (a, b) in g.edges() {
            edges.push((id(a, x), id(b, x)));
        }
    }
    for a in 0..ng {
        for (x, y) in h.edges() {
            edges.push((id(a, x), id(a, y)));
        }
    }
    // Both factors are connected and simple, so the product is too.
    Graph::from_edges(ng * nh, &edges)
        .expect("product of connected simple graphs is connected and simple")
        .with_kind(GraphKind::Product)
}

/// Stacked-book graph `G_{m,n} = S_m □ P_n` with coordinates attached.
pub fn build_stacked_book(m: usize, n: usize) -> Result<Graph, GraphError> {
    let star = build_star(m)?;
    let path = build_path(n)?;
    let coords = (0..m * n)
        .map(|v| StackedBookCoord::from_vertex(VertexId(v), m))
        .collect();
    cartesian_product(&star, &path)
        .with_kind(GraphKind::StackedBook)
        .with_coords(m, n, coords)
}
