//! Shortest-path distances: BFS all-pairs matrix and the stacked-book closed form.

use std::collections::VecDeque;

use crate::graph::{Graph, GraphError, StackedBookCoord, VertexId};

/// All-pairs unweighted distances with the diameter that the radio condition
/// is measured against.
///
/// A matrix restricted to a vertex subset (see [`DistanceMatrix::restrict`])
/// keeps the parent graph's distances and diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    diameter: u32,
    coords: Option<Vec<StackedBookCoord>>,
}

impl DistanceMatrix {
    /// Builds a matrix from raw rows. Rows must be square, symmetric and have
    /// a zero diagonal; `diameter` must be at least the largest entry.
    pub fn from_rows(rows: Vec<Vec<u32>>, diameter: u32) -> Self {
        let n = rows.len();
        let mut dist = Vec::with_capacity(n * n);
        for row in &rows {
            assert_eq!(row.len(), n, "distance matrix must be square");
            dist.extend_from_slice(row);
        }
        for u in 0..n {
            assert_eq!(dist[u * n + u], 0);
            for v in 0..n {
                assert_eq!(dist[u * n + v], dist[v * n + u]);
                assert!(dist[u * n + v] <= diameter);
            }
        }
        Self {
            n,
            dist,
            diameter,
            coords: None,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, u: VertexId, v: VertexId) -> u32 {
        self.dist[u.0 * self.n + v.0]
    }

    #[inline]
    pub(crate) fn raw(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// Stacked-book coordinates inherited from the graph, if any.
    pub fn coords(&self) -> Option<&[StackedBookCoord]> {
        self.coords.as_deref()
    }

    pub fn row(&self, u: VertexId) -> &[u32] {
        &self.dist[u.0 * self.n..(u.0 + 1) * self.n]
    }

    /// Distances among `vertices` only, re-indexed `0..vertices.len()` in the
    /// given order. The diameter is NOT recomputed.
    pub fn restrict(&self, vertices: &[VertexId]) -> DistanceMatrix {
        let k = vertices.len();
        let mut dist = Vec::with_capacity(k * k);
        for &u in vertices {
            for &v in vertices {
                dist.push(self.get(u, v));
            }
        }
        DistanceMatrix {
            n: k,
            dist,
            diameter: self.diameter,
            coords: self
                .coords
                .as_ref()
                .map(|c| vertices.iter().map(|v| c[v.0]).collect()),
        }
    }
}

/// BFS from every vertex.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &w in g.neighbors(VertexId(u)) {
                if row[w] == u32::MAX {
                    row[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = row.iter().position(|&d| d == u32::MAX) {
            return Err(GraphError::Disconnected(v));
        }
    }
    let diameter = dist.iter().copied().max().unwrap_or(0);
    Ok(DistanceMatrix {
        n,
        dist,
        diameter,
        coords: g.coords().map(<[_]>::to_vec),
    })
}

/// Closed-form distance in `G_{m,n}`: page offset plus 0, 1 or 2 for the
/// spoke change (same spoke, one endpoint a center, two distinct leaves).
pub fn stacked_book_distance(
    m: usize,
    n: usize,
    a: StackedBookCoord,
    b: StackedBookCoord,
) -> Result<u32, GraphError> {
    for c in [a, b] {
        if c.spoke == 0 || c.spoke > m || c.page == 0 || c.page > n {
            return Err(GraphError::CoordOutOfRange {
                spoke: c.spoke,
                page: c.page,
                m,
                n,
            });
        }
    }
    let spoke_cost = if a.spoke == b.spoke {
        0
    } else if a.is_center() || b.is_center() {
        1
    } else {
        2
    };
    Ok((a.page.abs_diff(b.page) + spoke_cost) as u32)
}
