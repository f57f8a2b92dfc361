//! Constructive radio labeling of `G_{m,n}` for odd `n`.
//!
//! The vertex order is fixed up front: first the `(n-3)/2` half-shifted page
//! pairs (pages `t` and `t + (n-1)/2`, for `t` from `(n-1)/2` down to 2),
//! then the three-page core (pages 1, `(n+1)/2`, `n`). Labels are then
//! assigned by smallest-feasible greedy along that order, so validity never
//! depends on hand-derived gap arithmetic.
//!
//! Leaf spokes are visited in a cyclic rotation chosen so that any two leaves
//! labeled close together sit on different spokes:
//!
//! * inside a page pair the far page takes spokes `x_0, x_1, ...` and the near
//!   page takes `x_2, x_3, ...` (indices mod `m - 1`);
//! * in the core the far end, middle and near end pages take `x_{j+2}`, `x_j`
//!   and `x_{j+3}` on round `j`, after an opening triple that uses the one
//!   spoke each page skips.
//!
//! For `m >= 5` this reaches `(m n^2 + 2n + m - 2) / 2` exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{upper_bound_total, BookParams};
use crate::distance::{all_pairs_distances, DistanceMatrix};
use crate::graph::{build_stacked_book, GraphError, StackedBookCoord, VertexId};
use crate::labeling::{span, validate, Labeling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("constructive labeling requires {requirement} (got m={m}, n={n})")]
    OutOfRange {
        requirement: &'static str,
        m: usize,
        n: usize,
    },
    #[error("constructed span {achieved} exceeds the target {target}")]
    BoundExceeded {
        achieved: u64,
        target: u64,
        schedule: GapSchedule,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which part of the decomposition a position in the order belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "phase")]
pub enum Phase {
    /// Pages `near` and `far = near + (n-1)/2`.
    PagePair { near: usize, far: usize },
    /// Pages 1, (n+1)/2 and n.
    Core,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelOrder {
    pub sequence: Vec<VertexId>,
    pub phases: Vec<Phase>,
}

impl LabelOrder {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// Label increments between consecutive vertices of an order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSchedule {
    pub increments: Vec<u64>,
}

impl GapSchedule {
    pub fn from_labeling(order: &[VertexId], f: &Labeling) -> Self {
        let increments = order
            .windows(2)
            .map(|w| f.get(w[1]).saturating_sub(f.get(w[0])))
            .collect();
        Self { increments }
    }

    pub fn total(&self) -> u64 {
        self.increments.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Page-pair then core order with the spoke rotation above. Spelled
    /// `paper` on the command line and in JSON.
    #[default]
    #[serde(rename = "paper", alias = "rotation")]
    Rotation,
    /// Always take the unlabeled vertex with the smallest feasible label.
    GreedyDistance,
}

fn check_params(m: usize, n: usize, min_m: usize) -> Result<(), ConstructError> {
    if m < min_m || n < 5 || n.is_multiple_of(2) {
        return Err(ConstructError::OutOfRange {
            requirement: if min_m >= 5 {
                "m >= 5 and odd n >= 5"
            } else {
                "m >= 4 and odd n >= 5"
            },
            m,
            n,
        });
    }
    Ok(())
}

fn page_order(m: usize, n: usize) -> LabelOrder {
    let half = (n - 1) / 2;
    let mid = n.div_ceil(2);
    let leaves = m - 1;
    let x = |i: usize| 2 + i % leaves;
    let at = |spoke: usize, page: usize| StackedBookCoord::new(spoke, page).to_vertex(m);

    let mut sequence = Vec::with_capacity(m * n);
    let mut phases = Vec::with_capacity(m * n);
    for near in (2..=half).rev() {
        let far = near + half;
        let phase = Phase::PagePair { near, far };
        sequence.push(at(1, near));
        for i in 0..leaves {
            sequence.push(at(x(i), far));
            sequence.push(at(x(i + 2), near));
        }
        sequence.push(at(1, far));
        phases.resize(sequence.len(), phase);
    }

    sequence.extend([
        at(1, 1),
        at(x(1), n),
        at(x(m - 2), mid),
        at(x(2), 1),
        at(1, n),
    ]);
    for j in 0..m - 2 {
        sequence.extend([at(x(j), mid), at(x(j + 3), 1), at(x(j + 2), n)]);
    }
    sequence.push(at(1, mid));
    phases.resize(sequence.len(), Phase::Core);
    LabelOrder { sequence, phases }
}

/// Vertex order for `G_{m,n}`, `m >= 5`, odd `n >= 5`.
pub fn build_label_order(m: usize, n: usize) -> Result<LabelOrder, ConstructError> {
    check_params(m, n, 5)?;
    Ok(page_order(m, n))
}

/// Smallest label for `v` that is at least `floor` and compatible with every
/// vertex already labeled.
fn feasible_label(dm: &DistanceMatrix, placed: &[(usize, u64)], v: usize, floor: u64) -> u64 {
    let threshold = u64::from(dm.diameter()) + 1;
    placed.iter().fold(floor, |acc, &(u, fu)| {
        acc.max(fu + threshold.saturating_sub(u64::from(dm.raw(u, v))))
    })
}

/// Labels vertices in `order`; each gets the smallest label no smaller than
/// its predecessor's that satisfies the radio condition against everything
/// labeled so far. The first vertex gets 0.
pub fn greedy_label(dm: &DistanceMatrix, order: &[VertexId]) -> Labeling {
    assert_eq!(order.len(), dm.len(), "order must cover every vertex");
    let mut labels = vec![0u64; dm.len()];
    let mut placed: Vec<(usize, u64)> = Vec::with_capacity(order.len());
    let mut last = 0;
    for &v in order {
        last = feasible_label(dm, &placed, v.0, last);
        labels[v.0] = last;
        placed.push((v.0, last));
    }
    Labeling::new(labels)
}

/// Builds an order on the fly: start at `start`, then repeatedly take the
/// unlabeled vertex with the smallest feasible label, preferring vertices far
/// from the previous one, then the lowest id.
pub fn greedy_distance_order(dm: &DistanceMatrix, start: VertexId) -> Vec<VertexId> {
    let n = dm.len();
    let mut used = vec![false; n];
    let mut order = vec![start];
    let mut placed = vec![(start.0, 0u64)];
    used[start.0] = true;
    let mut last = 0;
    while order.len() < n {
        let prev = order[order.len() - 1].0;
        let (label, _, v) = (0..n)
            .filter(|&v| !used[v])
            .map(|v| {
                let l = feasible_label(dm, &placed, v, last);
                (l, std::cmp::Reverse(dm.raw(prev, v)), v)
            })
            .min()
            .expect("unplaced vertex remains");
        used[v] = true;
        order.push(VertexId(v));
        placed.push((v, label));
        last = label;
    }
    order
}

/// Swaps pairs of leaves that sit on the same page inside the order, keeping
/// any swap that lowers the span. At most `passes` sweeps.
fn local_reorder(dm: &DistanceMatrix, m: usize, order: &mut [VertexId], passes: usize) -> Labeling {
    let mut best = greedy_label(dm, order);
    let mut best_span = span(&best).unwrap_or(0);
    let page_of = |v: VertexId| StackedBookCoord::from_vertex(v, m);
    for _ in 0..passes {
        let mut improved = false;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                let (a, b) = (page_of(order[i]), page_of(order[j]));
                if a.page != b.page || a.is_center() || b.is_center() {
                    continue;
                }
                order.swap(i, j);
                let f = greedy_label(dm, order);
                let s = span(&f).unwrap_or(u64::MAX);
                if s < best_span {
                    best = f;
                    best_span = s;
                    improved = true;
                } else {
                    order.swap(i, j);
                }
            }
        }
        if !improved {
            break;
        }
    }
    best
}

/// Result of a construction run, before any bound is enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub order: Vec<VertexId>,
    pub labeling: Labeling,
    pub span: u64,
}

/// Runs a strategy on `G_{m,n}` (`m >= 4`, odd `n >= 5`) without enforcing
/// the upper bound.
pub fn construct(m: usize, n: usize, strategy: Strategy) -> Result<Construction, ConstructError> {
    check_params(m, n, 4)?;
    let dm = all_pairs_distances(&build_stacked_book(m, n)?)?;
    let order = match strategy {
        Strategy::Rotation => page_order(m, n).sequence,
        Strategy::GreedyDistance => {
            greedy_distance_order(&dm, StackedBookCoord::new(1, (n - 1) / 2).to_vertex(m))
        }
    };
    let labeling = greedy_label(&dm, &order);
    let span = span(&labeling).expect("nonempty");
    Ok(Construction {
        order,
        labeling,
        span,
    })
}

/// Valid labeling of `G_{m,n}` (`m >= 5`, odd `n >= 5`) with span at most
/// `(m n^2 + 2n + m - 2) / 2`.
pub fn label_stacked_book(m: usize, n: usize) -> Result<Labeling, ConstructError> {
    check_params(m, n, 5)?;
    let target = upper_bound_total(BookParams::new(m, n)).expect("range checked above");
    let dm = all_pairs_distances(&build_stacked_book(m, n)?)?;
    let mut order = page_order(m, n).sequence;
    let mut labeling = greedy_label(&dm, &order);
    if span(&labeling).expect("nonempty") > target {
        labeling = local_reorder(&dm, m, &mut order, 2);
    }
    debug_assert!(validate(&dm, &labeling).map(|r| r.valid).unwrap_or(false));
    let achieved = span(&labeling).expect("nonempty");
    if achieved > target {
        return Err(ConstructError::BoundExceeded {
            achieved,
            target,
            schedule: GapSchedule::from_labeling(&order, &labeling),
        });
    }
    Ok(labeling)
}
