//! Radio labeling toolkit for stacked-book graphs `G_{m,n} = S_m □ P_n`.
//!
//! A radio labeling of a connected graph assigns non-negative integers to
//! vertices so that `|f(u) - f(v)| >= diam(G) + 1 - d(u, v)` for every pair.
//! The radio number is the smallest possible span `max f - min f`.
//!
//! * [`graph`] and [`distance`] build the graphs and their distance matrices.
//! * [`labeling`] validates labelings against the radio condition.
//! * [`bounds`] evaluates closed-form bounds for odd `n`.
//! * [`constructive`] produces labelings meeting the upper bound.
//! * [`solver`] computes exact radio numbers of small instances.
//! * [`io`] reads and writes the JSON and DOT formats.

pub mod bounds;
pub mod constructive;
pub mod distance;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod solver;

pub use bounds::{BookParams, BoundsError, BoundsReport, PathClass};
pub use constructive::{
    build_label_order, greedy_label, label_stacked_book, ConstructError, GapSchedule, LabelOrder,
    Strategy,
};
pub use distance::{all_pairs_distances, stacked_book_distance, DistanceMatrix};
pub use graph::{
    build_path, build_stacked_book, build_star, cartesian_product, Graph, GraphError, GraphKind,
    StackedBookCoord, VertexId,
};
pub use labeling::{normalize, span, validate, LabelError, Labeling, ValidationReport, Violation};
pub use solver::{
    brute_force_oracle, check_center_extremal, solve_exact, SolveConfig, SolveError, SolveResult,
    SolveStatus,
};
