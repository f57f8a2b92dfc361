//! Exact radio numbers of small graphs.
//!
//! Any valid labeling, read in increasing label order, is dominated by the
//! labeling obtained by giving each vertex of that order the smallest label
//! compatible with its predecessors. So it is enough to search over vertex
//! orders, assigning smallest-feasible labels, and keep the best span.
//!
//! [`brute_force_oracle`] is a separate enumerator over label vectors used to
//! cross-check the search on tiny graphs. It shares no code with the search.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructive::{greedy_distance_order, greedy_label};
use crate::distance::DistanceMatrix;
use crate::graph::VertexId;
use crate::labeling::{normalize, span, validate, Labeling};

/// Vertex sets are `u64` bitmasks.
pub const MAX_SEARCH_VERTICES: usize = 64;
pub const ORACLE_MAX_VERTICES: usize = 6;
pub const ORACLE_MAX_SPAN: u64 = 20;
/// Cap on remembered dead-end states.
const FAILURE_TABLE_CAP: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {0} vertices; exact search supports at most {MAX_SEARCH_VERTICES}")]
    TooLarge(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("brute-force oracle limited to {ORACLE_MAX_VERTICES} vertices and span {ORACLE_MAX_SPAN} (got {vertices} vertices, span {max_span})")]
    OracleGuard { vertices: usize, max_span: u64 },
    #[error("result is not a certified optimum")]
    NotOptimal,
    #[error("search budget exhausted before an answer was certified")]
    BudgetExhausted,
    #[error("budgets must be positive")]
    ZeroBudget,
    #[error("starting labeling is not a valid radio labeling of this graph")]
    InvalidIncumbent,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveConfig {
    /// Known achievable span; the search only looks at spans up to this.
    pub upper_start: Option<u64>,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Disable to search every ordering (used by tests to measure pruning).
    pub no_symmetry_breaking: bool,
    /// A known valid labeling to start from, e.g. a constructive one.
    pub incumbent: Option<Labeling>,
}

impl SolveConfig {
    fn check(&self) -> Result<(), SolveError> {
        if self.node_budget == Some(0) || self.time_budget == Some(Duration::ZERO) {
            return Err(SolveError::ZeroBudget);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// Search exhausted; `radio_number` is exact.
    Optimal,
    /// Budget ran out; `witness` is the best labeling found.
    IncumbentOnly,
    /// Search exhausted without finding any labeling within `upper_start`;
    /// the radio number is larger than that value.
    InfeasibleBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub radio_number: Option<u64>,
    pub witness: Labeling,
    pub witness_span: u64,
    pub nodes_explored: u64,
}

/// Automorphisms of a stacked-book distance instance used to prune the
/// search: leaf spokes are interchangeable, and pages may be mirrored.
#[derive(Debug, Clone, Default)]
struct Symmetry {
    /// Leaf spoke index (2..) per vertex when spokes are interchangeable.
    spoke: Option<Vec<usize>>,
    /// Vertices that may come first in a canonical order.
    first_allowed: Option<u64>,
}

fn permutation_preserves(dm: &DistanceMatrix, perm: &[usize]) -> bool {
    let n = dm.len();
    (0..n).all(|u| (0..n).all(|v| dm.raw(u, v) == dm.raw(perm[u], perm[v])))
}

fn detect_symmetry(dm: &DistanceMatrix, spokes: bool, mirror: bool) -> Symmetry {
    let Some(coords) = dm.coords() else {
        return Symmetry::default();
    };
    let find = |spoke: usize, page: usize| {
        coords
            .iter()
            .position(|c| c.spoke == spoke && c.page == page)
    };
    let mut sym = Symmetry::default();

    let max_spoke = coords.iter().map(|c| c.spoke).max().unwrap_or(0);
    if spokes && max_spoke >= 3 {
        let ok = (2..max_spoke).all(|s| {
            let perm: Option<Vec<usize>> = coords
                .iter()
                .map(|c| {
                    let image = match c.spoke {
                        x if x == s => s + 1,
                        x if x == s + 1 => s,
                        x => x,
                    };
                    find(image, c.page)
                })
                .collect();
            perm.is_some_and(|p| permutation_preserves(dm, &p))
        });
        if ok {
            sym.spoke = Some(coords.iter().map(|c| c.spoke).collect());
        }
    }

    if mirror {
        let lo = coords.iter().map(|c| c.page).min().unwrap_or(0);
        let hi = coords.iter().map(|c| c.page).max().unwrap_or(0);
        let perm: Option<Vec<usize>> = coords
            .iter()
            .map(|c| find(c.spoke, lo + hi - c.page))
            .collect();
        if lo < hi && perm.is_some_and(|p| permutation_preserves(dm, &p)) {
            let mut mask = 0u64;
            for (i, c) in coords.iter().enumerate() {
                if 2 * c.page <= lo + hi {
                    mask |= 1 << i;
                }
            }
            sym.first_allowed = Some(mask);
        }
    }
    sym
}

/// Extra requirements on which vertices take the smallest and largest label.
#[derive(Debug, Clone, Copy, Default)]
struct Endpoints {
    first: Option<u64>,
    last: Option<u64>,
}

struct Search<'a> {
    dm: &'a DistanceMatrix,
    n: usize,
    threshold: u64,
    sym: Symmetry,
    ends: Endpoints,
    labels: Vec<u64>,
    order: Vec<usize>,
    /// Only spans `<= bound` are of interest.
    bound: u64,
    best: Option<(u64, Vec<usize>)>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    aborted: bool,
    /// Dead-end states: the largest further label increase proven impossible.
    failed: HashMap<StateKey, u64>,
    /// Distance-to-reference vectors ("levels") used by the level estimate.
    levels: Vec<Vec<u64>>,
}

/// What the rest of the search depends on: the unplaced set, the seen
/// spokes, and the placed vertices whose labels can still push the next one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct StateKey {
    unplaced: u64,
    used_spokes: u64,
    recent: Vec<(u8, u64)>,
}

impl<'a> Search<'a> {
    fn new(
        dm: &'a DistanceMatrix,
        bound: u64,
        cfg: &SolveConfig,
        sym: Symmetry,
        ends: Endpoints,
    ) -> Self {
        Self {
            dm,
            n: dm.len(),
            threshold: u64::from(dm.diameter()) + 1,
            sym,
            ends,
            labels: vec![0; dm.len()],
            order: Vec::with_capacity(dm.len()),
            bound,
            best: None,
            nodes: 0,
            node_budget: cfg.node_budget.unwrap_or(u64::MAX),
            deadline: cfg.time_budget.map(|t| Instant::now() + t),
            aborted: false,
            failed: HashMap::new(),
            levels: Vec::new(),
        }
    }

    fn gap(&self, u: usize, v: usize) -> u64 {
        self.threshold - u64::from(self.dm.raw(u, v)).min(self.threshold - 1)
    }

    /// Keeps the reference vertices whose level estimate is best on the
    /// whole instance.
    fn pick_levels(&mut self) {
        if self.n < 2 {
            return;
        }
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut scored: Vec<(u64, usize)> = (0..self.n)
            .map(|c| {
                self.levels = vec![(0..self.n).map(|v| u64::from(self.dm.raw(c, v))).collect()];
                let first = (0..self.n)
                    .min_by_key(|&v| self.levels[0][v])
                    .expect("non-empty");
                let root = self.level_estimate(&self.levels[0], first, all & !(1 << first));
                (root, c)
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let top = scored[0].0;
        self.levels = scored
            .iter()
            .take_while(|&&(score, _)| score == top)
            .take(2)
            .map(|&(_, c)| (0..self.n).map(|v| u64::from(self.dm.raw(c, v))).collect())
            .collect();
    }

    /// With `L` the distance to a reference vertex, `d(a, b) <= L(a) + L(b)`,
    /// so a step from `a` to `b` costs `diam + 1 - L(a) - L(b)` plus the slack
    /// `L(a) + L(b) - d(a, b)`. The level terms telescope along the path from
    /// `v` through `rest`; the slack terms are bounded by a spanning tree.
    fn level_estimate(&self, level: &[u64], v: usize, rest: u64) -> u64 {
        if rest == 0 {
            return 0;
        }
        let k = u64::from(rest.count_ones());
        let mut sum = 0;
        let mut lowest = u64::MAX;
        for w in bits(rest) {
            sum += level[w];
            lowest = lowest.min(level[w]);
        }
        let slack = |a: usize, b: usize| level[a] + level[b] - u64::from(self.dm.raw(a, b));
        let base = (k * self.threshold + lowest) as i64 - (level[v] + 2 * sum) as i64;
        (base + self.tree_weight(v, rest, slack) as i64).max(0) as u64
    }

    /// Weight of a minimum spanning tree on `{v} ∪ rest` (Prim).
    fn tree_weight(&self, v: usize, rest: u64, weight: impl Fn(usize, usize) -> u64) -> u64 {
        let mut key = [u64::MAX; MAX_SEARCH_VERTICES];
        let mut todo = rest;
        for w in bits(todo) {
            key[w] = weight(v, w);
        }
        let mut total = 0;
        while todo != 0 {
            let mut pick = usize::MAX;
            let mut best = u64::MAX;
            for w in bits(todo) {
                if key[w] < best {
                    best = key[w];
                    pick = w;
                }
            }
            total += best;
            todo &= !(1 << pick);
            for w in bits(todo) {
                key[w] = key[w].min(weight(pick, w));
            }
        }
        total
    }

    fn run(&mut self) {
        self.pick_levels();
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.dfs(all, 0, 0);
    }

    /// `unplaced` is the set of vertices not yet ordered, `used_spokes` a
    /// bitmask of leaf spokes already seen, `last` the previous label.
    fn dfs(&mut self, unplaced: u64, used_spokes: u64, last: u64) {
        if unplaced == 0 {
            let span = last;
            if span <= self.bound {
                self.best = Some((span, self.order.clone()));
                self.bound = span.saturating_sub(1);
            }
            return;
        }
        if let Some(last_mask) = self.ends.last {
            if last_mask & unplaced == 0 {
                return;
            }
        }

        // For every unplaced w: the largest and second-largest distance to
        // another unplaced vertex, with the argmax.
        let members: Vec<usize> = bits(unplaced).collect();
        let mut top = vec![(0u32, usize::MAX, 0u32); self.n];
        for &w in &members {
            let (mut d1, mut a1, mut d2) = (0u32, usize::MAX, 0u32);
            for &x in &members {
                if x == w {
                    continue;
                }
                let d = self.dm.raw(w, x);
                if d > d1 {
                    d2 = d1;
                    d1 = d;
                    a1 = x;
                } else if d > d2 {
                    d2 = d;
                }
            }
            top[w] = (d1, a1, d2);
        }

        let depth = self.order.len();
        let key = (depth > 0).then(|| self.state_key(unplaced, used_spokes, last));
        if let Some(k) = &key {
            if self
                .failed
                .get(k)
                .is_some_and(|&f| f >= self.bound.saturating_sub(last))
            {
                return;
            }
        }
        for &v in &members {
            if self.aborted {
                return;
            }
            if depth == 0 {
                if let Some(mask) = self.sym.first_allowed {
                    if mask >> v & 1 == 0 {
                        continue;
                    }
                }
                if let Some(mask) = self.ends.first {
                    if mask >> v & 1 == 0 {
                        continue;
                    }
                }
            }
            let rest = unplaced & !(1 << v);
            if rest == 0 {
                if let Some(mask) = self.ends.last {
                    if mask >> v & 1 == 0 {
                        continue;
                    }
                }
            }
            let mut next_spokes = used_spokes;
            if let Some(spoke) = &self.sym.spoke {
                let s = spoke[v];
                if s >= 2 && used_spokes >> s & 1 == 0 {
                    if s >= 3 && used_spokes >> (s - 1) & 1 == 0 {
                        continue;
                    }
                    next_spokes |= 1 << s;
                }
            }

            let label = if depth == 0 {
                0
            } else {
                self.order
                    .iter()
                    .fold(last, |acc, &u| acc.max(self.labels[u] + self.gap(u, v)))
            };
            if label + self.remaining_estimate(v, rest, &top) > self.bound {
                continue;
            }

            self.nodes += 1;
            if self.nodes > self.node_budget
                || (self.nodes & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d))
            {
                self.aborted = true;
                return;
            }
            self.labels[v] = label;
            self.order.push(v);
            self.dfs(rest, next_spokes, label);
            self.order.pop();
        }
        if let Some(k) = key {
            if !self.aborted && self.bound >= last && self.failed.len() < FAILURE_TABLE_CAP {
                let limit = self.bound - last;
                let slot = self.failed.entry(k).or_insert(limit);
                *slot = (*slot).max(limit);
            }
        }
    }

    fn state_key(&self, unplaced: u64, used_spokes: u64, last: u64) -> StateKey {
        let mut recent: Vec<(u8, u64)> = self
            .order
            .iter()
            .rev()
            .map(|&u| (u as u8, last - self.labels[u]))
            .take_while(|&(_, back)| back + 1 < self.threshold)
            .collect();
        recent.sort_unstable();
        StateKey {
            unplaced,
            used_spokes,
            recent,
        }
    }

    /// Admissible lower bound on the label increase after placing `v` with
    /// `rest` still to come: each vertex but the last needs at least
    /// `diam + 1 - (largest distance to a later vertex)` before the next one.
    fn remaining_estimate(&self, v: usize, rest: u64, top: &[(u32, usize, u32)]) -> u64 {
        if rest == 0 {
            return 0;
        }
        let far = |w: usize| {
            let (d1, a1, d2) = top[w];
            if a1 == v {
                d2
            } else {
                d1
            }
        };
        let mut total = self.threshold - u64::from(top[v].0);
        let mut largest = 0;
        for w in bits(rest) {
            let g = self.threshold - u64::from(far(w)).min(self.threshold - 1);
            total += g;
            largest = largest.max(g);
        }
        (total - largest).max(self.spanning_estimate(v, rest))
    }

    /// Any label order from `v` through `rest` is a spanning path whose edges
    /// cost at least `gap`, so a minimum spanning tree weight is a lower bound.
    fn spanning_estimate(&self, v: usize, rest: u64) -> u64 {
        let tree = self.tree_weight(v, rest, |a, b| self.gap(a, b));
        self.levels
            .iter()
            .map(|level| self.level_estimate(level, v, rest))
            .fold(tree, u64::max)
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn bfs_order(dm: &DistanceMatrix) -> Vec<VertexId> {
    let n = dm.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // Restricted instances can have no unit-distance pair between pieces, so
    // each sweep restarts from the lowest unseen vertex.
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(VertexId(u));
            for w in 0..n {
                if !seen[w] && dm.raw(u, w) == 1 {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn labeling_from_order(dm: &DistanceMatrix, order: &[usize]) -> Labeling {
    let order: Vec<_> = order.iter().copied().map(VertexId).collect();
    greedy_label(dm, &order)
}

/// Branch-and-bound over label-sorted vertex orders.
pub fn solve_exact(dm: &DistanceMatrix, cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    cfg.check()?;
    let n = dm.len();
    if n == 0 {
        return Err(SolveError::Empty);
    }
    if n > MAX_SEARCH_VERTICES {
        return Err(SolveError::TooLarge(n));
    }

    let mut starts = vec![
        greedy_label(dm, &bfs_order(dm)),
        greedy_label(dm, &greedy_distance_order(dm, VertexId(0))),
    ];
    if let Some(f) = &cfg.incumbent {
        match validate(dm, f) {
            Ok(report) if report.valid => starts.push(normalize(f)),
            _ => return Err(SolveError::InvalidIncumbent),
        }
    }
    let greedy = starts
        .into_iter()
        .min_by_key(|f| span(f).expect("nonempty"))
        .expect("at least two candidates");
    let greedy_span = span(&greedy).expect("nonempty");

    let mut bound = greedy_span.saturating_sub(1);
    if let Some(u) = cfg.upper_start {
        bound = bound.min(u);
    }
    // A single vertex has span 0 and nothing to search.
    if greedy_span == 0 {
        return Ok(SolveResult {
            status: SolveStatus::Optimal,
            radio_number: Some(0),
            witness: greedy,
            witness_span: 0,
            nodes_explored: 0,
        });
    }

    let sym = if cfg.no_symmetry_breaking {
        Symmetry::default()
    } else {
        detect_symmetry(dm, true, true)
    };
    let mut search = Search::new(dm, bound, cfg, sym, Endpoints::default());
    search.run();

    let (witness, witness_span) = match &search.best {
        Some((s, order)) => (labeling_from_order(dm, order), *s),
        None => (greedy, greedy_span),
    };
    let status = if search.aborted {
        SolveStatus::IncumbentOnly
    } else if search.best.is_some() || witness_span <= bound + 1 {
        SolveStatus::Optimal
    } else {
        SolveStatus::InfeasibleBudget
    };
    Ok(SolveResult {
        status,
        radio_number: (status == SolveStatus::Optimal).then_some(witness_span),
        witness,
        witness_span,
        nodes_explored: search.nodes,
    })
}

/// Enumerates label vectors in `{0..=max_span}^V` (vertex by vertex, checking
/// each new label against the earlier vertices) and returns the first valid
/// one.
pub fn brute_force_oracle(
    dm: &DistanceMatrix,
    max_span: u64,
) -> Result<Option<Labeling>, SolveError> {
    let n = dm.len();
    if n > ORACLE_MAX_VERTICES || max_span > ORACLE_MAX_SPAN {
        return Err(SolveError::OracleGuard {
            vertices: n,
            max_span,
        });
    }
    if n == 0 {
        return Err(SolveError::Empty);
    }
    let need = |u: usize, v: usize| i64::from(dm.diameter()) + 1 - i64::from(dm.raw(u, v));
    let mut labels = vec![0i64; n];
    let mut i = 0usize;
    let mut next = vec![0i64; n];
    // Odometer with early rejection: `next[i]` is the next value to try at i.
    loop {
        if i == n {
            return Ok(Some(Labeling::new(
                labels.iter().map(|&l| l as u64).collect(),
            )));
        }
        if next[i] > max_span as i64 {
            next[i] = 0;
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            continue;
        }
        let candidate = next[i];
        next[i] += 1;
        if (0..i).all(|j| (labels[j] - candidate).abs() >= need(i, j)) {
            labels[i] = candidate;
            i += 1;
        }
    }
}

/// Whether some optimal labeling puts its smallest and largest labels on the
/// designated `centers`: both extremes when two or more centers are given,
/// at least one extreme when a single center is given.
pub fn check_center_extremal(
    dm: &DistanceMatrix,
    result: &SolveResult,
    centers: &[VertexId],
    cfg: &SolveConfig,
) -> Result<bool, SolveError> {
    cfg.check()?;
    if result.status != SolveStatus::Optimal {
        return Err(SolveError::NotOptimal);
    }
    let rn = result.radio_number.ok_or(SolveError::NotOptimal)?;
    let mask = centers.iter().fold(0u64, |m, v| m | 1 << v.0);

    let order = result.witness.order();
    let (lo, hi) = (order[0], order[order.len() - 1]);
    let hits = [lo, hi].iter().filter(|v| mask >> v.0 & 1 == 1).count();
    let needed = centers.len().min(2);
    if hits >= needed {
        return Ok(true);
    }

    // Leaf spokes stay interchangeable as long as every designated vertex is
    // a center; mirroring pages could move them, so it stays off.
    let all_centers = dm
        .coords()
        .is_some_and(|c| centers.iter().all(|v| c[v.0].is_center()));
    let sym = detect_symmetry(dm, all_centers, false);
    let rules: Vec<Endpoints> = if needed >= 2 {
        vec![Endpoints {
            first: Some(mask),
            last: Some(mask),
        }]
    } else {
        vec![
            Endpoints {
                first: Some(mask),
                last: None,
            },
            Endpoints {
                first: None,
                last: Some(mask),
            },
        ]
    };
    for ends in rules {
        let mut search = Search::new(dm, rn, cfg, sym.clone(), ends);
        search.run();
        if search.best.is_some() {
            return Ok(true);
        }
        if search.aborted {
            return Err(SolveError::BudgetExhausted);
        }
    }
    Ok(false)
}
