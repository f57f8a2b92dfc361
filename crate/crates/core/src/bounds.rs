//! Closed-form radio-number bounds for stacked-book graphs with an odd path
//! factor, plus the classical path formulas.
//!
//! Everything is exact integer arithmetic. Each formula carries its own
//! validity range and refuses to extrapolate outside it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{op}: requires {requirement} (got m={m}, n={n})")]
    OutOfRange {
        op: &'static str,
        requirement: &'static str,
        m: usize,
        n: usize,
    },
    #[error("{op}: numerator {numerator} is odd, formula does not yield an integer")]
    HalfInteger { op: &'static str, numerator: i64 },
    #[error("path order must be at least 3, got {0}")]
    PathTooShort(usize),
}

/// Orders of the star (`m`) and path (`n`) factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookParams {
    pub m: usize,
    pub n: usize,
}

impl BookParams {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn n_is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    fn require(&self, op: &'static str, min_m: usize) -> Result<(i64, i64), BoundsError> {
        if self.m < min_m || self.n < 5 || !self.n_is_odd() {
            return Err(BoundsError::OutOfRange {
                op,
                requirement: if min_m >= 5 {
                    "m >= 5 and odd n >= 5"
                } else {
                    "m >= 4 and odd n >= 5"
                },
                m: self.m,
                n: self.n,
            });
        }
        Ok((self.m as i64, self.n as i64))
    }
}

fn half(op: &'static str, numerator: i64) -> Result<u64, BoundsError> {
    if numerator % 2 != 0 {
        return Err(BoundsError::HalfInteger { op, numerator });
    }
    Ok((numerator / 2) as u64)
}

/// Exhaustively searched minimum spans of `P_n` (labels starting at 0).
/// Re-derived by the exact solver in the test suite.
pub const EXHAUSTIVE_PATH_SPANS: [(usize, u64); 7] =
    [(2, 1), (3, 3), (4, 5), (5, 10), (6, 13), (7, 20), (8, 25)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRadioNumber {
    pub n: usize,
    /// Literature value: `2k(k-1)+1` for `n = 2k`, `2k^2+2` for `n = 2k+1`.
    pub printed: u64,
    /// Minimum span with labels starting at 0, when it has been searched.
    pub span_convention: Option<u64>,
}

pub fn path_radio_number(n: usize) -> Result<PathRadioNumber, BoundsError> {
    if n < 3 {
        return Err(BoundsError::PathTooShort(n));
    }
    let k = (n / 2) as u64;
    let printed = if n.is_multiple_of(2) {
        2 * k * (k - 1) + 1
    } else {
        2 * k * k + 2
    };
    let span_convention = EXHAUSTIVE_PATH_SPANS
        .iter()
        .find(|(p, _)| *p == n)
        .map(|&(_, s)| s);
    Ok(PathRadioNumber {
        n,
        printed,
        span_convention,
    })
}

/// `(m n^2 + m + 2n - 4) / 2`, for `m >= 4`, odd `n >= 5`.
pub fn lower_bound_total(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "lower_bound_total";
    let (m, n) = p.require(OP, 4)?;
    half(OP, m * n * n + m + 2 * n - 4)
}

/// `(m n^2 + 2n + m - 2) / 2`, for `m >= 5`, odd `n >= 5`.
pub fn upper_bound_total(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "upper_bound_total";
    let (m, n) = p.require(OP, 5)?;
    half(OP, m * n * n + 2 * n + m - 2)
}

/// Lower bound for the three-page core (pages 1, (n+1)/2, n):
/// `(2mn + 4m - n + 5) / 2`.
pub fn gstar_lower(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "gstar_lower";
    let (m, n) = p.require(OP, 4)?;
    half(OP, 2 * m * n + 4 * m - n + 5)
}

/// Upper bound for the three-page core: `(2mn + 4m - n + 7) / 2`, `m >= 5`.
pub fn gstar_upper(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "gstar_upper";
    let (m, n) = p.require(OP, 5)?;
    half(OP, 2 * m * n + 4 * m - n + 7)
}

/// Lower bound for a half-shifted page pair: `mn + m - (n - 3) / 2`.
pub fn gpp_pair_lower(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "gpp_pair_lower";
    let (m, n) = p.require(OP, 4)?;
    Ok((m * n + m) as u64 - half(OP, n - 3)?)
}

/// Lower bound for the union of all page pairs:
/// `(m n^2 - 2mn - 3m + 2n - 12) / 2`.
pub fn gss_lower(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "gss_lower";
    let (m, n) = p.require(OP, 4)?;
    half(OP, m * n * n - 2 * m * n - 3 * m + 2 * n - 12)
}

/// Upper bound for the union of all page pairs, as printed with its terms in
/// a different order: `(m n^2 - 2mn + 2n - 3m - 12) / 2`. Same polynomial as
/// [`gss_lower`].
pub fn gss_upper(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "gss_upper";
    let (m, n) = p.require(OP, 4)?;
    half(OP, m * n * n - 2 * m * n + 2 * n - 3 * m - 12)
}

/// The two families of end-mid-end paths through pages 1, (n+1)/2 and n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathClass {
    /// The three paths that route through a center vertex.
    Class1,
    /// The remaining `m - 3` leaf-only paths.
    Class2,
}

/// Smallest possible label on the midpoint when one endpoint is labeled 0:
/// `(n+5)/2` for class 1, `(n+3)/2` for class 2.
pub fn mid_label_min(n: usize, class: PathClass) -> Result<u64, BoundsError> {
    const OP: &str = "mid_label_min";
    if n < 5 || n.is_multiple_of(2) {
        return Err(BoundsError::OutOfRange {
            op: OP,
            requirement: "odd n >= 5",
            m: 0,
            n,
        });
    }
    let n = n as i64;
    match class {
        PathClass::Class1 => half(OP, n + 5),
        PathClass::Class2 => half(OP, n + 3),
    }
}

/// Sum of midpoint label minima over all `m` end-mid-end paths:
/// `(mn + 3m + 6) / 2`.
pub fn pt_center_sum(p: BookParams) -> Result<u64, BoundsError> {
    const OP: &str = "pt_center_sum";
    let (m, n) = p.require(OP, 4)?;
    let closed = half(OP, m * n + 3 * m + 6)?;
    let by_parts = 3 * mid_label_min(p.n, PathClass::Class1)?
        + (p.m as u64 - 3) * mid_label_min(p.n, PathClass::Class2)?;
    debug_assert_eq!(closed, by_parts);
    Ok(closed)
}

/// Every bound evaluated at one `(m, n)`. Fields outside their validity
/// range are `None` with an explanation in `notes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub m: usize,
    pub n: usize,
    pub lower_total: Option<u64>,
    pub upper_total: Option<u64>,
    pub gstar_lower: Option<u64>,
    pub gstar_upper: Option<u64>,
    pub gpp_pair_lower: Option<u64>,
    pub gss_lower: Option<u64>,
    pub gss_upper: Option<u64>,
    pub mid_label_class1: Option<u64>,
    pub mid_label_class2: Option<u64>,
    pub pt_center_sum: Option<u64>,
    /// True when both page-pair expressions are defined and agree.
    pub gss_coincide: bool,
    pub notes: BTreeMap<String, String>,
}

impl BoundsReport {
    pub fn evaluate(p: BookParams) -> Self {
        let mut notes = BTreeMap::new();
        let mut field = |name: &str, r: Result<u64, BoundsError>| match r {
            Ok(v) => Some(v),
            Err(e) => {
                notes.insert(name.to_string(), format!("not applicable: {e}"));
                None
            }
        };
        let lower_total = field("lower_total", lower_bound_total(p));
        let upper_total = field("upper_total", upper_bound_total(p));
        let gstar_lo = field("gstar_lower", gstar_lower(p));
        let gstar_hi = field("gstar_upper", gstar_upper(p));
        let gpp = field("gpp_pair_lower", gpp_pair_lower(p));
        let gss_lo = field("gss_lower", gss_lower(p));
        let gss_hi = field("gss_upper", gss_upper(p));
        let mid1 = field("mid_label_class1", mid_label_min(p.n, PathClass::Class1));
        let mid2 = field("mid_label_class2", mid_label_min(p.n, PathClass::Class2));
        let pt = field("pt_center_sum", pt_center_sum(p));
        Self {
            m: p.m,
            n: p.n,
            lower_total,
            upper_total,
            gstar_lower: gstar_lo,
            gstar_upper: gstar_hi,
            gpp_pair_lower: gpp,
            gss_lower: gss_lo,
            gss_upper: gss_hi,
            mid_label_class1: mid1,
            mid_label_class2: mid2,
            pt_center_sum: pt,
            gss_coincide: gss_lo.is_some() && gss_lo == gss_hi,
            notes,
        }
    }

    /// `(name, value)` rows in display order.
    pub fn rows(&self) -> Vec<(&'static str, Option<u64>)> {
        vec![
            ("lower_total", self.lower_total),
            ("upper_total", self.upper_total),
            ("gstar_lower", self.gstar_lower),
            ("gstar_upper", self.gstar_upper),
            ("gpp_pair_lower", self.gpp_pair_lower),
            ("gss_lower", self.gss_lower),
            ("gss_upper", self.gss_upper),
            ("mid_label_class1", self.mid_label_class1),
            ("mid_label_class2", self.mid_label_class2),
            ("pt_center_sum", self.pt_center_sum),
        ]
    }
}
