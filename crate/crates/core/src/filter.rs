//! Non-dominated filtering.
//!
//! Points are visited in descending lexicographic order of their objective
//! vectors. Any vector that dominates `p` is lexicographically larger, so it
//! is visited before `p`, and a single sweep decides every point:
//!
//! * `M = 1`: survivors share the maximum value.
//! * `M = 2`: `p` is dominated iff the running maximum of `g_2` over earlier
//!   distinct vectors reaches `p_2`.
//! * `M = 3`: earlier survivors form a staircase in `(g_2, g_3)`; one ordered
//!   lookup answers the dominance query.
//! * `M ≥ 4`: `p` is compared against the earlier survivors.
//!
//! Identical vectors are processed as one group so that they never eliminate
//! each other.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{MooError, Result};
use crate::moo::{weakly_dominates, ObjectiveVector, ResourcePoint};

/// Indices (ascending) of the points not dominated by any other point.
///
/// Accepts a flat row-major buffer of `n × m` values.
pub fn nondominated_flat(values: &[f64], m: usize) -> Result<Vec<usize>> {
    if m == 0 {
        return Err(MooError::DimensionMismatch { expected: 1, actual: 0 });
    }
    if !values.len().is_multiple_of(m) {
        return Err(MooError::DimensionMismatch { expected: m, actual: values.len() % m });
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(MooError::NotANumber);
    }
    let n = values.len() / m;
    let row = |i: usize| &values[i * m..(i + 1) * m];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| lex_desc(row(a), row(b)).then(a.cmp(&b)));

    let mut keep = vec![false; n];
    let mut start = 0;
    let mut sweep = Sweep::new(m);
    while start < n {
        let head = row(order[start]);
        let mut end = start + 1;
        while end < n && row(order[end]) == head {
            end += 1;
        }
        if !sweep.dominated(head) {
            for &i in &order[start..end] {
                keep[i] = true;
            }
            sweep.insert(head);
        }
        start = end;
    }
    Ok((0..n).filter(|&i| keep[i]).collect())
}

/// Indices (ascending) of the non-dominated rows.
pub fn nondominated_indices<T: AsRef<[f64]>>(points: &[T]) -> Result<Vec<usize>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    let m = first.as_ref().len();
    let mut flat = Vec::with_capacity(points.len() * m);
    for p in points {
        let p = p.as_ref();
        if p.len() != m {
            return Err(MooError::DimensionMismatch { expected: m, actual: p.len() });
        }
        flat.extend_from_slice(p);
    }
    nondominated_flat(&flat, m)
}

/// Keeps exactly the pairs whose objective vector is not dominated by any
/// other pair's, in their original order. Ties all survive.
pub fn pareto_filter(points: &[(ResourcePoint, ObjectiveVector)]) -> Result<Vec<(ResourcePoint, ObjectiveVector)>> {
    if points.is_empty() {
        return Err(MooError::EmptyInput);
    }
    let gs: Vec<&[f64]> = points.iter().map(|(_, g)| g.as_slice()).collect();
    let keep = nondominated_indices(&gs)?;
    Ok(keep.into_iter().map(|i| points[i].clone()).collect())
}

fn lex_desc(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        // NaN was rejected up front, and -0.0 must group with 0.0.
        match y.partial_cmp(x).unwrap_or(Ordering::Equal) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Totally ordered f64 key (inputs are NaN-free).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // -0.0 and 0.0 compare equal under `>=`, keep them equal here too.
        if self.0 == other.0 {
            Ordering::Equal
        } else {
            self.0.total_cmp(&other.0)
        }
    }
}

enum Sweep {
    One { best: Option<f64> },
    Two { max_second: f64 },
    /// `g_2 → g_3`, with `g_3` strictly decreasing as `g_2` increases.
    Three { stairs: BTreeMap<Key, f64> },
    Many { survivors: Vec<Vec<f64>> },
}

impl Sweep {
    fn new(m: usize) -> Self {
        match m {
            1 => Sweep::One { best: None },
            2 => Sweep::Two { max_second: f64::NEG_INFINITY },
            3 => Sweep::Three { stairs: BTreeMap::new() },
            _ => Sweep::Many { survivors: Vec::new() },
        }
    }

    fn dominated(&self, p: &[f64]) -> bool {
        match self {
            Sweep::One { best } => best.is_some(),
            Sweep::Two { max_second } => *max_second >= p[1],
            Sweep::Three { stairs } => stairs
                .range(Key(p[1])..)
                .next()
                .is_some_and(|(_, &third)| third >= p[2]),
            Sweep::Many { survivors } => survivors.iter().any(|q| weakly_dominates(q, p)),
        }
    }

    fn insert(&mut self, p: &[f64]) {
        match self {
            Sweep::One { best } => *best = Some(p[0]),
            Sweep::Two { max_second } => *max_second = max_second.max(p[1]),
            Sweep::Three { stairs } => {
                let stale: Vec<Key> = stairs
                    .range(..=Key(p[1]))
                    .rev()
                    .take_while(|(_, &third)| third <= p[2])
                    .map(|(&k, _)| k)
                    .collect();
                for k in stale {
                    stairs.remove(&k);
                }
                stairs.insert(Key(p[1]), p[2]);
            }
            Sweep::Many { survivors } => survivors.push(p.to_vec()),
        }
    }
}
