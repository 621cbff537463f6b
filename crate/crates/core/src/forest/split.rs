//! Gini impurity and the threshold split search.

use std::cmp::Ordering;

use super::ForestError;

/// `1 - sum(p_c^2)` over the class proportions of a node.
pub fn gini(class_counts: &[usize]) -> Result<f64, ForestError> {
    let total: usize = class_counts.iter().sum();
    if total == 0 {
        return Err(ForestError::EmptyNode);
    }
    let n = total as f64;
    Ok(1.0 - class_counts.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>())
}

/// A threshold rule: rows with `x[feature] <= threshold` go left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub feature: usize,
    pub threshold: f64,
    /// Impurity decrease of the split, always positive.
    pub decrease: f64,
}

/// Midpoint between two consecutive distinct values. Falls back to the lower
/// value when the two are adjacent floats, so that `lo` still routes left and
/// `hi` right.
pub fn midpoint(lo: f64, hi: f64) -> f64 {
    let m = 0.5 * (lo + hi);
    if m < hi {
        m
    } else {
        lo
    }
}

/// Children's score `sum(l_c^2)/n_l + sum(r_c^2)/n_r` kept as an exact
/// fraction. The weighted child impurity is `(n - score) / n`, so a larger
/// score is a better split, and comparing fractions exactly keeps tie-breaks
/// independent of rounding.
#[derive(Debug, Clone, Copy)]
struct Score {
    num: u128,
    den: u128,
}

impl Score {
    fn new(left_sq: u64, n_left: u64, right_sq: u64, n_right: u64) -> Score {
        Score {
            num: u128::from(left_sq) * u128::from(n_right) + u128::from(right_sq) * u128::from(n_left),
            den: u128::from(n_left) * u128::from(n_right),
        }
    }

    fn cmp(&self, other: &Score) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }

    fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Best impurity-decreasing split of `rows` over the candidate `features`.
///
/// Candidate thresholds are midpoints between consecutive distinct sorted
/// values. Both children must hold at least `min_leaf` rows. Ties go to the
/// lowest feature index, then to the smaller threshold. Returns `None` when no
/// admissible split strictly decreases impurity.
pub fn best_split(
    x: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    rows: &[usize],
    features: &[usize],
    min_leaf: usize,
) -> Option<Split> {
    let min_leaf = min_leaf.max(1);
    let n = rows.len();
    if n < 2 * min_leaf || features.is_empty() {
        return None;
    }

    let mut parent = vec![0u64; n_classes];
    for &r in rows {
        parent[y[r]] += 1;
    }
    let parent_sq: u64 = parent.iter().map(|c| c * c).sum();

    let mut features = features.to_vec();
    features.sort_unstable();
    features.dedup();

    let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(n);
    let mut left = vec![0u64; n_classes];
    let mut best: Option<(usize, f64, Score)> = None;

    for &f in &features {
        pairs.clear();
        pairs.extend(rows.iter().map(|&r| (x[r][f], y[r])));
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pairs[0].0 == pairs[n - 1].0 {
            continue;
        }
        left.iter_mut().for_each(|c| *c = 0);
        let mut left_sq = 0u64;
        let mut right_sq = parent_sq;
        for i in 0..n - 1 {
            let c = pairs[i].1;
            // moving one row of class c from right to left
            left_sq += 2 * left[c] + 1;
            right_sq -= 2 * (parent[c] - left[c]) - 1;
            left[c] += 1;

            if pairs[i].0 == pairs[i + 1].0 {
                continue;
            }
            let n_left = i + 1;
            let n_right = n - n_left;
            if n_left < min_leaf || n_right < min_leaf {
                continue;
            }
            let score = Score::new(left_sq, n_left as u64, right_sq, n_right as u64);
            if best
                .as_ref()
                .is_none_or(|(_, _, b)| score.cmp(b) == Ordering::Greater)
            {
                best = Some((f, midpoint(pairs[i].0, pairs[i + 1].0), score));
            }
        }
    }

    let (feature, threshold, score) = best?;
    // strictly better than leaving the node whole: score > parent_sq / n
    if score.num * n as u128 <= u128::from(parent_sq) * score.den {
        return None;
    }
    let decrease = (score.value() - parent_sq as f64 / n as f64) / n as f64;
    Some(Split {
        feature,
        threshold,
        decrease,
    })
}
