use serde::{Deserialize, Serialize};

use super::gamma::chi_square_sf;
use crate::error::{Error, Result};
use crate::num::Real;

/// Which end of a measurement receives rank 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankOrder {
    /// Largest value is best (AUC).
    HigherIsBetter,
    /// Smallest value is best (run time).
    LowerIsBetter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult<R> {
    pub statistic: R,
    pub df: usize,
    pub p_value: R,
    /// Mean rank per column, in column order.
    pub mean_ranks: Vec<R>,
    pub n: usize,
}

/// Ranks `1..=k` within one row, tied values sharing the average of the
/// ranks they span.
pub fn average_ranks<R: Real>(row: &[R], order: RankOrder) -> Vec<R> {
    let k = row.len();
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&a, &b| {
        let c = row[a].partial_cmp(&row[b]).expect("no NaN in rank input");
        match order {
            RankOrder::HigherIsBetter => c.reverse(),
            RankOrder::LowerIsBetter => c,
        }
    });
    let mut ranks = vec![R::zero(); k];
    let mut i = 0;
    while i < k {
        let mut j = i + 1;
        while j < k && row[idx[j]] == row[idx[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let avg = R::from_count(i + 1 + j) / R::lit(2.0);
        for &p in &idx[i..j] {
            ranks[p] = avg;
        }
        i = j;
    }
    ranks
}

/// Friedman test over an `N × k` matrix (rows = datasets, columns =
/// treatments), chi-square approximation with `k - 1` degrees of freedom.
pub fn friedman<R: Real>(matrix: &[Vec<R>], order: RankOrder) -> Result<FriedmanResult<R>> {
    let n = matrix.len();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "Friedman test needs at least 2 datasets, got {n}"
        )));
    }
    let k = matrix[0].len();
    if k < 2 {
        return Err(Error::Precondition(format!(
            "Friedman test needs at least 2 methods, got {k}"
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != k {
            return Err(Error::Precondition(format!(
                "row {i} has {} cells, expected {k}",
                row.len()
            )));
        }
        if row.iter().any(|v| v.is_nan()) {
            return Err(Error::Precondition(format!("row {i} has missing cells")));
        }
    }
    let mut rank_sums = vec![R::zero(); k];
    for row in matrix {
        for (s, r) in rank_sums.iter_mut().zip(average_ranks(row, order)) {
            *s = *s + r;
        }
    }
    let nn = R::from_count(n);
    let kk = R::from_count(k);
    let mean_ranks: Vec<R> = rank_sums.iter().map(|&s| s / nn).collect();
    let centre = (kk + R::one()) / R::lit(2.0);
    let spread: R = mean_ranks.iter().map(|&r| (r - centre) * (r - centre)).sum();
    let statistic = R::lit(12.0) * nn / (kk * (kk + R::one())) * spread;
    Ok(FriedmanResult {
        statistic,
        df: k - 1,
        p_value: chi_square_sf(statistic, k - 1),
        mean_ranks,
        n,
    })
}
