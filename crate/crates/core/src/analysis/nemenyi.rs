use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Real;

/// Supported significance levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Alpha {
    #[serde(rename = "0.05")]
    P05,
    #[serde(rename = "0.01")]
    P01,
    #[serde(rename = "0.001")]
    P001,
}

impl Alpha {
    pub const ALL: [Alpha; 3] = [Alpha::P05, Alpha::P01, Alpha::P001];

    pub fn value(self) -> f64 {
        match self {
            Alpha::P05 => 0.05,
            Alpha::P01 => 0.01,
            Alpha::P001 => 0.001,
        }
    }

    pub fn from_value(a: f64) -> Result<Self> {
        Alpha::ALL
            .into_iter()
            .find(|x| (x.value() - a).abs() < 1e-12)
            .ok_or_else(|| Error::InvalidArgument(format!("unsupported significance level {a}")))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

// Studentized range quantiles at infinite degrees of freedom divided by √2,
// for k = 2..=10 groups. The 0.05 row is the usual two-tailed Nemenyi table;
// all rows are q(1 - α; k, ∞) / √2 to four decimals.
const Q_05: [f64; 9] = [
    1.9600, 2.3437, 2.5690, 2.7278, 2.8497, 2.9483, 3.0309, 3.1017, 3.1637,
];
const Q_01: [f64; 9] = [
    2.5758, 2.9135, 3.1133, 3.2547, 3.3637, 3.4522, 3.5265, 3.5903, 3.6463,
];
const Q_001: [f64; 9] = [
    3.2905, 3.5804, 3.7539, 3.8776, 3.9735, 4.0515, 4.1173, 4.1740, 4.2238,
];

pub fn q_alpha(alpha: Alpha, k: usize) -> Result<f64> {
    if !(2..=10).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "Nemenyi table covers 2..=10 methods, got {k}"
        )));
    }
    let row = match alpha {
        Alpha::P05 => &Q_05,
        Alpha::P01 => &Q_01,
        Alpha::P001 => &Q_001,
    };
    Ok(row[k - 2])
}

/// `CD = q_α · sqrt(k (k + 1) / (6 n))`.
pub fn critical_difference<R: Real>(k: usize, n: usize, alpha: Alpha) -> Result<R> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 datasets, got {n}"
        )));
    }
    let q = R::lit(q_alpha(alpha, k)?);
    let (k, n) = (R::from_count(k), R::from_count(n));
    Ok(q * (k * (k + R::one()) / (R::lit(6.0) * n)).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NemenyiResult<R> {
    /// `|R̄_i - R̄_j|`, symmetric with zero diagonal.
    pub rank_diff: Vec<Vec<R>>,
    pub critical_difference: Vec<(Alpha, R)>,
    /// Per level, column pairs `(i, j)` with `i < j` whose difference exceeds the CD.
    pub significant_pairs: Vec<(Alpha, Vec<(usize, usize)>)>,
}

pub fn nemenyi<R: Real>(mean_ranks: &[R], n: usize, levels: &[Alpha]) -> Result<NemenyiResult<R>> {
    let k = mean_ranks.len();
    let rank_diff: Vec<Vec<R>> = mean_ranks
        .iter()
        .map(|&a| mean_ranks.iter().map(|&b| (a - b).abs()).collect())
        .collect();
    let mut cds = Vec::with_capacity(levels.len());
    let mut sig = Vec::with_capacity(levels.len());
    for &alpha in levels {
        let cd = critical_difference::<R>(k, n, alpha)?;
        let pairs = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| rank_diff[i][j] > cd)
            .collect();
        cds.push((alpha, cd));
        sig.push((alpha, pairs));
    }
    Ok(NemenyiResult {
        rank_diff,
        critical_difference: cds,
        significant_pairs: sig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(k: usize, n: usize, a: Alpha) -> f64 {
        critical_difference(k, n, a).unwrap()
    }

    #[test]
    fn published_critical_differences() {
        assert!((cd(5, 17, Alpha::P01) - 1.765).abs() < 0.005);
        assert!((cd(5, 17, Alpha::P001) - 2.103).abs() < 0.005);
        assert!((cd(4, 14, Alpha::P05) - 1.254).abs() < 0.005);
        assert!((cd(4, 14, Alpha::P001) - 1.832).abs() < 0.005);
        assert_eq!(q_alpha(Alpha::P05, 4).unwrap(), 2.569);
    }

    #[test]
    fn cd_shrinks_with_more_datasets() {
        for a in Alpha::ALL {
            for k in 2..=10 {
                let mut prev = f64::INFINITY;
                for n in 2..60 {
                    let c = cd(k, n, a);
                    assert!(c < prev);
                    prev = c;
                }
            }
        }
    }

    #[test]
    fn unsupported_inputs() {
        assert!(critical_difference::<f64>(11, 5, Alpha::P05).is_err());
        assert!(critical_difference::<f64>(1, 5, Alpha::P05).is_err());
        assert!(critical_difference::<f64>(3, 1, Alpha::P05).is_err());
        assert!(Alpha::from_value(0.1).is_err());
        assert_eq!(Alpha::from_value(0.01).unwrap(), Alpha::P01);
    }

    #[test]
    fn pairs_above_cd() {
        // k = 3, n = 10, α = 0.05: CD = 2.3437 · sqrt(12/60) ≈ 1.048
        let r = nemenyi(&[1.0f64, 2.0, 2.9], 10, &[Alpha::P05]).unwrap();
        assert_eq!(r.significant_pairs[0].1, vec![(0, 2)]);
        assert_eq!(r.rank_diff[2][0], r.rank_diff[0][2]);
        assert_eq!(r.rank_diff[1][1], 0.0);
    }
}
