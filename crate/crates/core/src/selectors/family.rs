//! Size-indexed scheme families and the growth exponent of `L`.

use serde::{Deserialize, Serialize};

use super::{waypoints_from_fractions, SelectionScheme};
use crate::error::{Error, Result};
use crate::stats::{log_log_fit, SlopeFit};

/// Ground-set size of a subset family: `n = round(N^exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetGround {
    pub exponent: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetSize {
    Fixed(usize),
    /// `m = round(N^exponent)`.
    Power(f64),
    /// `m = 2N - 1`, the length of a corner-growth path on the `N x N` grid.
    PathLength,
}

/// A selection scheme as a function of the system size `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SchemeFamily {
    /// `N x floor(aspect N)` grid.
    Path { aspect: f64 },
    /// Square grid with waypoints given as `(row, column)` fractions.
    PathThrough { fractions: Vec<(f64, f64)> },
    PathAvoid { beta: f64 },
    Subset { ground: SubsetGround, size: SubsetSize },
    Permutation,
}

impl SchemeFamily {
    pub fn at(&self, size: usize) -> Result<SelectionScheme> {
        let scheme = match self {
            SchemeFamily::Path { aspect } => {
                let cols = (aspect * size as f64).floor() as usize;
                SelectionScheme::UpRightPath { rows: size, cols }
            }
            SchemeFamily::PathThrough { fractions } => SelectionScheme::UpRightPathThrough {
                rows: size,
                cols: size,
                waypoints: waypoints_from_fractions(size, size, fractions),
            },
            SchemeFamily::PathAvoid { beta } => SelectionScheme::UpRightPathAvoidSquare { side: size, beta: *beta },
            SchemeFamily::Subset { ground, size: m } => {
                let n = (size as f64).powf(ground.exponent).round() as usize;
                let m = match *m {
                    SubsetSize::Fixed(k) => k,
                    SubsetSize::Power(e) => (size as f64).powf(e).round() as usize,
                    SubsetSize::PathLength => 2 * size - 1,
                };
                SelectionScheme::UniformSubset { n, m }
            }
            SchemeFamily::Permutation => SelectionScheme::UniformPermutation { n: size },
        };
        scheme.validate()?;
        Ok(scheme)
    }
}

/// Least-squares slope of `log L(N)` against `log N`.
pub fn lambda_fit(family: &SchemeFamily, sizes: &[usize]) -> Result<SlopeFit> {
    if sizes.len() < 3 {
        return Err(Error::Parameter(format!("need at least 3 sizes, got {}", sizes.len())));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("sizes must be strictly increasing".into()));
    }
    let mut ls = Vec::with_capacity(sizes.len());
    for &n in sizes {
        ls.push(family.at(n)?.l_statistic()?);
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    Ok(log_log_fit(&xs, &ls))
}
