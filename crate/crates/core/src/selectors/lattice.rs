//! Monotone lattice paths on a masked grid.
//!
//! All three corner-growth schemes reduce to counting up-right paths from
//! `(1, 1)` to `(rows, cols)` through allowed cells. A waypoint `(a, b)` is
//! enforced by disallowing every cell that is neither weakly below-left nor
//! weakly above-right of it, which leaves `(a, b)` as the only crossing.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Beyond this `rows + cols`, step probabilities come from a log-space DP.
pub const EXACT_DP_LIMIT: usize = 4096;

#[derive(Clone, Debug)]
pub(crate) struct PathLattice {
    rows: usize,
    cols: usize,
    allowed: Vec<bool>,
}

impl PathLattice {
    pub fn open(rows: usize, cols: usize) -> Self {
        PathLattice { rows, cols, allowed: vec![true; rows * cols] }
    }

    pub fn with_waypoints(rows: usize, cols: usize, waypoints: &[(usize, usize)]) -> Self {
        let mut lattice = Self::open(rows, cols);
        for i in 1..=rows {
            for j in 1..=cols {
                let ok = waypoints
                    .iter()
                    .all(|&(a, b)| (i <= a && j <= b) || (i >= a && j >= b));
                lattice.allowed[(i - 1) * cols + (j - 1)] = ok;
            }
        }
        lattice
    }

    /// Forbid the square of rows and columns `first..=last` (1-based).
    pub fn with_square_removed(side: usize, first: usize, last: usize) -> Self {
        let mut lattice = Self::open(side, side);
        for i in first..=last {
            for j in first..=last {
                lattice.allowed[(i - 1) * side + (j - 1)] = false;
            }
        }
        lattice
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    /// Number of allowed paths from each cell to the far corner.
    pub fn suffix_counts(&self) -> Vec<BigUint> {
        let (r, c) = (self.rows, self.cols);
        let mut s = vec![BigUint::zero(); r * c];
        for i in (0..r).rev() {
            for j in (0..c).rev() {
                let k = self.idx(i, j);
                if !self.allowed[k] {
                    continue;
                }
                if i == r - 1 && j == c - 1 {
                    s[k] = BigUint::from(1u32);
                    continue;
                }
                let mut v = BigUint::zero();
                if i + 1 < r {
                    v += &s[self.idx(i + 1, j)];
                }
                if j + 1 < c {
                    v += &s[self.idx(i, j + 1)];
                }
                s[k] = v;
            }
        }
        s
    }

    /// Number of allowed paths from `(1, 1)` to each cell.
    pub fn prefix_counts(&self) -> Vec<BigUint> {
        let (r, c) = (self.rows, self.cols);
        let mut p = vec![BigUint::zero(); r * c];
        for i in 0..r {
            for j in 0..c {
                let k = self.idx(i, j);
                if !self.allowed[k] {
                    continue;
                }
                if i == 0 && j == 0 {
                    p[k] = BigUint::from(1u32);
                    continue;
                }
                let mut v = BigUint::zero();
                if i > 0 {
                    v += &p[self.idx(i - 1, j)];
                }
                if j > 0 {
                    v += &p[self.idx(i, j - 1)];
                }
                p[k] = v;
            }
        }
        p
    }

    pub fn total(&self) -> BigUint {
        self.suffix_counts().swap_remove(0)
    }

    /// `(sum over cells of (prefix * suffix)^2, total)`. The prefix table is
    /// streamed one row at a time so only the suffix table is held.
    pub fn squared_inclusion_numerator(&self) -> (BigUint, BigUint) {
        let (r, c) = (self.rows, self.cols);
        let suffix = self.suffix_counts();
        let total = suffix[0].clone();
        let mut acc = BigUint::zero();
        let mut prev = vec![BigUint::zero(); c];
        let mut cur = vec![BigUint::zero(); c];
        for i in 0..r {
            for j in 0..c {
                let k = self.idx(i, j);
                cur[j] = if !self.allowed[k] {
                    BigUint::zero()
                } else if i == 0 && j == 0 {
                    BigUint::from(1u32)
                } else {
                    let mut v = BigUint::zero();
                    if i > 0 {
                        v += &prev[j];
                    }
                    if j > 0 {
                        v += &cur[j - 1];
                    }
                    v
                };
                if !cur[j].is_zero() && !suffix[k].is_zero() {
                    let through = &cur[j] * &suffix[k];
                    acc += &through * &through;
                }
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        (acc, total)
    }

    /// Probability of the next step increasing the row index, per cell, or
    /// `None` when no admissible path exists. Cells off every admissible
    /// path get 0.
    pub fn row_step_table(&self) -> Option<Vec<f64>> {
        if self.rows + self.cols <= EXACT_DP_LIMIT {
            self.row_step_table_exact()
        } else {
            self.row_step_table_log()
        }
    }

    fn row_step_table_exact(&self) -> Option<Vec<f64>> {
        let (r, c) = (self.rows, self.cols);
        let s = self.suffix_counts();
        if s[0].is_zero() {
            return None;
        }
        let mut table = vec![0.0; r * c];
        for i in 0..r {
            for j in 0..c {
                let k = self.idx(i, j);
                if s[k].is_zero() || i + 1 == r {
                    continue;
                }
                table[k] = ratio_to_f64(&s[self.idx(i + 1, j)], &s[k]);
            }
        }
        Some(table)
    }

    fn row_step_table_log(&self) -> Option<Vec<f64>> {
        let (r, c) = (self.rows, self.cols);
        let mut ls = vec![f64::NEG_INFINITY; r * c];
        for i in (0..r).rev() {
            for j in (0..c).rev() {
                let k = self.idx(i, j);
                if !self.allowed[k] {
                    continue;
                }
                if i == r - 1 && j == c - 1 {
                    ls[k] = 0.0;
                    continue;
                }
                let down = if i + 1 < r { ls[self.idx(i + 1, j)] } else { f64::NEG_INFINITY };
                let right = if j + 1 < c { ls[self.idx(i, j + 1)] } else { f64::NEG_INFINITY };
                ls[k] = log_add_exp(down, right);
            }
        }
        if ls[0] == f64::NEG_INFINITY {
            return None;
        }
        let mut table = vec![0.0; r * c];
        for i in 0..r.saturating_sub(1) {
            for j in 0..c {
                let k = self.idx(i, j);
                if ls[k].is_finite() {
                    table[k] = (ls[self.idx(i + 1, j)] - ls[k]).exp();
                }
            }
        }
        Some(table)
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + ((a - hi).exp() + (b - hi).exp()).ln()
}

/// `a / b` as an `f64`, accurate for integers far beyond the `f64` range.
pub(crate) fn ratio_to_f64(a: &BigUint, b: &BigUint) -> f64 {
    let shift = a.bits().max(b.bits()).saturating_sub(1000);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}
