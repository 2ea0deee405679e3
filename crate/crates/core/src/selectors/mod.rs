//! Selection schemes: uniform random paths, subsets and permutations with
//! exact counting and exact inclusion probabilities.

mod family;
mod lattice;

pub use family::{lambda_fit, SchemeFamily, SubsetGround, SubsetSize};
pub use lattice::EXACT_DP_LIMIT;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::environments::GroundSet;
use crate::error::{Error, Result};
use lattice::{ratio_to_f64, PathLattice};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SelectionScheme {
    /// Up-right paths from `(1, 1)` to `(rows, cols)`.
    UpRightPath { rows: usize, cols: usize },
    /// Up-right paths forced through every waypoint.
    UpRightPathThrough { rows: usize, cols: usize, waypoints: Vec<(usize, usize)> },
    /// Up-right paths on the `side x side` grid avoiding a central square of
    /// side `floor(beta * side)`.
    UpRightPathAvoidSquare { side: usize, beta: f64 },
    /// Uniform `m`-subsets of `{1, ..., n}`.
    UniformSubset { n: usize, m: usize },
    /// Sites `(i, pi(i))` of the `n x n` grid for a uniform permutation `pi`.
    UniformPermutation { n: usize },
}

/// Map waypoint fractions `(zeta, xi)` to grid points
/// `(ceil(zeta * rows), ceil(xi * cols))`.
pub fn waypoints_from_fractions(rows: usize, cols: usize, fractions: &[(f64, f64)]) -> Vec<(usize, usize)> {
    fractions
        .iter()
        .map(|&(zeta, xi)| ((zeta * rows as f64).ceil() as usize, (xi * cols as f64).ceil() as usize))
        .collect()
}

/// Forbidden rows and columns `first..=last` of the central square, or
/// `None` when `floor(beta * side) = 0`.
pub fn central_square(side: usize, beta: f64) -> Option<(usize, usize)> {
    let s = (beta * side as f64).floor() as usize;
    if s == 0 {
        return None;
    }
    let offset = (side - s).div_ceil(2);
    Some((offset + 1, offset + s))
}

impl SelectionScheme {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match self {
            SelectionScheme::UpRightPath { rows, cols } => {
                if *rows == 0 || *cols == 0 {
                    return bad(format!("grid {rows}x{cols} must be at least 1x1"));
                }
            }
            SelectionScheme::UpRightPathThrough { rows, cols, waypoints } => {
                if *rows == 0 || *cols == 0 {
                    return bad(format!("grid {rows}x{cols} must be at least 1x1"));
                }
                for &(a, b) in waypoints {
                    if !(1..=*rows).contains(&a) || !(1..=*cols).contains(&b) {
                        return bad(format!("waypoint ({a}, {b}) lies outside the {rows}x{cols} grid"));
                    }
                }
            }
            SelectionScheme::UpRightPathAvoidSquare { side, beta } => {
                if *side == 0 {
                    return bad("grid side must be at least 1".into());
                }
                if !(*beta > 0.0 && *beta < 1.0) {
                    return bad(format!("square fraction {beta} outside (0, 1)"));
                }
            }
            SelectionScheme::UniformSubset { n, m } => {
                if *n == 0 || *m == 0 {
                    return bad(format!("subset scheme needs n, m >= 1, got n={n}, m={m}"));
                }
            }
            SelectionScheme::UniformPermutation { n } => {
                if *n == 0 {
                    return bad("permutation size must be at least 1".into());
                }
            }
        }
        Ok(())
    }

    pub fn ground_set(&self) -> GroundSet {
        match *self {
            SelectionScheme::UpRightPath { rows, cols }
            | SelectionScheme::UpRightPathThrough { rows, cols, .. } => GroundSet::grid(rows, cols),
            SelectionScheme::UpRightPathAvoidSquare { side, .. } => GroundSet::grid(side, side),
            SelectionScheme::UniformSubset { n, .. } => GroundSet::line(n),
            SelectionScheme::UniformPermutation { n } => GroundSet::grid(n, n),
        }
    }

    /// The fixed size `m = |sigma|`.
    pub fn selection_size(&self) -> usize {
        match *self {
            SelectionScheme::UpRightPath { rows, cols }
            | SelectionScheme::UpRightPathThrough { rows, cols, .. } => rows + cols - 1,
            SelectionScheme::UpRightPathAvoidSquare { side, .. } => 2 * side - 1,
            SelectionScheme::UniformSubset { m, .. } => m,
            SelectionScheme::UniformPermutation { n } => n,
        }
    }

    pub fn is_path(&self) -> bool {
        matches!(
            self,
            SelectionScheme::UpRightPath { .. }
                | SelectionScheme::UpRightPathThrough { .. }
                | SelectionScheme::UpRightPathAvoidSquare { .. }
        )
    }

    fn lattice(&self) -> Option<PathLattice> {
        match self {
            SelectionScheme::UpRightPath { rows, cols } => Some(PathLattice::open(*rows, *cols)),
            SelectionScheme::UpRightPathThrough { rows, cols, waypoints } => {
                Some(PathLattice::with_waypoints(*rows, *cols, waypoints))
            }
            SelectionScheme::UpRightPathAvoidSquare { side, beta } => Some(match central_square(*side, *beta) {
                Some((first, last)) => PathLattice::with_square_removed(*side, first, last),
                None => PathLattice::open(*side, *side),
            }),
            _ => None,
        }
    }

    fn infeasible(&self) -> Error {
        Error::Infeasible(format!("{self:?} admits no configuration"))
    }

    /// Exact number of admissible configurations.
    pub fn count_configurations(&self) -> Result<BigUint> {
        self.validate()?;
        let count = match self {
            SelectionScheme::UpRightPath { rows, cols } => binomial(rows + cols - 2, rows - 1),
            SelectionScheme::UpRightPathThrough { rows, cols, waypoints } => {
                let mut points = vec![(1, 1)];
                points.extend(waypoints.iter().copied());
                points.push((*rows, *cols));
                points
                    .windows(2)
                    .map(|w| {
                        let (di, dj) = (w[1].0 as isize - w[0].0 as isize, w[1].1 as isize - w[0].1 as isize);
                        if di < 0 || dj < 0 {
                            BigUint::zero()
                        } else {
                            binomial((di + dj) as usize, di as usize)
                        }
                    })
                    .product()
            }
            SelectionScheme::UpRightPathAvoidSquare { .. } => self.lattice().expect("path scheme").total(),
            SelectionScheme::UniformSubset { n, m } => binomial_or_zero(*n, *m),
            SelectionScheme::UniformPermutation { n } => (1..=*n).map(BigUint::from).product(),
        };
        if count.is_zero() {
            return Err(self.infeasible());
        }
        Ok(count)
    }

    /// Exact inclusion probabilities of every site as `numerators / denominator`.
    pub fn inclusion_table(&self) -> Result<InclusionTable> {
        self.count_configurations()?;
        let ground = self.ground_set();
        let (numerators, denominator) = match self {
            SelectionScheme::UniformSubset { n, m } => (vec![BigUint::from(*m); *n], BigUint::from(*n)),
            SelectionScheme::UniformPermutation { n } => (vec![BigUint::one(); n * n], BigUint::from(*n)),
            _ => {
                let lattice = self.lattice().expect("path scheme");
                let pre = lattice.prefix_counts();
                let suf = lattice.suffix_counts();
                let total = suf[0].clone();
                (pre.iter().zip(&suf).map(|(a, b)| a * b).collect(), total)
            }
        };
        Ok(InclusionTable { ground, numerators, denominator })
    }

    pub fn inclusion_probability(&self, site: usize) -> Result<BigRational> {
        let size = self.ground_set().len();
        if site >= size {
            return Err(Error::SiteOutOfRange { site, size });
        }
        self.count_configurations()?;
        Ok(match self {
            SelectionScheme::UniformSubset { n, m } => ratio(BigUint::from(*m), BigUint::from(*n)),
            SelectionScheme::UniformPermutation { n } => ratio(BigUint::one(), BigUint::from(*n)),
            _ => {
                let lattice = self.lattice().expect("path scheme");
                let pre = lattice.prefix_counts();
                let suf = lattice.suffix_counts();
                ratio(&pre[site] * &suf[site], suf[0].clone())
            }
        })
    }

    /// `L^2 = sum over the ground set of P(a in sigma)^2`, exactly.
    pub fn l_squared(&self) -> Result<BigRational> {
        self.count_configurations()?;
        Ok(match self {
            SelectionScheme::UniformSubset { n, m } => ratio(BigUint::from(m * m), BigUint::from(*n)),
            SelectionScheme::UniformPermutation { n } => {
                // n^2 sites of probability 1/n each.
                let n = BigUint::from(*n);
                ratio(&n * &n, &n * &n)
            }
            _ => {
                let (num, total) = self.lattice().expect("path scheme").squared_inclusion_numerator();
                ratio(num, &total * &total)
            }
        })
    }

    /// `L = sqrt(L^2)`, rounded from the exact rational.
    pub fn l_statistic(&self) -> Result<f64> {
        let l2 = self.l_squared()?;
        Ok(ratio_to_f64(&to_biguint(l2.numer()), &to_biguint(l2.denom())).sqrt())
    }

    /// Every admissible configuration, for schemes with at most `limit` of them.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<Selection>> {
        let count = self.count_configurations()?;
        if count > BigUint::from(limit) {
            return Err(Error::Parameter(format!("{count} configurations exceed the enumeration limit {limit}")));
        }
        let mut out = Vec::new();
        match self {
            SelectionScheme::UniformSubset { n, m } => {
                let mut cur = Vec::with_capacity(*m);
                enumerate_subsets(0, *n, *m, &mut cur, &mut out);
            }
            SelectionScheme::UniformPermutation { n } => {
                let mut perm: Vec<usize> = (0..*n).collect();
                enumerate_permutations(0, &mut perm, &mut out);
            }
            _ => {
                let lattice = self.lattice().expect("path scheme");
                let suffix = lattice.suffix_counts();
                let mut cur = vec![0];
                enumerate_paths(&lattice, &suffix, 0, 0, &mut cur, &mut out);
            }
        }
        Ok(out)
    }
}

fn enumerate_subsets(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Selection>) {
    if cur.len() == m {
        out.push(Selection { sites: cur.clone() });
        return;
    }
    for a in start..n {
        if n - a < m - cur.len() {
            break;
        }
        cur.push(a);
        enumerate_subsets(a + 1, n, m, cur, out);
        cur.pop();
    }
}

fn enumerate_permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Selection>) {
    let n = perm.len();
    if k == n {
        out.push(Selection { sites: perm.iter().enumerate().map(|(i, &p)| i * n + p).collect() });
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        enumerate_permutations(k + 1, perm, out);
        perm.swap(k, i);
    }
}

fn enumerate_paths(
    lattice: &PathLattice,
    suffix: &[BigUint],
    i: usize,
    j: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Selection>,
) {
    let (r, c) = (lattice.rows(), lattice.cols());
    if i + 1 == r && j + 1 == c {
        out.push(Selection { sites: cur.clone() });
        return;
    }
    for (ni, nj) in [(i + 1, j), (i, j + 1)] {
        if ni < r && nj < c && !suffix[ni * c + nj].is_zero() {
            cur.push(ni * c + nj);
            enumerate_paths(lattice, suffix, ni, nj, cur, out);
            cur.pop();
        }
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn to_biguint(x: &num_bigint::BigInt) -> BigUint {
    x.to_biguint().expect("nonnegative")
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    binomial_or_zero(n, k)
}

fn binomial_or_zero(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // Exact at every step: acc = C(n - k + i + 1, i + 1) after the division.
        acc *= n - k + i + 1;
        acc /= i + 1;
    }
    acc
}

/// Exact inclusion probabilities `numerators[a] / denominator` per site.
#[derive(Clone, Debug, PartialEq)]
pub struct InclusionTable {
    pub ground: GroundSet,
    pub numerators: Vec<BigUint>,
    pub denominator: BigUint,
}

impl InclusionTable {
    pub fn probability(&self, site: usize) -> BigRational {
        ratio(self.numerators[site].clone(), self.denominator.clone())
    }

    pub fn probability_f64(&self, site: usize) -> f64 {
        ratio_to_f64(&self.numerators[site], &self.denominator)
    }

    pub fn sum(&self) -> BigRational {
        let total: BigUint = self.numerators.iter().sum();
        ratio(total, self.denominator.clone())
    }
}

/// One realized selection `sigma`, as linear site indices of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Selection {
    sites: Vec<usize>,
}

impl Selection {
    pub fn new(sites: Vec<usize>) -> Self {
        Selection { sites }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Consecutive sites differ by a unit step in exactly one coordinate.
    pub fn is_monotone_path(&self, ground: GroundSet) -> bool {
        self.sites.windows(2).all(|w| {
            let (a, b) = (ground.coords(w[0]), ground.coords(w[1]));
            (b.0 == a.0 + 1 && b.1 == a.1) || (b.0 == a.0 && b.1 == a.1 + 1)
        })
    }
}

/// Prepared sampler: DP tables are built once and shared read-only.
#[derive(Clone, Debug)]
pub struct SchemeSampler {
    scheme: SelectionScheme,
    kind: SamplerKind,
}

#[derive(Clone, Debug)]
enum SamplerKind {
    Path { rows: usize, cols: usize, row_step: Vec<f64> },
    Subset { n: usize, m: usize },
    Permutation { n: usize },
}

impl SchemeSampler {
    pub fn new(scheme: &SelectionScheme) -> Result<Self> {
        scheme.validate()?;
        let kind = match *scheme {
            SelectionScheme::UniformSubset { n, m } => {
                if m > n {
                    return Err(scheme.infeasible());
                }
                SamplerKind::Subset { n, m }
            }
            SelectionScheme::UniformPermutation { n } => SamplerKind::Permutation { n },
            _ => {
                let lattice = scheme.lattice().expect("path scheme");
                let row_step = lattice.row_step_table().ok_or_else(|| scheme.infeasible())?;
                SamplerKind::Path { rows: lattice.rows(), cols: lattice.cols(), row_step }
            }
        };
        Ok(SchemeSampler { scheme: scheme.clone(), kind })
    }

    pub fn scheme(&self) -> &SelectionScheme {
        &self.scheme
    }

    pub fn selection_size(&self) -> usize {
        self.scheme.selection_size()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Selection {
        let mut sites = Vec::with_capacity(self.selection_size());
        self.sample_into(rng, &mut sites);
        Selection { sites }
    }

    /// Overwrite `out` with a fresh uniform selection.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<usize>) {
        out.clear();
        match &self.kind {
            SamplerKind::Path { rows, cols, row_step } => {
                let (mut i, mut j) = (0usize, 0usize);
                out.push(0);
                while i + 1 < *rows || j + 1 < *cols {
                    let k = i * cols + j;
                    let p = row_step[k];
                    let down = if j + 1 == *cols {
                        true
                    } else if i + 1 == *rows {
                        false
                    } else {
                        rng.random::<f64>() < p
                    };
                    if down {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    out.push(i * cols + j);
                }
            }
            SamplerKind::Subset { n, m } => {
                out.extend(index::sample(rng, *n, *m));
                out.sort_unstable();
            }
            SamplerKind::Permutation { n } => {
                let mut perm: Vec<usize> = (0..*n).collect();
                perm.shuffle(rng);
                out.extend(perm.iter().enumerate().map(|(i, &p)| i * n + p));
            }
        }
    }
}

pub fn sample_selection<R: Rng + ?Sized>(scheme: &SelectionScheme, rng: &mut R) -> Result<Selection> {
    Ok(SchemeSampler::new(scheme)?.sample(rng))
}
