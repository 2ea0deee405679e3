//! Random environments: one realized weight vector per replicate.

mod base_law;
mod stable;

pub use base_law::BaseLaw;
pub use stable::{sample_stable_scalar, StableLaw};

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// Index set carrying the weights.
///
/// Grid sites `(i, j)` with `1 <= i <= rows`, `1 <= j <= cols` are stored
/// row-major at index `(i - 1) * cols + (j - 1)`. Line sites `1..=n` are
/// stored at `index = site - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroundSet {
    Grid { rows: usize, cols: usize },
    Line { n: usize },
}

impl GroundSet {
    pub fn grid(rows: usize, cols: usize) -> Self {
        GroundSet::Grid { rows, cols }
    }

    pub fn line(n: usize) -> Self {
        GroundSet::Line { n }
    }

    pub fn len(&self) -> usize {
        match *self {
            GroundSet::Grid { rows, cols } => rows * cols,
            GroundSet::Line { n } => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear index of the 1-based site `(i, j)`; line sets take `j = 1`.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        match *self {
            GroundSet::Grid { rows, cols } => {
                (1..=rows).contains(&i).then_some(())?;
                (1..=cols).contains(&j).then_some(())?;
                Some((i - 1) * cols + (j - 1))
            }
            GroundSet::Line { n } => ((1..=n).contains(&i) && j == 1).then(|| i - 1),
        }
    }

    /// Inverse of [`GroundSet::index`].
    pub fn coords(&self, index: usize) -> (usize, usize) {
        match *self {
            GroundSet::Grid { cols, .. } => (index / cols + 1, index % cols + 1),
            GroundSet::Line { .. } => (index + 1, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightModel {
    /// Independent copies of a standardized base law with `E|w|^p <= k`.
    /// `p = inf` is allowed for bounded base laws.
    IidMoment { base: BaseLaw, p: f64, k: f64 },
    /// Uniform on the sphere of radius `sqrt(n)`.
    SphereUniform,
    /// Uniform on `{x >= 0 : sum x = n}`.
    SimplexEq,
    /// Uniform on `{x >= 0 : sum x <= n}`.
    SimplexLe,
    /// Independent entries distributed as `k^{-tau} X` on the anti-diagonal
    /// `i + j - 1 = k`, with `X` alpha-stable. Grid ground sets only.
    LayeredStable { alpha: f64, tau: f64, kappa: f64, beta: f64 },
    /// Every weight equal to `value`. A degenerate model for harness checks.
    PointMass { value: f64 },
}

impl WeightModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightModel::IidMoment { base, p, k } => {
                base.validate()?;
                if !(k > 0.0) {
                    return param(format!("moment bound K must be positive, got {k}"));
                }
                if !(p >= 1.0) {
                    return param(format!("moment order p must be at least 1, got {p}"));
                }
                if p.is_infinite() {
                    if !base.is_bounded() {
                        return param(format!("p = inf needs a bounded base law, {base} is not"));
                    }
                } else {
                    let moment = base.abs_moment(p);
                    if moment > k * (1.0 + 1e-12) {
                        return param(format!("E|w|^{p} = {moment} for {base} exceeds K = {k}"));
                    }
                }
                Ok(())
            }
            WeightModel::LayeredStable { alpha, tau, kappa, beta } => {
                if !(alpha > 1.5 && alpha < 2.0) {
                    return param(format!("layered stable weights need alpha in (3/2, 2), got {alpha}"));
                }
                if !(tau > 0.0) {
                    return param(format!("decay exponent tau must be positive, got {tau}"));
                }
                StableLaw::new(alpha, beta, kappa).map(|_| ())
            }
            WeightModel::PointMass { value } if !value.is_finite() => {
                param("point mass value must be finite")
            }
            _ => Ok(()),
        }
    }

    /// `E w_a` under the model for a ground set of `n` sites.
    pub fn centering(&self, n: usize) -> f64 {
        match *self {
            WeightModel::SimplexEq => 1.0,
            WeightModel::SimplexLe => n as f64 / (n as f64 + 1.0),
            WeightModel::PointMass { value } => value,
            _ => 0.0,
        }
    }
}

/// One realization `w` together with its per-site centering values `E w_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    ground: GroundSet,
    values: Vec<f64>,
    centering: Vec<f64>,
}

impl WeightVector {
    pub fn new(ground: GroundSet, values: Vec<f64>, centering: Vec<f64>) -> Result<Self> {
        if values.len() != ground.len() || centering.len() != ground.len() {
            return param(format!(
                "weight vector has {} values and {} centering entries for {} sites",
                values.len(),
                centering.len(),
                ground.len()
            ));
        }
        Ok(WeightVector { ground, values, centering })
    }

    /// Weights with zero centering.
    pub fn uncentered(ground: GroundSet, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::new(ground, values, vec![0.0; n])
    }

    pub fn ground_set(&self) -> GroundSet {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn centering(&self) -> &[f64] {
        &self.centering
    }

    pub fn value(&self, site: usize) -> Result<f64> {
        self.values
            .get(site)
            .copied()
            .ok_or(Error::SiteOutOfRange { site, size: self.len() })
    }

    /// Euclidean distance between two weight vectors on the same ground set.
    pub fn l2_distance(&self, other: &WeightVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

pub fn sample_environment<R: Rng + ?Sized>(
    model: &WeightModel,
    ground: GroundSet,
    rng: &mut R,
) -> Result<WeightVector> {
    model.validate()?;
    let n = ground.len();
    if n == 0 {
        return param("ground set must have at least one site");
    }
    let values = match *model {
        WeightModel::IidMoment { base, .. } => (0..n).map(|_| base.sample(rng)).collect(),
        WeightModel::SphereUniform => {
            let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let scale = (n as f64).sqrt() / norm;
            v.iter_mut().for_each(|x| *x *= scale);
            v
        }
        WeightModel::SimplexEq => {
            let mut v: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
            let total: f64 = v.iter().sum();
            let scale = n as f64 / total;
            v.iter_mut().for_each(|x| *x *= scale);
            v
        }
        WeightModel::SimplexLe => {
            // n + 1 exponentials; the last one is the slack coordinate.
            let mut v: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
            let slack: f64 = Exp1.sample(rng);
            let total: f64 = v.iter().sum::<f64>() + slack;
            let scale = n as f64 / total;
            v.iter_mut().for_each(|x| *x *= scale);
            v
        }
        WeightModel::LayeredStable { alpha, tau, kappa, beta } => {
            let GroundSet::Grid { rows, cols } = ground else {
                return param("layered stable weights need a grid ground set");
            };
            return sample_layered_grid(rows, cols, alpha, tau, kappa, beta, rng);
        }
        WeightModel::PointMass { value } => vec![value; n],
    };
    let c = model.centering(n);
    WeightVector::new(ground, values, vec![c; n])
}

/// Layered stable weights on the `side x side` grid.
pub fn sample_layered_stable<R: Rng + ?Sized>(
    side: usize,
    alpha: f64,
    tau: f64,
    kappa: f64,
    beta: f64,
    rng: &mut R,
) -> Result<WeightVector> {
    if side == 0 {
        return param("grid side must be at least 1");
    }
    WeightModel::LayeredStable { alpha, tau, kappa, beta }.validate()?;
    sample_layered_grid(side, side, alpha, tau, kappa, beta, rng)
}

/// Scale applied to the stable variate at grid site `(i, j)`.
pub fn layer_scale(i: usize, j: usize, tau: f64) -> f64 {
    ((i + j - 1) as f64).powf(-tau)
}

fn sample_layered_grid<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    alpha: f64,
    tau: f64,
    kappa: f64,
    beta: f64,
    rng: &mut R,
) -> Result<WeightVector> {
    let law = StableLaw::new(alpha, beta, kappa)?;
    let mut values = Vec::with_capacity(rows * cols);
    for i in 1..=rows {
        for j in 1..=cols {
            values.push(layer_scale(i, j, tau) * law.sample(rng));
        }
    }
    WeightVector::uncentered(GroundSet::grid(rows, cols), values)
}

/// Zero out every weight with `|w_a| > threshold`; centering is kept.
pub fn truncate(w: &WeightVector, threshold: f64) -> Result<WeightVector> {
    if !(threshold > 0.0) {
        return param(format!("truncation threshold must be positive, got {threshold}"));
    }
    let values = w
        .values
        .iter()
        .map(|&x| if x.abs() > threshold { 0.0 } else { x })
        .collect();
    Ok(WeightVector { ground: w.ground, values, centering: w.centering.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Substream;
    use crate::stats;

    fn rng(seed: u64) -> crate::rng::SimRng {
        Substream::new(seed).rng()
    }

    #[test]
    fn ground_set_indexing() {
        let g = GroundSet::grid(2, 3);
        assert_eq!(g.index(1, 1), Some(0));
        assert_eq!(g.index(2, 3), Some(5));
        assert_eq!(g.index(3, 1), None);
        assert_eq!(g.coords(4), (2, 2));
        let l = GroundSet::line(4);
        assert_eq!(l.index(4, 1), Some(3));
        assert_eq!(l.index(4, 2), None);
        assert_eq!(l.coords(3), (4, 1));
    }

    #[test]
    fn sphere_has_radius_sqrt_n() {
        let w = sample_environment(&WeightModel::SphereUniform, GroundSet::line(4), &mut rng(1)).unwrap();
        let sq: f64 = w.values().iter().map(|x| x * x).sum();
        assert!((sq - 4.0).abs() < 4.0 * 1e-9);
        for seed in 0..50 {
            let w = sample_environment(&WeightModel::SphereUniform, GroundSet::grid(7, 9), &mut rng(seed)).unwrap();
            let sq: f64 = w.values().iter().map(|x| x * x).sum();
            assert!((sq / 63.0 - 1.0).abs() < 1e-9);
            assert!(w.centering().iter().all(|&c| c == 0.0));
        }
    }

    #[test]
    fn simplex_eq_constraints_and_mean() {
        let reps = 20_000;
        let mut coord_sum = vec![0.0; 10];
        let mut r = rng(2);
        for _ in 0..reps {
            let w = sample_environment(&WeightModel::SimplexEq, GroundSet::line(10), &mut r).unwrap();
            let total: f64 = w.values().iter().sum();
            assert!((total / 10.0 - 1.0).abs() < 1e-9);
            assert!(w.values().iter().all(|&x| x >= 0.0));
            assert!(w.centering().iter().all(|&c| c == 1.0));
            coord_sum.iter_mut().zip(w.values()).for_each(|(s, v)| *s += v);
        }
        // Coordinate of the scaled Dirichlet(1,...,1): n * Beta(1, n - 1),
        // variance n^2 (n - 1) / (n^2 (n + 1)) = 9/11.
        let se = (9.0f64 / 11.0 / reps as f64).sqrt();
        for s in coord_sum {
            assert!((s / reps as f64 - 1.0).abs() < 4.0 * se);
        }
    }

    #[test]
    fn simplex_le_constraints_and_marginal_mean() {
        let reps = 100_000;
        let n = 10;
        let mut r = rng(3);
        let mut firsts = Vec::with_capacity(reps);
        for _ in 0..reps {
            let w = sample_environment(&WeightModel::SimplexLe, GroundSet::line(n), &mut r).unwrap();
            let total: f64 = w.values().iter().sum();
            assert!(total <= n as f64 * (1.0 + 1e-9));
            assert!(w.values().iter().all(|&x| x >= 0.0));
            firsts.push(w.values()[0]);
        }
        assert!((WeightModel::SimplexLe.centering(n) - 10.0 / 11.0).abs() < 1e-15);
        // Unscaled coordinate is Beta(1, n): mean 1/(n+1), variance n/((n+1)^2 (n+2)).
        let nf = n as f64;
        let mean = nf / (nf + 1.0);
        let var = nf * nf * nf / ((nf + 1.0).powi(2) * (nf + 2.0));
        let se = (var / reps as f64).sqrt();
        assert!((stats::mean(&firsts) - mean).abs() < 3.0 * se);
    }

    #[test]
    fn simplex_eq_coordinates_are_exchangeable() {
        let reps = 10_000;
        let mut r = rng(4);
        let mut a = Vec::with_capacity(reps);
        let mut b = Vec::with_capacity(reps);
        for _ in 0..reps {
            let w = sample_environment(&WeightModel::SimplexEq, GroundSet::line(6), &mut r).unwrap();
            a.push(w.values()[0]);
            b.push(w.values()[1]);
        }
        let d = crate::theory::ks_two_sample(
            &crate::quenched::EmpiricalDistribution::new(a).unwrap(),
            &crate::quenched::EmpiricalDistribution::new(b).unwrap(),
        );
        // 1% critical value of the two-sample KS statistic.
        let crit = 1.63 * (2.0f64 / reps as f64).sqrt();
        assert!(d < crit, "KS {d} vs {crit}");
    }

    #[test]
    fn determinism() {
        for model in [
            WeightModel::SphereUniform,
            WeightModel::SimplexLe,
            WeightModel::IidMoment { base: BaseLaw::StudentT { dof: 6.0 }, p: 4.0, k: 10.0 },
            WeightModel::LayeredStable { alpha: 1.8, tau: 2.0, kappa: 1.0, beta: 0.3 },
        ] {
            let a = sample_environment(&model, GroundSet::grid(5, 5), &mut rng(9)).unwrap();
            let b = sample_environment(&model, GroundSet::grid(5, 5), &mut rng(9)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn parameter_errors() {
        let g = GroundSet::grid(3, 3);
        let bad = [
            WeightModel::LayeredStable { alpha: 1.4, tau: 2.0, kappa: 1.0, beta: 0.0 },
            WeightModel::LayeredStable { alpha: 1.8, tau: 0.0, kappa: 1.0, beta: 0.0 },
            WeightModel::IidMoment { base: BaseLaw::Gaussian, p: 4.0, k: 0.0 },
            WeightModel::IidMoment { base: BaseLaw::Gaussian, p: 4.0, k: 2.0 },
            WeightModel::IidMoment { base: BaseLaw::Gaussian, p: f64::INFINITY, k: 1.0 },
        ];
        for model in bad {
            assert!(matches!(sample_environment(&model, g, &mut rng(0)), Err(Error::Parameter(_))), "{model:?}");
        }
        let ok = WeightModel::IidMoment { base: BaseLaw::Uniform, p: f64::INFINITY, k: 1.0 };
        assert!(sample_environment(&ok, g, &mut rng(0)).is_ok());
        assert!(sample_environment(
            &WeightModel::LayeredStable { alpha: 1.8, tau: 2.0, kappa: 1.0, beta: 0.0 },
            GroundSet::line(4),
            &mut rng(0)
        )
        .is_err());
    }

    #[test]
    fn layer_scales() {
        assert_eq!(layer_scale(1, 1, 2.5), 1.0);
        assert!((layer_scale(2, 2, 2.0) - 1.0 / 9.0).abs() < 1e-15);
        // With a fixed rng, entry (2,2) is exactly 1/9 of the raw stable draw
        // at the same stream position.
        let w = sample_layered_stable(3, 1.8, 2.0, 1.0, 0.0, &mut rng(5)).unwrap();
        let law = StableLaw::new(1.8, 0.0, 1.0).unwrap();
        let mut r = rng(5);
        let raw: Vec<f64> = (0..9).map(|_| law.sample(&mut r)).collect();
        assert!((w.values()[4] - raw[4] / 9.0).abs() < 1e-15);
        assert_eq!(w.values()[0], raw[0]);
    }

    #[test]
    fn layered_truncated_second_moment_ratio() {
        // Entries on diagonal 1 are X, on diagonal 2 are 2^{-tau} X. Their
        // second moments truncated at R and R 2^{-tau} respectively differ by
        // exactly 2^{2 tau}; compare with a Monte Carlo oracle on raw X.
        let tau = 2.0;
        let reps = 250_000;
        let r_cut = 5.0;
        let mut r = rng(6);
        let (mut d1, mut d2) = (Vec::new(), Vec::new());
        for _ in 0..reps {
            let w = sample_layered_stable(2, 1.8, tau, 1.0, 0.0, &mut r).unwrap();
            d1.push(w.values()[0]);
            d2.push(w.values()[1]);
            d2.push(w.values()[2]);
        }
        let m1 = stats::mean(&d1.iter().map(|x| if x.abs() <= r_cut { x * x } else { 0.0 }).collect::<Vec<_>>());
        let cut2 = r_cut * 2f64.powf(-tau);
        let m2 = stats::mean(&d2.iter().map(|x| if x.abs() <= cut2 { x * x } else { 0.0 }).collect::<Vec<_>>());
        let ratio = m1 / m2;
        assert!((ratio / 2f64.powf(2.0 * tau) - 1.0).abs() < 0.03, "ratio {ratio}");
    }

    #[test]
    fn truncation() {
        let w = WeightVector::uncentered(GroundSet::line(2), vec![0.5, -3.0]).unwrap();
        assert_eq!(truncate(&w, 1.0).unwrap().values(), &[0.5, 0.0]);
        assert_eq!(truncate(&w, f64::INFINITY).unwrap(), w);
        assert_eq!(truncate(&w, 3.0).unwrap(), w);
        assert!(truncate(&w, 0.0).is_err());
        let c = WeightVector::new(GroundSet::line(2), vec![0.5, 4.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(truncate(&c, 1.0).unwrap().centering(), &[1.0, 1.0]);
    }
}
