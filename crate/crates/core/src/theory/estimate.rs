//! Sampled estimate of the worst-case annealed distance to the target.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{bl_distance_lower_bound, w1_distance, TargetLaw};
use crate::environments::{sample_environment, WeightModel};
use crate::error::{param, Result};
use crate::quenched::{quenched_sum, test_function_bank, EmpiricalDistribution, Normalization};
use crate::selectors::{SchemeSampler, SelectionScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnealedMetric {
    W1,
    Bl,
}

/// Max over `n_sigma` sampled selections of the distance between the law of
/// the normalized selection sum (over `n_w` environment draws) and `target`.
///
/// Only sampled selections are visited, so this is a lower-bound estimate of
/// the maximum over all selections.
#[allow(clippy::too_many_arguments)]
pub fn estimate_d<R: Rng + ?Sized>(
    scheme: &SelectionScheme,
    model: &WeightModel,
    norm: &Normalization,
    target: &TargetLaw,
    metric: AnnealedMetric,
    n_sigma: usize,
    n_w: usize,
    rng: &mut R,
) -> Result<f64> {
    if n_sigma == 0 || n_w == 0 {
        return param("n_sigma and n_w must be at least 1");
    }
    let sampler = SchemeSampler::new(scheme)?;
    let ground = scheme.ground_set();
    let bank = test_function_bank().bounded_lipschitz;
    let mut worst: f64 = 0.0;
    for _ in 0..n_sigma {
        let sigma = sampler.sample(rng);
        let mut sums = Vec::with_capacity(n_w);
        for _ in 0..n_w {
            let w = sample_environment(model, ground, rng)?;
            sums.push(quenched_sum(&w, &sigma, norm)?);
        }
        let rho = EmpiricalDistribution::new(sums)?;
        let d = match metric {
            AnnealedMetric::W1 => w1_distance(&rho, target)?,
            AnnealedMetric::Bl => bl_distance_lower_bound(&rho, target, &bank)?,
        };
        worst = worst.max(d);
    }
    Ok(worst)
}
