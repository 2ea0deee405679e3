//! The quenched measure `mu_w`: law of the normalized selected sum with the
//! environment `w` held fixed and only the selection random.

mod bank;
mod empirical;

pub use bank::{bl_bank, convex_bank, test_function_bank, TestFunction, TestFunctionBank};
pub use empirical::EmpiricalDistribution;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::environments::WeightVector;
use crate::error::{param, Error, Result};
use crate::rng::Substream;
use crate::selectors::{SchemeSampler, Selection, SelectionScheme};

/// Inner replicates drawn per substream chunk.
pub const CHUNK: usize = 1024;

/// Largest number of steps for which path schemes are enumerated exactly.
pub const EXACT_PATH_STEPS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Divisor {
    /// `m^{1/alpha}`.
    MPower,
    Explicit(f64),
    /// No rescaling; only valid with `alpha = inf`.
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    alpha: f64,
    divisor: Divisor,
    center: bool,
}

impl Normalization {
    pub fn new(alpha: f64, divisor: Divisor, center: bool) -> Result<Self> {
        if !(alpha > 0.0) {
            return param(format!("rescaling exponent must be positive, got {alpha}"));
        }
        match divisor {
            Divisor::Unit if alpha.is_finite() => {
                return param("an unscaled sum needs alpha = inf");
            }
            Divisor::Explicit(d) if !(d > 0.0 && d.is_finite()) => {
                return param(format!("explicit divisor must be positive and finite, got {d}"));
            }
            _ => {}
        }
        Ok(Normalization { alpha, divisor, center })
    }

    /// Divide by `sqrt(m)`.
    pub fn clt(center: bool) -> Self {
        Normalization { alpha: 2.0, divisor: Divisor::MPower, center }
    }

    /// `alpha = inf`: the plain selected sum.
    pub fn unscaled(center: bool) -> Self {
        Normalization { alpha: f64::INFINITY, divisor: Divisor::Unit, center }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn divisor_mode(&self) -> Divisor {
        self.divisor
    }

    pub fn centers(&self) -> bool {
        self.center
    }

    /// The divisor applied to a sum of `m` weights.
    pub fn divisor(&self, m: usize) -> f64 {
        match self.divisor {
            Divisor::MPower if self.alpha.is_infinite() => 1.0,
            Divisor::MPower => (m as f64).powf(1.0 / self.alpha),
            Divisor::Explicit(d) => d,
            Divisor::Unit => 1.0,
        }
    }
}

/// `(sum_{a in sigma} (w_a - [center] E w_a)) / divisor`.
pub fn quenched_sum(w: &WeightVector, sigma: &Selection, norm: &Normalization) -> Result<f64> {
    let size = w.len();
    if let Some(&site) = sigma.sites().iter().find(|&&a| a >= size) {
        return Err(Error::SiteOutOfRange { site, size });
    }
    Ok(raw_sum(w, sigma.sites(), norm.center) / norm.divisor(sigma.len()))
}

#[inline]
fn raw_sum(w: &WeightVector, sites: &[usize], center: bool) -> f64 {
    let values = w.values();
    if center {
        let c = w.centering();
        sites.iter().map(|&a| values[a] - c[a]).sum()
    } else {
        sites.iter().map(|&a| values[a]).sum()
    }
}

fn check_ground(w: &WeightVector, scheme: &SelectionScheme) -> Result<()> {
    if w.ground_set() != scheme.ground_set() {
        return param(format!(
            "environment on {:?} does not match the scheme's ground set {:?}",
            w.ground_set(),
            scheme.ground_set()
        ));
    }
    Ok(())
}

/// `n_sel` i.i.d. draws of the quenched sum over fresh selections, `w` fixed.
///
/// Draws are made in chunks of [`CHUNK`], chunk `k` using `stream.child(k)`,
/// so the result does not depend on the number of worker threads.
pub fn sample_quenched_measure(
    w: &WeightVector,
    sampler: &SchemeSampler,
    norm: &Normalization,
    n_sel: usize,
    stream: Substream,
) -> Result<EmpiricalDistribution> {
    EmpiricalDistribution::new(quenched_values(w, sampler, norm, n_sel, stream)?)
}

/// Like [`sample_quenched_measure`] but unsorted, in draw order.
pub fn quenched_values(
    w: &WeightVector,
    sampler: &SchemeSampler,
    norm: &Normalization,
    n_sel: usize,
    stream: Substream,
) -> Result<Vec<f64>> {
    if n_sel == 0 {
        return param("need at least one inner replicate");
    }
    check_ground(w, sampler.scheme())?;
    let divisor = norm.divisor(sampler.selection_size());
    let chunks = n_sel.div_ceil(CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK.min(n_sel - k * CHUNK);
            let mut rng = stream.child(k as u64).rng();
            let mut buf = Vec::with_capacity(sampler.selection_size());
            (0..len)
                .map(|_| {
                    sampler.sample_into(&mut rng, &mut buf);
                    raw_sum(w, &buf, norm.center) / divisor
                })
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

/// Selections drawn once for reuse across environments (common random numbers).
pub fn draw_selections(sampler: &SchemeSampler, n_sel: usize, stream: Substream) -> Vec<Selection> {
    let chunks = n_sel.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|k| {
            let len = CHUNK.min(n_sel - k * CHUNK);
            let mut rng = stream.child(k as u64).rng();
            (0..len).map(move |_| sampler.sample(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Quenched sums of `w` over the given selections, in order.
pub fn sums_over(w: &WeightVector, selections: &[Selection], norm: &Normalization) -> Result<Vec<f64>> {
    selections.iter().map(|s| quenched_sum(w, s, norm)).collect()
}

/// The exact quenched measure by enumerating every admissible selection.
/// Path schemes are limited to [`EXACT_PATH_STEPS`] steps; other schemes to
/// `100_000` configurations.
pub fn exact_quenched_measure(
    w: &WeightVector,
    scheme: &SelectionScheme,
    norm: &Normalization,
) -> Result<EmpiricalDistribution> {
    check_ground(w, scheme)?;
    if scheme.is_path() && scheme.selection_size() - 1 > EXACT_PATH_STEPS {
        return param(format!("exact mode is limited to paths of at most {EXACT_PATH_STEPS} steps"));
    }
    let all = scheme.enumerate(100_000)?;
    EmpiricalDistribution::new(sums_over(w, &all, norm)?)
}

/// Sample mean of `f` under `dist`.
pub fn integrate(dist: &EmpiricalDistribution, f: impl Fn(f64) -> f64) -> f64 {
    dist.samples().iter().map(|&x| f(x)).sum::<f64>() / dist.len() as f64
}
