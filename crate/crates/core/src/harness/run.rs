//! Two-level Monte Carlo runner.

use rayon::prelude::*;

use super::{ExperimentConfig, ExperimentKind, ExperimentResult, Metric, ResultRow};
use crate::environments::{sample_environment, WeightModel};
use crate::error::{Error, Result};
use crate::quenched::{bl_bank, integrate, sample_quenched_measure, EmpiricalDistribution, Normalization, TestFunction};
use crate::rng::Substream;
use crate::selectors::{SchemeSampler, SelectionScheme};
use crate::theory::{cf_distance, ks_distance, quantile_grid, w1_distance, w1_to_quantiles, TargetLaw};

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "QUENCHED_THREADS";

/// Stream tag for the convolution oracle, kept apart from size indices.
const ORACLE_TAG: u64 = u64::MAX;

/// Run with the thread count from [`THREADS_ENV`], or rayon's default.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    match threads {
        Some(t) => run_experiment_with_threads(config, t),
        None => run_unpooled(config),
    }
}

/// Run on a dedicated pool of `threads` workers.
pub fn run_experiment_with_threads(config: &ExperimentConfig, threads: usize) -> Result<ExperimentResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_unpooled(config))
}

fn run_unpooled(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    match config.experiment {
        ExperimentKind::Lambda => run_lambda(config),
        ExperimentKind::Quenched => run_quenched(config),
    }
}

fn scheme_at(config: &ExperimentConfig, n: usize) -> Result<SelectionScheme> {
    let scheme = config.scheme.family()?.at(n).map_err(|e| Error::Infeasible(format!("N={n}: {e}")))?;
    scheme.count_configurations().map_err(|e| Error::Infeasible(format!("N={n}: {e}")))?;
    Ok(scheme)
}

fn run_lambda(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let rows = config
        .sizes
        .par_iter()
        .map(|&n| {
            let value = scheme_at(config, n)?.l_statistic()?;
            Ok(ResultRow { n, rep: 0, metric: Metric::L.to_string(), value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult::new(rows))
}

/// Everything shared by the replicates at one size.
struct SizeContext {
    n: usize,
    ground_model: WeightModel,
    scheme: SelectionScheme,
    sampler: SchemeSampler,
    norm: Normalization,
    target: TargetLaw,
    quantiles: Option<Vec<f64>>,
    bank: Vec<(TestFunction, f64)>,
}

fn size_context(config: &ExperimentConfig, model: &WeightModel, n: usize, root: Substream) -> Result<SizeContext> {
    let scheme = scheme_at(config, n)?;
    let sampler = SchemeSampler::new(&scheme).map_err(|e| Error::Infeasible(format!("N={n}: {e}")))?;
    let m = scheme.selection_size();
    let norm = config.norm.at(m)?;
    let target = config.target.build(m, &mut root.child(ORACLE_TAG).rng())?;
    let quantiles = match (&target, config.metrics.contains(&Metric::W1)) {
        (TargetLaw::ConvolutionPower { .. }, _) | (_, false) => None,
        (t, true) => Some(quantile_grid(t, config.n_sel)?),
    };
    let bank = if config.metrics.contains(&Metric::Bl) {
        let mut hi = 5.0;
        if let Some(mean) = target.mean() {
            hi += mean.abs();
        }
        bl_bank(-5.0, hi, config.bl_step)
            .into_iter()
            .map(|f| {
                let e = f.expectation(&target).ok_or_else(|| {
                    Error::UnsupportedTarget(format!("{f} has no expectation under {}", target.name()))
                })?;
                Ok((f, e))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(SizeContext { n, ground_model: model.clone(), scheme, sampler, norm, target, quantiles, bank })
}

fn metric_value(config: &ExperimentConfig, ctx: &SizeContext, metric: Metric, mu: &EmpiricalDistribution) -> Result<f64> {
    match metric {
        Metric::W1 => match &ctx.quantiles {
            Some(q) => Ok(w1_to_quantiles(mu, q)),
            None => w1_distance(mu, &ctx.target),
        },
        Metric::Ks => ks_distance(mu, &ctx.target),
        Metric::Bl => Ok(ctx
            .bank
            .iter()
            .map(|(f, e)| (integrate(mu, |x| f.eval(x)) - e).abs())
            .fold(0.0, f64::max)),
        Metric::Cf => Ok(cf_distance(mu, |t| ctx.target.char_exponent(t), &config.cf_grid)),
        Metric::Hinge(theta) => Ok(integrate(mu, |x| (x - theta).max(0.0))),
        Metric::L => Err(Error::UnknownMetric("L".into())),
    }
}

fn run_quenched(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let model = config.weight_model()?;
    let root = Substream::new(config.seed);
    let contexts = config
        .sizes
        .iter()
        .map(|&n| size_context(config, &model, n, root))
        .collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(usize, usize)> =
        (0..contexts.len()).flat_map(|k| (0..config.n_env).map(move |rep| (k, rep))).collect();
    let per_task = tasks
        .into_par_iter()
        .map(|(k, rep)| {
            let ctx = &contexts[k];
            let stream = root.child(ctx.n as u64).child(rep as u64);
            let w = sample_environment(&ctx.ground_model, ctx.scheme.ground_set(), &mut stream.child(0).rng())?;
            let mu = sample_quenched_measure(&w, &ctx.sampler, &ctx.norm, config.n_sel, stream.child(1))?;
            config
                .metrics
                .iter()
                .map(|&metric| {
                    Ok(ResultRow { n: ctx.n, rep, metric: metric.to_string(), value: metric_value(config, ctx, metric, &mu)? })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult::new(per_task.into_iter().flatten().collect()))
}
