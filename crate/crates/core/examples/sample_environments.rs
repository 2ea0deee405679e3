// One draw from each weight model, with its exact centering.
//
// ```bash
// cargo run --example sample_environments
// ```

use quenched::environments::{sample_environment, truncate, BaseLaw, GroundSet, WeightModel};
use quenched::rng::Substream;
use quenched::stats;

pub fn run_example() -> quenched::Result<()> {
    let ground = GroundSet::grid(32, 32);
    let models = [
        WeightModel::IidMoment { base: BaseLaw::Uniform, p: f64::INFINITY, k: 1.0 },
        WeightModel::IidMoment { base: BaseLaw::StudentT { dof: 6.0 }, p: 5.0, k: BaseLaw::StudentT { dof: 6.0 }.abs_moment(5.0) },
        WeightModel::SphereUniform,
        WeightModel::SimplexEq,
        WeightModel::SimplexLe,
        WeightModel::LayeredStable { alpha: 1.8, tau: 0.5, kappa: 1.0, beta: 0.0 },
    ];
    let root = Substream::new(2024);
    for (k, model) in models.iter().enumerate() {
        let w = sample_environment(model, ground, &mut root.child(k as u64).rng())?;
        let v = w.values();
        println!(
            "{model:?}\n  mean {:+.4}  var {:.4}  max |w| {:.3}  E w_a = {:.4}",
            stats::mean(v),
            stats::variance(v),
            v.iter().fold(0.0f64, |a, x| a.max(x.abs())),
            w.centering()[0],
        );
    }

    let heavy = WeightModel::IidMoment { base: BaseLaw::StudentT { dof: 3.0 }, p: 2.0, k: 1.0 };
    let w = sample_environment(&heavy, ground, &mut root.child(99).rng())?;
    let clipped = truncate(&w, 3.0)?;
    println!("student-t(3) truncated at 3 moves w by {:.3} in l2", w.l2_distance(&clipped));
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
