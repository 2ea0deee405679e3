// Fix one environment, vary only the path, and compare the path-sum law
// with N(0, 1).
//
// ```bash
// cargo run --release --example quenched_clt
// ```

use quenched::environments::{sample_environment, BaseLaw, WeightModel};
use quenched::quenched::{sample_quenched_measure, test_function_bank, Normalization};
use quenched::rng::Substream;
use quenched::selectors::{SchemeSampler, SelectionScheme};
use quenched::theory::{bl_distance_lower_bound, ks_distance, w1_distance, TargetLaw};

pub fn run_example() -> quenched::Result<()> {
    let model = WeightModel::IidMoment { base: BaseLaw::Uniform, p: f64::INFINITY, k: 1.0 };
    let norm = Normalization::clt(true);
    let bank = test_function_bank().bounded_lipschitz;
    let root = Substream::new(7);
    for n in [8, 32, 128] {
        let scheme = SelectionScheme::UpRightPath { rows: n, cols: n };
        let sampler = SchemeSampler::new(&scheme)?;
        let stream = root.child(n as u64);
        let w = sample_environment(&model, scheme.ground_set(), &mut stream.child(0).rng())?;
        let mu = sample_quenched_measure(&w, &sampler, &norm, 4000, stream.child(1))?;
        println!(
            "N={n:4}  mean {:+.3}  ks {:.4}  w1 {:.4}  bl >= {:.4}",
            mu.mean(),
            ks_distance(&mu, &TargetLaw::Normal01)?,
            w1_distance(&mu, &TargetLaw::Normal01)?,
            bl_distance_lower_bound(&mu, &TargetLaw::Normal01, &bank)?,
        );
    }

    let perm = SelectionScheme::UniformPermutation { n: 200 };
    let rademacher = WeightModel::IidMoment { base: BaseLaw::Rademacher, p: f64::INFINITY, k: 1.0 };
    let w = sample_environment(&rademacher, perm.ground_set(), &mut root.child(1000).rng())?;
    let mu = sample_quenched_measure(&w, &SchemeSampler::new(&perm)?, &norm, 4000, root.child(1001))?;
    println!("permutation sum, N=200: ks {:.4}", ks_distance(&mu, &TargetLaw::Normal01)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
