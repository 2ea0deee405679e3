// Layered stable weights and the characteristic exponent at finite n.
//
// ```bash
// cargo run --release --example stable_layers
// ```

use quenched::environments::{sample_layered_stable, StableLaw};
use quenched::quenched::{sample_quenched_measure, EmpiricalDistribution, Normalization};
use quenched::rng::Substream;
use quenched::selectors::{SchemeSampler, SelectionScheme};
use quenched::theory::{cf_distance, psi_finite_n};

pub fn run_example() -> quenched::Result<()> {
    let (alpha, tau) = (1.8, 0.3);
    let law = StableLaw::new(alpha, 0.0, 1.0)?;
    let mut rng = Substream::new(1).rng();
    let draws = EmpiricalDistribution::new((0..50_000).map(|_| law.sample(&mut rng)).collect())?;
    let grid = [0.25, 0.5, 1.0, 2.0];
    println!("stable draws vs exp(psi): {:.4}", cf_distance(&draws, |t| law.char_exponent(t), &grid));

    let side = 24;
    let n = 2 * side - 1;
    let scheme = SelectionScheme::UpRightPath { rows: side, cols: side };
    let sampler = SchemeSampler::new(&scheme)?;
    let exponent = 1.0 / alpha - tau;
    let norm = Normalization::new(alpha, quenched::quenched::Divisor::Explicit((n as f64).powf(exponent)), false)?;
    for rep in 0..3u64 {
        let w = sample_layered_stable(side, alpha, tau, 1.0, 0.0, &mut Substream::new(2).child(rep).rng())?;
        let mu = sample_quenched_measure(&w, &sampler, &norm, 20_000, Substream::new(3).child(rep))?;
        let d = cf_distance(&mu, |t| psi_finite_n(t, alpha, tau, 1.0, 0.0, n), &grid);
        println!("environment {rep}: quenched cf distance to exp(psi_n) = {d:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
