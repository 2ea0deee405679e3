// Sums of a fixed number of points from one large sample, against the
// convolution power of the sampling law, and simplex coordinates against
// a Gamma law.
//
// ```bash
// cargo run --release --example fixed_m_sums
// ```

use quenched::environments::{sample_environment, BaseLaw, GroundSet, WeightModel};
use quenched::quenched::{sample_quenched_measure, EmpiricalDistribution, Normalization};
use quenched::rng::Substream;
use quenched::selectors::{SchemeSampler, SelectionScheme};
use quenched::theory::{convolution_oracle, ks_distance, w1_distance, TargetLaw};

pub fn run_example() -> quenched::Result<()> {
    let root = Substream::new(16);
    let base = BaseLaw::CenteredExponential;
    let model = WeightModel::IidMoment { base, p: 2.0, k: 1.0 };
    let scheme = SelectionScheme::UniformSubset { n: 5000, m: 2 };
    let w = sample_environment(&model, GroundSet::line(5000), &mut root.child(0).rng())?;
    let mu = sample_quenched_measure(&w, &SchemeSampler::new(&scheme)?, &Normalization::unscaled(false), 20_000, root.child(1))?;

    let mut rng = root.child(2).rng();
    let draws = EmpiricalDistribution::new((0..20_000).map(|_| base.sample(&mut rng)).collect())?;
    let oracle = convolution_oracle(&draws, 2, &mut rng)?;
    println!("pair sums vs two-fold convolution: w1 {:.4}", w1_distance(&mu, &oracle)?);

    let simplex = SelectionScheme::UniformSubset { n: 5000, m: 3 };
    let w = sample_environment(&WeightModel::SimplexEq, simplex.ground_set(), &mut root.child(3).rng())?;
    let mu = sample_quenched_measure(&w, &SchemeSampler::new(&simplex)?, &Normalization::unscaled(false), 20_000, root.child(4))?;
    println!("simplex triple sums vs Gamma(3, 1): ks {:.4}", ks_distance(&mu, &TargetLaw::gamma(3)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> quenched::Result<()> {
    run_example()
}
