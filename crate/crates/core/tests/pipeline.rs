use proptest::prelude::*;

use quenched::environments::{sample_environment, BaseLaw, WeightModel};
use quenched::harness::{preset, preset_names, run_experiment_with_threads, ExperimentConfig, ExperimentResult, OutputSpec};
use quenched::quenched::{exact_quenched_measure, sample_quenched_measure, Normalization};
use quenched::rng::Substream;
use quenched::selectors::{SchemeSampler, SelectionScheme};

fn small_scheme() -> impl Strategy<Value = SelectionScheme> {
    prop_oneof![
        (1..6usize, 1..6usize).prop_map(|(rows, cols)| SelectionScheme::UpRightPath { rows, cols }),
        (2..6usize, 1..6usize, 1..6usize).prop_map(|(side, i, j)| SelectionScheme::UpRightPathThrough {
            rows: side,
            cols: side,
            waypoints: vec![(i.min(side), j.min(side))],
        }),
        (3..6usize).prop_map(|side| SelectionScheme::UpRightPathAvoidSquare { side, beta: 0.34 }),
        (1..8usize).prop_flat_map(|n| (Just(n), 1..=n)).prop_map(|(n, m)| SelectionScheme::UniformSubset { n, m }),
        (1..6usize).prop_map(|n| SelectionScheme::UniformPermutation { n }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_quenched_mean_is_inclusion_weighted_sum(scheme in small_scheme(), seed in 0u64..1000) {
        let w = sample_environment(
            &WeightModel::IidMoment { base: BaseLaw::Gaussian, p: 2.0, k: 1.0 },
            scheme.ground_set(),
            &mut Substream::new(seed).rng(),
        ).unwrap();
        let mu = exact_quenched_measure(&w, &scheme, &Normalization::unscaled(false)).unwrap();
        let table = scheme.inclusion_table().unwrap();
        let expected: f64 = w.values().iter().enumerate().map(|(a, x)| table.probability_f64(a) * x).sum();
        prop_assert!((mu.mean() - expected).abs() < 1e-9, "{} vs {}", mu.mean(), expected);
    }

    #[test]
    fn inclusion_probabilities_sum_to_selection_size(scheme in small_scheme()) {
        let total = scheme.inclusion_table().unwrap().sum();
        prop_assert_eq!(total, num_rational::BigRational::from_integer(scheme.selection_size().into()));
    }
}

#[test]
fn sampler_frequencies_match_exact_inclusion() {
    let scheme = SelectionScheme::UpRightPathThrough { rows: 6, cols: 6, waypoints: vec![(2, 5)] };
    let sampler = SchemeSampler::new(&scheme).unwrap();
    let table = scheme.inclusion_table().unwrap();
    let n = 200_000;
    let mut hits = vec![0usize; 36];
    let mut rng = Substream::new(31).rng();
    for _ in 0..n {
        for &a in sampler.sample(&mut rng).sites() {
            hits[a] += 1;
        }
    }
    for (a, h) in hits.iter().enumerate() {
        let p = table.probability_f64(a);
        let se = (p * (1.0 - p) / n as f64).sqrt().max(1e-12);
        let f = *h as f64 / n as f64;
        assert!((f - p).abs() <= 5.0 * se, "site {a}: {f} vs {p}");
    }
}

#[test]
fn sampled_measure_approaches_the_exact_one() {
    let scheme = SelectionScheme::UpRightPath { rows: 5, cols: 5 };
    let w = sample_environment(&WeightModel::SphereUniform, scheme.ground_set(), &mut Substream::new(8).rng()).unwrap();
    let norm = Normalization::clt(true);
    let exact = exact_quenched_measure(&w, &scheme, &norm).unwrap();
    let sampled = sample_quenched_measure(&w, &SchemeSampler::new(&scheme).unwrap(), &norm, 100_000, Substream::new(9)).unwrap();
    let d = quenched::theory::ks_two_sample(&exact, &sampled);
    assert!(d < 0.01, "ks {d}");
}

#[test]
fn presets_round_trip_through_toml_and_results_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in preset_names() {
        let c = preset(name).unwrap();
        assert_eq!(ExperimentConfig::from_toml(&c.to_toml().unwrap()).unwrap(), c, "{name}");
    }
    let mut c = preset("thm13-simplex-le").unwrap();
    c.n_env = 3;
    c.n_sel = 500;
    let result = run_experiment_with_threads(&c, 2).unwrap();
    for ext in ["csv", "json"] {
        let path = dir.path().join(format!("r.{ext}"));
        let format = OutputSpec { path: path.clone(), format: None }.resolved_format();
        result.write(&path, format).unwrap();
        assert_eq!(ExperimentResult::read(&path).unwrap(), result, "{ext}");
    }
}
