//! Shipped experiment configurations.

use super::ExperimentConfig;
use crate::error::{Error, Result};

pub const PRESETS: &[(&str, &str)] = &[
    ("thm12", include_str!("../../presets/thm12.toml")),
    ("thm12-through", include_str!("../../presets/thm12-through.toml")),
    ("thm12-avoid", include_str!("../../presets/thm12-avoid.toml")),
    ("thm13-sphere", include_str!("../../presets/thm13-sphere.toml")),
    ("thm13-simplex-eq", include_str!("../../presets/thm13-simplex-eq.toml")),
    ("thm13-simplex-le", include_str!("../../presets/thm13-simplex-le.toml")),
    ("thm14-stable", include_str!("../../presets/thm14-stable.toml")),
    ("thm15-hoeffding", include_str!("../../presets/thm15-hoeffding.toml")),
    ("thm16-fixed-m", include_str!("../../presets/thm16-fixed-m.toml")),
    ("thm17-sphere", include_str!("../../presets/thm17-sphere.toml")),
    ("thm17-simplex", include_str!("../../presets/thm17-simplex.toml")),
    ("cor33-subset", include_str!("../../presets/cor33-subset.toml")),
    ("lemma31-lambda", include_str!("../../presets/lemma31-lambda.toml")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.0)
}

pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let (_, text) = PRESETS
        .iter()
        .find(|p| p.0 == name)
        .ok_or_else(|| Error::Config(format!("unknown preset {name:?}; known: {}", preset_names().collect::<Vec<_>>().join(", "))))?;
    ExperimentConfig::from_toml(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses_and_is_named_after_itself() {
        for name in preset_names() {
            let c = preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(c.name, name);
        }
        assert!(preset("thm99").is_err());
    }

    #[test]
    fn every_preset_is_feasible_at_its_sizes() {
        for name in preset_names() {
            let c = preset(name).unwrap();
            let family = c.scheme.family().unwrap();
            for &n in &c.sizes {
                family.at(n).unwrap().count_configurations().unwrap_or_else(|e| panic!("{name} at {n}: {e}"));
            }
        }
    }
}
