//! Command-line interface.
//!
//! Exit codes: 0 on success, 2 for usage and configuration errors, 3 when a
//! selection scheme is infeasible.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::harness::{
    preset, rate_fit, run_experiment, run_experiment_with_threads, wip_tail, ExperimentConfig, ExperimentResult,
    OutputFormat, OutputSpec,
};
use crate::selectors::SelectionScheme;
use crate::theory::{
    convergence_conditions, lemma22_threshold_and_tail, lemma23_tail, lemma26_tail_and_validity, BoundParams,
    ConcentrationKind, ConditionFamily, MomentCase, ScalingRegime,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "quenched", version, about = "Quenched limit theorem laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a two-level Monte Carlo experiment.
    Simulate {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Overrides the config's output path; without either, CSV goes to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Exact inclusion probabilities of every site, as CSV.
    Inclusion {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long = "N")]
        n: usize,
        /// Columns for `uprr`; defaults to N.
        #[arg(long = "M")]
        m: Option<usize>,
        /// Waypoint `i,j` for `through`; repeatable.
        #[arg(long = "waypoint", value_parser = parse_point)]
        waypoints: Vec<(usize, usize)>,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Subset size for `subset`.
        #[arg(long = "size")]
        size: Option<usize>,
    },
    /// Evaluate the convergence conditions for a scaling regime.
    CheckConditions {
        #[arg(long, value_enum, default_value_t = FamilyArg::Moment)]
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        rho: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
    },
    /// Tabulate a concentration bound over a grid of t.
    Bounds {
        #[arg(long, value_parser = ["22", "23", "26"])]
        lemma: String,
        /// Moment case for lemma 22.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        case: u8,
        /// Concentration kind for lemma 23.
        #[arg(long, value_enum, default_value_t = KindArg::Sgc)]
        kind: KindArg,
        /// D (lemma 22) or E (lemma 23).
        #[arg(long, default_value_t = 0.0)]
        offset: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 0.1)]
        t_min: f64,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        t_steps: usize,
        #[arg(long = "C", default_value_t = 1.0)]
        big_c: f64,
        #[arg(long = "c", default_value_t = 1.0)]
        small_c: f64,
        #[arg(long = "K-alpha", default_value_t = 1.0)]
        k_alpha: f64,
        #[arg(long = "L", default_value_t = 1.0)]
        l: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        n: f64,
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long = "K", default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.8)]
        alpha_prime: f64,
        #[arg(long, default_value_t = 1.0)]
        levy_mass: f64,
    },
    /// Convergence-rate fit and tail fractions from a result file.
    Rate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = crate::harness::DEFAULT_EPSILON)]
        epsilon: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SchemeArg {
    Uprr,
    Through,
    Avoid,
    Subset,
    Perm,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Moment,
    Concentrated,
    Stable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Sgc,
    Sec,
}

fn parse_point(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected i,j, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Parse `args` (including the program name) and run, writing to `out` and
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_CONFIG;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Infeasible(_) => EXIT_INFEASIBLE,
                _ => EXIT_CONFIG,
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Simulate { config, preset: name, output, format, seed, threads } => {
            let mut cfg = match (config, name) {
                (Some(path), _) => ExperimentConfig::load(path)?,
                (None, Some(name)) => preset(&name)?,
                (None, None) => return Err(Error::Config("need --config or --preset".into())),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(path) = output {
                cfg.output = Some(OutputSpec { path, format: None });
            }
            let format = format.map(|f| match f {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            });
            simulate(&cfg, format, threads, out, err)
        }
        Command::Inclusion { scheme, n, m, waypoints, beta, size } => {
            let scheme = match scheme {
                SchemeArg::Uprr => SelectionScheme::UpRightPath { rows: n, cols: m.unwrap_or(n) },
                SchemeArg::Through => SelectionScheme::UpRightPathThrough { rows: n, cols: m.unwrap_or(n), waypoints },
                SchemeArg::Avoid => SelectionScheme::UpRightPathAvoidSquare { side: n, beta },
                SchemeArg::Subset => SelectionScheme::UniformSubset {
                    n,
                    m: size.ok_or_else(|| Error::Config("subset needs --size".into()))?,
                },
                SchemeArg::Perm => SelectionScheme::UniformPermutation { n },
            };
            inclusion(&scheme, out, err)
        }
        Command::CheckConditions { family, alpha, p, eta, mu, lambda, rho, tau, k } => {
            let regime = ScalingRegime { alpha, p, k, eta, mu, lambda, rho, tau };
            regime.validate().map_err(to_config)?;
            let family = match family {
                FamilyArg::Moment => ConditionFamily::Moment,
                FamilyArg::Concentrated => ConditionFamily::Concentrated,
                FamilyArg::Stable => ConditionFamily::Stable,
            };
            let report = convergence_conditions(family, &regime)?;
            let show = |t: Option<f64>| t.map_or("none".to_string(), |v| v.to_string());
            writeln!(out, "wip_threshold={}", show(report.wip_threshold))?;
            writeln!(out, "almost_sure_threshold={}", show(report.almost_sure_threshold))?;
            writeln!(out, "wip={}", report.wip)?;
            writeln!(out, "almost_sure={}", report.almost_sure)?;
            writeln!(out, "reason={}", report.reason)?;
            Ok(())
        }
        Command::Bounds {
            lemma,
            case,
            kind,
            offset,
            s,
            t_min,
            t_max,
            t_steps,
            big_c,
            small_c,
            k_alpha,
            l,
            m,
            n,
            r,
            k,
            p,
            alpha,
            alpha_prime,
            levy_mass,
        } => {
            let params = BoundParams { big_c, small_c, k_alpha, l, m, n, r, k, p, alpha, alpha_prime, levy_mass };
            if !(t_min > 0.0 && t_max >= t_min) || t_steps == 0 {
                return Err(Error::Config("need 0 < t-min <= t-max and t-steps >= 1".into()));
            }
            let grid: Vec<f64> = (0..t_steps)
                .map(|i| if t_steps == 1 { t_min } else { t_min + (t_max - t_min) * i as f64 / (t_steps - 1) as f64 })
                .collect();
            match lemma.as_str() {
                "22" => {
                    let case = if case == 1 { MomentCase::One } else { MomentCase::Two };
                    writeln!(out, "t,threshold,tail_raw,tail")?;
                    for t in grid {
                        let b = lemma22_threshold_and_tail(case, &params, offset, s, t).map_err(to_config)?;
                        writeln!(out, "{t},{},{},{}", b.threshold, b.tail_raw, b.tail)?;
                    }
                }
                "23" => {
                    let kind = match kind {
                        KindArg::Sgc => ConcentrationKind::Subgaussian,
                        KindArg::Sec => ConcentrationKind::Subexponential,
                    };
                    writeln!(out, "t,threshold,tail_raw,tail")?;
                    for t in grid {
                        let b = lemma23_tail(kind, &params, offset, t).map_err(to_config)?;
                        writeln!(out, "{t},{},{},{}", b.threshold, b.tail_raw, b.tail)?;
                    }
                }
                _ => {
                    writeln!(out, "t,tail_raw,tail,valid")?;
                    for t in grid {
                        let b = lemma26_tail_and_validity(&params, t).map_err(to_config)?;
                        writeln!(out, "{t},{},{},{}", b.tail_raw, b.tail, b.valid)?;
                    }
                }
            }
            Ok(())
        }
        Command::Rate { input, metric, epsilon } => {
            let result = ExperimentResult::read(&input)?;
            let fit = rate_fit(&result, &metric)?;
            writeln!(out, "metric={metric}")?;
            writeln!(out, "slope={}", fit.slope)?;
            writeln!(out, "stderr={}", fit.stderr)?;
            writeln!(out, "N,median,tail_fraction")?;
            let tails = wip_tail(&result, &metric, epsilon)?;
            for ((n, med), (_, tail)) in result.medians(&metric)?.into_iter().zip(tails) {
                writeln!(out, "{n},{med},{tail}")?;
            }
            let _ = err;
            Ok(())
        }
    }
}

fn to_config(e: Error) -> Error {
    match e {
        Error::Parameter(msg) => Error::Config(msg),
        other => other,
    }
}

fn simulate(
    cfg: &ExperimentConfig,
    format: Option<OutputFormat>,
    threads: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let result = match threads {
        Some(t) => run_experiment_with_threads(cfg, t)?,
        None => run_experiment(cfg)?,
    };
    let summary = result.summary(cfg.epsilon);
    match &cfg.output {
        Some(spec) => {
            let format = format.unwrap_or_else(|| spec.resolved_format());
            result.write(&spec.path, format)?;
            let mut summary_path = spec.path.clone().into_os_string();
            summary_path.push(".summary.json");
            std::fs::write(&summary_path, serde_json::to_string_pretty(&summary).expect("summary serializes"))?;
            writeln!(err, "wrote {} rows to {}", result.rows.len(), spec.path.display())?;
        }
        None => out.write_all(result.render(format.unwrap_or_default()).as_bytes())?,
    }
    for s in &summary.sizes {
        writeln!(err, "N={} {}: median={:.4} q10={:.4} q90={:.4} tail={:.2}", s.n, s.metric, s.median, s.q10, s.q90, s.tail_fraction)?;
    }
    for (metric, fit) in &summary.rate_fits {
        writeln!(err, "rate {metric}: slope={:.4} stderr={:.4}", fit.slope, fit.stderr)?;
    }
    Ok(())
}

fn inclusion(scheme: &SelectionScheme, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    scheme.validate().map_err(to_config)?;
    let table = scheme.inclusion_table()?;
    let ground = scheme.ground_set();
    writeln!(out, "i,j,p_num,p_den,p_float")?;
    for site in 0..ground.len() {
        let p = table.probability(site);
        let (i, j) = ground.coords(site);
        writeln!(out, "{i},{j},{},{},{}", p.numer(), p.denom(), table.probability_f64(site))?;
    }
    let l2 = scheme.l_squared()?;
    writeln!(err, "L^2 = {l2}")?;
    writeln!(err, "L = {}", scheme.l_statistic()?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("quenched").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_conditions_corner_growth() {
        let (code, out, _) = call(&["check-conditions", "--alpha", "2", "--p", "9", "--eta", "2", "--mu", "1", "--lambda", "0.25"]);
        assert_eq!(code, 0);
        assert!(out.contains("wip=true") && out.contains("almost_sure=false"), "{out}");
        assert!(out.contains("wip_threshold=8\n") && out.contains("almost_sure_threshold=12\n"), "{out}");
    }

    #[test]
    fn negative_lambda_and_infinite_alpha() {
        let (code, out, _) = call(&["check-conditions", "--alpha", "inf", "--p", "3", "--eta", "1", "--mu", "0", "--lambda", "-0.5"]);
        assert_eq!(code, 0);
        assert!(out.contains("wip_threshold=2\n") && out.contains("almost_sure_threshold=4\n"), "{out}");
    }

    #[test]
    fn inclusion_three_by_three() {
        let (code, out, err) = call(&["inclusion", "--scheme", "uprr", "--N", "3", "--M", "3"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "i,j,p_num,p_den,p_float");
        assert!(lines.contains(&"2,2,2,3,0.6666666666666666"), "{out}");
        assert!(err.contains("L^2 ="));
    }

    #[test]
    fn usage_and_config_errors_exit_two() {
        assert_eq!(call(&["simulate", "--config", "/nonexistent/x.toml"]).0, 2);
        assert_eq!(call(&["simulate"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["inclusion", "--scheme", "subset", "--N", "5"]).0, 2);
        assert_eq!(call(&["check-conditions", "--alpha", "2", "--eta", "1", "--mu", "2", "--lambda", "0"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn infeasible_exits_three() {
        let (code, _, err) = call(&["inclusion", "--scheme", "through", "--N", "3", "--waypoint", "1,3", "--waypoint", "3,1"]);
        assert_eq!(code, 3, "{err}");
    }

    #[test]
    fn bounds_tables() {
        let (code, out, _) = call(&["bounds", "--lemma", "22", "--alpha", "inf", "--t-min", "1", "--t-max", "1", "--t-steps", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1).unwrap(), format!("1,3,{},1", 1.0 + (-1.0f64).exp()));
        let (code, out, _) = call(&["bounds", "--lemma", "26", "--alpha", "1.8", "--t-steps", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert_eq!(call(&["bounds", "--lemma", "24"]).0, 2);
        assert_eq!(call(&["bounds", "--lemma", "22", "--L", "0"]).0, 2);
    }

    #[test]
    fn simulate_and_rate() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("tiny.toml");
        std::fs::write(
            &cfg,
            "seed = 5\nsizes = [4, 8, 16]\nn_env = 3\nn_sel = 200\n[model]\nkind = \"sphere\"\n[scheme]\nkind = \"path\"\n",
        )
        .unwrap();
        let result = dir.path().join("out.csv");
        let (code, _, err) = call(&["simulate", "--config", cfg.to_str().unwrap(), "--output", result.to_str().unwrap(), "--threads", "2"]);
        assert_eq!(code, 0, "{err}");
        let text = std::fs::read_to_string(&result).unwrap();
        assert_eq!(text.lines().count(), 1 + 3 * 3 * 2);
        assert!(dir.path().join("out.csv.summary.json").exists());
        let (code, out, _) = call(&["rate", "--input", result.to_str().unwrap(), "--metric", "ks"]);
        assert_eq!(code, 0);
        assert!(out.contains("slope="));
        assert_eq!(call(&["rate", "--input", result.to_str().unwrap(), "--metric", "tv"]).0, 2);
    }
}
