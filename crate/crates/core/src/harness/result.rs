//! Experiment results: long-format rows, per-size summaries and rate fits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::OutputFormat;
use crate::error::{Error, Result};
use crate::stats::{log_log_fit, median, quantile_sorted, sorted_copy, SlopeFit};

/// One `(N, rep, metric, value)` record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub rep: usize,
    pub metric: String,
    pub value: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    #[serde(rename = "N")]
    pub n: usize,
    pub metric: String,
    pub median: f64,
    pub q10: f64,
    pub q90: f64,
    /// Fraction of environment replicates with value above epsilon.
    pub tail_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub epsilon: f64,
    pub sizes: Vec<SizeSummary>,
    /// Log-log slope of the median against `N`, per metric; absent when it
    /// cannot be fitted.
    pub rate_fits: BTreeMap<String, SlopeFit>,
}

impl ExperimentResult {
    pub fn new(rows: Vec<ResultRow>) -> Self {
        ExperimentResult { rows }
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.rows.iter().map(|r| r.n).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Metric names in first-seen order.
    pub fn metrics(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.metric) {
                out.push(r.metric.clone());
            }
        }
        out
    }

    /// Values of `metric` at size `n`, in replicate order.
    pub fn values(&self, n: usize, metric: &str) -> Vec<f64> {
        self.rows.iter().filter(|r| r.n == n && r.metric == metric).map(|r| r.value).collect()
    }

    fn require(&self, metric: &str) -> Result<()> {
        if self.rows.iter().any(|r| r.metric == metric) {
            Ok(())
        } else {
            Err(Error::UnknownMetric(metric.to_string()))
        }
    }

    /// Median of `metric` per size.
    pub fn medians(&self, metric: &str) -> Result<Vec<(usize, f64)>> {
        self.require(metric)?;
        Ok(self.sizes().into_iter().map(|n| (n, median(&self.values(n, metric)))).collect())
    }

    pub fn summary(&self, epsilon: f64) -> Summary {
        let mut sizes = Vec::new();
        let metrics = self.metrics();
        for n in self.sizes() {
            for m in &metrics {
                let v = sorted_copy(&self.values(n, m));
                if v.is_empty() {
                    continue;
                }
                sizes.push(SizeSummary {
                    n,
                    metric: m.clone(),
                    median: quantile_sorted(&v, 0.5),
                    q10: quantile_sorted(&v, 0.1),
                    q90: quantile_sorted(&v, 0.9),
                    tail_fraction: v.iter().filter(|&&x| x > epsilon).count() as f64 / v.len() as f64,
                });
            }
        }
        let rate_fits = metrics.iter().filter_map(|m| rate_fit(self, m).ok().map(|f| (m.clone(), f))).collect();
        Summary { epsilon, sizes, rate_fits }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,rep,metric,value\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{:?}", r.n, r.rep, r.metric, r.value).expect("write to string");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("N,rep,metric,value") => {}
            other => return Err(Error::Config(format!("unexpected result header {other:?}"))),
        }
        let bad = |line: &str| Error::Config(format!("malformed result row {line:?}"));
        let mut rows = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(bad(line));
            }
            rows.push(ResultRow {
                n: f[0].parse().map_err(|_| bad(line))?,
                rep: f[1].parse().map_err(|_| bad(line))?,
                metric: f[2].to_string(),
                value: f[3].parse().map_err(|_| bad(line))?,
            });
        }
        Ok(ExperimentResult { rows })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows = serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed result json: {e}")))?;
        Ok(ExperimentResult { rows })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, self.render(format))?;
        Ok(())
    }

    /// Read a result file, choosing the format from the extension.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            Self::from_json(&text)
        } else {
            Self::from_csv(&text)
        }
    }
}

/// Fraction of environment replicates with `metric > epsilon`, per size.
pub fn wip_tail(result: &ExperimentResult, metric: &str, epsilon: f64) -> Result<Vec<(usize, f64)>> {
    result.require(metric)?;
    Ok(result
        .sizes()
        .into_iter()
        .map(|n| {
            let v = result.values(n, metric);
            (n, v.iter().filter(|&&x| x > epsilon).count() as f64 / v.len().max(1) as f64)
        })
        .collect())
}

/// Least-squares slope of log median `metric` against log `N`.
pub fn rate_fit(result: &ExperimentResult, metric: &str) -> Result<SlopeFit> {
    let med = result.medians(metric)?;
    if med.len() < 3 {
        return Err(Error::Parameter(format!("rate fit needs at least 3 sizes, got {}", med.len())));
    }
    let ys: Vec<f64> = med.iter().map(|p| p.1).collect();
    if ys.windows(2).all(|w| w[0] == w[1]) {
        return Ok(SlopeFit { slope: 0.0, intercept: ys[0], stderr: 0.0, degenerate: true });
    }
    if ys.iter().any(|&y| !(y > 0.0)) {
        return Err(Error::Parameter(format!("rate fit of {metric} needs positive medians")));
    }
    let xs: Vec<f64> = med.iter().map(|p| p.0 as f64).collect();
    Ok(log_log_fit(&xs, &ys))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(usize, usize) -> f64) -> ExperimentResult {
        let mut rows = Vec::new();
        for n in [10, 20, 40, 80] {
            for rep in 0..5 {
                rows.push(ResultRow { n, rep, metric: "ks".into(), value: f(n, rep) });
            }
        }
        ExperimentResult::new(rows)
    }

    #[test]
    fn rate_fit_examples() {
        let flat = rate_fit(&synthetic(|_, _| 0.3), "ks").unwrap();
        assert_eq!(flat.slope, 0.0);
        let inv = rate_fit(&synthetic(|n, _| 1.0 / n as f64), "ks").unwrap();
        assert!((inv.slope + 1.0).abs() < 1e-12);
        assert!(matches!(rate_fit(&synthetic(|_, _| 0.3), "w1"), Err(Error::UnknownMetric(_))));
    }

    #[test]
    fn tail_fractions() {
        let r = synthetic(|_, rep| rep as f64 / 10.0);
        for (_, t) in wip_tail(&r, "ks", 1.0).unwrap() {
            assert_eq!(t, 0.0);
        }
        for (_, t) in wip_tail(&r, "ks", -1.0).unwrap() {
            assert_eq!(t, 1.0);
        }
        assert_eq!(wip_tail(&r, "ks", 0.25).unwrap()[0].1, 0.4);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let r = synthetic(|n, rep| (n * 7 + rep) as f64 / 3.0);
        assert_eq!(ExperimentResult::from_csv(&r.to_csv()).unwrap(), r);
        assert_eq!(ExperimentResult::from_json(&r.to_json()).unwrap(), r);
        assert!(r.to_csv().starts_with("N,rep,metric,value\n10,0,ks,"));
        assert!(ExperimentResult::from_csv("a,b\n").is_err());
    }

    #[test]
    fn summary_quantiles() {
        let r = synthetic(|_, rep| rep as f64);
        let s = r.summary(2.5);
        assert_eq!(s.sizes.len(), 4);
        assert_eq!(s.sizes[0].median, 2.0);
        assert_eq!(s.sizes[0].tail_fraction, 0.4);
        assert!(s.rate_fits["ks"].degenerate);
    }
}
