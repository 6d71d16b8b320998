//! Monte Carlo drivers and their reports.
//!
//! Every sample draws from its own ChaCha20 stream, `(n_index << 32) | i`, so
//! a report depends only on its parameters and seed, never on the number of
//! worker threads. Only `wall_clock_ms` varies between identical runs.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::eg::{eg_forward, num_swaps, SortingNetwork};
use crate::error::{Error, Result};
use crate::geometry::{certify_nonrealizable, GpPattern};
use crate::patterns::{count_disjoint_greedy, find_occurrences, Pattern};
use crate::sampler::{sample_random_network, sample_uniform_syt, SeededRng};
use crate::tableau::{enumerate_syt, identically_ordered, Cell, StandardTableau, YoungDiagram};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub per_n: Vec<NStats>,
    pub version: String,
    pub wall_clock_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NStats {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    /// One measurement per sample, in sample order.
    pub raw: Vec<f64>,
    #[serde(default)]
    pub extra: BTreeMap<String, f64>,
    #[serde(default)]
    pub series: BTreeMap<String, Vec<f64>>,
}

impl NStats {
    pub fn from_raw(n: usize, raw: Vec<f64>) -> Self {
        let (mean, sd) = mean_sd(&raw);
        let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
        let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        NStats {
            n,
            mean,
            sd,
            min: if raw.is_empty() { 0.0 } else { min },
            max: if raw.is_empty() { 0.0 } else { max },
            raw,
            extra: BTreeMap::new(),
            series: BTreeMap::new(),
        }
    }
}

/// Mean and sample standard deviation; the deviation of fewer than two
/// values is 0.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    experiment: String,
    version: String,
    wall_clock_ms: u64,
    params: String,
    n: usize,
    mean: f64,
    sd: f64,
    min: f64,
    max: f64,
    raw: String,
    extra: String,
    series: String,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per n. Raw values are space separated; params, extra and
    /// series are embedded JSON.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let params = serde_json::to_string(&self.params)?;
        for s in &self.per_n {
            let raw: Vec<String> = s.raw.iter().map(|x| x.to_string()).collect();
            w.serialize(CsvRow {
                experiment: self.experiment.clone(),
                version: self.version.clone(),
                wall_clock_ms: self.wall_clock_ms,
                params: params.clone(),
                n: s.n,
                mean: s.mean,
                sd: s.sd,
                min: s.min,
                max: s.max,
                raw: raw.join(" "),
                extra: serde_json::to_string(&s.extra)?,
                series: serde_json::to_string(&s.series)?,
            })?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(s.as_bytes());
        let mut report: Option<ExperimentReport> = None;
        for row in r.deserialize() {
            let row: CsvRow = row?;
            let raw = row
                .raw
                .split_whitespace()
                .map(|x| {
                    x.parse::<f64>()
                        .map_err(|e| Error::Parameter(format!("bad raw value {x:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let stats = NStats {
                n: row.n,
                mean: row.mean,
                sd: row.sd,
                min: row.min,
                max: row.max,
                raw,
                extra: serde_json::from_str(&row.extra)?,
                series: serde_json::from_str(&row.series)?,
            };
            match report.as_mut() {
                Some(rep) => rep.per_n.push(stats),
                None => {
                    report = Some(ExperimentReport {
                        experiment: row.experiment,
                        params: serde_json::from_str(&row.params)?,
                        per_n: vec![stats],
                        version: row.version,
                        wall_clock_ms: row.wall_clock_ms,
                    })
                }
            }
        }
        report.ok_or_else(|| Error::Parameter("CSV report has no rows".into()))
    }

    /// Copy with the timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        ExperimentReport {
            wall_clock_ms: 0,
            ..self.clone()
        }
    }
}

/// Sample sizes, seed and thread count shared by the Monte Carlo drivers.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n_values: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(n_values: Vec<usize>, samples: usize, seed: u64) -> Self {
        RunConfig {
            n_values,
            samples,
            seed,
            jobs: None,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }

    fn check(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Parameter("no n values given".into()));
        }
        if self.samples == 0 {
            return Err(Error::Parameter("samples must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Parameter("jobs must be positive".into()));
        }
        Ok(())
    }

    fn base_params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        p.insert("n".into(), Value::from(self.n_values.clone()));
        p.insert("samples".into(), Value::from(self.samples));
        p.insert("seed".into(), Value::from(self.seed));
        p
    }

    pub fn rng(&self, n_index: usize, sample: usize) -> SeededRng {
        SeededRng::with_stream(self.seed, ((n_index as u64) << 32) | sample as u64)
    }

    /// Runs `f(n_index, sample)` for every sample of every n, in a pool of
    /// `jobs` threads. Results come back grouped by n, in sample order.
    fn run<T, F>(&self, f: F) -> Result<Vec<Vec<T>>>
    where
        T: Send,
        F: Fn(usize, usize) -> Result<T> + Sync,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.unwrap_or(0))
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..self.n_values.len())
                .map(|ni| (0..self.samples).into_par_iter().map(|i| f(ni, i)).collect())
                .collect()
        })
    }
}

fn finish(
    experiment: &str,
    params: BTreeMap<String, Value>,
    per_n: Vec<NStats>,
    started: Instant,
) -> ExperimentReport {
    ExperimentReport {
        experiment: experiment.into(),
        params,
        per_n,
        version: REPORT_VERSION.into(),
        wall_clock_ms: started.elapsed().as_millis() as u64,
    }
}

fn network_for(cfg: &RunConfig, ni: usize, i: usize) -> Result<SortingNetwork> {
    sample_random_network(cfg.n_values[ni], &cfg.rng(ni, i))
}

/// Greedy disjoint occurrence counts of `pattern` in uniform networks.
///
/// `raw` holds the counts. `extra` has `mean_over_n2`, and the prefix
/// statistic: the greedy count among occurrences inside times
/// `[1, ceil(prefix_c * n)]`, as `prefix_mean` and `prefix_mean_over_n`.
pub fn experiment_theorem1(pattern: &Pattern, cfg: &RunConfig, prefix_c: f64) -> Result<ExperimentReport> {
    cfg.check()?;
    if !(prefix_c > 0.0) {
        return Err(Error::Parameter(format!("prefix constant must be positive, got {prefix_c}")));
    }
    let started = Instant::now();
    let results = cfg.run(|ni, i| {
        let n = cfg.n_values[ni];
        if n < 2 || pattern.size() > n {
            return Ok((0usize, 0usize));
        }
        let net = network_for(cfg, ni, i)?;
        let occ = find_occurrences(&net, pattern);
        let horizon = (prefix_c * n as f64).ceil() as usize;
        let prefix: Vec<_> = occ.iter().filter(|w| w.time.1 <= horizon).copied().collect();
        Ok((count_disjoint_greedy(&occ), count_disjoint_greedy(&prefix)))
    })?;
    let per_n = cfg
        .n_values
        .iter()
        .zip(results)
        .map(|(&n, rows)| {
            let raw: Vec<f64> = rows.iter().map(|r| r.0 as f64).collect();
            let prefix: Vec<f64> = rows.iter().map(|r| r.1 as f64).collect();
            let mut s = NStats::from_raw(n, raw);
            let (pm, psd) = mean_sd(&prefix);
            let nf = n as f64;
            s.extra.insert("mean_over_n2".into(), s.mean / (nf * nf));
            s.extra.insert("prefix_mean".into(), pm);
            s.extra.insert("prefix_sd".into(), psd);
            s.extra.insert("prefix_mean_over_n".into(), pm / nf);
            s
        })
        .collect();
    let mut params = cfg.base_params();
    params.insert("pattern".into(), Value::from(pattern.swaps().to_vec()));
    params.insert("prefix_c".into(), Value::from(prefix_c));
    params.insert("method".into(), Value::from("greedy"));
    Ok(finish("t1", params, per_n, started))
}

/// The `m = floor((n-1)/(2k-2))` staircase-`k` subdiagrams placed along the
/// border of staircase(`n`), starting at column `floor(n/4) + 1`, with no
/// gaps between consecutive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalMotifLayout {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub offset: usize,
}

impl DiagonalMotifLayout {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::SizeTooSmall { min: 2, got: k });
        }
        if n < 4 * (k - 1) {
            return Err(Error::SizeTooSmall { min: 4 * (k - 1), got: n });
        }
        Ok(DiagonalMotifLayout {
            k,
            n,
            m: (n - 1) / (2 * k - 2),
            offset: n / 4,
        })
    }

    /// Total columns covered, `m (k - 1)`.
    pub fn columns_used(&self) -> usize {
        self.m * (self.k - 1)
    }

    /// Top-left cell of subdiagram `a` (1-based).
    pub fn anchor(&self, a: usize) -> Cell {
        assert!((1..=self.m).contains(&a), "anchor index {a} out of range");
        let col = self.offset + 1 + (a - 1) * (self.k - 1);
        Cell::new(self.n + 2 - self.k - col, col)
    }

    pub fn anchors(&self) -> Vec<Cell> {
        (1..=self.m).map(|a| self.anchor(a)).collect()
    }

    /// Cells of subdiagram `a` in staircase(`n`) coordinates.
    pub fn cells(&self, a: usize) -> Vec<Cell> {
        let c = self.anchor(a);
        YoungDiagram::staircase(self.k)
            .cells()
            .map(|x| Cell::new(c.row + x.row - 1, c.col + x.col - 1))
            .collect()
    }
}

/// Counts the layout subdiagrams of a uniform staircase(`n`) tableau that
/// are ordered like `motif`.
///
/// With `threshold = Some(c)` a subdiagram also needs every entry above
/// `N - c n`. Without it nothing is filtered. Either way `series` records,
/// for every matching subdiagram, `(N - min entry) / n`.
pub fn experiment_theorem2(
    motif: &StandardTableau,
    cfg: &RunConfig,
    threshold: Option<f64>,
) -> Result<ExperimentReport> {
    cfg.check()?;
    let k = motif.shape().num_rows() + 1;
    if motif.shape() != &YoungDiagram::staircase(k) {
        return Err(Error::NotStaircase(motif.shape().rows().to_vec()));
    }
    let layouts = cfg
        .n_values
        .iter()
        .map(|&n| DiagonalMotifLayout::new(k, n))
        .collect::<Result<Vec<_>>>()?;
    let target = motif.to_filling();
    let started = Instant::now();
    let results = cfg.run(|ni, i| {
        let layout = &layouts[ni];
        let n = layout.n;
        let t = sample_uniform_syt(&YoungDiagram::staircase(n), &cfg.rng(ni, i))?;
        let total = num_swaps(n) as f64;
        let mut gaps = Vec::new();
        for anchor in layout.anchors() {
            let sub = t.subtableau(anchor)?;
            if !identically_ordered(&target, &sub) {
                continue;
            }
            let min = sub.min_entry().unwrap_or(0) as f64;
            if let Some(c) = threshold {
                if min <= total - c * n as f64 {
                    continue;
                }
            }
            gaps.push((total - min) / n as f64);
        }
        Ok(gaps)
    })?;
    let per_n = layouts
        .iter()
        .zip(results)
        .map(|(layout, rows)| {
            let raw: Vec<f64> = rows.iter().map(|g| g.len() as f64).collect();
            let mut s = NStats::from_raw(layout.n, raw);
            s.extra.insert("anchors".into(), layout.m as f64);
            s.extra.insert("mean_over_n".into(), s.mean / layout.n as f64);
            let mut gaps: Vec<f64> = rows.into_iter().flatten().collect();
            gaps.sort_by(f64::total_cmp);
            s.series.insert("min_entry_gap_over_n".into(), gaps);
            s
        })
        .collect();
    let mut params = cfg.base_params();
    params.insert("motif".into(), serde_json::to_value(motif)?);
    params.insert("k".into(), Value::from(k));
    params.insert(
        "threshold".into(),
        threshold.map(Value::from).unwrap_or(Value::Null),
    );
    Ok(finish("t2", params, per_n, started))
}

/// Fraction of uniform networks carrying the non-realizability certificate.
///
/// `raw` is 1 for certified samples and 0 otherwise. `extra` holds the
/// binomial standard error and a 95% Wilson interval.
pub fn experiment_theorem3(cfg: &RunConfig, gp: &GpPattern) -> Result<ExperimentReport> {
    cfg.check()?;
    let started = Instant::now();
    let results = cfg.run(|ni, i| {
        let n = cfg.n_values[ni];
        if n < 5 {
            return Ok(false);
        }
        let net = network_for(cfg, ni, i)?;
        Ok(certify_nonrealizable(&net, gp).is_some())
    })?;
    let per_n = cfg
        .n_values
        .iter()
        .zip(results)
        .map(|(&n, rows)| {
            let hits = rows.iter().filter(|&&b| b).count();
            let raw: Vec<f64> = rows.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
            let mut s = NStats::from_raw(n, raw);
            let trials = rows.len();
            let p = s.mean;
            let (lo, hi) = wilson_interval(hits, trials, 1.959963984540054);
            s.extra.insert("fraction".into(), p);
            s.extra.insert("se".into(), (p * (1.0 - p) / trials as f64).sqrt());
            s.extra.insert("ci95_low".into(), lo);
            s.extra.insert("ci95_high".into(), hi);
            s
        })
        .collect();
    let mut params = cfg.base_params();
    params.insert("gp_pattern".into(), Value::from(gp.network().swaps().to_vec()));
    Ok(finish("t3", params, per_n, started))
}

pub const STATIONARITY_MAX_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StationarityReport {
    pub n: usize,
    pub networks: usize,
    /// `frequencies[t - 1][j - 1]` counts networks with `s_t = j`.
    pub frequencies: Vec<Vec<u64>>,
    pub s1_equals_s2: bool,
    pub all_times_equal: bool,
}

/// Exact distribution of every swap position over all networks of size `n`.
pub fn experiment_stationarity(n: usize) -> Result<StationarityReport> {
    if n < 2 {
        return Err(Error::SizeTooSmall { min: 2, got: n });
    }
    if n > STATIONARITY_MAX_N {
        return Err(Error::Parameter(format!(
            "exhaustive stationarity check needs n <= {STATIONARITY_MAX_N}, got {n}"
        )));
    }
    let total = num_swaps(n);
    let mut freq = vec![vec![0u64; n - 1]; total];
    let mut networks = 0;
    for t in enumerate_syt(&YoungDiagram::staircase(n))? {
        let net = eg_forward(&t)?;
        for (k, &s) in net.swaps().iter().enumerate() {
            freq[k][s as usize - 1] += 1;
        }
        networks += 1;
    }
    let s1_equals_s2 = total < 2 || freq[0] == freq[1];
    let all_times_equal = freq.iter().all(|f| *f == freq[0]);
    Ok(StationarityReport {
        n,
        networks,
        frequencies: freq,
        s1_equals_s2,
        all_times_equal,
    })
}
