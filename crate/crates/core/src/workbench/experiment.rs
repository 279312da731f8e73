use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::generate::GeneratorSpec;
use super::monte_carlo::{monte_carlo, Algorithm, McOptions, MonteCarloReport};
use super::plot::{svg_plot, Point, Series};
use super::table::{bound_table, BoundRow};
use super::{read_json, write_csv, write_json};
use crate::conflict::DEFAULT_CHAIN_CEILING;
use crate::error::{Error, Result};
use crate::format;
use crate::hypergraph::Hypergraph;
use crate::oracle::{greedy_success_exact, is_r_colorable, DEFAULT_ORACLE_BUDGET};

pub const ENV_CHAIN_CEILING: &str = "HYPERCOLOR_CHAIN_CEILING";
pub const ENV_ORACLE_BUDGET: &str = "HYPERCOLOR_ORACLE_BUDGET";

/// Budget values after applying the environment over the built-in defaults.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub chain_ceiling: u64,
    pub oracle_budget: u64,
}

impl Budgets {
    pub fn from_env() -> Result<Budgets> {
        Ok(Budgets {
            chain_ceiling: env_u64(ENV_CHAIN_CEILING)?.unwrap_or(DEFAULT_CHAIN_CEILING),
            oracle_budget: env_u64(ENV_ORACLE_BUDGET)?.unwrap_or(DEFAULT_ORACLE_BUDGET),
        })
    }
}

fn env_u64(name: &str) -> Result<Option<u64>> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .replace('_', "")
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("{name}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSource {
    Generator(GeneratorSpec),
    File(PathBuf),
}

impl InstanceSource {
    pub fn label(&self) -> String {
        match self {
            InstanceSource::Generator(g) => g.label(),
            InstanceSource::File(p) => p.display().to_string(),
        }
    }

    pub fn load(&self) -> Result<Hypergraph> {
        match self {
            InstanceSource::Generator(g) => g.generate(),
            InstanceSource::File(p) => format::read_file(p),
        }
    }
}

fn yes() -> bool {
    true
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Greedy]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    /// Directory receiving `<name>.csv`, `<name>.json`, `<name>.svg` and
    /// `<name>-bounds.csv`. Nothing is written when absent.
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default = "yes")]
    pub json: bool,
    #[serde(default)]
    pub plot: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { dir: None, csv: true, json: true, plot: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub instances: Vec<InstanceSource>,
    pub r: u32,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub count_chains: bool,
    #[serde(default = "yes")]
    pub oracle: bool,
    #[serde(default)]
    pub bounds: bool,
    #[serde(default)]
    pub chain_ceiling: Option<u64>,
    #[serde(default)]
    pub oracle_budget: Option<u64>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_name() -> String {
    "experiment".into()
}

impl ExperimentConfig {
    /// Reads a JSON config; relative instance paths are taken relative to
    /// the config file.
    pub fn load(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
        let path = path.as_ref();
        let mut config: ExperimentConfig = read_json(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for inst in &mut config.instances {
            if let InstanceSource::File(p) = inst {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.r < 2 {
            return Err(Error::InvalidParameter(format!("need r >= 2 colors, got {}", self.r)));
        }
        if self.instances.is_empty() || self.algorithms.is_empty() {
            return Err(Error::InvalidParameter("config needs at least one instance and one algorithm".into()));
        }
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(Error::InvalidParameter(format!("name {:?} is not a plain file stem", self.name)));
        }
        for inst in &self.instances {
            if let InstanceSource::File(p) = inst {
                if !p.is_file() {
                    return Err(Error::io(p, std::io::Error::new(std::io::ErrorKind::NotFound, "instance file not found")));
                }
            }
        }
        if let Some(dir) = &self.output.dir {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        Ok(())
    }

    /// Config values over environment over defaults.
    pub fn budgets(&self) -> Result<Budgets> {
        let env = Budgets::from_env()?;
        Ok(Budgets {
            chain_ceiling: self.chain_ceiling.unwrap_or(env.chain_ceiling),
            oracle_budget: self.oracle_budget.unwrap_or(env.oracle_budget),
        })
    }
}

/// One (instance, algorithm) run: instance facts, the Monte Carlo summary
/// and oracle results, flattened into a single CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub instance: String,
    pub vertices: usize,
    pub edges: usize,
    pub uniformity: Option<usize>,
    pub max_edge_degree: usize,
    pub algorithm: Algorithm,
    pub r: u32,
    pub p: f64,
    pub trials: u64,
    pub successes: u64,
    pub mc_estimate: f64,
    pub wilson95_low: f64,
    pub wilson95_high: f64,
    pub wilson99_low: f64,
    pub wilson99_high: f64,
    pub mean_conflicting_pairs: Option<f64>,
    pub conflicts_b: Option<u64>,
    pub conflicts_p: Option<u64>,
    pub conflicts_r: Option<u64>,
    pub mean_conflicting_chains: Option<f64>,
    pub chain_overflow_trials: u64,
    pub mean_short_edges: Option<f64>,
    pub invariant_violations: u64,
    pub oracle: Option<bool>,
    pub oracle_exact: Option<f64>,
    pub oracle_proper_orderings: Option<u64>,
    pub oracle_total_orderings: Option<u64>,
    pub oracle_error: Option<String>,
}

impl ExperimentRow {
    fn new(instance: String, h: &Hypergraph, mc: &MonteCarloReport) -> ExperimentRow {
        ExperimentRow {
            instance,
            vertices: h.vertex_count(),
            edges: h.edge_count(),
            uniformity: h.uniformity().map(|u| u.n()),
            max_edge_degree: h.max_edge_degree(),
            algorithm: mc.algorithm,
            r: mc.r,
            p: mc.p,
            trials: mc.trials,
            successes: mc.successes,
            mc_estimate: mc.estimate,
            wilson95_low: mc.wilson95_low,
            wilson95_high: mc.wilson95_high,
            wilson99_low: mc.wilson99_low,
            wilson99_high: mc.wilson99_high,
            mean_conflicting_pairs: mc.mean_conflicting_pairs,
            conflicts_b: mc.conflicts_b,
            conflicts_p: mc.conflicts_p,
            conflicts_r: mc.conflicts_r,
            mean_conflicting_chains: mc.mean_conflicting_chains,
            chain_overflow_trials: mc.chain_overflow_trials,
            mean_short_edges: mc.mean_short_edges,
            invariant_violations: mc.invariant_violations,
            oracle: None,
            oracle_exact: None,
            oracle_proper_orderings: None,
            oracle_total_orderings: None,
            oracle_error: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    /// Seconds since the epoch; not part of the deterministic content.
    pub timestamp: u64,
    pub seed: u64,
    pub budgets: Budgets,
    pub rows: Vec<ExperimentRow>,
    pub bounds: Vec<BoundRow>,
    pub violations: Vec<String>,
}

impl ExperimentReport {
    pub fn without_timestamp(mut self) -> ExperimentReport {
        self.timestamp = 0;
        self
    }

    pub fn files(&self, dir: &Path) -> ReportFiles {
        ReportFiles {
            csv: dir.join(format!("{}.csv", self.name)),
            json: dir.join(format!("{}.json", self.name)),
            svg: dir.join(format!("{}.svg", self.name)),
            bounds: dir.join(format!("{}-bounds.csv", self.name)),
        }
    }

    pub fn plot(&self) -> String {
        let series: Vec<Series> = BTreeSet::<String>::from_iter(self.rows.iter().map(|r| format!("{:?}", r.algorithm)))
            .into_iter()
            .map(|alg| Series {
                points: self
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| format!("{:?}", row.algorithm) == alg)
                    .map(|(i, row)| Point {
                        x: row.uniformity.unwrap_or(i) as f64,
                        y: row.mc_estimate,
                        lo: row.wilson95_low,
                        hi: row.wilson95_high,
                    })
                    .collect(),
                label: alg.to_lowercase(),
            })
            .collect();
        svg_plot(&format!("{}: success estimate vs n", self.name), "edge size n", &series)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportFiles {
    pub csv: PathBuf,
    pub json: PathBuf,
    pub svg: PathBuf,
    pub bounds: PathBuf,
}

fn run_oracle(row: &mut ExperimentRow, h: &Hypergraph, r: u32, budget: u64) {
    let mut errors = Vec::new();
    match is_r_colorable(h, r, budget) {
        Ok(w) => row.oracle = Some(w.is_some()),
        Err(e) => errors.push(e.to_string()),
    }
    if row.algorithm == Algorithm::Greedy {
        match greedy_success_exact(h, r, budget) {
            Ok(s) => {
                row.oracle_exact = Some(s.probability_f64());
                row.oracle_proper_orderings = Some(s.proper_orderings);
                row.oracle_total_orderings = Some(s.total_orderings);
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    if !errors.is_empty() {
        row.oracle_error = Some(errors.join("; "));
    }
}

fn row_violations(row: &ExperimentRow) -> Vec<String> {
    let mut v = Vec::new();
    let at = &row.instance;
    if row.invariant_violations > 0 {
        v.push(format!("{at}: {} trials broke a greedy invariant", row.invariant_violations));
    }
    if row.oracle == Some(false) && row.successes > 0 {
        v.push(format!("{at}: {} proper colorings found on a non-colorable instance", row.successes));
    }
    if row.oracle == Some(false) && row.oracle_proper_orderings.is_some_and(|c| c > 0) {
        v.push(format!("{at}: greedy succeeds on an order but the instance is not colorable"));
    }
    v
}

/// Generation, Monte Carlo, oracle cross-checks and bounds for every
/// instance. Budget overruns are recorded per row; invariant violations are
/// collected in the report. Files are written when an output directory is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let budgets = config.budgets()?;
    let mut rows = Vec::new();
    let mut uniformities = BTreeSet::new();
    for source in &config.instances {
        let h = source.load()?;
        if let Some(u) = h.uniformity() {
            uniformities.insert(u.n() as u32);
        }
        for &algorithm in &config.algorithms {
            let options = McOptions {
                algorithm,
                count_pairs: true,
                count_chains: config.count_chains,
                chain_ceiling: budgets.chain_ceiling,
                threads: config.threads,
            };
            let mc = monte_carlo(&h, config.r, config.trials, config.seed, config.p, &options)?;
            let mut row = ExperimentRow::new(source.label(), &h, &mc);
            if config.oracle {
                run_oracle(&mut row, &h, config.r, budgets.oracle_budget);
            }
            rows.push(row);
        }
    }
    let bounds = if config.bounds {
        let ns: Vec<u32> = uniformities.into_iter().filter(|&n| n >= 2).collect();
        bound_table(&ns, &[config.r])
    } else {
        Vec::new()
    };
    let mut violations: Vec<String> = rows.iter().flat_map(row_violations).collect();
    violations.extend(bounds.iter().filter(|b| !b.verify()).map(|b| format!("bound row n={} r={} fails its inequality", b.n, b.r)));
    let report = ExperimentReport {
        name: config.name.clone(),
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        seed: config.seed,
        budgets,
        rows,
        bounds,
        violations,
    };
    if let Some(dir) = &config.output.dir {
        write_report(&report, dir, &config.output)?;
    }
    Ok(report)
}

pub fn write_report(report: &ExperimentReport, dir: &Path, output: &OutputSpec) -> Result<ReportFiles> {
    let files = report.files(dir);
    if output.csv {
        write_csv(&report.rows, &files.csv)?;
        if !report.bounds.is_empty() {
            write_csv(&report.bounds, &files.bounds)?;
        }
    }
    if output.json {
        write_json(report, &files.json)?;
    }
    if output.plot {
        std::fs::write(&files.svg, report.plot()).map_err(|e| Error::io(&files.svg, e))?;
    }
    Ok(files)
}
