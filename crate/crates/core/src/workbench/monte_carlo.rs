use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{wilson, Z95, Z99};
use crate::bounds::default_short_edge_p;
use crate::conflict::{
    classify_conflicts_by_interval, conflicting_chains, conflicting_pairs, short_edges, IntervalPartition,
    DEFAULT_CHAIN_CEILING,
};
use crate::error::{Error, Result};
use crate::greedy::{equitable_partition_with, sample_birth_times_with, two_phase_color, GreedyRunner};
use crate::hypergraph::{BirthTimes, Hypergraph};
use crate::rng;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    #[default]
    Greedy,
    TwoPhase,
    Equitable,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "two_phase" | "two-phase" => Ok(Algorithm::TwoPhase),
            "equitable" => Ok(Algorithm::Equitable),
            _ => Err(Error::InvalidParameter(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McOptions {
    pub algorithm: Algorithm,
    pub count_pairs: bool,
    pub count_chains: bool,
    pub chain_ceiling: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions {
            algorithm: Algorithm::Greedy,
            count_pairs: true,
            count_chains: false,
            chain_ceiling: DEFAULT_CHAIN_CEILING,
            threads: None,
        }
    }
}

/// Aggregated Monte Carlo run. Flat so that it maps onto one CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub algorithm: Algorithm,
    pub r: u32,
    pub seed: u64,
    pub p: f64,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub wilson95_low: f64,
    pub wilson95_high: f64,
    pub wilson99_low: f64,
    pub wilson99_high: f64,
    pub conflicting_pairs_total: Option<u64>,
    pub trials_with_conflicting_pair: Option<u64>,
    pub mean_conflicting_pairs: Option<f64>,
    pub conflicts_b: Option<u64>,
    pub conflicts_p: Option<u64>,
    pub conflicts_r: Option<u64>,
    pub conflicting_chains_total: Option<u64>,
    pub mean_conflicting_chains: Option<f64>,
    pub chain_overflow_trials: u64,
    pub short_edges_total: Option<u64>,
    pub mean_short_edges: Option<f64>,
    pub invariant_violations: u64,
}

impl MonteCarloReport {
    pub fn wilson95(&self) -> (f64, f64) {
        (self.wilson95_low, self.wilson95_high)
    }

    pub fn wilson99(&self) -> (f64, f64) {
        (self.wilson99_low, self.wilson99_high)
    }
}

#[derive(Copy, Clone, Debug, Default)]
struct Tally {
    successes: u64,
    pairs: u64,
    trials_with_pair: u64,
    interval: [u64; 3],
    chains: u64,
    chain_overflow: u64,
    short: u64,
    violations: u64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.successes += o.successes;
        self.pairs += o.pairs;
        self.trials_with_pair += o.trials_with_pair;
        for i in 0..3 {
            self.interval[i] += o.interval[i];
        }
        self.chains += o.chains;
        self.chain_overflow += o.chain_overflow;
        self.short += o.short;
        self.violations += o.violations;
        self
    }
}

/// Default interval parameter: `2 ln(n) / n` for the largest edge size `n`,
/// or 1/2 when that is not in `(0, 1)`.
pub fn default_p(h: &Hypergraph) -> f64 {
    let n = h.edges().iter().map(Vec::len).max().unwrap_or(0) as f64;
    let p = default_short_edge_p(n);
    if p > 0.0 && p < 1.0 {
        p
    } else {
        0.5
    }
}

struct Trial<'a> {
    h: &'a Hypergraph,
    r: u32,
    p: f64,
    seed: u64,
    options: &'a McOptions,
    partition: Option<IntervalPartition>,
}

impl Trial<'_> {
    fn run(&self, runner: &mut GreedyRunner, i: u64) -> Result<Tally> {
        let mut rng = rng::trial_rng(self.seed, i);
        let mut tally = Tally::default();
        let (h, r) = (self.h, self.r);
        if self.options.algorithm == Algorithm::Equitable {
            let c = equitable_partition_with(&mut rng, h.vertex_count(), r);
            tally.successes = h.is_proper(&c)?.is_proper() as u64;
            return Ok(tally);
        }
        let t = sample_birth_times_with(&mut rng, h.vertex_count());
        let trace = match self.options.algorithm {
            Algorithm::TwoPhase => two_phase_color(h, &t, r, self.p)?,
            _ => runner.run(&t.order(), None),
        };
        let mono = h.is_proper(&trace.coloring)?.monochromatic;
        tally.successes = mono.is_empty() as u64;
        let greedy = self.options.algorithm == Algorithm::Greedy;
        if greedy && mono.iter().any(|&e| trace.coloring.color(h.edge(e)[0]) != r) {
            tally.violations += 1;
        }
        if self.options.count_pairs {
            let pairs = conflicting_pairs(h, &t)?;
            tally.pairs = pairs.len() as u64;
            tally.trials_with_pair = !pairs.is_empty() as u64;
            if greedy && r == 2 && !mono.is_empty() && pairs.is_empty() {
                tally.violations += 1;
            }
            if let Some(part) = &self.partition {
                let c = classify_conflicts_by_interval(h, &t, part)?;
                tally.interval = [c.b, c.p, c.r];
            }
        }
        if self.options.count_chains {
            self.count_chains(&t, &mono, greedy, &mut tally)?;
        }
        tally.short = short_edges(h, &t, r, self.p)?.len() as u64;
        Ok(tally)
    }

    fn count_chains(&self, t: &BirthTimes, mono: &[usize], greedy: bool, tally: &mut Tally) -> Result<()> {
        match conflicting_chains(self.h, t, self.r, self.options.chain_ceiling) {
            Ok(chains) => {
                tally.chains = chains.len() as u64;
                if greedy && mono.iter().any(|&e| !chains.iter().any(|c| c.last_edge() == e)) {
                    tally.violations += 1;
                }
            }
            Err(Error::ChainCeilingExceeded { .. }) => tally.chain_overflow = 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

/// Runs `trials` independent colorings. Trial `i` draws from the stream
/// `(seed, i)`, and aggregation only adds integers, so the report does not
/// depend on the number of workers.
pub fn monte_carlo(
    h: &Hypergraph,
    r: u32,
    trials: u64,
    seed: u64,
    p: Option<f64>,
    options: &McOptions,
) -> Result<MonteCarloReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!("need r >= 2 colors, got {r}")));
    }
    let report = h.validate();
    if !report.is_valid() {
        return Err(Error::InvalidHypergraph(report.violations[0].to_string()));
    }
    if options.algorithm == Algorithm::TwoPhase && r != 2 {
        return Err(Error::Unsupported("two-phase coloring is defined for r = 2 only".into()));
    }
    let p = p.unwrap_or_else(|| default_p(h));
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1)")));
    }
    let partition = (r == 2).then(|| IntervalPartition::new(p)).transpose()?;
    let trial = Trial { h, r, p, seed, options, partition };
    let run = || {
        (0..trials)
            .into_par_iter()
            .map_init(|| GreedyRunner::new(h, r), |runner, i| trial.run(runner, i))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    };
    let tally = match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(build_report(&tally, options, r, seed, p, trials))
}

fn build_report(t: &Tally, options: &McOptions, r: u32, seed: u64, p: f64, trials: u64) -> MonteCarloReport {
    let nf = trials as f64;
    let traced = options.algorithm != Algorithm::Equitable;
    let pairs = traced && options.count_pairs;
    let chains = traced && options.count_chains;
    let interval = pairs && r == 2;
    let counted = trials - t.chain_overflow;
    let (w95, w99) = (wilson(t.successes, trials, Z95), wilson(t.successes, trials, Z99));
    MonteCarloReport {
        algorithm: options.algorithm,
        r,
        seed,
        p,
        trials,
        successes: t.successes,
        estimate: t.successes as f64 / nf,
        wilson95_low: w95.0,
        wilson95_high: w95.1,
        wilson99_low: w99.0,
        wilson99_high: w99.1,
        conflicting_pairs_total: pairs.then_some(t.pairs),
        trials_with_conflicting_pair: pairs.then_some(t.trials_with_pair),
        mean_conflicting_pairs: pairs.then(|| t.pairs as f64 / nf),
        conflicts_b: interval.then_some(t.interval[0]),
        conflicts_p: interval.then_some(t.interval[1]),
        conflicts_r: interval.then_some(t.interval[2]),
        conflicting_chains_total: chains.then_some(t.chains),
        mean_conflicting_chains: (chains && counted > 0).then(|| t.chains as f64 / counted as f64),
        chain_overflow_trials: t.chain_overflow,
        short_edges_total: traced.then_some(t.short),
        mean_short_edges: traced.then(|| t.short as f64 / nf),
        invariant_violations: t.violations,
    }
}
