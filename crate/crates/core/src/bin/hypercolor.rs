use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hypercolor::bounds::max_degree_lll;
use hypercolor::conflict::conflicting_pairs;
use hypercolor::greedy::{equitable_partition_color, greedy_color, sample_birth_times, two_phase_color};
use hypercolor::oracle::{count_proper_colorings, greedy_success_exact, is_r_colorable};
use hypercolor::workbench::{
    bound_table, gen_complete_uniform, gen_fano, gen_random_uniform, monte_carlo, run_experiment, to_csv_string,
    Algorithm, Budgets, ExperimentConfig, McOptions,
};
use hypercolor::{format, Error, Result};

#[derive(Parser)]
#[command(name = "hypercolor", version, about = "Random greedy coloring of uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Complete,
    Random,
    Fano,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated hypergraph in the text format
    Gen {
        kind: Kind,
        #[arg(long, default_value_t = 7)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color one instance with one birth-time sample
    Color {
        file: PathBuf,
        #[arg(long = "r", default_value_t = 2)]
        r: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "greedy")]
        algorithm: Algorithm,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the success probability
    Mc {
        file: PathBuf,
        #[arg(long = "r", default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value = "greedy")]
        algorithm: Algorithm,
        /// Count conflicting r-chains in every trial
        #[arg(long)]
        chains: bool,
        #[arg(long)]
        chain_ceiling: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact colorability, coloring count and greedy success probability
    Oracle {
        file: PathBuf,
        #[arg(long = "r", default_value_t = 2)]
        r: u32,
        #[arg(long)]
        oracle_budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of the analytic bounds
    Bounds {
        #[arg(long, value_delimiter = ',', default_values_t = [10u32, 100, 1000])]
        n: Vec<u32>,
        #[arg(long = "r", value_delimiter = ',', default_values_t = [2u32, 3])]
        r: Vec<u32>,
        /// Print only the degree certificate for a single (n, r)
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment config
    Experiment {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long = "r")]
        r: Option<u32>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        chain_ceiling: Option<u64>,
        #[arg(long)]
        oracle_budget: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Directory for the report files
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { kind, m, n, edges, seed, out } => {
            let h = match kind {
                Kind::Complete => gen_complete_uniform(m, n)?,
                Kind::Random => gen_random_uniform(m, n, edges, seed)?,
                Kind::Fano => gen_fano(),
            };
            emit(&format::to_text(&h), out.as_deref())
        }
        Command::Color { file, r, seed, algorithm, p, format: fmt, out } => {
            let h = format::read_file(&file)?;
            let (coloring, forced, pairs) = match algorithm {
                Algorithm::Equitable => (equitable_partition_color(&h, seed, r)?, Vec::new(), None),
                _ => {
                    let t = sample_birth_times(h.vertex_count(), seed);
                    let trace = match algorithm {
                        Algorithm::TwoPhase => two_phase_color(&h, &t, r, p.unwrap_or(0.5))?,
                        _ => greedy_color(&h, &t, r)?,
                    };
                    (trace.coloring, trace.forced_vertices, Some(conflicting_pairs(&h, &t)?))
                }
            };
            let mono = h.is_proper(&coloring)?.monochromatic;
            if algorithm == Algorithm::Greedy && mono.iter().any(|&e| coloring.color(h.edge(e)[0]) != r) {
                return Err(Error::InvariantViolation("a monochromatic edge has a color other than r".into()));
            }
            let text = if fmt == Format::Json {
                json(&serde_json::json!({
                    "colors": coloring.colors(),
                    "proper": mono.is_empty(),
                    "monochromatic": mono,
                    "forced": forced,
                    "conflicting_pairs": pairs,
                }))?
            } else {
                let colors: Vec<String> = coloring.colors().iter().map(u32::to_string).collect();
                format!(
                    "colors: {}\nproper: {}\nmonochromatic: {:?}\nforced: {:?}\nconflicting pairs: {}\n",
                    colors.join(" "),
                    mono.is_empty(),
                    mono,
                    forced,
                    pairs.map_or("-".into(), |p| format!("{p:?}")),
                )
            };
            emit(&text, out.as_deref())
        }
        Command::Mc { file, r, trials, seed, p, algorithm, chains, chain_ceiling, threads, format: fmt, out } => {
            let h = format::read_file(&file)?;
            let options = McOptions {
                algorithm,
                count_pairs: true,
                count_chains: chains,
                chain_ceiling: chain_ceiling.unwrap_or(Budgets::from_env()?.chain_ceiling),
                threads,
            };
            let report = monte_carlo(&h, r, trials, seed, p, &options)?;
            let text = match fmt {
                Format::Csv => to_csv_string(&[&report])?,
                _ => json(&report)?,
            };
            emit(&text, out.as_deref())?;
            if report.invariant_violations > 0 {
                return Err(Error::InvariantViolation(format!("{} trials broke a greedy invariant", report.invariant_violations)));
            }
            Ok(())
        }
        Command::Oracle { file, r, oracle_budget, format: fmt, out } => {
            let h = format::read_file(&file)?;
            let budget = oracle_budget.unwrap_or(Budgets::from_env()?.oracle_budget);
            let witness = is_r_colorable(&h, r, budget)?;
            let count = count_proper_colorings(&h, r, budget).ok();
            let greedy = if r >= 2 { greedy_success_exact(&h, r, budget).ok() } else { None };
            if count.is_some_and(|c| (c > 0) != witness.is_some()) {
                return Err(Error::InvariantViolation("colorability and coloring count disagree".into()));
            }
            if greedy.as_ref().is_some_and(|g| g.proper_orderings > 0) && witness.is_none() {
                return Err(Error::InvariantViolation("greedy succeeds on a non-colorable instance".into()));
            }
            let text = if fmt == Format::Json {
                json(&serde_json::json!({
                    "colorable": witness.is_some(),
                    "witness": witness.as_ref().map(|w| w.colors()),
                    "proper_colorings": count.map(|c| c.to_string()),
                    "greedy": greedy,
                }))?
            } else {
                let mut s = format!("colorable: {}\n", witness.is_some());
                if let Some(w) = &witness {
                    s += &format!("witness: {:?}\n", w.colors());
                }
                if let Some(c) = count {
                    s += &format!("proper colorings: {c}\n");
                }
                if let Some(g) = &greedy {
                    s += &format!("greedy success: {} ({}/{})\n", g.success_probability, g.proper_orderings, g.total_orderings);
                }
                s
            };
            emit(&text, out.as_deref())
        }
        Command::Bounds { n, r, certificate, format: fmt, out } => {
            if certificate {
                let cert = max_degree_lll(n[0], r[0])?;
                return emit(&json(&cert)?, out.as_deref());
            }
            let table = bound_table(&n, &r);
            if let Some(bad) = table.iter().find(|row| !row.verify()) {
                return Err(Error::InvariantViolation(format!("bound row n={} r={} fails its inequality", bad.n, bad.r)));
            }
            let text = match fmt {
                Format::Json => json(&table)?,
                _ => to_csv_string(&table)?,
            };
            emit(&text, out.as_deref())
        }
        Command::Experiment { config, seed, trials, r, p, chain_ceiling, oracle_budget, threads, out, plot, format: fmt } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.r = r.unwrap_or(cfg.r);
            cfg.p = p.or(cfg.p);
            cfg.chain_ceiling = chain_ceiling.or(cfg.chain_ceiling);
            cfg.oracle_budget = oracle_budget.or(cfg.oracle_budget);
            cfg.threads = threads.or(cfg.threads);
            cfg.output.dir = out.or(cfg.output.dir);
            cfg.output.plot |= plot;
            let report = run_experiment(&cfg)?;
            match &cfg.output.dir {
                Some(dir) => {
                    let files = report.files(dir);
                    eprintln!("wrote {} and {}", files.csv.display(), files.json.display());
                }
                None => {
                    let text = match fmt {
                        Format::Csv => to_csv_string(&report.rows)?,
                        _ => json(&report)?,
                    };
                    print!("{text}");
                }
            }
            if !report.violations.is_empty() {
                return Err(Error::InvariantViolation(report.violations.join("; ")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
