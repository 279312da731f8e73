//! A full experiment written to a directory: CSV, JSON and an SVG plot.

use hypercolor::workbench::{run_experiment, Algorithm, ExperimentConfig, GeneratorSpec, InstanceSource, OutputSpec};

fn main() -> hypercolor::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "target/experiment-example".into());
    let instances = (3..=6)
        .map(|n| InstanceSource::Generator(GeneratorSpec::Random { m: 2 * n + 2, n, edges: 2 * n, seed: n as u64 }))
        .collect();
    let config = ExperimentConfig {
        name: "growing-n".into(),
        instances,
        r: 2,
        trials: 5_000,
        seed: 7,
        p: None,
        algorithms: vec![Algorithm::Greedy, Algorithm::TwoPhase, Algorithm::Equitable],
        count_chains: false,
        oracle: true,
        bounds: true,
        chain_ceiling: None,
        oracle_budget: None,
        threads: None,
        output: OutputSpec { dir: Some(dir.clone().into()), csv: true, json: true, plot: true },
    };
    let report = run_experiment(&config)?;
    for row in &report.rows {
        println!(
            "{:<22} {:?}: estimate {:.4}, exact {:?}, colorable {:?}",
            row.instance, row.algorithm, row.mc_estimate, row.oracle_exact, row.oracle
        );
    }
    println!("violations: {:?}", report.violations);
    println!("reports in {dir}");
    Ok(())
}
