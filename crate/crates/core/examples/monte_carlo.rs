//! Seeded parallel Monte Carlo against the exact oracle.

use hypercolor::oracle::{greedy_success_exact, DEFAULT_ORACLE_BUDGET};
use hypercolor::workbench::{fixed_suite, monte_carlo, Algorithm, McOptions};

fn main() -> hypercolor::Result<()> {
    let greedy = McOptions { count_chains: true, ..McOptions::default() };
    let equitable = McOptions { algorithm: Algorithm::Equitable, ..McOptions::default() };
    for inst in fixed_suite().iter().skip(12).take(10) {
        let h = &inst.hypergraph;
        let exact = greedy_success_exact(h, inst.r, DEFAULT_ORACLE_BUDGET)?.probability_f64();
        let mc = monte_carlo(h, inst.r, 10_000, 42, None, &greedy)?;
        let eq = monte_carlo(h, inst.r, 10_000, 42, None, &equitable)?;
        println!(
            "{:<28} exact {exact:.4}  greedy {:.4} [{:.4}, {:.4}]  equitable {:.4}  pairs/trial {:.3}",
            inst.name,
            mc.estimate,
            mc.wilson99_low,
            mc.wilson99_high,
            eq.estimate,
            mc.mean_conflicting_pairs.unwrap_or(0.0)
        );
    }
    Ok(())
}
