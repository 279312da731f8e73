//! Exact colorability, coloring counts and greedy success probabilities.

use hypercolor::oracle::{count_proper_colorings, greedy_success_exact, is_r_colorable, DEFAULT_ORACLE_BUDGET};
use hypercolor::workbench::fixed_suite;

fn main() -> hypercolor::Result<()> {
    let budget = DEFAULT_ORACLE_BUDGET;
    for inst in fixed_suite().iter().take(12) {
        let h = &inst.hypergraph;
        let colorable = is_r_colorable(h, inst.r, budget)?;
        let count = count_proper_colorings(h, inst.r, budget)?;
        let greedy = greedy_success_exact(h, inst.r, budget)?;
        println!(
            "{:<14} r={} colorable={:<5} colorings={:<5} greedy={} ({:.4})",
            inst.name,
            inst.r,
            colorable.is_some(),
            count,
            greedy.success_probability,
            greedy.probability_f64()
        );
    }
    Ok(())
}
