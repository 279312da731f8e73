//! One run of the greedy rule and its variants on a small instance.

use hypercolor::conflict::{conflicting_chains, conflicting_pairs, DEFAULT_CHAIN_CEILING};
use hypercolor::greedy::{equitable_partition_color, greedy_color, sample_birth_times, two_phase_color};
use hypercolor::workbench::gen_fano;

fn main() -> hypercolor::Result<()> {
    let h = gen_fano();
    for seed in 0..3 {
        let t = sample_birth_times(h.vertex_count(), seed);
        let trace = greedy_color(&h, &t, 2)?;
        println!("seed {seed}: order {:?}", trace.processing_order);
        println!("  colors {:?}, forced {:?}", trace.coloring.colors(), trace.forced_vertices);
        let mono = h.is_proper(&trace.coloring)?.monochromatic;
        let chains = conflicting_chains(&h, &t, 2, DEFAULT_CHAIN_CEILING)?;
        println!("  monochromatic {mono:?}, conflicting pairs {:?}", conflicting_pairs(&h, &t)?);
        for e in mono {
            // every failure is explained by a conflicting pair ending in it
            assert!(chains.iter().any(|c| c.last_edge() == e));
        }
        let two = two_phase_color(&h, &t, 2, 0.3)?;
        println!("  two-phase colors {:?}", two.coloring.colors());
    }
    let eq = equitable_partition_color(&h, 5, 2)?;
    println!("equitable partition {:?}, classes {:?}", eq.colors(), eq.class_sizes());
    Ok(())
}
