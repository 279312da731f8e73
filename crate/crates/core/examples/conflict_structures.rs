//! Dangerous pairs, r-chains and their conflicting subsets.

use hypercolor::conflict::{
    classify_conflicts_by_interval, conflicting_chains, dangerous_pairs, enumerate_chains, link_interval, short_edges,
    IntervalPartition, DEFAULT_CHAIN_CEILING,
};
use hypercolor::greedy::sample_birth_times;
use hypercolor::workbench::gen_random_uniform;

fn main() -> hypercolor::Result<()> {
    let h = gen_random_uniform(12, 3, 20, 4)?;
    println!("{} dangerous pairs", dangerous_pairs(&h).len());
    for r in 2..=3 {
        println!("{} {r}-chains", enumerate_chains(&h, r, DEFAULT_CHAIN_CEILING)?.len());
    }

    let t = sample_birth_times(h.vertex_count(), 9);
    let p = 0.3;
    let part = IntervalPartition::new(p)?;
    let counts = classify_conflicts_by_interval(&h, &t, &part)?;
    println!("conflicting pairs by interval: B {} P {} R {}", counts.b, counts.p, counts.r);
    println!("short edges at p = {p}: {:?}", short_edges(&h, &t, 3, p)?);
    for chain in conflicting_chains(&h, &t, 3, DEFAULT_CHAIN_CEILING)? {
        println!("conflicting 3-chain {:?} through {:?}", chain.edges, chain.links);
    }
    for i in 1..3 {
        let (lo, hi) = link_interval(i, 3, p);
        println!("link {i} must be born in [{lo:.3}, {hi:.3}] when no edge is short");
    }
    Ok(())
}
