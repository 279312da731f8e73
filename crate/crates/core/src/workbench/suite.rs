use serde::{Deserialize, Serialize};

use super::generate::{binomial, gen_complete_uniform, gen_fano, gen_random_uniform};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteInstance {
    pub name: String,
    pub r: u32,
    pub hypergraph: Hypergraph,
}

fn named(name: impl Into<String>, r: u32, h: Hypergraph) -> SuiteInstance {
    SuiteInstance { name: name.into(), r, hypergraph: h }
}

fn cycle(len: usize) -> Hypergraph {
    Hypergraph::new(len, (0..len).map(|i| {
        let mut e = vec![i, (i + 1) % len];
        e.sort_unstable();
        e
    }).collect())
}

/// The fixed 40-instance benchmark, every instance on at most 8 vertices:
/// twelve named families followed by 28 seeded random uniform hypergraphs.
pub fn fixed_suite() -> Vec<SuiteInstance> {
    let complete = |m, n| gen_complete_uniform(m, n).expect("small complete hypergraph");
    let mut suite = vec![
        named("single-edge-3", 2, Hypergraph::new(3, vec![vec![0, 1, 2]])),
        named("path-3", 2, Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]])),
        named("triangle-r2", 2, cycle(3)),
        named("triangle-r3", 3, cycle(3)),
        named("fano-r2", 2, gen_fano()),
        named("fano-r3", 3, gen_fano()),
        named("k4-3-r2", 2, complete(4, 3)),
        named("k5-3-r2", 2, complete(5, 3)),
        named("k6-3-r3", 3, complete(6, 3)),
        named("k4-2-r3", 3, complete(4, 2)),
        named("c5-r2", 2, cycle(5)),
        named("c5-r3", 3, cycle(5)),
    ];
    for i in 0..28usize {
        let n = [2, 3, 3, 4][i % 4];
        let m = 5 + (i / 4) % 4;
        let cap = binomial(m, n).unwrap() as usize;
        let edges = if n == 4 { 10 + i % 9 } else { 4 + (i * 5) % 9 }.min(cap);
        let r = if n == 2 || i % 3 == 2 { 3 } else { 2 };
        let seed = 1000 + i as u64;
        let h = gen_random_uniform(m, n, edges, seed).expect("feasible random instance");
        suite.push(named(format!("random-{m}-{n}-{edges}-s{seed}-r{r}"), r, h));
    }
    suite
}
