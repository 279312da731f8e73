use std::collections::BTreeSet;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng;

pub const DEFAULT_EDGE_BUDGET: u64 = 1_000_000;

/// `C(m, n)`, or `None` on overflow.
pub fn binomial(m: usize, n: usize) -> Option<u64> {
    if n > m {
        return Some(0);
    }
    let n = n.min(m - n);
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// All n-subsets of `0..m` in lexicographic order.
fn combinations(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    if n > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < m - n + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if n < 2 || n > m {
        return Err(Error::InvalidParameter(format!("need 2 <= n <= m, got m={m}, n={n}")));
    }
    Ok(())
}

pub fn gen_complete_uniform(m: usize, n: usize) -> Result<Hypergraph> {
    gen_complete_uniform_with_budget(m, n, DEFAULT_EDGE_BUDGET)
}

/// All `C(m, n)` n-subsets of `m` vertices, failing when that exceeds `budget`.
pub fn gen_complete_uniform_with_budget(m: usize, n: usize, budget: u64) -> Result<Hypergraph> {
    check_shape(m, n)?;
    match binomial(m, n) {
        Some(c) if c <= budget => Ok(Hypergraph::new(m, combinations(m, n))),
        _ => Err(Error::BudgetExceeded { what: "edges C(m, n)", needed: format!("C({m}, {n})"), budget }),
    }
}

/// `edge_count` distinct uniformly random n-subsets of `m` vertices.
pub fn gen_random_uniform(m: usize, n: usize, edge_count: usize, seed: u64) -> Result<Hypergraph> {
    check_shape(m, n)?;
    let total = binomial(m, n);
    if total.is_some_and(|c| (edge_count as u64) > c) {
        return Err(Error::InvalidParameter(format!(
            "{edge_count} distinct edges requested but C({m}, {n}) = {}",
            total.unwrap()
        )));
    }
    if edge_count as u64 > DEFAULT_EDGE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "edges",
            needed: edge_count.to_string(),
            budget: DEFAULT_EDGE_BUDGET,
        });
    }
    let mut rng = rng::seeded(seed);
    let edges = match total {
        Some(c) if c <= DEFAULT_EDGE_BUDGET => {
            let all = combinations(m, n);
            let picked = index::sample(&mut rng, all.len(), edge_count);
            picked.into_iter().map(|i| all[i].clone()).collect()
        }
        _ => {
            let mut seen = BTreeSet::new();
            let mut edges = Vec::with_capacity(edge_count);
            while edges.len() < edge_count {
                let mut e = index::sample(&mut rng, m, n).into_vec();
                e.sort_unstable();
                if seen.insert(e.clone()) {
                    edges.push(e);
                }
            }
            edges
        }
    };
    Ok(Hypergraph::new(m, edges))
}

pub fn gen_fano() -> Hypergraph {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    Hypergraph::new(7, lines.iter().map(|l| l.to_vec()).collect())
}

/// A generator call, as named in experiment configs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Complete { m: usize, n: usize },
    Random { m: usize, n: usize, edges: usize, seed: u64 },
    Fano,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Hypergraph> {
        match *self {
            GeneratorSpec::Complete { m, n } => gen_complete_uniform(m, n),
            GeneratorSpec::Random { m, n, edges, seed } => gen_random_uniform(m, n, edges, seed),
            GeneratorSpec::Fano => Ok(gen_fano()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::Complete { m, n } => format!("complete({m},{n})"),
            GeneratorSpec::Random { m, n, edges, seed } => format!("random({m},{n},{edges},{seed})"),
            GeneratorSpec::Fano => "fano".into(),
        }
    }
}
