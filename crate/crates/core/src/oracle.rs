//! Exhaustive ground truth for small instances.
//!
//! Every search is bounded by an explicit budget and fails with
//! [`Error::BudgetExceeded`] instead of falling back to sampling.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::GreedyRunner;
use crate::hypergraph::{Coloring, Hypergraph};

pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingStatistics {
    pub total_orderings: u64,
    pub proper_orderings: u64,
    pub success_probability: Ratio<u64>,
}

impl OrderingStatistics {
    pub fn probability_f64(&self) -> f64 {
        self.proper_orderings as f64 / self.total_orderings as f64
    }
}

fn budget_error(what: &'static str, needed: impl ToString, budget: u64) -> Error {
    Error::BudgetExceeded { what, needed: needed.to_string(), budget }
}

fn check_r(r: u32) -> Result<()> {
    if !(1..=64).contains(&r) {
        return Err(Error::InvalidParameter(format!("oracle supports 1 <= r <= 64, got {r}")));
    }
    Ok(())
}

/// `r^v` if it fits in a `u128`.
fn power(r: u32, v: usize) -> Option<u128> {
    (r as u128).checked_pow(u32::try_from(v).ok()?)
}

struct Backtrack<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    order: Vec<usize>,
    colors: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    /// Tries to extend the partial coloring from position `depth` of `order`.
    /// `domains[v]` has bit `c - 1` set when color `c` is still allowed.
    fn search(&mut self, depth: usize, domains: &[u64]) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(budget_error("backtracking nodes", self.nodes, self.budget));
        }
        let v = self.order[depth];
        let mut options = domains[v];
        while options != 0 {
            let c = options.trailing_zeros() + 1;
            options &= options - 1;
            self.colors[v] = c;
            if let Some(next) = self.propagate(v, domains) {
                if self.search(depth + 1, &next)? {
                    return Ok(true);
                }
            }
        }
        self.colors[v] = 0;
        Ok(false)
    }

    /// Domains after coloring `v`, or `None` on a contradiction: a completed
    /// monochromatic edge, or an edge with one open vertex whose every
    /// allowed color would complete it.
    fn propagate(&self, v: usize, domains: &[u64]) -> Option<Vec<u64>> {
        let mut next = domains.to_vec();
        for &e in &self.incidence[v] {
            let edge = self.h.edge(e);
            let c = self.colors[v];
            let mut open = None;
            let mut open_count = 0;
            let mut uniform = true;
            for &u in edge {
                match self.colors[u] {
                    0 => {
                        open_count += 1;
                        open = Some(u);
                    }
                    cu if cu != c => uniform = false,
                    _ => {}
                }
            }
            if !uniform {
                continue;
            }
            match (open_count, open) {
                (0, _) => return None,
                (1, Some(u)) => {
                    next[u] &= !(1u64 << (c - 1));
                    if next[u] == 0 {
                        return None;
                    }
                }
                _ => {}
            }
        }
        Some(next)
    }
}

/// A proper r-coloring if one exists. Budget counts search nodes.
pub fn is_r_colorable(h: &Hypergraph, r: u32, budget: u64) -> Result<Option<Coloring>> {
    check_r(r)?;
    let v = h.vertex_count();
    if v > 32 && power(r, v).is_none_or(|p| p > budget as u128) {
        return Err(budget_error("colorings r^|V|", format!("{r}^{v}"), budget));
    }
    if h.edges().iter().any(|e| e.len() == 1) {
        return Ok(None);
    }
    let incidence = h.incidence();
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(incidence[u].len()));
    let full = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    let mut bt = Backtrack { h, incidence, order, colors: vec![0; v], nodes: 0, budget };
    if bt.search(0, &vec![full; v])? {
        Ok(Some(Coloring::new(r, bt.colors)?))
    } else {
        Ok(None)
    }
}

/// Exact number of proper r-colorings; requires `r^|V| <= budget`.
pub fn count_proper_colorings(h: &Hypergraph, r: u32, budget: u64) -> Result<u128> {
    check_r(r)?;
    let v = h.vertex_count();
    match power(r, v) {
        Some(p) if p <= budget as u128 => {}
        _ => return Err(budget_error("colorings r^|V|", format!("{r}^{v}"), budget)),
    }
    // edges checked when their largest vertex is colored
    let mut closing = vec![Vec::new(); v];
    for (i, e) in h.edges().iter().enumerate() {
        if let Some(&m) = e.iter().max() {
            closing[m].push(i);
        }
    }
    fn go(h: &Hypergraph, closing: &[Vec<usize>], colors: &mut Vec<u32>, r: u32) -> u128 {
        let v = colors.len();
        if v == closing.len() {
            return 1;
        }
        let mut total = 0;
        for c in 1..=r {
            colors.push(c);
            let mono = closing[v]
                .iter()
                .any(|&e| h.edge(e).iter().all(|&u| colors[u] == c));
            if !mono {
                total += go(h, closing, colors, r);
            }
            colors.pop();
        }
        total
    }
    Ok(go(h, &closing, &mut Vec::with_capacity(v), r))
}

/// Rearranges `xs` into the next permutation in lexicographic order;
/// returns false (leaving `xs` sorted) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

fn factorial(v: usize) -> Option<u64> {
    (1..=v as u64).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

/// Runs the greedy rule along every vertex order. The greedy outcome depends
/// on birth times only through the order they induce, so the proper fraction
/// is the exact success probability.
pub fn greedy_success_exact(h: &Hypergraph, r: u32, budget: u64) -> Result<OrderingStatistics> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("greedy needs r >= 2, got {r}")));
    }
    let v = h.vertex_count();
    let total = match factorial(v) {
        Some(t) if t <= budget => t,
        _ => return Err(budget_error("orderings |V|!", format!("{v}!"), budget)),
    };
    let proper: u64 = if v == 0 {
        1
    } else {
        (0..v)
            .into_par_iter()
            .map(|first| {
                let mut runner = GreedyRunner::new(h, r);
                let mut rest: Vec<usize> = (0..v).filter(|&u| u != first).collect();
                let mut order = Vec::with_capacity(v);
                let mut count = 0u64;
                loop {
                    order.clear();
                    order.push(first);
                    order.extend_from_slice(&rest);
                    if runner.succeeds(&order) {
                        count += 1;
                    }
                    if !next_permutation(&mut rest) {
                        break;
                    }
                }
                count
            })
            .sum()
    };
    Ok(OrderingStatistics {
        total_orderings: total,
        proper_orderings: proper,
        success_probability: Ratio::new(proper, total),
    })
}
