use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::stats::mean_and_se;
use crate::conflict::conflicting_pairs;
use crate::error::{Error, Result};
use crate::hypergraph::{BirthTimes, Hypergraph};
use crate::rng;

/// Conflicting pairs `(e, .)` for a fixed edge `e`, conditioned on the last
/// vertex of `e` being born at `x = (1 - p) / 2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalCheck {
    pub edge: usize,
    pub p: f64,
    pub trials: u64,
    pub mean: f64,
    pub std_error: f64,
    /// Exact conditional mean: the last vertex is uniform over `e`, and an
    /// edge `f` through it with `f ∩ e = {v}` conflicts with probability
    /// `(1 - x)^(|f| - 1)`.
    pub expected: f64,
    /// `k 2^(n-1) n^-1 ((1+p)/2)^(n-1)` with `k = |E| / 2^(n-1)`.
    pub closed_form_bound: f64,
    /// Whether every vertex of `e` lies in at most `|E| / n` other edges,
    /// the degree at which `expected <= closed_form_bound` is guaranteed.
    pub degree_condition: bool,
}

pub fn conditional_pair_check(h: &Hypergraph, edge: usize, p: f64, trials: u64, seed: u64) -> Result<ConditionalCheck> {
    if edge >= h.edge_count() {
        return Err(Error::InvalidParameter(format!("edge {edge} out of range")));
    }
    if !(p > 0.0 && p < 1.0) || trials < 2 {
        return Err(Error::InvalidParameter("need p in (0, 1) and at least 2 trials".into()));
    }
    let e = h.edge(edge).to_vec();
    let n = e.len();
    let x = (1.0 - p) / 2.0;
    let inc = h.incidence();
    let touching = |v: usize| {
        inc[v]
            .iter()
            .filter(|&&f| f != edge && h.edge(f).iter().filter(|u| e.contains(u)).count() == 1)
            .copied()
            .collect::<Vec<_>>()
    };
    let expected = e
        .iter()
        .map(|&v| touching(v).iter().map(|&f| (1.0 - x).powi(h.edge(f).len() as i32 - 1)).sum::<f64>())
        .sum::<f64>()
        / n as f64;
    let per_vertex_cap = h.edge_count() as f64 / n as f64;
    let degree_condition = e.iter().all(|&v| touching(v).len() as f64 <= per_vertex_cap);
    let closed_form_bound = per_vertex_cap * ((1.0 + p) / 2.0).powi(n as i32 - 1);

    let counts: Vec<f64> = (0..trials)
        .map(|i| {
            let mut rng = rng::trial_rng(seed, i);
            let mut times: Vec<f64> = (0..h.vertex_count()).map(|_| rng.random()).collect();
            let last = e[rng.random_range(0..n)];
            for &u in &e {
                times[u] = if u == last { x } else { x * rng.random::<f64>() };
            }
            let t = BirthTimes::from_raw(times);
            conflicting_pairs(h, &t).map(|pairs| pairs.iter().filter(|&&(a, _)| a == edge).count() as f64)
        })
        .collect::<Result<_>>()?;
    let (mean, std_error) = mean_and_se(&counts);
    Ok(ConditionalCheck { edge, p, trials, mean, std_error, expected, closed_form_bound, degree_condition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::generate::{gen_complete_uniform, gen_random_uniform};

    #[test]
    fn matches_exact_conditional_mean() {
        let h = gen_random_uniform(10, 3, 25, 8).unwrap();
        for edge in [0, 7] {
            let c = conditional_pair_check(&h, edge, 0.3, 20_000, 4).unwrap();
            assert!((c.mean - c.expected).abs() < 4.0 * c.std_error + 1e-12, "{c:?}");
        }
    }

    #[test]
    fn closed_form_holds_under_degree_condition() {
        let h = gen_complete_uniform(7, 3).unwrap();
        let c = conditional_pair_check(&h, 0, 0.2, 20_000, 1).unwrap();
        assert!(c.degree_condition);
        assert!(c.expected <= c.closed_form_bound);
        assert!(c.mean <= c.closed_form_bound + 4.0 * c.std_error);
    }
}
