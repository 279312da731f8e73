use serde::{Deserialize, Serialize};

use super::{largest_feasible, ln_factorial};
use crate::error::{Error, Result};

/// `2 ln(n) / n`, the interval parameter used for r-coloring.
pub fn default_short_edge_p(n: f64) -> f64 {
    2.0 * n.ln() / n
}

/// `ln` of `k r^(n-2) n ((1-p)/r)^(n-1)`.
pub fn ln_expected_short_edges(k: f64, n: f64, r: u32, p: f64) -> f64 {
    let ln_r = (r as f64).ln();
    k.ln() + (n - 2.0) * ln_r + n.ln() + (n - 1.0) * ((-p).ln_1p() - ln_r)
}

/// Upper bound on the expected number of short edges among `k r^(n-2)`
/// edges: each edge is short with probability below `n L^(n-1)`,
/// `L = (1-p)/r`.
pub fn expected_short_edges(k: f64, n: f64, r: u32, p: f64) -> f64 {
    ln_expected_short_edges(k, n, r, p).exp()
}

/// `ln(n L^(n-1))`.
pub fn ln_prob_edge_short_bound(n: f64, length: f64) -> f64 {
    n.ln() + (n - 1.0) * length.ln()
}

/// Exact probability that the range of `n` independent uniforms on `[0, 1]`
/// is below `length`: `n L^(n-1) - (n-1) L^n`.
pub fn prob_edge_short_exact(n: u32, length: f64) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let l = length.clamp(0.0, 1.0);
    let nf = n as f64;
    l.powi(n as i32 - 1) * (nf - (nf - 1.0) * l)
}

/// `ln` of `p^(r-1) r^(-r(n-2))`.
pub fn ln_chain_conflict_probability_bound(n: f64, r: u32, p: f64) -> f64 {
    let rf = r as f64;
    (rf - 1.0) * p.ln() - rf * (n - 2.0) * rf.ln()
}

/// Upper bound on the probability that a fixed r-chain is conflicting with
/// no short edge.
pub fn chain_conflict_probability_bound(n: f64, r: u32, p: f64) -> f64 {
    ln_chain_conflict_probability_bound(n, r, p).exp()
}

/// `ln` of `(2/r!) (k r^(n-2))^r p^(r-1) r^(-r(n-2))`, which simplifies to
/// `(2/r!) k^r p^(r-1)`.
pub fn ln_expected_conflicting_chains(k: f64, _n: f64, r: u32, p: f64) -> f64 {
    let rf = r as f64;
    2f64.ln() - ln_factorial(r) + rf * k.ln() + (rf - 1.0) * p.ln()
}

pub fn expected_conflicting_chains(k: f64, n: f64, r: u32, p: f64) -> f64 {
    ln_expected_conflicting_chains(k, n, r, p).exp()
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RColorBound {
    pub k: f64,
    pub p: f64,
    pub short_edges: f64,
    pub conflicting_chains: f64,
}

impl RColorBound {
    pub fn total(&self) -> f64 {
        self.short_edges + self.conflicting_chains
    }
}

/// Largest `k` with expected short edges plus expected conflicting chains
/// below 1, at `p = 2 ln(n)/n` unless `p` is given.
pub fn max_k_rcol(n: f64, r: u32, p: Option<f64>) -> Result<RColorBound> {
    if r < 2 || !(n >= 2.0) {
        return Err(Error::InvalidParameter(format!("max_k_rcol needs n >= 2, r >= 2, got n={n}, r={r}")));
    }
    let p = p.unwrap_or_else(|| default_short_edge_p(n));
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1) at n = {n}")));
    }
    let eval = |k: f64| RColorBound {
        k,
        p,
        short_edges: expected_short_edges(k, n, r, p),
        conflicting_chains: expected_conflicting_chains(k, n, r, p),
    };
    let k = largest_feasible(|k| eval(k).total() < 1.0, 1e-12)?;
    Ok(eval(k))
}
