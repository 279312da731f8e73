//! Analytic bounds behind the greedy algorithm, evaluated numerically.
//!
//! Anything with an exponent of order `n` or `D^r` is carried as a logarithm.
//! Uniformity `n` is taken as a real here so that limits can be probed at
//! sizes far beyond any instance.

mod beta;
mod lll;
mod r_color;
mod two_color;

pub use beta::{beta_nn, incomplete_beta_nn, pair_conflict_closed_form, pair_conflict_probability};
pub use lll::{lll_feasible, max_degree_lll, LllCertificate, LllCheck, LllParams, Weight};
pub use r_color::{
    chain_conflict_probability_bound, default_short_edge_p, expected_conflicting_chains, expected_short_edges,
    ln_chain_conflict_probability_bound, ln_expected_conflicting_chains, ln_expected_short_edges,
    ln_prob_edge_short_bound, max_k_rcol, prob_edge_short_exact, RColorBound,
};
pub use two_color::{max_k_2col, optimize_p, rs_bound, scaled_rs_bound, POptimum};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The symbols of the counting argument, validated together.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisParams {
    pub n: f64,
    pub r: u32,
    /// Edge-count coefficient: `k * 2^(n-1)` edges for two colors,
    /// `k * r^(n-2)` in general.
    pub k: f64,
    pub p: f64,
    /// Scale in `k_n = c * sqrt(n / ln n)`.
    pub c: f64,
}

impl AnalysisParams {
    pub fn new(n: f64, r: u32, k: f64, p: f64, c: f64) -> Result<Self> {
        let params = AnalysisParams { n, r, k, p, c };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if !(self.n >= 2.0) {
            return bad("n must be at least 2");
        }
        if self.r < 2 {
            return bad("r must be at least 2");
        }
        if !(self.k > 0.0) || !self.k.is_finite() {
            return bad("k must be positive");
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return bad("p must lie in (0, 1)");
        }
        if !(self.c > 0.0) {
            return bad("c must be positive");
        }
        Ok(())
    }

    pub fn rs_bound(&self) -> f64 {
        rs_bound(self.k, self.p, self.n)
    }

    pub fn expected_short_edges(&self) -> f64 {
        expected_short_edges(self.k, self.n, self.r, self.p)
    }

    pub fn expected_conflicting_chains(&self) -> f64 {
        expected_conflicting_chains(self.k, self.n, self.r, self.p)
    }
}

/// `ln(r!)`.
pub(crate) fn ln_factorial(r: u32) -> f64 {
    (2..=r).map(|i| (i as f64).ln()).sum()
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Largest `k` in `(0, inf)` with `feasible(k)`, for a predicate that is true
/// near zero and monotone. Returns a `k` for which the predicate holds.
pub(crate) fn largest_feasible(feasible: impl Fn(f64) -> bool, rel_tol: f64) -> Result<f64> {
    let mut hi = 1.0;
    let mut lo = 0.0;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Range("feasible region is unbounded".into()));
        }
    }
    if lo == 0.0 {
        lo = hi;
        while !feasible(lo) {
            lo /= 2.0;
            if lo < f64::MIN_POSITIVE {
                return Err(Error::Range("no feasible value found".into()));
            }
        }
        hi = lo * 2.0;
    }
    while hi - lo > rel_tol * lo {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(AnalysisParams::new(10.0, 2, 1.0, 0.5, 1.0).is_ok());
        assert!(AnalysisParams::new(1.0, 2, 1.0, 0.5, 1.0).is_err());
        assert!(AnalysisParams::new(10.0, 1, 1.0, 0.5, 1.0).is_err());
        assert!(AnalysisParams::new(10.0, 2, 0.0, 0.5, 1.0).is_err());
        assert!(AnalysisParams::new(10.0, 2, 1.0, 1.0, 1.0).is_err());
        assert!(AnalysisParams::new(10.0, 2, 1.0, 0.5, -1.0).is_err());
        let a = AnalysisParams::new(4.0, 3, 1.5, 0.2, 1.0).unwrap();
        assert_eq!(a.rs_bound(), rs_bound(1.5, 0.2, 4.0));
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, fx) = golden_min(|x| (x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn largest_feasible_brackets() {
        let k = largest_feasible(|k| k < 3.7, 1e-12).unwrap();
        assert!((k - 3.7).abs() < 1e-10 && k < 3.7);
        let k = largest_feasible(|k| k < 0.01, 1e-12).unwrap();
        assert!((k - 0.01).abs() < 1e-12);
    }
}
