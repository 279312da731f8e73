use serde::{Deserialize, Serialize};

use super::{golden_min, largest_feasible};
use crate::error::{Error, Result};

/// `k (1 - p)^n + k^2 p`: bound on the probability that some conflicting
/// pair exists in an n-uniform hypergraph with `k 2^(n-1)` edges.
pub fn rs_bound(k: f64, p: f64, n: f64) -> f64 {
    k * (n * (-p).ln_1p()).exp() + k * k * p
}

/// `rs_bound` at `k_n = c sqrt(n / ln n)` and `p_n = ln(n / k_n) / n`.
pub fn scaled_rs_bound(c: f64, n: f64) -> f64 {
    let k = c * (n / n.ln()).sqrt();
    let p = (n / k).ln() / n;
    rs_bound(k, p, n)
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct POptimum {
    /// `(p, bound)` at `p = ln(n / k) / n`, when that lies in `(0, 1)`.
    pub closed_form: Option<(f64, f64)>,
    /// `(p, bound)` at the numeric minimizer over `(0, 1)`.
    pub numeric: (f64, f64),
}

impl POptimum {
    pub fn best(&self) -> (f64, f64) {
        match self.closed_form {
            Some(cf) if cf.1 < self.numeric.1 => cf,
            _ => self.numeric,
        }
    }
}

pub fn optimize_p(k: f64, n: f64) -> Result<POptimum> {
    if !(k > 0.0) || !(n >= 1.0) {
        return Err(Error::InvalidParameter(format!("optimize_p needs k > 0 and n >= 1, got k={k}, n={n}")));
    }
    let closed_form = (k < n)
        .then(|| (n / k).ln() / n)
        .filter(|p| *p > 0.0 && *p < 1.0)
        .map(|p| (p, rs_bound(k, p, n)));
    // the bound is convex in p
    let numeric = golden_min(|p| rs_bound(k, p, n), 0.0, 1.0, 1e-12);
    Ok(POptimum { closed_form, numeric })
}

/// Largest `k` such that `min_p rs_bound(k, p, n) < 1`.
pub fn max_k_2col(n: f64) -> Result<f64> {
    if !(n >= 2.0) {
        return Err(Error::InvalidParameter(format!("max_k_2col needs n >= 2, got {n}")));
    }
    largest_feasible(|k| optimize_p(k, n).map(|o| o.best().1 < 1.0).unwrap_or(false), 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rs_bound_examples() {
        assert_eq!(rs_bound(1.0, 0.0, 5.0), 1.0);
        assert!((rs_bound(2.0, 0.5, 2.0) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn rs_bound_dominates_each_term() {
        for &(k, p, n) in &[(0.3, 0.1, 10.0), (5.0, 0.02, 100.0), (40.0, 1e-4, 1e4)] {
            let b = rs_bound(k, p, n);
            assert!(b >= k * (1.0 - p).powf(n));
            assert!(b >= k * k * p);
        }
    }

    #[test]
    fn scaled_bound_approaches_limit_slowly() {
        // decreasing toward c^2/2 = 0.98, but the gap shrinks like ln ln n / ln n
        let v: Vec<f64> = [1e4, 1e5, 1e6, 1e12, 1e100, 1e300]
            .iter()
            .map(|&n| scaled_rs_bound(1.4, n))
            .collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
        assert!((v[2] - 1.2604).abs() < 1e-3, "{}", v[2]);
        let gaps: Vec<f64> = v.iter().map(|x| x - 0.98).collect();
        assert!(gaps.iter().all(|&g| g > 0.0));
        assert!(gaps[5] < 0.02, "{}", v[5]);
    }

    #[test]
    fn numeric_minimum_beats_closed_form() {
        for &(k, n) in &[(0.5, 10.0), (2.0, 20.0), (5.0, 100.0), (30.0, 1e4), (376.0, 1e6)] {
            let o = optimize_p(k, n).unwrap();
            let (_, cf) = o.closed_form.unwrap();
            assert!(o.numeric.1 <= cf + 1e-12, "k={k} n={n}");
            assert_eq!(o.best().1, o.numeric.1.min(cf));
        }
        assert!(optimize_p(50.0, 10.0).unwrap().closed_form.is_none());
        assert!(optimize_p(0.0, 10.0).is_err());
    }

    #[test]
    fn numeric_optimum_is_stationary() {
        let (k, n) = (5.0, 100.0);
        let (p, _) = optimize_p(k, n).unwrap().numeric;
        let h = 1e-6;
        let fd = (rs_bound(k, p + h, n) - rs_bound(k, p - h, n)) / (2.0 * h);
        assert!(fd.abs() < 1e-5, "{fd}");
        let analytic = -k * n * (1.0 - p).powf(n - 1.0) + k * k;
        assert!(analytic.abs() < 1e-4, "{analytic}");
    }

    #[test]
    fn max_k_2col_n2_matches_grid_scan() {
        let k = max_k_2col(2.0).unwrap();
        assert!(k >= 1.0);
        // independent scan over (k, p)
        let feasible = |k: f64| (1..100_000).any(|i| {
            let p = i as f64 / 100_000.0;
            k * (1.0 - p) * (1.0 - p) + k * k * p < 1.0
        });
        assert!(feasible(k - 1e-4));
        assert!(!feasible(k + 1e-4));
        // minimizing by hand: p = 1 - k/2 gives k^2 - k^3/4 = 1
        assert!((k * k - k * k * k / 4.0 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn max_k_2col_is_monotone_and_self_consistent() {
        let mut prev = 0.0;
        for n in (10..=1000).step_by(10) {
            let k = max_k_2col(n as f64).unwrap();
            assert!(k >= prev, "n={n}");
            assert!(optimize_p(k, n as f64).unwrap().best().1 < 1.0);
            prev = k;
        }
    }
}
