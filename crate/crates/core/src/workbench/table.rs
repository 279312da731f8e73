use serde::{Deserialize, Serialize};

use crate::bounds::{
    default_short_edge_p, expected_conflicting_chains, expected_short_edges, ln_chain_conflict_probability_bound,
    ln_prob_edge_short_bound, max_degree_lll, max_k_2col, max_k_rcol, optimize_p, LllParams,
};

/// One `(n, r)` cell of the bound comparison. Failed computations leave
/// their column empty and are listed in `errors`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub r: u32,
    /// `sqrt(n / ln n)`
    pub ref_2col: f64,
    /// `(n / ln n)^((r-1)/r)`
    pub ref_rcol: f64,
    pub max_k_2col: Option<f64>,
    pub ratio_2col: Option<f64>,
    pub max_k_rcol: Option<f64>,
    pub ratio_rcol: Option<f64>,
    pub lll_ln_d: Option<f64>,
    pub lll_log10_d: Option<f64>,
    pub lll_a: Option<f64>,
    pub lll_b: Option<f64>,
    /// `log10(D / (ref_rcol * r^n))`
    pub lll_log10_ratio: Option<f64>,
    pub errors: String,
}

impl BoundRow {
    pub fn compute(n: u32, r: u32) -> BoundRow {
        let nf = n as f64;
        let lnn = nf.ln();
        let ref_2col = (nf / lnn).sqrt();
        let ref_rcol = (nf / lnn).powf((r as f64 - 1.0) / r as f64);
        let mut errors = Vec::new();
        let max_k_2col = if r == 2 {
            max_k_2col(nf).map_err(|e| errors.push(format!("max_k_2col: {e}"))).ok()
        } else {
            None
        };
        let max_k_rcol = max_k_rcol(nf, r, None).map(|b| b.k).map_err(|e| errors.push(format!("max_k_rcol: {e}"))).ok();
        let lll = max_degree_lll(n, r).map_err(|e| errors.push(format!("max_degree_lll: {e}"))).ok();
        let lll_log10_d = lll.as_ref().map(|c| c.log10_d());
        BoundRow {
            n,
            r,
            ref_2col,
            ref_rcol,
            max_k_2col,
            ratio_2col: max_k_2col.map(|k| k / ref_2col),
            max_k_rcol,
            ratio_rcol: max_k_rcol.map(|k| k / ref_rcol),
            lll_ln_d: lll.as_ref().map(|c| c.ln_d),
            lll_log10_d,
            lll_a: lll.as_ref().map(|c| c.a),
            lll_b: lll.as_ref().map(|c| c.b),
            lll_log10_ratio: lll_log10_d.map(|d| d - ref_rcol.log10() - nf * (r as f64).log10()),
            errors: errors.join("; "),
        }
    }

    /// Re-evaluates each reported value against its defining inequality.
    pub fn verify(&self) -> bool {
        let nf = self.n as f64;
        let k2 = self
            .max_k_2col
            .is_none_or(|k| optimize_p(k, nf).is_ok_and(|o| o.best().1 < 1.0));
        let p = default_short_edge_p(nf);
        let kr = self.max_k_rcol.is_none_or(|k| {
            expected_short_edges(k, nf, self.r, p) + expected_conflicting_chains(k, nf, self.r, p) < 1.0
        });
        let lll = match (self.lll_ln_d, self.lll_a, self.lll_b) {
            (Some(ln_d), Some(a), Some(b)) => {
                let ln_p1 = ln_prob_edge_short_bound(nf, (1.0 - p) / self.r as f64);
                let ln_p2 = ln_chain_conflict_probability_bound(nf, self.r, p);
                LllParams::with_exponents(self.r, ln_d, ln_p1, ln_p2, a, b)
                    .check()
                    .is_ok_and(|c| c.feasible)
            }
            _ => true,
        };
        k2 && kr && lll
    }
}

pub fn bound_table(n_values: &[u32], r_values: &[u32]) -> Vec<BoundRow> {
    let mut rows = Vec::with_capacity(n_values.len() * r_values.len());
    for &r in r_values {
        for &n in n_values {
            rows.push(BoundRow::compute(n, r));
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_verify_and_are_deterministic() {
        let t = bound_table(&[2, 10, 100, 1000], &[2, 3]);
        assert_eq!(t.len(), 8);
        assert!(t.iter().all(BoundRow::verify));
        assert_eq!(t, bound_table(&[2, 10, 100, 1000], &[2, 3]));
        let n2 = &t[0];
        assert!(n2.lll_log10_d.is_none() && n2.errors.contains("max_degree_lll"));
        assert!(n2.max_k_2col.is_some());
        assert!(t[4].max_k_2col.is_none());
    }

    #[test]
    fn two_color_ratio_band() {
        for n in [1_000, 10_000, 100_000, 1_000_000] {
            let row = BoundRow::compute(n, 2);
            let ratio = row.ratio_2col.unwrap();
            assert!((1.0..=1.5).contains(&ratio), "n={n}: {ratio}");
        }
    }
}
