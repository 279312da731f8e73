//! Local-lemma feasibility for the two event families (short edges and
//! conflicting r-chains), in log space.
//!
//! A weight `w` in `[0, 1)` is stored as `ln(-ln(1 - w))`. That makes
//! `(1 - w)^M = exp(-exp(ln M + ln(-ln(1 - w))))` exact to rounding even
//! when `w` is far below the smallest float and `M` far above the largest,
//! which is the regime of `y = 1 - exp(-b / (r D^r))`.

use serde::{Deserialize, Serialize};

use super::r_color::{default_short_edge_p, ln_chain_conflict_probability_bound, ln_prob_edge_short_bound};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    log_hazard: f64,
}

impl Weight {
    pub fn from_value(w: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&w) {
            return Err(Error::InvalidParameter(format!("weight {w} outside [0, 1)")));
        }
        Ok(Weight { log_hazard: (-(-w).ln_1p()).ln() })
    }

    /// Weight with `-ln(1 - w) = exp(ln_hazard)`, i.e. `w = 1 - exp(-exp(ln_hazard))`.
    pub fn from_ln_hazard(ln_hazard: f64) -> Self {
        Weight { log_hazard: ln_hazard }
    }

    pub fn ln_hazard(&self) -> f64 {
        self.log_hazard
    }

    /// `ln w`.
    pub fn ln_value(&self) -> f64 {
        let u = self.log_hazard.exp();
        if u < 1e-10 {
            // ln(1 - e^-u) = ln u - u/2 + O(u^2)
            self.log_hazard - u / 2.0
        } else {
            (-(-u).exp_m1()).ln()
        }
    }

    pub fn value(&self) -> f64 {
        -(-self.log_hazard.exp()).exp_m1()
    }

    /// `M ln(1 - w)` given `ln M`.
    pub fn ln_one_minus_pow(&self, ln_m: f64) -> f64 {
        -(ln_m + self.log_hazard).exp()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllParams {
    pub r: u32,
    /// `ln D`, where every edge meets at most `D` other edges.
    pub ln_d: f64,
    /// `ln P1`, bound on the probability that an edge is short.
    pub ln_p1: f64,
    /// `ln P2`, bound on the probability that an r-chain is conflicting.
    pub ln_p2: f64,
    pub x: Weight,
    pub y: Weight,
}

impl LllParams {
    /// Weights `x = 1 - exp(-a/D)` and `y = 1 - exp(-b/(r D^r))`.
    pub fn with_exponents(r: u32, ln_d: f64, ln_p1: f64, ln_p2: f64, a: f64, b: f64) -> Self {
        let ln_r = (r as f64).ln();
        LllParams {
            r,
            ln_d,
            ln_p1,
            ln_p2,
            x: Weight::from_ln_hazard(a.ln() - ln_d),
            y: Weight::from_ln_hazard(b.ln() - ln_r - r as f64 * ln_d),
        }
    }

    /// Evaluates both inequalities
    /// `P1 <= x (1-x)^D (1-y)^(r D^r)` and
    /// `P2 <= y (1-x)^(r D) (1-y)^(r^2 D^r)`.
    pub fn check(&self) -> Result<LllCheck> {
        if !self.ln_d.is_finite() || self.ln_d.is_nan() || self.r < 2 {
            return Err(Error::Range(format!("degree exponent ln D = {} not representable", self.ln_d)));
        }
        let ln_r = (self.r as f64).ln();
        let r_ln_d = self.r as f64 * self.ln_d;
        if !r_ln_d.is_finite() {
            return Err(Error::Range(format!("ln(r^2 D^r) overflows at ln D = {}", self.ln_d)));
        }
        let rhs1 = self.x.ln_value() + self.x.ln_one_minus_pow(self.ln_d) + self.y.ln_one_minus_pow(ln_r + r_ln_d);
        let rhs2 = self.y.ln_value()
            + self.x.ln_one_minus_pow(ln_r + self.ln_d)
            + self.y.ln_one_minus_pow(2.0 * ln_r + r_ln_d);
        if rhs1.is_nan() || rhs2.is_nan() {
            return Err(Error::Range("local lemma right-hand side is not a number".into()));
        }
        let slack1 = rhs1 - self.ln_p1;
        let slack2 = rhs2 - self.ln_p2;
        Ok(LllCheck {
            feasible: slack1 >= 0.0 && slack2 >= 0.0,
            slack1,
            slack2,
            ln_rhs1: rhs1,
            ln_rhs2: rhs2,
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllCheck {
    pub feasible: bool,
    /// `ln RHS1 - ln P1`.
    pub slack1: f64,
    /// `ln RHS2 - ln P2`.
    pub slack2: f64,
    pub ln_rhs1: f64,
    pub ln_rhs2: f64,
}

impl LllCheck {
    pub fn min_slack(&self) -> f64 {
        self.slack1.min(self.slack2)
    }
}

/// Plain-value entry point: probabilities, degree and weights as floats.
pub fn lll_feasible(p1: f64, p2: f64, d: f64, r: u32, x: f64, y: f64) -> Result<LllCheck> {
    if !(0.0..=1.0).contains(&p1) || !(0.0..=1.0).contains(&p2) {
        return Err(Error::InvalidParameter(format!("probabilities must lie in [0, 1], got {p1}, {p2}")));
    }
    if !(d >= 0.0) {
        return Err(Error::InvalidParameter(format!("degree must be nonnegative, got {d}")));
    }
    LllParams {
        r,
        ln_d: d.ln(),
        ln_p1: p1.ln(),
        ln_p2: p2.ln(),
        x: Weight::from_value(x)?,
        y: Weight::from_value(y)?,
    }
    .check_allowing_zero_degree()
}

impl LllParams {
    fn check_allowing_zero_degree(&self) -> Result<LllCheck> {
        if self.ln_d == f64::NEG_INFINITY {
            // D = 0: no dependencies, (1-x)^0 = (1-y)^0 = 1
            let (rhs1, rhs2) = (self.x.ln_value(), self.y.ln_value());
            return Ok(LllCheck {
                feasible: rhs1 >= self.ln_p1 && rhs2 >= self.ln_p2,
                slack1: rhs1 - self.ln_p1,
                slack2: rhs2 - self.ln_p2,
                ln_rhs1: rhs1,
                ln_rhs2: rhs2,
            });
        }
        self.check()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllCertificate {
    pub n: u32,
    pub r: u32,
    pub p: f64,
    pub ln_p1: f64,
    pub ln_p2: f64,
    pub ln_d: f64,
    pub a: f64,
    pub b: f64,
    pub check: LllCheck,
}

impl LllCertificate {
    pub fn params(&self) -> LllParams {
        LllParams::with_exponents(self.r, self.ln_d, self.ln_p1, self.ln_p2, self.a, self.b)
    }

    pub fn log10_d(&self) -> f64 {
        self.ln_d / std::f64::consts::LN_10
    }

    /// `D` as a float; infinite when it exceeds the float range.
    pub fn d(&self) -> f64 {
        self.ln_d.exp()
    }
}

fn min_slack(r: u32, ln_d: f64, ln_p1: f64, ln_p2: f64, log2_a: f64, log2_b: f64) -> f64 {
    LllParams::with_exponents(r, ln_d, ln_p1, ln_p2, log2_a.exp2(), log2_b.exp2())
        .check()
        .map(|c| c.min_slack())
        .unwrap_or(f64::NEG_INFINITY)
}

/// Best `(log2 a, log2 b, min slack)` at degree `exp(ln_d)`: a log-spaced
/// grid over `a, b in 2^-6 ..= 2^4`, refined by coordinate pattern search.
fn best_exponents(r: u32, ln_d: f64, ln_p1: f64, ln_p2: f64) -> (f64, f64, f64) {
    let eval = |la: f64, lb: f64| min_slack(r, ln_d, ln_p1, ln_p2, la, lb);
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for ia in -6..=4 {
        for ib in -6..=4 {
            let (la, lb) = (ia as f64, ib as f64);
            let s = eval(la, lb);
            if s > best.2 {
                best = (la, lb, s);
            }
        }
    }
    let mut step = 0.5;
    while step > 1e-7 {
        let mut improved = false;
        for (da, db) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (la, lb) = (best.0 + da, best.1 + db);
            let s = eval(la, lb);
            if s > best.2 {
                best = (la, lb, s);
                improved = true;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    best
}

/// Largest degree `D` for which the local lemma certifies, through the
/// exponent parametrization, that some birth-time assignment avoids every
/// short edge and conflicting r-chain, with `p = 2 ln(n)/n`.
pub fn max_degree_lll(n: u32, r: u32) -> Result<LllCertificate> {
    if n < 3 || r < 2 {
        return Err(Error::InvalidParameter(format!("max_degree_lll needs n >= 3, r >= 2, got n={n}, r={r}")));
    }
    let nf = n as f64;
    let p = default_short_edge_p(nf);
    let ln_p1 = ln_prob_edge_short_bound(nf, (1.0 - p) / r as f64);
    let ln_p2 = ln_chain_conflict_probability_bound(nf, r, p);
    let feasible = |ln_d: f64| best_exponents(r, ln_d, ln_p1, ln_p2).2 > 0.0;

    let mut lo = 0.0;
    if !feasible(lo) {
        return Err(Error::Range(format!("no degree D >= 1 is certified at n={n}, r={r}")));
    }
    let mut hi = 1.0;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Range("degree search diverged".into()));
        }
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (la, lb, _) = best_exponents(r, lo, ln_p1, ln_p2);
    let (a, b) = (la.exp2(), lb.exp2());
    let check = LllParams::with_exponents(r, lo, ln_p1, ln_p2, a, b).check()?;
    Ok(LllCertificate { n, r, p, ln_p1, ln_p2, ln_d: lo, a, b, check })
}
