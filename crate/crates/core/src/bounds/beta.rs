//! `∫ x^(n-1) (1-x)^(n-1) dx` over a subinterval of `[0, 1]`, two ways:
//! adaptive Gauss–Kronrod quadrature and the regularized incomplete Beta
//! function `I_x(n, n)` written as a binomial tail.

use super::ln_factorial;
use crate::error::{Error, Result};

// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64, depth: u32) -> f64 {
    let (value, err) = gauss_kronrod(f, a, b);
    if err <= abs_tol || depth == 0 {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, abs_tol / 2.0, depth - 1) + adaptive(f, mid, b, abs_tol / 2.0, depth - 1)
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
pub(crate) fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (rough, _) = gauss_kronrod(&f, a, b);
    let abs_tol = (rel_tol * rough.abs()).max(f64::MIN_POSITIVE);
    adaptive(&f, a, b, abs_tol, 48)
}

fn check_range(n: u32, lo: f64, hi: f64) -> Result<()> {
    if n == 0 || !(0.0 <= lo && lo <= hi && hi <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and 0 <= lo <= hi <= 1, got n={n}, lo={lo}, hi={hi}"
        )));
    }
    Ok(())
}

/// `∫_lo^hi x^(n-1) (1-x)^(n-1) dx` by adaptive quadrature, relative
/// tolerance 1e-12. The integrand is rescaled by its maximum on the interval
/// so that large `n` does not lose the quadrature's relative accuracy.
pub fn pair_conflict_probability(n: u32, lo: f64, hi: f64) -> Result<f64> {
    check_range(n, lo, hi)?;
    if n == 1 {
        return Ok(hi - lo);
    }
    let m = (n - 1) as f64;
    let ln_f = |x: f64| m * (x.ln() + (-x).ln_1p());
    let peak = 0.5f64.clamp(lo, hi);
    let ln_scale = ln_f(peak);
    let value = integrate(|x| (ln_f(x) - ln_scale).exp(), lo, hi, 1e-12);
    Ok(value * ln_scale.exp())
}

/// `B(n, n) = ((n-1)!)^2 / (2n-1)!`.
pub fn beta_nn(n: u32) -> f64 {
    (2.0 * ln_factorial(n - 1) - ln_factorial(2 * n - 1)).exp()
}

/// Regularized incomplete Beta `I_x(n, n)`, which for integer `n` equals the
/// probability that `Binomial(2n - 1, x)` is at least `n`.
pub fn incomplete_beta_nn(n: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let total = 2 * n - 1;
    let ln_total = ln_factorial(total);
    let (lx, l1x) = (x.ln(), (-x).ln_1p());
    (n..=total)
        .map(|j| {
            let ln_c = ln_total - ln_factorial(j) - ln_factorial(total - j);
            (ln_c + j as f64 * lx + (total - j) as f64 * l1x).exp()
        })
        .sum()
}

/// The same integral as [`pair_conflict_probability`] from the incomplete
/// Beta closed form, reflecting through `x = 1/2` to keep the subtraction on
/// the small side.
pub fn pair_conflict_closed_form(n: u32, lo: f64, hi: f64) -> Result<f64> {
    check_range(n, lo, hi)?;
    let lower_part = |a: f64, b: f64| incomplete_beta_nn(n, b) - incomplete_beta_nn(n, a);
    let scaled = if hi <= 0.5 {
        lower_part(lo, hi)
    } else if lo >= 0.5 {
        lower_part(1.0 - hi, 1.0 - lo)
    } else {
        (0.5 - incomplete_beta_nn(n, lo)) + (0.5 - incomplete_beta_nn(n, 1.0 - hi))
    };
    Ok(beta_nn(n) * scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((pair_conflict_probability(1, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        // ∫ x(1-x) = 1/2 - 1/3
        assert!((pair_conflict_probability(2, 0.0, 1.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!(pair_conflict_probability(2, 0.6, 0.5).is_err());
        assert!(pair_conflict_probability(0, 0.0, 0.5).is_err());
    }

    #[test]
    fn full_interval_matches_beta() {
        for n in 1..=20 {
            let q = pair_conflict_probability(n, 0.0, 1.0).unwrap();
            let b = beta_nn(n);
            assert!(((q - b) / b).abs() < 1e-10, "n={n}: {q} vs {b}");
        }
    }

    #[test]
    fn incomplete_beta_known_values() {
        assert!((incomplete_beta_nn(3, 0.5) - 0.5).abs() < 1e-15);
        // I_x(1,1) = x, I_x(2,2) = 3x^2 - 2x^3
        assert!((incomplete_beta_nn(1, 0.3) - 0.3).abs() < 1e-15);
        let x: f64 = 0.3;
        assert!((incomplete_beta_nn(2, x) - (3.0 * x * x - 2.0 * x.powi(3))).abs() < 1e-15);
    }

    #[test]
    fn bounded_by_interval_length() {
        for n in [2, 5, 20, 50] {
            for p in [0.01, 0.3, 0.9] {
                let v = pair_conflict_probability(n, (1.0 - p) / 2.0, (1.0 + p) / 2.0).unwrap();
                assert!(v <= p);
            }
        }
    }

    #[test]
    fn large_n_keeps_relative_accuracy() {
        let q = pair_conflict_probability(400, 0.4, 0.45).unwrap();
        let c = pair_conflict_closed_form(400, 0.4, 0.45).unwrap();
        assert!(q > 0.0);
        assert!(((q - c) / c).abs() < 1e-9, "{q} {c}");
    }
}
