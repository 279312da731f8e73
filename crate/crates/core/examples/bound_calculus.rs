//! The counting bounds: pair probabilities, optimal p and the largest k.

use hypercolor::bounds::{
    max_k_2col, max_k_rcol, optimize_p, pair_conflict_closed_form, pair_conflict_probability, scaled_rs_bound,
};

fn main() -> hypercolor::Result<()> {
    for n in [5u32, 20, 50] {
        let p = 0.2;
        let (lo, hi) = ((1.0 - p) / 2.0, (1.0 + p) / 2.0);
        println!(
            "n={n}: pair conflict in P {:.6e} (quadrature) {:.6e} (closed form), p = {p}",
            pair_conflict_probability(n, lo, hi)?,
            pair_conflict_closed_form(n, lo, hi)?
        );
    }
    for n in [1e2, 1e4, 1e6] {
        let k = max_k_2col(n)?;
        let opt = optimize_p(k, n)?;
        println!(
            "n={n:e}: max k {k:.4} = {:.4} sqrt(n/ln n), best p {:.3e}",
            k / (n / n.ln()).sqrt(),
            opt.best().0
        );
    }
    for n in [1e4, 1e6, 1e12, 1e100] {
        println!("c = 1.4, n = {n:e}: scaled bound {:.4}", scaled_rs_bound(1.4, n));
    }
    for r in 2..=4 {
        let b = max_k_rcol(1e5, r, None)?;
        println!("r={r}: k {:.3} with {:.3} short edges + {:.3} chains expected", b.k, b.short_edges, b.conflicting_chains);
    }
    Ok(())
}
