//! Largest certified edge degree from the local lemma, in log space.

use hypercolor::bounds::max_degree_lll;

fn main() -> hypercolor::Result<()> {
    for r in [2, 3] {
        for n in [50, 100, 200, 500] {
            let cert = max_degree_lll(n, r)?;
            let again = cert.params().check()?;
            let scale = (n as f64 / (n as f64).ln()).powf((r as f64 - 1.0) / r as f64);
            println!(
                "n={n} r={r}: log10 D = {:.3}, D / (scale r^n) = {:.4}, a = {:.4}, b = {:.4}, slack {:.2e}",
                cert.log10_d(),
                (cert.ln_d - scale.ln() - n as f64 * (r as f64).ln()).exp(),
                cert.a,
                cert.b,
                again.min_slack()
            );
        }
    }
    Ok(())
}
