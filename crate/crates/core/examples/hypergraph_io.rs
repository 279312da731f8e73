//! Build, validate, serialize and re-read a hypergraph.

use hypercolor::{format, Hypergraph};

fn main() -> hypercolor::Result<()> {
    let h = Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 1, 2], vec![1, 7]]);
    let report = h.validate();
    for issue in report.violations.iter().chain(&report.warnings) {
        println!("issue: {issue}");
    }

    let h = Hypergraph::checked(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 3, 4]])?;
    println!("uniformity {:?}, max edge degree {}", h.uniformity().map(|u| u.n()), h.max_edge_degree());
    let text = format::to_text(&h);
    print!("{text}");
    assert_eq!(format::parse(&text, "<memory>")?, h);

    match format::parse("3 1\n0 1 9\n", "broken.hg") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
