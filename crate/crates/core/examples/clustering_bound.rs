// Minimum clustering of a connected diameter-2 graph with a given number
// of links, checked against the explicit construction.

use sepnet::clustering::{build_min_clustering_graph, compare_to_er};
use sepnet::graph::global_clustering;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    println!("ell  p  J  c_min     er");
    for ell in (n - 1)..=n * (n - 1) / 2 {
        let r = compare_to_er(n, ell)?;
        let built = global_clustering(&build_min_clustering_graph(n, ell)?);
        assert_eq!(
            r.c_min.map(|c| (c * 1e12).round()),
            built.map(|c| (c * 1e12).round())
        );
        println!(
            "{:3} {:2} {:2}  {:.5}  {:.5}{}",
            ell,
            r.p,
            r.residual,
            r.c_min.unwrap_or(f64::NAN),
            r.er_density,
            if r.exceeds_er { "  *" } else { "" }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
