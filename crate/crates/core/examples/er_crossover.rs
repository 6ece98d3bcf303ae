// Where the minimum clustering first exceeds an ER random graph of the
// same density, for a range of sizes.

use sepnet::clustering::crossover_summary;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("  n  threshold  first  sustained  sufficient");
    for n in [11, 15, 20, 30, 50, 100] {
        let s = crossover_summary(n)?;
        let fmt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        println!(
            "{:3}  {:9.5}  {:>5}  {:>9}  {}",
            n,
            s.threshold_density,
            fmt(s.first_exceeding_links),
            fmt(s.sustained_from_links),
            s.threshold_sufficient
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
