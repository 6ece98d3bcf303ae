// Is the efficient network pairwise stable? Often not: the hub pays for
// links that mostly benefit others.

use sepnet::stability::efficiency_stability_audit;
use sepnet::{validate_model, BenefitSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = validate_model(
        vec![0.1, 0.1, 1.8],
        BenefitSpec::Table {
            values: vec![1.0, 0.5],
        },
    )?;
    let (net, report) = efficiency_stability_audit(&model);
    println!("edges: {:?}", net.graph.edges());
    println!("stable: {}", report.stable);
    for d in &report.sever_deviations {
        println!(
            "  node {} gains {:.3} by cutting {:?}",
            d.node, d.gain, d.edge
        );
    }
    for d in &report.add_deviations {
        println!("  pair {:?} gains {:?} by linking", d.pair, d.gains);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
