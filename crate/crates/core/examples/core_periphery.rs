// Split an efficient network into core, periphery and isolated nodes.

use sepnet::synthesis::core_periphery;
use sepnet::{synthesize, validate_model, BenefitSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Three cheap nodes link among themselves, the mid-cost ones attach to
    // the hub only, and the last one is too expensive to join.
    let costs = vec![0.05, 0.1, 0.15, 0.45, 0.5, 0.55, 9.0];
    let model = validate_model(costs, BenefitSpec::Geometric { delta: 0.7 })?;
    let net = synthesize(&model);
    let cp = core_periphery(&net, &model)?;

    println!("m={} core_k={} hub={}", net.m, net.core_k, net.hub);
    println!("core:      {:?}", cp.core);
    println!("periphery: {:?}", cp.periphery);
    println!("isolated:  {:?}", cp.isolated);
    assert!(cp.violations(&net.graph).is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
