// Build the efficient network for a small heterogeneous-cost model and
// print it as JSON and DOT.

use sepnet::synthesis::core_periphery;
use sepnet::{synthesize, validate_model, BenefitSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = validate_model(
        vec![0.2, 0.4, 0.6, 3.0],
        BenefitSpec::Table {
            values: vec![1.0, 0.5, 0.25],
        },
    )?;
    let net = synthesize(&model);
    assert_eq!(net.graph.edge_count(), 3);

    println!("{}", serde_json::to_string_pretty(&net)?);
    let cp = core_periphery(&net, &model)?;
    print!("{}", net.to_dot(&cp));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
