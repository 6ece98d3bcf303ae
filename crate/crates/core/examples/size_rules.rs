// Compare three ways of sizing the connected component. The closed-form
// rule can admit a member whose net contribution is negative.

use sepnet::econ::total_utility;
use sepnet::synthesis::{
    component_size, efficient_component_size, incremental_component_size, prefix_welfare,
};
use sepnet::{synthesize, validate_model, BenefitSpec, Graph};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = validate_model(
        vec![1.45, 1.55, 1.65],
        BenefitSpec::Geometric { delta: 0.9 },
    )?;
    println!("closed form:  m={}", component_size(&model));
    println!("incremental:  m={}", incremental_component_size(&model));
    println!("welfare max:  m={}", efficient_component_size(&model));
    println!("prefix welfare: {:?}", prefix_welfare(&model));

    let net = synthesize(&model);
    println!(
        "synthesized welfare {:.3}, star welfare {:.3}",
        net.total_utility,
        total_utility(&Graph::star(3, 0), &model)
    );
    assert!(net.size_rules_disagree());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
