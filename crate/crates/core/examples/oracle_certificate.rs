// Certify a synthesized network against exhaustive search over every
// graph on the same node set.

use sepnet::oracle::{enumerate_max_with, verify_efficiency, OracleConfig};
use sepnet::{synthesize, validate_model, BenefitSpec, Graph};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = validate_model(
        vec![0.5, 0.2, 0.9, 0.31, 1.4, 0.05],
        BenefitSpec::Geometric { delta: 0.55 },
    )?;
    let config = OracleConfig::default();
    let best = enumerate_max_with(&model, &config)?;
    println!(
        "searched {} graphs, max welfare {:.6}, {} maximiser(s)",
        best.graphs_evaluated,
        best.max_utility,
        best.argmax_graphs.len()
    );

    let net = synthesize(&model);
    let verdict = verify_efficiency(&net.graph, &model, &config)?;
    println!(
        "synthesized: efficient={} gap={:.3e}",
        verdict.is_efficient, verdict.gap
    );
    assert!(verdict.is_efficient);

    let complete = verify_efficiency(&Graph::complete(model.n()), &model, &config)?;
    println!(
        "complete graph: efficient={} gap={:.6}",
        complete.is_efficient, complete.gap
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
