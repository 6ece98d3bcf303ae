// Sweep the geometric decay and watch the efficient network change shape.

use sepnet::cli::{run_sweep, SweepRange, SweepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec::Delta {
        range: SweepRange {
            start: 0.1,
            stop: 0.9,
            step: 0.1,
        },
        costs: vec![0.3, 0.35, 0.4, 0.6, 0.8, 1.1],
    };
    print!("{}", run_sweep(&spec)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
