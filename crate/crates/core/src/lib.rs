//! Efficient network structures when every node pays its own fixed cost per
//! link.
//!
//! - [`graph`]: graphs and structural metrics
//! - [`econ`]: costs, benefits and distance-based utility
//! - [`synthesis`]: exact efficient network, core-periphery split, structure checks
//! - [`oracle`]: exhaustive welfare maximisation for small `n`
//! - [`clustering`]: minimum-clustering bound and the Erdős–Rényi comparison
//! - [`stability`]: pairwise-stability checks
//! - [`cli`]: the `sepnet` command line

pub mod cli;
pub mod clustering;
pub mod econ;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod stability;
pub mod synthesis;

pub use econ::{validate_model, BenefitSpec, Model, ModelSpec};
pub use error::{Error, Result};
pub use graph::Graph;
pub use synthesis::{synthesize, EfficientNetwork};
