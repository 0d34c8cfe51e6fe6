//! Captain-and-robber games on partition scenarios, their decompositions,
//! and the graph and matroid width parameters they characterise.

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod game;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod scenario;
pub mod subset;
pub mod tree;
pub mod width;

pub use error::{Error, Result};
pub use partition::Partition;
pub use scenario::{ExplicitScenario, Scenario, ScenarioKind};
pub use subset::{GroundSet, Subset};
