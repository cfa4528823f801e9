//! Simulation and analysis of basic network creation games with
//! communication interests.
//!
//! Players sit on the nodes of a connection graph (usually a tree) and swap
//! incident edges to get closer to the nodes they are interested in. This
//! crate evaluates private and social costs, searches best responses, runs
//! scheduled swap dynamics, builds the known equilibrium families and checks
//! the structural bounds that hold in MAX-equilibria.

pub mod analysis;
pub mod constructions;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod model;
pub mod random;

pub use dynamics::{
    best_response, canonical_state, enumerate_improving_swaps, is_equilibrium, run_dynamics,
    BestResponse, DynamicsTrace, EquilibriumMode, EquilibriumReport, Fingerprint, Outcome,
    Scheduler,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{
    apply_step, apply_swap, distances_from, private_cost, private_costs, social_cost,
    validate_instance, Cost, CostVersion, GameInstance, ImprovingStep, NodeId, Swap,
    ValidationReport, Violation,
};
