//! Improving moves, equilibrium checks and swap dynamics.

mod fingerprint;
mod response;
mod schedule;

pub use fingerprint::{canonical_state, Fingerprint};
pub use response::{
    best_response, enumerate_improving_swaps, is_equilibrium, BestResponse, EquilibriumMode,
    EquilibriumReport,
};
pub use schedule::{default_max_steps, run_dynamics, DynamicsTrace, Outcome, Scheduler, TraceStep};

pub(crate) use response::MoveSearch;
