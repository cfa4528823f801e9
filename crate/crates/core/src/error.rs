use thiserror::Error;

use crate::model::{NodeId, Swap};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node {node} is out of range for a game on {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("connection graph is disconnected (node {0} unreachable)")]
    DisconnectedGraph(NodeId),

    #[error("swap {0} would disconnect the connection graph")]
    DisconnectingSwap(Swap),

    #[error("invalid swap {swap}: {reason}")]
    InvalidSwap { swap: Swap, reason: String },

    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("not in equilibrium: {0}")]
    NotInEquilibrium(String),

    #[error("search budget of {0} branch nodes exhausted")]
    BudgetExhausted(u64),

    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
}
