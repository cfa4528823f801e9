//! Game state: connection graph, interest graph, cost version, and the moves
//! players can make on it.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{edge, Graph, UNREACHABLE};

pub type NodeId = usize;

/// Which private cost the players minimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostVersion {
    /// Maximum distance to any interest.
    Max,
    /// Average distance to the interests.
    Avg,
}

impl CostVersion {
    pub fn as_str(self) -> &'static str {
        match self {
            CostVersion::Max => "MAX",
            CostVersion::Avg => "AVG",
        }
    }

    /// Aggregates the distances from a node to its interests into the value
    /// that is compared during best-response search: the maximum for MAX, the
    /// sum for AVG (the denominator `|I(v)|` is fixed per node).
    #[inline]
    pub(crate) fn key(self, dists: impl Iterator<Item = u32>) -> u64 {
        match self {
            CostVersion::Max => dists.map(u64::from).max().unwrap_or(0),
            CostVersion::Avg => dists.map(u64::from).sum(),
        }
    }

    #[inline]
    pub(crate) fn cost_of_key(self, key: u64, interest_count: usize) -> Cost {
        match self {
            CostVersion::Max => Cost::integer(key),
            CostVersion::Avg => Cost::ratio(key, interest_count as u64),
        }
    }
}

impl fmt::Display for CostVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CostVersion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MAX" => Ok(CostVersion::Max),
            "AVG" => Ok(CostVersion::Avg),
            other => Err(Error::ParameterOutOfDomain(format!(
                "cost version must be MAX or AVG, got {other:?}"
            ))),
        }
    }
}

/// An exact nonnegative rational cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(Ratio<u64>);

impl Cost {
    pub fn integer(value: u64) -> Self {
        Cost(Ratio::from_integer(value))
    }

    pub fn ratio(numer: u64, denom: u64) -> Self {
        Cost(Ratio::new(numer, denom))
    }

    pub fn zero() -> Self {
        Cost(Ratio::zero())
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<u64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_ratio(&self) -> Ratio<u64> {
        self.0
    }

    /// `self / other` as an exact ratio.
    pub fn ratio_to(&self, other: Cost) -> Ratio<u64> {
        self.0 / other.0
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::zero(), Add::add)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The edge swap `actor:[dropped -> added]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Swap {
    pub actor: NodeId,
    pub dropped: NodeId,
    pub added: NodeId,
}

impl Swap {
    pub fn new(actor: NodeId, dropped: NodeId, added: NodeId) -> Self {
        Swap {
            actor,
            dropped,
            added,
        }
    }
}

impl fmt::Display for Swap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[{}->{}]", self.actor, self.dropped, self.added)
    }
}

/// One or more swaps executed simultaneously by a single node.
///
/// Swaps are kept sorted by `(dropped, added)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ImprovingStep {
    pub actor: NodeId,
    pub swaps: Vec<Swap>,
}

impl ImprovingStep {
    pub fn single(swap: Swap) -> Self {
        ImprovingStep {
            actor: swap.actor,
            swaps: vec![swap],
        }
    }

    /// Builds a step from `(dropped, added)` pairs, sorting them.
    pub fn from_pairs(actor: NodeId, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut swaps: Vec<_> = pairs
            .into_iter()
            .map(|(d, a)| Swap::new(actor, d, a))
            .collect();
        swaps.sort_unstable();
        ImprovingStep { actor, swaps }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.swaps.iter().map(|s| (s.dropped, s.added))
    }
}

impl From<Swap> for ImprovingStep {
    fn from(swap: Swap) -> Self {
        ImprovingStep::single(swap)
    }
}

impl fmt::Display for ImprovingStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.swaps.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The complete state of a game: nodes `0..n`, the connection graph, the
/// (static) interest graph and the cost version.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameInstance {
    connection: Graph,
    interests: Arc<Graph>,
    version: CostVersion,
}

impl GameInstance {
    /// Builds an instance and validates it in general (non-tree) mode.
    pub fn new(
        n: usize,
        connection_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        interest_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        version: CostVersion,
    ) -> Result<Self> {
        let inst = Self::unchecked(n, connection_edges, interest_edges, version)?;
        inst.validated(false)
    }

    /// Builds an instance whose connection graph must be a tree.
    pub fn new_tree(
        n: usize,
        connection_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        interest_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        version: CostVersion,
    ) -> Result<Self> {
        let inst = Self::unchecked(n, connection_edges, interest_edges, version)?;
        inst.validated(true)
    }

    /// Builds an instance checking only that node ids are in range. Use
    /// [`validate_instance`] to inspect the result.
    pub fn unchecked(
        n: usize,
        connection_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        interest_edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        version: CostVersion,
    ) -> Result<Self> {
        Ok(GameInstance {
            connection: Graph::new(n, connection_edges)?,
            interests: Arc::new(Graph::new(n, interest_edges)?),
            version,
        })
    }

    pub(crate) fn from_graphs(
        connection: Graph,
        interests: Arc<Graph>,
        version: CostVersion,
    ) -> Self {
        GameInstance {
            connection,
            interests,
            version,
        }
    }

    fn validated(self, require_tree: bool) -> Result<Self> {
        let report = validate_instance(&self, require_tree);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidInstance(report.to_string()))
        }
    }

    pub fn node_count(&self) -> usize {
        self.connection.node_count()
    }

    pub fn connection(&self) -> &Graph {
        &self.connection
    }

    pub fn interests(&self) -> &Graph {
        &self.interests
    }

    pub fn version(&self) -> CostVersion {
        self.version
    }

    /// Same graphs, different cost version.
    pub fn with_version(&self, version: CostVersion) -> Self {
        GameInstance {
            version,
            ..self.clone()
        }
    }

    /// Same interests and version, different connection graph.
    pub fn with_connection(&self, connection: Graph) -> Self {
        GameInstance {
            connection,
            interests: Arc::clone(&self.interests),
            version: self.version,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.connection.is_tree()
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }
}

/// A single violated invariant of a [`GameInstance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    ConnectionSelfLoop(NodeId),
    ConnectionDuplicateEdge(NodeId, NodeId),
    InterestSelfLoop(NodeId),
    InterestDuplicateEdge(NodeId, NodeId),
    Disconnected { unreachable: NodeId },
    NoInterest(NodeId),
    NotATree { edges: usize, nodes: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "instance has no nodes"),
            Violation::ConnectionSelfLoop(v) => write!(f, "connection self-loop at node {v}"),
            Violation::ConnectionDuplicateEdge(u, v) => {
                write!(f, "duplicate connection edge {{{u},{v}}}")
            }
            Violation::InterestSelfLoop(v) => write!(f, "interest self-loop at node {v}"),
            Violation::InterestDuplicateEdge(u, v) => {
                write!(f, "duplicate interest edge {{{u},{v}}}")
            }
            Violation::Disconnected { unreachable } => {
                write!(
                    f,
                    "connection graph is disconnected (node {unreachable} unreachable from 0)"
                )
            }
            Violation::NoInterest(v) => write!(f, "node {v} has no interest"),
            Violation::NotATree { edges, nodes } => {
                write!(f, "not a tree ({edges} edges on {nodes} nodes)")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lists every violated instance invariant. An empty report means valid.
pub fn validate_instance(inst: &GameInstance, require_tree: bool) -> ValidationReport {
    let mut violations = Vec::new();
    let n = inst.node_count();
    if n == 0 {
        violations.push(Violation::NoNodes);
        return ValidationReport { violations };
    }

    let mut simple_edges = |edges: &[(NodeId, NodeId)], interest: bool| {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                violations.push(if interest {
                    Violation::InterestSelfLoop(u)
                } else {
                    Violation::ConnectionSelfLoop(u)
                });
            } else if i > 0 && edges[i - 1] == (u, v) {
                violations.push(if interest {
                    Violation::InterestDuplicateEdge(u, v)
                } else {
                    Violation::ConnectionDuplicateEdge(u, v)
                });
            }
        }
    };
    simple_edges(inst.connection.edges(), false);
    simple_edges(inst.interests.edges(), true);

    if let Some(u) = inst
        .connection
        .bfs(0)
        .iter()
        .position(|&d| d == UNREACHABLE)
    {
        violations.push(Violation::Disconnected { unreachable: u });
    }

    for v in 0..n {
        if inst.interests.neighbors(v).iter().all(|&u| u == v) {
            violations.push(Violation::NoInterest(v));
        }
    }

    if require_tree && !inst.connection.is_tree() {
        violations.push(Violation::NotATree {
            edges: inst.connection.edge_count(),
            nodes: n,
        });
    }

    ValidationReport { violations }
}

/// Hop distances from `source` to every node, indexed by node id.
pub fn distances_from(inst: &GameInstance, source: NodeId) -> Result<Vec<u32>> {
    inst.check_node(source)?;
    let dist = inst.connection.bfs(source);
    match dist.iter().position(|&d| d == UNREACHABLE) {
        Some(u) => Err(Error::DisconnectedGraph(u)),
        None => Ok(dist),
    }
}

/// Private cost of `v` given its distance row.
pub(crate) fn cost_from_row(inst: &GameInstance, v: NodeId, row: &[u32]) -> Cost {
    let interests = inst.interests.neighbors(v);
    let key = inst.version.key(interests.iter().map(|&u| row[u]));
    inst.version.cost_of_key(key, interests.len())
}

pub fn private_cost(inst: &GameInstance, v: NodeId) -> Result<Cost> {
    let row = distances_from(inst, v)?;
    Ok(cost_from_row(inst, v, &row))
}

/// Private costs of all nodes, indexed by node id.
pub fn private_costs(inst: &GameInstance) -> Result<Vec<Cost>> {
    (0..inst.node_count())
        .map(|v| private_cost(inst, v))
        .collect()
}

pub fn social_cost(inst: &GameInstance) -> Result<Cost> {
    Ok(private_costs(inst)?.into_iter().sum())
}

/// Applies all swaps of `step` simultaneously and returns the new instance.
///
/// Fails with [`Error::InvalidSwap`] on structurally invalid swaps and with
/// [`Error::DisconnectingSwap`] if the result would be disconnected.
pub fn apply_step(inst: &GameInstance, step: &ImprovingStep) -> Result<GameInstance> {
    let actor = step.actor;
    inst.check_node(actor)?;
    let first = match step.swaps.first() {
        Some(s) => *s,
        None => {
            return Err(Error::PreconditionViolated(format!(
                "step by node {actor} contains no swaps"
            )))
        }
    };
    let g = &inst.connection;
    let mut dropped = Vec::with_capacity(step.swaps.len());
    let mut added = Vec::with_capacity(step.swaps.len());
    for &swap in &step.swaps {
        let invalid = |reason: &str| Error::InvalidSwap {
            swap,
            reason: reason.to_string(),
        };
        inst.check_node(swap.dropped)?;
        inst.check_node(swap.added)?;
        if swap.actor != actor {
            return Err(invalid("swaps of one step must share the same actor"));
        }
        if !g.has_edge(actor, swap.dropped) || actor == swap.dropped {
            return Err(invalid("dropped endpoint is not adjacent to the actor"));
        }
        if swap.added == actor {
            return Err(invalid("added endpoint equals the actor"));
        }
        if swap.added == swap.dropped {
            return Err(invalid("added endpoint equals dropped endpoint"));
        }
        if g.has_edge(actor, swap.added) {
            return Err(invalid("added edge already exists"));
        }
        if dropped.contains(&swap.dropped) {
            return Err(invalid("edge dropped twice within one step"));
        }
        if added.contains(&swap.added) {
            return Err(invalid("edge added twice within one step"));
        }
        dropped.push(swap.dropped);
        added.push(swap.added);
    }
    let next = g.rewired(actor, &dropped, &added);
    if !next.is_connected() {
        return Err(Error::DisconnectingSwap(first));
    }
    Ok(inst.with_connection(next))
}

pub fn apply_swap(inst: &GameInstance, swap: Swap) -> Result<GameInstance> {
    apply_step(inst, &ImprovingStep::single(swap))
}

/// Sorted canonical edge list of the connection graph.
pub fn canonical_edges(inst: &GameInstance) -> Vec<(NodeId, NodeId)> {
    inst.connection
        .edges()
        .iter()
        .map(|&(u, v)| edge(u, v))
        .collect()
}
