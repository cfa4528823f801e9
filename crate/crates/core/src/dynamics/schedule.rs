//! Invocation-scheduled best-response dynamics.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fingerprint::{Fingerprint, StateTable};
use super::response::{BestResponse, EquilibriumMode, MoveSearch};
use crate::error::{Error, Result};
use crate::model::{apply_step, GameInstance, NodeId};

/// Order in which nodes are invoked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scheduler {
    /// `0, 1, ..., n-1, 0, 1, ...`
    RoundRobin,
    /// Rounds of seeded random permutations of all nodes.
    Random { seed: u64 },
    /// The given list, repeated cyclically.
    Explicit(Vec<NodeId>),
}

impl fmt::Display for Scheduler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheduler::RoundRobin => f.write_str("round-robin"),
            Scheduler::Random { seed } => write!(f, "random:{seed}"),
            Scheduler::Explicit(order) => {
                f.write_str("explicit:")?;
                for (i, v) in order.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Scheduler {
    type Err = Error;

    /// Parses `round-robin`, `random:SEED` or `explicit:v1,v2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "round-robin" {
            return Ok(Scheduler::RoundRobin);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            let seed = seed
                .parse()
                .map_err(|_| Error::ParameterOutOfDomain(format!("bad seed {seed:?}")))?;
            return Ok(Scheduler::Random { seed });
        }
        if let Some(list) = s.strip_prefix("explicit:") {
            let order = list
                .split(',')
                .map(|v| v.trim().parse::<NodeId>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::ParameterOutOfDomain(format!("bad node list {list:?}")))?;
            if order.is_empty() {
                return Err(Error::ParameterOutOfDomain("explicit list is empty".into()));
            }
            return Ok(Scheduler::Explicit(order));
        }
        Err(Error::ParameterOutOfDomain(format!(
            "scheduler must be round-robin, random:SEED or explicit:LIST, got {s:?}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub node: NodeId,
    /// `None` when the invoked node had no improving step.
    pub action: Option<BestResponse>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Every scheduled node passed since the last move; `step` counts all
    /// invocations made, `moves` the applied steps.
    Converged {
        step: usize,
        moves: usize,
    },
    /// State index `first` (0 = initial) recurs at `first + period` with the
    /// same scheduler phase.
    Cycle {
        first: usize,
        period: usize,
    },
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct DynamicsTrace {
    pub initial: Fingerprint,
    pub steps: Vec<TraceStep>,
    /// Fingerprint after each step.
    pub states: Vec<Fingerprint>,
    pub outcome: Outcome,
    pub final_state: GameInstance,
}

impl DynamicsTrace {
    /// Fingerprint of state `i`, where 0 is the initial state.
    pub fn state(&self, i: usize) -> Fingerprint {
        if i == 0 {
            self.initial
        } else {
            self.states[i - 1]
        }
    }

    pub fn moves(&self) -> usize {
        self.steps.iter().filter(|s| s.action.is_some()).count()
    }
}

/// `10 n^3` invocations.
pub fn default_max_steps(n: usize) -> usize {
    10 * n * n * n
}

struct Invocations {
    kind: Scheduler,
    n: usize,
    pos: usize,
    order: Vec<NodeId>,
    rng: Option<ChaCha8Rng>,
}

impl Invocations {
    fn new(kind: &Scheduler, n: usize) -> Result<Self> {
        let (order, rng) = match kind {
            Scheduler::RoundRobin => ((0..n).collect(), None),
            Scheduler::Random { seed } => (Vec::new(), Some(ChaCha8Rng::seed_from_u64(*seed))),
            Scheduler::Explicit(list) => {
                if list.is_empty() {
                    return Err(Error::PreconditionViolated(
                        "explicit scheduler list is empty".into(),
                    ));
                }
                if let Some(&node) = list.iter().find(|&&v| v >= n) {
                    return Err(Error::NodeOutOfRange { node, n });
                }
                (list.clone(), None)
            }
        };
        Ok(Invocations {
            kind: kind.clone(),
            n,
            pos: 0,
            order,
            rng,
        })
    }

    /// Nodes that must all pass before convergence is declared.
    fn required(&self) -> Vec<bool> {
        let mut req = vec![false; self.n];
        match &self.kind {
            Scheduler::Explicit(list) => list.iter().for_each(|&v| req[v] = true),
            _ => req.iter_mut().for_each(|r| *r = true),
        }
        req
    }

    /// Phase of the next invocation; `None` for non-periodic schedules.
    fn phase(&self) -> Option<usize> {
        match self.kind {
            Scheduler::Random { .. } => None,
            _ => Some(self.pos % self.order.len()),
        }
    }

    fn next(&mut self) -> NodeId {
        if let Some(rng) = self.rng.as_mut() {
            if self.pos.is_multiple_of(self.n) {
                self.order = (0..self.n).collect();
                self.order.shuffle(rng);
            }
            let v = self.order[self.pos % self.n];
            self.pos += 1;
            return v;
        }
        let v = self.order[self.pos % self.order.len()];
        self.pos += 1;
        v
    }
}

/// Runs best-response dynamics for at most `max_steps` invocations.
pub fn run_dynamics(
    inst: &GameInstance,
    sched: &Scheduler,
    mode: EquilibriumMode,
    max_steps: usize,
) -> Result<DynamicsTrace> {
    if max_steps == 0 {
        return Err(Error::PreconditionViolated(
            "max_steps must be at least 1".into(),
        ));
    }
    let n = inst.node_count();
    let mut invocations = Invocations::new(sched, n)?;
    let required = invocations.required();
    let required_count = required.iter().filter(|&&r| r).count();

    let mut table = StateTable::default();
    let (initial_id, initial) = table.intern(inst);
    // (state id, phase) -> state index
    let mut seen = std::collections::HashMap::new();
    if let Some(phase) = invocations.phase() {
        seen.insert((initial_id, phase), 0usize);
    }

    let mut state = inst.clone();
    let mut steps = Vec::new();
    let mut states = Vec::new();
    let mut passed = vec![false; n];
    let mut passed_count = 0;
    let mut moves = 0;
    let mut search_cache: Option<(usize, Vec<Option<Option<BestResponse>>>)> = None;
    let mut state_id = initial_id;

    while steps.len() < max_steps {
        let v = invocations.next();
        // Best responses only depend on the state, so cache them per state.
        if search_cache.as_ref().is_none_or(|(id, _)| *id != state_id) {
            search_cache = Some((state_id, vec![None; n]));
        }
        let cache = &mut search_cache.as_mut().expect("cache initialized").1;
        let response = match &cache[v] {
            Some(r) => r.clone(),
            None => {
                let r = MoveSearch::new(&state)?.best_response(v, mode.max_swaps())?;
                cache[v] = Some(r.clone());
                r
            }
        };

        match &response {
            Some(br) => {
                state = apply_step(&state, &br.step)?;
                moves += 1;
                passed.iter_mut().for_each(|p| *p = false);
                passed_count = 0;
            }
            None => {
                if required[v] && !passed[v] {
                    passed[v] = true;
                    passed_count += 1;
                }
            }
        }
        let (id, fp) = table.intern(&state);
        state_id = id;
        steps.push(TraceStep {
            node: v,
            action: response,
        });
        states.push(fp);

        if passed_count == required_count {
            return Ok(DynamicsTrace {
                initial,
                outcome: Outcome::Converged {
                    step: steps.len(),
                    moves,
                },
                steps,
                states,
                final_state: state,
            });
        }
        if let Some(phase) = invocations.phase() {
            let index = steps.len();
            if let Some(&first) = seen.get(&(id, phase)) {
                return Ok(DynamicsTrace {
                    initial,
                    outcome: Outcome::Cycle {
                        first,
                        period: index - first,
                    },
                    steps,
                    states,
                    final_state: state,
                });
            }
            seen.insert((id, phase), index);
        }
    }

    Ok(DynamicsTrace {
        initial,
        outcome: Outcome::BudgetExhausted,
        steps,
        states,
        final_state: state,
    })
}
