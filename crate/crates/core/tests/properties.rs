mod oracle;

use proptest::prelude::*;
use swapnet_core::analysis::brute_force_optimum;
use swapnet_core::constructions::build_equilibrium_alg1;
use swapnet_core::random::{seeded_interests, seeded_tree_instance};
use swapnet_core::{
    apply_step, best_response, canonical_state, distances_from, enumerate_improving_swaps,
    is_equilibrium, private_cost, private_costs, run_dynamics, social_cost, validate_instance,
    Cost, CostVersion, EquilibriumMode, GameInstance, Graph, Outcome, Scheduler,
};

const SINGLE: EquilibriumMode = EquilibriumMode::Single;

fn version() -> impl Strategy<Value = CostVersion> {
    prop_oneof![Just(CostVersion::Max), Just(CostVersion::Avg)]
}

fn tree_instance(max_n: usize) -> impl Strategy<Value = GameInstance> {
    (2..=max_n, 0.0..1.0f64, any::<u64>(), version())
        .prop_map(|(n, p, seed, v)| seeded_tree_instance(n, p, seed, v))
}

/// A random tree plus a few extra chords: connected, usually not a tree.
fn general_instance(max_n: usize) -> impl Strategy<Value = GameInstance> {
    (
        tree_instance(max_n),
        proptest::collection::vec((0usize..64, 0usize..64), 0..4),
    )
        .prop_map(|(t, extra)| {
            let n = t.node_count();
            let mut edges = t.connection().edges().to_vec();
            for (a, b) in extra {
                let (a, b) = (a % n, b % n);
                let e = (a.min(b), a.max(b));
                if a != b && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            GameInstance::new(n, edges, t.interests().edges().to_vec(), t.version()).unwrap()
        })
}

fn any_instance(max_n: usize) -> impl Strategy<Value = GameInstance> {
    prop_oneof![tree_instance(max_n), general_instance(max_n)]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distances_are_a_metric(inst in any_instance(14)) {
        let n = inst.node_count();
        let d: Vec<Vec<u32>> = (0..n).map(|s| distances_from(&inst, s).unwrap()).collect();
        for a in 0..n {
            prop_assert_eq!(d[a][a], 0);
            for b in 0..n {
                prop_assert_eq!(d[a][b], d[b][a]);
                for c in 0..n {
                    prop_assert!(d[a][c] <= d[a][b] + d[b][c]);
                }
            }
        }
    }

    #[test]
    fn costs_are_at_least_one(inst in any_instance(14)) {
        let (n, conn, ints, v) = oracle::raw(&inst);
        for x in 0..n {
            let c = private_cost(&inst, x).unwrap();
            prop_assert_eq!(Some(c), oracle::cost(n, &conn, &ints, v, x));
            prop_assert!(c >= Cost::integer(1));
            let all_adjacent = inst.interests().neighbors(x).iter().all(|&u| inst.connection().has_edge(x, u));
            prop_assert_eq!(c == Cost::integer(1), all_adjacent);
        }
    }

    #[test]
    fn avg_costs_are_exact(inst in tree_instance(14).prop_map(|i| i.with_version(CostVersion::Avg))) {
        let lcm = (0..inst.node_count())
            .map(|v| inst.interests().degree(v) as u64)
            .fold(1, |acc, k| acc / gcd(acc, k) * k);
        let total = social_cost(&inst).unwrap();
        prop_assert!((total.as_ratio() * lcm).is_integer());
        let summed: Cost = private_costs(&inst).unwrap().into_iter().sum();
        prop_assert_eq!(summed, total);
    }

    #[test]
    fn improving_swaps_match_the_oracle(inst in any_instance(8)) {
        let (n, conn, ints, v) = oracle::raw(&inst);
        let mut naive = oracle::improving_swaps(n, &conn, &ints, v);
        naive.sort_unstable();
        let mut got = Vec::new();
        for x in 0..n {
            for (s, cost) in enumerate_improving_swaps(&inst, x).unwrap() {
                got.push((s.actor, s.dropped, s.added));
                let mut after: Vec<_> = conn.iter().copied().filter(|&e| e != (x.min(s.dropped), x.max(s.dropped))).collect();
                after.push((x.min(s.added), x.max(s.added)));
                prop_assert_eq!(Some(cost), oracle::cost(n, &after, &ints, v, x));
            }
        }
        got.sort_unstable();
        prop_assert_eq!(got, naive);
    }

    #[test]
    fn applied_steps_preserve_shape(inst in any_instance(12)) {
        let n = inst.node_count();
        let m = inst.connection().edge_count();
        for x in 0..n {
            for (s, cost) in enumerate_improving_swaps(&inst, x).unwrap() {
                let next = apply_step(&inst, &s.into()).unwrap();
                prop_assert_eq!(next.node_count(), n);
                prop_assert_eq!(next.connection().edge_count(), m);
                prop_assert!(next.connection().is_connected());
                prop_assert!(validate_instance(&next, inst.is_tree()).is_valid());
                prop_assert_eq!(private_cost(&next, x).unwrap(), cost);
            }
        }
    }

    #[test]
    fn witnesses_are_sound(inst in any_instance(12), k in 1usize..=3) {
        let mode = EquilibriumMode::Multi(k).normalized();
        let report = is_equilibrium(&inst, mode).unwrap();
        prop_assert_eq!(report.is_equilibrium, report.witness.is_none());
        if let Some(w) = report.witness {
            let next = apply_step(&inst, &w.step).unwrap();
            prop_assert!(next.connection().is_connected());
            prop_assert_eq!(private_cost(&inst, w.step.actor).unwrap(), w.cost_before);
            prop_assert_eq!(private_cost(&next, w.step.actor).unwrap(), w.cost_after);
            prop_assert!(w.cost_after < w.cost_before);
            prop_assert!(w.step.swaps.len() <= k);
        }
    }

    #[test]
    fn more_simultaneous_swaps_never_hurt(inst in tree_instance(8)) {
        for v in 0..inst.node_count() {
            let single = best_response(&inst, v, SINGLE).unwrap().map(|b| b.cost_after);
            let multi = best_response(&inst, v, EquilibriumMode::Multi(2)).unwrap().map(|b| b.cost_after);
            match (single, multi) {
                (Some(s), Some(m)) => prop_assert!(m <= s),
                (Some(_), None) => prop_assert!(false, "multi lost a single-swap improvement"),
                _ => {}
            }
        }
    }

    #[test]
    fn dynamics_traces_replay(inst in any_instance(10), seed in any::<u64>()) {
        let sched = if seed % 2 == 0 { Scheduler::RoundRobin } else { Scheduler::Random { seed } };
        let trace = run_dynamics(&inst, &sched, SINGLE, 400).unwrap();
        prop_assert_eq!(trace.initial, canonical_state(&inst));
        let mut state = inst.clone();
        for (i, step) in trace.steps.iter().enumerate() {
            if let Some(br) = &step.action {
                prop_assert_eq!(br.step.actor, step.node);
                let before = private_cost(&state, step.node).unwrap();
                state = apply_step(&state, &br.step).unwrap();
                prop_assert!(private_cost(&state, step.node).unwrap() < before);
            }
            prop_assert_eq!(trace.states[i], canonical_state(&state));
        }
        prop_assert_eq!(canonical_state(&trace.final_state), canonical_state(&state));
        if let Outcome::Converged { .. } = trace.outcome {
            prop_assert!(is_equilibrium(&state, SINGLE).unwrap().is_equilibrium);
        }
        if let Outcome::Cycle { first, period } = trace.outcome {
            prop_assert_eq!(trace.state(first), trace.state(first + period));
        }
    }

    #[test]
    fn equilibria_are_fixed_points(inst in tree_instance(10), seed in any::<u64>()) {
        if is_equilibrium(&inst, SINGLE).unwrap().is_equilibrium {
            for sched in [Scheduler::RoundRobin, Scheduler::Random { seed }, Scheduler::Explicit(vec![0])] {
                let trace = run_dynamics(&inst, &sched, SINGLE, 100).unwrap();
                prop_assert_eq!(trace.moves(), 0);
                let converged = matches!(trace.outcome, Outcome::Converged { moves: 0, .. });
                prop_assert!(converged);
            }
        }
    }

    #[test]
    fn fingerprints_ignore_edge_order(inst in any_instance(12), rot in 0usize..64) {
        let mut edges: Vec<(usize, usize)> = inst.connection().edges().iter().map(|&(u, v)| (v, u)).collect();
        let k = rot % edges.len().max(1);
        edges.rotate_left(k);
        let again = GameInstance::new(inst.node_count(), edges, inst.interests().edges().to_vec(), inst.version()).unwrap();
        prop_assert_eq!(canonical_state(&again), canonical_state(&inst));
    }

    #[test]
    fn alg1_is_within_twice_the_optimum(n in 2usize..=6, p in 0.0..1.0f64, seed in any::<u64>()) {
        let ints = Graph::new(n, seeded_interests(n, p, seed)).unwrap();
        let t = build_equilibrium_alg1(&ints).unwrap();
        let opt = brute_force_optimum(&ints, CostVersion::Max).unwrap();
        prop_assert!(opt.cost >= Cost::integer(n as u64));
        let sc = social_cost(&t).unwrap();
        prop_assert!(sc <= opt.cost + opt.cost);
        prop_assert!(opt.cost <= sc);
    }
}

#[test]
fn distinct_edge_sets_have_distinct_fingerprints() {
    let ints = [(0, 1), (1, 2)];
    let a = GameInstance::new_tree(3, [(0, 1), (1, 2)], ints, CostVersion::Max).unwrap();
    let b = GameInstance::new_tree(3, [(0, 2), (1, 2)], ints, CostVersion::Max).unwrap();
    assert_ne!(canonical_state(&a), canonical_state(&b));
    assert_eq!(canonical_state(&a), canonical_state(&a.clone()));
}
