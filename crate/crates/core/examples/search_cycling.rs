//! Searches rotation-symmetric 12-node MAX instances for a best-response cycle
//! under the order x1..x4, y1..y4, z1..z4. Each group g hangs a 4-node subtree
//! off g3; the core is the path x3 - y3 - z3.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swapnet_core::constructions::cycling::{x, y, z};
use swapnet_core::*;

fn id(g: usize, i: usize) -> NodeId {
    [x, y, z][g % 3](i)
}

fn build(parent: [usize; 4], inner: u8, cross: u16) -> Option<GameInstance> {
    let mut conn = vec![(x(3), y(3)), (y(3), z(3))];
    let mut ints = Vec::new();
    for g in 0..3 {
        for i in [1, 2, 4] {
            conn.push((id(g, i), id(g, parent[i - 1])));
        }
        let mut k = 0;
        for a in 1..=4 {
            for b in a + 1..=4 {
                if inner >> k & 1 == 1 {
                    ints.push((id(g, a), id(g, b)));
                }
                k += 1;
            }
        }
        for a in 1..=4 {
            for b in 1..=4 {
                if cross >> ((a - 1) * 4 + b - 1) & 1 == 1 {
                    ints.push((id(g, a), id(g + 1, b)));
                }
            }
        }
    }
    GameInstance::new_tree(12, conn, ints, CostVersion::Max).ok()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tried = 0u64;
    loop {
        tried += 1;
        // parent of g1, g2, g4 within the group (3 is the root)
        let mut parent = [0usize; 4];
        for i in [1, 2, 4] {
            parent[i - 1] = loop {
                let p = rng.random_range(1..=4);
                if p != i {
                    break p;
                }
            };
        }
        let inner: u8 = rng.random::<u8>() & 0x3f;
        let cross: u16 = rng.random();
        let Some(inst) = build(parent, inner, cross) else {
            continue;
        };
        if !inst.is_tree() {
            continue;
        }
        let want = Swap::new(x(3), y(3), z(3));
        match best_response(&inst, x(3), EquilibriumMode::Single) {
            Ok(Some(br)) if br.step.swaps == vec![want] => {}
            _ => continue,
        }
        if [x(1), x(2), z(4)]
            .iter()
            .any(|&v| !matches!(best_response(&inst, v, EquilibriumMode::Single), Ok(None)))
        {
            continue;
        }
        let order: Vec<NodeId> = (1..=4)
            .map(x)
            .chain((1..=4).map(y))
            .chain((1..=4).map(z))
            .collect();
        let trace = run_dynamics(
            &inst,
            &Scheduler::Explicit(order),
            EquilibriumMode::Single,
            12,
        )
        .unwrap();
        println!(
            "found after {tried}: parent={parent:?} inner={inner:#x} cross={cross:#x} outcome={:?}",
            trace.outcome
        );
        println!("conn {:?}", inst.connection().edges());
        println!("ints {:?}", inst.interests().edges());
        if matches!(
            trace.outcome,
            Outcome::Cycle {
                first: 0,
                period: 12
            }
        ) {
            break;
        }
    }
}
