use super::{check, friends_only, place_greedily, SolverMethod, SolverOutcome, SolverReport};
use crate::error::Result;
use crate::instance::TdgInstance;

// Offset (0-based, within c_1..c_m) of the agent with label `label` (1-based)
// in the pattern for a friendship cycle of length `m`.
fn long_pattern(m: usize, label: usize) -> usize {
    if m % 2 == 0 {
        if label <= m / 2 {
            m / 2 - label
        } else {
            label - 1
        }
    } else {
        let h = m / 2;
        if label <= h {
            2 * label - 2
        } else if label == h + 1 {
            m - 2
        } else if label == h + 2 {
            m - 1
        } else {
            2 * (m + 1 - label) - 1
        }
    }
}

// Labels on c_1..c_m for the short cycles; c_{m+1} is the critical node.
fn short_pattern(m: usize) -> &'static [usize] {
    match m {
        3 => &[3, 2, 1],
        5 => &[1, 5, 2, 4, 3],
        _ => unreachable!(),
    }
}

// Label sitting on c_m, next to the critical node.
fn short_anchor_label(m: usize) -> usize {
    short_pattern(m)[m - 1]
}

fn is_short(m: usize) -> bool {
    m == 3 || m == 5
}

/// Placement for a topology cycle with every agent having at most one
/// friend: reports non-existence exactly for a covering 3-cycle or 5-cycle.
pub fn solve_cycle_on_cycle(instance: &TdgInstance) -> Result<SolverReport> {
    let method = SolverMethod::CycleOnCycle;
    let ring = instance.topology().as_cycle();
    let (nonneg, single) = friends_only(instance, 1);
    let checks = vec![
        check("topology-is-cycle", ring.is_some()),
        check("more-nodes-than-agents", instance.node_count() > instance.n()),
        check("at-most-one-friend", single),
        check("zero-utility-for-non-friends", nonneg),
    ];
    if let Some(report) = SolverReport::not_applicable(method, checks.clone()) {
        return Ok(report);
    }
    let ring = ring.unwrap();
    let len = ring.len();
    let n = instance.n();
    let friends = instance.friendship_graph();
    let cycles = friends.functional_cycles().expect("out-degree at most one");
    if cycles.len() == 1 && cycles[0].len() == n && is_short(n) {
        return Ok(SolverReport {
            outcome: SolverOutcome::NonExistent,
            method,
            checks,
            relabeling: None,
        });
    }

    let mut placed: Vec<Option<usize>> = vec![None; n];
    let mut occupied = vec![false; len];
    let mut put = |agent: usize, pos: usize, placed: &mut Vec<Option<usize>>| {
        let node = ring[pos % len];
        placed[agent] = Some(node);
        occupied[node] = true;
    };

    let mut on_cycle = vec![false; n];
    for c in &cycles {
        for &a in c {
            on_cycle[a] = true;
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&a| !on_cycle[a]).collect();

    if cycles.len() == 1 && is_short(cycles[0].len()) {
        // One short cycle with other agents around: borrow an agent whose
        // friend (if any) is on the cycle and let it guard the critical node.
        let cycle = &cycles[0];
        let m = cycle.len();
        let guard = *rest
            .iter()
            .find(|&&a| friends.friends(a).iter().all(|&f| on_cycle[f]))
            .expect("acyclic remainder has a sink");
        put(guard, 0, &mut placed);
        let shift = match friends.friends(guard).first() {
            Some(&f) => {
                let at = cycle.iter().position(|&x| x == f).unwrap();
                (at + m + 1 - short_anchor_label(m)) % m
            }
            None => 0,
        };
        // Mirrored so that c_{m+1} is position 0 and c_k is position m + 1 - k.
        for (k, &label) in short_pattern(m).iter().enumerate() {
            let agent = cycle[(shift + label - 1) % m];
            put(agent, m - k, &mut placed);
        }
        let others: Vec<usize> = rest.iter().copied().filter(|&a| a != guard).collect();
        let order = friends
            .topological_order_within(&others)
            .expect("agents off the cycles form a DAG");
        place_greedily(instance, &order, &mut placed, &mut occupied);
    } else {
        let mut cursor = 0usize;
        for (index, cycle) in cycles.iter().enumerate() {
            let m = cycle.len();
            if is_short(m) {
                for (k, &label) in short_pattern(m).iter().enumerate() {
                    // The first block points its critical node forward at the
                    // next block; later ones point it back at the previous one.
                    let pos = if index == 0 { cursor + k } else { cursor + m - 1 - k };
                    put(cycle[label - 1], pos, &mut placed);
                }
            } else {
                for (offset, &agent) in cycle.iter().enumerate() {
                    put(agent, cursor + long_pattern(m, offset + 1), &mut placed);
                }
            }
            cursor += m;
        }
        let order = friends
            .topological_order_within(&rest)
            .expect("agents off the cycles form a DAG");
        place_greedily(instance, &order, &mut placed, &mut occupied);
    }

    let placement = placed.into_iter().map(Option::unwrap).collect();
    SolverReport::verified(instance, method, checks, placement, None)
}
