use super::{check, SolverMethod, SolverReport};
use crate::error::Result;
use crate::instance::TdgInstance;

// Branch offsets (0 = next to the center) for `r` agents on a long branch.
fn long_branch_offsets(r: usize) -> Vec<usize> {
    let s = r / 2;
    if r % 2 == 0 {
        (0..s).map(|t| 2 * t).chain((0..s).map(|t| 2 * s - 1 - 2 * t)).collect()
    } else {
        (0..s).map(|t| 2 * t + 1).chain((0..=s).map(|t| 2 * s - 2 * t)).collect()
    }
}

// Agents per long branch: an even split of `total`, at least 5 each, the
// remainder going to the last branches, capped by branch size.
fn distribute(total: usize, sizes: &[usize]) -> Vec<usize> {
    let t = sizes.len();
    let (q, extra) = (total / t, total % t);
    let mut counts: Vec<usize> = (0..t)
        .map(|b| (q + usize::from(b >= t - extra)).max(5).min(sizes[b]))
        .collect();
    let mut missing = total.saturating_sub(counts.iter().sum());
    for b in (0..t).rev() {
        let room = sizes[b] - counts[b];
        let add = room.min(missing);
        counts[b] += add;
        missing -= add;
    }
    counts
}

/// Branch-by-branch fill of an extended star when the friendship graph is a
/// single cycle through all agents.
pub fn solve_extended_star(instance: &TdgInstance) -> Result<SolverReport> {
    let method = SolverMethod::ExtendedStar;
    let star = instance.topology().as_extended_star();
    let k = star.as_ref().map_or(0, |s| s.branches.len());
    let friends = instance.friendship_graph();
    let n = instance.n();
    let checks = vec![
        check("topology-is-extended-star", star.is_some()),
        check("at-least-three-branches", k >= 3),
        check("enough-agents", n > 5 * k),
        check("friendship-single-cycle", friends.is_single_cycle()),
        check("non-negative-utilities", instance.utilities().is_nonnegative()),
    ];
    if let Some(report) = SolverReport::not_applicable(method, checks.clone()) {
        return Ok(report);
    }
    let star = star.unwrap();

    // label order: agent 0 first, then along the friendship arcs
    let mut labels = Vec::with_capacity(n);
    let mut cur = 0;
    for _ in 0..n {
        labels.push(cur);
        cur = friends.friends(cur)[0];
    }

    let (short, long): (Vec<&Vec<usize>>, Vec<&Vec<usize>>) =
        star.branches.iter().partition(|b| b.len() <= 4);
    let mut slots: Vec<usize> = Vec::with_capacity(n);
    for branch in &short {
        slots.extend(branch.iter().rev());
    }
    let remaining = n - slots.len() - 1;
    let sizes: Vec<usize> = long.iter().map(|b| b.len()).collect();
    for (branch, r) in long.iter().zip(distribute(remaining, &sizes)) {
        slots.extend(long_branch_offsets(r).into_iter().map(|o| branch[o]));
    }
    slots.push(star.center);

    let mut placement = vec![usize::MAX; n];
    for (&agent, &node) in labels.iter().zip(&slots) {
        placement[agent] = node;
    }
    SolverReport::verified(instance, method, checks, placement, Some(labels))
}
