use super::{check, friends_only, SolverMethod, SolverReport};
use crate::error::Result;
use crate::instance::TdgInstance;

/// Left-to-right fill of a path: each node takes the most valued unassigned
/// friend of the agent on the previous node, or else the lowest unassigned agent.
pub fn solve_path(instance: &TdgInstance) -> Result<SolverReport> {
    let method = SolverMethod::PathGreedy;
    let nodes = instance.topology().as_path();
    let (nonneg, few) = friends_only(instance, 2);
    let checks = vec![
        check("topology-is-path", nodes.is_some()),
        check("at-most-two-friends", few),
        check("non-negative-utilities", nonneg),
    ];
    if let Some(report) = SolverReport::not_applicable(method, checks.clone()) {
        return Ok(report);
    }
    let nodes = nodes.unwrap();
    let n = instance.n();
    let u = instance.utilities();
    let mut placement = vec![usize::MAX; n];
    let mut previous: Option<usize> = None;
    for &node in nodes.iter().take(n) {
        let friend = previous.and_then(|i| {
            (0..n)
                .filter(|&j| placement[j] == usize::MAX && u.get(i, j).is_positive())
                .max_by(|&a, &b| u.get(i, a).cmp(u.get(i, b)).then(b.cmp(&a)))
        });
        let next = friend.unwrap_or_else(|| (0..n).find(|&j| placement[j] == usize::MAX).unwrap());
        placement[next] = node;
        previous = Some(next);
    }
    SolverReport::verified(instance, method, checks, placement, None)
}
