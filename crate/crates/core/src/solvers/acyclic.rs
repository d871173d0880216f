use super::{check, place_greedily, SolverMethod, SolverReport};
use crate::error::Result;
use crate::instance::TdgInstance;

/// Greedy placement in topological order of an acyclic friendship graph
/// with non-negative utilities.
pub fn solve_acyclic(instance: &TdgInstance) -> Result<SolverReport> {
    let method = SolverMethod::AcyclicGreedy;
    let order = instance.friendship_graph().topological_order();
    let checks = vec![
        check("friendship-acyclic", order.is_some()),
        check("non-negative-utilities", instance.utilities().is_nonnegative()),
    ];
    if let Some(report) = SolverReport::not_applicable(method, checks.clone()) {
        return Ok(report);
    }
    let mut placed = vec![None; instance.n()];
    let mut occupied = vec![false; instance.node_count()];
    place_greedily(instance, &order.unwrap(), &mut placed, &mut occupied);
    let placement = placed.into_iter().map(Option::unwrap).collect();
    SolverReport::verified(instance, method, checks, placement, None)
}
