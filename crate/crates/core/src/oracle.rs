//! Exhaustive ground truth on small instances.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Result, TdgError};
use crate::gadgets::{gadget_graph_partitioning_reduction, gadget_maxcut_reduction, WeightedCompleteGraph};
use crate::instance::{Assignment, TdgInstance};
use crate::rational::Rational;
use crate::solvers::{SolverMethod, SolverOutcome, SolverReport};
use crate::stability::{placement_is_jump_stable, placement_is_swap_stable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_assignments: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_assignments: 10_000_000,
        }
    }
}

/// Number of injective placements of `n` agents on `nodes` nodes.
pub fn assignment_count(nodes: usize, n: usize) -> BigUint {
    if n > nodes {
        return BigUint::from(0u32);
    }
    ((nodes - n + 1)..=nodes).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

fn check_budget(nodes: usize, n: usize, budget: OracleBudget) -> Result<()> {
    let count = assignment_count(nodes, n);
    if count > BigUint::from(budget.max_assignments) {
        return Err(TdgError::BudgetExceeded {
            count: count.to_string(),
            budget: budget.max_assignments,
        });
    }
    Ok(())
}

// Depth-first over injective placements in lexicographic order; `visit`
// returns true to stop. Returns true if stopped.
fn walk(
    placement: &mut Vec<usize>,
    used: &mut [bool],
    n: usize,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if placement.len() == n {
        return visit(placement);
    }
    for v in 0..used.len() {
        if used[v] {
            continue;
        }
        used[v] = true;
        placement.push(v);
        let stop = walk(placement, used, n, visit);
        placement.pop();
        used[v] = false;
        if stop {
            return true;
        }
    }
    false
}

/// Calls `visit` on every injective placement in lexicographic order until it
/// returns true.
pub fn for_each_assignment(nodes: usize, n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut used = vec![false; nodes];
    walk(&mut Vec::with_capacity(n), &mut used, n, &mut visit);
}

// Lexicographically first placement accepted by `accept`, searching the
// first agent's node in parallel.
fn first_matching(
    nodes: usize,
    n: usize,
    accept: impl Fn(&[usize]) -> bool + Sync,
) -> Option<Vec<usize>> {
    if n == 0 {
        return accept(&[]).then(Vec::new);
    }
    (0..nodes).into_par_iter().find_map_first(|first| {
        let mut used = vec![false; nodes];
        used[first] = true;
        let mut placement = vec![first];
        let mut found = None;
        walk(&mut placement, &mut used, n, &mut |p| {
            if accept(p) {
                found = Some(p.to_vec());
                true
            } else {
                false
            }
        });
        found
    })
}

/// Lexicographically first jump stable assignment, if any.
pub fn exists_jump_stable(instance: &TdgInstance, budget: OracleBudget) -> Result<Option<Assignment>> {
    check_budget(instance.node_count(), instance.n(), budget)?;
    Ok(first_matching(instance.node_count(), instance.n(), |p| {
        placement_is_jump_stable(instance, p)
    })
    .map(Assignment::from_vec_unchecked))
}

/// Lexicographically first swap stable assignment, if any.
pub fn exists_swap_stable(instance: &TdgInstance, budget: OracleBudget) -> Result<Option<Assignment>> {
    check_budget(instance.node_count(), instance.n(), budget)?;
    Ok(first_matching(instance.node_count(), instance.n(), |p| {
        placement_is_swap_stable(instance, p)
    })
    .map(Assignment::from_vec_unchecked))
}

/// Solver wrapper over [`exists_jump_stable`].
pub fn solve_brute_force(instance: &TdgInstance, budget: OracleBudget) -> Result<SolverReport> {
    let outcome = match exists_jump_stable(instance, budget)? {
        Some(a) => SolverOutcome::Assignment(a),
        None => SolverOutcome::NonExistent,
    };
    Ok(SolverReport {
        outcome,
        method: SolverMethod::BruteForce,
        checks: Vec::new(),
        relabeling: None,
    })
}

/// Result of comparing stability with local optimality over every assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub holds: bool,
    pub assignments_checked: u64,
    /// First assignment where the two notions disagree.
    pub counterexample: Option<Assignment>,
}

// Total weight of edges with endpoints on different sides.
fn cut_weight(graph: &WeightedCompleteGraph, side: &[bool]) -> Rational {
    let t = graph.vertex_count();
    let mut total = Rational::zero();
    for x in 0..t {
        for y in x + 1..t {
            if side[x] != side[y] {
                total += graph.weight(x, y);
            }
        }
    }
    total
}

fn flip_locally_optimal(graph: &WeightedCompleteGraph, side: &[bool]) -> bool {
    let base = cut_weight(graph, side);
    let mut s = side.to_vec();
    (0..s.len()).all(|x| {
        s[x] = !s[x];
        let better = cut_weight(graph, &s) > base;
        s[x] = !s[x];
        !better
    })
}

fn swap_locally_optimal(graph: &WeightedCompleteGraph, side: &[bool]) -> bool {
    let base = cut_weight(graph, side);
    let mut s = side.to_vec();
    for x in 0..s.len() {
        for y in 0..s.len() {
            if s[x] && !s[y] {
                s[x] = false;
                s[y] = true;
                let better = cut_weight(graph, &s) < base;
                s[x] = true;
                s[y] = false;
                if better {
                    return false;
                }
            }
        }
    }
    true
}

fn correspondence(
    instance: &TdgInstance,
    clique_size: usize,
    budget: OracleBudget,
    stable: impl Fn(&[usize]) -> bool,
    optimal: impl Fn(&[bool]) -> bool,
) -> Result<CorrespondenceReport> {
    check_budget(instance.node_count(), instance.n(), budget)?;
    let mut checked = 0u64;
    let mut counterexample = None;
    for_each_assignment(instance.node_count(), instance.n(), |p| {
        checked += 1;
        // nodes 0..t form the first clique
        let side: Vec<bool> = p.iter().map(|&v| v < clique_size).collect();
        if stable(p) != optimal(&side) {
            counterexample = Some(Assignment::from_vec_unchecked(p.to_vec()));
            return true;
        }
        false
    });
    Ok(CorrespondenceReport {
        holds: counterexample.is_none(),
        assignments_checked: checked,
        counterexample,
    })
}

/// Jump stability of the Max-Cut reduction against Flip-local optimality of
/// the induced 2-partition, over every assignment.
pub fn jump_correspondence_report(
    graph: &WeightedCompleteGraph,
    budget: OracleBudget,
) -> Result<CorrespondenceReport> {
    let gadget = gadget_maxcut_reduction(graph)?;
    let inst = &gadget.instance;
    correspondence(
        inst,
        graph.vertex_count(),
        budget,
        |p| placement_is_jump_stable(inst, p),
        |side| flip_locally_optimal(graph, side),
    )
}

pub fn verify_local_optimum_correspondence(
    graph: &WeightedCompleteGraph,
    budget: OracleBudget,
) -> Result<bool> {
    Ok(jump_correspondence_report(graph, budget)?.holds)
}

/// Swap stability of the Graph-Partitioning reduction against
/// Swap-local optimality of the induced balanced partition.
pub fn swap_correspondence_report(
    graph: &WeightedCompleteGraph,
    budget: OracleBudget,
) -> Result<CorrespondenceReport> {
    let gadget = gadget_graph_partitioning_reduction(graph)?;
    let inst = &gadget.instance;
    correspondence(
        inst,
        graph.vertex_count() / 2,
        budget,
        |p| placement_is_swap_stable(inst, p),
        |side| swap_locally_optimal(graph, side),
    )
}

pub fn verify_swap_local_optimum_correspondence(
    graph: &WeightedCompleteGraph,
    budget: OracleBudget,
) -> Result<bool> {
    Ok(swap_correspondence_report(graph, budget)?.holds)
}
