//! Beneficial deviations, stability checks and the two potential functions.

use crate::error::{Result, TdgError};
use crate::instance::{Assignment, TdgInstance};
use crate::rational::Rational;

/// A beneficial deviation together with its exact gain(s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deviation {
    Jump {
        agent: usize,
        target: usize,
        gain: Rational,
    },
    Swap {
        first: usize,
        second: usize,
        gains: (Rational, Rational),
    },
}

fn occupancy(node_count: usize, placement: &[usize]) -> Vec<bool> {
    let mut occupied = vec![false; node_count];
    for &v in placement {
        occupied[v] = true;
    }
    occupied
}

/// All beneficial jumps, ordered by agent then target node.
pub fn beneficial_jumps(instance: &TdgInstance, lambda: &Assignment) -> Vec<Deviation> {
    let placement = lambda.placement();
    let occupied = occupancy(instance.node_count(), placement);
    let mut out = Vec::new();
    for i in 0..placement.len() {
        let current = instance.utility_in(placement, i);
        for v in (0..occupied.len()).filter(|&v| !occupied[v]) {
            let gain = instance.utility_after_jump(placement, i, v) - &current;
            if gain.is_positive() {
                out.push(Deviation::Jump {
                    agent: i,
                    target: v,
                    gain,
                });
            }
        }
    }
    out
}

/// Stability test on a raw placement, stopping at the first beneficial jump.
pub(crate) fn placement_is_jump_stable(instance: &TdgInstance, placement: &[usize]) -> bool {
    let node_count = instance.node_count();
    if placement.len() >= node_count {
        return true;
    }
    let occupied = occupancy(node_count, placement);
    (0..placement.len()).all(|i| {
        let current = instance.utility_in(placement, i);
        (0..node_count)
            .filter(|&v| !occupied[v])
            .all(|v| instance.utility_after_jump(placement, i, v) <= current)
    })
}

pub fn is_jump_stable(instance: &TdgInstance, lambda: &Assignment) -> bool {
    placement_is_jump_stable(instance, lambda.placement())
}

/// All pairs `i < j` for which exchanging nodes strictly helps both agents.
pub fn beneficial_swaps(instance: &TdgInstance, lambda: &Assignment) -> Vec<Deviation> {
    let placement = lambda.placement();
    let current: Vec<Rational> = (0..placement.len())
        .map(|i| instance.utility_in(placement, i))
        .collect();
    let mut out = Vec::new();
    for i in 0..placement.len() {
        for j in i + 1..placement.len() {
            let (ui, uj) = instance.utilities_after_swap(placement, i, j);
            let gi = ui - &current[i];
            if !gi.is_positive() {
                continue;
            }
            let gj = uj - &current[j];
            if gj.is_positive() {
                out.push(Deviation::Swap {
                    first: i,
                    second: j,
                    gains: (gi, gj),
                });
            }
        }
    }
    out
}

pub(crate) fn placement_is_swap_stable(instance: &TdgInstance, placement: &[usize]) -> bool {
    let current: Vec<Rational> = (0..placement.len())
        .map(|i| instance.utility_in(placement, i))
        .collect();
    (0..placement.len()).all(|i| {
        (i + 1..placement.len()).all(|j| {
            let (ui, uj) = instance.utilities_after_swap(placement, i, j);
            ui <= current[i] || uj <= current[j]
        })
    })
}

pub fn is_swap_stable(instance: &TdgInstance, lambda: &Assignment) -> bool {
    placement_is_swap_stable(instance, lambda.placement())
}

/// Sum of all agents' utilities.
pub fn potential_phi(instance: &TdgInstance, lambda: &Assignment) -> Rational {
    (0..lambda.len())
        .map(|i| instance.utility_in(lambda.placement(), i))
        .sum()
}

/// Utilities listed in the given order, which must place every agent after
/// all of her friends.
pub fn potential_lambda_vec(
    instance: &TdgInstance,
    lambda: &Assignment,
    order: &[usize],
) -> Result<Vec<Rational>> {
    let friends = instance.friendship_graph();
    if !friends.is_acyclic() {
        return Err(TdgError::NoTopologicalOrder);
    }
    let n = instance.n();
    let mut rank = vec![usize::MAX; n];
    for (pos, &agent) in order.iter().enumerate() {
        if agent >= n || rank[agent] != usize::MAX {
            return Err(TdgError::InvalidOrder(format!(
                "order is not a permutation of the {n} agents"
            )));
        }
        rank[agent] = pos;
    }
    if order.len() != n {
        return Err(TdgError::InvalidOrder(format!(
            "order lists {} agents, expected {n}",
            order.len()
        )));
    }
    if let Some(&(i, j)) = friends.arcs().iter().find(|&&(i, j)| rank[j] > rank[i]) {
        return Err(TdgError::InvalidOrder(format!(
            "agent {} appears before her friend {}",
            i + 1,
            j + 1
        )));
    }
    Ok(order
        .iter()
        .map(|&i| instance.utility_in(lambda.placement(), i))
        .collect())
}
