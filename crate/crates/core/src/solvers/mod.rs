//! Constructive algorithms producing jump stable assignments for special
//! classes of instances.

mod acyclic;
mod cycle;
mod path;
mod star;

pub use acyclic::solve_acyclic;
pub use cycle::solve_cycle_on_cycle;
pub use path::solve_path;
pub use star::solve_extended_star;

use crate::error::{Result, TdgError};
use crate::instance::{Assignment, TdgInstance};
use crate::stability::is_jump_stable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverMethod {
    AcyclicGreedy,
    CycleOnCycle,
    PathGreedy,
    ExtendedStar,
    BruteForce,
}

impl SolverMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolverMethod::AcyclicGreedy => "acyclic-greedy",
            SolverMethod::CycleOnCycle => "cycle-on-cycle",
            SolverMethod::PathGreedy => "path-greedy",
            SolverMethod::ExtendedStar => "extended-star",
            SolverMethod::BruteForce => "brute-force",
        }
    }
}

/// A named structural test evaluated before construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    Assignment(Assignment),
    NonExistent,
    /// Name of the first failing precondition.
    NotApplicable(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverReport {
    pub outcome: SolverOutcome,
    pub method: SolverMethod,
    pub checks: Vec<Check>,
    /// `relabeling[k]` is the agent that played label `k + 1` in the construction.
    pub relabeling: Option<Vec<usize>>,
}

impl SolverReport {
    pub fn assignment(&self) -> Option<&Assignment> {
        match &self.outcome {
            SolverOutcome::Assignment(a) => Some(a),
            _ => None,
        }
    }

    pub(crate) fn not_applicable(method: SolverMethod, checks: Vec<Check>) -> Option<Self> {
        let failed = checks.iter().find(|c| !c.passed)?.name;
        Some(Self {
            outcome: SolverOutcome::NotApplicable(failed),
            method,
            checks,
            relabeling: None,
        })
    }

    /// Wraps a constructed placement after confirming it is jump stable.
    pub(crate) fn verified(
        instance: &TdgInstance,
        method: SolverMethod,
        checks: Vec<Check>,
        placement: Vec<usize>,
        relabeling: Option<Vec<usize>>,
    ) -> Result<Self> {
        let assignment = Assignment::new(placement)?;
        assignment.validate_for(instance)?;
        if !is_jump_stable(instance, &assignment) {
            return Err(TdgError::UnstableConstruction {
                method: method.name().to_string(),
            });
        }
        Ok(Self {
            outcome: SolverOutcome::Assignment(assignment),
            method,
            checks,
            relabeling,
        })
    }
}

pub(crate) fn check(name: &'static str, passed: bool) -> Check {
    Check { name, passed }
}

/// Every nonzero utility is positive and each agent has at most `limit` of them.
pub(crate) fn friends_only(instance: &TdgInstance, limit: usize) -> (bool, bool) {
    let u = instance.utilities();
    let nonneg = u.is_nonnegative();
    let few = (0..instance.n()).all(|i| u.row(i).iter().filter(|v| !v.is_zero()).count() <= limit);
    (nonneg, few)
}

/// Places `order` one by one on the empty node maximizing utility towards
/// agents already placed (ties to the lowest node index).
pub(crate) fn place_greedily(
    instance: &TdgInstance,
    order: &[usize],
    placed: &mut [Option<usize>],
    occupied: &mut [bool],
) {
    for &i in order {
        let mut best: Option<(usize, crate::rational::Rational)> = None;
        for v in (0..occupied.len()).filter(|&v| !occupied[v]) {
            let value = instance.partial_utility(i, v, placed);
            if best.as_ref().map_or(true, |(_, b)| value > *b) {
                best = Some((v, value));
            }
        }
        let (v, _) = best.expect("fewer agents than nodes");
        placed[i] = Some(v);
        occupied[v] = true;
    }
}
