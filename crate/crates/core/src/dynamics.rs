//! Jump and swap dynamics, scheduling policies, cycle detection and exact
//! state-graph analysis of the convergence questions.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, TdgError};
use crate::gadgets::gadget_exponential_family;
use crate::instance::{Assignment, TdgInstance};
use crate::oracle::for_each_assignment;
use crate::rational::Rational;
use crate::stability::{beneficial_jumps, beneficial_swaps, Deviation};

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;
pub const DEFAULT_STATE_LIMIT: usize = 10_000_000;

/// Which beneficial deviation is performed next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchedulerPolicy {
    /// First deviation in agent-then-node (or pair) order.
    FirstDeviator,
    /// Largest gain, ties broken by the deterministic order. For swaps the
    /// sum of both gains is compared.
    BestGain,
    /// Fixed moves: `(agent, node)` for jumps, `(agent, agent)` for swaps.
    Scripted(Vec<(usize, usize)>),
    /// Uniform choice among beneficial deviations.
    SeededRandom(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Step {
    Jump {
        agent: usize,
        from: usize,
        to: usize,
        gain: Rational,
    },
    Swap {
        first: usize,
        second: usize,
        gains: (Rational, Rational),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Converged(Assignment),
    /// The state after the last step equals the state after step
    /// `first_repeat_index` (0 is the start).
    CycleDetected {
        first_repeat_index: usize,
        period: usize,
    },
    StepLimit,
    /// A script ran out while beneficial deviations remained.
    ScriptExhausted(Assignment),
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Converged(_) => "converged",
            Outcome::CycleDetected { .. } => "cycle-detected",
            Outcome::StepLimit => "step-limit",
            Outcome::ScriptExhausted(_) => "script-exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub start: Assignment,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    /// Φ before the first step and after every step; empty unless the
    /// utilities are symmetric.
    pub phi_values: Vec<Rational>,
}

impl DynamicsTrace {
    pub fn jumps_by(&self, agent: usize) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Jump { agent: a, .. } if *a == agent))
            .count()
    }

    /// Placement reached after the first `count` steps.
    pub fn state_after(&self, count: usize) -> Assignment {
        let mut placement = self.start.placement().to_vec();
        for step in &self.steps[..count] {
            apply(&mut placement, step);
        }
        Assignment::from_vec_unchecked(placement)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Notion {
    Jump,
    Swap,
}

fn apply(placement: &mut [usize], step: &Step) {
    match step {
        Step::Jump { agent, to, .. } => placement[*agent] = *to,
        Step::Swap { first, second, .. } => placement.swap(*first, *second),
    }
}

fn to_step(placement: &[usize], deviation: Deviation) -> Step {
    match deviation {
        Deviation::Jump {
            agent,
            target,
            gain,
        } => Step::Jump {
            agent,
            from: placement[agent],
            to: target,
            gain,
        },
        Deviation::Swap {
            first,
            second,
            gains,
        } => Step::Swap {
            first,
            second,
            gains,
        },
    }
}

fn first_jump(instance: &TdgInstance, placement: &[usize]) -> Option<Step> {
    let mut occupied = vec![false; instance.node_count()];
    for &v in placement {
        occupied[v] = true;
    }
    for i in 0..placement.len() {
        let current = instance.utility_in(placement, i);
        for v in (0..occupied.len()).filter(|&v| !occupied[v]) {
            let gain = instance.utility_after_jump(placement, i, v) - &current;
            if gain.is_positive() {
                return Some(Step::Jump {
                    agent: i,
                    from: placement[i],
                    to: v,
                    gain,
                });
            }
        }
    }
    None
}

fn all_moves(instance: &TdgInstance, placement: &[usize], notion: Notion) -> Vec<Step> {
    let lambda = Assignment::from_vec_unchecked(placement.to_vec());
    let deviations = match notion {
        Notion::Jump => beneficial_jumps(instance, &lambda),
        Notion::Swap => beneficial_swaps(instance, &lambda),
    };
    deviations.into_iter().map(|d| to_step(placement, d)).collect()
}

fn total_gain(step: &Step) -> Rational {
    match step {
        Step::Jump { gain, .. } => gain.clone(),
        Step::Swap { gains, .. } => &gains.0 + &gains.1,
    }
}

fn scripted_step(
    instance: &TdgInstance,
    placement: &[usize],
    notion: Notion,
    index: usize,
    (x, y): (usize, usize),
) -> Result<Step> {
    let fail = |reason: String| TdgError::ScriptStep { index, reason };
    let n = placement.len();
    if x >= n {
        return Err(fail(format!("agent {} out of range", x + 1)));
    }
    match notion {
        Notion::Jump => {
            if y >= instance.node_count() {
                return Err(fail(format!("node {} out of range", y + 1)));
            }
            if placement.contains(&y) {
                return Err(fail(format!("node {} is occupied", y + 1)));
            }
            let gain = instance.utility_after_jump(placement, x, y) - instance.utility_in(placement, x);
            if !gain.is_positive() {
                return Err(fail(format!(
                    "jump of agent {} to node {} has gain {gain}",
                    x + 1,
                    y + 1
                )));
            }
            Ok(Step::Jump {
                agent: x,
                from: placement[x],
                to: y,
                gain,
            })
        }
        Notion::Swap => {
            if y >= n || x == y {
                return Err(fail(format!("invalid swap pair ({}, {})", x + 1, y + 1)));
            }
            let (ux, uy) = instance.utilities_after_swap(placement, x, y);
            let gx = ux - instance.utility_in(placement, x);
            let gy = uy - instance.utility_in(placement, y);
            if !gx.is_positive() || !gy.is_positive() {
                return Err(fail(format!(
                    "swap of agents {} and {} has gains {gx} and {gy}",
                    x + 1,
                    y + 1
                )));
            }
            Ok(Step::Swap {
                first: x,
                second: y,
                gains: (gx, gy),
            })
        }
    }
}

fn run(
    instance: &TdgInstance,
    start: &Assignment,
    policy: &SchedulerPolicy,
    max_steps: usize,
    notion: Notion,
) -> Result<DynamicsTrace> {
    start.validate_for(instance)?;
    let symmetric = instance.utilities().is_symmetric();
    let mut placement = start.placement().to_vec();
    let phi = |p: &[usize]| -> Rational { (0..p.len()).map(|i| instance.utility_in(p, i)).sum() };
    let mut phi_values = Vec::new();
    if symmetric {
        phi_values.push(phi(&placement));
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    seen.insert(placement.clone(), 0);
    let mut steps = Vec::new();
    let mut rng = match policy {
        SchedulerPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let outcome = loop {
        let step = match policy {
            SchedulerPolicy::Scripted(script) if steps.len() < script.len() => {
                Some(scripted_step(instance, &placement, notion, steps.len(), script[steps.len()])?)
            }
            SchedulerPolicy::FirstDeviator if notion == Notion::Jump => first_jump(instance, &placement),
            SchedulerPolicy::BestGain => {
                let moves = all_moves(instance, &placement, notion);
                let mut best: Option<(Rational, Step)> = None;
                for m in moves {
                    let g = total_gain(&m);
                    if best.as_ref().map_or(true, |(b, _)| g > *b) {
                        best = Some((g, m));
                    }
                }
                best.map(|(_, m)| m)
            }
            SchedulerPolicy::SeededRandom(_) => {
                let mut moves = all_moves(instance, &placement, notion);
                if moves.is_empty() {
                    None
                } else {
                    let k = rng.as_mut().expect("seeded").gen_range(0..moves.len());
                    Some(moves.swap_remove(k))
                }
            }
            _ => all_moves(instance, &placement, notion).into_iter().next(),
        };
        let Some(step) = step else {
            break Outcome::Converged(Assignment::from_vec_unchecked(placement.clone()));
        };
        if let SchedulerPolicy::Scripted(script) = policy {
            if steps.len() >= script.len() {
                break Outcome::ScriptExhausted(Assignment::from_vec_unchecked(placement.clone()));
            }
        }
        if steps.len() >= max_steps {
            break Outcome::StepLimit;
        }
        apply(&mut placement, &step);
        steps.push(step);
        if symmetric {
            phi_values.push(phi(&placement));
        }
        let index = steps.len();
        if let Some(&first) = seen.get(&placement) {
            break Outcome::CycleDetected {
                first_repeat_index: first,
                period: index - first,
            };
        }
        seen.insert(placement.clone(), index);
    };
    Ok(DynamicsTrace {
        start: start.clone(),
        steps,
        outcome,
        phi_values,
    })
}

/// Performs beneficial jumps chosen by `policy` until none remains, a state
/// repeats, or `max_steps` steps have been taken.
pub fn run_dynamics(
    instance: &TdgInstance,
    start: &Assignment,
    policy: &SchedulerPolicy,
    max_steps: usize,
) -> Result<DynamicsTrace> {
    run(instance, start, policy, max_steps, Notion::Jump)
}

/// As [`run_dynamics`] with beneficial swaps (both agents strictly gain).
pub fn run_swap_dynamics(
    instance: &TdgInstance,
    start: &Assignment,
    policy: &SchedulerPolicy,
    max_steps: usize,
) -> Result<DynamicsTrace> {
    run(instance, start, policy, max_steps, Notion::Swap)
}

/// Replays the recursive script on the exponential family of size `k`.
pub fn run_scripted_exponential(k: usize) -> Result<(TdgInstance, DynamicsTrace)> {
    if !(1..=14).contains(&k) {
        return Err(TdgError::OutOfRange {
            name: "k",
            value: k,
            min: 1,
            max: 14,
        });
    }
    let gadget = gadget_exponential_family(k)?;
    let script = gadget.script.clone().expect("family has a script");
    let start = gadget.initial.clone().expect("family has a start");
    let trace = run_dynamics(
        &gadget.instance,
        &start,
        &SchedulerPolicy::Scripted(script.clone()),
        script.len(),
    )?;
    Ok((gadget.instance, trace))
}

/// Reachable assignments under beneficial deviations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateGraph {
    pub states: Vec<Vec<usize>>,
    /// Successor indices of each state, sorted.
    pub edges: Vec<Vec<usize>>,
    pub stable_flags: Vec<bool>,
}

impl StateGraph {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, placement: &[usize]) -> Option<usize> {
        self.states.iter().position(|s| s == placement)
    }
}

fn successors(instance: &TdgInstance, placement: &[usize], notion: Notion) -> Vec<Vec<usize>> {
    all_moves(instance, placement, notion)
        .iter()
        .map(|step| {
            let mut next = placement.to_vec();
            apply(&mut next, step);
            next
        })
        .collect()
}

fn explore(
    instance: &TdgInstance,
    starts: impl IntoIterator<Item = Vec<usize>>,
    limit: usize,
    notion: Notion,
) -> Result<StateGraph> {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |p: Vec<usize>, states: &mut Vec<Vec<usize>>, queue: &mut VecDeque<usize>| -> Result<usize> {
        if let Some(&k) = index.get(&p) {
            return Ok(k);
        }
        if states.len() >= limit {
            return Err(TdgError::StateSpaceTooLarge { limit });
        }
        let k = states.len();
        index.insert(p.clone(), k);
        states.push(p);
        queue.push_back(k);
        Ok(k)
    };
    for s in starts {
        intern(s, &mut states, &mut queue)?;
    }
    let mut edges: Vec<Vec<usize>> = Vec::new();
    while let Some(k) = queue.pop_front() {
        let next = successors(instance, &states[k], notion);
        let mut out = Vec::with_capacity(next.len());
        for p in next {
            out.push(intern(p, &mut states, &mut queue)?);
        }
        out.sort_unstable();
        out.dedup();
        if edges.len() <= k {
            edges.resize(k + 1, Vec::new());
        }
        edges[k] = out;
    }
    edges.resize(states.len(), Vec::new());
    let stable_flags = edges.iter().map(Vec::is_empty).collect();
    Ok(StateGraph {
        states,
        edges,
        stable_flags,
    })
}

/// Every assignment reachable from `start` by beneficial jumps.
pub fn explore_state_graph(instance: &TdgInstance, start: &Assignment, limit: usize) -> Result<StateGraph> {
    start.validate_for(instance)?;
    explore(instance, [start.placement().to_vec()], limit, Notion::Jump)
}

/// As [`explore_state_graph`] under beneficial swaps.
pub fn explore_swap_state_graph(
    instance: &TdgInstance,
    start: &Assignment,
    limit: usize,
) -> Result<StateGraph> {
    start.validate_for(instance)?;
    explore(instance, [start.placement().to_vec()], limit, Notion::Swap)
}

/// The jump state graph over all assignments of the instance.
pub fn explore_full_state_graph(instance: &TdgInstance, limit: usize) -> Result<StateGraph> {
    let mut all = Vec::new();
    let mut over = false;
    for_each_assignment(instance.node_count(), instance.n(), |p| {
        if all.len() >= limit {
            over = true;
            return true;
        }
        all.push(p.to_vec());
        false
    });
    if over {
        return Err(TdgError::StateSpaceTooLarge { limit });
    }
    explore(instance, all, limit, Notion::Jump)
}

/// Some reachable state is stable.
pub fn possibly_converges(graph: &StateGraph) -> bool {
    graph.stable_flags.iter().any(|&s| s)
}

/// No reachable cycle, so every run ends in a stable state.
pub fn necessarily_converges(graph: &StateGraph) -> bool {
    let n = graph.states.len();
    let mut indegree = vec![0usize; n];
    for out in &graph.edges {
        for &t in out {
            indegree[t] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut removed = 0;
    while let Some(k) = ready.pop() {
        removed += 1;
        for &t in &graph.edges[k] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                ready.push(t);
            }
        }
    }
    removed == n
}
