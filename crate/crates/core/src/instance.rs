//! Game instances, assignments and the distance-weighted utility.

use std::collections::BTreeSet;

use crate::error::{Result, TdgError};
use crate::factor::{factor_at, DistanceFactor};
use crate::graph::{all_pairs_distances, Distance, DistanceMatrix, TopologyGraph};
use crate::rational::Rational;

/// Square matrix of inherent utilities; `get(i, j)` is agent i's utility for j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtilityMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl UtilityMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(TdgError::InvalidUtilities(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, value) in row.into_iter().enumerate() {
                if i == j {
                    if !value.is_zero() {
                        return Err(TdgError::InvalidUtilities(format!(
                            "diagonal entry for agent {} must be zero",
                            i + 1
                        )));
                    }
                } else {
                    m.entries[i * n + j] = value;
                }
            }
        }
        Ok(m)
    }

    /// Builds from a function over ordered pairs `i != j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.entries[i * n + j] = f(i, j);
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(TdgError::AgentOutOfRange {
                agent: i.max(j),
                n: self.n,
            });
        }
        if i == j && !value.is_zero() {
            return Err(TdgError::InvalidUtilities(format!(
                "diagonal entry for agent {} must be zero",
                i + 1
            )));
        }
        self.entries[i * self.n + j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }

    /// `a * self + b * other`, entrywise.
    pub fn linear_combination(&self, a: &Rational, other: &UtilityMatrix, b: &Rational) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }
}

/// Directed graph with an arc `i -> j` exactly when `u_i(j) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendshipGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

pub fn friendship_graph(utilities: &UtilityMatrix) -> FriendshipGraph {
    let n = utilities.n();
    let mut arcs = BTreeSet::new();
    let mut out = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if utilities.get(i, j).is_positive() {
                arcs.insert((i, j));
                out[i].push(j);
            }
        }
    }
    FriendshipGraph { n, arcs, out }
}

impl FriendshipGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn friends(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.out[i].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Order in which every agent comes after all of her friends (Kahn's
    /// algorithm, lowest index first among ready agents).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        self.topological_order_within(&(0..self.n).collect::<Vec<_>>())
    }

    /// Same as [`Self::topological_order`] on the subgraph induced by `agents`;
    /// friends outside the set are ignored.
    pub fn topological_order_within(&self, agents: &[usize]) -> Option<Vec<usize>> {
        let inside: BTreeSet<usize> = agents.iter().copied().collect();
        let mut pending: Vec<usize> = vec![0; self.n];
        let mut followers: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &i in &inside {
            for &j in &self.out[i] {
                if inside.contains(&j) {
                    pending[i] += 1;
                    followers[j].push(i);
                }
            }
        }
        let mut ready: BTreeSet<usize> = inside.iter().copied().filter(|&i| pending[i] == 0).collect();
        let mut order = Vec::with_capacity(inside.len());
        while let Some(i) = ready.pop_first() {
            order.push(i);
            for &f in &followers[i] {
                pending[f] -= 1;
                if pending[f] == 0 {
                    ready.insert(f);
                }
            }
        }
        (order.len() == inside.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// For graphs with out-degree at most one: every directed cycle, each
    /// listed from its lowest member along the arcs, sorted by that member.
    pub fn functional_cycles(&self) -> Option<Vec<Vec<usize>>> {
        if self.max_out_degree() > 1 {
            return None;
        }
        let mut on_cycle = vec![false; self.n];
        let mut cycles = Vec::new();
        for start in 0..self.n {
            // Walk n steps; if we end on a cycle, record it once.
            let mut cur = start;
            let mut steps = 0;
            while steps < self.n {
                match self.out[cur].first() {
                    Some(&next) => cur = next,
                    None => break,
                }
                steps += 1;
            }
            if steps < self.n || on_cycle[cur] {
                continue;
            }
            let mut cycle = vec![cur];
            let mut next = self.out[cur][0];
            while next != cur {
                cycle.push(next);
                next = self.out[next][0];
            }
            for &a in &cycle {
                on_cycle[a] = true;
            }
            let low = cycle.iter().enumerate().min_by_key(|(_, &a)| a).unwrap().0;
            cycle.rotate_left(low);
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| c[0]);
        Some(cycles)
    }

    /// True when the arcs form one directed cycle through all agents.
    pub fn is_single_cycle(&self) -> bool {
        self.n >= 2
            && self.out.iter().all(|o| o.len() == 1)
            && self
                .functional_cycles()
                .is_some_and(|c| c.len() == 1 && c[0].len() == self.n)
    }
}

/// Injective map from agents to nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    placement: Vec<usize>,
}

impl Assignment {
    pub fn new(placement: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (agent, &node) in placement.iter().enumerate() {
            if !seen.insert(node) {
                return Err(TdgError::InvalidAssignment(format!(
                    "node {} assigned twice (agent {})",
                    node + 1,
                    agent + 1
                )));
            }
        }
        Ok(Self { placement })
    }

    pub(crate) fn from_vec_unchecked(placement: Vec<usize>) -> Self {
        Self { placement }
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn into_placement(self) -> Vec<usize> {
        self.placement
    }

    pub fn node_of(&self, agent: usize) -> usize {
        self.placement[agent]
    }

    pub fn len(&self) -> usize {
        self.placement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placement.is_empty()
    }

    /// Occupant of every node.
    pub fn occupants(&self, node_count: usize) -> Vec<Option<usize>> {
        let mut occ = vec![None; node_count];
        for (agent, &node) in self.placement.iter().enumerate() {
            occ[node] = Some(agent);
        }
        occ
    }

    pub fn empty_nodes(&self, node_count: usize) -> Vec<usize> {
        self.occupants(node_count)
            .into_iter()
            .enumerate()
            .filter_map(|(v, o)| o.is_none().then_some(v))
            .collect()
    }

    /// Checks dimensions and node range against an instance.
    pub fn validate_for(&self, instance: &TdgInstance) -> Result<()> {
        if self.placement.len() != instance.n() {
            return Err(TdgError::InvalidAssignment(format!(
                "assignment places {} agents, instance has {}",
                self.placement.len(),
                instance.n()
            )));
        }
        if let Some(&bad) = self
            .placement
            .iter()
            .find(|&&v| v >= instance.node_count())
        {
            return Err(TdgError::InvalidAssignment(format!(
                "node {} out of range ({} nodes)",
                bad + 1,
                instance.node_count()
            )));
        }
        Ok(())
    }
}

/// `lambda^{i -> v}`: agent `i` moves to the empty node `v`.
pub fn jump(lambda: &Assignment, i: usize, v: usize) -> Result<Assignment> {
    if i >= lambda.len() {
        return Err(TdgError::AgentOutOfRange {
            agent: i,
            n: lambda.len(),
        });
    }
    if lambda.placement.contains(&v) {
        return Err(TdgError::TargetOccupied { node: v });
    }
    let mut placement = lambda.placement.clone();
    placement[i] = v;
    Ok(Assignment { placement })
}

/// `lambda^{i <-> j}`: agents `i` and `j` exchange nodes.
pub fn swap(lambda: &Assignment, i: usize, j: usize) -> Result<Assignment> {
    let n = lambda.len();
    if i >= n || j >= n {
        return Err(TdgError::AgentOutOfRange { agent: i.max(j), n });
    }
    if i == j {
        return Err(TdgError::SelfSwap { agent: i });
    }
    let mut placement = lambda.placement.clone();
    placement.swap(i, j);
    Ok(Assignment { placement })
}

// One nonzero utility entry with its value pre-multiplied by f(d) for every
// finite distance d that occurs in the topology (index 0 unused).
#[derive(Clone, Debug)]
struct Term {
    other: usize,
    by_distance: Vec<Rational>,
}

/// A complete game: utilities, topology and distance factor, with the
/// all-pairs distances computed once at construction.
#[derive(Clone, Debug)]
pub struct TdgInstance {
    utilities: UtilityMatrix,
    topology: TopologyGraph,
    factor: DistanceFactor,
    distances: DistanceMatrix,
    terms: Vec<Vec<Term>>,
}

impl PartialEq for TdgInstance {
    fn eq(&self, other: &Self) -> bool {
        self.utilities == other.utilities
            && self.topology == other.topology
            && self.factor == other.factor
    }
}

impl TdgInstance {
    pub fn new(
        utilities: UtilityMatrix,
        topology: TopologyGraph,
        factor: DistanceFactor,
    ) -> Result<Self> {
        let n = utilities.n();
        if n == 0 {
            return Err(TdgError::InvalidInstance("at least one agent is required".into()));
        }
        if topology.node_count() < n {
            return Err(TdgError::InvalidInstance(format!(
                "{} nodes cannot host {n} agents",
                topology.node_count()
            )));
        }
        let distances = all_pairs_distances(&topology);
        let max_d = distances.max_finite();
        let table: Vec<Rational> = std::iter::once(Ok(Rational::zero()))
            .chain((1..=max_d).map(|d| factor_at(&factor, Distance::Finite(d))))
            .collect::<Result<_>>()?;
        let terms = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && !utilities.get(i, j).is_zero())
                    .map(|j| Term {
                        other: j,
                        by_distance: table.iter().map(|f| f * utilities.get(i, j)).collect(),
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            utilities,
            topology,
            factor,
            distances,
            terms,
        })
    }

    /// Same utilities and topology under a different distance factor.
    pub fn with_factor(&self, factor: DistanceFactor) -> Result<Self> {
        Self::new(self.utilities.clone(), self.topology.clone(), factor)
    }

    pub fn n(&self) -> usize {
        self.utilities.n()
    }

    pub fn node_count(&self) -> usize {
        self.topology.node_count()
    }

    pub fn utilities(&self) -> &UtilityMatrix {
        &self.utilities
    }

    pub fn topology(&self) -> &TopologyGraph {
        &self.topology
    }

    pub fn factor(&self) -> &DistanceFactor {
        &self.factor
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    pub fn friendship_graph(&self) -> FriendshipGraph {
        friendship_graph(&self.utilities)
    }

    /// Utility of agent `i` when standing on `at`, with every other agent
    /// `j` standing on `position(j)`.
    #[inline]
    pub(crate) fn utility_with(
        &self,
        i: usize,
        at: usize,
        position: impl Fn(usize) -> usize,
    ) -> Rational {
        let mut total = Rational::zero();
        for term in &self.terms[i] {
            let d = self.distances.raw(at, position(term.other));
            if d != u32::MAX {
                total += &term.by_distance[d as usize];
            }
        }
        total
    }

    #[inline]
    pub(crate) fn utility_in(&self, placement: &[usize], i: usize) -> Rational {
        self.utility_with(i, placement[i], |j| placement[j])
    }

    /// Utility agent `i` would get after jumping to `v`.
    #[inline]
    pub(crate) fn utility_after_jump(&self, placement: &[usize], i: usize, v: usize) -> Rational {
        self.utility_with(i, v, |j| placement[j])
    }

    /// Utilities of `i` and `j` after they exchange nodes.
    pub(crate) fn utilities_after_swap(
        &self,
        placement: &[usize],
        i: usize,
        j: usize,
    ) -> (Rational, Rational) {
        let (pi, pj) = (placement[i], placement[j]);
        let moved = |k: usize| {
            if k == i {
                pj
            } else if k == j {
                pi
            } else {
                placement[k]
            }
        };
        (self.utility_with(i, pj, moved), self.utility_with(j, pi, moved))
    }

    /// Utility of `i` standing on `at`, counting only agents already placed.
    pub(crate) fn partial_utility(
        &self,
        i: usize,
        at: usize,
        placed: &[Option<usize>],
    ) -> Rational {
        let mut total = Rational::zero();
        for term in &self.terms[i] {
            if let Some(p) = placed[term.other] {
                let d = self.distances.raw(at, p);
                if d != u32::MAX {
                    total += &term.by_distance[d as usize];
                }
            }
        }
        total
    }
}

/// Utility of agent `i` under `lambda`: the sum over other agents of the
/// distance factor times the inherent utility.
pub fn utility(instance: &TdgInstance, lambda: &Assignment, i: usize) -> Rational {
    instance.utility_in(lambda.placement(), i)
}
