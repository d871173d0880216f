//! Topology graphs, shortest-path distances and shape recognition.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Result, TdgError};

/// Shortest-path distance between two nodes; `Infinite` across components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Simple undirected graph on nodes `0..node_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyGraph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl TopologyGraph {
    /// Validates and builds a graph. Edges are unordered; each must appear once.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return Err(TdgError::InvalidTopology("graph needs at least one node".into()));
        }
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a >= node_count || b >= node_count {
                return Err(TdgError::InvalidTopology(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            if a == b {
                return Err(TdgError::InvalidTopology(format!("self-loop at node {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(TdgError::InvalidTopology(format!("duplicate edge ({a}, {b})")));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut adjacency = vec![Vec::new(); node_count];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            node_count,
            edges,
            adjacency,
        })
    }

    pub fn path(node_count: usize) -> Self {
        Self::new(node_count, (1..node_count).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; needs at least 3 nodes.
    pub fn cycle(node_count: usize) -> Result<Self> {
        if node_count < 3 {
            return Err(TdgError::InvalidTopology("a cycle needs at least 3 nodes".into()));
        }
        Self::new(
            node_count,
            (0..node_count).map(|i| (i, (i + 1) % node_count)),
        )
    }

    /// Star with center `0` and `node_count - 1` leaves.
    pub fn star(node_count: usize) -> Self {
        Self::new(node_count, (1..node_count).map(|i| (0, i))).expect("valid star")
    }

    pub fn complete(node_count: usize) -> Self {
        Self::disjoint_cliques(&[node_count])
    }

    /// Disjoint cliques, numbered consecutively in the given order.
    pub fn disjoint_cliques(sizes: &[usize]) -> Self {
        let total: usize = sizes.iter().sum();
        let mut edges = Vec::new();
        let mut offset = 0;
        for &size in sizes {
            for a in offset..offset + size {
                for b in a + 1..offset + size {
                    edges.push((a, b));
                }
            }
            offset += size;
        }
        Self::new(total.max(1), edges).expect("valid cliques")
    }

    /// Extended star: center `0`, then each branch's nodes from the center outward.
    pub fn extended_star(branch_sizes: &[usize]) -> Result<Self> {
        if branch_sizes.iter().any(|&s| s == 0) {
            return Err(TdgError::InvalidTopology("branch sizes must be positive".into()));
        }
        let total = 1 + branch_sizes.iter().sum::<usize>();
        let mut edges = Vec::new();
        let mut next = 1;
        for &size in branch_sizes {
            edges.push((0, next));
            for i in next + 1..next + size {
                edges.push((i - 1, i));
            }
            next += size;
        }
        Self::new(total, edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Breadth-first distances from `source`.
    pub fn bfs(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.node_count];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let Distance::Finite(dv) = dist[v] else { unreachable!() };
            for &w in &self.adjacency[v] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Component label per node, labels assigned in order of lowest node.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.node_count];
        let mut next = 0;
        for start in 0..self.node_count {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.node_count
    }

    /// Node order along the path, starting from the lower-indexed endpoint.
    pub fn as_path(&self) -> Option<Vec<usize>> {
        if !self.is_tree() || self.adjacency.iter().any(|a| a.len() > 2) {
            return None;
        }
        if self.node_count == 1 {
            return Some(vec![0]);
        }
        let start = (0..self.node_count).find(|&v| self.degree(v) == 1)?;
        Some(self.walk_from(start, None))
    }

    /// Node order around the cycle: from node 0 towards its lower-indexed neighbor.
    pub fn as_cycle(&self) -> Option<Vec<usize>> {
        if self.node_count < 3
            || !self.is_connected()
            || self.edges.len() != self.node_count
            || self.adjacency.iter().any(|a| a.len() != 2)
        {
            return None;
        }
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = self.adjacency[0][0];
        while cur != 0 {
            order.push(cur);
            let next = if self.adjacency[cur][0] == prev {
                self.adjacency[cur][1]
            } else {
                self.adjacency[cur][0]
            };
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Recognizes a tree with exactly one node of degree at least 3.
    pub fn as_extended_star(&self) -> Option<ExtendedStar> {
        if !self.is_tree() {
            return None;
        }
        let mut hubs = (0..self.node_count).filter(|&v| self.degree(v) >= 3);
        let center = hubs.next()?;
        if hubs.next().is_some() {
            return None;
        }
        let branches = self.adjacency[center]
            .iter()
            .map(|&first| self.walk_from(first, Some(center)))
            .collect();
        Some(ExtendedStar { center, branches })
    }

    // Follows a path of degree-<=2 nodes, never stepping back to `prev`.
    fn walk_from(&self, start: usize, mut prev: Option<usize>) -> Vec<usize> {
        let mut order = vec![start];
        let mut cur = start;
        loop {
            let next = self.adjacency[cur]
                .iter()
                .copied()
                .find(|&w| Some(w) != prev && !order.contains(&w));
            match next {
                Some(w) if self.degree(cur) <= 2 || prev.is_none() => {
                    order.push(w);
                    prev = Some(cur);
                    cur = w;
                }
                _ => break,
            }
        }
        order
    }
}

/// Center and branches of an extended star; each branch lists its nodes
/// from the one adjacent to the center out to the leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedStar {
    pub center: usize,
    pub branches: Vec<Vec<usize>>,
}

/// Dense all-pairs distance matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    node_count: usize,
    // u32::MAX encodes Infinite
    raw: Vec<u32>,
}

const INF: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn get(&self, a: usize, b: usize) -> Distance {
        match self.raw[a * self.node_count + b] {
            INF => Distance::Infinite,
            d => Distance::Finite(d),
        }
    }

    /// Raw value with `u32::MAX` for infinite; used on hot paths.
    #[inline]
    pub(crate) fn raw(&self, a: usize, b: usize) -> u32 {
        self.raw[a * self.node_count + b]
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Largest finite distance (0 for graphs without edges).
    pub fn max_finite(&self) -> u32 {
        self.raw.iter().copied().filter(|&d| d != INF).max().unwrap_or(0)
    }
}

/// Breadth-first search from every node.
pub fn all_pairs_distances(topology: &TopologyGraph) -> DistanceMatrix {
    let n = topology.node_count();
    let mut raw = vec![INF; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut raw[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let dv = row[v];
            for &w in topology.neighbors(v) {
                if row[w] == INF {
                    row[w] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceMatrix { node_count: n, raw }
}

/// Diameter of a connected graph; `None` when disconnected.
pub fn diameter(topology: &TopologyGraph) -> Option<u32> {
    if !topology.is_connected() {
        return None;
    }
    Some(all_pairs_distances(topology).max_finite())
}
