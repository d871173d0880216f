//! Random instance generators and reference computations that do not go
//! through the engine's cached distances or utility terms.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use tdg_core::{
    factor_at, Assignment, Distance, DistanceFactor, Rational, TdgInstance, TopologyGraph,
    UtilityMatrix,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational `p/q` with `q` in 1..=4 and value in [-bound, bound].
pub fn rational_in(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let q = rng.gen_range(1..=4);
    Rational::ratio(rng.gen_range(-bound * q..=bound * q), q)
}

pub fn positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=4);
    Rational::ratio(rng.gen_range(1..=3 * q), q)
}

pub fn random_graph(rng: &mut ChaCha8Rng, nodes: usize, p: f64) -> TopologyGraph {
    let mut edges = Vec::new();
    for a in 0..nodes {
        for b in a + 1..nodes {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    TopologyGraph::new(nodes, edges).unwrap()
}

/// Strictly decreasing positive table covering every possible distance.
pub fn random_table(rng: &mut ChaCha8Rng, nodes: usize) -> DistanceFactor {
    let ratios = [Rational::ratio(1, 2), Rational::ratio(2, 3), Rational::ratio(3, 4), Rational::ratio(4, 5)];
    let mut value = Rational::from_integer(rng.gen_range(1..=4));
    let mut values = Vec::new();
    for _ in 0..nodes.max(1) {
        values.push(value.clone());
        value = &value * ratios.choose(rng).unwrap();
    }
    DistanceFactor::table(values).unwrap()
}

pub fn random_placement(rng: &mut ChaCha8Rng, n: usize, nodes: usize) -> Assignment {
    let mut all: Vec<usize> = (0..nodes).collect();
    all.shuffle(rng);
    all.truncate(n);
    Assignment::new(all).unwrap()
}

/// Floyd-Warshall hop distances, `None` when disconnected.
pub fn reference_distances(topology: &TopologyGraph) -> Vec<Vec<Option<u32>>> {
    let m = topology.node_count();
    let mut d = vec![vec![None; m]; m];
    for v in 0..m {
        d[v][v] = Some(0);
    }
    for &(a, b) in topology.edges() {
        d[a][b] = Some(1);
        d[b][a] = Some(1);
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |c| x + y < c) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

pub struct Reference<'a> {
    pub instance: &'a TdgInstance,
    dist: Vec<Vec<Option<u32>>>,
}

impl<'a> Reference<'a> {
    pub fn new(instance: &'a TdgInstance) -> Self {
        Self {
            instance,
            dist: reference_distances(instance.topology()),
        }
    }

    pub fn utility(&self, placement: &[usize], i: usize) -> Rational {
        let u = self.instance.utilities();
        let mut total = Rational::zero();
        for j in 0..placement.len() {
            if j == i {
                continue;
            }
            if let Some(d) = self.dist[placement[i]][placement[j]] {
                let f = factor_at(self.instance.factor(), Distance::Finite(d)).unwrap();
                total += &f * u.get(i, j);
            }
        }
        total
    }

    pub fn phi(&self, placement: &[usize]) -> Rational {
        (0..placement.len()).map(|i| self.utility(placement, i)).sum()
    }

    pub fn jump_gain(&self, placement: &[usize], i: usize, v: usize) -> Rational {
        let mut moved = placement.to_vec();
        moved[i] = v;
        self.utility(&moved, i) - self.utility(placement, i)
    }

    pub fn swap_gains(&self, placement: &[usize], i: usize, j: usize) -> (Rational, Rational) {
        let mut moved = placement.to_vec();
        moved.swap(i, j);
        (
            self.utility(&moved, i) - self.utility(placement, i),
            self.utility(&moved, j) - self.utility(placement, j),
        )
    }

    pub fn jump_stable(&self, placement: &[usize]) -> bool {
        let nodes = self.instance.node_count();
        (0..placement.len()).all(|i| {
            (0..nodes)
                .filter(|v| !placement.contains(v))
                .all(|v| !self.jump_gain(placement, i, v).is_positive())
        })
    }

    pub fn swap_stable(&self, placement: &[usize]) -> bool {
        (0..placement.len()).all(|i| {
            (i + 1..placement.len()).all(|j| {
                let (a, b) = self.swap_gains(placement, i, j);
                !(a.is_positive() && b.is_positive())
            })
        })
    }
}

/// Random instance whose friendship graph follows a random topological
/// order, with non-negative utilities.
pub fn random_dag_utilities(rng: &mut ChaCha8Rng, n: usize, density: f64) -> UtilityMatrix {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut u = UtilityMatrix::zeros(n);
    for a in 0..n {
        for b in 0..a {
            if rng.gen_bool(density) {
                u.set(order[a], order[b], positive_rational(rng)).unwrap();
            }
        }
    }
    u
}

pub fn random_symmetric_utilities(rng: &mut ChaCha8Rng, n: usize) -> UtilityMatrix {
    let mut u = UtilityMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let w = rational_in(rng, 3);
            u.set(i, j, w.clone()).unwrap();
            u.set(j, i, w).unwrap();
        }
    }
    u
}
