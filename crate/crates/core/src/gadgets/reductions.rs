use super::GadgetOutput;
use crate::error::{Result, TdgError};
use crate::factor::DistanceFactor;
use crate::graph::TopologyGraph;
use crate::instance::{TdgInstance, UtilityMatrix};
use crate::rational::Rational;

/// Complete undirected graph with a rational weight on every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCompleteGraph {
    t: usize,
    weights: Vec<Rational>,
}

impl WeightedCompleteGraph {
    /// Every unordered pair must be listed exactly once.
    pub fn from_edges(t: usize, edges: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut weights: Vec<Option<Rational>> = vec![None; t * t];
        for (x, y, w) in edges {
            let (x, y) = (*x, *y);
            if x >= t || y >= t || x == y {
                return Err(TdgError::Precondition(format!(
                    "edge {{{}, {}}} is not a pair of distinct vertices",
                    x + 1,
                    y + 1
                )));
            }
            if weights[x * t + y].is_some() {
                return Err(TdgError::Precondition(format!(
                    "edge {{{}, {}}} listed twice",
                    x + 1,
                    y + 1
                )));
            }
            weights[x * t + y] = Some(w.clone());
            weights[y * t + x] = Some(w.clone());
        }
        for x in 0..t {
            for y in x + 1..t {
                if weights[x * t + y].is_none() {
                    return Err(TdgError::Precondition(format!(
                        "graph is not complete: edge {{{}, {}}} missing",
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
        Ok(Self {
            t,
            weights: weights.into_iter().map(Option::unwrap_or_default).collect(),
        })
    }

    pub fn from_fn(t: usize, mut w: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut weights = vec![Rational::zero(); t * t];
        for x in 0..t {
            for y in x + 1..t {
                let value = w(x, y);
                weights[y * t + x] = value.clone();
                weights[x * t + y] = value;
            }
        }
        Self { t, weights }
    }

    pub fn vertex_count(&self) -> usize {
        self.t
    }

    pub fn weight(&self, x: usize, y: usize) -> &Rational {
        &self.weights[x * self.t + y]
    }
}

fn two_clique_instance(graph: &WeightedCompleteGraph, sign: i64, clique: usize) -> Result<TdgInstance> {
    let s = Rational::from_integer(sign);
    let u = UtilityMatrix::from_fn(graph.t, |x, y| &s * graph.weight(x, y));
    TdgInstance::new(u, TopologyGraph::disjoint_cliques(&[clique, clique]), DistanceFactor::Reciprocal)
}

fn vertex_labels(t: usize) -> Vec<String> {
    (1..=t).map(|x| format!("alpha{x}")).collect()
}

/// Symmetric instance with utilities `-w` on two cliques of size `t`.
pub fn gadget_maxcut_reduction(graph: &WeightedCompleteGraph) -> Result<GadgetOutput> {
    let t = graph.t;
    if t < 2 {
        return Err(TdgError::Precondition("need at least 2 vertices".into()));
    }
    let instance = two_clique_instance(graph, -1, t)?;
    Ok(GadgetOutput::new("maxcut", instance, vertex_labels(t))
        .meta("clique_size", t)
        .meta("notion", "jump"))
}

/// Symmetric instance with utilities `w` on two cliques of half the vertex count.
pub fn gadget_graph_partitioning_reduction(graph: &WeightedCompleteGraph) -> Result<GadgetOutput> {
    let v = graph.t;
    if v % 2 == 1 || v == 0 {
        return Err(TdgError::Precondition(format!(
            "vertex count {v} must be even and positive"
        )));
    }
    let instance = two_clique_instance(graph, 1, v / 2)?;
    Ok(GadgetOutput::new("graph-partitioning", instance, vertex_labels(v))
        .meta("clique_size", v / 2)
        .meta("notion", "swap"))
}
