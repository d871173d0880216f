use super::GadgetOutput;
use crate::error::{Result, TdgError};
use crate::factor::DistanceFactor;
use crate::graph::{diameter, TopologyGraph};
use crate::instance::{Assignment, TdgInstance, UtilityMatrix};
use crate::rational::Rational;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Two agents: the first likes the second, who dislikes the first.
pub fn gadget_cat_and_mouse(topology: TopologyGraph) -> Result<GadgetOutput> {
    let d = diameter(&topology)
        .ok_or_else(|| TdgError::Precondition("topology must be connected".into()))?;
    if d < 3 {
        return Err(TdgError::DiameterTooSmall { diameter: d });
    }
    let mut u = UtilityMatrix::zeros(2);
    u.set(0, 1, Rational::one())?;
    u.set(1, 0, Rational::from_integer(-1))?;
    let instance = TdgInstance::new(u, topology, DistanceFactor::Reciprocal)?;
    Ok(GadgetOutput::new("cat-and-mouse", instance, labels(&["cat", "mouse"]))
        .meta("diameter", d)
        .meta("friendship", "single arc"))
}

/// Six agents liking their successor on a tree with three branches of three
/// nodes: node 0 is the center `z`, then `a1..a3`, `b1..b3`, `c1..c3`.
pub fn gadget_tree_counterexample() -> Result<GadgetOutput> {
    let topology = TopologyGraph::extended_star(&[3, 3, 3])?;
    let u = UtilityMatrix::from_fn(6, |i, j| {
        if j == (i + 1) % 6 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let instance = TdgInstance::new(u, topology, DistanceFactor::Reciprocal)?;
    let names: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
    Ok(GadgetOutput::new("tree-counterexample", instance, names)
        .meta("node_names", vec!["z", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"])
        .meta("friendship", "cycle"))
}

/// Four agents on two disjoint edges with cyclic roommate preferences.
pub fn gadget_roommates_no_swap() -> Result<GadgetOutput> {
    let table = [[0, 3, 2, 1], [2, 0, 1, 3], [3, 1, 0, 2], [1, 2, 3, 0]];
    let u = UtilityMatrix::from_fn(4, |i, j| Rational::from_integer(table[i][j]));
    let topology = TopologyGraph::new(4, [(0, 1), (2, 3)])?;
    let instance = TdgInstance::new(u, topology, DistanceFactor::Reciprocal)?;
    Ok(GadgetOutput::new("roommates", instance, labels(&["1", "2", "3", "4"])))
}

/// Two friendship 3-cycles `a` and `b` on a 6-cycle. The initial assignment
/// leads to endless beneficial swaps; the witness is swap stable.
pub fn gadget_swap_cycle() -> Result<GadgetOutput> {
    let u = UtilityMatrix::from_fn(6, |i, j| {
        if i / 3 == j / 3 && j % 3 == (i + 1) % 3 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let instance = TdgInstance::new(u, TopologyGraph::cycle(6)?, DistanceFactor::Reciprocal)?;
    let mut out = GadgetOutput::new(
        "swap-cycle",
        instance,
        labels(&["a1", "a2", "a3", "b1", "b2", "b3"]),
    )
    .meta("notion", "swap");
    out.initial = Some(Assignment::new(vec![0, 1, 2, 3, 4, 5])?);
    out.witness = Some(Assignment::new(vec![0, 1, 2, 5, 4, 3])?);
    Ok(out)
}
