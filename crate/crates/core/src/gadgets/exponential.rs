use super::GadgetOutput;
use crate::error::{Result, TdgError};
use crate::factor::DistanceFactor;
use crate::graph::TopologyGraph;
use crate::instance::{Assignment, TdgInstance, UtilityMatrix};
use crate::rational::Rational;

// Agent indices: a_0 = 0, a_j = 2j - 1, b_j = 2j.
fn a(j: usize) -> usize {
    if j == 0 {
        0
    } else {
        2 * j - 1
    }
}

fn b(j: usize) -> usize {
    2 * j
}

// Join events (mover, agent whose coalition is joined) for the family of size k.
fn join_events(k: usize) -> Vec<(usize, usize)> {
    let mut seq = vec![(a(1), b(1)), (a(1), a(0))];
    for level in 1..k {
        let mut next = Vec::with_capacity(seq.len() * 2);
        for &(mover, target) in &seq {
            next.push((mover, target));
            if mover == a(level) {
                next.push((a(level + 1), b(level + 1)));
                next.push((a(level + 1), a(level)));
            }
        }
        seq = next;
    }
    seq
}

/// The recursive jump sequence: each join moves the agent to the lowest
/// empty node of the clique holding the joined agent.
pub fn exponential_script(k: usize) -> Vec<(usize, usize)> {
    let n = 2 * k + 1;
    let mut placement: Vec<usize> = (0..n).map(|i| i * n).collect();
    let mut occupied = vec![false; n * n];
    for &v in &placement {
        occupied[v] = true;
    }
    join_events(k)
        .into_iter()
        .map(|(mover, target)| {
            let clique = placement[target] / n;
            let v = (clique * n..(clique + 1) * n)
                .find(|&v| !occupied[v])
                .expect("clique of size n always has room");
            occupied[placement[mover]] = false;
            occupied[v] = true;
            placement[mover] = v;
            (mover, v)
        })
        .collect()
}

/// The hedonic game with agents `a_0..a_k, b_1..b_k` embedded as `n` cliques
/// of size `n`, starting from singletons.
pub fn gadget_exponential_family(k: usize) -> Result<GadgetOutput> {
    if k == 0 {
        return Err(TdgError::OutOfRange {
            name: "k",
            value: k,
            min: 1,
            max: usize::MAX,
        });
    }
    let n = 2 * k + 1;
    let mut u = UtilityMatrix::zeros(n);
    for j in 1..=k {
        u.set(a(j), b(j), Rational::one())?;
        u.set(a(j), a(j - 1), Rational::from_integer(2))?;
    }
    let topology = TopologyGraph::disjoint_cliques(&vec![n; n]);
    let instance = TdgInstance::new(u, topology, DistanceFactor::Reciprocal)?;
    let mut labels = vec!["a0".to_string()];
    for j in 1..=k {
        labels.push(format!("a{j}"));
        labels.push(format!("b{j}"));
    }
    let mut out = GadgetOutput::new("exponential", instance, labels)
        .meta("k", k)
        .meta("friendship", "acyclic");
    out.initial = Some(Assignment::new((0..n).map(|i| i * n).collect())?);
    out.script = Some(exponential_script(k));
    Ok(out)
}
