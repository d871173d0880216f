use super::{GadgetOutput, X3cInstance};
use crate::error::{Result, TdgError};
use crate::factor::DistanceFactor;
use crate::graph::TopologyGraph;
use crate::instance::{Assignment, TdgInstance, UtilityMatrix};
use crate::rational::Rational;

/// Reduction from Exact 3-Cover to existence of a jump stable assignment
/// under the reciprocal factor. Agents are `a_r` for elements, then `b_s` for
/// sets, then the disturber `c`. With a cover, the witness is filled in.
pub fn gadget_exjump(x: &X3cInstance, cover: Option<&[usize]>) -> Result<GadgetOutput> {
    let r = x.ground_set_size();
    let s = x.sets().len();
    let mut failures = Vec::new();
    if r <= 3 {
        failures.push(format!("|R| > 3 fails (|R| = {r})"));
    }
    if 3 * s <= r {
        failures.push(format!("3|S| > |R| fails ({} <= {r})", 3 * s));
    }
    if 4 * r <= 9 * s + 30 {
        failures.push(format!("|R| > 3|S| - |R|/3 + 10 fails (|R| = {r}, |S| = {s})"));
    }
    if !failures.is_empty() {
        return Err(TdgError::Precondition(failures.join("; ")));
    }
    if let Some(cover) = cover {
        x.validate_cover(cover)?;
    }

    let n = r + s + 1;
    let a = |e: usize| e;
    let b = |set: usize| r + set;
    let c = r + s;
    let mut u = UtilityMatrix::zeros(n);
    for e in 0..r {
        u.set(a(e), a((e + 1) % r), Rational::one())?;
    }
    let penalty = Rational::ratio(-6, r as i64 - 3);
    for (index, set) in x.sets().iter().enumerate() {
        for e in 0..r {
            let value = if set.contains(&e) {
                Rational::one()
            } else {
                penalty.clone()
            };
            u.set(b(index), a(e), value)?;
        }
        u.set(b(index), c, Rational::from_integer(-10))?;
        u.set(c, b(index), Rational::one())?;
    }

    // V1 and V2: cliques of |S| + 2; V3: clique of |S| - |R|/3; V4: clique
    // on |R| nodes plus |R|/3 hubs each joined to a consecutive triple.
    let sizes = [s + 2, s + 2, s - r / 3, r + r / 3];
    let starts = [0, sizes[0], sizes[0] + sizes[1], sizes[0] + sizes[1] + sizes[2]];
    let total: usize = sizes.iter().sum();
    let mut edges = Vec::new();
    for comp in 0..3 {
        for p in 0..sizes[comp] {
            for q in p + 1..sizes[comp] {
                edges.push((starts[comp] + p, starts[comp] + q));
            }
        }
    }
    let v4 = starts[3];
    for p in 0..r {
        for q in p + 1..r {
            edges.push((v4 + p, v4 + q));
        }
    }
    for i in 0..r / 3 {
        for j in 0..3 {
            edges.push((v4 + 3 * i + j, v4 + r + i));
        }
    }
    let topology = TopologyGraph::new(total, edges)?;
    let instance = TdgInstance::new(u, topology, DistanceFactor::Reciprocal)?;

    let mut labels: Vec<String> = (1..=r).map(|e| format!("a{e}")).collect();
    labels.extend((1..=s).map(|i| format!("b{i}")));
    labels.push("c".into());
    let mut out = GadgetOutput::new("exjump", instance, labels)
        .meta("component_sizes", sizes.to_vec())
        .meta("component_starts", starts.to_vec())
        .meta("ground_set_size", r)
        .meta("set_count", s);

    if let Some(cover) = cover {
        let mut placement = vec![usize::MAX; n];
        let mut in_cover = vec![false; s];
        for (i, &index) in cover.iter().enumerate() {
            in_cover[index] = true;
            for (j, &e) in x.sets()[index].iter().enumerate() {
                placement[a(e)] = v4 + 3 * i + j;
            }
            placement[b(index)] = v4 + r + i;
        }
        let mut slot = starts[2];
        for index in (0..s).filter(|&i| !in_cover[i]) {
            placement[b(index)] = slot;
            slot += 1;
        }
        placement[c] = starts[0];
        out.witness = Some(Assignment::new(placement)?);
        out = out.meta("cover", cover.iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    Ok(out)
}
