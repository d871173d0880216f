use super::{GadgetOutput, X3cInstance};
use crate::error::{Result, TdgError};
use crate::factor::{factor_at, DistanceFactor};
use crate::graph::{Distance, TopologyGraph};
use crate::instance::{Assignment, TdgInstance, UtilityMatrix};
use crate::rational::Rational;

/// `(f(1) - f(2)) / (2 (2 f(1) + f(2)))`, half the admissible upper bound.
pub fn dynamics_epsilon(factor: &DistanceFactor) -> Result<Rational> {
    let f1 = factor_at(factor, Distance::Finite(1))?;
    let f2 = factor_at(factor, Distance::Finite(2))?;
    let two = Rational::from_integer(2);
    Ok((&f1 - &f2) / (&two * (&two * &f1 + &f2)))
}

// Node layout of the element component shared by both reductions:
// z1, z2, x_1..x_|R|, then y_i^1..y_i^4 for each block i.
struct ElementComponent {
    r: usize,
}

impl ElementComponent {
    const Z1: usize = 0;
    const Z2: usize = 1;

    fn size(&self) -> usize {
        2 + self.r + 4 * (self.r / 3)
    }

    fn x(&self, i: usize) -> usize {
        2 + i
    }

    fn y(&self, block: usize, j: usize) -> usize {
        2 + self.r + 4 * block + j
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = vec![(Self::Z1, Self::Z2)];
        for i in 0..self.r {
            edges.push((Self::Z2, self.x(i)));
        }
        for block in 0..self.r / 3 {
            for j in 0..4 {
                for k in j + 1..4 {
                    edges.push((self.y(block, j), self.y(block, k)));
                }
            }
            for j in 0..3 {
                edges.push((Self::Z1, self.y(block, j)));
            }
        }
        edges
    }
}

fn clique_edges(start: usize, size: usize, edges: &mut Vec<(usize, usize)>) {
    for p in 0..size {
        for q in p + 1..size {
            edges.push((start + p, start + q));
        }
    }
}

// Jumps moving the elements of each cover set next to z1 and then the set
// agent onto the fourth node of that block.
fn cover_jumps(
    x: &X3cInstance,
    cover: &[usize],
    comp: &ElementComponent,
    a: impl Fn(usize) -> usize,
    b: impl Fn(usize) -> usize,
) -> Vec<(usize, usize)> {
    let mut script = Vec::new();
    for (block, &index) in cover.iter().enumerate() {
        for (j, &e) in x.sets()[index].iter().enumerate() {
            script.push((a(e), comp.y(block, j)));
        }
    }
    for (block, &index) in cover.iter().enumerate() {
        script.push((b(index), comp.y(block, 3)));
    }
    script
}

fn check_ground_set(x: &X3cInstance) -> Result<()> {
    if x.ground_set_size() == 0 {
        return Err(TdgError::Precondition("ground set must be nonempty".into()));
    }
    Ok(())
}

/// Reduction for possible convergence. Agents: `alpha1..3`, `delta`, `rho1`,
/// `rho2`, `gamma_1..gamma_|R|`, then `a_r`, then `b_s`.
pub fn gadget_dynconv(
    x: &X3cInstance,
    factor: DistanceFactor,
    cover: Option<&[usize]>,
) -> Result<GadgetOutput> {
    check_ground_set(x)?;
    let r = x.ground_set_size();
    let s = x.sets().len();
    if 3 * s <= 2 * r {
        return Err(TdgError::Precondition(format!(
            "3|S| > 2|R| fails ({} <= {}); pad the instance first",
            3 * s,
            2 * r
        )));
    }
    if let Some(cover) = cover {
        x.validate_cover(cover)?;
    }
    let eps = dynamics_epsilon(&factor)?;
    let (alpha, delta, rho1, rho2) = ([0usize, 1, 2], 3usize, 4usize, 5usize);
    let gamma = |i: usize| 6 + i;
    let a = |e: usize| 6 + r + e;
    let b = |set: usize| 6 + 2 * r + set;
    let n = 6 + 2 * r + s;

    let mut u = UtilityMatrix::zeros(n);
    for k in 0..3 {
        u.set(alpha[k], alpha[(k + 1) % 3], Rational::one())?;
    }
    u.set(delta, alpha[0], Rational::from_integer(s as i64) - Rational::ratio(r as i64, 3) + Rational::ratio(1, 2))?;
    let third = (Rational::one() + &eps) * Rational::ratio(1, 3);
    for (index, set) in x.sets().iter().enumerate() {
        u.set(delta, b(index), Rational::one())?;
        u.set(b(index), delta, Rational::one())?;
        for &e in set {
            u.set(b(index), a(e), third.clone())?;
        }
    }
    for e in 0..r {
        u.set(a(e), rho1, Rational::one())?;
        u.set(gamma(e), rho2, Rational::one())?;
    }

    let comp = ElementComponent { r };
    let w0 = comp.size();
    let t0 = w0 + s + 1;
    let q0 = t0 + 4;
    let total = q0 + r;
    let mut edges = comp.edges();
    clique_edges(w0, s + 1, &mut edges);
    edges.extend([(t0, t0 + 1), (t0 + 1, t0 + 2), (t0 + 2, t0 + 3), (t0 + 3, t0)]);
    clique_edges(q0, r, &mut edges);
    let topology = TopologyGraph::new(total, edges)?;
    let instance = TdgInstance::new(u, topology, factor)?;

    let mut placement = vec![0usize; n];
    for e in 0..r {
        placement[a(e)] = comp.x(e);
        placement[gamma(e)] = q0 + e;
    }
    placement[rho1] = ElementComponent::Z1;
    placement[rho2] = ElementComponent::Z2;
    for index in 0..s {
        placement[b(index)] = w0 + index;
    }
    placement[delta] = w0 + s;
    for k in 0..3 {
        placement[alpha[k]] = t0 + k;
    }

    let mut labels: Vec<String> = ["alpha1", "alpha2", "alpha3", "delta", "rho1", "rho2"]
        .iter()
        .map(|l| l.to_string())
        .collect();
    labels.extend((1..=r).map(|i| format!("gamma{i}")));
    labels.extend((1..=r).map(|e| format!("a{e}")));
    labels.extend((1..=s).map(|i| format!("b{i}")));
    let mut out = GadgetOutput::new("dynconv", instance, labels)
        .meta("epsilon", eps.to_string())
        .meta("component_starts", vec![0, w0, t0, q0])
        .meta("ground_set_size", r)
        .meta("set_count", s);
    out.initial = Some(Assignment::new(placement)?);
    if let Some(cover) = cover {
        let mut script = cover_jumps(x, cover, &comp, a, b);
        script.push((delta, t0 + 3));
        for e in 0..r {
            script.push((gamma(e), comp.x(e)));
        }
        out.script = Some(script);
        out = out
            .meta("cover", cover.iter().map(|i| i + 1).collect::<Vec<_>>())
            .meta("script_ends", "stable");
    }
    Ok(out)
}

/// Reduction for possible cycling. Agents: `alpha1..3`, `delta`, `rho1`,
/// `rho2`, `sigma`, `sigma_1..sigma_|R|/3`, then `a_r`, then `b_s`. In the
/// third component the 4-cycle `t1..t4` precedes the pendant leaves of `t4`.
pub fn gadget_dyncycle(
    x: &X3cInstance,
    factor: DistanceFactor,
    cover: Option<&[usize]>,
) -> Result<GadgetOutput> {
    check_ground_set(x)?;
    let r = x.ground_set_size();
    let s = x.sets().len();
    if let Some(cover) = cover {
        x.validate_cover(cover)?;
    }
    let eps = dynamics_epsilon(&factor)?;
    let p = r / 3;
    let (alpha, delta, rho1, rho2, sigma) = ([0usize, 1, 2], 3usize, 4usize, 5usize, 6usize);
    let sigma_i = |i: usize| 7 + i;
    let a = |e: usize| 7 + p + e;
    let b = |set: usize| 7 + p + r + set;
    let n = 7 + p + r + s;

    let mut u = UtilityMatrix::zeros(n);
    for k in 0..3 {
        u.set(alpha[k], alpha[(k + 1) % 3], Rational::one())?;
    }
    u.set(delta, alpha[0], Rational::ratio(r as i64, 3) - Rational::ratio(1, 2))?;
    for i in 0..p {
        u.set(delta, sigma_i(i), Rational::one())?;
        u.set(sigma_i(i), sigma, Rational::one())?;
    }
    let third = (Rational::one() + &eps) * Rational::ratio(1, 3);
    for (index, set) in x.sets().iter().enumerate() {
        u.set(b(index), sigma, Rational::one())?;
        for &e in set {
            u.set(b(index), a(e), third.clone())?;
        }
    }
    for e in 0..r {
        u.set(a(e), rho1, Rational::one())?;
    }

    let comp = ElementComponent { r };
    let w0 = comp.size();
    let t0 = w0 + s + 2;
    let leaves = t0 + 4;
    let total = leaves + p;
    let mut edges = comp.edges();
    clique_edges(w0, s + 2, &mut edges);
    edges.extend([(t0, t0 + 1), (t0 + 1, t0 + 2), (t0 + 2, t0 + 3), (t0 + 3, t0)]);
    for i in 0..p {
        edges.push((t0 + 3, leaves + i));
    }
    let topology = TopologyGraph::new(total, edges)?;
    let instance = TdgInstance::new(u, topology, factor)?;

    let mut placement = vec![0usize; n];
    for e in 0..r {
        placement[a(e)] = comp.x(e);
    }
    placement[rho1] = ElementComponent::Z1;
    placement[rho2] = ElementComponent::Z2;
    for index in 0..s {
        placement[b(index)] = w0 + index;
    }
    placement[sigma] = w0 + s;
    for k in 0..3 {
        placement[alpha[k]] = t0 + k;
    }
    for i in 0..p {
        placement[sigma_i(i)] = leaves + i;
    }
    placement[delta] = t0 + 3;

    let mut labels: Vec<String> = ["alpha1", "alpha2", "alpha3", "delta", "rho1", "rho2", "sigma"]
        .iter()
        .map(|l| l.to_string())
        .collect();
    labels.extend((1..=p).map(|i| format!("sigma{i}")));
    labels.extend((1..=r).map(|e| format!("a{e}")));
    labels.extend((1..=s).map(|i| format!("b{i}")));
    let mut out = GadgetOutput::new("dyncycle", instance, labels)
        .meta("epsilon", eps.to_string())
        .meta("component_starts", vec![0, w0, t0])
        .meta("ground_set_size", r)
        .meta("set_count", s);
    out.initial = Some(Assignment::new(placement)?);
    if let Some(cover) = cover {
        let mut script = cover_jumps(x, cover, &comp, a, b);
        for (i, &index) in cover.iter().enumerate() {
            script.push((sigma_i(i), w0 + index));
        }
        script.push((delta, w0 + s + 1));
        out.script = Some(script);
        out = out
            .meta("cover", cover.iter().map(|i| i + 1).collect::<Vec<_>>())
            .meta("script_ends", "cycle-entry")
            .meta("cycling_agents", vec!["alpha1", "alpha2", "alpha3"])
            .meta("cycle_nodes", (t0..t0 + 4).collect::<Vec<_>>());
    }
    Ok(out)
}
