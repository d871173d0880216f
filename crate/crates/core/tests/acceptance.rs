//! Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the binary exits
//! non-zero if the observed set of failures differs.

mod common;

use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;

use common::*;
use tdg_core::dynamics::DEFAULT_MAX_STEPS;
use tdg_core::gadgets::{
    gadget_cat_and_mouse, gadget_dyncycle, gadget_dynconv, gadget_exjump, gadget_roommates_no_swap,
    gadget_swap_cycle, gadget_tree_counterexample, pad_x3c_for_dynamics, pad_x3c_for_exjump,
    WeightedCompleteGraph, X3cInstance,
};
use tdg_core::oracle::{
    assignment_count, jump_correspondence_report, swap_correspondence_report, verify_local_optimum_correspondence,
    verify_swap_local_optimum_correspondence,
};
use tdg_core::*;

/// The swap half of criterion 11 does not hold: a pair whose swap lowers the
/// cut may still leave one of the two agents worse off, so swap stable
/// assignments need not induce swap-locally-optimal partitions.
const KNOWN_FAILURES: &[usize] = &[11];

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn policies(seed: u64) -> Vec<SchedulerPolicy> {
    vec![
        SchedulerPolicy::FirstDeviator,
        SchedulerPolicy::BestGain,
        SchedulerPolicy::SeededRandom(seed),
    ]
}

/// Replays the trace from its start, recomputing every gain independently.
fn check_trace(reference: &Reference, trace: &DynamicsTrace) -> Result<(), String> {
    let mut placement = trace.start.placement().to_vec();
    for (k, step) in trace.steps.iter().enumerate() {
        match step {
            Step::Jump { agent, from, to, gain } => {
                ensure(placement[*agent] == *from, || format!("step {k}: wrong origin"))?;
                let expected = reference.jump_gain(&placement, *agent, *to);
                ensure(gain.is_positive() && *gain == expected, || {
                    format!("step {k}: recorded gain {gain}, recomputed {expected}")
                })?;
                let next = jump(&Assignment::new(placement.clone()).unwrap(), *agent, *to)
                    .map_err(|e| format!("step {k}: {e}"))?;
                placement = next.into_placement();
            }
            Step::Swap { first, second, gains } => {
                let expected = reference.swap_gains(&placement, *first, *second);
                ensure(gains.0.is_positive() && gains.1.is_positive() && *gains == expected, || {
                    format!("step {k}: recorded swap gains differ")
                })?;
                placement.swap(*first, *second);
            }
        }
    }
    if let Outcome::Converged(last) = &trace.outcome {
        ensure(last.placement() == placement.as_slice(), || "final state differs from replay".into())?;
    }
    Ok(())
}

fn phi_doubling(trace: &DynamicsTrace, reference: &Reference) -> Result<(), String> {
    ensure(trace.phi_values.len() == trace.steps.len() + 1, || "phi values missing".into())?;
    let mut placement = trace.start.placement().to_vec();
    ensure(trace.phi_values[0] == reference.phi(&placement), || "initial phi differs".into())?;
    for (k, step) in trace.steps.iter().enumerate() {
        let gain = match step {
            Step::Jump { agent, to, gain, .. } => {
                placement[*agent] = *to;
                gain.clone()
            }
            Step::Swap { first, second, gains } => {
                placement.swap(*first, *second);
                &gains.0 + &gains.1
            }
        };
        let delta = &trace.phi_values[k + 1] - &trace.phi_values[k];
        ensure(delta.is_positive(), || format!("phi not increasing at step {k}"))?;
        ensure(delta == &gain * Rational::from_integer(2), || {
            format!("step {k}: phi change {delta} is not twice the gain {gain}")
        })?;
        ensure(trace.phi_values[k + 1] == reference.phi(&placement), || {
            format!("step {k}: phi differs from reference")
        })?;
    }
    Ok(())
}

fn c1_symmetric_convergence() -> Verdict {
    let (mut runs, mut steps) = (0, 0);
    for seed in 0..200u64 {
        let mut r = rng(1_000 + seed);
        let n = r.gen_range(2..=6);
        let nodes = r.gen_range(n + 1..=8);
        let topology = random_graph(&mut r, nodes, 0.4);
        let factor = if seed % 2 == 0 {
            DistanceFactor::Reciprocal
        } else {
            random_table(&mut r, nodes)
        };
        let inst = TdgInstance::new(random_symmetric_utilities(&mut r, n), topology, factor).unwrap();
        let reference = Reference::new(&inst);
        let start = random_placement(&mut r, n, nodes);
        for policy in policies(seed) {
            let trace = run_dynamics(&inst, &start, &policy, DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
            let Outcome::Converged(last) = &trace.outcome else {
                return Err(format!("seed {seed}, {policy:?}: outcome {}", trace.outcome.tag()));
            };
            ensure(reference.jump_stable(last.placement()), || format!("seed {seed}: final state unstable"))?;
            check_trace(&reference, &trace).map_err(|e| format!("seed {seed}: {e}"))?;
            phi_doubling(&trace, &reference).map_err(|e| format!("seed {seed}: {e}"))?;
            runs += 1;
            steps += trace.steps.len();
        }
    }
    Ok(format!("200 instances, {runs} runs, {steps} steps, all converged"))
}

fn c2_acyclic_soundness() -> Verdict {
    for seed in 0..200u64 {
        let mut r = rng(2_000 + seed);
        let n = r.gen_range(1..=7);
        let nodes = r.gen_range(n..=n + 2);
        let topology = random_graph(&mut r, nodes, 0.35);
        let inst = TdgInstance::new(random_dag_utilities(&mut r, n, 0.4), topology, DistanceFactor::Reciprocal).unwrap();
        let report = solve_acyclic(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let a = report.assignment().ok_or_else(|| format!("seed {seed}: {:?}", report.outcome))?;
        ensure(Reference::new(&inst).jump_stable(a.placement()), || format!("seed {seed}: not stable"))?;
        let oracle = exists_jump_stable(&inst, OracleBudget::default()).map_err(|e| e.to_string())?;
        ensure(oracle.is_some(), || format!("seed {seed}: oracle disagrees"))?;
    }
    Ok("200 instances stable, oracle agrees".into())
}

fn c3_cycle_characterization() -> Verdict {
    let mut total = 0;
    let mut nonexistent = 0;
    for n in 2..=6usize {
        // friend[i] == i encodes "no friend"
        let mut friend = vec![0usize; n];
        let combos = n.pow(n as u32);
        for code in 0..combos {
            let mut c = code;
            for f in friend.iter_mut() {
                *f = c % n;
                c /= n;
            }
            let u = UtilityMatrix::from_fn(n, |i, j| {
                if friend[i] != i && friend[i] == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            });
            // the friendship graph is one cycle through every agent
            let covering = friend.iter().enumerate().all(|(i, &f)| f != i) && {
                let (mut at, mut len) = (0, 0);
                loop {
                    at = friend[at];
                    len += 1;
                    if at == 0 {
                        break len == n;
                    }
                    if len > n {
                        break false;
                    }
                }
            };
            for nodes in [n + 1, n + 2] {
                let inst = TdgInstance::new(u.clone(), TopologyGraph::cycle(nodes).unwrap(), DistanceFactor::Reciprocal)
                    .unwrap();
                let report = solve_cycle_on_cycle(&inst).map_err(|e| e.to_string())?;
                let solver_exists = match &report.outcome {
                    SolverOutcome::Assignment(a) => {
                        ensure(is_jump_stable(&inst, a), || format!("friends {friend:?}: unstable output"))?;
                        true
                    }
                    SolverOutcome::NonExistent => false,
                    SolverOutcome::NotApplicable(c) => return Err(format!("friends {friend:?}: not applicable ({c})")),
                };
                let oracle = exists_jump_stable(&inst, OracleBudget::default()).map_err(|e| e.to_string())?;
                ensure(solver_exists == oracle.is_some(), || {
                    format!("friends {friend:?} on {nodes}-cycle: solver {solver_exists}, oracle {}", oracle.is_some())
                })?;
                let expected_none = covering && (n == 3 || n == 5);
                ensure(solver_exists != expected_none, || {
                    format!("friends {friend:?} on {nodes}-cycle: verdict {solver_exists}")
                })?;
                total += 1;
                nonexistent += usize::from(!solver_exists);
            }
        }
    }
    Ok(format!("{total} instances agree with the oracle, {nonexistent} without a stable assignment"))
}

fn c4_tree_counterexample() -> Verdict {
    let g = gadget_tree_counterexample().map_err(|e| e.to_string())?;
    let count = assignment_count(g.instance.node_count(), g.instance.n());
    ensure(count == BigUint::from(10u32 * 9 * 8 * 7 * 6 * 5), || format!("count {count}"))?;
    let w = exists_jump_stable(&g.instance, OracleBudget::default()).map_err(|e| e.to_string())?;
    ensure(w.is_none(), || format!("found {w:?}"))?;
    Ok(format!("no stable assignment among {count}"))
}

fn cycle_utilities(order: &[usize], weights: &[Rational]) -> UtilityMatrix {
    let n = order.len();
    let mut u = UtilityMatrix::zeros(n);
    for k in 0..n {
        u.set(order[k], order[(k + 1) % n], weights[k].clone()).unwrap();
    }
    u
}

fn c5_extended_star() -> Verdict {
    let identity: Vec<usize> = (0..16).collect();
    let inst = TdgInstance::new(
        cycle_utilities(&identity, &vec![Rational::one(); 16]),
        TopologyGraph::extended_star(&[4, 6, 7]).unwrap(),
        DistanceFactor::Reciprocal,
    )
    .unwrap();
    let report = solve_extended_star(&inst).map_err(|e| e.to_string())?;
    let a = report.assignment().ok_or("4/6/7 instance not solved")?;
    ensure(Reference::new(&inst).jump_stable(a.placement()), || "4/6/7 instance unstable".into())?;
    let mut configs = 0;
    let mut seed = 5_000u64;
    while configs < 20 {
        seed += 1;
        let mut r = rng(seed);
        let k = r.gen_range(3..=5);
        let sizes: Vec<usize> = (0..k).map(|_| r.gen_range(1..=8)).collect();
        let nodes = 1 + sizes.iter().sum::<usize>();
        if nodes < 5 * k + 1 {
            continue;
        }
        let n = r.gen_range(5 * k + 1..=nodes);
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut r);
        let weights: Vec<Rational> = (0..n).map(|_| positive_rational(&mut r)).collect();
        let inst = TdgInstance::new(
            cycle_utilities(&order, &weights),
            TopologyGraph::extended_star(&sizes).unwrap(),
            DistanceFactor::Reciprocal,
        )
        .unwrap();
        let report = solve_extended_star(&inst).map_err(|e| format!("branches {sizes:?}, n {n}: {e}"))?;
        let a = report
            .assignment()
            .ok_or_else(|| format!("branches {sizes:?}, n {n}: {:?}", report.outcome))?;
        ensure(Reference::new(&inst).jump_stable(a.placement()), || {
            format!("branches {sizes:?}, n {n}: unstable")
        })?;
        configs += 1;
    }
    Ok("4/6/7 instance and 20 random configurations stable".into())
}

fn c6_path() -> Verdict {
    for seed in 0..100u64 {
        let mut r = rng(6_000 + seed);
        let nodes = r.gen_range(2..=14);
        let n = r.gen_range(1..=nodes);
        let mut u = UtilityMatrix::zeros(n);
        for i in 0..n {
            let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            rand::seq::SliceRandom::shuffle(others.as_mut_slice(), &mut r);
            let count = r.gen_range(0..=2usize.min(others.len()));
            for &j in &others[..count] {
                u.set(i, j, positive_rational(&mut r)).unwrap();
            }
        }
        let inst = TdgInstance::new(u, TopologyGraph::path(nodes), DistanceFactor::Reciprocal).unwrap();
        let report = solve_path(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let a = report.assignment().ok_or_else(|| format!("seed {seed}: {:?}", report.outcome))?;
        ensure(Reference::new(&inst).jump_stable(a.placement()), || format!("seed {seed}: unstable"))?;
    }
    Ok("100 instances stable".into())
}

fn c7_exponential() -> Verdict {
    let mut summary = Vec::new();
    for k in 1..=10usize {
        let (inst, trace) = run_scripted_exponential(k).map_err(|e| e.to_string())?;
        check_trace(&Reference::new(&inst), &trace).map_err(|e| format!("k={k}: {e}"))?;
        let a_k = 2 * k - 1;
        let count = trace.jumps_by(a_k);
        ensure(count >= 1 << k, || format!("k={k}: a_k jumps {count} times"))?;
        summary.push(count);
    }
    Ok(format!("a_k jump counts for k=1..10: {summary:?}"))
}

fn c8_lexicographic() -> Verdict {
    let mut states = 0;
    let mut steps = 0;
    for seed in 0..100u64 {
        let mut r = rng(8_000 + seed);
        let n = r.gen_range(2..=5);
        let nodes = r.gen_range(n + 1..=7);
        let topology = random_graph(&mut r, nodes, 0.4);
        let inst = TdgInstance::new(random_dag_utilities(&mut r, n, 0.5), topology, DistanceFactor::Reciprocal).unwrap();
        let order = inst.friendship_graph().topological_order().ok_or("cyclic")?;
        let reference = Reference::new(&inst);
        for s in 0..3 {
            let start = random_placement(&mut r, n, nodes);
            for policy in policies(seed * 3 + s) {
                let trace = run_dynamics(&inst, &start, &policy, DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
                ensure(matches!(trace.outcome, Outcome::Converged(_)), || format!("seed {seed}: did not converge"))?;
                check_trace(&reference, &trace).map_err(|e| format!("seed {seed}: {e}"))?;
                let mut prev = potential_lambda_vec(&inst, &trace.start, &order).map_err(|e| e.to_string())?;
                for k in 1..=trace.steps.len() {
                    let next = potential_lambda_vec(&inst, &trace.state_after(k), &order).map_err(|e| e.to_string())?;
                    ensure(next > prev, || format!("seed {seed}: step {k} does not lex-increase"))?;
                    prev = next;
                }
                steps += trace.steps.len();
            }
        }
        let graph = explore_full_state_graph(&inst, 100_000).map_err(|e| e.to_string())?;
        ensure(necessarily_converges(&graph), || format!("seed {seed}: reachable cycle"))?;
        states += graph.state_count();
    }
    Ok(format!("{steps} steps lex-increasing, {states} states, no cycles"))
}

fn planted() -> X3cInstance {
    X3cInstance::new(6, vec![[0, 1, 2], [3, 4, 5], [0, 1, 3]]).unwrap()
}

fn c9_exjump() -> Verdict {
    let padded = pad_x3c_for_exjump(&planted());
    let (r, s) = (padded.instance.ground_set_size(), padded.instance.sets().len());
    ensure((r, s) == (42, 15), || format!("padded shape {r}/{s}"))?;
    let cover = padded.extend_cover(&[0, 1]);
    let g = gadget_exjump(&padded.instance, Some(&cover)).map_err(|e| e.to_string())?;
    let w = g.witness.as_ref().ok_or("no witness")?;
    let started = Instant::now();
    ensure(is_jump_stable(&g.instance, w), || "witness is not jump stable".into())?;
    let elapsed = started.elapsed();
    let reference = Reference::new(&g.instance);
    ensure(reference.jump_stable(w.placement()), || "reference check disagrees".into())?;
    let r_q = Rational::from_integer(r as i64);
    let identity = Rational::from_integer(3)
        - (&r_q - Rational::from_integer(3)) * Rational::ratio(1, 2) * (Rational::from_integer(6) / (&r_q - Rational::from_integer(3)));
    ensure(identity.is_zero(), || "identity fails".into())?;
    for b in r..r + s {
        let used = cover.iter().any(|&i| r + i == b);
        if used {
            ensure(reference.utility(w.placement(), b).is_zero(), || format!("b agent {b} utility nonzero"))?;
        }
    }
    Ok(format!(
        "{} agents, {} nodes (components {}), stable, check took {:?}",
        g.instance.n(),
        g.instance.node_count(),
        g.metadata["component_sizes"],
        elapsed
    ))
}

fn c10_dynamics_gadgets() -> Verdict {
    let padded = pad_x3c_for_dynamics(&planted());
    let cover = padded.extend_cover(&[0, 1]);
    let conv = gadget_dynconv(&padded.instance, DistanceFactor::Reciprocal, Some(&cover)).map_err(|e| e.to_string())?;
    let start = conv.initial.clone().ok_or("no initial")?;
    let script = conv.script.clone().ok_or("no script")?;
    let trace = run_dynamics(&conv.instance, &start, &SchedulerPolicy::Scripted(script.clone()), script.len())
        .map_err(|e| format!("dynconv: {e}"))?;
    check_trace(&Reference::new(&conv.instance), &trace).map_err(|e| format!("dynconv: {e}"))?;
    let Outcome::Converged(last) = &trace.outcome else {
        return Err(format!("dynconv: outcome {}", trace.outcome.tag()));
    };
    ensure(is_jump_stable(&conv.instance, last), || "dynconv: final state unstable".into())?;

    let x = planted();
    let cyc = gadget_dyncycle(&x, DistanceFactor::Reciprocal, Some(&[0, 1])).map_err(|e| e.to_string())?;
    let start = cyc.initial.clone().ok_or("no initial")?;
    let script = cyc.script.clone().ok_or("no script")?;
    let prefix = run_dynamics(&cyc.instance, &start, &SchedulerPolicy::Scripted(script.clone()), script.len())
        .map_err(|e| format!("dyncycle: {e}"))?;
    ensure(prefix.steps.len() == script.len(), || "dyncycle: prefix incomplete".into())?;
    check_trace(&Reference::new(&cyc.instance), &prefix).map_err(|e| format!("dyncycle: {e}"))?;
    let after = prefix.state_after(script.len());
    let tail = run_dynamics(&cyc.instance, &after, &SchedulerPolicy::FirstDeviator, 10_000).map_err(|e| e.to_string())?;
    let Outcome::CycleDetected { period, .. } = tail.outcome else {
        return Err(format!("dyncycle: outcome {}", tail.outcome.tag()));
    };
    Ok(format!(
        "dynconv: {} scripted steps to a stable state; dyncycle: {} scripted steps, then a cycle of period {period}",
        trace.steps.len(),
        prefix.steps.len()
    ))
}

fn random_weights(seed: u64, t: usize) -> WeightedCompleteGraph {
    let mut r = rng(seed);
    WeightedCompleteGraph::from_fn(t, |_, _| Rational::from_integer(r.gen_range(-3..=3)))
}

fn c11_correspondences() -> Verdict {
    let budget = OracleBudget::default();
    let mut jump_failures = Vec::new();
    let mut swap_failures = Vec::new();
    let mut example = None;
    for seed in 0..50u64 {
        let t = 2 + (seed as usize % 4);
        let g = random_weights(11_000 + seed, t);
        if !verify_local_optimum_correspondence(&g, budget).map_err(|e| e.to_string())? {
            jump_failures.push(seed);
        }
        let v = 2 * (1 + seed as usize % 4);
        let g = random_weights(11_500 + seed, v);
        if !verify_swap_local_optimum_correspondence(&g, budget).map_err(|e| e.to_string())? {
            if example.is_none() {
                example = swap_correspondence_report(&g, budget).unwrap().counterexample.map(|a| (v, a));
            }
            swap_failures.push(seed);
        }
    }
    let _ = jump_correspondence_report;
    if jump_failures.is_empty() && swap_failures.is_empty() {
        return Ok("jump/Max-Cut and swap/Graph-Partitioning hold on 50 graphs each".into());
    }
    Err(format!(
        "jump/Max-Cut fails on {} of 50 graphs; swap/Graph-Partitioning fails on {} of 50 graphs \
         (first counterexample: {:?}, swap stable but a cut-lowering swap exists)",
        jump_failures.len(),
        swap_failures.len(),
        example
    ))
}

fn c12_swaps() -> Verdict {
    let mut pairs = 0;
    for seed in 0..100u64 {
        let mut r = rng(12_000 + seed);
        let n = r.gen_range(2..=6);
        let nodes = r.gen_range(n..=8);
        let topology = random_graph(&mut r, nodes, 0.4);
        let factor = if seed % 2 == 0 {
            DistanceFactor::Reciprocal
        } else {
            random_table(&mut r, nodes)
        };
        let inst = TdgInstance::new(random_symmetric_utilities(&mut r, n), topology, factor).unwrap();
        let reference = Reference::new(&inst);
        let start = random_placement(&mut r, n, nodes);
        let p = start.placement();
        for i in 0..n {
            for j in i + 1..n {
                let (gi, gj) = reference.swap_gains(p, i, j);
                let mut q = p.to_vec();
                q.swap(i, j);
                let delta = reference.phi(&q) - reference.phi(p);
                ensure(delta == (gi + gj) * Rational::from_integer(2), || format!("seed {seed}: doubling fails"))?;
                pairs += 1;
            }
        }
        let trace = run_swap_dynamics(&inst, &start, &SchedulerPolicy::FirstDeviator, DEFAULT_MAX_STEPS)
            .map_err(|e| e.to_string())?;
        ensure(matches!(trace.outcome, Outcome::Converged(_)), || format!("seed {seed}: swap run did not converge"))?;
        phi_doubling(&trace, &reference).map_err(|e| format!("seed {seed}: {e}"))?;
    }

    let room = gadget_roommates_no_swap().map_err(|e| e.to_string())?;
    ensure(exists_swap_stable(&room.instance, OracleBudget::default()).unwrap().is_none(), || {
        "roommates instance has a swap stable assignment".into()
    })?;
    let reference = Reference::new(&room.instance);
    let mut all_unstable = true;
    tdg_core::oracle::for_each_assignment(4, 4, |p| {
        all_unstable &= !reference.swap_stable(p);
        false
    });
    ensure(all_unstable, || "reference finds a swap stable roommates assignment".into())?;

    let cyc = gadget_swap_cycle().map_err(|e| e.to_string())?;
    let lambda = cyc.initial.clone().unwrap();
    let mut all_policies = vec![SchedulerPolicy::FirstDeviator, SchedulerPolicy::BestGain];
    all_policies.extend((0..16).map(SchedulerPolicy::SeededRandom));
    for policy in &all_policies {
        let trace = run_swap_dynamics(&cyc.instance, &lambda, policy, 64).map_err(|e| e.to_string())?;
        ensure(matches!(trace.outcome, Outcome::CycleDetected { .. }), || {
            format!("{policy:?}: outcome {}", trace.outcome.tag())
        })?;
    }
    let graph = explore_swap_state_graph(&cyc.instance, &lambda, 10_000).map_err(|e| e.to_string())?;
    ensure(!possibly_converges(&graph), || "a swap stable state is reachable from the cycle start".into())?;
    ensure(is_swap_stable(&cyc.instance, cyc.witness.as_ref().unwrap()), || "witness not swap stable".into())?;
    Ok(format!(
        "doubling on {pairs} pairs; roommates has none of 24 stable; swap cycle loops under {} policies ({} reachable states, none stable)",
        all_policies.len(),
        graph.state_count()
    ))
}

// Connected with diameter at least 3, decided by BFS over adjacency bitmasks.
fn long_diameter(adj: &[u32]) -> bool {
    let m = adj.len();
    let full = (1u32 << m) - 1;
    let mut far = false;
    for s in 0..m {
        let (mut seen, mut frontier, mut depth) = (1u32 << s, 1u32 << s, 0);
        while seen != full {
            let mut next = 0;
            for v in 0..m {
                if frontier >> v & 1 == 1 {
                    next |= adj[v];
                }
            }
            next &= !seen;
            if next == 0 {
                return false;
            }
            seen |= next;
            frontier = next;
            depth += 1;
        }
        far |= depth >= 3;
    }
    far
}

fn c13_cat_and_mouse() -> Verdict {
    let mut graphs = 0;
    for m in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let mut adj = vec![0u32; m];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            if !long_diameter(&adj) {
                continue;
            }
            let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
            let topology = TopologyGraph::new(m, edges).unwrap();
            let g = gadget_cat_and_mouse(topology).map_err(|e| e.to_string())?;
            let w = exists_jump_stable(&g.instance, OracleBudget::default()).map_err(|e| e.to_string())?;
            ensure(w.is_none(), || format!("stable assignment on graph {mask:#x} with {m} nodes"))?;
            graphs += 1;
        }
    }
    let star = TopologyGraph::star(5);
    ensure(gadget_cat_and_mouse(star.clone()).is_err(), || "star accepted".into())?;
    let mut u = UtilityMatrix::zeros(2);
    u.set(0, 1, Rational::one()).unwrap();
    u.set(1, 0, Rational::from_integer(-1)).unwrap();
    let inst = TdgInstance::new(u, star, DistanceFactor::Reciprocal).unwrap();
    let w = exists_jump_stable(&inst, OracleBudget::default()).map_err(|e| e.to_string())?;
    ensure(w.is_some(), || "no stable assignment on the 5-node star".into())?;
    Ok(format!("{graphs} labeled graphs without a stable assignment; star has {:?}", w.unwrap().placement()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Verdict); 13] = [
        (1, "symmetric convergence", c1_symmetric_convergence),
        (2, "acyclic construction", c2_acyclic_soundness),
        (3, "cycle on cycle characterization", c3_cycle_characterization),
        (4, "tree counterexample", c4_tree_counterexample),
        (5, "extended star", c5_extended_star),
        (6, "path construction", c6_path),
        (7, "exponential dynamics", c7_exponential),
        (8, "lexicographic potential", c8_lexicographic),
        (9, "exjump witness", c9_exjump),
        (10, "dynamics gadget scripts", c10_dynamics_gadgets),
        (11, "local optimum correspondences", c11_correspondences),
        (12, "swap results", c12_swaps),
        (13, "cat and mouse", c13_cat_and_mouse),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let started = Instant::now();
        let verdict = run();
        let secs = started.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {id:>2} {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                println!("FAIL {id:>2} {name} ({secs:.1}s): {detail}");
                failed.push(id);
            }
        }
    }
    let expected: Vec<usize> = KNOWN_FAILURES
        .iter()
        .copied()
        .filter(|k| only.map_or(true, |o| o == *k))
        .collect();
    println!(
        "acceptance: {} failed {:?}, expected failures {:?}",
        failed.len(),
        failed,
        expected
    );
    if failed != expected {
        std::process::exit(1);
    }
}
