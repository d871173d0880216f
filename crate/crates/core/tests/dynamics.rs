mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use tdg_core::gadgets::{gadget_cat_and_mouse, gadget_exponential_family, gadget_swap_cycle};
use tdg_core::*;

fn policy_strategy() -> impl Strategy<Value = SchedulerPolicy> {
    prop_oneof![
        Just(SchedulerPolicy::FirstDeviator),
        Just(SchedulerPolicy::BestGain),
        any::<u64>().prop_map(SchedulerPolicy::SeededRandom),
    ]
}

fn general_instance(seed: u64) -> (TdgInstance, Assignment) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=5);
    let nodes = r.gen_range(n..=7);
    let u = UtilityMatrix::from_fn(n, |i, j| if i == j { Rational::zero() } else { rational_in(&mut r, 2) });
    let topology = random_graph(&mut r, nodes, 0.4);
    let inst = TdgInstance::new(u, topology, DistanceFactor::Reciprocal).unwrap();
    let start = random_placement(&mut r, n, nodes);
    (inst, start)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn traces_replay_with_matching_gains(seed in any::<u64>(), policy in policy_strategy()) {
        let (inst, start) = general_instance(seed);
        let reference = Reference::new(&inst);
        let trace = run_dynamics(&inst, &start, &policy, 200).unwrap();
        let mut lambda = start.clone();
        for step in &trace.steps {
            let Step::Jump { agent, from, to, gain } = step else { panic!("jump dynamics made a swap") };
            prop_assert_eq!(lambda.node_of(*agent), *from);
            prop_assert!(gain.is_positive());
            prop_assert_eq!(gain, &reference.jump_gain(lambda.placement(), *agent, *to));
            lambda = jump(&lambda, *agent, *to).unwrap();
        }
        match &trace.outcome {
            Outcome::Converged(last) => {
                prop_assert_eq!(last, &lambda);
                prop_assert!(reference.jump_stable(last.placement()));
            }
            Outcome::CycleDetected { first_repeat_index, period } => {
                prop_assert_eq!(trace.state_after(*first_repeat_index), lambda);
                prop_assert_eq!(first_repeat_index + period, trace.steps.len());
            }
            Outcome::StepLimit => prop_assert_eq!(trace.steps.len(), 200),
            Outcome::ScriptExhausted(_) => prop_assert!(false, "no script was given"),
        }
    }

    #[test]
    fn runs_are_deterministic(seed in any::<u64>(), policy in policy_strategy()) {
        let (inst, start) = general_instance(seed);
        let a = run_dynamics(&inst, &start, &policy, 200).unwrap();
        let b = run_dynamics(&inst, &start, &policy, 200).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn symmetric_runs_converge_within_state_count(seed in any::<u64>(), policy in policy_strategy()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let nodes = r.gen_range(n..=6);
        let topology = random_graph(&mut r, nodes, 0.5);
        let inst = TdgInstance::new(random_symmetric_utilities(&mut r, n), topology, DistanceFactor::Reciprocal).unwrap();
        let start = random_placement(&mut r, n, nodes);
        let graph = explore_state_graph(&inst, &start, 100_000).unwrap();
        prop_assert!(necessarily_converges(&graph));
        let trace = run_dynamics(&inst, &start, &policy, 100_000).unwrap();
        prop_assert!(matches!(trace.outcome, Outcome::Converged(_)));
        prop_assert!(trace.steps.len() < graph.state_count());
        prop_assert!(trace.phi_values.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn state_graph_edges_are_beneficial_jumps(seed in any::<u64>()) {
        let (inst, start) = general_instance(seed);
        let graph = explore_state_graph(&inst, &start, 100_000).unwrap();
        for (k, state) in graph.states.iter().enumerate() {
            let lambda = Assignment::new(state.clone()).unwrap();
            let mut expected: Vec<usize> = beneficial_jumps(&inst, &lambda)
                .into_iter()
                .map(|d| match d {
                    Deviation::Jump { agent, target, .. } => {
                        graph.index_of(jump(&lambda, agent, target).unwrap().placement()).unwrap()
                    }
                    Deviation::Swap { .. } => unreachable!(),
                })
                .collect();
            expected.sort_unstable();
            expected.dedup();
            prop_assert_eq!(&graph.edges[k], &expected);
            prop_assert_eq!(graph.stable_flags[k], is_jump_stable(&inst, &lambda));
        }
    }
}

#[test]
fn cat_and_mouse_on_path5_cycles() {
    let g = gadget_cat_and_mouse(TopologyGraph::path(5)).unwrap();
    let start = Assignment::new(vec![0, 4]).unwrap();
    let trace = run_dynamics(&g.instance, &start, &SchedulerPolicy::FirstDeviator, 1000).unwrap();
    assert!(matches!(trace.outcome, Outcome::CycleDetected { .. }));
}

#[test]
fn exponential_family_possibly_converges_everywhere() {
    let g = gadget_exponential_family(1).unwrap();
    let full = explore_full_state_graph(&g.instance, 1_000_000).unwrap();
    assert!(possibly_converges(&full));
    assert!(necessarily_converges(&full));
    let graph = explore_state_graph(&g.instance, g.initial.as_ref().unwrap(), 1_000_000).unwrap();
    assert!(possibly_converges(&graph));
}

#[test]
fn scripted_exponential_counts() {
    let (_, t1) = run_scripted_exponential(1).unwrap();
    assert_eq!(t1.jumps_by(1), 2);
    let (_, t2) = run_scripted_exponential(2).unwrap();
    assert_eq!(t2.jumps_by(3), 4);
    let (_, t3) = run_scripted_exponential(3).unwrap();
    assert!(t3.jumps_by(5) >= 8);
    assert!(matches!(run_scripted_exponential(15), Err(TdgError::OutOfRange { .. })));
}

#[test]
fn swap_cycle_state_graph_has_a_cycle() {
    let g = gadget_swap_cycle().unwrap();
    let start = g.initial.as_ref().unwrap();
    let graph = explore_swap_state_graph(&g.instance, start, 1000).unwrap();
    assert!(!necessarily_converges(&graph));
    assert!(!possibly_converges(&graph));
    for policy in [SchedulerPolicy::FirstDeviator, SchedulerPolicy::BestGain, SchedulerPolicy::SeededRandom(9)] {
        let trace = run_swap_dynamics(&g.instance, start, &policy, 64).unwrap();
        let Outcome::CycleDetected { first_repeat_index, .. } = trace.outcome else { panic!() };
        // the repeated labeled state is the start rotated around the ring
        let repeated = trace.state_after(first_repeat_index);
        let shifts: Vec<usize> = (0..6)
            .filter(|shift| {
                repeated.placement().iter().zip(start.placement()).all(|(&a, &b)| a == (b + shift) % 6)
                    || repeated.placement().iter().zip(start.placement()).all(|(&a, &b)| (a + shift) % 6 == b)
            })
            .collect();
        assert!(!shifts.is_empty());
    }
    let witness = g.witness.as_ref().unwrap();
    let still = run_swap_dynamics(&g.instance, witness, &SchedulerPolicy::FirstDeviator, 64).unwrap();
    assert_eq!(still.outcome, Outcome::Converged(witness.clone()));
    assert!(still.steps.is_empty());
}

#[test]
fn scripted_swaps_are_checked() {
    let g = gadget_swap_cycle().unwrap();
    let start = g.initial.as_ref().unwrap();
    let ok = run_swap_dynamics(&g.instance, start, &SchedulerPolicy::Scripted(vec![(2, 5)]), 10).unwrap();
    assert_eq!(ok.steps.len(), 1);
    let err = run_swap_dynamics(&g.instance, start, &SchedulerPolicy::Scripted(vec![(0, 1)]), 10).unwrap_err();
    assert!(matches!(err, TdgError::ScriptStep { index: 0, .. }));
}

#[test]
fn state_limit_is_enforced() {
    let g = gadget_cat_and_mouse(TopologyGraph::path(6)).unwrap();
    let start = Assignment::new(vec![0, 1]).unwrap();
    assert!(matches!(
        explore_state_graph(&g.instance, &start, 2),
        Err(TdgError::StateSpaceTooLarge { limit: 2 })
    ));
}
