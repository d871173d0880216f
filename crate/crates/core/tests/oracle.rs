mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use tdg_core::gadgets::WeightedCompleteGraph;
use tdg_core::oracle::{for_each_assignment, verify_local_optimum_correspondence};
use tdg_core::*;

fn small_instance(seed: u64) -> TdgInstance {
    let mut r = rng(seed);
    let n = r.gen_range(1..=4);
    let nodes = r.gen_range(n..=6);
    let u = UtilityMatrix::from_fn(n, |i, j| if i == j { Rational::zero() } else { rational_in(&mut r, 2) });
    TdgInstance::new(u, random_graph(&mut r, nodes, 0.4), DistanceFactor::Reciprocal).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witness_is_lexicographically_first(seed in any::<u64>()) {
        let inst = small_instance(seed);
        let reference = Reference::new(&inst);
        let mut first = None;
        for_each_assignment(inst.node_count(), inst.n(), |p| {
            if reference.jump_stable(p) {
                first = Some(p.to_vec());
                true
            } else {
                false
            }
        });
        let found = exists_jump_stable(&inst, OracleBudget::default()).unwrap();
        prop_assert_eq!(found.map(|a| a.into_placement()), first);
    }

    #[test]
    fn swap_witness_matches_reference(seed in any::<u64>()) {
        let inst = small_instance(seed);
        let reference = Reference::new(&inst);
        let mut first = None;
        for_each_assignment(inst.node_count(), inst.n(), |p| {
            if reference.swap_stable(p) {
                first = Some(p.to_vec());
                true
            } else {
                false
            }
        });
        let found = exists_swap_stable(&inst, OracleBudget::default()).unwrap();
        prop_assert_eq!(found.map(|a| a.into_placement()), first);
    }

    #[test]
    fn maxcut_correspondence_on_four_vertices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = WeightedCompleteGraph::from_fn(4, |_, _| Rational::from_integer(r.gen_range(-3..=3)));
        prop_assert!(verify_local_optimum_correspondence(&g, OracleBudget::default()).unwrap());
    }

    #[test]
    fn solvers_agree_with_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let nodes = r.gen_range(n..=n + 2);
        let inst = TdgInstance::new(
            random_dag_utilities(&mut r, n, 0.5),
            TopologyGraph::path(nodes),
            DistanceFactor::Reciprocal,
        )
        .unwrap();
        let oracle = exists_jump_stable(&inst, OracleBudget::default()).unwrap();
        for report in [solve_acyclic(&inst).unwrap(), solve_path(&inst).unwrap()] {
            if let Some(a) = report.assignment() {
                prop_assert!(is_jump_stable(&inst, a));
                prop_assert!(oracle.is_some());
            }
        }
    }
}

#[test]
fn symmetric_two_cliques_have_swap_stable_assignment() {
    let mut r = rng(3);
    let inst = TdgInstance::new(
        random_symmetric_utilities(&mut r, 4),
        TopologyGraph::disjoint_cliques(&[2, 2]),
        DistanceFactor::Reciprocal,
    )
    .unwrap();
    assert!(exists_swap_stable(&inst, OracleBudget::default()).unwrap().is_some());
}

#[test]
fn brute_force_report() {
    let inst = TdgInstance::new(
        UtilityMatrix::from_fn(2, |i, j| if i == j { Rational::zero() } else { Rational::one() }),
        TopologyGraph::path(3),
        DistanceFactor::Reciprocal,
    )
    .unwrap();
    let report = solve_brute_force(&inst, OracleBudget::default()).unwrap();
    assert_eq!(report.method, SolverMethod::BruteForce);
    assert_eq!(report.assignment().unwrap().placement(), &[0, 1]);
    let err = solve_brute_force(&inst, OracleBudget { max_assignments: 5 }).unwrap_err();
    assert!(matches!(err, TdgError::BudgetExceeded { ref count, budget: 5 } if count == "6"));
}
