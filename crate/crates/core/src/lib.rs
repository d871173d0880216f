//! Topological distance games: agents placed on the nodes of a graph, each
//! valuing the others by inherent utility weighted by a decreasing function
//! of graph distance.

pub mod dynamics;
pub mod error;
pub mod gadgets;
pub mod factor;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod solvers;
pub mod stability;

pub use error::{Result, TdgError};
pub use factor::{factor_at, DistanceFactor};
pub use graph::{all_pairs_distances, diameter, Distance, DistanceMatrix, TopologyGraph};
pub use instance::{
    friendship_graph, jump, swap, utility, Assignment, FriendshipGraph, TdgInstance,
    UtilityMatrix,
};
pub use rational::Rational;
pub use stability::{
    beneficial_jumps, beneficial_swaps, is_jump_stable, is_swap_stable, potential_lambda_vec,
    potential_phi, Deviation,
};
pub use solvers::{
    solve_acyclic, solve_cycle_on_cycle, solve_extended_star, solve_path, SolverMethod,
    SolverOutcome, SolverReport,
};
pub use dynamics::{
    explore_full_state_graph, explore_state_graph, explore_swap_state_graph, necessarily_converges,
    possibly_converges, run_dynamics, run_scripted_exponential, run_swap_dynamics, DynamicsTrace,
    Outcome, SchedulerPolicy, StateGraph, Step,
};
pub use oracle::{exists_jump_stable, exists_swap_stable, solve_brute_force, OracleBudget};
