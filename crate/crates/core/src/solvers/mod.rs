//! Deciding existence of a balanced equilibrium and constructing one.
//!
//! * [`lp_feasibility`] works on any adversary graph.
//! * [`solve_complete`] handles complete adversary graphs, where the
//!   per-country power condition is sufficient.
//! * [`solve_bipartite`] handles bipartite adversary graphs through a max-flow
//!   reduction; [`extended_power_condition`] is the equivalent subset test.
//! * [`solve`] dispatches between them.

mod bipartite;
mod complete;
mod dispatch;
mod flow;
mod lp;

pub use bipartite::{
    bipartition, extended_power_condition, Bipartition, HallCheck, HallViolation, Side,
    DEFAULT_SUBSET_CAP,
};
pub use complete::{is_complete_adversary_graph, solve_complete, three_player_closed_form};
pub use dispatch::{solve, solve_with, Infeasibility, Method, Outcome, Solution, SolveOptions};
pub use flow::{max_flow, solve_bipartite, ArcKind, FlowArc, FlowNetwork, FlowOutcome, MaxFlow};
pub use lp::{iteration_cap, lp_feasibility, phase_one, PhaseOne};
