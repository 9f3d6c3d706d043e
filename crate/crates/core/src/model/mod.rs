//! The game itself: countries, relations, allocations, states and
//! preferences.

mod allocation;
mod graph;
mod nash;
mod state;

pub use allocation::AllocationMatrix;
pub use graph::EnvironmentGraph;
pub use nash::{sampled_nash_check, Deviation, NashReport};
pub use state::{
    equilibrium_equivalent, indifferent, state_of, state_vector, strongly_prefers, total_support,
    total_threat, weakly_prefers, State, StateVector,
};
