//! Balanced equilibria: every country with adversaries spends its whole
//! power on them, symmetrically across each adversary pair, while every
//! other country keeps its power for itself.
//!
//! Such allocations are in one-to-one correspondence with nonnegative
//! solutions of the incidence system `C v = π` of the adversary subgraph.
//! [`beta`] and [`from_edge_vector`] move between the two views.

mod conditions;
mod incidence;

pub(crate) use conditions::check_balanced_at;
pub use conditions::{
    check_balanced, is_balanced, necessary_condition, BalanceReport, BalanceViolation,
    PowerCondition,
};
pub use incidence::{beta, expand_edge_vector, from_edge_vector, AdversaryIncidence, EdgeVector};
