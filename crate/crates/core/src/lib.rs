//! Power allocation games on signed graphs.
//!
//! Countries split their power between themselves, their friends and their
//! adversaries. This crate evaluates allocations, decides whether a balanced
//! equilibrium exists, and builds one when it does.
//!
//! ```
//! use powergame::balanced::is_balanced;
//! use powergame::model::EnvironmentGraph;
//! use powergame::scalar::Exact;
//! use powergame::solvers::solve;
//!
//! let p = |x| Exact::from_integer(x);
//! let g = EnvironmentGraph::new(vec![p(8), p(6), p(4)], &[], &[(0, 1), (0, 2), (1, 2)]).unwrap();
//! let solution = solve(&g).unwrap();
//! let u = solution.equilibrium().unwrap();
//! assert!(is_balanced(&g, u));
//! ```
//!
//! * [`model`]: graphs, allocation matrices, states and preferences.
//! * [`balanced`]: the balance conditions and the edge-vector system.
//! * [`solvers`]: existence tests and constructions.
//! * [`generators`]: instance generators and equilibrium-preserving steps.
//! * [`io`]: JSON file formats.

// `!(x >= 0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod balanced;
pub mod error;
pub mod generators;
pub mod io;
pub mod model;
pub mod scalar;
pub mod solvers;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/balanced.md")]
    mod balanced {}
    #[doc = include_str!("../../../book/src/existence.md")]
    mod existence {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
