//! Picks a solver from the structure of the adversary graph.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::balanced::{
    beta, from_edge_vector, is_balanced, necessary_condition, AdversaryIncidence, EdgeVector,
};
use crate::error::SolverError;
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;
use crate::solvers::{
    bipartition, extended_power_condition, is_complete_adversary_graph, phase_one, solve_bipartite,
    solve_complete, FlowOutcome, HallViolation, DEFAULT_SUBSET_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Complete,
    BipartiteFlow,
    Lp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Complete => "complete",
            Method::BipartiteFlow => "bipartite-flow",
            Method::Lp => "lp",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" => Ok(Method::Complete),
            "bipartite-flow" | "flow" => Ok(Method::BipartiteFlow),
            "lp" => Ok(Method::Lp),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Force a particular solver; `None` dispatches on structure.
    pub method: Option<Method>,
    /// Largest number of countries with adversaries for which the subset
    /// witness is searched after a failed flow.
    pub subset_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: None,
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }
}

/// Why no balanced equilibrium exists.
#[derive(Debug, Clone, PartialEq)]
pub enum Infeasibility<T> {
    /// Countries whose power exceeds the combined power of their adversaries.
    PowerCondition { violators: Vec<usize> },
    /// Maximum flow left some source or sink arcs unsaturated. `subset` is a
    /// smallest violating camp subset when enumeration was within the cap.
    Unsaturated {
        flow_value: T,
        sources: Vec<usize>,
        sinks: Vec<usize>,
        subset: Option<HallViolation<T>>,
    },
    /// Phase-one optimum is positive.
    LpResidual { residual: T },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<T> {
    Balanced {
        v: EdgeVector<T>,
        equilibrium: AllocationMatrix<T>,
    },
    Infeasible(Infeasibility<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub method: Method,
    pub outcome: Outcome<T>,
}

impl<T> Solution<T> {
    pub fn equilibrium(&self) -> Option<&AllocationMatrix<T>> {
        match &self.outcome {
            Outcome::Balanced { equilibrium, .. } => Some(equilibrium),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.equilibrium().is_some()
    }
}

/// Solves with structural dispatch: complete adversary graphs by peeling,
/// bipartite ones by max flow, everything else by the simplex.
pub fn solve<T: Scalar>(g: &EnvironmentGraph<T>) -> Result<Solution<T>, SolverError> {
    solve_with(g, &SolveOptions::default())
}

pub fn solve_with<T: Scalar>(
    g: &EnvironmentGraph<T>,
    opts: &SolveOptions,
) -> Result<Solution<T>, SolverError> {
    let method = match opts.method {
        Some(m) => m,
        None if is_complete_adversary_graph(g) => Method::Complete,
        None if bipartition(g).is_some() => Method::BipartiteFlow,
        None => Method::Lp,
    };
    let outcome = match method {
        Method::Complete => match solve_complete(g)? {
            Some(u) => balanced(g, u)?,
            None => Outcome::Infeasible(Infeasibility::PowerCondition {
                violators: necessary_condition(g).violators,
            }),
        },
        Method::BipartiteFlow => {
            let b = bipartition(g).ok_or(SolverError::NotBipartite)?;
            match solve_bipartite(g, &b)? {
                FlowOutcome::Balanced { equilibrium, .. } => balanced(g, equilibrium)?,
                FlowOutcome::Unsaturated {
                    value,
                    sources,
                    sinks,
                } => {
                    let subset = match extended_power_condition(g, &b, opts.subset_cap) {
                        Ok(check) => check.violation,
                        Err(SolverError::SubsetCapExceeded { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    Outcome::Infeasible(Infeasibility::Unsaturated {
                        flow_value: value,
                        sources,
                        sinks,
                        subset,
                    })
                }
            }
        }
        Method::Lp => {
            let run = phase_one(&AdversaryIncidence::new(g))?;
            match run.solution {
                Some(v) => balanced(g, from_edge_vector(g, &v)?)?,
                None => Outcome::Infeasible(Infeasibility::LpResidual {
                    residual: run.residual,
                }),
            }
        }
    };
    Ok(Solution { method, outcome })
}

fn balanced<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: AllocationMatrix<T>,
) -> Result<Outcome<T>, SolverError> {
    if !is_balanced(g, &u) {
        return Err(SolverError::Numerical(
            "solver output failed the balanced check".into(),
        ));
    }
    Ok(Outcome::Balanced {
        v: beta(g, &u)?,
        equilibrium: u,
    })
}
