//! Support, threat and the induced country states, plus the preference
//! predicates built on top of them.
//!
//! Country `i`'s total support counts what its friends (itself included)
//! allocate to it plus what it allocates against its adversaries; its total
//! threat counts what its adversaries allocate against it. The sign of
//! support minus threat decides whether it is safe, precarious or unsafe.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum State {
    Safe,
    Precarious,
    Unsafe,
}

impl State {
    pub fn from_balance<T: Scalar>(support: T, threat: T, tol: &T) -> State {
        match support.cmp_tol(&threat, tol) {
            Ordering::Greater => State::Safe,
            Ordering::Equal => State::Precarious,
            Ordering::Less => State::Unsafe,
        }
    }

    /// Safe or precarious.
    pub fn survives(self) -> bool {
        self != State::Unsafe
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            State::Safe => "safe",
            State::Precarious => "precarious",
            State::Unsafe => "unsafe",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(pub Vec<State>);

impl StateVector {
    pub fn get(&self, i: usize) -> State {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.0.iter().copied()
    }
}

fn check<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
) -> Result<(), ModelError> {
    u.check_dim(g)?;
    g.check_index(i)
}

pub(crate) fn support_unchecked<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
) -> T {
    let from_friends = std::iter::once(i)
        .chain(g.friends(i).iter().copied())
        .fold(T::zero(), |acc, j| acc + u.get(j, i));
    g.adversaries(i)
        .iter()
        .fold(from_friends, |acc, &j| acc + u.get(i, j))
}

pub(crate) fn threat_unchecked<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
) -> T {
    g.adversaries(i)
        .iter()
        .fold(T::zero(), |acc, &j| acc + u.get(j, i))
}

/// Total support of country `i` under `u`.
pub fn total_support<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
) -> Result<T, ModelError> {
    check(g, u, i)?;
    Ok(support_unchecked(g, u, i))
}

/// Total threat against country `i` under `u`.
pub fn total_threat<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
) -> Result<T, ModelError> {
    check(g, u, i)?;
    Ok(threat_unchecked(g, u, i))
}

pub fn state_of<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
) -> Result<State, ModelError> {
    check(g, u, i)?;
    Ok(State::from_balance(
        support_unchecked(g, u, i),
        threat_unchecked(g, u, i),
        &g.tolerance(),
    ))
}

pub fn state_vector<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
) -> Result<StateVector, ModelError> {
    u.check_dim(g)?;
    let tol = g.tolerance();
    Ok(StateVector(
        (0..g.len())
            .map(|i| {
                State::from_balance(support_unchecked(g, u, i), threat_unchecked(g, u, i), &tol)
            })
            .collect(),
    ))
}

/// Sufficient conditions for `i` to weakly prefer `v` over `u`: every friend
/// (itself included) survives under `v` or was already unsafe under `u`, and
/// every adversary is not safe under `v` or was already safe under `u`.
pub fn weakly_prefers<T: Scalar>(
    g: &EnvironmentGraph<T>,
    i: usize,
    u: &AllocationMatrix<T>,
    v: &AllocationMatrix<T>,
) -> Result<bool, ModelError> {
    g.check_index(i)?;
    let (xu, xv) = (state_vector(g, u)?, state_vector(g, v)?);
    let friends_ok = std::iter::once(i)
        .chain(g.friends(i).iter().copied())
        .all(|j| xv.get(j).survives() || xu.get(j) == State::Unsafe);
    let adversaries_ok = g
        .adversaries(i)
        .iter()
        .all(|&j| xv.get(j) != State::Safe || xu.get(j) == State::Safe);
    Ok(friends_ok && adversaries_ok)
}

/// Sufficient condition for indifference: identical states on every friend
/// (itself included) and adversary of `i`.
pub fn indifferent<T: Scalar>(
    g: &EnvironmentGraph<T>,
    i: usize,
    u: &AllocationMatrix<T>,
    v: &AllocationMatrix<T>,
) -> Result<bool, ModelError> {
    g.check_index(i)?;
    let (xu, xv) = (state_vector(g, u)?, state_vector(g, v)?);
    Ok(g.permitted(i).into_iter().all(|j| xu.get(j) == xv.get(j)))
}

/// Sufficient condition for `i` to strongly prefer `v` over `u`: it survives
/// under `v` but is unsafe under `u`.
pub fn strongly_prefers<T: Scalar>(
    g: &EnvironmentGraph<T>,
    i: usize,
    u: &AllocationMatrix<T>,
    v: &AllocationMatrix<T>,
) -> Result<bool, ModelError> {
    Ok(state_of(g, v, i)?.survives() && state_of(g, u, i)? == State::Unsafe)
}

/// Two allocations are equilibrium equivalent when they induce the same
/// state vector.
pub fn equilibrium_equivalent<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    v: &AllocationMatrix<T>,
) -> Result<bool, ModelError> {
    Ok(state_vector(g, u)? == state_vector(g, v)?)
}
