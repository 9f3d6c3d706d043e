use std::fmt;

use serde::Serialize;

use crate::error::AllocationError;
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;

/// A single reason an allocation fails to be a balanced equilibrium.
#[derive(Debug, Clone, PartialEq)]
pub enum BalanceViolation<T> {
    /// Not a power allocation matrix for the graph at all.
    Invalid(AllocationError),
    /// A country without adversaries does not keep its whole power.
    SelfAllocation {
        country: usize,
        expected: T,
        found: T,
    },
    /// A country with adversaries keeps some power for itself.
    ReservedPower { country: usize, found: T },
    /// A country with adversaries does not spend its whole power on them.
    AdversarySpend { country: usize, spent: T, power: T },
    /// The two sides of an adversary pair allocate different amounts.
    Asymmetric {
        i: usize,
        j: usize,
        forward: T,
        backward: T,
    },
}

impl<T> BalanceViolation<T> {
    /// Which of the three balance conditions is broken; `None` for an
    /// invalid allocation.
    pub fn condition(&self) -> Option<u8> {
        match self {
            BalanceViolation::Invalid(_) => None,
            BalanceViolation::SelfAllocation { .. } => Some(1),
            BalanceViolation::ReservedPower { .. } | BalanceViolation::AdversarySpend { .. } => {
                Some(2)
            }
            BalanceViolation::Asymmetric { .. } => Some(3),
        }
    }

    /// The country the diagnostic is attached to (the smaller index for pairs).
    pub fn country(&self) -> Option<usize> {
        match self {
            BalanceViolation::Invalid(AllocationError::RowSum { country, .. }) => Some(*country),
            BalanceViolation::Invalid(AllocationError::OutsideSupport { row, .. }) => Some(*row),
            BalanceViolation::Invalid(AllocationError::Dimension { .. }) => None,
            BalanceViolation::SelfAllocation { country, .. }
            | BalanceViolation::ReservedPower { country, .. }
            | BalanceViolation::AdversarySpend { country, .. } => Some(*country),
            BalanceViolation::Asymmetric { i, .. } => Some(*i),
        }
    }
}

impl<T: fmt::Display> fmt::Display for BalanceViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BalanceViolation::Invalid(e) => write!(f, "invalid allocation: {e}"),
            BalanceViolation::SelfAllocation {
                country,
                expected,
                found,
            } => write!(
                f,
                "condition 1 at country {country}: keeps {found} of its power {expected}"
            ),
            BalanceViolation::ReservedPower { country, found } => write!(
                f,
                "condition 2 at country {country}: reserves {found} for itself"
            ),
            BalanceViolation::AdversarySpend {
                country,
                spent,
                power,
            } => write!(
                f,
                "condition 2 at country {country}: spends {spent} of {power} on adversaries"
            ),
            BalanceViolation::Asymmetric {
                i,
                j,
                forward,
                backward,
            } => write!(f, "condition 3 at pair ({i}, {j}): {forward} vs {backward}"),
        }
    }
}

impl<T: fmt::Display> Serialize for BalanceViolation<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BalanceViolation", 3)?;
        st.serialize_field("condition", &self.condition())?;
        st.serialize_field("country", &self.country())?;
        st.serialize_field("message", &self.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceReport<T> {
    pub violations: Vec<BalanceViolation<T>>,
}

impl<T> BalanceReport<T> {
    pub fn is_balanced(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&BalanceViolation<T>> {
        self.violations.first()
    }
}

/// Checks every balance condition and collects all violations.
pub fn check_balanced<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
) -> BalanceReport<T> {
    if u.dim() != g.len() {
        return BalanceReport {
            violations: vec![BalanceViolation::Invalid(AllocationError::Dimension {
                expected: g.len(),
                found: u.dim(),
            })],
        };
    }
    let mut violations = Vec::new();
    if let Err(e) = u.validate(g) {
        violations.push(BalanceViolation::Invalid(e));
    }
    for i in 0..g.len() {
        check_country(g, u, i, &mut violations);
    }
    BalanceReport { violations }
}

/// Balance conditions restricted to the given countries and their adversary
/// pairs. Used by the constructions, which only touch a few rows at a time.
pub(crate) fn check_balanced_at<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    countries: &[usize],
) -> BalanceReport<T> {
    let mut violations = Vec::new();
    for &i in countries {
        let sum = u.row_sum(i);
        if !sum.approx_eq(&g.power(i), &g.tolerance()) {
            violations.push(BalanceViolation::Invalid(AllocationError::RowSum {
                country: i,
                sum: sum.to_string(),
                power: g.power(i).to_string(),
            }));
        }
        check_country(g, u, i, &mut violations);
    }
    BalanceReport { violations }
}

fn check_country<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    i: usize,
    out: &mut Vec<BalanceViolation<T>>,
) {
    let tol = g.tolerance();
    let own = u.get(i, i);
    if !g.has_adversaries(i) {
        if !own.approx_eq(&g.power(i), &tol) {
            out.push(BalanceViolation::SelfAllocation {
                country: i,
                expected: g.power(i),
                found: own,
            });
        }
        return;
    }
    if !own.approx_eq(&T::zero(), &tol) {
        out.push(BalanceViolation::ReservedPower {
            country: i,
            found: own,
        });
    }
    let spent = g
        .adversaries(i)
        .iter()
        .fold(T::zero(), |acc, &j| acc + u.get(i, j));
    if !spent.approx_eq(&g.power(i), &tol) {
        out.push(BalanceViolation::AdversarySpend {
            country: i,
            spent,
            power: g.power(i),
        });
    }
    for &j in g.adversaries(i).range(i + 1..) {
        let (forward, backward) = (u.get(i, j), u.get(j, i));
        if !forward.approx_eq(&backward, &tol) {
            out.push(BalanceViolation::Asymmetric {
                i,
                j,
                forward,
                backward,
            });
        }
    }
}

pub fn is_balanced<T: Scalar>(g: &EnvironmentGraph<T>, u: &AllocationMatrix<T>) -> bool {
    check_balanced(g, u).is_balanced()
}

/// Outcome of the per-country power test: every country with adversaries
/// must be matched in power by its adversaries combined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerCondition {
    pub violators: Vec<usize>,
}

impl PowerCondition {
    pub fn holds(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Necessary condition for a balanced equilibrium to exist. Sufficient on
/// complete adversary graphs, but not in general.
pub fn necessary_condition<T: Scalar>(g: &EnvironmentGraph<T>) -> PowerCondition {
    let tol = g.tolerance();
    let violators = (0..g.len())
        .filter(|&i| g.has_adversaries(i))
        .filter(|&i| {
            let opposing = g
                .adversaries(i)
                .iter()
                .fold(T::zero(), |acc, &j| acc + g.power(j));
            opposing.cmp_tol(&g.power(i), &tol).is_lt()
        })
        .collect();
    PowerCondition { violators }
}
