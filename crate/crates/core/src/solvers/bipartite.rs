//! Two-colouring of the adversary graph and the subset power condition on
//! bipartite (structurally balanced) games.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::error::SolverError;
use crate::model::EnvironmentGraph;
use crate::scalar::Scalar;

/// Default bound on the number of countries with adversaries for which the
/// subset condition is enumerated.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Two camps such that every adversary pair has one country in each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Bipartition {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>) -> Self {
        left.sort_unstable();
        right.sort_unstable();
        Bipartition { left, right }
    }

    pub fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn side_of(&self, country: usize) -> Option<Side> {
        if self.left.binary_search(&country).is_ok() {
            Some(Side::Left)
        } else if self.right.binary_search(&country).is_ok() {
            Some(Side::Right)
        } else {
            None
        }
    }

    /// Checks that the camps are disjoint, cover exactly the countries with
    /// adversaries, and that every adversary pair crosses them.
    pub fn validate<T: Scalar>(&self, g: &EnvironmentGraph<T>) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::InvalidBipartition(msg));
        let mut seen = BTreeSet::new();
        for &c in self.left.iter().chain(&self.right) {
            if c >= g.len() {
                return bad(format!("country {c} out of range"));
            }
            if !seen.insert(c) {
                return bad(format!("country {c} listed twice"));
            }
            if !g.has_adversaries(c) {
                return bad(format!("country {c} has no adversaries"));
            }
        }
        if let Some(c) = g
            .countries_with_adversaries()
            .into_iter()
            .find(|c| !seen.contains(c))
        {
            return bad(format!("country {c} is in neither camp"));
        }
        if let Some((i, j)) = g
            .adversary_edges()
            .find(|&(i, j)| self.side_of(i) == self.side_of(j))
        {
            return bad(format!("adversary pair ({i}, {j}) lies inside one camp"));
        }
        Ok(())
    }
}

/// Breadth-first two-colouring of the adversary graph, component by
/// component. The smallest country of each component goes left. `None` when
/// an odd cycle exists.
pub fn bipartition<T: Scalar>(g: &EnvironmentGraph<T>) -> Option<Bipartition> {
    let mut colour: Vec<Option<Side>> = vec![None; g.len()];
    let mut queue = VecDeque::new();
    for start in g.countries_with_adversaries() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(Side::Left);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            let other = match colour[x] {
                Some(Side::Left) => Side::Right,
                _ => Side::Left,
            };
            for &y in g.adversaries(x) {
                match colour[y] {
                    None => {
                        colour[y] = Some(other);
                        queue.push_back(y);
                    }
                    Some(c) if c != other => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let pick = |s: Side| (0..g.len()).filter(|&i| colour[i] == Some(s)).collect();
    Some(Bipartition {
        left: pick(Side::Left),
        right: pick(Side::Right),
    })
}

/// A subset of one camp whose combined power exceeds that of its adversary
/// neighbourhood.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct HallViolation<T> {
    pub side: Side,
    pub subset: Vec<usize>,
    #[serde(serialize_with = "crate::io::serialize_scalar")]
    pub subset_power: T,
    pub neighbourhood: Vec<usize>,
    #[serde(serialize_with = "crate::io::serialize_scalar")]
    pub neighbourhood_power: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HallCheck<T> {
    pub subsets_checked: usize,
    /// A smallest violating subset, if any.
    pub violation: Option<HallViolation<T>>,
}

impl<T> HallCheck<T> {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Enumerates every nonempty subset `S` of either camp and checks that the
/// adversaries of `S` together hold at least as much power as `S`. Subsets
/// are visited by increasing size, so a reported violation has minimum
/// cardinality.
pub fn extended_power_condition<T: Scalar>(
    g: &EnvironmentGraph<T>,
    b: &Bipartition,
    cap: usize,
) -> Result<HallCheck<T>, SolverError> {
    b.validate(g)?;
    let size = b.left.len() + b.right.len();
    if size > cap {
        return Err(SolverError::SubsetCapExceeded { size, cap });
    }
    let tol = g.tolerance();
    let sum = |set: &mut dyn Iterator<Item = usize>| set.fold(T::zero(), |acc, c| acc + g.power(c));
    let mut checked = 0;
    let largest = b.left.len().max(b.right.len());
    for k in 1..=largest {
        for side in [Side::Left, Side::Right] {
            for subset in b.side(side).iter().copied().combinations(k) {
                checked += 1;
                let neighbourhood: BTreeSet<usize> = subset
                    .iter()
                    .flat_map(|&i| g.adversaries(i).iter().copied())
                    .collect();
                let subset_power = sum(&mut subset.iter().copied());
                let neighbourhood_power = sum(&mut neighbourhood.iter().copied());
                if neighbourhood_power.cmp_tol(&subset_power, &tol).is_lt() {
                    return Ok(HallCheck {
                        subsets_checked: checked,
                        violation: Some(HallViolation {
                            side,
                            subset,
                            subset_power,
                            neighbourhood: neighbourhood.into_iter().collect(),
                            neighbourhood_power,
                        }),
                    });
                }
            }
        }
    }
    Ok(HallCheck {
        subsets_checked: checked,
        violation: None,
    })
}
