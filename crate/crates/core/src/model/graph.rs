use std::collections::BTreeSet;

use crate::error::ModelError;
use crate::scalar::Scalar;

/// The signed environment graph: countries, their total powers, and
/// friend/adversary relations.
///
/// Each country is implicitly its own friend. Relations are stored as
/// adjacency sets excluding the country itself.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvironmentGraph<T> {
    powers: Vec<T>,
    friends: Vec<BTreeSet<usize>>,
    adversaries: Vec<BTreeSet<usize>>,
    tolerance: T,
}

impl<T: Scalar> EnvironmentGraph<T> {
    /// Builds and validates a graph. Pairs are unordered; listing the same
    /// pair twice, in either orientation, is rejected.
    pub fn new(
        powers: Vec<T>,
        friend_edges: &[(usize, usize)],
        adversary_edges: &[(usize, usize)],
    ) -> Result<Self, ModelError> {
        for (country, p) in powers.iter().enumerate() {
            // `!(p >= 0)` also rejects NaN.
            if !(*p >= T::zero()) || !p.to_f64().is_finite() {
                return Err(ModelError::InvalidPower {
                    country,
                    power: p.to_string(),
                });
            }
        }
        let n = powers.len();
        let mut g = EnvironmentGraph {
            powers,
            friends: vec![BTreeSet::new(); n],
            adversaries: vec![BTreeSet::new(); n],
            tolerance: T::default_tolerance(),
        };
        for &(i, j) in friend_edges {
            g.insert_edge(i, j, false)?;
        }
        for &(i, j) in adversary_edges {
            g.insert_edge(i, j, true)?;
        }
        Ok(g)
    }

    /// Replaces the comparison tolerance (only meaningful for `f64`).
    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn insert_edge(&mut self, i: usize, j: usize, adversary: bool) -> Result<(), ModelError> {
        let n = self.len();
        for index in [i, j] {
            if index >= n {
                return Err(ModelError::IndexOutOfRange { index, n });
            }
        }
        if i == j {
            return Err(ModelError::SelfLoop(i));
        }
        let (a, b) = (i.min(j), i.max(j));
        let (same, other) = if adversary {
            (&self.adversaries, &self.friends)
        } else {
            (&self.friends, &self.adversaries)
        };
        if other[a].contains(&b) {
            return Err(ModelError::ConflictingSign(a, b));
        }
        if same[a].contains(&b) {
            return Err(ModelError::DuplicateEdge(a, b));
        }
        let sets = if adversary {
            &mut self.adversaries
        } else {
            &mut self.friends
        };
        sets[a].insert(b);
        sets[b].insert(a);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn powers(&self) -> &[T] {
        &self.powers
    }

    pub fn power(&self, i: usize) -> T {
        self.powers[i]
    }

    /// Friends of `i`, excluding `i` itself.
    pub fn friends(&self, i: usize) -> &BTreeSet<usize> {
        &self.friends[i]
    }

    pub fn adversaries(&self, i: usize) -> &BTreeSet<usize> {
        &self.adversaries[i]
    }

    pub fn has_adversaries(&self, i: usize) -> bool {
        !self.adversaries[i].is_empty()
    }

    pub fn are_adversaries(&self, i: usize, j: usize) -> bool {
        self.adversaries.get(i).is_some_and(|a| a.contains(&j))
    }

    /// Friendship including the implicit self-relation.
    pub fn are_friends(&self, i: usize, j: usize) -> bool {
        i == j || self.friends.get(i).is_some_and(|f| f.contains(&j))
    }

    /// Columns country `i` may allocate to: itself, its friends and its
    /// adversaries, in ascending order.
    pub fn permitted(&self, i: usize) -> Vec<usize> {
        let mut cols: Vec<usize> = self.friends[i]
            .iter()
            .chain(self.adversaries[i].iter())
            .copied()
            .chain(std::iter::once(i))
            .collect();
        cols.sort_unstable();
        cols
    }

    /// Friend pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn friend_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        ordered_pairs(&self.friends)
    }

    /// Adversary pairs `(i, j)` with `i < j`, in lexicographic order. This is
    /// the edge ordering used by every edge vector.
    pub fn adversary_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        ordered_pairs(&self.adversaries)
    }

    pub fn adversary_edge_count(&self) -> usize {
        self.adversaries.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Countries with at least one adversary, ascending.
    pub fn countries_with_adversaries(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.has_adversaries(i))
            .collect()
    }

    pub fn check_index(&self, index: usize) -> Result<(), ModelError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(ModelError::IndexOutOfRange {
                index,
                n: self.len(),
            })
        }
    }

    /// Appends a country with the given power and no relations.
    pub(crate) fn push_country(&mut self, power: T) -> usize {
        self.powers.push(power);
        self.friends.push(BTreeSet::new());
        self.adversaries.push(BTreeSet::new());
        self.powers.len() - 1
    }

    pub(crate) fn add_adversary_edge(&mut self, i: usize, j: usize) -> Result<(), ModelError> {
        self.insert_edge(i, j, true)
    }

    pub(crate) fn add_power(&mut self, i: usize, delta: T) {
        self.powers[i] += delta;
    }

    /// Graph with every power multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        let mut g = self.clone();
        for p in &mut g.powers {
            *p = *p * factor;
        }
        g
    }

    /// Relabels countries: country `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, ModelError> {
        let n = self.len();
        let mut powers = vec![T::zero(); n];
        for (i, &p) in self.powers.iter().enumerate() {
            powers[perm[i]] = p;
        }
        let map = |(i, j): (usize, usize)| (perm[i], perm[j]);
        let friends: Vec<_> = self.friend_edges().map(map).collect();
        let adversaries: Vec<_> = self.adversary_edges().map(map).collect();
        Ok(EnvironmentGraph::new(powers, &friends, &adversaries)?.with_tolerance(self.tolerance))
    }

    /// Same relations with every power converted to `f64`.
    pub fn to_f64(&self) -> EnvironmentGraph<f64> {
        EnvironmentGraph {
            powers: self.powers.iter().map(Scalar::to_f64).collect(),
            friends: self.friends.clone(),
            adversaries: self.adversaries.clone(),
            tolerance: crate::scalar::DEFAULT_TOLERANCE.max(self.tolerance.to_f64()),
        }
    }

    pub fn total_power(&self) -> T {
        self.powers.iter().fold(T::zero(), |acc, &p| acc + p)
    }
}

fn ordered_pairs(sets: &[BTreeSet<usize>]) -> impl Iterator<Item = (usize, usize)> + '_ {
    sets.iter()
        .enumerate()
        .flat_map(|(i, s)| s.range(i + 1..).map(move |&j| (i, j)))
}
