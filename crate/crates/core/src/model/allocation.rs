use std::collections::BTreeMap;

use crate::error::{AllocationError, ModelError};
use crate::model::EnvironmentGraph;
use crate::scalar::Scalar;

/// A square nonnegative matrix whose row `i` is country `i`'s strategy.
///
/// Rows are stored sparsely; zero entries are never materialised. Whether
/// the matrix is a valid power allocation for a particular graph (row sums,
/// support) is checked by [`AllocationMatrix::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct AllocationMatrix<T> {
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Scalar> AllocationMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        AllocationMatrix {
            rows: vec![BTreeMap::new(); n],
        }
    }

    /// `diag(powers)`: every country keeps its whole power for itself.
    pub fn diagonal(powers: &[T]) -> Self {
        let mut m = Self::zeros(powers.len());
        for (i, &p) in powers.iter().enumerate() {
            m.put(i, i, p);
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<T>>) -> Result<Self, ModelError> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::DimensionMismatch {
                    expected: n,
                    found: n,
                    found_cols: row.len(),
                });
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v)?;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).copied().unwrap_or_else(T::zero)
    }

    /// Sets an entry, rejecting negative values and out-of-range indices.
    pub fn set(&mut self, i: usize, j: usize, value: T) -> Result<(), ModelError> {
        let n = self.dim();
        for index in [i, j] {
            if index >= n {
                return Err(ModelError::IndexOutOfRange { index, n });
            }
        }
        if !(value >= T::zero()) || !value.to_f64().is_finite() {
            return Err(ModelError::InvalidEntry {
                row: i,
                col: j,
                value: value.to_string(),
            });
        }
        self.put(i, j, value);
        Ok(())
    }

    pub(crate) fn put(&mut self, i: usize, j: usize, value: T) {
        if value.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, value);
        }
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, delta: T) {
        let v = self.get(i, j) + delta;
        self.put(i, j, v);
    }

    /// Appends a zero row and column.
    pub(crate) fn push_zero_country(&mut self) {
        self.rows.push(BTreeMap::new());
    }

    /// Nonzero entries of row `i` as `(column, value)`, ascending by column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        self.rows[i].iter().map(|(&j, &v)| (j, v))
    }

    pub fn row_sum(&self, i: usize) -> T {
        self.rows[i].values().fold(T::zero(), |acc, &v| acc + v)
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn to_f64(&self) -> AllocationMatrix<f64> {
        AllocationMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(&j, v)| (j, v.to_f64())).collect())
                .collect(),
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        let mut m = Self::zeros(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, &v) in row {
                m.put(i, j, v * factor);
            }
        }
        m
    }

    /// Relabels countries: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, &v) in row {
                m.put(perm[i], perm[j], v);
            }
        }
        m
    }

    /// Replaces row `i` wholesale.
    pub(crate) fn replace_row(&mut self, i: usize, row: &[T]) {
        self.rows[i].clear();
        for (j, &v) in row.iter().enumerate() {
            self.put(i, j, v);
        }
    }

    /// Checks that this is a power allocation matrix for `g`: matching
    /// dimension, support inside each country's friends and adversaries
    /// (itself included), and row sums equal to total powers.
    pub fn validate(&self, g: &EnvironmentGraph<T>) -> Result<(), AllocationError> {
        if self.dim() != g.len() {
            return Err(AllocationError::Dimension {
                expected: g.len(),
                found: self.dim(),
            });
        }
        let tol = g.tolerance();
        for i in 0..self.dim() {
            if let Some((j, _)) = self
                .row(i)
                .find(|&(j, _)| !g.are_friends(i, j) && !g.are_adversaries(i, j))
            {
                return Err(AllocationError::OutsideSupport { row: i, col: j });
            }
            let sum = self.row_sum(i);
            if !sum.approx_eq(&g.power(i), &tol) {
                return Err(AllocationError::RowSum {
                    country: i,
                    sum: sum.to_string(),
                    power: g.power(i).to_string(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_dim(&self, g: &EnvironmentGraph<T>) -> Result<(), ModelError> {
        if self.dim() == g.len() {
            Ok(())
        } else {
            Err(ModelError::DimensionMismatch {
                expected: g.len(),
                found: self.dim(),
                found_cols: self.dim(),
            })
        }
    }
}
