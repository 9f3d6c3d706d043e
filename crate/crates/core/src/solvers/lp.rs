//! Phase-one simplex for the feasibility of `C v = π, v >= 0`.
//!
//! One artificial variable per row gives the starting basis (π is
//! nonnegative, so the all-artificial basis is feasible). Minimising the sum
//! of artificials reaches zero exactly when the system is feasible. Bland's
//! rule picks entering and leaving variables, which rules out cycling.

use crate::balanced::{AdversaryIncidence, EdgeVector};
use crate::error::SolverError;
use crate::scalar::Scalar;

/// Result of the phase-one optimisation.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOne<T> {
    /// A point of `C v = π, v >= 0` when the optimum has zero residual.
    pub solution: Option<EdgeVector<T>>,
    /// Optimal sum of artificial variables.
    pub residual: T,
    pub iterations: usize,
}

/// Pivot budget for an `n_a x q` system.
pub fn iteration_cap(rows: usize, cols: usize) -> usize {
    10 * (rows + cols).pow(2)
}

pub fn phase_one<T: Scalar>(inc: &AdversaryIncidence<T>) -> Result<PhaseOne<T>, SolverError> {
    let (m, q) = (inc.rows(), inc.cols());
    let width = q + m;
    let tol = inc.tolerance();
    let one = T::one();

    let mut tab = vec![vec![T::zero(); width + 1]; m];
    for k in 0..q {
        let (a, b) = inc.endpoints(k);
        tab[a][k] = one;
        tab[b][k] = one;
    }
    for (r, &d) in inc.demand().iter().enumerate() {
        tab[r][q + r] = one;
        tab[r][width] = d;
    }
    let mut basis: Vec<usize> = (q..width).collect();

    // Reduced costs of the phase-one objective; the last entry is minus the
    // current objective value.
    let mut cost = vec![T::zero(); width + 1];
    for row in &tab {
        for (c, &x) in cost.iter_mut().zip(row.iter()).take(q) {
            *c -= x;
        }
        cost[width] -= row[width];
    }

    let cap = iteration_cap(m, q);
    let mut iterations = 0;
    while let Some(entering) = (0..width).find(|&j| cost[j] < -tol) {
        if iterations >= cap {
            return Err(SolverError::IterationLimit(cap));
        }
        let mut leaving: Option<(usize, T)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[entering] <= tol {
                continue;
            }
            let ratio = row[width] / row[entering];
            leaving = match leaving {
                None => Some((r, ratio)),
                Some((best, best_ratio)) => match ratio.cmp_tol(&best_ratio, &tol) {
                    std::cmp::Ordering::Less => Some((r, ratio)),
                    std::cmp::Ordering::Equal if basis[r] < basis[best] => Some((r, ratio)),
                    _ => Some((best, best_ratio)),
                },
            };
        }
        let Some((pivot_row, _)) = leaving else {
            // The phase-one objective is bounded below by zero.
            return Err(SolverError::Numerical(
                "unbounded ray in phase-one simplex".into(),
            ));
        };
        pivot(&mut tab, &mut cost, pivot_row, entering);
        basis[pivot_row] = entering;
        iterations += 1;
    }

    let residual = (-cost[width]).snap(&tol);
    if residual > tol {
        return Ok(PhaseOne {
            solution: None,
            residual,
            iterations,
        });
    }
    let mut v = vec![T::zero(); q];
    for (r, &var) in basis.iter().enumerate() {
        if var < q {
            let x = tab[r][width].snap(&tol);
            if x < T::zero() {
                return Err(SolverError::Numerical(format!(
                    "basic variable {var} is negative: {x}"
                )));
            }
            v[var] = x;
        }
    }
    inc.check_demand(&v)
        .map_err(|e| SolverError::Numerical(format!("phase-one point misses demand: {e}")))?;
    Ok(PhaseOne {
        solution: Some(EdgeVector::new(v)?),
        residual,
        iterations,
    })
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], cost: &mut [T], r: usize, e: usize) {
    let p = tab[r][e];
    for x in tab[r].iter_mut() {
        *x = *x / p;
    }
    let pivot_row = tab[r].clone();
    let eliminate = |row: &mut [T]| {
        let factor = row[e];
        if factor.is_zero() {
            return;
        }
        for (x, &y) in row.iter_mut().zip(&pivot_row) {
            *x -= factor * y;
        }
        row[e] = T::zero();
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(cost);
}

/// Some nonnegative `v` with `C v = π`, or `None` when the system is
/// infeasible.
pub fn lp_feasibility<T: Scalar>(
    inc: &AdversaryIncidence<T>,
) -> Result<Option<EdgeVector<T>>, SolverError> {
    Ok(phase_one(inc)?.solution)
}
