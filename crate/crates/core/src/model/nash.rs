//! Randomised search for profitable unilateral deviations.
//!
//! A deviation replaces one country's row with another point of its strategy
//! simplex. The check draws deviations from a flat Dirichlet distribution
//! over the country's permitted columns and reports any the deviator strongly
//! prefers. Passing is evidence of equilibrium, not proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::error::ModelError;
use crate::model::state::{support_unchecked, threat_unchecked};
use crate::model::{strongly_prefers, AllocationMatrix, EnvironmentGraph, State};
use crate::scalar::Scalar;

/// A replacement strategy for one country.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation<T> {
    pub country: usize,
    pub new_row: Vec<T>,
}

impl<T: Scalar> Deviation<T> {
    /// The matrix obtained by substituting the new row. The result is
    /// validated against `g`.
    pub fn apply(
        &self,
        g: &EnvironmentGraph<T>,
        u: &AllocationMatrix<T>,
    ) -> Result<AllocationMatrix<T>, ModelError> {
        g.check_index(self.country)?;
        u.check_dim(g)?;
        if self.new_row.len() != g.len() {
            return Err(ModelError::DeviationLength {
                expected: g.len(),
                found: self.new_row.len(),
            });
        }
        for (j, v) in self.new_row.iter().enumerate() {
            if !(*v >= T::zero()) {
                return Err(ModelError::InvalidEntry {
                    row: self.country,
                    col: j,
                    value: v.to_string(),
                });
            }
        }
        let mut v = u.clone();
        v.replace_row(self.country, &self.new_row);
        v.validate(g)?;
        Ok(v)
    }

    /// State of the deviating country after the substitution, computed from
    /// the one row that changes.
    pub fn deviator_state(&self, g: &EnvironmentGraph<T>, u: &AllocationMatrix<T>) -> State {
        let i = self.country;
        // Own-row contributions to support: self-allocation plus attacks.
        let own_before = u.get(i, i)
            + g.adversaries(i)
                .iter()
                .fold(T::zero(), |acc, &j| acc + u.get(i, j));
        let own_after = self.new_row[i]
            + g.adversaries(i)
                .iter()
                .fold(T::zero(), |acc, &j| acc + self.new_row[j]);
        let support = support_unchecked(g, u, i) - own_before + own_after;
        State::from_balance(support, threat_unchecked(g, u, i), &g.tolerance())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NashReport {
    pub samples_per_country: usize,
    pub deviations_drawn: usize,
    /// At most one profitable deviation per country.
    pub witnesses: Vec<Deviation<f64>>,
}

impl NashReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Draws `samples` random deviations per country and reports any that the
/// deviator strongly prefers over `u`. Computation runs in `f64`.
pub fn sampled_nash_check<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
    samples: usize,
    seed: u64,
) -> Result<NashReport, ModelError> {
    u.validate(g)?;
    let gf = g.to_f64();
    let uf = u.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NashReport {
        samples_per_country: samples,
        deviations_drawn: 0,
        witnesses: Vec::new(),
    };
    let mut weights = Vec::new();
    for i in 0..gf.len() {
        let cols = gf.permitted(i);
        let power = gf.power(i);
        let mut row = vec![0.0; gf.len()];
        for _ in 0..samples {
            weights.clear();
            weights.extend(cols.iter().map(|_| rng.sample::<f64, _>(Exp1)));
            let total: f64 = weights.iter().sum();
            for (&j, &w) in cols.iter().zip(&weights) {
                row[j] = power * w / total;
            }
            report.deviations_drawn += 1;
            let deviation = Deviation {
                country: i,
                new_row: row.clone(),
            };
            if deviation.deviator_state(&gf, &uf).survives()
                && crate::model::state_of(&gf, &uf, i)? == State::Unsafe
            {
                let v = deviation.apply(&gf, &uf)?;
                if strongly_prefers(&gf, i, &uf, &v)? {
                    report.witnesses.push(deviation);
                    break;
                }
            }
        }
    }
    Ok(report)
}
