//! Constructive solver for complete adversary graphs.
//!
//! On a clique the per-country power condition is also sufficient. The
//! constructor repeatedly pairs the strongest remaining country with the
//! weakest, lets the weakest spend everything against the strongest, and
//! drops it; the last three countries are settled by the closed form.

use std::cmp::Ordering;

use crate::balanced::{from_edge_vector, necessary_condition, AdversaryIncidence, EdgeVector};
use crate::error::SolverError;
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;

/// True when the countries with adversaries are pairwise adversaries. The
/// adversary-free graph counts as complete.
pub fn is_complete_adversary_graph<T: Scalar>(g: &EnvironmentGraph<T>) -> bool {
    let na = g.countries_with_adversaries().len();
    g.adversary_edge_count() == na * na.saturating_sub(1) / 2
}

/// The unique balanced allocation of a three-country adversary clique, as
/// the edge vector over pairs `(1,2), (1,3), (2,3)`. `None` when one power
/// exceeds the other two combined.
pub fn three_player_closed_form<T: Scalar>(p1: T, p2: T, p3: T) -> Option<EdgeVector<T>> {
    closed_form([p1, p2, p3], &T::zero()).map(|v| EdgeVector::new(v.to_vec()).expect("nonnegative"))
}

fn closed_form<T: Scalar>([p1, p2, p3]: [T; 3], tol: &T) -> Option<[T; 3]> {
    let two = T::one() + T::one();
    let v = [
        (p1 + p2 - p3) / two,
        (p1 + p3 - p2) / two,
        (p2 + p3 - p1) / two,
    ];
    if v.iter()
        .any(|x| x.cmp_tol(&T::zero(), tol) == Ordering::Less)
    {
        return None;
    }
    Some(v.map(|x| if x < T::zero() { T::zero() } else { x }))
}

/// Edge vector built by peeling; `None` if the power condition fails.
fn peel<T: Scalar>(g: &EnvironmentGraph<T>, inc: &AdversaryIncidence<T>) -> Option<Vec<T>> {
    let tol = g.tolerance();
    let mut values = vec![T::zero(); inc.cols()];
    let mut active: Vec<(usize, T)> = inc.vertices().iter().map(|&c| (c, g.power(c))).collect();
    match active.len() {
        0 => return Some(values),
        2 => {
            let ((a, pa), (b, pb)) = (active[0], active[1]);
            if !pa.approx_eq(&pb, &tol) {
                return None;
            }
            values[inc.edge_index(a, b)?] = pa;
            return Some(values);
        }
        _ => {}
    }
    while active.len() > 3 {
        // Nonincreasing power, ties broken by ascending country index.
        active.sort_by(|x, y| {
            y.1.partial_cmp(&x.1)
                .unwrap_or(Ordering::Equal)
                .then(x.0.cmp(&y.0))
        });
        let (weak, weak_power) = active.pop()?;
        let strong = &mut active[0];
        values[inc.edge_index(strong.0, weak)?] = weak_power;
        strong.1 = (strong.1 - weak_power).snap(&tol);
        if strong.1 < T::zero() {
            return None;
        }
    }
    active.sort_by_key(|&(c, _)| c);
    let [(a, pa), (b, pb), (c, pc)] = [active[0], active[1], active[2]];
    let [ab, ac, bc] = closed_form([pa, pb, pc], &tol)?;
    values[inc.edge_index(a, b)?] = ab;
    values[inc.edge_index(a, c)?] = ac;
    values[inc.edge_index(b, c)?] = bc;
    Some(values)
}

/// Balanced equilibrium of a game whose adversary graph is complete, or
/// `None` when the power condition fails.
pub fn solve_complete<T: Scalar>(
    g: &EnvironmentGraph<T>,
) -> Result<Option<AllocationMatrix<T>>, SolverError> {
    if !is_complete_adversary_graph(g) {
        return Err(SolverError::NotClique);
    }
    if !necessary_condition(g).holds() {
        return Ok(None);
    }
    let inc = AdversaryIncidence::new(g);
    let Some(values) = peel(g, &inc) else {
        return Ok(None);
    };
    let v = EdgeVector::new(values)?;
    Ok(Some(from_edge_vector(g, &v)?))
}
