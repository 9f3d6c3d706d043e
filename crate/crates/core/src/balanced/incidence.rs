use crate::error::{BalancedError, ModelError};
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;

/// The adversary subgraph as a linear system `C v = π`.
///
/// Rows are the countries that have at least one adversary, in ascending
/// order; columns are adversary pairs `(i, j)`, `i < j`, in lexicographic
/// order. `π` holds the powers of the row countries.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryIncidence<T> {
    vertices: Vec<usize>,
    row_of: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    demand: Vec<T>,
    tolerance: T,
}

impl<T: Scalar> AdversaryIncidence<T> {
    pub fn new(g: &EnvironmentGraph<T>) -> Self {
        let vertices = g.countries_with_adversaries();
        let mut row_of = vec![None; g.len()];
        for (r, &c) in vertices.iter().enumerate() {
            row_of[c] = Some(r);
        }
        AdversaryIncidence {
            demand: vertices.iter().map(|&c| g.power(c)).collect(),
            vertices,
            row_of,
            edges: g.adversary_edges().collect(),
            tolerance: g.tolerance(),
        }
    }

    /// Countries indexing the rows.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Adversary pairs indexing the columns.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn demand(&self) -> &[T] {
        &self.demand
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    /// Number of rows, `n_a`.
    pub fn rows(&self) -> usize {
        self.vertices.len()
    }

    /// Number of columns, `q`.
    pub fn cols(&self) -> usize {
        self.edges.len()
    }

    pub fn row_of(&self, country: usize) -> Option<usize> {
        self.row_of.get(country).copied().flatten()
    }

    /// Row indices of the two endpoints of column `k`.
    pub fn endpoints(&self, k: usize) -> (usize, usize) {
        let (i, j) = self.edges[k];
        (
            self.row_of[i].expect("edge endpoint has adversaries"),
            self.row_of[j].expect("edge endpoint has adversaries"),
        )
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i.min(j), i.max(j))).ok()
    }

    /// Dense 0/1 incidence matrix, `rows() x cols()`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let mut c = vec![vec![0u8; self.cols()]; self.rows()];
        for k in 0..self.cols() {
            let (a, b) = self.endpoints(k);
            c[a][k] = 1;
            c[b][k] = 1;
        }
        c
    }

    /// `C v`: for each row country, the sum of `v` over its adversary pairs.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.rows()];
        for (k, &value) in v.iter().enumerate().take(self.cols()) {
            let (a, b) = self.endpoints(k);
            out[a] += value;
            out[b] += value;
        }
        out
    }

    /// Checks `C v = π` within tolerance, reporting the first mismatch.
    pub fn check_demand(&self, v: &[T]) -> Result<(), BalancedError> {
        if v.len() != self.cols() {
            return Err(BalancedError::Length {
                expected: self.cols(),
                found: v.len(),
            });
        }
        for (r, (got, want)) in self.apply(v).iter().zip(&self.demand).enumerate() {
            if !got.approx_eq(want, &self.tolerance) {
                return Err(BalancedError::DemandMismatch {
                    country: self.vertices[r],
                    got: got.to_string(),
                    expected: want.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// One nonnegative value per adversary pair, in the lexicographic pair order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeVector<T>(Vec<T>);

impl<T: Scalar> EdgeVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self, BalancedError> {
        if let Some((index, v)) = values.iter().enumerate().find(|(_, v)| !(**v >= T::zero())) {
            return Err(BalancedError::Negative {
                index,
                value: v.to_string(),
            });
        }
        Ok(EdgeVector(values))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Reads the allocation on each adversary pair, `v_k = u[i_k][j_k]` with
/// `i_k < j_k`.
pub fn beta<T: Scalar>(
    g: &EnvironmentGraph<T>,
    u: &AllocationMatrix<T>,
) -> Result<EdgeVector<T>, ModelError> {
    u.check_dim(g)?;
    Ok(EdgeVector(
        g.adversary_edges().map(|(i, j)| u.get(i, j)).collect(),
    ))
}

/// Expands an edge vector with `C v = π` into the balanced allocation it
/// determines: symmetric allocations on adversary pairs, full
/// self-allocation for countries without adversaries, zero elsewhere.
pub fn from_edge_vector<T: Scalar>(
    g: &EnvironmentGraph<T>,
    v: &EdgeVector<T>,
) -> Result<AllocationMatrix<T>, BalancedError> {
    AdversaryIncidence::new(g).check_demand(v.as_slice())?;
    expand_edge_vector(g, v)
}

/// The same expansion without the demand check. Rows of countries whose
/// demand is missed will not sum to their power; useful for diagnosing a
/// candidate edge vector with [`check_balanced`](crate::balanced::check_balanced).
pub fn expand_edge_vector<T: Scalar>(
    g: &EnvironmentGraph<T>,
    v: &EdgeVector<T>,
) -> Result<AllocationMatrix<T>, BalancedError> {
    let q = g.adversary_edge_count();
    if v.len() != q {
        return Err(BalancedError::Length {
            expected: q,
            found: v.len(),
        });
    }
    let mut u = AllocationMatrix::zeros(g.len());
    for ((i, j), &value) in g.adversary_edges().zip(v.as_slice()) {
        u.put(i, j, value);
        u.put(j, i, value);
    }
    for i in 0..g.len() {
        if !g.has_adversaries(i) {
            u.put(i, i, g.power(i));
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn ex(v: i64) -> Exact {
        Exact::from_integer(v)
    }

    fn exs(v: &[i64]) -> Vec<Exact> {
        v.iter().map(|&x| ex(x)).collect()
    }

    fn dense(rows: &[&[i64]]) -> AllocationMatrix<Exact> {
        AllocationMatrix::from_dense(rows.iter().map(|r| exs(r)).collect()).unwrap()
    }

    fn triangle() -> EnvironmentGraph<Exact> {
        EnvironmentGraph::new(exs(&[8, 6, 4]), &[], &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn triangle_incidence() {
        let inc = AdversaryIncidence::new(&triangle());
        assert_eq!(inc.rows(), 3);
        assert_eq!(inc.cols(), 3);
        assert_eq!(
            inc.matrix(),
            vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
        assert_eq!(inc.demand(), &exs(&[8, 6, 4])[..]);
    }

    #[test]
    fn degenerate_incidences() {
        let peaceful = EnvironmentGraph::new(exs(&[1, 2]), &[(0, 1)], &[]).unwrap();
        let inc = AdversaryIncidence::new(&peaceful);
        assert_eq!((inc.rows(), inc.cols()), (0, 0));
        let pair = EnvironmentGraph::new(exs(&[5, 5]), &[], &[(0, 1)]).unwrap();
        let inc = AdversaryIncidence::new(&pair);
        assert_eq!(inc.matrix(), vec![vec![1], vec![1]]);
        assert_eq!(inc.demand(), &exs(&[5, 5])[..]);
    }

    #[test]
    fn incidence_skips_peaceful_countries() {
        let g = EnvironmentGraph::new(exs(&[1, 9, 2, 2]), &[(0, 1)], &[(2, 3), (0, 3)]).unwrap();
        let inc = AdversaryIncidence::new(&g);
        assert_eq!(inc.vertices(), &[0, 2, 3]);
        assert_eq!(inc.edges(), &[(0, 3), (2, 3)]);
        assert_eq!(inc.row_of(1), None);
        assert_eq!(inc.endpoints(1), (1, 2));
        assert_eq!(inc.edge_index(3, 2), Some(1));
    }

    #[test]
    fn beta_reads_upper_entries() {
        let g = triangle();
        let u4 = dense(&[&[0, 5, 3], &[5, 0, 1], &[3, 1, 0]]);
        assert_eq!(beta(&g, &u4).unwrap().into_vec(), exs(&[5, 3, 1]));
        let u2 = dense(&[&[0, 4, 4], &[5, 0, 1], &[4, 0, 0]]);
        assert_eq!(beta(&g, &u2).unwrap().into_vec(), exs(&[4, 4, 1]));
        let peaceful = EnvironmentGraph::new(exs(&[3]), &[], &[]).unwrap();
        assert!(beta(&peaceful, &AllocationMatrix::diagonal(&exs(&[3])))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn expands_edge_vectors() {
        let g = triangle();
        let u = from_edge_vector(&g, &EdgeVector::new(exs(&[5, 3, 1])).unwrap()).unwrap();
        assert_eq!(u, dense(&[&[0, 5, 3], &[5, 0, 1], &[3, 1, 0]]));

        let peaceful = EnvironmentGraph::new(exs(&[3, 4]), &[(0, 1)], &[]).unwrap();
        let d = from_edge_vector(&peaceful, &EdgeVector::new(vec![]).unwrap()).unwrap();
        assert_eq!(d, AllocationMatrix::diagonal(&exs(&[3, 4])));

        let fig = EnvironmentGraph::new(exs(&[8, 6, 6, 2]), &[], &[(0, 1), (0, 2), (1, 2), (2, 3)])
            .unwrap();
        let u = from_edge_vector(&fig, &EdgeVector::new(exs(&[5, 3, 1, 2])).unwrap()).unwrap();
        assert_eq!(
            u,
            dense(&[&[0, 5, 3, 0], &[5, 0, 1, 0], &[3, 1, 0, 2], &[0, 0, 2, 0]])
        );
    }

    #[test]
    fn rejects_vectors_off_the_demand() {
        let g = triangle();
        let err = from_edge_vector(&g, &EdgeVector::new(exs(&[5, 3, 2])).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            BalancedError::DemandMismatch { country: 1, .. }
        ));
        assert!(matches!(
            from_edge_vector(&g, &EdgeVector::new(exs(&[5, 3])).unwrap()),
            Err(BalancedError::Length {
                expected: 3,
                found: 2
            })
        ));
        assert!(EdgeVector::new(exs(&[1, -1])).is_err());
    }
}
