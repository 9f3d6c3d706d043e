//! Max-flow reduction for bipartite adversary graphs.
//!
//! The source feeds every left-camp country up to its power, every
//! adversary pair carries unbounded flow from left to right, and every
//! right-camp country drains into the sink up to its power. A flow that
//! saturates all source and sink arcs is exactly a balanced allocation.

use std::collections::VecDeque;

use serde::Serialize;

use crate::balanced::{from_edge_vector, EdgeVector};
use crate::error::SolverError;
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::Scalar;
use crate::solvers::Bipartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    /// Source to a left-camp country.
    Source(usize),
    /// Left-camp country to right-camp adversary.
    Middle(usize, usize),
    /// Right-camp country to sink.
    Sink(usize),
    /// Any arc of a hand-built network.
    Internal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowArc<T> {
    pub from: usize,
    pub to: usize,
    pub capacity: T,
    pub kind: ArcKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork<T> {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc<T>>,
    tolerance: T,
}

impl<T: Scalar> FlowNetwork<T> {
    /// A network over nodes `0..node_count` with the given arcs.
    pub fn new(node_count: usize, source: usize, sink: usize, arcs: Vec<FlowArc<T>>) -> Self {
        FlowNetwork {
            node_count,
            source,
            sink,
            arcs,
            tolerance: T::default_tolerance(),
        }
    }

    /// The reduction network of a bipartite game. Node 0 is the source,
    /// node 1 the sink, then left-camp and right-camp countries in order.
    /// Unbounded arcs get capacity `1 + total power`.
    pub fn build(g: &EnvironmentGraph<T>, b: &Bipartition) -> Result<Self, SolverError> {
        b.validate(g)?;
        let mut node_of = vec![usize::MAX; g.len()];
        for (k, &c) in b.left.iter().chain(&b.right).enumerate() {
            node_of[c] = k + 2;
        }
        let unbounded = g.total_power() + T::one();
        let mut arcs = Vec::new();
        for &l in &b.left {
            arcs.push(FlowArc {
                from: 0,
                to: node_of[l],
                capacity: g.power(l),
                kind: ArcKind::Source(l),
            });
        }
        for &l in &b.left {
            for &r in g.adversaries(l) {
                arcs.push(FlowArc {
                    from: node_of[l],
                    to: node_of[r],
                    capacity: unbounded,
                    kind: ArcKind::Middle(l, r),
                });
            }
        }
        for &r in &b.right {
            arcs.push(FlowArc {
                from: node_of[r],
                to: 1,
                capacity: g.power(r),
                kind: ArcKind::Sink(r),
            });
        }
        Ok(FlowNetwork {
            node_count: 2 + b.left.len() + b.right.len(),
            source: 0,
            sink: 1,
            arcs,
            tolerance: g.tolerance(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc<T>] {
        &self.arcs
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxFlow<T> {
    pub value: T,
    /// Flow on each arc, in the network's arc order.
    pub flows: Vec<T>,
}

/// Maximum source-to-sink flow by shortest augmenting paths
/// (Edmonds-Karp). Adjacency is scanned in arc order, so results are
/// deterministic.
pub fn max_flow<T: Scalar>(net: &FlowNetwork<T>) -> MaxFlow<T> {
    let tol = net.tolerance;
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); net.node_count];
    for (k, arc) in net.arcs.iter().enumerate() {
        adjacency[arc.from].push((k, true));
        adjacency[arc.to].push((k, false));
    }
    let mut flows = vec![T::zero(); net.arcs.len()];
    let residual = |flows: &[T], k: usize, forward: bool| {
        if forward {
            net.arcs[k].capacity - flows[k]
        } else {
            flows[k]
        }
    };
    let mut pred: Vec<Option<(usize, bool)>> = vec![None; net.node_count];
    let mut queue = VecDeque::new();
    loop {
        pred.iter_mut().for_each(|p| *p = None);
        let mut reached = vec![false; net.node_count];
        reached[net.source] = true;
        queue.clear();
        queue.push_back(net.source);
        while let Some(x) = queue.pop_front() {
            if x == net.sink {
                break;
            }
            for &(k, forward) in &adjacency[x] {
                let arc = &net.arcs[k];
                let next = if forward { arc.to } else { arc.from };
                if !reached[next] && residual(&flows, k, forward) > tol {
                    reached[next] = true;
                    pred[next] = Some((k, forward));
                    queue.push_back(next);
                }
            }
        }
        if !reached[net.sink] {
            break;
        }
        let mut bottleneck: Option<T> = None;
        let mut node = net.sink;
        while let Some((k, forward)) = pred[node] {
            let r = residual(&flows, k, forward);
            bottleneck = Some(match bottleneck {
                Some(b) if b <= r => b,
                _ => r,
            });
            node = if forward {
                net.arcs[k].from
            } else {
                net.arcs[k].to
            };
        }
        let delta = bottleneck.expect("path has at least one arc");
        let mut node = net.sink;
        while let Some((k, forward)) = pred[node] {
            if forward {
                flows[k] += delta;
                node = net.arcs[k].from;
            } else {
                flows[k] -= delta;
                node = net.arcs[k].to;
            }
        }
    }
    let value = net
        .arcs
        .iter()
        .zip(&flows)
        .fold(T::zero(), |acc, (arc, &f)| {
            if arc.from == net.source {
                acc + f
            } else if arc.to == net.source {
                acc - f
            } else {
                acc
            }
        });
    MaxFlow { value, flows }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlowOutcome<T> {
    /// Every source and sink arc saturated.
    Balanced {
        value: T,
        v: EdgeVector<T>,
        equilibrium: AllocationMatrix<T>,
    },
    /// Maximum flow leaves the listed countries' arcs unsaturated.
    Unsaturated {
        value: T,
        sources: Vec<usize>,
        sinks: Vec<usize>,
    },
}

impl<T> FlowOutcome<T> {
    pub fn equilibrium(&self) -> Option<&AllocationMatrix<T>> {
        match self {
            FlowOutcome::Balanced { equilibrium, .. } => Some(equilibrium),
            FlowOutcome::Unsaturated { .. } => None,
        }
    }
}

/// Balanced equilibrium of a bipartite game via max flow.
pub fn solve_bipartite<T: Scalar>(
    g: &EnvironmentGraph<T>,
    b: &Bipartition,
) -> Result<FlowOutcome<T>, SolverError> {
    let net = FlowNetwork::build(g, b)?;
    let MaxFlow { value, flows } = max_flow(&net);
    let tol = net.tolerance;
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    let mut pair_flow = Vec::new();
    for (arc, &f) in net.arcs.iter().zip(&flows) {
        let saturated = f.approx_eq(&arc.capacity, &tol);
        match arc.kind {
            ArcKind::Source(c) if !saturated => sources.push(c),
            ArcKind::Sink(c) if !saturated => sinks.push(c),
            ArcKind::Middle(l, r) => pair_flow.push(((l.min(r), l.max(r)), f.snap(&tol))),
            _ => {}
        }
    }
    if !sources.is_empty() || !sinks.is_empty() {
        return Ok(FlowOutcome::Unsaturated {
            value,
            sources,
            sinks,
        });
    }
    pair_flow.sort_by_key(|&(pair, _)| pair);
    let v = EdgeVector::new(pair_flow.into_iter().map(|(_, f)| f).collect())?;
    let equilibrium = from_edge_vector(g, &v)?;
    Ok(FlowOutcome::Balanced {
        value,
        v,
        equilibrium,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balanced::{beta, is_balanced};
    use crate::scalar::Exact;
    use crate::solvers::bipartition;

    fn exs(v: &[i64]) -> Vec<Exact> {
        v.iter().map(|&x| Exact::from_integer(x)).collect()
    }

    fn graph(p: &[i64], adv: &[(usize, usize)]) -> EnvironmentGraph<Exact> {
        EnvironmentGraph::new(exs(p), &[], adv).unwrap()
    }

    #[test]
    fn star_network_layout() {
        let star = graph(&[2, 3, 5], &[(0, 2), (1, 2)]);
        let net = FlowNetwork::build(&star, &bipartition(&star).unwrap()).unwrap();
        let ex = Exact::from_integer;
        let summary: Vec<_> = net.arcs().iter().map(|a| (a.kind, a.capacity)).collect();
        assert_eq!(
            summary,
            vec![
                (ArcKind::Source(0), ex(2)),
                (ArcKind::Source(1), ex(3)),
                (ArcKind::Middle(0, 2), ex(11)),
                (ArcKind::Middle(1, 2), ex(11)),
                (ArcKind::Sink(2), ex(5)),
            ]
        );
        assert_eq!(max_flow(&net).value, ex(5));
    }

    #[test]
    fn biclique_network_has_eight_arcs() {
        let k22 = graph(&[3, 2, 4, 1], &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let net = FlowNetwork::build(&k22, &bipartition(&k22).unwrap()).unwrap();
        let middle = net
            .arcs()
            .iter()
            .filter(|a| matches!(a.kind, ArcKind::Middle(..)))
            .count();
        assert_eq!((net.arcs().len(), middle), (8, 4));
    }

    #[test]
    fn empty_network() {
        let g = graph(&[1], &[]);
        let net = FlowNetwork::build(&g, &bipartition(&g).unwrap()).unwrap();
        assert_eq!(net.node_count(), 2);
        assert!(net.arcs().is_empty());
        assert_eq!(max_flow(&net).value, Exact::from_integer(0));
    }

    #[test]
    fn star_is_balanced_by_flow() {
        let star = graph(&[2, 3, 5], &[(0, 2), (1, 2)]);
        let out = solve_bipartite(&star, &bipartition(&star).unwrap()).unwrap();
        let u = out.equilibrium().unwrap();
        assert!(is_balanced(&star, u));
        assert_eq!(beta(&star, u).unwrap().into_vec(), exs(&[2, 3]));
        assert_eq!(u.get(2, 0), Exact::from_integer(2));
    }

    #[test]
    fn path_leaves_a_source_unsaturated() {
        let path = graph(&[2, 3, 2], &[(0, 1), (1, 2)]);
        match solve_bipartite(&path, &bipartition(&path).unwrap()).unwrap() {
            FlowOutcome::Unsaturated {
                value,
                sources,
                sinks,
            } => {
                assert_eq!(value, Exact::from_integer(3));
                assert_eq!(sources, vec![2]);
                assert!(sinks.is_empty());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn biclique_solution_meets_demand() {
        let k22 = graph(&[3, 2, 4, 1], &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let out = solve_bipartite(&k22, &bipartition(&k22).unwrap()).unwrap();
        let u = out.equilibrium().unwrap();
        assert!(is_balanced(&k22, u));
        assert!(beta(&k22, u)
            .unwrap()
            .as_slice()
            .iter()
            .all(|x| x.is_integer()));
    }

    #[test]
    fn handles_reverse_residual_paths() {
        // Classic diamond where the first BFS path must later be undone.
        let ex = Exact::from_integer;
        let arc = |from, to, c| FlowArc {
            from,
            to,
            capacity: ex(c),
            kind: ArcKind::Internal,
        };
        let net = FlowNetwork::new(
            4,
            0,
            3,
            vec![
                arc(0, 1, 1),
                arc(0, 2, 1),
                arc(1, 2, 1),
                arc(1, 3, 1),
                arc(2, 3, 1),
            ],
        );
        assert_eq!(max_flow(&net).value, ex(2));
    }
}
