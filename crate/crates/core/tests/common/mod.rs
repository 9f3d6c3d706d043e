//! Instance strategies and brute-force oracles shared by the integration
//! tests. The oracles deliberately avoid the library's solvers.

#![allow(dead_code)]

use num_traits::Zero;
use powergame::balanced::AdversaryIncidence;
use powergame::model::{AllocationMatrix, EnvironmentGraph};
use powergame::scalar::Exact;
use powergame::solvers::FlowNetwork;
use proptest::prelude::*;

pub fn ex(v: i64) -> Exact {
    Exact::from_integer(v)
}

pub fn exs(v: &[i64]) -> Vec<Exact> {
    v.iter().map(|&x| ex(x)).collect()
}

/// Pair labels: 0 unrelated, 1 friends, 2 adversaries.
pub fn build_graph(powers: &[i64], labels: &[u8]) -> EnvironmentGraph<Exact> {
    let n = powers.len();
    let mut friends = Vec::new();
    let mut adversaries = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            match labels[k] {
                1 => friends.push((i, j)),
                2 => adversaries.push((i, j)),
                _ => {}
            }
            k += 1;
        }
    }
    EnvironmentGraph::new(exs(powers), &friends, &adversaries).unwrap()
}

/// Signed graphs on `1..=max_n` countries with powers in `0..=max_power`.
pub fn graphs(max_n: usize, max_power: i64) -> impl Strategy<Value = EnvironmentGraph<Exact>> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0..=max_power, n),
                prop::collection::vec(0u8..3, n * (n - 1) / 2),
            )
        })
        .prop_map(|(p, labels)| build_graph(&p, &labels))
}

/// Graphs whose relations are all adversarial.
pub fn adversary_graphs(
    max_n: usize,
    max_power: i64,
) -> impl Strategy<Value = EnvironmentGraph<Exact>> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0..=max_power, n),
                prop::collection::vec(prop::bool::ANY, n * (n - 1) / 2),
            )
        })
        .prop_map(|(p, present)| {
            let labels: Vec<u8> = present.iter().map(|&b| if b { 2 } else { 0 }).collect();
            build_graph(&p, &labels)
        })
}

/// A graph with a power allocation matrix for it: each row splits the
/// country's power over its permitted columns in proportion to random
/// weights.
pub fn graph_with_allocation(
    max_n: usize,
) -> impl Strategy<Value = (EnvironmentGraph<Exact>, AllocationMatrix<Exact>)> {
    graphs(max_n, 12).prop_flat_map(|g| {
        let n = g.len();
        prop::collection::vec(prop::collection::vec(0i64..=5, n), n)
            .prop_map(move |w| (g.clone(), allocation_from_weights(&g, &w)))
    })
}

pub fn allocation_from_weights(
    g: &EnvironmentGraph<Exact>,
    weights: &[Vec<i64>],
) -> AllocationMatrix<Exact> {
    let n = g.len();
    let mut rows = vec![vec![Exact::zero(); n]; n];
    for i in 0..n {
        let cols = g.permitted(i);
        let total: i64 = cols.iter().map(|&j| weights[i][j]).sum();
        if total == 0 {
            rows[i][i] = g.power(i);
            continue;
        }
        for &j in &cols {
            rows[i][j] = g.power(i) * ex(weights[i][j]) / ex(total);
        }
    }
    AllocationMatrix::from_dense(rows).unwrap()
}

/// Support and threat straight from the definitions, walking every matrix
/// entry once.
pub fn support_threat_walk(
    g: &EnvironmentGraph<Exact>,
    u: &AllocationMatrix<Exact>,
) -> (Vec<Exact>, Vec<Exact>) {
    let n = g.len();
    let dense = u.to_dense();
    let mut support = vec![Exact::zero(); n];
    let mut threat = vec![Exact::zero(); n];
    for (j, row) in dense.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            // Entry (j, k): j spends x on k.
            if j == k || g.are_friends(j, k) {
                support[k] += x;
            } else if g.are_adversaries(j, k) {
                threat[k] += x;
                support[j] += x;
            }
        }
    }
    (support, threat)
}

/// Solves `A x = b` exactly when `A` has full column rank and the system is
/// consistent.
fn solve_full_rank(a: &[Vec<Exact>], b: &[Exact]) -> Option<Vec<Exact>> {
    let (m, k) = (a.len(), a.first().map_or(0, Vec::len));
    let mut aug: Vec<Vec<Exact>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().copied().chain([rhs]).collect())
        .collect();
    let mut row = 0;
    for col in 0..k {
        let pivot = (row..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(row, pivot);
        let p = aug[row][col];
        for x in aug[row].iter_mut() {
            *x /= p;
        }
        for r in 0..m {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col];
                let pivot_row = aug[row].clone();
                for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        row += 1;
    }
    if aug[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| aug[c][k]).collect())
}

/// Feasibility of `C v = π, v >= 0` by enumerating every column subset and
/// looking for a nonnegative basic solution. Exponential in the number of
/// adversary pairs.
pub fn basis_enumeration_feasible(g: &EnvironmentGraph<Exact>) -> bool {
    let inc = AdversaryIncidence::new(g);
    let (m, q) = (inc.rows(), inc.cols());
    let c: Vec<Vec<Exact>> = inc
        .matrix()
        .iter()
        .map(|r| r.iter().map(|&x| ex(i64::from(x))).collect())
        .collect();
    assert!(q <= 16, "oracle limited to small systems");
    for mask in 0u32..(1 << q) {
        let cols: Vec<usize> = (0..q).filter(|&k| mask & (1 << k) != 0).collect();
        if cols.len() > m {
            continue;
        }
        if cols.is_empty() {
            if inc.demand().iter().all(Exact::is_zero) {
                return true;
            }
            continue;
        }
        let a: Vec<Vec<Exact>> = c
            .iter()
            .map(|row| cols.iter().map(|&k| row[k]).collect())
            .collect();
        if let Some(x) = solve_full_rank(&a, inc.demand()) {
            if x.iter().all(|v| *v >= Exact::zero()) {
                return true;
            }
        }
    }
    false
}

/// Minimum s-t cut capacity by enumerating every node subset containing the
/// source.
pub fn min_cut(net: &FlowNetwork<Exact>) -> Exact {
    let n = net.node_count();
    let free: Vec<usize> = (0..n)
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    assert!(free.len() <= 16, "oracle limited to small networks");
    let mut best: Option<Exact> = None;
    for mask in 0u32..(1 << free.len()) {
        let mut side = vec![false; n];
        side[net.source()] = true;
        for (b, &v) in free.iter().enumerate() {
            side[v] = mask & (1 << b) != 0;
        }
        let cut = net
            .arcs()
            .iter()
            .filter(|a| side[a.from] && !side[a.to])
            .fold(Exact::zero(), |acc, a| acc + a.capacity);
        best = Some(match best {
            Some(b) if b <= cut => b,
            _ => cut,
        });
    }
    best.unwrap_or_else(Exact::zero)
}

/// All subsets of a camp, checked directly against the adversary
/// neighbourhood; true when every subset is outweighed.
pub fn hall_holds(g: &EnvironmentGraph<Exact>, camp: &[usize]) -> bool {
    (1u32..(1 << camp.len())).all(|mask| {
        let subset: Vec<usize> = (0..camp.len())
            .filter(|&b| mask & (1 << b) != 0)
            .map(|b| camp[b])
            .collect();
        let mut nbhd: Vec<usize> = subset
            .iter()
            .flat_map(|&i| g.adversaries(i).iter().copied())
            .collect();
        nbhd.sort_unstable();
        nbhd.dedup();
        let sum = |s: &[usize]| s.iter().fold(Exact::zero(), |a, &i| a + g.power(i));
        sum(&nbhd) >= sum(&subset)
    })
}
