//! Instances with known balanced equilibria, grown by two constructions
//! that preserve balance, plus random instances for testing.
//!
//! * [`SeedBundle::extend`] raises the power of both ends of an adversary
//!   pair by `delta` and adds `delta` to the allocation across that pair.
//! * [`SeedBundle::attach`] adds a zero-power country as a new adversary of
//!   an existing one.
//!
//! Every bundle records its constructions, so it can be replayed from a
//! JSON-lines log.

use std::ops::RangeInclusive;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::balanced::{check_balanced, check_balanced_at};
use crate::error::{FormatError, GenerateError};
use crate::model::{AllocationMatrix, EnvironmentGraph};
use crate::scalar::{Exact, Scalar};

/// One step of a bundle's history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", bound = "T: Scalar")]
pub enum Construction<T> {
    /// A two-country adversary pair, both with power `power`.
    Seed {
        #[serde(
            serialize_with = "crate::io::serialize_scalar",
            deserialize_with = "crate::io::deserialize_scalar"
        )]
        power: T,
    },
    Extend {
        i: usize,
        j: usize,
        #[serde(
            serialize_with = "crate::io::serialize_scalar",
            deserialize_with = "crate::io::deserialize_scalar"
        )]
        delta: T,
    },
    AddNode {
        attach: usize,
    },
}

/// A game together with a balanced equilibrium of it.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedBundle<T> {
    graph: EnvironmentGraph<T>,
    equilibrium: AllocationMatrix<T>,
    lineage: Vec<Construction<T>>,
}

impl<T: Scalar> SeedBundle<T> {
    /// Two adversaries of equal power `power`, each spending it all on the
    /// other.
    pub fn pair(power: T) -> Result<Self, GenerateError> {
        let graph = EnvironmentGraph::new(vec![power, power], &[], &[(0, 1)])?;
        let mut equilibrium = AllocationMatrix::zeros(2);
        equilibrium.put(0, 1, power);
        equilibrium.put(1, 0, power);
        Ok(SeedBundle {
            graph,
            equilibrium,
            lineage: vec![Construction::Seed { power }],
        })
    }

    /// Starts from any balanced pair. The lineage begins empty.
    pub fn from_equilibrium(
        graph: EnvironmentGraph<T>,
        equilibrium: AllocationMatrix<T>,
    ) -> Result<Self, GenerateError> {
        if let Some(v) = check_balanced(&graph, &equilibrium).first() {
            return Err(GenerateError::Invariant(v.to_string()));
        }
        Ok(SeedBundle {
            graph,
            equilibrium,
            lineage: Vec::new(),
        })
    }

    pub fn graph(&self) -> &EnvironmentGraph<T> {
        &self.graph
    }

    pub fn equilibrium(&self) -> &AllocationMatrix<T> {
        &self.equilibrium
    }

    pub fn lineage(&self) -> &[Construction<T>] {
        &self.lineage
    }

    pub fn into_parts(self) -> (EnvironmentGraph<T>, AllocationMatrix<T>) {
        (self.graph, self.equilibrium)
    }

    /// Adds `delta > 0` to the powers of adversaries `i` and `j` and to the
    /// allocation between them.
    pub fn extend(mut self, i: usize, j: usize, delta: T) -> Result<Self, GenerateError> {
        self.graph.check_index(i)?;
        self.graph.check_index(j)?;
        if !self.graph.are_adversaries(i, j) {
            return Err(GenerateError::NotAdversaries(i, j));
        }
        if !(delta > T::zero()) {
            return Err(GenerateError::NonPositiveDelta(delta.to_string()));
        }
        self.graph.add_power(i, delta);
        self.graph.add_power(j, delta);
        self.equilibrium.add(i, j, delta);
        self.equilibrium.add(j, i, delta);
        self.lineage.push(Construction::Extend { i, j, delta });
        self.recheck(&[i, j])
    }

    /// Adds a zero-power country whose only relation is an adversary edge to
    /// `i`. Rejected when `i` has positive power and no adversaries, since
    /// `i` would then hold power it is required to spend on adversaries.
    pub fn attach(mut self, i: usize) -> Result<Self, GenerateError> {
        self.graph.check_index(i)?;
        if !self.graph.has_adversaries(i) && self.graph.power(i) > self.graph.tolerance() {
            return Err(GenerateError::AttachToPeaceful(i));
        }
        let new = self.graph.push_country(T::zero());
        self.graph.add_adversary_edge(i, new)?;
        self.equilibrium.push_zero_country();
        self.lineage.push(Construction::AddNode { attach: i });
        self.recheck(&[i, new])
    }

    pub fn apply(self, step: &Construction<T>) -> Result<Self, GenerateError> {
        match *step {
            Construction::Seed { .. } => Err(GenerateError::Parameter(
                "a seed record may only start a lineage".into(),
            )),
            Construction::Extend { i, j, delta } => self.extend(i, j, delta),
            Construction::AddNode { attach } => self.attach(attach),
        }
    }

    fn recheck(self, countries: &[usize]) -> Result<Self, GenerateError> {
        match check_balanced_at(&self.graph, &self.equilibrium, countries).first() {
            Some(v) => Err(GenerateError::Invariant(v.to_string())),
            None => Ok(self),
        }
    }

    /// The lineage as JSON lines, one record per construction.
    pub fn lineage_jsonl(&self) -> String {
        self.lineage
            .iter()
            .map(|c| serde_json::to_string(c).expect("serialisable") + "\n")
            .collect()
    }
}

/// Rebuilds a bundle from its lineage, which must start with a seed.
pub fn replay<T: Scalar>(lineage: &[Construction<T>]) -> Result<SeedBundle<T>, GenerateError> {
    let Some((Construction::Seed { power }, rest)) = lineage.split_first() else {
        return Err(GenerateError::MissingSeed);
    };
    rest.iter()
        .try_fold(SeedBundle::pair(*power)?, |b, step| b.apply(step))
}

pub fn parse_lineage<T: Scalar>(text: &str) -> Result<Vec<Construction<T>>, FormatError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(FormatError::from))
        .collect()
}

/// Grows a bundle from an equal-power pair (power in `1..=10`) by `steps`
/// random constructions, each an extension (delta in `1..=5`, on a uniform
/// adversary pair) or an attachment (to a uniform country) with equal odds.
pub fn random_balanced_instance(steps: usize, seed: u64) -> SeedBundle<Exact> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Exact::from_integer(rng.random_range(1..=10));
    let mut bundle = SeedBundle::pair(base).expect("positive power");
    let mut edges = vec![(0, 1)];
    for _ in 0..steps {
        bundle = if rng.random_bool(0.5) {
            let &(i, j) = edges.choose(&mut rng).expect("at least one pair");
            let delta = Exact::from_integer(rng.random_range(1..=5));
            bundle.extend(i, j, delta)
        } else {
            // Every country already has an adversary, so any may be chosen.
            let i = rng.random_range(0..bundle.graph.len());
            edges.push((i, bundle.graph.len()));
            bundle.attach(i)
        }
        .expect("constructions preserve balance");
    }
    bundle
}

/// Parameters for [`random_instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    /// Probability that a pair of countries is related at all.
    pub density: f64,
    pub powers: RangeInclusive<i64>,
    /// Probability that a related pair are adversaries rather than friends.
    pub adversary_ratio: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            n: 6,
            density: 0.5,
            powers: 0..=10,
            adversary_ratio: 0.5,
        }
    }
}

/// A reproducible random signed graph with integer powers.
pub fn random_instance<T: Scalar>(
    params: &RandomParams,
    seed: u64,
) -> Result<EnvironmentGraph<T>, GenerateError> {
    let probability = |name: &str, p: f64| {
        if (0.0..=1.0).contains(&p) {
            Ok(())
        } else {
            Err(GenerateError::Parameter(format!(
                "{name} must lie in [0, 1], got {p}"
            )))
        }
    };
    probability("density", params.density)?;
    probability("adversary ratio", params.adversary_ratio)?;
    if *params.powers.start() < 0 || params.powers.is_empty() {
        return Err(GenerateError::Parameter(format!(
            "power range {:?} must be nonempty and nonnegative",
            params.powers
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let powers = (0..params.n)
        .map(|_| T::from_i64(rng.random_range(params.powers.clone())))
        .collect();
    let mut friends = Vec::new();
    let mut adversaries = Vec::new();
    for i in 0..params.n {
        for j in i + 1..params.n {
            if rng.random_bool(params.density) {
                if rng.random_bool(params.adversary_ratio) {
                    adversaries.push((i, j));
                } else {
                    friends.push((i, j));
                }
            }
        }
    }
    Ok(EnvironmentGraph::new(powers, &friends, &adversaries)?)
}

/// Complete adversary graph on `n` countries with powers drawn from
/// `powers`.
pub fn random_clique<T: Scalar, R: Rng>(
    n: usize,
    powers: RangeInclusive<i64>,
    rng: &mut R,
) -> EnvironmentGraph<T> {
    let p = (0..n)
        .map(|_| T::from_i64(rng.random_range(powers.clone())))
        .collect();
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    EnvironmentGraph::new(p, &[], &edges).expect("valid clique")
}

/// Random bipartite adversary graph between camps `0..left` and
/// `left..left + right`, each cross pair present with probability
/// `density`. Countries in the same camp are friends.
pub fn random_bipartite<T: Scalar, R: Rng>(
    left: usize,
    right: usize,
    density: f64,
    powers: RangeInclusive<i64>,
    rng: &mut R,
) -> EnvironmentGraph<T> {
    let n = left + right;
    let p = (0..n)
        .map(|_| T::from_i64(rng.random_range(powers.clone())))
        .collect();
    let (friends, adversaries) = bipartite_edges(left, right, density, rng);
    EnvironmentGraph::new(p, &friends, &adversaries).expect("valid bipartite graph")
}

/// Like [`random_bipartite`], but the powers are the row sums of random
/// integer allocations (in `0..=max_flow`) on the adversary pairs, so a
/// balanced equilibrium exists by construction. Countries without
/// adversaries get a random power in `0..=max_flow`.
pub fn planted_bipartite<T: Scalar, R: Rng>(
    left: usize,
    right: usize,
    density: f64,
    max_flow: i64,
    rng: &mut R,
) -> EnvironmentGraph<T> {
    let n = left + right;
    let (friends, adversaries) = bipartite_edges(left, right, density, rng);
    let mut p = vec![0i64; n];
    for &(i, j) in &adversaries {
        let v = rng.random_range(0..=max_flow);
        p[i] += v;
        p[j] += v;
    }
    let mut has_adversary = vec![false; n];
    for &(i, j) in &adversaries {
        has_adversary[i] = true;
        has_adversary[j] = true;
    }
    for (pi, _) in p.iter_mut().zip(&has_adversary).filter(|(_, &a)| !a) {
        *pi = rng.random_range(0..=max_flow);
    }
    let p = p.into_iter().map(T::from_i64).collect();
    EnvironmentGraph::new(p, &friends, &adversaries).expect("valid bipartite graph")
}

type EdgeLists = (Vec<(usize, usize)>, Vec<(usize, usize)>);

fn bipartite_edges<R: Rng>(left: usize, right: usize, density: f64, rng: &mut R) -> EdgeLists {
    let n = left + right;
    let mut friends = Vec::new();
    let mut adversaries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (i < left) != (j < left) {
                if rng.random_bool(density) {
                    adversaries.push((i, j));
                }
            } else {
                friends.push((i, j));
            }
        }
    }
    (friends, adversaries)
}
