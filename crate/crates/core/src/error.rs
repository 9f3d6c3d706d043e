use thiserror::Error;

/// Errors raised while building or querying game objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("country index {index} out of range for {n} countries")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop on country {0}")]
    SelfLoop(usize),
    #[error("pair ({0}, {1}) listed more than once")]
    DuplicateEdge(usize, usize),
    #[error("pair ({0}, {1}) is marked both friend and adversary")]
    ConflictingSign(usize, usize),
    #[error("country {country} has negative or non-finite power {power}")]
    InvalidPower { country: usize, power: String },
    #[error("matrix is {found}x{found_cols}, expected {expected}x{expected}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        found_cols: usize,
    },
    #[error("entry ({row}, {col}) is negative or non-finite: {value}")]
    InvalidEntry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("deviation row has length {found}, expected {expected}")]
    DeviationLength { expected: usize, found: usize },
    #[error(transparent)]
    Allocation(#[from] AllocationError),
}

/// Reasons a matrix is not a power allocation matrix for a given graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllocationError {
    #[error("matrix dimension {found} does not match {expected} countries")]
    Dimension { expected: usize, found: usize },
    #[error("row {country} sums to {sum} but the country's power is {power}")]
    RowSum {
        country: usize,
        sum: String,
        power: String,
    },
    #[error("country {row} allocates to {col}, which is neither friend nor adversary")]
    OutsideSupport { row: usize, col: usize },
}

/// Errors from the edge-vector layer (incidence system, beta map and its inverse).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalancedError {
    #[error("edge vector has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("edge vector entry {index} is negative: {value}")]
    Negative { index: usize, value: String },
    #[error("country {country} receives {got} from the edge vector but has power {expected}")]
    DemandMismatch {
        country: usize,
        got: String,
        expected: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("adversary graph is not a complete graph")]
    NotClique,
    #[error("adversary graph not bipartite")]
    NotBipartite,
    #[error("bipartition is invalid: {0}")]
    InvalidBipartition(String),
    #[error(
        "subset enumeration over {size} countries exceeds the cap of {cap}; use the flow solver"
    )]
    SubsetCapExceeded { size: usize, cap: usize },
    #[error("simplex did not converge within {0} iterations")]
    IterationLimit(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Balanced(#[from] BalancedError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("({0}, {1}) is not an adversary pair")]
    NotAdversaries(usize, usize),
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(String),
    #[error("country {0} has positive power and no adversaries; attaching a zero-power node would break balance")]
    AttachToPeaceful(usize),
    #[error("invalid generator parameter: {0}")]
    Parameter(String),
    #[error("lineage must start with a seed record")]
    MissingSeed,
    #[error("construction broke the balanced invariant: {0}")]
    Invariant(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors reading the JSON file formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error("{field} entry {value} cannot be represented")]
    Unrepresentable { field: &'static str, value: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Balanced(#[from] BalancedError),
}
