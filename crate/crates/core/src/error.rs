use thiserror::Error;

/// Errors from partitions, relations and finite algebras.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("element {element} out of range for a universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("element {element} appears in more than one block")]
    BlockOverlap { element: usize },
    #[error("element {element} is not covered by any block")]
    BlockGap { element: usize },
    #[error("cannot parse partition `{0}`")]
    Parse(String),
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("operation `{name}`: table has {found} entries, expected {expected}")]
    TableLength {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("operation `{name}`: entry {index} is {value}, outside the universe of size {size}")]
    TableEntry {
        name: String,
        index: usize,
        value: usize,
        size: usize,
    },
    #[error("operation `{name}`: arity {arity} is too large for a universe of size {size}")]
    ArityTooLarge {
        name: String,
        arity: usize,
        size: usize,
    },
    #[error("congruence enumeration exceeded the budget of {budget} congruences")]
    BudgetExceeded { budget: usize },
}

/// Errors from lattice construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("`{0}` and `{1}` have no greatest lower bound")]
    NoMeet(String, String),
    #[error("`{0}` and `{1}` have no least upper bound")]
    NoJoin(String, String),
    #[error("edge `{lower}` < `{upper}` is not a covering pair")]
    NotACover { lower: String, upper: String },
    #[error("cover relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("label count {labels} does not match element count {elements}")]
    LabelCount { labels: usize, elements: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generated sublattice exceeded the budget of {budget} elements")]
    BudgetExceeded { budget: usize },
    #[error("no generators supplied")]
    NoGenerators,
}

/// Errors from the pattern catalog.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("`{0}` takes a positive index parameter")]
    ParamRequired(String),
    #[error("`{0}` takes no parameter")]
    ParamNotAllowed(String),
    #[error("`{name}` index must be at least 1, got {param}")]
    ParamOutOfRange { name: String, param: usize },
    #[error("figure transcription line {line}: {message}")]
    Transcription { line: usize, message: String },
    #[error("figure `{name}` is not a lattice: {source}")]
    NotALattice {
        name: String,
        #[source]
        source: LatticeError,
    },
}

/// Errors from the doubling engine and the classifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("`{label}` is not a congruence of the algebra")]
    NotACongruence { label: String },
    #[error("not an {pattern}: {reason}")]
    NotAPattern { pattern: String, reason: String },
    #[error("subpower has {size} elements, above the limit of {limit}")]
    SubpowerTooLarge { size: usize, limit: usize },
    #[error("subpower exponent must be at least 1")]
    ZeroExponent,
    #[error("congruence chain did not stabilize within {steps} steps")]
    ChainBudgetExhausted { steps: usize },
    #[error("chain still growing after {steps} steps; the {family} branch cannot occur for a finite algebra")]
    InfiniteBranch { family: String, steps: usize },
    #[error("generated lattice ({found}) does not match the predicted {expected}")]
    CrossCheckMismatch { expected: String, found: String },
    #[error("invalid thread count {0}")]
    Threads(usize),
}

/// Errors from reading an algebra document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unsupported format `{found}`, expected `conlat-algebra/1`")]
    Header { line: usize, found: String },
    #[error("line {line}: universe: {message}")]
    Universe { line: usize, message: String },
    #[error("line {line}: operation `{name}`: {source}")]
    Operation {
        line: usize,
        name: String,
        #[source]
        source: AlgebraError,
    },
    #[error("line {line}: partition `{name}`: {message}")]
    Partition { line: usize, name: String, message: String },
    #[error("no partition named `{0}`")]
    MissingPartition(String),
}
