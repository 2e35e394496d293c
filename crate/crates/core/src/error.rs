use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid Pauli letter {ch:?} at position {position}")]
    BadLetter { ch: char, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("row {row} has {found} qubits, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("rows are linearly dependent over GF(2)")]
    DependentRows,
    #[error("group of 2^{generators} elements exceeds the enumeration cap of {cap}")]
    CapExceeded { generators: usize, cap: u64 },
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("CNOT control and target are both {0}")]
    SelfLoop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected `n=<int> k=<int> c=<int>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected a line starting with `{expected}`")]
    MissingSection { line: usize, expected: &'static str },
    #[error("parameters violate 0 <= k, 0 <= c <= n - k (n={n}, k={k}, c={c})")]
    Parameters { n: usize, k: usize, c: usize },
    #[error("{section}: expected {expected} rows, found {found}")]
    RowCount {
        section: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{section} row {row}: length {found}, expected {expected}")]
    RowLength {
        section: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{section} row {row}: {source}")]
    Pauli {
        section: &'static str,
        row: usize,
        source: PauliError,
    },
    #[error("unexpected trailing content on line {line}")]
    Trailing { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("distance is undefined for a code with k = 0")]
    DistanceUndefined,
    #[error("pair index {index} out of range for k = {k}")]
    PairIndex { index: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumeratorError {
    #[error("Krawtchouk arguments out of range: w={w}, w'={wp}, n={n}")]
    KrawtchoukRange { w: usize, wp: usize, n: usize },
    #[error("enumerator has {found} coefficients, expected n+1 = {expected}")]
    Length { expected: usize, found: usize },
    #[error("coefficient A_0 must be 1")]
    IdentityCoefficient,
    #[error("coefficient {w} is negative")]
    Negative { w: usize },
    #[error("coefficients sum to {sum}, expected 2^{log2_order}")]
    Order { sum: String, log2_order: u32 },
    #[error("transformed coefficient {w} is not an integer")]
    NonIntegral { w: usize },
    #[error("transformed coefficient {w} is negative")]
    NegativeOutput { w: usize },
    #[error("log2 order {log2_order} exceeds 2n = {max}")]
    OrderTooLarge { log2_order: u32, max: u32 },
    #[error("enumerators have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("no weight w > 0 separates the two enumerators")]
    NoDistance,
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid parameters n={n}, k={k}, c={c}")]
    Parameters { n: usize, k: usize, c: usize },
    #[error("bound requires k >= 1")]
    ZeroK,
    #[error("d must be at least 1")]
    ZeroDistance,
    #[error("LP bound requires c = n - k or 0 < c < n - k (n={n}, k={k}, c={c})")]
    UnsupportedEntanglement { n: usize, k: usize, c: usize },
    #[error("feasibility went from infeasible at d={infeasible} to feasible at d={feasible}")]
    Monotonicity { infeasible: usize, feasible: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family} codes need {requirement}, got n={n}")]
    Length {
        family: &'static str,
        requirement: &'static str,
        n: usize,
    },
    #[error("nonexistence search needs an even n, got {0}")]
    OddLength(usize),
    #[error("n={n} exceeds the search cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("depolarizing probability {0} outside [0, 3/4)")]
    Probability(f64),
    #[error("need 1 <= k <= n, got n={n}, k={k}")]
    Parameters { n: usize, k: usize },
    #[error("simulation needs a maximal-entanglement code (c = n - k)")]
    NotMaximal,
    #[error("code with n={n} is too large for a coset-leader table (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("need at least one trial")]
    NoTrials,
    #[error(transparent)]
    Code(#[from] CodeError),
}
