use thiserror::Error;

use crate::bases::Basis;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("pole at b = {0}")]
    Pole(String),
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("malformed superpartition {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("fermionic parts must be strictly decreasing: {0:?}")]
    NotStrict(Vec<u32>),
    #[error("sector (n|m) = ({n}|{m}) is empty")]
    EmptySector { n: u32, m: u32 },
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("superpartition of length {length} needs more than {vars} variables")]
    TooFewVariables { length: usize, vars: usize },
    #[error("input is not symmetric under simultaneous exchanges")]
    NotSymmetric,
    #[error("term carries anticommuting variables where none are allowed")]
    ThetaPresent,
    #[error("even element has no invertible scalar part")]
    NotInvertible,
    #[error("even element depends on the commuting variables")]
    UnsupportedShape,
    #[error("negative exponent where a polynomial is required")]
    NegativeExponent,
    #[error("division by x{0} - x{1} left a nonzero remainder")]
    InexactDivision(usize, usize),
    #[error("variable index {index} out of range for {vars} variables")]
    IndexOutOfRange { index: usize, vars: usize },
    #[error("operands live in {0} and {1} variables")]
    VariableMismatch(usize, usize),
    #[error("polynomial is not homogeneous of bidegree ({n}|{m})")]
    NotHomogeneous { n: u32, m: u32 },
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("p_0 vanishes identically; bosonic power sums start at 1")]
    ZeroPowerSum,
    #[error("expansion has bidegree ({0}|{1}) but ({2}|{3}) was required")]
    BidegreeMismatch(u32, u32, u32, u32),
    #[error("expected an expansion in basis {expected}, found {found}")]
    WrongBasis { expected: Basis, found: Basis },
    #[error("unknown basis label {0:?}")]
    UnknownBasis(String),
    #[error("no transition is defined out of or into the Jack basis")]
    NoJackTransition,
    #[error("transition matrix is singular")]
    Singular,
    #[error("malformed expansion: {0}")]
    Malformed(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum InnerError {
    #[error("scalar product needs equal bidegrees, got ({0}|{1}) and ({2}|{3})")]
    BidegreeMismatch(u32, u32, u32, u32),
    #[error("the homomorphism parameter must be nonzero")]
    ZeroAlpha,
    #[error("physical product is only implemented for integer b >= 1")]
    NonIntegerBeta,
    #[error("kernel expansion too costly: {0}")]
    CostGuard(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("operator parameter {name} = {value} outside 1..={max}")]
    ParameterRange { name: &'static str, value: usize, max: usize },
    #[error("literal symmetrization over S_{0} is capped at N <= 6")]
    TooManyVariables(usize),
    #[error("p-space truncation exceeded: {0}")]
    Truncation(String),
    #[error("superpartition of length {length} needs more than {vars} variables")]
    TooFewVariables { length: usize, vars: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Inner(#[from] InnerError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum JackError {
    #[error("eigenvalues do not separate {lower} from {upper}")]
    Degenerate { upper: String, lower: String },
    #[error("Gram-Schmidt met a vanishing norm at {0}")]
    VanishingNorm(String),
    #[error("the two constructions disagree at {0}")]
    MethodsDisagree(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Inner(#[from] InnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}
