use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group needs at least one cyclic factor")]
    EmptyGroup,
    #[error("cyclic factor order {0} is below 2")]
    DegenerateOrder(usize),
    #[error("group spec `{0}` is not of the form z<N>[xz<N>...]")]
    GroupSpec(String),
    #[error("element spec `{spec}`: {reason}")]
    ElementSpec { spec: String, reason: String },
    #[error("element has {got} residues, group has {expected} factors")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("residue {residue} out of range for factor of order {order}")]
    ResidueOutOfRange { residue: usize, order: usize },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("generating set contains the identity")]
    IdentityInGenerators,
    #[error("generating set is not closed under inversion: inverse of element {0} missing")]
    NotSymmetric(usize),
    #[error("generating set is empty")]
    EmptyGenerators,
    #[error("spectrum entry {index} has imaginary part {imag:e}")]
    ComplexEigenvalue { index: usize, imag: f64 },
    #[error("state has dimension {got}, graph has order {expected}")]
    StateDimension { expected: usize, got: usize },
    #[error("closed form requires resonance (Δ = 0) and λ = 1/√2; got Δ = {delta}, λ = {lambda}")]
    NotResonant { delta: f64, lambda: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sites must be distinct and below {n}; got ({l}, {m})")]
    InvalidPair { l: usize, m: usize, n: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("norm drifted by {drift:e} with step {dt:e}; reduce the step")]
    NormDrift { drift: f64, dt: f64 },
    #[error("full-space check supports at most {max} sites, graph has {n}")]
    TooLarge { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
