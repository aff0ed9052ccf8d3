use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid register: {0}")]
    InvalidRegister(String),
    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystem(String),
    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },
    #[error("not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("basis vectors are not orthonormal (max |V^dagger V - I| = {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("random probability draw degenerated to zero mass after {retries} retries")]
    DegenerateDraw { retries: usize },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("{bound} needs {expected} measurements, got {found}")]
    WrongArity { bound: &'static str, expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown Shannon-bound provider {0:?}")]
    UnknownProvider(String),
}
