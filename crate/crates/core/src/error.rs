use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(
        "matrix set violates the Clifford relations (residual {residual:.3e} > {tolerance:.1e})"
    )]
    NotCliffordSet { residual: f64, tolerance: f64 },
    #[error("intertwining system has a {kernel_dim}-dimensional kernel, expected 1")]
    NoSolution { kernel_dim: usize },
    #[error("conjugated Majorana matrix leaves span{{iγ^μ}} (residual {residual:.3e})")]
    NotMajPreserving { residual: f64 },
    #[error("mass must be positive, got {0}")]
    ZeroMass(f64),
    #[error("matrix is not a complex structure commuting with the representation (residual {residual:.3e})")]
    NoComplexStructure { residual: f64 },
    #[error("commutant kernel dimension {kernel_dim} is not 1, 2 or 4 ({reason})")]
    UnexpectedDimension { kernel_dim: usize, reason: String },
    #[error("invalid label (2m, 2n) = ({m2}, {n2}): need 2m >= 2n")]
    InvalidLabel { m2: u32, n2: u32 },
    #[error("label (2m, 2n) = ({m2}, {n2}) outside the supported range 2m + 2n <= 4")]
    UnsupportedLabel { m2: u32, n2: u32 },
    #[error("grading eigenbasis is degenerate")]
    DegenerateEigenbasis,
    #[error("spherical Bessel order {0} exceeds the supported maximum 20")]
    UnsupportedOrder(u32),
    #[error("invalid angular order: l = {l}, mu = {mu}")]
    InvalidOrder { l: i64, mu: i64 },
    #[error("operation requires a periodic grid")]
    NonPeriodicGrid,
    #[error("field has no mass set")]
    MassUnset,
    #[error("massless kernel is undefined at zero momentum")]
    MasslessZeroMomentum,
    #[error("field must be resampled onto a spherical product grid first")]
    ResampleRequired,
    #[error("momentum is off shell by {0:.3e}")]
    OffShell(f64),
    #[error("field violates the helicity constraint (residual {0:.3e})")]
    HelicityViolation(f64),
    #[error("field is not a Bargmann-Wigner field (residual {0:.3e})")]
    NotBargmannWigner(f64),
    #[error("field is not an on-shell single-index field")]
    NotOnShell,
    #[error("field representation mismatch: expected {expected}, found {found}")]
    WrongRepresentation {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("malformed field file: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
