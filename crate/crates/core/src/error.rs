use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("kappa parameter counts differ: {0} vs {1}")]
    ArityMismatch(u8, u8),
    #[error("no value bound for kappa{0}")]
    UnboundParameter(usize),
    #[error("dihedral order must be at least 3, got {0}")]
    InvalidOrder(u32),
    #[error("polynomial is not divisible by the linear form of root {root}")]
    NonZeroRemainder { root: usize },
    #[error("no positive root with index {0}")]
    UnknownRoot(usize),
    #[error("two-index symmetry needs distinct axes, got ({0}, {0})")]
    DegenerateIndices(usize),
    #[error("axis index must be 1, 2 or 3, got {0}")]
    InvalidAxis(usize),
    #[error("operator `{0}` does not preserve total degree")]
    NotDegreePreserving(String),
    #[error("operators do not commute: commutator norm {0:e}")]
    NotSimultaneouslyDiagonalizable(f64),
    #[error("ladder step from eigenvalue {from} misses {expected} by residual {residual:e}")]
    LadderViolation {
        from: f64,
        expected: f64,
        residual: f64,
    },
    #[error("kappa must be fully specialized for this operation")]
    SymbolicKappa,
}
