use alloc::string::String;

/// Errors reported by the constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ill-defined map: the lift does not carry source relations into target relations")]
    IllDefined,
    #[error("maps do not share a target")]
    MismatchedTarget,
    #[error("maps do not share a source")]
    MismatchedSource,
    #[error("mismatched endpoints: {0}")]
    MismatchedEndpoints(String),
    #[error("not an object of B: {0}")]
    NotBObject(String),
    #[error("square does not commute")]
    NonCommutingSquare,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("not a butterfly: {0}")]
    NotButterfly(String),
    #[error("sequence is not exact at position {0}")]
    ExactnessFailure(usize),
    #[error("composite of consecutive differentials is nonzero at degree {0}")]
    NonZeroComposite(i64),
    #[error("decorated complex is not compatible with the torsion pair")]
    NotCompatible,
    #[error("not a complex: {0}")]
    NotComplex(String),
    #[error("not a map of decorated complexes: {0}")]
    NotDecMap(String),
    #[error("morphism transfer failed: {0}")]
    TransferFailure(String),
    #[error("not an object of C: {0}")]
    NotCObject(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = core::result::Result<T, Error>;
