use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero representative")]
    ZeroRepresentative,
    #[error("line undetermined")]
    LineUndetermined,
    #[error("no pseudo-projective limit at given budget (tail spread {spread:e})")]
    NoPseudoLimit { spread: f64 },
    #[error("sequence too short: need at least {needed} terms, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
    #[error("not on Veronese curve (residual {residual:e})")]
    NotOnVeronese { residual: f64 },
    #[error("the identity has no well-defined fixed points")]
    IdentityElement,
    #[error("ping-pong violated: {0}")]
    PingPongViolated(String),
    #[error("family leaves Schottky locus at t = {t}")]
    LeavesSchottkyLocus { t: f64 },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("non-invertible generator (index {0})")]
    NonInvertible(usize),
    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("renormalize: psi(infinity) on the null set")]
    PsiInfinityOnNullSet,
    #[error("projection undefined on bilinear null locus")]
    ProjectionUndefined,
    #[error("base point is not in the ball (form value {0:e})")]
    NotInterior(f64),
    #[error("no loxodromic word up to length {0}")]
    NoLoxodromicWord(usize),
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("seed lies on a limit line (incidence {0:e})")]
    SeedOnLimitLine(f64),
    #[error("empty line family")]
    EmptyFamily,
    #[error("empty sample list")]
    EmptySamples,
    #[error("all lines skipped (no line with real coefficients)")]
    AllLinesSkipped,
    #[error("no orbit point approaches the ball boundary at word length {0}")]
    NoAccumulation(usize),
    #[error("form is not invariant under the generators (residual {0:e})")]
    FormNotInvariant(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
