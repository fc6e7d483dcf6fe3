use thiserror::Error;

/// Errors raised by the geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("path passes through the origin at sample {index}")]
    DegeneratePath { index: usize },
    #[error("path is undersampled: argument increment {increment:.4} rad at sample {index} is not below pi/2")]
    Undersampled { index: usize, increment: f64 },
    #[error("winding sum is {value:.6} turns, residual {residual:.3e} exceeds 0.01")]
    WindingInconsistent { value: f64, residual: f64 },
    #[error("non-finite value: {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate Moebius map (ad - bc = 0)")]
    DegenerateMap,
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("the two loci do not intersect")]
    DisjointLoci,
    #[error("quaternion is zero")]
    ZeroQuaternion,
    #[error("expected a unit quaternion, norm is {0}")]
    NotUnit(f64),
    #[error("matrix is not of the form [[z1, conj z2], [-z2, conj z1]]")]
    MalformedMatrix,
    #[error("fit is rank deficient: {0}")]
    RankDeficient(&'static str),
    #[error("curves come within {0:.3e} of each other")]
    CurvesTouching(f64),
    #[error("linking sum {value:.6} is {residual:.3} away from an integer")]
    LinkingUnresolved { value: f64, residual: f64 },
    #[error("fiber does not lie on a latitudinal torus (spread {0:.3e})")]
    NotOnTorus(f64),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
