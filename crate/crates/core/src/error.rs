use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rotation by a half turn has no canonical elementary path")]
    HalfTurn,
    #[error("splice endpoint mismatch: segment ends {gap:e} away from beta")]
    SpliceMismatch { gap: f64 },
    #[error("scene leaves the grid box at t = {t}")]
    SceneOutOfBounds { t: f64 },
    #[error("masks live on different grids")]
    GridMismatch,
    #[error("primitive {index} is not parallel to the slide direction (off by {angle:e} rad)")]
    NotParallel { index: usize, angle: f64 },
    #[error("primitive {index} is not an arc centered at the rotation center (off by {offset:e})")]
    NotConcentric { index: usize, offset: f64 },
    #[error("{slats} slats of width {width} do not fit in a parent of width {parent_width}")]
    SlatsDontFit { slats: usize, width: f64, parent_width: f64 },
    #[error("point lies on the curve (distance {distance:e})")]
    PointOnCurve { distance: f64 },
    #[error("inverse trajectory of the probe leaves the disc at t = {t}")]
    TrajectoryEscape { t: f64 },
    #[error("time {0} outside [0, 1]")]
    TimeOutOfRange(f64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
