use thiserror::Error;

use crate::geometry::GeometryError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("M-operator divisibility violated")]
    MDivisibility,
    #[error("weight collision: {0}")]
    WeightCollision(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("out of implemented range: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
