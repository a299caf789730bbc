use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("unknown display mode '{0}'")]
    UnknownDisplayMode(String),
    #[error("unknown shading model '{0}'")]
    UnknownShadingModel(String),
    #[error("no current object")]
    NoCurrentObject,
    #[error("no current entity")]
    NoCurrentEntity,
    #[error("rotation axis must be non-zero")]
    ZeroAxis,
    #[error("scale components must be non-zero")]
    ZeroScale,
    #[error("light direction must be non-zero")]
    ZeroDirection,
    #[error("spot cutoff {0} out of range (0, 90]")]
    CutoffOutOfRange(f64),
    #[error("spot exponent {0} must be >= 0")]
    NegativeExponent(f64),
    #[error("non-finite value")]
    NonFinite,
    #[error("invalid camera: {0}")]
    InvalidCamera(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("scene builder already frozen")]
    AlreadyFrozen,
}
