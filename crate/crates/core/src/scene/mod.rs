//! Scene document, math types and the builder driven by the graphics
//! builtins.

mod builder;
pub mod defaults;
mod error;
mod math;
mod model;

pub use builder::{Component, Cursor, SceneBuilder, Transform};
pub use error::SceneError;
pub use math::{Mat3, Mat4, Vec3};
pub use model::{
    default_headlight, Camera, DisplayMode, Light, LightKind, Material, PrimitiveKind, Scene, SceneObject,
    ShadingModel, SourceKind,
};
