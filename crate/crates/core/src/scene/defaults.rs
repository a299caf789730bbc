//! Every default value a script does not set explicitly. The exported web
//! template is generated from these same constants.

use super::math::Vec3;

pub const CAMERA_EYE: Vec3 = Vec3::new(3.0, 3.0, 5.0);
pub const CAMERA_TARGET: Vec3 = Vec3::ZERO;
pub const CAMERA_UP: Vec3 = Vec3::Y;
pub const CAMERA_FOV_Y_DEG: f64 = 45.0;
pub const CAMERA_NEAR: f64 = 0.1;
pub const CAMERA_FAR: f64 = 100.0;

pub const CLEAR_COLOR: Vec3 = Vec3::splat(0.15);

pub const MATERIAL_AMBIENT: Vec3 = Vec3::splat(0.1);
pub const MATERIAL_DIFFUSE: Vec3 = Vec3::splat(0.7);
pub const MATERIAL_SPECULAR: Vec3 = Vec3::splat(0.3);
pub const MATERIAL_SHININESS: f64 = 32.0;

pub const LIGHT_AMBIENT: Vec3 = Vec3::splat(0.1);
pub const LIGHT_DIFFUSE: Vec3 = Vec3::ONE;
pub const LIGHT_SPECULAR: Vec3 = Vec3::ONE;
