//! Phong illumination shared by every shading model.

use crate::scene::{Light, LightKind, Material, ShadingModel, Vec3};

/// How the specular term measures closeness to the mirror direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specular {
    /// Reflected light direction against the view direction.
    Phong,
    /// Normal against the halfway vector.
    Blinn,
}

impl Specular {
    /// Specular variant used for per-vertex colors (Gouraud, lines and
    /// points) under a given scene shading model.
    pub fn for_model(model: ShadingModel) -> Specular {
        match model {
            ShadingModel::BlinnPhong => Specular::Blinn,
            ShadingModel::Flat | ShadingModel::Gouraud => Specular::Phong,
        }
    }
}

/// Unit vector from `point` toward the light.
pub fn direction_to_light(light: &Light, point: Vec3) -> Vec3 {
    match light.kind {
        LightKind::Point { position } | LightKind::Spot { position, .. } => (position - point).normalize(),
        LightKind::Directional { direction, .. } => -direction,
    }
}

/// Spot cone attenuation in [0, 1]; 1 for point and directional lights.
pub fn spot_factor(light: &Light, point: Vec3) -> f64 {
    match light.kind {
        LightKind::Spot {
            position,
            direction,
            cutoff_deg,
            exponent,
        } => {
            let cos_angle = (point - position).normalize().dot(direction);
            if cos_angle >= cutoff_deg.to_radians().cos() {
                cos_angle.max(0.0).powf(exponent)
            } else {
                0.0
            }
        }
        _ => 1.0,
    }
}

/// Light-independent part of the specular term for one light, before the
/// material and light colors are applied.
pub fn specular_strength(model: Specular, normal: Vec3, to_light: Vec3, to_eye: Vec3, shininess: f64) -> f64 {
    if normal.dot(to_light) <= 0.0 {
        return 0.0;
    }
    let closeness = match model {
        Specular::Phong => (-to_light).reflect(normal).dot(to_eye),
        Specular::Blinn => normal.dot((to_light + to_eye).normalize()),
    };
    closeness.max(0.0).powf(shininess)
}

/// Color of a surface point: the sum over lights of the ambient product
/// plus the spot-weighted diffuse and specular products, clamped to [0, 1].
/// `normal` must be unit length.
pub fn illuminate(
    material: &Material,
    lights: &[Light],
    point: Vec3,
    normal: Vec3,
    eye: Vec3,
    model: Specular,
) -> Vec3 {
    let to_eye = (eye - point).normalize();
    let mut color = Vec3::ZERO;
    for light in lights {
        color += light.ambient.hadamard(material.ambient);
        let spot = spot_factor(light, point);
        if spot == 0.0 {
            continue;
        }
        let to_light = direction_to_light(light, point);
        let lambert = normal.dot(to_light).max(0.0);
        let spec = specular_strength(model, normal, to_light, to_eye, material.shininess);
        let lit =
            light.diffuse.hadamard(material.diffuse) * lambert + light.specular.hadamard(material.specular) * spec;
        color += lit * spot;
    }
    color.clamp01()
}

/// Quantize a color channel in [0, 1] to 8 bits.
pub fn quantize(c: f64) -> u8 {
    (c.clamp(0.0, 1.0) * 255.0).round() as u8
}

pub fn quantize_rgb(c: Vec3) -> [u8; 3] {
    [quantize(c.x), quantize(c.y), quantize(c.z)]
}
