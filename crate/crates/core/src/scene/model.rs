use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::defaults;
use super::error::SceneError;
use super::math::{Mat4, Vec3};
use crate::geometry::Mesh;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub ambient: Vec3,
    pub diffuse: Vec3,
    pub specular: Vec3,
    pub shininess: f64,
}

impl Default for Material {
    fn default() -> Self {
        Self {
            ambient: defaults::MATERIAL_AMBIENT,
            diffuse: defaults::MATERIAL_DIFFUSE,
            specular: defaults::MATERIAL_SPECULAR,
            shininess: defaults::MATERIAL_SHININESS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DisplayMode {
    Triangles,
    Points,
    Lines,
}

impl DisplayMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DisplayMode::Triangles => "triangles",
            DisplayMode::Points => "points",
            DisplayMode::Lines => "lines",
        }
    }
}

impl FromStr for DisplayMode {
    type Err = SceneError;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, SceneError> {
        match s.to_ascii_lowercase().as_str() {
            "triangles" => Ok(DisplayMode::Triangles),
            "points" => Ok(DisplayMode::Points),
            "lines" => Ok(DisplayMode::Lines),
            _ => Err(SceneError::UnknownDisplayMode(s.to_string())),
        }
    }
}

impl fmt::Display for DisplayMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ShadingModel {
    Flat,
    Gouraud,
    #[default]
    BlinnPhong,
}

impl ShadingModel {
    pub fn as_str(self) -> &'static str {
        match self {
            ShadingModel::Flat => "flat",
            ShadingModel::Gouraud => "gouraud",
            ShadingModel::BlinnPhong => "blinn-phong",
        }
    }
}

impl FromStr for ShadingModel {
    type Err = SceneError;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, SceneError> {
        match s.to_ascii_lowercase().as_str() {
            "flat" => Ok(ShadingModel::Flat),
            "gouraud" => Ok(ShadingModel::Gouraud),
            "blinn-phong" => Ok(ShadingModel::BlinnPhong),
            _ => Err(SceneError::UnknownShadingModel(s.to_string())),
        }
    }
}

impl fmt::Display for ShadingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SourceKind {
    Cube,
    Cone,
    Sphere,
    Cylinder,
    Grid,
    /// Loaded model, identified by the asset's file stem only.
    Obj {
        label: String,
    },
}

impl SourceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SourceKind::Cube => "cube",
            SourceKind::Cone => "cone",
            SourceKind::Sphere => "sphere",
            SourceKind::Cylinder => "cylinder",
            SourceKind::Grid => "grid",
            SourceKind::Obj { .. } => "obj",
        }
    }

    /// Label for a model loaded from `asset_name`: the last path component
    /// without its extension.
    pub fn obj_from_asset(asset_name: &str) -> SourceKind {
        let file = asset_name.rsplit(['/', '\\']).next().unwrap_or(asset_name);
        let label = match file.rfind('.') {
            Some(dot) if dot > 0 => &file[..dot],
            _ => file,
        };
        SourceKind::Obj {
            label: label.to_string(),
        }
    }
}

/// The built-in primitives (every `SourceKind` except `Obj`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimitiveKind {
    Cube,
    Cone,
    Sphere,
    Cylinder,
    Grid,
}

impl PrimitiveKind {
    pub const ALL: [PrimitiveKind; 5] = [
        PrimitiveKind::Cube,
        PrimitiveKind::Cone,
        PrimitiveKind::Sphere,
        PrimitiveKind::Cylinder,
        PrimitiveKind::Grid,
    ];

    pub fn source_kind(self) -> SourceKind {
        match self {
            PrimitiveKind::Cube => SourceKind::Cube,
            PrimitiveKind::Cone => SourceKind::Cone,
            PrimitiveKind::Sphere => SourceKind::Sphere,
            PrimitiveKind::Cylinder => SourceKind::Cylinder,
            PrimitiveKind::Grid => SourceKind::Grid,
        }
    }

    pub fn canonical_mesh(self) -> Mesh {
        use crate::geometry::*;
        match self {
            PrimitiveKind::Cube => gen_cube(),
            PrimitiveKind::Cone => gen_cone(CONE_SLICES),
            PrimitiveKind::Sphere => gen_sphere(SPHERE_SLICES, SPHERE_STACKS),
            PrimitiveKind::Cylinder => gen_cylinder(CYLINDER_SLICES),
            PrimitiveKind::Grid => gen_grid(GRID_CELLS),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneObject {
    /// Creation order, starting at 0.
    pub id: usize,
    pub mesh: Arc<Mesh>,
    pub model_matrix: Mat4,
    pub material: Material,
    pub display_mode: DisplayMode,
    pub source_kind: SourceKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LightKind {
    Point {
        position: Vec3,
    },
    Directional {
        position: Vec3,
        direction: Vec3,
    },
    Spot {
        position: Vec3,
        direction: Vec3,
        cutoff_deg: f64,
        exponent: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Light {
    pub kind: LightKind,
    pub ambient: Vec3,
    pub diffuse: Vec3,
    pub specular: Vec3,
}

impl Light {
    pub fn with_default_components(kind: LightKind) -> Self {
        Self {
            kind,
            ambient: defaults::LIGHT_AMBIENT,
            diffuse: defaults::LIGHT_DIFFUSE,
            specular: defaults::LIGHT_SPECULAR,
        }
    }

    pub fn point(position: Vec3) -> Result<Self, SceneError> {
        check_finite(&[position])?;
        Ok(Self::with_default_components(LightKind::Point { position }))
    }

    pub fn directional(position: Vec3, direction: Vec3) -> Result<Self, SceneError> {
        check_finite(&[position, direction])?;
        let direction = unit_direction(direction)?;
        Ok(Self::with_default_components(LightKind::Directional {
            position,
            direction,
        }))
    }

    pub fn spot(position: Vec3, direction: Vec3, cutoff_deg: f64, exponent: f64) -> Result<Self, SceneError> {
        check_finite(&[position, direction])?;
        if !(cutoff_deg > 0.0 && cutoff_deg <= 90.0) {
            return Err(SceneError::CutoffOutOfRange(cutoff_deg));
        }
        if !(exponent >= 0.0 && exponent.is_finite()) {
            return Err(SceneError::NegativeExponent(exponent));
        }
        let direction = unit_direction(direction)?;
        Ok(Self::with_default_components(LightKind::Spot {
            position,
            direction,
            cutoff_deg,
            exponent,
        }))
    }

    pub fn position(&self) -> Vec3 {
        match self.kind {
            LightKind::Point { position }
            | LightKind::Directional { position, .. }
            | LightKind::Spot { position, .. } => position,
        }
    }
}

fn check_finite(vs: &[Vec3]) -> Result<(), SceneError> {
    if vs.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(SceneError::NonFinite)
    }
}

fn unit_direction(v: Vec3) -> Result<Vec3, SceneError> {
    let n = v.normalize();
    if n == Vec3::ZERO || !n.is_finite() {
        Err(SceneError::ZeroDirection)
    } else {
        Ok(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    pub eye: Vec3,
    pub target: Vec3,
    pub up: Vec3,
    pub fov_y_deg: f64,
    pub near: f64,
    pub far: f64,
}

impl Default for Camera {
    fn default() -> Self {
        Self {
            eye: defaults::CAMERA_EYE,
            target: defaults::CAMERA_TARGET,
            up: defaults::CAMERA_UP,
            fov_y_deg: defaults::CAMERA_FOV_Y_DEG,
            near: defaults::CAMERA_NEAR,
            far: defaults::CAMERA_FAR,
        }
    }
}

impl Camera {
    pub fn validate(&self) -> Result<(), SceneError> {
        let finite = [self.eye, self.target, self.up].iter().all(|v| v.is_finite())
            && self.fov_y_deg.is_finite()
            && self.near.is_finite()
            && self.far.is_finite();
        if !finite {
            return Err(SceneError::InvalidCamera("non-finite parameter".into()));
        }
        if self.eye == self.target {
            return Err(SceneError::InvalidCamera("eye equals target".into()));
        }
        if !(self.near > 0.0 && self.far > self.near) {
            return Err(SceneError::InvalidCamera("requires 0 < near < far".into()));
        }
        if !(self.fov_y_deg > 0.0 && self.fov_y_deg < 180.0) {
            return Err(SceneError::InvalidCamera("field of view must be in (0, 180)".into()));
        }
        if (self.target - self.eye).cross(self.up).length() == 0.0 {
            return Err(SceneError::InvalidCamera("up is parallel to the view direction".into()));
        }
        Ok(())
    }

    /// Unit vector from the eye toward the target.
    pub fn view_direction(&self) -> Vec3 {
        (self.target - self.eye).normalize()
    }
}

/// The frozen result of evaluating a script. Fields are only reachable
/// through shared references.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    camera: Camera,
    shading: ShadingModel,
    objects: Vec<SceneObject>,
    lights: Vec<Light>,
    clear_color: Vec3,
}

impl Default for Scene {
    fn default() -> Self {
        Self {
            camera: Camera::default(),
            shading: ShadingModel::default(),
            objects: Vec::new(),
            lights: Vec::new(),
            clear_color: defaults::CLEAR_COLOR,
        }
    }
}

impl Scene {
    /// Assemble a scene from parts, checking object ids and matrices.
    pub fn from_parts(
        camera: Camera,
        shading: ShadingModel,
        objects: Vec<SceneObject>,
        lights: Vec<Light>,
        clear_color: Vec3,
    ) -> Result<Scene, SceneError> {
        for (index, object) in objects.iter().enumerate() {
            if object.id != index {
                return Err(SceneError::InvalidScene(format!(
                    "object at position {index} has id {}",
                    object.id
                )));
            }
            if !object.model_matrix.is_affine() || !object.model_matrix.is_finite() {
                return Err(SceneError::InvalidScene(format!(
                    "object {index} has a non-affine model matrix"
                )));
            }
        }
        if !clear_color.is_finite() {
            return Err(SceneError::NonFinite);
        }
        Ok(Scene {
            camera,
            shading,
            objects,
            lights,
            clear_color,
        })
    }

    pub fn camera(&self) -> &Camera {
        &self.camera
    }

    pub fn shading(&self) -> ShadingModel {
        self.shading
    }

    pub fn objects(&self) -> &[SceneObject] {
        &self.objects
    }

    pub fn lights(&self) -> &[Light] {
        &self.lights
    }

    pub fn clear_color(&self) -> Vec3 {
        self.clear_color
    }

    pub fn triangle_count(&self) -> usize {
        self.objects.iter().map(|o| o.mesh.triangle_count()).sum()
    }

    /// Lights used for shading: the declared ones, or the default headlight
    /// when the script declared none.
    pub fn effective_lights(&self) -> Vec<Light> {
        if self.lights.is_empty() {
            vec![default_headlight(&self.camera)]
        } else {
            self.lights.clone()
        }
    }
}

/// Directional light shining along the camera's view direction.
pub fn default_headlight(camera: &Camera) -> Light {
    Light::with_default_components(LightKind::Directional {
        position: camera.eye,
        direction: camera.view_direction(),
    })
}
