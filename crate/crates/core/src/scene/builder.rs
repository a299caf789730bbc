use std::collections::HashMap;
use std::sync::Arc;

use super::error::SceneError;
use super::math::{Mat4, Vec3};
use super::model::*;
use crate::geometry::Mesh;

/// What transforms and component setters act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cursor {
    Object(usize),
    Light(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Translate(Vec3),
    Rotate { angle_deg: f64, axis: Vec3 },
    Scale(Vec3),
}

impl Transform {
    pub fn matrix(&self) -> Result<Mat4, SceneError> {
        match *self {
            Transform::Translate(v) => {
                finite(v)?;
                Ok(Mat4::translation(v))
            }
            Transform::Rotate { angle_deg, axis } => {
                finite(axis)?;
                if !angle_deg.is_finite() {
                    return Err(SceneError::NonFinite);
                }
                if axis.length() == 0.0 {
                    return Err(SceneError::ZeroAxis);
                }
                Ok(Mat4::rotation(angle_deg, axis))
            }
            Transform::Scale(v) => {
                finite(v)?;
                if v.x == 0.0 || v.y == 0.0 || v.z == 0.0 {
                    return Err(SceneError::ZeroScale);
                }
                Ok(Mat4::scaling(v))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Ambient,
    Diffuse,
    Specular,
}

fn finite(v: Vec3) -> Result<(), SceneError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(SceneError::NonFinite)
    }
}

/// Mutable scene under construction. The interpreter's graphics builtins
/// are its only writers.
#[derive(Debug, Default)]
pub struct SceneBuilder {
    scene: Scene,
    objects: Vec<SceneObject>,
    lights: Vec<Light>,
    shading: ShadingModel,
    cursor: Option<Cursor>,
    frozen: bool,
    primitive_meshes: HashMap<PrimitiveKind, Arc<Mesh>>,
}

impl SceneBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cursor(&self) -> Option<Cursor> {
        self.cursor
    }

    pub fn objects(&self) -> &[SceneObject] {
        &self.objects
    }

    pub fn lights(&self) -> &[Light] {
        &self.lights
    }

    fn live(&self) -> Result<(), SceneError> {
        if self.frozen {
            Err(SceneError::AlreadyFrozen)
        } else {
            Ok(())
        }
    }

    /// Shared canonical mesh for a primitive, generated once per builder.
    pub fn primitive_mesh(&mut self, kind: PrimitiveKind) -> Arc<Mesh> {
        self.primitive_meshes
            .entry(kind)
            .or_insert_with(|| Arc::new(kind.canonical_mesh()))
            .clone()
    }

    pub fn draw_primitive(&mut self, kind: PrimitiveKind, display_mode: &str) -> Result<usize, SceneError> {
        self.live()?;
        let mode: DisplayMode = display_mode.parse()?;
        let mesh = self.primitive_mesh(kind);
        Ok(self.push_object(mesh, mode, kind.source_kind()))
    }

    /// Append an object backed by an already-loaded mesh (OBJ models).
    pub fn draw_mesh(
        &mut self,
        display_mode: &str,
        mesh: Arc<Mesh>,
        source_kind: SourceKind,
    ) -> Result<usize, SceneError> {
        self.live()?;
        let mode: DisplayMode = display_mode.parse()?;
        Ok(self.push_object(mesh, mode, source_kind))
    }

    fn push_object(&mut self, mesh: Arc<Mesh>, display_mode: DisplayMode, source_kind: SourceKind) -> usize {
        let id = self.objects.len();
        self.objects.push(SceneObject {
            id,
            mesh,
            model_matrix: Mat4::IDENTITY,
            material: Material::default(),
            display_mode,
            source_kind,
        });
        self.cursor = Some(Cursor::Object(id));
        id
    }

    /// Right-multiply the current object's model matrix, so the new
    /// transform applies in the object's local frame.
    pub fn transform_current(&mut self, transform: Transform) -> Result<(), SceneError> {
        self.live()?;
        let Some(Cursor::Object(id)) = self.cursor else {
            return Err(SceneError::NoCurrentObject);
        };
        let m = transform.matrix()?;
        let object = &mut self.objects[id];
        object.model_matrix = object.model_matrix.mul(&m);
        Ok(())
    }

    pub fn add_light(&mut self, light: Light) -> Result<usize, SceneError> {
        self.live()?;
        self.lights.push(light);
        let index = self.lights.len() - 1;
        self.cursor = Some(Cursor::Light(index));
        Ok(index)
    }

    pub fn change_lighting(&mut self, model: &str) -> Result<(), SceneError> {
        self.live()?;
        self.shading = model.parse()?;
        Ok(())
    }

    /// Set a color component of the current object's material or of the
    /// current light. Components are clamped to [0, 1].
    pub fn set_component(&mut self, which: Component, rgb: Vec3) -> Result<(), SceneError> {
        self.live()?;
        finite(rgb)?;
        let rgb = rgb.clamp01();
        let slot = match self.cursor {
            None => return Err(SceneError::NoCurrentEntity),
            Some(Cursor::Object(id)) => {
                let m = &mut self.objects[id].material;
                match which {
                    Component::Ambient => &mut m.ambient,
                    Component::Diffuse => &mut m.diffuse,
                    Component::Specular => &mut m.specular,
                }
            }
            Some(Cursor::Light(index)) => {
                let l = &mut self.lights[index];
                match which {
                    Component::Ambient => &mut l.ambient,
                    Component::Diffuse => &mut l.diffuse,
                    Component::Specular => &mut l.specular,
                }
            }
        };
        *slot = rgb;
        Ok(())
    }

    /// Produce the immutable scene. A builder can be frozen once.
    pub fn freeze(&mut self) -> Result<Scene, SceneError> {
        self.live()?;
        self.frozen = true;
        self.cursor = None;
        let base = std::mem::take(&mut self.scene);
        Scene::from_parts(
            *base.camera(),
            self.shading,
            std::mem::take(&mut self.objects),
            std::mem::take(&mut self.lights),
            base.clear_color(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draw_cube_appends_and_sets_cursor() {
        let mut b = SceneBuilder::new();
        assert_eq!(b.cursor(), None);
        assert_eq!(b.draw_primitive(PrimitiveKind::Cube, "triangles"), Ok(0));
        assert_eq!(b.cursor(), Some(Cursor::Object(0)));
        assert_eq!(b.objects()[0].mesh.triangle_count(), 12);
        assert_eq!(b.objects()[0].model_matrix, Mat4::IDENTITY);
        assert_eq!(b.objects()[0].material, Material::default());
    }

    #[test]
    fn display_mode_is_case_insensitive_and_validated() {
        let mut b = SceneBuilder::new();
        b.draw_primitive(PrimitiveKind::Sphere, "LINES").unwrap();
        assert_eq!(b.objects()[0].display_mode, DisplayMode::Lines);
        assert_eq!(
            b.draw_primitive(PrimitiveKind::Cone, "solid"),
            Err(SceneError::UnknownDisplayMode("solid".into()))
        );
        assert_eq!(b.objects().len(), 1);
    }

    #[test]
    fn primitive_meshes_are_shared() {
        let mut b = SceneBuilder::new();
        b.draw_primitive(PrimitiveKind::Sphere, "triangles").unwrap();
        b.draw_primitive(PrimitiveKind::Sphere, "points").unwrap();
        assert!(Arc::ptr_eq(&b.objects()[0].mesh, &b.objects()[1].mesh));
    }

    #[test]
    fn transforms_need_an_object() {
        let mut b = SceneBuilder::new();
        let t = Transform::Translate(Vec3::X);
        assert_eq!(b.transform_current(t), Err(SceneError::NoCurrentObject));
        b.add_light(Light::point(Vec3::Y).unwrap()).unwrap();
        assert_eq!(b.transform_current(t), Err(SceneError::NoCurrentObject));
        b.draw_primitive(PrimitiveKind::Cube, "triangles").unwrap();
        b.transform_current(t).unwrap();
        b.transform_current(t).unwrap();
        assert_eq!(b.objects()[0].model_matrix.column(3), [2.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn degenerate_transforms_rejected() {
        let mut b = SceneBuilder::new();
        b.draw_primitive(PrimitiveKind::Cube, "triangles").unwrap();
        let rot = Transform::Rotate {
            angle_deg: 30.0,
            axis: Vec3::ZERO,
        };
        assert_eq!(b.transform_current(rot), Err(SceneError::ZeroAxis));
        let scale = Transform::Scale(Vec3::new(1.0, 0.0, 1.0));
        assert_eq!(b.transform_current(scale), Err(SceneError::ZeroScale));
        assert_eq!(b.objects()[0].model_matrix, Mat4::IDENTITY);
    }

    #[test]
    fn components_target_cursor_and_clamp() {
        let mut b = SceneBuilder::new();
        assert_eq!(
            b.set_component(Component::Ambient, Vec3::splat(0.2)),
            Err(SceneError::NoCurrentEntity)
        );
        b.draw_primitive(PrimitiveKind::Cube, "triangles").unwrap();
        b.set_component(Component::Diffuse, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        b.add_light(Light::point(Vec3::new(0.0, 5.0, 0.0)).unwrap()).unwrap();
        b.set_component(Component::Specular, Vec3::new(0.0, 0.0, 1.0)).unwrap();
        b.set_component(Component::Ambient, Vec3::new(-1.0, 0.5, 7.0)).unwrap();
        assert_eq!(b.objects()[0].material.diffuse, Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(
            b.objects()[0].material.specular,
            crate::scene::defaults::MATERIAL_SPECULAR
        );
        assert_eq!(b.lights()[0].specular, Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(b.lights()[0].ambient, Vec3::new(0.0, 0.5, 1.0));
    }

    #[test]
    fn lighting_model_last_call_wins() {
        let mut b = SceneBuilder::new();
        b.change_lighting("gouraud").unwrap();
        b.change_lighting("Blinn-Phong").unwrap();
        assert_eq!(
            b.change_lighting("phong"),
            Err(SceneError::UnknownShadingModel("phong".into()))
        );
        assert_eq!(b.freeze().unwrap().shading(), ShadingModel::BlinnPhong);
    }

    #[test]
    fn freeze_once() {
        let mut b = SceneBuilder::new();
        let scene = b.freeze().unwrap();
        assert!(scene.objects().is_empty() && scene.lights().is_empty());
        assert_eq!(scene.shading(), ShadingModel::BlinnPhong);
        assert_eq!(b.freeze(), Err(SceneError::AlreadyFrozen));
        assert_eq!(
            b.draw_primitive(PrimitiveKind::Cube, "triangles"),
            Err(SceneError::AlreadyFrozen)
        );
    }

    #[test]
    fn light_validation() {
        assert_eq!(
            Light::spot(Vec3::new(0.0, 5.0, 0.0), -Vec3::Y, 95.0, 2.0),
            Err(SceneError::CutoffOutOfRange(95.0))
        );
        assert!(Light::spot(Vec3::ZERO, -Vec3::Y, 0.0, 2.0).is_err());
        assert!(Light::spot(Vec3::ZERO, -Vec3::Y, 90.0, 0.0).is_ok());
        assert!(Light::spot(Vec3::ZERO, -Vec3::Y, 45.0, -1.0).is_err());
        assert_eq!(
            Light::directional(Vec3::ZERO, Vec3::ZERO),
            Err(SceneError::ZeroDirection)
        );
        let l = Light::directional(Vec3::ZERO, Vec3::new(0.0, -3.0, 0.0)).unwrap();
        assert_eq!(
            l.kind,
            LightKind::Directional {
                position: Vec3::ZERO,
                direction: -Vec3::Y
            }
        );
    }
}
