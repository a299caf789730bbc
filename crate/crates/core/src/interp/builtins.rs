use std::sync::Arc;

use super::error::RuntimeError;
use super::number::{format_number, str_to_number};
use super::session::InterpreterSession;
use super::value::Value;
use crate::geometry::load_obj_mesh;
use crate::lang::SourceSpan;
use crate::scene::{Component, Light, PrimitiveKind, SceneError, SourceKind, Transform, Vec3};

/// Functions predefined in the global scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Print,
    DrawCube,
    DrawCone,
    DrawSphere,
    DrawCylinder,
    DrawGrid,
    DrawObject,
    TranslateObject,
    RotateObject,
    ScaleObject,
    DrawPointLight,
    DrawDirectionalLight,
    DrawSpotLight,
    ChangeLighting,
    AmbientComponent,
    DiffuseComponent,
    SpecularComponent,
}

impl Builtin {
    pub const ALL: [Builtin; 17] = [
        Builtin::Print,
        Builtin::DrawCube,
        Builtin::DrawCone,
        Builtin::DrawSphere,
        Builtin::DrawCylinder,
        Builtin::DrawGrid,
        Builtin::DrawObject,
        Builtin::TranslateObject,
        Builtin::RotateObject,
        Builtin::ScaleObject,
        Builtin::DrawPointLight,
        Builtin::DrawDirectionalLight,
        Builtin::DrawSpotLight,
        Builtin::ChangeLighting,
        Builtin::AmbientComponent,
        Builtin::DiffuseComponent,
        Builtin::SpecularComponent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Print => "print",
            Builtin::DrawCube => "DrawCube",
            Builtin::DrawCone => "DrawCone",
            Builtin::DrawSphere => "DrawSphere",
            Builtin::DrawCylinder => "DrawCylinder",
            Builtin::DrawGrid => "DrawGrid",
            Builtin::DrawObject => "DrawObject",
            Builtin::TranslateObject => "TranslateObject",
            Builtin::RotateObject => "RotateObject",
            Builtin::ScaleObject => "ScaleObject",
            Builtin::DrawPointLight => "DrawPointLight",
            Builtin::DrawDirectionalLight => "DrawDirectionalLight",
            Builtin::DrawSpotLight => "DrawSpotLight",
            Builtin::ChangeLighting => "ChangeLighting",
            Builtin::AmbientComponent => "AmbientComponent",
            Builtin::DiffuseComponent => "DiffuseComponent",
            Builtin::SpecularComponent => "SpecularComponent",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    /// Number of declared parameters.
    pub fn arity(self) -> Option<usize> {
        Some(match self {
            Builtin::Print => return None,
            Builtin::DrawCube
            | Builtin::DrawCone
            | Builtin::DrawSphere
            | Builtin::DrawCylinder
            | Builtin::DrawGrid
            | Builtin::TranslateObject
            | Builtin::ScaleObject
            | Builtin::DrawPointLight
            | Builtin::ChangeLighting
            | Builtin::AmbientComponent
            | Builtin::DiffuseComponent
            | Builtin::SpecularComponent => 1,
            Builtin::DrawObject | Builtin::RotateObject | Builtin::DrawDirectionalLight => 2,
            Builtin::DrawSpotLight => 4,
        })
    }

    /// True for the builtins that write the scene.
    pub fn is_graphics(self) -> bool {
        self != Builtin::Print
    }
}

struct Args<'v> {
    builtin: Builtin,
    values: &'v [Value],
    span: SourceSpan,
}

fn describe(v: &Value) -> String {
    match v {
        Value::Table(t) => format!("table of length {}", t.borrow().len()),
        other => other.type_name().to_string(),
    }
}

impl Args<'_> {
    fn get(&self, i: usize) -> &Value {
        self.values.get(i).unwrap_or(&Value::Nil)
    }

    fn bad(&self, i: usize, expected: &str) -> RuntimeError {
        let got = match self.values.get(i) {
            None => "no value".to_string(),
            Some(v) => describe(v),
        };
        RuntimeError::new(
            format!(
                "bad argument #{} to '{}' ({expected} expected, got {got})",
                i + 1,
                self.builtin.name()
            ),
            self.span,
        )
    }

    fn string(&self, i: usize) -> Result<String, RuntimeError> {
        match self.get(i) {
            Value::Str(s) => Ok(s.to_string()),
            Value::Number(n) => Ok(format_number(*n)),
            _ => Err(self.bad(i, "string")),
        }
    }

    fn number(&self, i: usize) -> Result<f64, RuntimeError> {
        match self.get(i) {
            Value::Number(n) => Ok(*n),
            Value::Str(s) => str_to_number(s).ok_or_else(|| self.bad(i, "number")),
            _ => Err(self.bad(i, "number")),
        }
    }

    /// A table whose array part is exactly three numbers.
    fn vec3(&self, i: usize) -> Result<Vec3, RuntimeError> {
        const EXPECTED: &str = "array of 3 numbers";
        let Value::Table(t) = self.get(i) else {
            return Err(self.bad(i, EXPECTED));
        };
        let t = t.borrow();
        let items = t.array();
        if items.len() != 3 {
            return Err(self.bad(i, EXPECTED));
        }
        let mut xyz = [0.0; 3];
        for (slot, item) in xyz.iter_mut().zip(items) {
            *slot = match item {
                Value::Number(n) => *n,
                Value::Str(s) => str_to_number(s).ok_or_else(|| self.bad(i, EXPECTED))?,
                _ => return Err(self.bad(i, EXPECTED)),
            };
        }
        Ok(Vec3::new(xyz[0], xyz[1], xyz[2]))
    }

    fn scene<T>(&self, result: Result<T, SceneError>) -> Result<T, RuntimeError> {
        result.map_err(|e| RuntimeError::new(e.to_string(), self.span))
    }
}

impl InterpreterSession<'_> {
    pub(crate) fn call_builtin(
        &mut self,
        builtin: Builtin,
        values: &[Value],
        span: SourceSpan,
    ) -> Result<Vec<Value>, RuntimeError> {
        let args = Args { builtin, values, span };
        match builtin {
            Builtin::Print => {
                let line = values.iter().map(Value::to_string).collect::<Vec<_>>().join("\t");
                self.console.push(line);
            }
            Builtin::DrawCube => self.primitive(&args, PrimitiveKind::Cube)?,
            Builtin::DrawCone => self.primitive(&args, PrimitiveKind::Cone)?,
            Builtin::DrawSphere => self.primitive(&args, PrimitiveKind::Sphere)?,
            Builtin::DrawCylinder => self.primitive(&args, PrimitiveKind::Cylinder)?,
            Builtin::DrawGrid => self.primitive(&args, PrimitiveKind::Grid)?,
            Builtin::DrawObject => {
                let mode = args.string(0)?;
                let name = args.string(1)?;
                // Validate the mode before touching the asset.
                args.scene(mode.parse::<crate::scene::DisplayMode>())?;
                let mesh = self.load_asset_mesh(&name, span)?;
                args.scene(self.builder.draw_mesh(&mode, mesh, SourceKind::obj_from_asset(&name)))?;
            }
            Builtin::TranslateObject => {
                let v = args.vec3(0)?;
                args.scene(self.builder.transform_current(Transform::Translate(v)))?;
            }
            Builtin::RotateObject => {
                let angle_deg = args.number(0)?;
                let axis = args.vec3(1)?;
                args.scene(self.builder.transform_current(Transform::Rotate { angle_deg, axis }))?;
            }
            Builtin::ScaleObject => {
                let v = args.vec3(0)?;
                args.scene(self.builder.transform_current(Transform::Scale(v)))?;
            }
            Builtin::DrawPointLight => {
                let light = args.scene(Light::point(args.vec3(0)?))?;
                args.scene(self.builder.add_light(light))?;
            }
            Builtin::DrawDirectionalLight => {
                let light = args.scene(Light::directional(args.vec3(0)?, args.vec3(1)?))?;
                args.scene(self.builder.add_light(light))?;
            }
            Builtin::DrawSpotLight => {
                let light = args.scene(Light::spot(
                    args.vec3(0)?,
                    args.vec3(1)?,
                    args.number(2)?,
                    args.number(3)?,
                ))?;
                args.scene(self.builder.add_light(light))?;
            }
            Builtin::ChangeLighting => {
                let model = args.string(0)?;
                args.scene(self.builder.change_lighting(&model))?;
            }
            Builtin::AmbientComponent => self.component(&args, Component::Ambient)?,
            Builtin::DiffuseComponent => self.component(&args, Component::Diffuse)?,
            Builtin::SpecularComponent => self.component(&args, Component::Specular)?,
        }
        Ok(Vec::new())
    }

    fn primitive(&mut self, args: &Args<'_>, kind: PrimitiveKind) -> Result<(), RuntimeError> {
        let mode = args.string(0)?;
        args.scene(self.builder.draw_primitive(kind, &mode)).map(drop)
    }

    fn component(&mut self, args: &Args<'_>, which: Component) -> Result<(), RuntimeError> {
        let rgb = args.vec3(0)?;
        args.scene(self.builder.set_component(which, rgb))
    }

    fn load_asset_mesh(&mut self, name: &str, span: SourceSpan) -> Result<Arc<crate::geometry::Mesh>, RuntimeError> {
        if let Some(mesh) = self.meshes.get(name) {
            return Ok(mesh.clone());
        }
        let bytes = self
            .assets
            .resolve(name)
            .map_err(|e| RuntimeError::new(e.to_string(), span))?;
        let mesh =
            load_obj_mesh(&bytes).map_err(|e| RuntimeError::new(format!("{name}:{}: {}", e.line, e.message), span))?;
        let mesh = Arc::new(mesh);
        self.meshes.insert(name.to_string(), mesh.clone());
        Ok(mesh)
    }
}
