//! Canonical JSON form of a frozen scene.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

use crate::geometry::{Mesh, UNIT_NORMAL_TOLERANCE};
use crate::scene::{
    Camera, DisplayMode, Light, LightKind, Mat4, Material, Scene, SceneError, SceneObject, ShadingModel, SourceKind,
    Vec3,
};

/// Longest line the canonical writer emits.
pub const MAX_LINE_WIDTH: usize = 120;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed scene document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid scene document: {0}")]
    Invalid(String),
    #[error("invalid scene document: {0}")]
    Scene(#[from] SceneError),
}

fn invalid(message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid(message.into())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocScene {
    camera: DocCamera,
    shading: String,
    clear_color: [f64; 3],
    objects: Vec<DocObject>,
    lights: Vec<DocLight>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocCamera {
    eye: [f64; 3],
    target: [f64; 3],
    up: [f64; 3],
    fov_y_deg: f64,
    near: f64,
    far: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocObject {
    id: usize,
    source_kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    display_mode: String,
    model_matrix: Vec<f64>,
    material: DocMaterial,
    mesh: DocMesh,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocMaterial {
    ambient: [f64; 3],
    diffuse: [f64; 3],
    specular: [f64; 3],
    shininess: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocMesh {
    positions: Vec<f64>,
    normals: Vec<f64>,
    triangles: Vec<u32>,
    edges: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocLight {
    kind: String,
    parameters: DocLightParameters,
    components: DocComponents,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocLightParameters {
    position: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    direction: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cutoff_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponent: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocComponents {
    ambient: [f64; 3],
    diffuse: [f64; 3],
    specular: [f64; 3],
}

fn flatten(vs: &[Vec3]) -> Vec<f64> {
    vs.iter().flat_map(|v| v.to_array()).collect()
}

fn to_doc(scene: &Scene) -> DocScene {
    let camera = scene.camera();
    DocScene {
        camera: DocCamera {
            eye: camera.eye.to_array(),
            target: camera.target.to_array(),
            up: camera.up.to_array(),
            fov_y_deg: camera.fov_y_deg,
            near: camera.near,
            far: camera.far,
        },
        shading: scene.shading().as_str().to_string(),
        clear_color: scene.clear_color().to_array(),
        objects: scene
            .objects()
            .iter()
            .map(|o| DocObject {
                id: o.id,
                source_kind: o.source_kind.as_str().to_string(),
                label: match &o.source_kind {
                    SourceKind::Obj { label } => Some(label.clone()),
                    _ => None,
                },
                display_mode: o.display_mode.as_str().to_string(),
                model_matrix: o.model_matrix.m.to_vec(),
                material: DocMaterial {
                    ambient: o.material.ambient.to_array(),
                    diffuse: o.material.diffuse.to_array(),
                    specular: o.material.specular.to_array(),
                    shininess: o.material.shininess,
                },
                mesh: DocMesh {
                    positions: flatten(&o.mesh.positions),
                    normals: flatten(&o.mesh.normals),
                    triangles: o.mesh.triangles.iter().flatten().copied().collect(),
                    edges: o.mesh.edges.iter().flatten().copied().collect(),
                },
            })
            .collect(),
        lights: scene.lights().iter().map(light_to_doc).collect(),
    }
}

fn light_to_doc(light: &Light) -> DocLight {
    let (kind, parameters) = match light.kind {
        LightKind::Point { position } => (
            "point",
            DocLightParameters {
                position: position.to_array(),
                direction: None,
                cutoff_deg: None,
                exponent: None,
            },
        ),
        LightKind::Directional { position, direction } => (
            "directional",
            DocLightParameters {
                position: position.to_array(),
                direction: Some(direction.to_array()),
                cutoff_deg: None,
                exponent: None,
            },
        ),
        LightKind::Spot {
            position,
            direction,
            cutoff_deg,
            exponent,
        } => (
            "spot",
            DocLightParameters {
                position: position.to_array(),
                direction: Some(direction.to_array()),
                cutoff_deg: Some(cutoff_deg),
                exponent: Some(exponent),
            },
        ),
    };
    DocLight {
        kind: kind.to_string(),
        parameters,
        components: DocComponents {
            ambient: light.ambient.to_array(),
            diffuse: light.diffuse.to_array(),
            specular: light.specular.to_array(),
        },
    }
}

/// Canonical text: fixed key order, shortest round-trip numbers, lines no
/// longer than [`MAX_LINE_WIDTH`], no trailing newline.
pub fn serialize_scene(scene: &Scene) -> String {
    let value = serde_json::to_value(to_doc(scene)).expect("scene documents always serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0, 0, 0);
    out
}

/// Parse a document back into a scene, validating everything a script
/// could not have produced.
pub fn parse_scene(text: &str) -> Result<Scene, DocumentError> {
    let doc: DocScene = serde_json::from_str(text)?;
    let camera = Camera {
        eye: doc.camera.eye.into(),
        target: doc.camera.target.into(),
        up: doc.camera.up.into(),
        fov_y_deg: doc.camera.fov_y_deg,
        near: doc.camera.near,
        far: doc.camera.far,
    };
    camera.validate()?;
    let shading: ShadingModel = doc.shading.parse()?;
    let objects = doc
        .objects
        .into_iter()
        .map(object_from_doc)
        .collect::<Result<Vec<_>, _>>()?;
    let lights = doc
        .lights
        .into_iter()
        .enumerate()
        .map(|(i, l)| light_from_doc(l).map_err(|e| invalid(format!("light {i}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Scene::from_parts(
        camera,
        shading,
        objects,
        lights,
        doc.clear_color.into(),
    )?)
}

fn triples<T: Copy, const N: usize>(values: &[T], what: &str) -> Result<Vec<[T; N]>, DocumentError> {
    if !values.len().is_multiple_of(N) {
        return Err(invalid(format!(
            "{what} length {} is not a multiple of {N}",
            values.len()
        )));
    }
    Ok(values.chunks_exact(N).map(|c| std::array::from_fn(|i| c[i])).collect())
}

fn object_from_doc(o: DocObject) -> Result<SceneObject, DocumentError> {
    let id = o.id;
    let context = |e: String| invalid(format!("object {id}: {e}"));
    let source_kind = match (o.source_kind.as_str(), o.label) {
        ("cube", None) => SourceKind::Cube,
        ("cone", None) => SourceKind::Cone,
        ("sphere", None) => SourceKind::Sphere,
        ("cylinder", None) => SourceKind::Cylinder,
        ("grid", None) => SourceKind::Grid,
        ("obj", Some(label)) => SourceKind::Obj { label },
        (kind, _) => return Err(context(format!("unexpected source kind '{kind}' or label"))),
    };
    let display_mode: DisplayMode = o.display_mode.parse()?;
    let m: [f64; 16] = o
        .model_matrix
        .try_into()
        .map_err(|v: Vec<f64>| context(format!("model_matrix has {} numbers, expected 16", v.len())))?;
    let mesh = Mesh {
        positions: triples::<f64, 3>(&o.mesh.positions, "positions")?
            .into_iter()
            .map(Vec3::from)
            .collect(),
        normals: triples::<f64, 3>(&o.mesh.normals, "normals")?
            .into_iter()
            .map(Vec3::from)
            .collect(),
        triangles: triples(&o.mesh.triangles, "triangles")?,
        edges: triples(&o.mesh.edges, "edges")?,
    };
    mesh.validate().map_err(|e| context(e.to_string()))?;
    Ok(SceneObject {
        id,
        mesh: Arc::new(mesh),
        model_matrix: Mat4::from_cols(m),
        material: Material {
            ambient: o.material.ambient.into(),
            diffuse: o.material.diffuse.into(),
            specular: o.material.specular.into(),
            shininess: o.material.shininess,
        },
        display_mode,
        source_kind,
    })
}

fn unit(v: [f64; 3]) -> Result<Vec3, String> {
    let v = Vec3::from(v);
    if v.is_finite() && (v.length() - 1.0).abs() < UNIT_NORMAL_TOLERANCE {
        Ok(v)
    } else {
        Err("direction is not a unit vector".into())
    }
}

fn light_from_doc(l: DocLight) -> Result<Light, String> {
    let p = l.parameters;
    let position = Vec3::from(p.position);
    if !position.is_finite() {
        return Err("position is not finite".into());
    }
    let missing = |field: &str| format!("{} light needs '{field}'", l.kind);
    let extra = || format!("{} light has unexpected parameters", l.kind);
    let kind = match l.kind.as_str() {
        "point" => {
            if p.direction.is_some() || p.cutoff_deg.is_some() || p.exponent.is_some() {
                return Err(extra());
            }
            LightKind::Point { position }
        }
        "directional" => {
            if p.cutoff_deg.is_some() || p.exponent.is_some() {
                return Err(extra());
            }
            LightKind::Directional {
                position,
                direction: unit(p.direction.ok_or_else(|| missing("direction"))?)?,
            }
        }
        "spot" => {
            let cutoff_deg = p.cutoff_deg.ok_or_else(|| missing("cutoff_deg"))?;
            let exponent = p.exponent.ok_or_else(|| missing("exponent"))?;
            if !(cutoff_deg > 0.0 && cutoff_deg <= 90.0) {
                return Err(SceneError::CutoffOutOfRange(cutoff_deg).to_string());
            }
            if !(exponent >= 0.0 && exponent.is_finite()) {
                return Err(SceneError::NegativeExponent(exponent).to_string());
            }
            LightKind::Spot {
                position,
                direction: unit(p.direction.ok_or_else(|| missing("direction"))?)?,
                cutoff_deg,
                exponent,
            }
        }
        other => return Err(format!("unknown light kind '{other}'")),
    };
    let components = [l.components.ambient, l.components.diffuse, l.components.specular].map(Vec3::from);
    if !components.iter().all(|c| c.is_finite()) {
        return Err("component is not finite".into());
    }
    Ok(Light {
        kind,
        ambient: components[0],
        diffuse: components[1],
        specular: components[2],
    })
}

/// JSON number text. Integral values print without a fraction so the
/// output reads like hand-written data; everything else uses the shortest
/// representation that parses back to the same `f64`.
pub fn format_json_number(value: f64) -> String {
    if value.fract() == 0.0 && value.abs() < 1e15 {
        format!("{}", value as i64)
    } else {
        serde_json::Number::from_f64(value)
            .map(|n| n.to_string())
            .unwrap_or_else(|| "null".to_string())
    }
}

fn scalar_text(value: &Json) -> String {
    match value {
        Json::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format_json_number(f),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn compact(value: &Json) -> String {
    match value {
        Json::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Json::Object(map) => format!(
            "{{{}}}",
            map.iter()
                .map(|(k, v)| format!("{}: {}", Json::from(k.as_str()), compact(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        scalar => scalar_text(scalar),
    }
}

fn is_scalar(value: &Json) -> bool {
    !matches!(value, Json::Array(_) | Json::Object(_))
}

/// `lead` counts characters already on the current line after the indent;
/// `trail` counts characters that will follow the value on it.
fn write_value(out: &mut String, value: &Json, indent: usize, lead: usize, trail: usize) {
    let flat = compact(value);
    if indent + lead + flat.len() + trail <= MAX_LINE_WIDTH || is_scalar(value) {
        out.push_str(&flat);
        return;
    }
    let pad = " ".repeat(indent + 2);
    match value {
        Json::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                let key_text = format!("{}: ", Json::from(key.as_str()));
                let comma = usize::from(i + 1 < map.len());
                out.push_str(&pad);
                out.push_str(&key_text);
                write_value(out, item, indent + 2, key_text.len(), comma);
                if comma == 1 {
                    out.push(',');
                }
                out.push('\n');
            }
        }
        Json::Array(items) if items.iter().all(is_scalar) => {
            // Pack numbers into as few lines as fit.
            out.push_str("[\n");
            let mut line = String::new();
            for (i, item) in items.iter().enumerate() {
                let mut piece = scalar_text(item);
                if i + 1 < items.len() {
                    piece.push(',');
                }
                if !line.is_empty() && indent + 2 + line.len() + 1 + piece.len() > MAX_LINE_WIDTH {
                    out.push_str(&pad);
                    out.push_str(&line);
                    out.push('\n');
                    line.clear();
                }
                if !line.is_empty() {
                    line.push(' ');
                }
                line.push_str(&piece);
            }
            if !line.is_empty() {
                out.push_str(&pad);
                out.push_str(&line);
                out.push('\n');
            }
        }
        Json::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                let comma = usize::from(i + 1 < items.len());
                out.push_str(&pad);
                write_value(out, item, indent + 2, 0, comma);
                if comma == 1 {
                    out.push(',');
                }
                out.push('\n');
            }
        }
        _ => unreachable!("scalars are written compactly"),
    }
    out.push_str(&" ".repeat(indent));
    out.push(if matches!(value, Json::Object(_)) { '}' } else { ']' });
}
