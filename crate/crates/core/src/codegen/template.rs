//! The exported web package: fixed, hand-written files with the scene
//! document and a few shared constants spliced in.

use super::document::{format_json_number, serialize_scene};
use crate::scene::{defaults, Scene, Vec3};

const INDEX_HTML: &str = include_str!("../../templates/index.html");
const MATRIX_JS: &str = include_str!("../../templates/matrix.js");
const SHADERS_JS: &str = include_str!("../../templates/shaders.js");
const RENDERER_JS: &str = include_str!("../../templates/renderer.js");
const MAIN_JS: &str = include_str!("../../templates/main.js");

pub const INDEX_PATH: &str = "index.html";
pub const SCENE_DATA_PATH: &str = "scene_data.js";

/// Package paths in archive order.
pub const PACKAGE_PATHS: [&str; 6] = [
    INDEX_PATH,
    SCENE_DATA_PATH,
    "shaders.js",
    "matrix.js",
    "renderer.js",
    "main.js",
];

const SCENE_DATA_HEADER: &str = "\
// Scene exported from a script: camera, shading model, objects with their
// triangulated meshes, and lights. Edit the values here to adjust the render;
// for example set \"shading\" to \"flat\", \"gouraud\" or \"blinn-phong\".
var sceneDocument = ";
const SCENE_DATA_FOOTER: &str = ";\n";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateFile {
    pub path: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplatePackage {
    pub files: Vec<TemplateFile>,
}

impl TemplatePackage {
    pub fn file(&self, path: &str) -> Option<&str> {
        self.files.iter().find(|f| f.path == path).map(|f| f.text.as_str())
    }

    pub fn line_count(&self) -> usize {
        self.files.iter().map(|f| f.text.lines().count()).sum()
    }

    /// The scene document embedded in `scene_data.js`, verbatim.
    pub fn embedded_document(&self) -> Option<&str> {
        embedded_document(self.file(SCENE_DATA_PATH)?)
    }
}

/// Extract the document text from a `scene_data.js` file.
pub fn embedded_document(scene_data: &str) -> Option<&str> {
    scene_data
        .strip_prefix(SCENE_DATA_HEADER)?
        .strip_suffix(SCENE_DATA_FOOTER)
}

fn vector_literal(v: Vec3) -> String {
    let [x, y, z] = v.to_array().map(format_json_number);
    format!("[{x}, {y}, {z}]")
}

fn renderer_source() -> String {
    RENDERER_JS
        .replace("{{HEADLIGHT_AMBIENT}}", &vector_literal(defaults::LIGHT_AMBIENT))
        .replace("{{HEADLIGHT_DIFFUSE}}", &vector_literal(defaults::LIGHT_DIFFUSE))
        .replace("{{HEADLIGHT_SPECULAR}}", &vector_literal(defaults::LIGHT_SPECULAR))
}

pub fn generate_template(scene: &Scene) -> TemplatePackage {
    let document = serialize_scene(scene);
    let mut scene_data = String::with_capacity(document.len() + 256);
    scene_data.push_str(SCENE_DATA_HEADER);
    scene_data.push_str(&document);
    scene_data.push_str(SCENE_DATA_FOOTER);
    let text_for = |path: &str| -> String {
        match path {
            INDEX_PATH => INDEX_HTML.to_string(),
            SCENE_DATA_PATH => scene_data.clone(),
            "shaders.js" => SHADERS_JS.to_string(),
            "matrix.js" => MATRIX_JS.to_string(),
            "renderer.js" => renderer_source(),
            "main.js" => MAIN_JS.to_string(),
            _ => unreachable!("fixed package layout"),
        }
    };
    TemplatePackage {
        files: PACKAGE_PATHS
            .iter()
            .map(|path| TemplateFile {
                path: path.to_string(),
                text: text_for(path),
            })
            .collect(),
    }
}
