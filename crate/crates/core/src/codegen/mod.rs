//! Scene serialization and export of a standalone WebGL page.

mod archive;
mod document;
mod template;

pub use archive::package_archive;
pub use document::{format_json_number, parse_scene, serialize_scene, DocumentError, MAX_LINE_WIDTH};
pub use template::{
    embedded_document, generate_template, TemplateFile, TemplatePackage, INDEX_PATH, PACKAGE_PATHS, SCENE_DATA_PATH,
};
