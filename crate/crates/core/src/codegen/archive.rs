//! Deterministic zip packaging: fixed entry order, fixed timestamps and
//! permissions, deflate compression.

use std::io::{Cursor, Write};

use zip::write::SimpleFileOptions;
use zip::{CompressionMethod, DateTime, ZipWriter};

use super::template::TemplatePackage;

pub fn package_archive(package: &TemplatePackage) -> Vec<u8> {
    let options = SimpleFileOptions::default()
        .compression_method(CompressionMethod::Deflated)
        .last_modified_time(DateTime::default())
        .unix_permissions(0o644);
    let mut writer = ZipWriter::new(Cursor::new(Vec::new()));
    for file in &package.files {
        // Writing to memory cannot fail.
        writer
            .start_file(file.path.as_str(), options)
            .expect("in-memory zip entry");
        writer.write_all(file.text.as_bytes()).expect("in-memory zip write");
    }
    writer.finish().expect("in-memory zip finish").into_inner()
}
