#![allow(dead_code)]

pub mod coverage;

use std::path::{Path, PathBuf};

pub fn corpus_dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(sub)
}

/// Sorted `(path, contents)` pairs for every file with extension `ext`.
pub fn corpus_files(sub: &str, ext: &str) -> Vec<(PathBuf, String)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir(sub))
        .unwrap_or_else(|e| panic!("corpus {sub}: {e}"))
        .map(|entry| entry.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect()
}

pub fn file_name(p: &Path) -> String {
    p.file_name().unwrap().to_string_lossy().into_owned()
}

/// Scripts that draw something, with the asset directory they load from.
pub fn scene_scripts() -> Vec<(PathBuf, String)> {
    let mut scripts = corpus_files("scenes", "lua");
    scripts.extend(
        corpus_files("grammar", "lua")
            .into_iter()
            .filter(|(p, _)| file_name(p) == "scene.lua"),
    );
    scripts
}

pub fn scene_assets() -> scenelua::assets::DirAssets {
    scenelua::assets::DirAssets::new(corpus_dir("scenes"))
}

/// `(name, bytes)` for every archive entry, in archive order.
pub fn unzip(bytes: &[u8]) -> Vec<(String, Vec<u8>)> {
    use std::io::Read;
    let mut archive = zip::ZipArchive::new(std::io::Cursor::new(bytes)).expect("valid zip");
    (0..archive.len())
        .map(|i| {
            let mut entry = archive.by_index(i).unwrap();
            let mut data = Vec::new();
            entry.read_to_end(&mut data).unwrap();
            (entry.name().to_string(), data)
        })
        .collect()
}

/// Lines of a script, comments and blank lines included.
pub fn source_lines(source: &str) -> usize {
    source.lines().count()
}

/// Independent oracle: for each vertex, scan every face in the file text,
/// fan-triangulate and add the unnormalized normal of any triangle that
/// touches it.
pub fn face_sum_normals(text: &str) -> Vec<[f64; 3]> {
    let mut positions: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for line in text.lines() {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("v") => {
                let c: Vec<f64> = words.take(3).map(|w| w.parse().unwrap()).collect();
                positions.push([c[0], c[1], c[2]]);
            }
            Some("f") => faces.push(
                words
                    .map(|w| w.split('/').next().unwrap().parse::<usize>().unwrap() - 1)
                    .collect(),
            ),
            _ => {}
        }
    }
    (0..positions.len())
        .map(|v| {
            let mut sum = [0.0; 3];
            for face in &faces {
                for k in 1..face.len() - 1 {
                    let tri = [face[0], face[k], face[k + 1]];
                    if !tri.contains(&v) {
                        continue;
                    }
                    let [a, b, c] = tri.map(|i| positions[i]);
                    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                    let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
                    sum[0] += u[1] * w[2] - u[2] * w[1];
                    sum[1] += u[2] * w[0] - u[0] * w[2];
                    sum[2] += u[0] * w[1] - u[1] * w[0];
                }
            }
            let len = (sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]).sqrt();
            sum.map(|x| x / len)
        })
        .collect()
}
