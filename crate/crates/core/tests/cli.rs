mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use scenelua::cli::bench_one;
use scenelua::codegen::{parse_scene, PACKAGE_PATHS};
use scenelua::raster::{Image, RenderOptions};

fn scenelua(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scenelua"))
        .args(args)
        .output()
        .unwrap()
}

fn script(dir: &Path, name: &str, source: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, source).unwrap();
    path.to_string_lossy().into_owned()
}

fn scene_path(name: &str) -> String {
    common::corpus_dir("scenes").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn run_prints_console_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = scenelua(&["run", &script(dir.path(), "pow.lua", "print(2^10)")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1024\n");
}

#[test]
fn exit_codes_by_outcome_class() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&str, i32, Option<&str>)] = &[
        ("print('fine')", 0, None),
        ("DrawCube('triangles') DrawPointLight({1, 2, 3})", 0, None),
        ("local = 3", 1, Some("line 1")),
        ("x = 1\nif x then\nprint(x)\n", 1, Some("line 4")),
        ("print('a' .. )", 1, Some("line 1")),
        ("print('partial')\nprint(nil + 1)", 2, Some("line 2")),
        ("\n\nTranslateObject({1, 2, 3})", 2, Some("line 3")),
        ("DrawObject('triangles', 'missing.obj')", 2, Some("missing.obj")),
        ("DrawObject('triangles', '../escape.obj')", 2, Some("line 1")),
    ];
    for (i, (source, code, message)) in cases.iter().enumerate() {
        let path = script(dir.path(), &format!("case{i}.lua"), source);
        let out = scenelua(&["run", &path]);
        assert_eq!(out.status.code(), Some(*code), "{source}: {}", stderr(&out));
        if let Some(m) = message {
            assert!(stderr(&out).contains(m), "{source}: {}", stderr(&out));
        }
    }
    let partial = scenelua(&["run", &script(dir.path(), "p.lua", "print('partial')\nprint(nil + 1)")]);
    assert_eq!(stdout(&partial), "partial\n");
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(scenelua(&[]).status.code(), Some(4));
    assert_eq!(scenelua(&["render"]).status.code(), Some(4));
    assert_eq!(scenelua(&["bench", "--counts", "0"]).status.code(), Some(4));
    assert_eq!(
        scenelua(&["render", "x.lua", "--out", "y.ppm", "--width", "0"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(scenelua(&["--help"]).status.code(), Some(0));
    let missing = scenelua(&["run", "/definitely/not/here.lua"]);
    assert_eq!(missing.status.code(), Some(3));
    let out = scenelua(&["render", &scene_path("cube.lua"), "--out", "/definitely/not/here.ppm"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn run_writes_the_scene_document() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("scene.json");
    let out = scenelua(&[
        "run",
        &scene_path("three_objects.lua"),
        "--scene-out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let scene = parse_scene(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!((scene.objects().len(), scene.lights().len()), (3, 3));
}

fn render_bytes(dir: &Path, script: &str, name: &str, extra: &[&str]) -> Vec<u8> {
    let out_path = dir.join(name);
    let mut args = vec!["render", script, "--out", out_path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = scenelua(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    std::fs::read(out_path).unwrap()
}

#[test]
fn render_size_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cube = scene_path("cube.lua");
    let first = render_bytes(dir.path(), &cube, "a.ppm", &[]);
    assert_eq!(first.len(), 196_623);
    assert!(first.starts_with(b"P6\n256 256\n255\n"));
    assert_eq!(first, render_bytes(dir.path(), &cube, "b.ppm", &[]));
    for threads in ["1", "3"] {
        assert_eq!(first, render_bytes(dir.path(), &cube, "t.ppm", &["--threads", threads]));
    }
    let small = render_bytes(dir.path(), &cube, "s.ppm", &["--width", "40", "--height", "30"]);
    assert!(small.starts_with(b"P6\n40 30\n255\n"));
}

#[test]
fn empty_script_renders_the_clear_color() {
    let dir = tempfile::tempdir().unwrap();
    let empty = script(dir.path(), "empty.lua", "");
    let bytes = render_bytes(dir.path(), &empty, "e.ppm", &["--width", "16", "--height", "8"]);
    let image = Image::from_ppm(&bytes).unwrap();
    assert!(image.pixels().all(|p| p == image.pixel(0, 0)));
}

#[test]
fn assets_resolve_against_the_script_directory_or_flag() {
    let dir = tempfile::tempdir().unwrap();
    let model = scene_path("loaded_model.lua");
    let out = scenelua(&["run", &model]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let moved = script(dir.path(), "model.lua", &std::fs::read_to_string(&model).unwrap());
    assert_eq!(scenelua(&["run", &moved]).status.code(), Some(2));
    let flag = common::corpus_dir("scenes");
    assert_eq!(
        scenelua(&["run", &moved, "--assets-dir", flag.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

fn export_bytes(dir: &Path, script: &str, name: &str) -> (Option<i32>, PathBuf) {
    let out_path = dir.join(name);
    let out = scenelua(&["export", script, "--out", out_path.to_str().unwrap()]);
    (out.status.code(), out_path)
}

#[test]
fn export_is_deterministic_and_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let cube = scene_path("cube.lua");
    let (code, a) = export_bytes(dir.path(), &cube, "a.zip");
    assert_eq!(code, Some(0));
    let (_, b) = export_bytes(dir.path(), &cube, "b.zip");
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let names: Vec<String> = common::unzip(&bytes).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, PACKAGE_PATHS);

    let broken = script(dir.path(), "broken.lua", "DrawCube('triangles')\nScaleObject('big')");
    let (code, path) = export_bytes(dir.path(), &broken, "broken.zip");
    assert_eq!(code, Some(2));
    assert!(!path.exists());
}

#[test]
fn bench_reports_each_count() {
    let out = scenelua(&["bench", "--counts", "10", "--json", "--width", "64", "--height", "64"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let run = &report["runs"][0];
    assert_eq!(run["count"], 10);
    assert_eq!(run["triangles"], 28_800);
    for field in ["parse_ms", "evaluate_ms", "first_frame_ms", "second_frame_ms"] {
        assert!(run[field].as_f64().unwrap() >= 0.0, "{field}");
    }
    assert_eq!(run["parses_during_frames"], 0);
    assert_eq!(run["evaluations_during_frames"], 0);

    let table = scenelua(&["bench", "--counts", "1,2", "--width", "32", "--height", "32"]);
    let text = stdout(&table);
    assert!(text.contains("frame 2 ms"), "{text}");
    assert_eq!(text.lines().count(), 4);
}

fn median_first_frame(count: usize, repeats: usize) -> f64 {
    let mut times: Vec<f64> = (0..repeats)
        .map(|_| bench_one(count, &RenderOptions::default()).unwrap().first_frame_ms)
        .collect();
    times.sort_by(f64::total_cmp);
    times[repeats / 2]
}

#[test]
fn more_spheres_take_at_least_as_long() {
    let (ten, hundred) = (median_first_frame(10, 3), median_first_frame(100, 3));
    if hundred >= ten {
        return;
    }
    // Timing noise: measure again and allow a factor of two.
    let (ten, hundred) = (median_first_frame(10, 5), median_first_frame(100, 5));
    assert!(2.0 * hundred >= ten, "N=10 {ten:.1} ms, N=100 {hundred:.1} ms");
}
