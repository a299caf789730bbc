use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use scenelua::assets::NoAssets;
use scenelua::boundary::{export_archive, interpret_document};
use scenelua_ffi::*;

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn text(pointer: *const std::ffi::c_char) -> String {
    CStr::from_ptr(pointer).to_str().unwrap().to_string()
}

fn interpret(source: &str, assets: *const ScnAssets) -> (ScnStatus, *mut ScnResult) {
    let mut result = ptr::null_mut();
    let status = unsafe { scn_interpret(c(source).as_ptr(), assets, &mut result) };
    (status, result)
}

#[test]
fn successful_run_exposes_scene_and_console() {
    let (status, result) = interpret("print('a')\nprint('b')\nDrawCube('lines')", ptr::null());
    assert_eq!(status, ScnStatus::Ok);
    unsafe {
        assert_eq!(scn_result_status(result), ScnStatus::Ok);
        assert_eq!(scn_result_console_count(result), 2);
        assert_eq!(text(scn_result_console_line(result, 1, ptr::null_mut())), "b");
        assert!(scn_result_console_line(result, 2, ptr::null_mut()).is_null());
        assert_eq!(
            (scn_result_object_count(result), scn_result_light_count(result)),
            (1, 0)
        );
        assert_eq!(scn_result_error_line(result), 0);
        assert!(scn_result_error_message(result, ptr::null_mut()).is_null());
        let mut len = 0;
        let doc = text(scn_result_document(result, &mut len));
        assert_eq!(len, doc.len());
        assert!(doc.starts_with("{\n  \"camera\""));
        scn_result_free(result);
    }
}

#[test]
fn errors_report_kind_line_and_partial_console() {
    let (status, result) = interpret("print('before')\nprint(nil .. 'x')", ptr::null());
    assert_eq!(status, ScnStatus::RuntimeError);
    unsafe {
        assert_eq!(scn_result_error_line(result), 2);
        assert!(!text(scn_result_error_message(result, ptr::null_mut())).is_empty());
        assert_eq!(text(scn_result_console_line(result, 0, ptr::null_mut())), "before");
        assert!(scn_result_document(result, ptr::null_mut()).is_null());
        let mut image = ptr::null_mut();
        assert_eq!(
            scn_result_render(result, 8, 8, 0, &mut image),
            ScnStatus::InvalidArgument
        );
        assert!(image.is_null());
        scn_result_free(result);
    }
    let (status, result) = interpret("x = 1\n\nif x then", ptr::null());
    assert_eq!(status, ScnStatus::SyntaxError);
    unsafe {
        assert_eq!(scn_result_error_line(result), 3);
        scn_result_free(result);
    }
}

#[test]
fn console_lines_keep_interior_nul_bytes() {
    let (_, result) = interpret("print('a\\0b')", ptr::null());
    unsafe {
        let mut len = 0;
        let line = scn_result_console_line(result, 0, &mut len);
        assert_eq!(std::slice::from_raw_parts(line.cast::<u8>(), len), b"a\0b");
        scn_result_free(result);
    }
}

#[test]
fn invalid_arguments_are_rejected() {
    unsafe {
        let mut result = ptr::null_mut();
        assert_eq!(
            scn_interpret(ptr::null(), ptr::null(), &mut result),
            ScnStatus::InvalidArgument
        );
        assert!(result.is_null());
        assert_eq!(
            scn_interpret(c("").as_ptr(), ptr::null(), ptr::null_mut()),
            ScnStatus::InvalidArgument
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            scn_interpret(bad.as_ptr().cast(), ptr::null(), &mut result),
            ScnStatus::InvalidArgument
        );
        assert!(scn_interpret_document(ptr::null(), ptr::null()).is_null());
        assert_eq!(
            scn_assets_insert(ptr::null_mut(), c("a").as_ptr(), ptr::null(), 0),
            ScnStatus::InvalidArgument
        );
        let assets = scn_assets_new();
        assert_eq!(
            scn_assets_insert(assets, c("a").as_ptr(), ptr::null(), 3),
            ScnStatus::InvalidArgument
        );
        assert_eq!(
            scn_assets_insert(assets, c("a").as_ptr(), ptr::null(), 0),
            ScnStatus::Ok
        );
        assert_eq!(scn_assets_count(assets), 1);
        scn_assets_free(assets);
        assert_eq!(scn_result_status(ptr::null()), ScnStatus::InvalidArgument);
        scn_result_free(ptr::null_mut());
        scn_image_free(ptr::null_mut());
        scn_bytes_free(ptr::null_mut());
        scn_string_free(ptr::null_mut());
    }
}

#[test]
fn render_sizes_and_pixels() {
    let (_, result) = interpret("DrawSphere('triangles')", ptr::null());
    unsafe {
        let mut image = ptr::null_mut();
        assert_eq!(scn_result_render(result, 0, 8, 1, &mut image), ScnStatus::RenderError);
        assert_eq!(scn_result_render(result, 24, 12, 2, &mut image), ScnStatus::Ok);
        assert_eq!((scn_image_width(image), scn_image_height(image)), (24, 12));
        let pixels = std::slice::from_raw_parts(scn_image_pixels(image), 24 * 12 * 3);
        let mut ppm = ptr::null_mut();
        assert_eq!(scn_image_to_ppm(image, &mut ppm), ScnStatus::Ok);
        let encoded = std::slice::from_raw_parts(scn_bytes_data(ppm), scn_bytes_len(ppm));
        assert!(encoded.starts_with(b"P6\n24 12\n255\n"));
        assert_eq!(&encoded[encoded.len() - pixels.len()..], pixels);
        scn_bytes_free(ppm);
        scn_image_free(image);
        scn_result_free(result);
    }
}

#[test]
fn entry_points_match_the_library() {
    let source = "DrawCone('points')\nDrawDirectionalLight({0, 5, 0}, {0, -1, 0})";
    unsafe {
        let json = scn_interpret_document(c(source).as_ptr(), ptr::null());
        assert_eq!(text(json), interpret_document(source, &NoAssets));
        scn_string_free(json);

        let mut zip = ptr::null_mut();
        assert_eq!(scn_export(c(source).as_ptr(), ptr::null(), &mut zip), ScnStatus::Ok);
        let bytes = std::slice::from_raw_parts(scn_bytes_data(zip), scn_bytes_len(zip)).to_vec();
        assert_eq!(bytes, export_archive(source, &NoAssets).unwrap());
        scn_bytes_free(zip);

        let (_, result) = interpret(source, ptr::null());
        let mut again = ptr::null_mut();
        assert_eq!(scn_result_export(result, &mut again), ScnStatus::Ok);
        assert_eq!(
            std::slice::from_raw_parts(scn_bytes_data(again), scn_bytes_len(again)),
            bytes
        );
        scn_bytes_free(again);
        scn_result_free(result);

        let mut none = ptr::null_mut();
        assert_eq!(
            scn_export(c("ScaleObject({2, 2, 2})").as_ptr(), ptr::null(), &mut none),
            ScnStatus::RuntimeError
        );
        assert!(none.is_null());
    }
}

#[test]
fn assets_feed_draw_object() {
    let assets = scn_assets_new();
    let obj = b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n";
    unsafe {
        assert_eq!(
            scn_assets_insert(assets, c("m.obj").as_ptr(), obj.as_ptr(), obj.len()),
            ScnStatus::Ok
        );
    }
    let (status, result) = interpret("DrawObject('triangles', 'm.obj')", assets);
    assert_eq!(status, ScnStatus::Ok);
    let (missing, other) = interpret("DrawObject('triangles', 'm.obj')", ptr::null());
    assert_eq!(missing, ScnStatus::RuntimeError);
    unsafe {
        scn_result_free(result);
        scn_result_free(other);
        scn_assets_free(assets);
    }
}

#[test]
fn status_names_and_version() {
    unsafe {
        assert_eq!(text(scn_status_name(ScnStatus::SyntaxError)), "syntax error");
        assert_eq!(text(scn_version()), env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn header_declares_every_export() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(crate_dir.join("include/scenelua.h")).unwrap();
    let source = std::fs::read_to_string(crate_dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for constant in [
        "SCN_STATUS_OK = 0",
        "SCN_STATUS_SYNTAX_ERROR = 1",
        "SCN_STATUS_RUNTIME_ERROR = 2",
    ] {
        assert!(header.contains(constant), "{constant}");
    }
}

/// Compile the C smoke program against the header and the shared library.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    assert!(lib_dir.join("libscenelua_ffi.so").exists() || lib_dir.join("libscenelua_ffi.dylib").exists());
    let out_dir = tempfile_dir();
    let binary = out_dir.join("smoke");
    let compile = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg("-L")
        .arg(lib_dir)
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-lscenelua_ffi")
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("C compiler available");
    assert!(compile.status.success(), "{}", String::from_utf8_lossy(&compile.stderr));
    let run = Command::new(&binary).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(
        String::from_utf8_lossy(&run.stdout),
        format!("{} ok\n", env!("CARGO_PKG_VERSION"))
    );
}

fn tempfile_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("capi");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
