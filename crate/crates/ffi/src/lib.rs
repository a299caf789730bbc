//! C ABI over the scenelua library.
//!
//! Every handle is opaque and owned by the caller once returned; release it
//! with the matching `*_free` function. Strings returned by accessors are
//! NUL-terminated, UTF-8 and live as long as the handle they came from.
//! No function unwinds across the boundary: a panic becomes
//! `SCN_STATUS_INTERNAL`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use scenelua::assets::{AssetResolver, MemoryAssets, NoAssets};
use scenelua::boundary::interpret_document;
use scenelua::codegen::{generate_template, package_archive, serialize_scene};
use scenelua::interp::{run_source, ScriptError};
use scenelua::raster::{render, Image, RenderOptions};
use scenelua::scene::Scene;

/// Result code of every fallible call. Script errors use the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScnStatus {
    Ok = 0,
    SyntaxError = 1,
    RuntimeError = 2,
    /// Rendering could not produce an image, e.g. an unsupported size.
    RenderError = 3,
    /// A required pointer was null or text was not valid UTF-8.
    InvalidArgument = 4,
    Internal = 5,
}

/// Asset files a script's DrawObject calls can load, keyed by name.
pub struct ScnAssets {
    files: MemoryAssets,
}

/// Outcome of interpreting one script.
pub struct ScnResult {
    status: ScnStatus,
    scene: Option<Scene>,
    document: Option<Text>,
    console: Vec<Text>,
    error_line: u32,
    error_message: Option<Text>,
}

/// Rendered RGB image, row-major from the top-left, 3 bytes per pixel.
pub struct ScnImage {
    image: Image,
}

/// Owned byte buffer, such as an exported zip archive.
pub struct ScnBytes {
    bytes: Vec<u8>,
}

/// Bytes with a trailing NUL so they can be handed out as a C string.
/// Interior NULs are kept; the reported length covers them.
struct Text(Vec<u8>);

impl Text {
    fn new(s: &str) -> Text {
        let mut bytes = Vec::with_capacity(s.len() + 1);
        bytes.extend_from_slice(s.as_bytes());
        bytes.push(0);
        Text(bytes)
    }

    fn len(&self) -> usize {
        self.0.len() - 1
    }
}

/// Hand out `text`, writing its length (without the NUL) to `out_len` if given.
unsafe fn give(text: Option<&Text>, out_len: *mut usize) -> *const c_char {
    let (pointer, len) = match text {
        Some(t) => (t.0.as_ptr().cast(), t.len()),
        None => (ptr::null(), 0),
    };
    if !out_len.is_null() {
        *out_len = len;
    }
    pointer
}

fn guard<T>(fallback: T, body: impl FnOnce() -> T) -> T {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(fallback)
}

fn guard_status(body: impl FnOnce() -> ScnStatus) -> ScnStatus {
    guard(ScnStatus::Internal, body)
}

unsafe fn utf8<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        return None;
    }
    CStr::from_ptr(text).to_str().ok()
}

unsafe fn resolver<'a>(assets: *const ScnAssets) -> &'a dyn AssetResolver {
    match assets.as_ref() {
        Some(a) => &a.files,
        None => &NoAssets,
    }
}

fn into_handle<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

unsafe fn free_handle<T>(handle: *mut T) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn scn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static name of a status code, e.g. "syntax error".
#[no_mangle]
pub extern "C" fn scn_status_name(status: ScnStatus) -> *const c_char {
    let name: &'static str = match status {
        ScnStatus::Ok => "ok\0",
        ScnStatus::SyntaxError => "syntax error\0",
        ScnStatus::RuntimeError => "runtime error\0",
        ScnStatus::RenderError => "render error\0",
        ScnStatus::InvalidArgument => "invalid argument\0",
        ScnStatus::Internal => "internal error\0",
    };
    name.as_ptr().cast()
}

/// New empty asset set.
#[no_mangle]
pub extern "C" fn scn_assets_new() -> *mut ScnAssets {
    guard(ptr::null_mut(), || {
        into_handle(ScnAssets {
            files: MemoryAssets::new(),
        })
    })
}

/// Add or replace the asset `name` with `len` bytes copied from `data`.
///
/// # Safety
/// `assets` must come from `scn_assets_new`; `name` must be a C string;
/// `data` must point to `len` readable bytes (it may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn scn_assets_insert(
    assets: *mut ScnAssets,
    name: *const c_char,
    data: *const u8,
    len: usize,
) -> ScnStatus {
    guard_status(|| {
        let (Some(assets), Some(name)) = (assets.as_mut(), utf8(name)) else {
            return ScnStatus::InvalidArgument;
        };
        let bytes = match (data.is_null(), len) {
            (_, 0) => Vec::new(),
            (true, _) => return ScnStatus::InvalidArgument,
            (false, _) => std::slice::from_raw_parts(data, len).to_vec(),
        };
        assets.files.insert(name, bytes);
        ScnStatus::Ok
    })
}

/// Number of assets in the set.
///
/// # Safety
/// `assets` must be null or come from `scn_assets_new`.
#[no_mangle]
pub unsafe extern "C" fn scn_assets_count(assets: *const ScnAssets) -> usize {
    assets.as_ref().map_or(0, |a| a.files.len())
}

/// # Safety
/// `assets` must be null or come from `scn_assets_new`, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scn_assets_free(assets: *mut ScnAssets) {
    free_handle(assets);
}

/// Interpret `source`. A result handle is stored in `*out_result` whenever
/// the returned status is OK, SYNTAX_ERROR or RUNTIME_ERROR, so the caller
/// can read the console output and error position.
///
/// # Safety
/// `source` must be a C string, `assets` null or a live asset set, and
/// `out_result` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn scn_interpret(
    source: *const c_char,
    assets: *const ScnAssets,
    out_result: *mut *mut ScnResult,
) -> ScnStatus {
    guard_status(|| {
        if out_result.is_null() {
            return ScnStatus::InvalidArgument;
        }
        *out_result = ptr::null_mut();
        let Some(source) = utf8(source) else {
            return ScnStatus::InvalidArgument;
        };
        let result = match run_source(source, resolver(assets)) {
            Ok(outcome) => ScnResult {
                status: ScnStatus::Ok,
                document: Some(Text::new(&serialize_scene(&outcome.scene))),
                scene: Some(outcome.scene),
                console: outcome.console.iter().map(|l| Text::new(l)).collect(),
                error_line: 0,
                error_message: None,
            },
            Err(e) => ScnResult {
                status: match e {
                    ScriptError::Syntax(_) => ScnStatus::SyntaxError,
                    ScriptError::Runtime { .. } => ScnStatus::RuntimeError,
                },
                scene: None,
                document: None,
                console: e.console().iter().map(|l| Text::new(l)).collect(),
                error_line: e.line(),
                error_message: Some(Text::new(e.message())),
            },
        };
        let status = result.status;
        *out_result = into_handle(result);
        status
    })
}

/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn scn_result_status(result: *const ScnResult) -> ScnStatus {
    result.as_ref().map_or(ScnStatus::InvalidArgument, |r| r.status)
}

/// 1-based line of the error, or 0 when interpretation succeeded.
///
/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn scn_result_error_line(result: *const ScnResult) -> u32 {
    result.as_ref().map_or(0, |r| r.error_line)
}

/// Error message without the line prefix, or null on success.
///
/// # Safety
/// `result` must be null or a live result handle; `out_len` null or writable.
#[no_mangle]
pub unsafe extern "C" fn scn_result_error_message(result: *const ScnResult, out_len: *mut usize) -> *const c_char {
    give(result.as_ref().and_then(|r| r.error_message.as_ref()), out_len)
}

/// Canonical scene document (JSON), or null unless interpretation succeeded.
///
/// # Safety
/// `result` must be null or a live result handle; `out_len` null or writable.
#[no_mangle]
pub unsafe extern "C" fn scn_result_document(result: *const ScnResult, out_len: *mut usize) -> *const c_char {
    give(result.as_ref().and_then(|r| r.document.as_ref()), out_len)
}

/// Number of lines the script printed before it finished or failed.
///
/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn scn_result_console_count(result: *const ScnResult) -> usize {
    result.as_ref().map_or(0, |r| r.console.len())
}

/// Console line `index`, or null when out of range.
///
/// # Safety
/// `result` must be null or a live result handle; `out_len` null or writable.
#[no_mangle]
pub unsafe extern "C" fn scn_result_console_line(
    result: *const ScnResult,
    index: usize,
    out_len: *mut usize,
) -> *const c_char {
    give(result.as_ref().and_then(|r| r.console.get(index)), out_len)
}

/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn scn_result_object_count(result: *const ScnResult) -> usize {
    result
        .as_ref()
        .and_then(|r| r.scene.as_ref())
        .map_or(0, |s| s.objects().len())
}

/// # Safety
/// `result` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn scn_result_light_count(result: *const ScnResult) -> usize {
    result
        .as_ref()
        .and_then(|r| r.scene.as_ref())
        .map_or(0, |s| s.lights().len())
}

/// Render the interpreted scene. `threads` 0 uses every core.
///
/// # Safety
/// `result` must be a live result handle and `out_image` writable.
#[no_mangle]
pub unsafe extern "C" fn scn_result_render(
    result: *const ScnResult,
    width: u32,
    height: u32,
    threads: u32,
    out_image: *mut *mut ScnImage,
) -> ScnStatus {
    guard_status(|| {
        if out_image.is_null() {
            return ScnStatus::InvalidArgument;
        }
        *out_image = ptr::null_mut();
        let Some(scene) = result.as_ref().and_then(|r| r.scene.as_ref()) else {
            return ScnStatus::InvalidArgument;
        };
        let options = RenderOptions {
            width,
            height,
            threads: (threads > 0).then_some(threads as usize),
        };
        match render(scene, &options) {
            Ok(image) => {
                *out_image = into_handle(ScnImage { image });
                ScnStatus::Ok
            }
            Err(_) => ScnStatus::RenderError,
        }
    })
}

/// Zip archive of the standalone web page for the interpreted scene.
///
/// # Safety
/// `result` must be a live result handle and `out_bytes` writable.
#[no_mangle]
pub unsafe extern "C" fn scn_result_export(result: *const ScnResult, out_bytes: *mut *mut ScnBytes) -> ScnStatus {
    guard_status(|| {
        if out_bytes.is_null() {
            return ScnStatus::InvalidArgument;
        }
        *out_bytes = ptr::null_mut();
        let Some(scene) = result.as_ref().and_then(|r| r.scene.as_ref()) else {
            return ScnStatus::InvalidArgument;
        };
        let bytes = package_archive(&generate_template(scene));
        *out_bytes = into_handle(ScnBytes { bytes });
        ScnStatus::Ok
    })
}

/// # Safety
/// `result` must be null or a live result handle, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scn_result_free(result: *mut ScnResult) {
    free_handle(result);
}

/// Interpret `source` and return the JSON result document holding one of
/// `ok`, `syntax_error` or `runtime_error`, plus `console`. Free the string
/// with `scn_string_free`. Returns null only for invalid arguments.
///
/// # Safety
/// `source` must be a C string and `assets` null or a live asset set.
#[no_mangle]
pub unsafe extern "C" fn scn_interpret_document(source: *const c_char, assets: *const ScnAssets) -> *mut c_char {
    guard(ptr::null_mut(), || {
        let Some(source) = utf8(source) else {
            return ptr::null_mut();
        };
        let text = Text::new(&interpret_document(source, resolver(assets)));
        Box::into_raw(text.0.into_boxed_slice()).cast()
    })
}

/// # Safety
/// `text` must be null or come from `scn_interpret_document`, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scn_string_free(text: *mut c_char) {
    if text.is_null() {
        return;
    }
    let len = CStr::from_ptr(text).to_bytes_with_nul().len();
    drop(Box::from_raw(ptr::slice_from_raw_parts_mut(text.cast::<u8>(), len)));
}

/// # Safety
/// `image` must be null or a live image handle.
#[no_mangle]
pub unsafe extern "C" fn scn_image_width(image: *const ScnImage) -> u32 {
    image.as_ref().map_or(0, |i| i.image.width())
}

/// # Safety
/// `image` must be null or a live image handle.
#[no_mangle]
pub unsafe extern "C" fn scn_image_height(image: *const ScnImage) -> u32 {
    image.as_ref().map_or(0, |i| i.image.height())
}

/// Pixel bytes; `width * height * 3` of them.
///
/// # Safety
/// `image` must be null or a live image handle.
#[no_mangle]
pub unsafe extern "C" fn scn_image_pixels(image: *const ScnImage) -> *const u8 {
    image.as_ref().map_or(ptr::null(), |i| i.image.as_bytes().as_ptr())
}

/// Binary PPM (P6) encoding of the image.
///
/// # Safety
/// `image` must be a live image handle and `out_bytes` writable.
#[no_mangle]
pub unsafe extern "C" fn scn_image_to_ppm(image: *const ScnImage, out_bytes: *mut *mut ScnBytes) -> ScnStatus {
    guard_status(|| {
        let Some(image) = image.as_ref() else {
            return ScnStatus::InvalidArgument;
        };
        if out_bytes.is_null() {
            return ScnStatus::InvalidArgument;
        }
        *out_bytes = into_handle(ScnBytes {
            bytes: image.image.to_ppm(),
        });
        ScnStatus::Ok
    })
}

/// # Safety
/// `image` must be null or a live image handle, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scn_image_free(image: *mut ScnImage) {
    free_handle(image);
}

/// One-call export: interpret `source` and zip the web page. On a script
/// error `*out_bytes` stays null and the status says which kind.
///
/// # Safety
/// `source` must be a C string, `assets` null or a live asset set, and
/// `out_bytes` writable.
#[no_mangle]
pub unsafe extern "C" fn scn_export(
    source: *const c_char,
    assets: *const ScnAssets,
    out_bytes: *mut *mut ScnBytes,
) -> ScnStatus {
    guard_status(|| {
        if out_bytes.is_null() {
            return ScnStatus::InvalidArgument;
        }
        *out_bytes = ptr::null_mut();
        let Some(source) = utf8(source) else {
            return ScnStatus::InvalidArgument;
        };
        match scenelua::boundary::export_archive(source, resolver(assets)) {
            Ok(bytes) => {
                *out_bytes = into_handle(ScnBytes { bytes });
                ScnStatus::Ok
            }
            Err(ScriptError::Syntax(_)) => ScnStatus::SyntaxError,
            Err(ScriptError::Runtime { .. }) => ScnStatus::RuntimeError,
        }
    })
}

/// # Safety
/// `bytes` must be null or a live byte buffer.
#[no_mangle]
pub unsafe extern "C" fn scn_bytes_data(bytes: *const ScnBytes) -> *const u8 {
    bytes.as_ref().map_or(ptr::null(), |b| b.bytes.as_ptr())
}

/// # Safety
/// `bytes` must be null or a live byte buffer.
#[no_mangle]
pub unsafe extern "C" fn scn_bytes_len(bytes: *const ScnBytes) -> usize {
    bytes.as_ref().map_or(0, |b| b.bytes.len())
}

/// # Safety
/// `bytes` must be null or a live byte buffer, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scn_bytes_free(bytes: *mut ScnBytes) {
    free_handle(bytes);
}
