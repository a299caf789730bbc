#ifndef SCENELUA_H
#define SCENELUA_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call. Script errors use the CLI exit codes.
typedef enum ScnStatus {
  SCN_STATUS_OK = 0,
  SCN_STATUS_SYNTAX_ERROR = 1,
  SCN_STATUS_RUNTIME_ERROR = 2,
  // Rendering could not produce an image, e.g. an unsupported size.
  SCN_STATUS_RENDER_ERROR = 3,
  // A required pointer was null or text was not valid UTF-8.
  SCN_STATUS_INVALID_ARGUMENT = 4,
  SCN_STATUS_INTERNAL = 5,
} ScnStatus;

// Asset files a script's DrawObject calls can load, keyed by name.
typedef struct ScnAssets ScnAssets;

// Owned byte buffer, such as an exported zip archive.
typedef struct ScnBytes ScnBytes;

// Rendered RGB image, row-major from the top-left, 3 bytes per pixel.
typedef struct ScnImage ScnImage;

// Outcome of interpreting one script.
typedef struct ScnResult ScnResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static C string.
const char *scn_version(void);

// Static name of a status code, e.g. "syntax error".
const char *scn_status_name(enum ScnStatus status);

// New empty asset set.
struct ScnAssets *scn_assets_new(void);

// Add or replace the asset `name` with `len` bytes copied from `data`.
//
// # Safety
// `assets` must come from `scn_assets_new`; `name` must be a C string;
// `data` must point to `len` readable bytes (it may be null when `len` is 0).
enum ScnStatus scn_assets_insert(struct ScnAssets *assets,
                                 const char *name,
                                 const uint8_t *data,
                                 size_t len);

// Number of assets in the set.
//
// # Safety
// `assets` must be null or come from `scn_assets_new`.
size_t scn_assets_count(const struct ScnAssets *assets);

// # Safety
// `assets` must be null or come from `scn_assets_new`, and not be used afterwards.
void scn_assets_free(struct ScnAssets *assets);

// Interpret `source`. A result handle is stored in `*out_result` whenever
// the returned status is OK, SYNTAX_ERROR or RUNTIME_ERROR, so the caller
// can read the console output and error position.
//
// # Safety
// `source` must be a C string, `assets` null or a live asset set, and
// `out_result` a writable pointer.
enum ScnStatus scn_interpret(const char *source,
                             const struct ScnAssets *assets,
                             struct ScnResult **out_result);

// # Safety
// `result` must be null or a live result handle.
enum ScnStatus scn_result_status(const struct ScnResult *result);

// 1-based line of the error, or 0 when interpretation succeeded.
//
// # Safety
// `result` must be null or a live result handle.
uint32_t scn_result_error_line(const struct ScnResult *result);

// Error message without the line prefix, or null on success.
//
// # Safety
// `result` must be null or a live result handle; `out_len` null or writable.
const char *scn_result_error_message(const struct ScnResult *result, size_t *out_len);

// Canonical scene document (JSON), or null unless interpretation succeeded.
//
// # Safety
// `result` must be null or a live result handle; `out_len` null or writable.
const char *scn_result_document(const struct ScnResult *result, size_t *out_len);

// Number of lines the script printed before it finished or failed.
//
// # Safety
// `result` must be null or a live result handle.
size_t scn_result_console_count(const struct ScnResult *result);

// Console line `index`, or null when out of range.
//
// # Safety
// `result` must be null or a live result handle; `out_len` null or writable.
const char *scn_result_console_line(const struct ScnResult *result, size_t index, size_t *out_len);

// # Safety
// `result` must be null or a live result handle.
size_t scn_result_object_count(const struct ScnResult *result);

// # Safety
// `result` must be null or a live result handle.
size_t scn_result_light_count(const struct ScnResult *result);

// Render the interpreted scene. `threads` 0 uses every core.
//
// # Safety
// `result` must be a live result handle and `out_image` writable.
enum ScnStatus scn_result_render(const struct ScnResult *result,
                                 uint32_t width,
                                 uint32_t height,
                                 uint32_t threads,
                                 struct ScnImage **out_image);

// Zip archive of the standalone web page for the interpreted scene.
//
// # Safety
// `result` must be a live result handle and `out_bytes` writable.
enum ScnStatus scn_result_export(const struct ScnResult *result, struct ScnBytes **out_bytes);

// # Safety
// `result` must be null or a live result handle, and not be used afterwards.
void scn_result_free(struct ScnResult *result);

// Interpret `source` and return the JSON result document holding one of
// `ok`, `syntax_error` or `runtime_error`, plus `console`. Free the string
// with `scn_string_free`. Returns null only for invalid arguments.
//
// # Safety
// `source` must be a C string and `assets` null or a live asset set.
char *scn_interpret_document(const char *source, const struct ScnAssets *assets);

// # Safety
// `text` must be null or come from `scn_interpret_document`, and not be used afterwards.
void scn_string_free(char *text);

// # Safety
// `image` must be null or a live image handle.
uint32_t scn_image_width(const struct ScnImage *image);

// # Safety
// `image` must be null or a live image handle.
uint32_t scn_image_height(const struct ScnImage *image);

// Pixel bytes; `width * height * 3` of them.
//
// # Safety
// `image` must be null or a live image handle.
const uint8_t *scn_image_pixels(const struct ScnImage *image);

// Binary PPM (P6) encoding of the image.
//
// # Safety
// `image` must be a live image handle and `out_bytes` writable.
enum ScnStatus scn_image_to_ppm(const struct ScnImage *image, struct ScnBytes **out_bytes);

// # Safety
// `image` must be null or a live image handle, and not be used afterwards.
void scn_image_free(struct ScnImage *image);

// One-call export: interpret `source` and zip the web page. On a script
// error `*out_bytes` stays null and the status says which kind.
//
// # Safety
// `source` must be a C string, `assets` null or a live asset set, and
// `out_bytes` writable.
enum ScnStatus scn_export(const char *source,
                          const struct ScnAssets *assets,
                          struct ScnBytes **out_bytes);

// # Safety
// `bytes` must be null or a live byte buffer.
const uint8_t *scn_bytes_data(const struct ScnBytes *bytes);

// # Safety
// `bytes` must be null or a live byte buffer.
size_t scn_bytes_len(const struct ScnBytes *bytes);

// # Safety
// `bytes` must be null or a live byte buffer, and not be used afterwards.
void scn_bytes_free(struct ScnBytes *bytes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCENELUA_H */
