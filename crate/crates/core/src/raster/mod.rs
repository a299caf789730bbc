//! Deterministic software renderer used as the reference for the
//! exported web template.

mod image;
mod setup;

use rayon::prelude::*;
use thiserror::Error;

pub use image::{image_diff, Image, ImageDiff};
pub use setup::{clip_near, edge, is_top_left, setup_triangle, ClipVertex, ScreenVertex, SetupTriangle, Viewport};

use crate::scene::{DisplayMode, Light, Mat4, Material, Scene, SceneError, SceneObject, ShadingModel, Vec3};
use crate::shading::{illuminate, quantize_rgb, Specular};

pub const DEFAULT_WIDTH: u32 = 256;
pub const DEFAULT_HEIGHT: u32 = 256;
pub const MAX_DIMENSION: u32 = 16_384;
/// Rows per unit of parallel work. Bands never share pixels, so the
/// output does not depend on how bands are scheduled.
const BAND_ROWS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RasterError {
    #[error("invalid image size {0}x{1}")]
    InvalidSize(u32, u32),
    #[error("image sizes differ: {left:?} vs {right:?}")]
    SizeMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("malformed PPM: {0}")]
    MalformedPpm(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("cannot start worker threads: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            threads: None,
        }
    }
}

impl RenderOptions {
    pub fn sized(width: u32, height: u32) -> Self {
        Self {
            width,
            height,
            threads: None,
        }
    }
}

fn check_size(width: u32, height: u32) -> Result<(), RasterError> {
    if width == 0 || height == 0 || width > MAX_DIMENSION || height > MAX_DIMENSION {
        Err(RasterError::InvalidSize(width, height))
    } else {
        Ok(())
    }
}

/// Run `f` on a pool with the requested number of threads.
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, RasterError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| RasterError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Render the scene from its camera.
pub fn render(scene: &Scene, options: &RenderOptions) -> Result<Image, RasterError> {
    check_size(options.width, options.height)?;
    let camera = scene.camera();
    camera.validate()?;
    let aspect = options.width as f64 / options.height as f64;
    let view_proj = Mat4::perspective(camera.fov_y_deg, aspect, camera.near, camera.far).mul(&Mat4::look_at(
        camera.eye,
        camera.target,
        camera.up,
    ));
    let lights = scene.effective_lights();
    let mut frame = Frame::new(options.width, options.height, quantize_rgb(scene.clear_color()));
    with_threads(options.threads, || {
        for object in scene.objects() {
            let prims = ObjectPrimitives::build(
                object,
                &view_proj,
                &lights,
                camera.eye,
                scene.shading(),
                &frame.viewport,
            );
            let ctx = ShadeContext {
                material: &object.material,
                lights: &lights,
                eye: camera.eye,
            };
            frame.draw(&prims, &ctx);
        }
    })?;
    Ok(frame.into_image())
}

/// Depth buffer produced by scan-converting clip-space triangles with the
/// same coverage and depth rules as `render`. Uncovered samples hold
/// `f32::INFINITY`.
pub fn depth_pass(width: u32, height: u32, triangles: &[[[f64; 4]; 3]]) -> Result<Vec<f32>, RasterError> {
    check_size(width, height)?;
    let mut frame = Frame::new(width, height, [0; 3]);
    let setup: Vec<ScreenTriangle> = triangles
        .iter()
        .flat_map(|t| setup_triangle(&frame.viewport, *t))
        .map(|tri| ScreenTriangle { tri, varying: 0 })
        .collect();
    let prims = ObjectPrimitives {
        triangles: setup,
        varyings: vec![Varying::Flat(Vec3::ZERO)],
        lines: Vec::new(),
        points: Vec::new(),
    };
    let material = Material::default();
    let ctx = ShadeContext {
        material: &material,
        lights: &[],
        eye: Vec3::ZERO,
    };
    frame.draw(&prims, &ctx);
    Ok(frame.depth)
}

struct ShadeContext<'a> {
    material: &'a Material,
    lights: &'a [Light],
    eye: Vec3,
}

/// Per source triangle attributes, interpolated with perspective-correct
/// weights.
enum Varying {
    Flat(Vec3),
    Color([Vec3; 3]),
    Surface { world: [Vec3; 3], normal: [Vec3; 3] },
}

fn blend(values: &[Vec3; 3], w: [f64; 3]) -> Vec3 {
    values[0] * w[0] + values[1] * w[1] + values[2] * w[2]
}

impl Varying {
    fn shade(&self, weights: [f64; 3], ctx: &ShadeContext<'_>) -> Vec3 {
        match self {
            Varying::Flat(c) => *c,
            Varying::Color(c) => blend(c, weights),
            Varying::Surface { world, normal } => {
                let p = blend(world, weights);
                let n = blend(normal, weights).normalize();
                illuminate(ctx.material, ctx.lights, p, n, ctx.eye, Specular::Blinn)
            }
        }
    }
}

struct ScreenTriangle {
    tri: SetupTriangle,
    varying: usize,
}

#[derive(Clone, Copy)]
struct ScreenPoint {
    x: f64,
    y: f64,
    z: f64,
    color: Vec3,
}

struct ObjectPrimitives {
    triangles: Vec<ScreenTriangle>,
    varyings: Vec<Varying>,
    lines: Vec<(ScreenPoint, ScreenPoint)>,
    points: Vec<ScreenPoint>,
}

struct WorldVertex {
    world: Vec3,
    normal: Vec3,
    clip: [f64; 4],
}

impl ObjectPrimitives {
    fn build(
        object: &SceneObject,
        view_proj: &Mat4,
        lights: &[Light],
        eye: Vec3,
        shading: ShadingModel,
        viewport: &Viewport,
    ) -> ObjectPrimitives {
        let model = &object.model_matrix;
        let normal_matrix = model.normal_matrix();
        let mvp = view_proj.mul(model);
        let mesh = &object.mesh;
        let verts: Vec<WorldVertex> = mesh
            .positions
            .iter()
            .zip(&mesh.normals)
            .map(|(p, n)| WorldVertex {
                world: model.transform_point(*p),
                normal: normal_matrix.map_or(*n, |m| m.mul_vec(*n)).normalize(),
                clip: mvp.transform4([p.x, p.y, p.z, 1.0]),
            })
            .collect();
        let vertex_colors = |model: Specular| -> Vec<Vec3> {
            verts
                .iter()
                .map(|v| illuminate(&object.material, lights, v.world, v.normal, eye, model))
                .collect()
        };
        let mut prims = ObjectPrimitives {
            triangles: Vec::new(),
            varyings: Vec::new(),
            lines: Vec::new(),
            points: Vec::new(),
        };
        match object.display_mode {
            DisplayMode::Triangles => {
                let colors = (shading == ShadingModel::Gouraud).then(|| vertex_colors(Specular::Phong));
                for tri in &mesh.triangles {
                    let [a, b, c] = tri.map(|i| &verts[i as usize]);
                    let varying = match shading {
                        ShadingModel::Flat => {
                            let centroid = (a.world + b.world + c.world) * (1.0 / 3.0);
                            let normal = face_normal(a, b, c);
                            Varying::Flat(illuminate(
                                &object.material,
                                lights,
                                centroid,
                                normal,
                                eye,
                                Specular::Phong,
                            ))
                        }
                        ShadingModel::Gouraud => {
                            let colors = colors.as_ref().expect("computed for gouraud");
                            Varying::Color(tri.map(|i| colors[i as usize]))
                        }
                        ShadingModel::BlinnPhong => Varying::Surface {
                            world: [a.world, b.world, c.world],
                            normal: [a.normal, b.normal, c.normal],
                        },
                    };
                    let setup = setup_triangle(viewport, [a.clip, b.clip, c.clip]);
                    if setup.is_empty() {
                        continue;
                    }
                    let index = prims.varyings.len();
                    prims.varyings.push(varying);
                    prims
                        .triangles
                        .extend(setup.into_iter().map(|tri| ScreenTriangle { tri, varying: index }));
                }
            }
            DisplayMode::Lines => {
                let colors = vertex_colors(Specular::for_model(shading));
                for [i, j] in &mesh.edges {
                    let (i, j) = (*i as usize, *j as usize);
                    if let Some(seg) = project_segment(viewport, &verts[i], colors[i], &verts[j], colors[j]) {
                        prims.lines.push(seg);
                    }
                }
            }
            DisplayMode::Points => {
                let colors = vertex_colors(Specular::for_model(shading));
                for (v, color) in verts.iter().zip(colors) {
                    let cv = ClipVertex {
                        clip: v.clip,
                        weights: [1.0, 0.0, 0.0],
                    };
                    if v.clip[2] + v.clip[3] < 0.0 {
                        continue;
                    }
                    let s = viewport.to_screen(&cv);
                    prims.points.push(ScreenPoint {
                        x: s.x,
                        y: s.y,
                        z: s.z,
                        color,
                    });
                }
            }
        }
        prims
    }
}

/// Geometric normal of a world-space triangle, oriented to agree with the
/// vertex normals.
fn face_normal(a: &WorldVertex, b: &WorldVertex, c: &WorldVertex) -> Vec3 {
    let n = (b.world - a.world).cross(c.world - a.world).normalize();
    let reference = a.normal + b.normal + c.normal;
    if n == Vec3::ZERO {
        reference.normalize()
    } else if n.dot(reference) < 0.0 {
        -n
    } else {
        n
    }
}

fn project_segment(
    viewport: &Viewport,
    a: &WorldVertex,
    ca: Vec3,
    b: &WorldVertex,
    cb: Vec3,
) -> Option<(ScreenPoint, ScreenPoint)> {
    let va = ClipVertex {
        clip: a.clip,
        weights: [1.0, 0.0, 0.0],
    };
    let vb = ClipVertex {
        clip: b.clip,
        weights: [0.0, 1.0, 0.0],
    };
    let (va, vb) = setup::clip_segment_near(va, vb)?;
    let to_point = |v: &ClipVertex| {
        let s = viewport.to_screen(v);
        ScreenPoint {
            x: s.x,
            y: s.y,
            z: s.z,
            color: ca * v.weights[0] + cb * v.weights[1],
        }
    };
    clip_segment_viewport(viewport, to_point(&va), to_point(&vb))
}

fn lerp_point(a: &ScreenPoint, b: &ScreenPoint, t: f64) -> ScreenPoint {
    ScreenPoint {
        x: a.x + (b.x - a.x) * t,
        y: a.y + (b.y - a.y) * t,
        z: a.z + (b.z - a.z) * t,
        color: a.color + (b.color - a.color) * t,
    }
}

/// Liang-Barsky clip of a screen segment to the image rectangle.
fn clip_segment_viewport(viewport: &Viewport, a: ScreenPoint, b: ScreenPoint) -> Option<(ScreenPoint, ScreenPoint)> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let (w, h) = (viewport.width as f64, viewport.height as f64);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (p, q) in [(-dx, a.x), (dx, w - a.x), (-dy, a.y), (dy, h - a.y)] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 || !t0.is_finite() || !t1.is_finite() {
        return None;
    }
    Some((lerp_point(&a, &b, t0), lerp_point(&a, &b, t1)))
}

struct Frame {
    viewport: Viewport,
    color: Vec<u8>,
    depth: Vec<f32>,
}

struct Band<'a> {
    y0: usize,
    y1: usize,
    width: usize,
    color: &'a mut [u8],
    depth: &'a mut [f32],
}

impl Band<'_> {
    /// Depth-test and write one fragment; coordinates are absolute.
    fn plot(&mut self, x: usize, y: usize, z: f64, shade: impl FnOnce() -> Vec3) {
        if z > 1.0 || z.is_nan() {
            return;
        }
        let i = (y - self.y0) * self.width + x;
        let z = z as f32;
        if z < self.depth[i] {
            self.depth[i] = z;
            let rgb = quantize_rgb(shade());
            self.color[i * 3..i * 3 + 3].copy_from_slice(&rgb);
        }
    }

    fn triangle(&mut self, st: &ScreenTriangle, varyings: &[Varying], ctx: &ShadeContext<'_>, max_x: usize) {
        let t = &st.tri;
        // Sample centers are at +0.5; only rows whose center can be inside.
        let row_lo = ((t.y_min - 0.5).ceil().max(self.y0 as f64)) as usize;
        let row_hi = (t.y_max - 0.5).floor().min(self.y1 as f64 - 1.0);
        let col_lo = (t.x_min - 0.5).ceil().max(0.0) as usize;
        let col_hi = (t.x_max - 0.5).floor().min(max_x as f64 - 1.0);
        if row_hi < row_lo as f64 || col_hi < col_lo as f64 {
            return;
        }
        let (row_hi, col_hi) = (row_hi as usize, col_hi as usize);
        let varying = &varyings[st.varying];
        for y in row_lo..=row_hi {
            for x in col_lo..=col_hi {
                let Some(c) = t.cover(x as f64 + 0.5, y as f64 + 0.5) else {
                    continue;
                };
                let z = t.depth(&c);
                self.plot(x, y, z, || varying.shade(t.source_weights(&c), ctx));
            }
        }
    }

    fn line(&mut self, a: &ScreenPoint, b: &ScreenPoint, max_x: usize, max_y: usize) {
        let cell = |v: f64, max: usize| (v.floor().max(0.0) as usize).min(max - 1) as i64;
        let (x0, y0) = (cell(a.x, max_x), cell(a.y, max_y));
        let (x1, y1) = (cell(b.x, max_x), cell(b.y, max_y));
        if y0.max(y1) < self.y0 as i64 || y0.min(y1) >= self.y1 as i64 {
            return;
        }
        let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
        let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
        let steps = dx.max(-dy).max(1) as f64;
        let (mut x, mut y, mut err) = (x0, y0, dx + dy);
        let mut step = 0.0;
        loop {
            if (self.y0 as i64..self.y1 as i64).contains(&y) {
                let t = step / steps;
                let p = lerp_point(a, b, t);
                self.plot(x as usize, y as usize, p.z, || p.color);
            }
            if x == x1 && y == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
            step += 1.0;
        }
    }
}

impl Frame {
    fn new(width: u32, height: u32, clear: [u8; 3]) -> Frame {
        let n = width as usize * height as usize;
        Frame {
            viewport: Viewport { width, height },
            color: clear.repeat(n),
            depth: vec![f32::INFINITY; n],
        }
    }

    fn draw(&mut self, prims: &ObjectPrimitives, ctx: &ShadeContext<'_>) {
        let width = self.viewport.width as usize;
        let height = self.viewport.height as usize;
        self.color
            .par_chunks_mut(BAND_ROWS * width * 3)
            .zip(self.depth.par_chunks_mut(BAND_ROWS * width))
            .enumerate()
            .for_each(|(index, (color, depth))| {
                let y0 = index * BAND_ROWS;
                let mut band = Band {
                    y0,
                    y1: (y0 + BAND_ROWS).min(height),
                    width,
                    color,
                    depth,
                };
                let (top, bottom) = (y0 as f64, band.y1 as f64);
                for st in &prims.triangles {
                    if st.tri.y_max >= top && st.tri.y_min <= bottom {
                        band.triangle(st, &prims.varyings, ctx, width);
                    }
                }
                for (a, b) in &prims.lines {
                    band.line(a, b, width, height);
                }
                for p in &prims.points {
                    if p.x >= 0.0 && p.y >= 0.0 && p.x < width as f64 && p.y < height as f64 {
                        let y = p.y as usize;
                        if (band.y0..band.y1).contains(&y) {
                            band.plot(p.x as usize, y, p.z, || p.color);
                        }
                    }
                }
            });
    }

    fn into_image(self) -> Image {
        Image::from_raw(self.viewport.width, self.viewport.height, self.color)
    }
}
