use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::assets::NoAssets;
use crate::interp::{evaluate, evaluation_count};
use crate::lang::{parse_count, parse_source};
use crate::raster::{render, Image, RasterError, RenderOptions};
use crate::scene::Scene;

pub const DEFAULT_BENCH_COUNTS: [u32; 3] = [10, 100, 1000];

/// Script with `count` spheres laid out on a square grid that fits the
/// default view.
pub fn bench_script(count: usize) -> String {
    let side = (count as f64).sqrt().ceil().max(1.0) as usize;
    let spacing = 4.0 / side as f64;
    let scale = spacing * 0.4;
    let mut script = String::new();
    for i in 0..count {
        let (row, column) = (i / side, i % side);
        let x = (column as f64 + 0.5) * spacing - 2.0;
        let z = (row as f64 + 0.5) * spacing - 2.0;
        let _ = writeln!(
            script,
            "DrawSphere(\"triangles\")\nTranslateObject({{{x}, 0, {z}}})\nScaleObject({{{scale}, {scale}, {scale}}})"
        );
    }
    script
}

/// Renders an already built scene. It owns no source text or syntax tree,
/// so drawing a frame cannot interpret anything.
pub struct FrameLoop {
    scene: Scene,
    options: RenderOptions,
}

impl FrameLoop {
    pub fn new(scene: Scene, options: RenderOptions) -> Self {
        Self { scene, options }
    }

    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    pub fn render_frame(&self) -> Result<Image, RasterError> {
        render(&self.scene, &self.options)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRun {
    pub count: usize,
    pub triangles: usize,
    pub parse_ms: f64,
    pub evaluate_ms: f64,
    pub first_frame_ms: f64,
    pub second_frame_ms: f64,
    /// Parses and evaluations that happened while the two frames rendered.
    pub parses_during_frames: u64,
    pub evaluations_during_frames: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub width: u32,
    pub height: u32,
    pub runs: Vec<BenchRun>,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

pub fn bench_one(count: usize, options: &RenderOptions) -> Result<BenchRun, RasterError> {
    let script = bench_script(count);

    let start = Instant::now();
    let chunk = parse_source(&script).expect("generated bench script parses");
    let parse_ms = millis(start);

    let start = Instant::now();
    let scene = evaluate(&chunk, &NoAssets).expect("generated bench script runs").scene;
    let evaluate_ms = millis(start);

    let frames = FrameLoop::new(scene, *options);
    let (parses, evaluations) = (parse_count(), evaluation_count());
    let start = Instant::now();
    frames.render_frame()?;
    let first_frame_ms = millis(start);
    let start = Instant::now();
    frames.render_frame()?;
    let second_frame_ms = millis(start);
    let parses_during_frames = parse_count() - parses;
    let evaluations_during_frames = evaluation_count() - evaluations;
    assert_eq!(
        (parses_during_frames, evaluations_during_frames),
        (0, 0),
        "rendering must not interpret"
    );

    Ok(BenchRun {
        count,
        triangles: frames.scene().triangle_count(),
        parse_ms,
        evaluate_ms,
        first_frame_ms,
        second_frame_ms,
        parses_during_frames,
        evaluations_during_frames,
    })
}

pub fn run_bench(counts: &[usize], options: &RenderOptions) -> Result<BenchReport, RasterError> {
    let runs = counts
        .iter()
        .map(|&count| bench_one(count, options))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BenchReport {
        width: options.width,
        height: options.height,
        runs,
    })
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "spheres at {}x{}\n{:>8} {:>10} {:>10} {:>12} {:>13} {:>13}\n",
            self.width, self.height, "count", "triangles", "parse ms", "evaluate ms", "frame 1 ms", "frame 2 ms"
        );
        for run in &self.runs {
            let _ = writeln!(
                out,
                "{:>8} {:>10} {:>10.2} {:>12.2} {:>13.2} {:>13.2}",
                run.count, run.triangles, run.parse_ms, run.evaluate_ms, run.first_frame_ms, run.second_frame_ms
            );
        }
        out.pop();
        out
    }
}
