use proptest::prelude::*;

use scenelua::assets::NoAssets;
use scenelua::interp::run_source;
use scenelua::raster::{depth_pass, image_diff, render, Image, RenderOptions};
use scenelua::scene::Scene;
use scenelua::shading::quantize_rgb;

fn scene(src: &str) -> Scene {
    run_source(src, &NoAssets).unwrap().scene
}

fn draw(src: &str, w: u32, h: u32) -> Image {
    render(&scene(src), &RenderOptions::sized(w, h)).unwrap()
}

fn background(s: &Scene) -> [u8; 3] {
    quantize_rgb(s.clear_color())
}

/// Independent coverage oracle: solve for the barycentric coordinates of
/// the sample with Cramer's rule. Returns `None` outside, and flags
/// samples too close to an edge to decide.
fn oracle_depth(tri: &[[f64; 3]; 3], px: f64, py: f64) -> Result<Option<f64>, ()> {
    let [a, b, c] = tri;
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    if det.abs() < 1e-9 {
        return Ok(None);
    }
    let u = ((px - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (py - a[1])) / det;
    let v = ((b[0] - a[0]) * (py - a[1]) - (px - a[0]) * (b[1] - a[1])) / det;
    let bary = [1.0 - u - v, u, v];
    const EPS: f64 = 1e-7;
    if bary.iter().any(|l| l.abs() < EPS) {
        return Err(());
    }
    if bary.iter().all(|l| *l > 0.0) {
        Ok(Some(bary[0] * a[2] + bary[1] * b[2] + bary[2] * c[2]))
    } else {
        Ok(None)
    }
}

fn ndc_triangle() -> impl Strategy<Value = [[f64; 3]; 3]> {
    let v = || (-1.2..1.2f64, -1.2..1.2f64, -0.99..0.99f64).prop_map(|(x, y, z)| [x, y, z]);
    [v(), v(), v()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn depth_buffer_matches_brute_force(tris in prop::collection::vec(ndc_triangle(), 1..6),
                                        w in 0.5..3.0f64) {
        let (width, height) = (24u32, 20u32);
        // Same triangles at a uniform clip-space scale w: the perspective
        // divide must undo it.
        let clip: Vec<[[f64; 4]; 3]> = tris
            .iter()
            .map(|t| t.map(|v| [v[0] * w, v[1] * w, v[2] * w, w]))
            .collect();
        let depth = depth_pass(width, height, &clip).unwrap();
        for py in 0..height {
            for px in 0..width {
                let sx = (px as f64 + 0.5) / width as f64 * 2.0 - 1.0;
                let sy = 1.0 - (py as f64 + 0.5) / height as f64 * 2.0;
                let mut best: Option<f64> = None;
                let mut ambiguous = false;
                for t in &tris {
                    match oracle_depth(t, sx, sy) {
                        Ok(Some(z)) => best = Some(best.map_or(z, |b: f64| b.min(z))),
                        Ok(None) => {}
                        Err(()) => ambiguous = true,
                    }
                }
                if ambiguous {
                    continue;
                }
                let got = depth[(py * width + px) as usize];
                match best {
                    None => prop_assert!(got.is_infinite(), "({px},{py}) got {got}"),
                    Some(z) => prop_assert!((got as f64 - z).abs() < 1e-5, "({px},{py}) got {got} want {z}"),
                }
            }
        }
    }
}

#[test]
fn nearer_triangle_wins_regardless_of_order() {
    let near = [[-1.0, -1.0, -0.5, 1.0], [3.0, -1.0, -0.5, 1.0], [-1.0, 3.0, -0.5, 1.0]];
    let far = [[-1.0, -1.0, 0.5, 1.0], [3.0, -1.0, 0.5, 1.0], [-1.0, 3.0, 0.5, 1.0]];
    let a = depth_pass(8, 8, &[near, far]).unwrap();
    let b = depth_pass(8, 8, &[far, near]).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|z| *z == -0.5));
}

#[test]
fn geometry_beyond_far_plane_is_discarded() {
    let beyond = [[-1.0, -1.0, 1.5, 1.0], [3.0, -1.0, 1.5, 1.0], [-1.0, 3.0, 1.5, 1.0]];
    assert!(depth_pass(4, 4, &[beyond]).unwrap().iter().all(|z| z.is_infinite()));
}

#[test]
fn triangle_crossing_near_plane_is_clipped_not_dropped() {
    // Apex in front of the eye but past the near plane (z + w < 0).
    let tri = [[-1.0, -1.0, 0.5, 1.0], [1.0, -1.0, 0.5, 1.0], [0.0, 1.0, -1.5, 0.5]];
    let depth = depth_pass(16, 16, &[tri]).unwrap();
    let covered = depth.iter().filter(|z| z.is_finite()).count();
    assert!(covered > 40, "{covered}");
    // Nothing above the clipped edge at ndc y ~ 0.29.
    assert!(depth[..16 * 5].iter().all(|z| z.is_infinite()));
    assert!(depth
        .iter()
        .filter(|z| z.is_finite())
        .all(|z| *z >= -1.0 - 1e-6 && *z <= 1.0));
}

#[test]
fn ambient_only_scene_is_exactly_the_ambient_product() {
    let src = r#"DrawSphere("triangles")
AmbientComponent({0.5, 0.25, 1})
DrawPointLight({2, 4, 3})
AmbientComponent({1, 1, 1})
DiffuseComponent({0, 0, 0})
SpecularComponent({0, 0, 0})"#;
    let s = scene(src);
    let img = render(&s, &RenderOptions::default()).unwrap();
    let bg = background(&s);
    let expected = [128, 64, 255];
    let mut lit = 0;
    for p in img.pixels() {
        if p != bg {
            assert_eq!(p, expected);
            lit += 1;
        }
    }
    assert!(lit > 1000, "sphere covers {lit} pixels");
}

fn cube_under_directional_light(model: &str, specular: Option<&str>) -> Image {
    let spec = specular
        .map(|s| format!("SpecularComponent({s})\n"))
        .unwrap_or_default();
    let src = format!(
        "ChangeLighting(\"{model}\")\nDrawCube(\"triangles\")\nRotateObject(20, {{0, 1, 0}})\n{spec}\
         DrawDirectionalLight({{3, 3, 5}}, {{-3, -3, -5}})\n"
    );
    draw(&src, 256, 256)
}

#[test]
fn flat_and_gouraud_agree_on_a_split_vertex_cube() {
    for specular in [None, Some("{0, 0, 0}")] {
        let flat = cube_under_directional_light("flat", specular);
        let gouraud = cube_under_directional_light("gouraud", specular);
        let diff = image_diff(&flat, &gouraud).unwrap();
        assert!(diff.max_channel_delta <= 1, "{specular:?}: {diff:?}");
    }
}

#[test]
fn shading_models_differ_where_highlights_vary() {
    let src = |m: &str| format!("ChangeLighting('{m}') DrawSphere('triangles') DrawPointLight({{1, 3, 4}})");
    let flat = draw(&src("flat"), 128, 128);
    let blinn = draw(&src("blinn-phong"), 128, 128);
    assert!(image_diff(&flat, &blinn).unwrap().max_channel_delta > 10);
}

#[test]
fn output_is_identical_across_thread_counts() {
    let src =
        "for i = 0, 4 do DrawSphere('triangles') TranslateObject({i - 2, 0, 0}) ScaleObject({0.6, 0.6, 0.6}) end\n\
               DrawGrid('lines') DrawCone('points') DrawSpotLight({0, 4, 0}, {0, -1, 0}, 40, 4)";
    let s = scene(src);
    let base = render(
        &s,
        &RenderOptions {
            width: 200,
            height: 150,
            threads: Some(1),
        },
    )
    .unwrap();
    for threads in [Some(2), Some(4), Some(7), None] {
        let img = render(
            &s,
            &RenderOptions {
                width: 200,
                height: 150,
                threads,
            },
        )
        .unwrap();
        assert_eq!(img.to_ppm(), base.to_ppm(), "{threads:?}");
    }
}

#[test]
fn coverage_scales_with_resolution() {
    let s = scene("DrawSphere('triangles')");
    let count = |w: u32| {
        let img = render(&s, &RenderOptions::sized(w, w)).unwrap();
        img.pixels().filter(|p| *p != background(&s)).count() as f64
    };
    let (small, large) = (count(64), count(256));
    let ratio = large / small;
    assert!((ratio - 16.0).abs() < 0.5, "ratio {ratio}");
}

#[test]
fn empty_scene_is_clear_color() {
    let s = scene("");
    let img = render(&s, &RenderOptions::sized(10, 7)).unwrap();
    assert_eq!((img.width(), img.height()), (10, 7));
    assert!(img.pixels().all(|p| p == [38, 38, 38]));
}

#[test]
fn invalid_sizes_rejected() {
    let s = scene("");
    assert!(render(&s, &RenderOptions::sized(0, 10)).is_err());
    assert!(render(&s, &RenderOptions::sized(10, 100_000)).is_err());
}

#[test]
fn wireframe_and_points_only_touch_mesh_pixels() {
    let lines = draw("DrawCube('lines')", 64, 64);
    let points = draw("DrawCube('points')", 64, 64);
    let solid = draw("DrawCube('triangles')", 64, 64);
    let lit = |img: &Image| img.pixels().filter(|p| *p != [38, 38, 38]).count();
    assert!(lit(&points) <= 8);
    assert!(lit(&points) >= 6);
    assert!(lit(&lines) > lit(&points));
    assert!(lit(&solid) > lit(&lines));
}
