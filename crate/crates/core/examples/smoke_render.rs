use scenelua::assets::NoAssets;
use scenelua::interp::run_source;
use scenelua::raster::{render, RenderOptions};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let src = std::fs::read_to_string(&args[1]).unwrap();
    let scene = run_source(&src, &NoAssets).unwrap().scene;
    let img = render(&scene, &RenderOptions::sized(256, 256)).unwrap();
    img.write_ppm(std::path::Path::new(&args[2])).unwrap();
}
