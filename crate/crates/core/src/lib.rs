pub mod assets;
pub mod boundary;
pub mod cli;
pub mod codegen;
pub mod geometry;
pub mod interp;
pub mod lang;
pub mod raster;
pub mod scene;
pub mod shading;
