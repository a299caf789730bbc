//! Built-in primitive meshes, OBJ loading and vertex-normal averaging.

mod mesh;
mod normals;
mod obj;
mod primitives;

pub use mesh::{derive_edges, Mesh, MeshError, UNIT_NORMAL_TOLERANCE};
pub use normals::{compute_vertex_normals, ISOLATED_VERTEX_NORMAL};
pub use obj::{parse_obj, FaceVertex, ObjError, ObjModel};
pub use primitives::{
    gen_cone, gen_cube, gen_cylinder, gen_grid, gen_sphere, CONE_SLICES, CYLINDER_SLICES, GRID_CELLS, SPHERE_SLICES,
    SPHERE_STACKS,
};

/// Parse OBJ bytes and build a mesh from them. A file without faces is an
/// error since there would be nothing to draw.
pub fn load_obj_mesh(bytes: &[u8]) -> Result<Mesh, ObjError> {
    let model = parse_obj(bytes)?;
    if model.faces.is_empty() {
        let line = 1 + bytes.iter().filter(|&&b| b == b'\n').count();
        return Err(ObjError {
            line,
            message: "model has no faces".to_string(),
        });
    }
    Ok(compute_vertex_normals(&model))
}
