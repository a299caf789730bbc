use std::collections::HashMap;

use super::mesh::Mesh;
use super::obj::ObjModel;
use crate::scene::Vec3;

/// Normal assigned to a vertex no face contributes to.
pub const ISOLATED_VERTEX_NORMAL: Vec3 = Vec3::Y;

/// Turn a parsed OBJ model into a renderable mesh.
///
/// If every face corner names a normal, the file's normals are used
/// (re-normalized) and vertices are split per distinct position/normal pair.
/// Otherwise the file's vertex topology is kept and each vertex normal is the
/// normalized sum of the unnormalized normals `(p1 - p0) x (p2 - p0)` of the
/// triangles touching it, which weights each face by its area.
pub fn compute_vertex_normals(model: &ObjModel) -> Mesh {
    let explicit = !model.faces.is_empty() && model.faces.iter().flatten().all(|corner| corner.normal.is_some());
    if explicit {
        with_file_normals(model)
    } else {
        with_averaged_normals(model)
    }
}

fn with_averaged_normals(model: &ObjModel) -> Mesh {
    let positions = model.positions.clone();
    let mut sums = vec![Vec3::ZERO; positions.len()];
    let mut triangles = Vec::new();
    for tri in model.triangles() {
        let idx = tri.map(|c| c.position);
        let [p0, p1, p2] = idx.map(|i| positions[i]);
        let face = (p1 - p0).cross(p2 - p0);
        for i in idx {
            sums[i] += face;
        }
        triangles.push(idx.map(|i| i as u32));
    }
    let normals = sums
        .into_iter()
        .map(|sum| {
            let n = sum.normalize();
            if n == Vec3::ZERO {
                ISOLATED_VERTEX_NORMAL
            } else {
                n
            }
        })
        .collect();
    Mesh::from_triangles(positions, normals, triangles)
}

fn with_file_normals(model: &ObjModel) -> Mesh {
    let mut positions = Vec::new();
    let mut normals = Vec::new();
    let mut remap: HashMap<(usize, usize), u32> = HashMap::new();
    let mut triangles = Vec::new();
    for tri in model.triangles() {
        let idx = tri.map(|corner| {
            let normal_index = corner.normal.expect("checked by caller");
            *remap.entry((corner.position, normal_index)).or_insert_with(|| {
                positions.push(model.positions[corner.position]);
                let n = model.normals[normal_index].normalize();
                normals.push(if n == Vec3::ZERO { ISOLATED_VERTEX_NORMAL } else { n });
                (positions.len() - 1) as u32
            })
        });
        triangles.push(idx);
    }
    Mesh::from_triangles(positions, normals, triangles)
}

#[cfg(test)]
mod tests {
    use super::super::obj::parse_obj;
    use super::*;

    #[test]
    fn single_ccw_triangle_faces_plus_z() {
        let m = parse_obj(b"v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3").unwrap();
        let mesh = compute_vertex_normals(&m);
        assert!(mesh.normals.iter().all(|n| *n == Vec3::Z));
    }

    #[test]
    fn explicit_normals_pass_through_normalized() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 2\nvn 0 3 4\nf 1//1 2//1 3//2\n";
        let mesh = compute_vertex_normals(&parse_obj(src.as_bytes()).unwrap());
        assert_eq!(mesh.normals, vec![Vec3::Z, Vec3::Z, Vec3::new(0.0, 0.6, 0.8)]);
        mesh.validate().unwrap();
    }

    #[test]
    fn explicit_normals_split_shared_positions() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nvn 0 0 1\nvn 1 0 0\n\
                   f 1//1 2//1 3//1\nf 1//2 3//2 4//2\n";
        let mesh = compute_vertex_normals(&parse_obj(src.as_bytes()).unwrap());
        assert_eq!(mesh.positions.len(), 6);
        assert_eq!(mesh.triangles, vec![[0, 1, 2], [3, 4, 5]]);
    }

    #[test]
    fn partial_normals_fall_back_to_averaging() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 1 0 0\nf 1//1 2 3\n";
        let mesh = compute_vertex_normals(&parse_obj(src.as_bytes()).unwrap());
        assert!(mesh.normals.iter().all(|n| *n == Vec3::Z));
    }

    #[test]
    fn isolated_and_degenerate_vertices_get_default_normal() {
        let src = "v 0 0 0\nv 1 0 0\nv 2 0 0\nv 5 5 5\nf 1 2 3\n";
        let mesh = compute_vertex_normals(&parse_obj(src.as_bytes()).unwrap());
        assert!(mesh.normals.iter().all(|n| *n == ISOLATED_VERTEX_NORMAL));
        mesh.validate().unwrap();
    }
}
