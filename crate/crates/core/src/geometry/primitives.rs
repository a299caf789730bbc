//! The five built-in meshes. All are centered at the origin, counter-clockwise
//! wound when seen from outside, and carry unit normals.

use std::f64::consts::PI;

use super::mesh::{derive_edges, Mesh};
use crate::scene::Vec3;

pub const SPHERE_SLICES: u32 = 40;
pub const SPHERE_STACKS: u32 = 36;
pub const CONE_SLICES: u32 = 32;
pub const CYLINDER_SLICES: u32 = 32;
pub const GRID_CELLS: u32 = 10;

#[derive(Default)]
struct Builder {
    positions: Vec<Vec3>,
    normals: Vec<Vec3>,
    triangles: Vec<[u32; 3]>,
}

impl Builder {
    fn vertex(&mut self, position: Vec3, normal: Vec3) -> u32 {
        self.positions.push(position);
        self.normals.push(normal);
        (self.positions.len() - 1) as u32
    }

    fn finish_with_edges(self, edges: Vec<[u32; 2]>) -> Mesh {
        Mesh {
            positions: self.positions,
            normals: self.normals,
            triangles: self.triangles,
            edges,
        }
    }

    fn finish(self) -> Mesh {
        let edges = derive_edges(&self.triangles);
        self.finish_with_edges(edges)
    }
}

/// Unit cube (side 1) with four vertices per face so faces stay hard-edged.
pub fn gen_cube() -> Mesh {
    // (normal, u, v) with u x v = normal
    let faces = [
        (Vec3::X, Vec3::Y, Vec3::Z),
        (-Vec3::X, Vec3::Z, Vec3::Y),
        (Vec3::Y, Vec3::Z, Vec3::X),
        (-Vec3::Y, Vec3::X, Vec3::Z),
        (Vec3::Z, Vec3::X, Vec3::Y),
        (-Vec3::Z, Vec3::Y, Vec3::X),
    ];
    let mut b = Builder::default();
    let mut edges = Vec::new();
    for (n, u, v) in faces {
        let center = n * 0.5;
        let corners = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)];
        let base = b.positions.len() as u32;
        for (su, sv) in corners {
            b.vertex(center + u * su + v * sv, n);
        }
        b.triangles.push([base, base + 1, base + 2]);
        b.triangles.push([base, base + 2, base + 3]);
        for k in 0..4 {
            let (p, q) = (base + k, base + (k + 1) % 4);
            edges.push([p.min(q), p.max(q)]);
        }
    }
    b.finish_with_edges(edges)
}

/// Unit-radius latitude/longitude sphere. Every (stack, slice) cell yields
/// two triangles, including the degenerate halves at the poles, so the
/// triangle count is `2 * slices * stacks`.
pub fn gen_sphere(slices: u32, stacks: u32) -> Mesh {
    assert!(slices >= 3 && stacks >= 2, "sphere needs slices >= 3 and stacks >= 2");
    let mut b = Builder::default();
    let row = slices + 1;
    for i in 0..=stacks {
        let phi = PI * i as f64 / stacks as f64;
        for j in 0..=slices {
            let theta = 2.0 * PI * j as f64 / slices as f64;
            let position = if i == 0 {
                Vec3::Y
            } else if i == stacks {
                -Vec3::Y
            } else {
                Vec3::new(phi.sin() * theta.cos(), phi.cos(), -phi.sin() * theta.sin()).normalize()
            };
            b.vertex(position, position);
        }
    }
    let index = |i: u32, j: u32| i * row + j;
    let mut edges = Vec::new();
    for i in 0..stacks {
        for j in 0..slices {
            let (a, bl, br, ar) = (index(i, j), index(i + 1, j), index(i + 1, j + 1), index(i, j + 1));
            b.triangles.push([a, bl, br]);
            b.triangles.push([a, br, ar]);
            edges.push([a, bl]);
            if i > 0 {
                edges.push([a, ar]);
            }
        }
    }
    edges.sort_unstable();
    b.finish_with_edges(edges)
}

fn ring_point(theta: f64, radius: f64, y: f64) -> Vec3 {
    Vec3::new(radius * theta.cos(), y, -radius * theta.sin())
}

fn slice_angle(j: f64, slices: u32) -> f64 {
    2.0 * PI * j / slices as f64
}

/// Flat disc at height `y` facing `+y` (`up`) or `-y`.
fn cap(b: &mut Builder, slices: u32, y: f64, up: bool) {
    let normal = if up { Vec3::Y } else { -Vec3::Y };
    let center = b.vertex(Vec3::new(0.0, y, 0.0), normal);
    let first = b.positions.len() as u32;
    for j in 0..=slices {
        b.vertex(ring_point(slice_angle(j as f64, slices), 1.0, y), normal);
    }
    for j in 0..slices {
        let (r0, r1) = (first + j, first + j + 1);
        b.triangles.push(if up { [center, r0, r1] } else { [center, r1, r0] });
    }
}

/// Cone of radius 1 and height 1: base at y = -0.5, apex at y = +0.5.
pub fn gen_cone(slices: u32) -> Mesh {
    assert!(slices >= 3, "cone needs slices >= 3");
    let mut b = Builder::default();
    // slant normal for radius 1, height 1
    let side_normal = |theta: f64| Vec3::new(theta.cos(), 1.0, -theta.sin()).normalize();
    let rim = b.positions.len() as u32;
    for j in 0..=slices {
        let theta = slice_angle(j as f64, slices);
        b.vertex(ring_point(theta, 1.0, -0.5), side_normal(theta));
    }
    let apex = b.positions.len() as u32;
    for j in 0..slices {
        let theta = slice_angle(j as f64 + 0.5, slices);
        b.vertex(Vec3::new(0.0, 0.5, 0.0), side_normal(theta));
    }
    for j in 0..slices {
        b.triangles.push([rim + j, rim + j + 1, apex + j]);
    }
    cap(&mut b, slices, -0.5, false);
    b.finish()
}

/// Cylinder of radius 1 and height 1 with both ends capped.
pub fn gen_cylinder(slices: u32) -> Mesh {
    assert!(slices >= 3, "cylinder needs slices >= 3");
    let mut b = Builder::default();
    let bottom = b.positions.len() as u32;
    for j in 0..=slices {
        let theta = slice_angle(j as f64, slices);
        b.vertex(ring_point(theta, 1.0, -0.5), ring_point(theta, 1.0, 0.0));
    }
    let top = b.positions.len() as u32;
    for j in 0..=slices {
        let theta = slice_angle(j as f64, slices);
        b.vertex(ring_point(theta, 1.0, 0.5), ring_point(theta, 1.0, 0.0));
    }
    for j in 0..slices {
        b.triangles.push([bottom + j, bottom + j + 1, top + j + 1]);
        b.triangles.push([bottom + j, top + j + 1, top + j]);
    }
    cap(&mut b, slices, -0.5, false);
    cap(&mut b, slices, 0.5, true);
    b.finish()
}

/// `cells x cells` unit squares on the XZ plane. The edge list holds only
/// the cell borders so wireframe display shows a plain grid.
pub fn gen_grid(cells: u32) -> Mesh {
    assert!(cells >= 1, "grid needs at least one cell");
    let mut b = Builder::default();
    let half = cells as f64 / 2.0;
    let row = cells + 1;
    for iz in 0..=cells {
        for ix in 0..=cells {
            b.vertex(Vec3::new(ix as f64 - half, 0.0, iz as f64 - half), Vec3::Y);
        }
    }
    let index = |ix: u32, iz: u32| iz * row + ix;
    let mut edges = Vec::new();
    for iz in 0..=cells {
        for ix in 0..=cells {
            if ix < cells {
                edges.push([index(ix, iz), index(ix + 1, iz)]);
            }
            if iz < cells {
                edges.push([index(ix, iz), index(ix, iz + 1)]);
            }
        }
    }
    for iz in 0..cells {
        for ix in 0..cells {
            let (p0, p1, p2, p3) = (
                index(ix, iz),
                index(ix, iz + 1),
                index(ix + 1, iz + 1),
                index(ix + 1, iz),
            );
            b.triangles.push([p0, p1, p2]);
            b.triangles.push([p0, p2, p3]);
        }
    }
    edges.sort_unstable();
    b.finish_with_edges(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face_normal(m: &Mesh, t: [u32; 3]) -> Vec3 {
        let [a, b, c] = t.map(|i| m.positions[i as usize]);
        (b - a).cross(c - a)
    }

    /// Non-degenerate triangles must be wound so their geometric normal
    /// agrees with the vertex normals.
    fn assert_outward(m: &Mesh) {
        for &t in &m.triangles {
            let n = face_normal(m, t);
            if n.length() < 1e-12 {
                continue;
            }
            let avg = t.iter().fold(Vec3::ZERO, |acc, &i| acc + m.normals[i as usize]);
            assert!(n.dot(avg) > 0.0, "triangle {t:?} faces inward");
        }
    }

    #[test]
    fn cube_shape() {
        let cube = gen_cube();
        cube.validate().unwrap();
        assert_eq!(cube.positions.len(), 24);
        assert_eq!(cube.triangles.len(), 12);
        assert_eq!(cube.edges.len(), 24);
        for n in &cube.normals {
            let axis = [n.x, n.y, n.z].iter().filter(|c| c.abs() == 1.0).count();
            let zeros = [n.x, n.y, n.z].iter().filter(|c| **c == 0.0).count();
            assert_eq!((axis, zeros), (1, 2), "{n:?}");
        }
        for p in &cube.positions {
            assert!([p.x, p.y, p.z].iter().all(|c| c.abs() == 0.5));
        }
        assert_outward(&cube);
    }

    #[test]
    fn sphere_default_triangle_count() {
        let sphere = gen_sphere(SPHERE_SLICES, SPHERE_STACKS);
        assert_eq!(sphere.triangles.len(), 2880);
        sphere.validate().unwrap();
        for (p, n) in sphere.positions.iter().zip(&sphere.normals) {
            assert!((p.length() - 1.0).abs() < 1e-9);
            assert!(p.max_abs_diff(*n) < 1e-9);
        }
        assert_outward(&sphere);
    }

    #[test]
    fn sphere_count_formula_over_small_grid() {
        for slices in 3..=8 {
            for stacks in 2..=8 {
                let s = gen_sphere(slices, stacks);
                assert_eq!(s.triangles.len() as u32, 2 * slices * stacks);
                s.validate().unwrap();
            }
        }
    }

    #[test]
    fn cone_shape() {
        let cone = gen_cone(CONE_SLICES);
        cone.validate().unwrap();
        let rim = cone
            .positions
            .iter()
            .filter(|p| p.y == -0.5 && (p.x.hypot(p.z) - 1.0).abs() < 1e-12)
            .count();
        assert!(rim >= 33, "{rim}");
        assert!(cone.positions.iter().any(|p| *p == Vec3::new(0.0, 0.5, 0.0)));
        assert_outward(&cone);
    }

    #[test]
    fn cylinder_shape() {
        let cyl = gen_cylinder(CYLINDER_SLICES);
        cyl.validate().unwrap();
        let side: Vec<_> = cyl.normals.iter().filter(|n| n.y.abs() < 0.5).collect();
        assert!(!side.is_empty());
        assert!(side.iter().all(|n| n.y.abs() < 1e-9));
        assert!(cyl.normals.contains(&Vec3::Y));
        assert!(cyl.normals.iter().any(|n| *n == -Vec3::Y));
        assert_outward(&cyl);
    }

    #[test]
    fn grid_extent() {
        let grid = gen_grid(GRID_CELLS);
        grid.validate().unwrap();
        let min_x = grid.positions.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
        let max_x = grid.positions.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        let min_z = grid.positions.iter().map(|p| p.z).fold(f64::INFINITY, f64::min);
        let max_z = grid.positions.iter().map(|p| p.z).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((min_x, max_x, min_z, max_z), (-5.0, 5.0, -5.0, 5.0));
        assert!(grid.positions.iter().all(|p| p.y == 0.0));
        assert_eq!(grid.triangles.len(), 200);
        assert_eq!(grid.edges.len(), 2 * 10 * 11);
        assert_outward(&grid);
    }
}
