use std::collections::BTreeSet;

use thiserror::Error;

use crate::scene::Vec3;

/// Indexed geometry with one unit normal per position.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub positions: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
    /// Unique undirected index pairs drawn in `Lines` mode.
    pub edges: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("positions ({positions}) and normals ({normals}) differ in length")]
    LengthMismatch { positions: usize, normals: usize },
    #[error("index {index} out of range for {len} positions")]
    IndexOutOfRange { index: u32, len: usize },
    #[error("normal {index} is not unit length (|n| = {length})")]
    NotUnit { index: usize, length: f64 },
    #[error("non-finite coordinate at vertex {index}")]
    NonFinite { index: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
}

pub const UNIT_NORMAL_TOLERANCE: f64 = 1e-6;

impl Mesh {
    /// Build a mesh whose edge list is derived from its triangles.
    pub fn from_triangles(positions: Vec<Vec3>, normals: Vec<Vec3>, triangles: Vec<[u32; 3]>) -> Self {
        let edges = derive_edges(&triangles);
        Self {
            positions,
            normals,
            triangles,
            edges,
        }
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Check index bounds, unit normals, finiteness and edge uniqueness.
    pub fn validate(&self) -> Result<(), MeshError> {
        let len = self.positions.len();
        if self.normals.len() != len {
            return Err(MeshError::LengthMismatch {
                positions: len,
                normals: self.normals.len(),
            });
        }
        for (index, (p, n)) in self.positions.iter().zip(&self.normals).enumerate() {
            if !p.is_finite() || !n.is_finite() {
                return Err(MeshError::NonFinite { index });
            }
            let length = n.length();
            if (length - 1.0).abs() >= UNIT_NORMAL_TOLERANCE {
                return Err(MeshError::NotUnit { index, length });
            }
        }
        let check = |index: u32| {
            if (index as usize) < len {
                Ok(())
            } else {
                Err(MeshError::IndexOutOfRange { index, len })
            }
        };
        for tri in &self.triangles {
            tri.iter().copied().try_for_each(check)?;
        }
        let mut seen = BTreeSet::new();
        for &[a, b] in &self.edges {
            check(a)?;
            check(b)?;
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(MeshError::DuplicateEdge(a, b));
            }
        }
        Ok(())
    }
}

/// Unique undirected edges of a triangle list, sorted, skipping
/// self-loops from degenerate triangles.
pub fn derive_edges(triangles: &[[u32; 3]]) -> Vec<[u32; 2]> {
    let mut set = BTreeSet::new();
    for &[a, b, c] in triangles {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
    }
    set.into_iter().map(|(u, v)| [u, v]).collect()
}
