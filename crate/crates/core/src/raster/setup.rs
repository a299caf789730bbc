//! Clip-space to screen-space conversion: near-plane clipping, viewport
//! mapping and triangle setup.

/// A vertex in clip space, tagged with its weights relative to the three
/// corners of the primitive it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClipVertex {
    pub clip: [f64; 4],
    pub weights: [f64; 3],
}

/// A vertex after the perspective divide. `x`/`y` are in pixels with y = 0
/// at the top edge; `z` is normalized device depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenVertex {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub inv_w: f64,
    pub weights: [f64; 3],
}

fn near_distance(v: &ClipVertex) -> f64 {
    v.clip[2] + v.clip[3]
}

fn lerp_vertex(a: &ClipVertex, b: &ClipVertex, t: f64) -> ClipVertex {
    let mut clip = [0.0; 4];
    for (i, c) in clip.iter_mut().enumerate() {
        *c = a.clip[i] + (b.clip[i] - a.clip[i]) * t;
    }
    let mut weights = [0.0; 3];
    for (i, w) in weights.iter_mut().enumerate() {
        *w = a.weights[i] + (b.weights[i] - a.weights[i]) * t;
    }
    ClipVertex { clip, weights }
}

/// Clip a polygon against the near plane `z + w >= 0` (Sutherland-Hodgman).
pub fn clip_near(polygon: &[ClipVertex]) -> Vec<ClipVertex> {
    let mut out = Vec::with_capacity(polygon.len() + 1);
    for (i, cur) in polygon.iter().enumerate() {
        let next = &polygon[(i + 1) % polygon.len()];
        let (dc, dn) = (near_distance(cur), near_distance(next));
        if dc >= 0.0 {
            out.push(*cur);
        }
        if (dc >= 0.0) != (dn >= 0.0) {
            out.push(lerp_vertex(cur, next, dc / (dc - dn)));
        }
    }
    out
}

/// Clip a segment against the near plane; `None` if fully behind it.
pub fn clip_segment_near(a: ClipVertex, b: ClipVertex) -> Option<(ClipVertex, ClipVertex)> {
    let (da, db) = (near_distance(&a), near_distance(&b));
    match (da >= 0.0, db >= 0.0) {
        (true, true) => Some((a, b)),
        (false, false) => None,
        (true, false) => Some((a, lerp_vertex(&a, &b, da / (da - db)))),
        (false, true) => Some((lerp_vertex(&a, &b, da / (da - db)), b)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub width: u32,
    pub height: u32,
}

impl Viewport {
    pub fn to_screen(&self, v: &ClipVertex) -> ScreenVertex {
        let w = v.clip[3];
        let inv_w = 1.0 / w;
        let (nx, ny, nz) = (v.clip[0] * inv_w, v.clip[1] * inv_w, v.clip[2] * inv_w);
        ScreenVertex {
            x: (nx + 1.0) * 0.5 * self.width as f64,
            y: (1.0 - ny) * 0.5 * self.height as f64,
            z: nz,
            inv_w,
            weights: v.weights,
        }
    }
}

/// Twice the signed area of (a, b, p); positive when p lies on the interior
/// side of edge a->b for a triangle with positive area.
pub fn edge(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0)
}

/// Top-left fill rule for an edge of a positive-area triangle.
pub fn is_top_left(a: (f64, f64), b: (f64, f64)) -> bool {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    (dy == 0.0 && dx > 0.0) || dy < 0.0
}

/// Screen triangle ready for scan conversion: positive area, edge data
/// precomputed.
#[derive(Debug, Clone, Copy)]
pub struct SetupTriangle {
    pub v: [ScreenVertex; 3],
    pub area: f64,
    top_left: [bool; 3],
    pub y_min: f64,
    pub y_max: f64,
    pub x_min: f64,
    pub x_max: f64,
}

/// Pixel coverage result with screen-space barycentrics.
pub struct Coverage {
    pub lambda: [f64; 3],
}

impl SetupTriangle {
    /// `None` for degenerate (zero-area or non-finite) triangles.
    pub fn new(mut v: [ScreenVertex; 3]) -> Option<SetupTriangle> {
        let p = |s: &ScreenVertex| (s.x, s.y);
        let mut area = edge(p(&v[0]), p(&v[1]), p(&v[2]));
        if !area.is_finite() || area == 0.0 {
            return None;
        }
        if area < 0.0 {
            v.swap(1, 2);
            area = -area;
        }
        let top_left = [
            is_top_left(p(&v[1]), p(&v[2])),
            is_top_left(p(&v[2]), p(&v[0])),
            is_top_left(p(&v[0]), p(&v[1])),
        ];
        let xs = [v[0].x, v[1].x, v[2].x];
        let ys = [v[0].y, v[1].y, v[2].y];
        Some(SetupTriangle {
            v,
            area,
            top_left,
            y_min: ys.iter().copied().fold(f64::INFINITY, f64::min),
            y_max: ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            x_min: xs.iter().copied().fold(f64::INFINITY, f64::min),
            x_max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }

    /// Coverage test at a sample point, applying the top-left rule to
    /// samples exactly on an edge.
    pub fn cover(&self, px: f64, py: f64) -> Option<Coverage> {
        let p = |s: &ScreenVertex| (s.x, s.y);
        let sample = (px, py);
        let w = [
            edge(p(&self.v[1]), p(&self.v[2]), sample),
            edge(p(&self.v[2]), p(&self.v[0]), sample),
            edge(p(&self.v[0]), p(&self.v[1]), sample),
        ];
        for (wi, top_left) in w.iter().zip(self.top_left) {
            if *wi < 0.0 || (*wi == 0.0 && !top_left) {
                return None;
            }
        }
        let sum = w[0] + w[1] + w[2];
        Some(Coverage {
            lambda: [w[0] / sum, w[1] / sum, w[2] / sum],
        })
    }

    /// Screen-linear depth at the sample.
    pub fn depth(&self, c: &Coverage) -> f64 {
        c.lambda[0] * self.v[0].z + c.lambda[1] * self.v[1].z + c.lambda[2] * self.v[2].z
    }

    /// Perspective-correct weights relative to the source primitive's
    /// corners.
    pub fn source_weights(&self, c: &Coverage) -> [f64; 3] {
        let q = [
            c.lambda[0] * self.v[0].inv_w,
            c.lambda[1] * self.v[1].inv_w,
            c.lambda[2] * self.v[2].inv_w,
        ];
        let s = q[0] + q[1] + q[2];
        let mut out = [0.0; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = (q[0] * self.v[0].weights[k] + q[1] * self.v[1].weights[k] + q[2] * self.v[2].weights[k]) / s;
        }
        out
    }
}

/// Clip a triangle and convert it to setup triangles (a fan when clipping
/// produced a quad).
pub fn setup_triangle(viewport: &Viewport, clip: [[f64; 4]; 3]) -> Vec<SetupTriangle> {
    let corners = [
        ClipVertex {
            clip: clip[0],
            weights: [1.0, 0.0, 0.0],
        },
        ClipVertex {
            clip: clip[1],
            weights: [0.0, 1.0, 0.0],
        },
        ClipVertex {
            clip: clip[2],
            weights: [0.0, 0.0, 1.0],
        },
    ];
    let polygon = if corners.iter().all(|c| near_distance(c) >= 0.0) {
        corners.to_vec()
    } else {
        clip_near(&corners)
    };
    if polygon.len() < 3 {
        return Vec::new();
    }
    let screen: Vec<ScreenVertex> = polygon.iter().map(|v| viewport.to_screen(v)).collect();
    (1..screen.len() - 1)
        .filter_map(|i| SetupTriangle::new([screen[0], screen[i], screen[i + 1]]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(x: f64, y: f64) -> ScreenVertex {
        ScreenVertex {
            x,
            y,
            z: 0.0,
            inv_w: 1.0,
            weights: [0.0; 3],
        }
    }

    #[test]
    fn shared_edge_pixels_are_drawn_once() {
        // Two triangles sharing the diagonal of a 4x4 square; every sample
        // on the diagonal must belong to exactly one of them.
        let a = SetupTriangle::new([sv(0.0, 0.0), sv(4.0, 0.0), sv(0.0, 4.0)]).unwrap();
        let b = SetupTriangle::new([sv(4.0, 0.0), sv(4.0, 4.0), sv(0.0, 4.0)]).unwrap();
        let mut samples = Vec::new();
        for y in 0..=8 {
            for x in 0..=8 {
                samples.push((x as f64 * 0.5, y as f64 * 0.5));
            }
        }
        for (x, y) in samples {
            let hits = a.cover(x, y).is_some() as u32 + b.cover(x, y).is_some() as u32;
            let inside_square = x < 4.0 && y < 4.0;
            assert_eq!(hits, inside_square as u32, "({x}, {y})");
        }
    }

    #[test]
    fn orientation_is_normalized() {
        let cw = SetupTriangle::new([sv(0.0, 0.0), sv(4.0, 0.0), sv(0.0, 4.0)]).unwrap();
        let ccw = SetupTriangle::new([sv(0.0, 0.0), sv(0.0, 4.0), sv(4.0, 0.0)]).unwrap();
        assert_eq!(cw.area, ccw.area);
        assert!(cw.cover(1.0, 1.0).is_some() && ccw.cover(1.0, 1.0).is_some());
        assert!(SetupTriangle::new([sv(0.0, 0.0), sv(1.0, 1.0), sv(2.0, 2.0)]).is_none());
    }

    #[test]
    fn near_clipping_keeps_front_part() {
        let v = |z: f64, w: f64, k: usize| {
            let mut weights = [0.0; 3];
            weights[k] = 1.0;
            ClipVertex {
                clip: [0.0, 0.0, z, w],
                weights,
            }
        };
        // One vertex behind the plane: the triangle becomes a quad.
        let out = clip_near(&[v(0.0, 1.0, 0), v(0.0, 1.0, 1), v(-3.0, 1.0, 2)]);
        assert_eq!(out.len(), 4);
        for c in &out {
            assert!(near_distance(c) >= -1e-12);
            assert!((c.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert!(clip_near(&[v(-2.0, 1.0, 0), v(-2.0, 1.0, 1), v(-3.0, 1.0, 2)]).is_empty());
    }
}
