use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const ONE: Vec3 = Vec3::new(1.0, 1.0, 1.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn splat(v: f64) -> Self {
        Self::new(v, v, v)
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector in the same direction; the zero vector stays zero.
    pub fn normalize(self) -> Vec3 {
        let len = self.length();
        if len > 0.0 {
            self / len
        } else {
            Vec3::ZERO
        }
    }

    /// Componentwise product.
    pub fn hadamard(self, other: Vec3) -> Vec3 {
        Vec3::new(self.x * other.x, self.y * other.y, self.z * other.z)
    }

    pub fn clamp01(self) -> Vec3 {
        self.map(|c| c.clamp(0.0, 1.0))
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Vec3 {
        Vec3::new(f(self.x), f(self.y), f(self.z))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Reflect `self` about the unit normal `n`.
    pub fn reflect(self, n: Vec3) -> Vec3 {
        self - n * (2.0 * self.dot(n))
    }

    pub fn max_abs_diff(self, other: Vec3) -> f64 {
        let d = self - other;
        d.x.abs().max(d.y.abs()).max(d.z.abs())
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        v.to_array()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// 4x4 matrix stored column-major: element (row, col) lives at
/// `m[col * 4 + row]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub m: [f64; 16],
}

impl Default for Mat4 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mat4 {
    pub const IDENTITY: Mat4 = Mat4 {
        m: [
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    };

    pub fn from_cols(m: [f64; 16]) -> Self {
        Self { m }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.m[col * 4 + row]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.m[col * 4 + row] = value;
    }

    pub fn column(&self, col: usize) -> [f64; 4] {
        let base = col * 4;
        [self.m[base], self.m[base + 1], self.m[base + 2], self.m[base + 3]]
    }

    pub fn translation(v: Vec3) -> Self {
        let mut out = Self::IDENTITY;
        out.set(0, 3, v.x);
        out.set(1, 3, v.y);
        out.set(2, 3, v.z);
        out
    }

    pub fn scaling(v: Vec3) -> Self {
        let mut out = Self::IDENTITY;
        out.set(0, 0, v.x);
        out.set(1, 1, v.y);
        out.set(2, 2, v.z);
        out
    }

    /// Right-handed rotation of `angle_deg` degrees about `axis`
    /// (normalized here; must be non-zero).
    pub fn rotation(angle_deg: f64, axis: Vec3) -> Self {
        let a = axis.normalize();
        let (s, c) = angle_deg.to_radians().sin_cos();
        let t = 1.0 - c;
        let mut out = Self::IDENTITY;
        out.set(0, 0, t * a.x * a.x + c);
        out.set(0, 1, t * a.x * a.y - s * a.z);
        out.set(0, 2, t * a.x * a.z + s * a.y);
        out.set(1, 0, t * a.x * a.y + s * a.z);
        out.set(1, 1, t * a.y * a.y + c);
        out.set(1, 2, t * a.y * a.z - s * a.x);
        out.set(2, 0, t * a.x * a.z - s * a.y);
        out.set(2, 1, t * a.y * a.z + s * a.x);
        out.set(2, 2, t * a.z * a.z + c);
        out
    }

    /// Right-handed view matrix; the camera looks down -z in view space.
    pub fn look_at(eye: Vec3, target: Vec3, up: Vec3) -> Self {
        let forward = (target - eye).normalize();
        let side = forward.cross(up).normalize();
        let true_up = side.cross(forward);
        let mut out = Self::IDENTITY;
        for (col, (s, u, f)) in [
            (side.x, true_up.x, forward.x),
            (side.y, true_up.y, forward.y),
            (side.z, true_up.z, forward.z),
        ]
        .into_iter()
        .enumerate()
        {
            out.set(0, col, s);
            out.set(1, col, u);
            out.set(2, col, -f);
        }
        out.set(0, 3, -side.dot(eye));
        out.set(1, 3, -true_up.dot(eye));
        out.set(2, 3, forward.dot(eye));
        out
    }

    /// Perspective projection mapping view-space depth `-near..-far` to the
    /// clip range `-1..1`.
    pub fn perspective(fov_y_deg: f64, aspect: f64, near: f64, far: f64) -> Self {
        let f = 1.0 / (fov_y_deg.to_radians() / 2.0).tan();
        let mut out = Mat4 { m: [0.0; 16] };
        out.set(0, 0, f / aspect);
        out.set(1, 1, f);
        out.set(2, 2, (far + near) / (near - far));
        out.set(2, 3, 2.0 * far * near / (near - far));
        out.set(3, 2, -1.0);
        out
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = [0.0; 16];
        for col in 0..4 {
            for row in 0..4 {
                let mut sum = 0.0;
                for k in 0..4 {
                    sum += self.get(row, k) * rhs.get(k, col);
                }
                out[col * 4 + row] = sum;
            }
        }
        Mat4 { m: out }
    }

    pub fn transform4(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (row, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|k| self.get(row, k) * v[k]).sum();
        }
        out
    }

    pub fn transform_point(&self, p: Vec3) -> Vec3 {
        let r = self.transform4([p.x, p.y, p.z, 1.0]);
        Vec3::new(r[0], r[1], r[2])
    }

    pub fn is_affine(&self) -> bool {
        self.get(3, 0) == 0.0 && self.get(3, 1) == 0.0 && self.get(3, 2) == 0.0 && self.get(3, 3) == 1.0
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|v| v.is_finite())
    }

    /// Inverse-transpose of the upper-left 3x3 block, used to carry normals
    /// from model space to world space. `None` when the block is singular.
    pub fn normal_matrix(&self) -> Option<Mat3> {
        let a = Mat3::from_fn(|r, c| self.get(r, c));
        a.inverse().map(|inv| inv.transpose())
    }
}

/// 3x3 matrix stored row-major (used only for normal transforms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub fn from_fn(f: impl Fn(usize, usize) -> f64) -> Self {
        let mut rows = [[0.0; 3]; 3];
        for (r, row) in rows.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = f(r, c);
            }
        }
        Self { rows }
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|r, c| self.rows[c][r])
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.rows;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.determinant();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let m = &self.rows;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        // adjugate = transpose of the cofactor matrix
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Some(Mat3::from_fn(|r, c| adj[r][c] / det))
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let row = |r: usize| self.rows[r][0] * v.x + self.rows[r][1] * v.y + self.rows[r][2] * v.z;
        Vec3::new(row(0), row(1), row(2))
    }
}
