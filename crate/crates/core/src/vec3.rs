//! Minimal 3-vector and rotation helpers for points on the unit sphere.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    /// Great-circle distance between unit vectors.
    pub fn arc_to(self, o: Vec3) -> f64 {
        self.cross(o).norm().atan2(self.dot(o))
    }

    /// Unit tangent at `self` pointing along the great circle towards `o`.
    pub fn tangent_towards(self, o: Vec3) -> Vec3 {
        (o - self * self.dot(o)).normalized()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
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

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Orthogonal 3×3 matrix stored by rows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3 {
    pub rows: [Vec3; 3],
}

impl Mat3 {
    /// Matrix whose columns are `a`, `b`, `c`.
    pub fn from_columns(a: Vec3, b: Vec3, c: Vec3) -> Mat3 {
        Mat3 {
            rows: [Vec3::new(a.x, b.x, c.x), Vec3::new(a.y, b.y, c.y), Vec3::new(a.z, b.z, c.z)],
        }
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_columns(self.rows[0], self.rows[1], self.rows[2])
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        Vec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let ot = o.transpose();
        let r = |i: usize| Vec3::new(self.rows[i].dot(ot.rows[0]), self.rows[i].dot(ot.rows[1]), self.rows[i].dot(ot.rows[2]));
        Mat3 { rows: [r(0), r(1), r(2)] }
    }

    /// Orthonormal frame at `p` with first tangent towards `q`.
    pub fn frame(p: Vec3, q: Vec3) -> Mat3 {
        let t = p.tangent_towards(q);
        Mat3::from_columns(p, t, p.cross(t))
    }

    /// Rotation taking the frame at (`p`, towards `q`) to the frame at
    /// (`p2`, towards `q2`).
    pub fn align(p: Vec3, q: Vec3, p2: Vec3, q2: Vec3) -> Mat3 {
        Mat3::frame(p2, q2).mul(&Mat3::frame(p, q).transpose())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn align_maps_points() {
        let p = Vec3::new(0.0, 0.0, 1.0);
        let q = Vec3::new(1.0, 0.0, 1.0).normalized();
        let p2 = Vec3::new(0.0, 1.0, 0.0);
        let q2 = Vec3::new(0.0, 1.0, 1.0).normalized();
        let r = Mat3::align(p, q, p2, q2);
        assert!((r.apply(p) - p2).norm() < 1e-12);
        assert!((r.apply(q) - q2).norm() < 1e-12);
    }
}
