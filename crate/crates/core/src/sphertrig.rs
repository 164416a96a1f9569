//! Spherical trigonometry of the equilateral pentagon.
//!
//! Pentagon corners are listed counterclockwise as seen from outside the
//! sphere, interior on the left. All angles are in radians.
//!
//! For corner `i` of a pentagon with angles `θ_0..θ_4` the diagonal joining
//! corners `i−1` and `i+1` cuts off an isosceles triangle with apex `θ_i`.
//! The remaining quadrilateral has interior corners `i+2` and `i+3`, whose
//! angles enter [`diagonal_quadratic`].

use crate::vec3::Vec3;
use std::f64::consts::PI;

fn clamp_cos(c: f64) -> f64 {
    c.clamp(-1.0, 1.0)
}

/// Base of the isosceles triangle with legs `a` and apex angle `apex`:
/// `cos x = cos²a + sin²a·cos(apex)`.
pub fn isosceles_base(a: f64, apex: f64) -> f64 {
    let (s, c) = a.sin_cos();
    clamp_cos(c * c + s * s * apex.cos()).acos()
}

/// Base angle `φ` of the same triangle: `tan φ = sec a · cot(apex/2)`.
pub fn base_angle(a: f64, apex: f64) -> f64 {
    let (sh, ch) = (apex / 2.0).sin_cos();
    ch.atan2(a.cos() * sh)
}

/// Cosine of the diagonal across the quadrilateral with three edges `a` and
/// interior angles `g`, `d` at its two middle corners.
pub fn quad_diagonal_cos(a: f64, g: f64, d: f64) -> f64 {
    let t = a.cos();
    let (sg, cg) = g.sin_cos();
    let (sd, cd) = d.sin_cos();
    (1.0 - cg) * (1.0 - cd) * t * t * t - sg * sd * t * t + (cg + cd - cg * cd) * t + sg * sd
}

/// Coefficients `(L, M, N)` of `L t² + M t + N = 0` in `t = cos a`, obtained
/// by equating the two expressions for one diagonal and removing the factor
/// `t − 1`.
pub fn diagonal_quadratic(apex: f64, g: f64, d: f64) -> (f64, f64, f64) {
    let (sg, cg) = g.sin_cos();
    let (sd, cd) = d.sin_cos();
    let ca = apex.cos();
    let l = (1.0 - cg) * (1.0 - cd);
    let m = ca + (g + d).cos() - cg - cd;
    let n = ca - sg * sd;
    (l, m, n)
}

/// Residuals of the five diagonal quadratics at `t = cos a`.
pub fn diagonal_residuals(angles: &[f64; 5], t: f64) -> [f64; 5] {
    let mut out = [0.0; 5];
    for i in 0..5 {
        let (l, m, n) = diagonal_quadratic(angles[i], angles[(i + 2) % 5], angles[(i + 3) % 5]);
        out[i] = l * t * t + m * t + n;
    }
    out
}

/// Angle of a spherical triangle opposite side `opp`, from the cosine law.
pub fn opposite_angle(opp: f64, b: f64, c: f64) -> f64 {
    clamp_cos((opp.cos() - b.cos() * c.cos()) / (b.sin() * c.sin())).acos()
}

/// Sum of the three angles of the spherical triangle with sides `x`, `y`, `z`,
/// or `None` if the sides violate the triangle inequalities.
pub fn triangle_angle_sum(x: f64, y: f64, z: f64) -> Option<f64> {
    if !(x + y > z && y + z > x && z + x > y && x + y + z < 2.0 * PI) {
        return None;
    }
    Some(opposite_angle(x, y, z) + opposite_angle(y, z, x) + opposite_angle(z, x, y))
}

/// A pentagon placed on the unit sphere by walking its boundary.
#[derive(Clone, Debug)]
pub struct Pentagon {
    pub vertices: [Vec3; 5],
    pub angles: [f64; 5],
    pub edge: f64,
    /// Distance between the start and the end of the boundary walk, position
    /// plus heading.
    pub closure_residual: f64,
}

/// Walks five edges of length `a`, turning left by `π − θ` at each corner.
/// Corner 0 sits at the north pole and edge 0 leaves along `+x`.
pub fn realize_pentagon(angles: &[f64; 5], a: f64) -> Pentagon {
    let p0 = Vec3::new(0.0, 0.0, 1.0);
    let d0 = Vec3::new(1.0, 0.0, 0.0);
    let (mut p, mut d) = (p0, d0);
    let mut vertices = [p0; 5];
    let (sa, ca) = a.sin_cos();
    for i in 0..5 {
        let q = p * ca + d * sa;
        let dn = p * (-sa) + d * ca;
        p = q;
        d = dn;
        let turn = PI - angles[(i + 1) % 5];
        let (st, ct) = turn.sin_cos();
        d = d * ct + p.cross(d) * st;
        if i < 4 {
            vertices[i + 1] = p;
        }
    }
    let closure_residual = (p - p0).norm() + (d - d0).norm();
    Pentagon { vertices, angles: *angles, edge: a, closure_residual }
}

impl Pentagon {
    pub fn is_closed(&self, tol: f64) -> bool {
        self.closure_residual < tol
    }

    pub fn area(&self) -> f64 {
        spherical_area(&self.vertices)
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.vertices)
    }

    /// Corner angles measured from the placed vertices.
    pub fn measured_angles(&self) -> Vec<f64> {
        interior_angles(&self.vertices)
    }
}

/// Interior angles of a counterclockwise spherical polygon.
pub fn interior_angles(v: &[Vec3]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let p = v[i];
            let tn = p.tangent_towards(v[(i + 1) % n]);
            let tp = p.tangent_towards(v[(i + n - 1) % n]);
            let ang = tn.cross(tp).dot(p).atan2(tn.dot(tp));
            if ang < 0.0 {
                ang + 2.0 * PI
            } else {
                ang
            }
        })
        .collect()
}

/// Area of the region to the left of a counterclockwise simple polygon,
/// by spherical excess.
pub fn spherical_area(v: &[Vec3]) -> f64 {
    let n = v.len() as f64;
    interior_angles(v).iter().sum::<f64>() - (n - 2.0) * PI
}

fn on_arc(x: Vec3, p: Vec3, q: Vec3, tol: f64) -> bool {
    let n = p.cross(q);
    p.cross(x).dot(n) >= -tol && x.cross(q).dot(n) >= -tol && x.dot(p + q) > 0.0
}

/// Whether two minor great arcs share a point.
pub fn arcs_intersect(p1: Vec3, p2: Vec3, q1: Vec3, q2: Vec3) -> bool {
    const TOL: f64 = 1e-12;
    let n1 = p1.cross(p2);
    let n2 = q1.cross(q2);
    let m = n1.cross(n2);
    if m.norm() < 1e-12 {
        // Same great circle: overlap iff an endpoint lies on the other arc.
        return on_arc(q1, p1, p2, TOL)
            || on_arc(q2, p1, p2, TOL)
            || on_arc(p1, q1, q2, TOL)
            || on_arc(p2, q1, q2, TOL);
    }
    let x = m.normalized();
    [x, -x].iter().any(|&y| on_arc(y, p1, p2, TOL) && on_arc(y, q1, q2, TOL))
}

/// A closed polygon is simple when non-adjacent edges are disjoint and no
/// corner folds an edge back onto its neighbour.
pub fn is_simple(v: &[Vec3]) -> bool {
    let n = v.len();
    for i in 0..n {
        if v[i].arc_to(v[(i + 1) % n]) >= PI - 1e-12 {
            return false;
        }
    }
    for ang in interior_angles(v) {
        if ang < 1e-9 || ang > 2.0 * PI - 1e-9 {
            return false;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if arcs_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Winding test: whether `x` lies in the region left of the counterclockwise
/// simple polygon `v`. Assumes the polygon fits in a hemisphere.
pub fn polygon_contains(v: &[Vec3], x: Vec3) -> bool {
    let n = v.len();
    let mut total = 0.0;
    for i in 0..n {
        let ta = x.tangent_towards(v[i]);
        let tb = x.tangent_towards(v[(i + 1) % n]);
        total += ta.cross(tb).dot(x).atan2(ta.dot(tb));
    }
    total > PI
}

/// Angles distinct and arranged so that the five-way ordering relation holds:
/// the largest and smallest angles are adjacent, and exchanging them leaves
/// the cyclic sequence monotone.
pub fn lemma7_filter(angles: &[f64; 5]) -> bool {
    let mut s = *angles;
    let (mut imax, mut imin) = (0, 0);
    for i in 1..5 {
        if s[i] > s[imax] {
            imax = i;
        }
        if s[i] < s[imin] {
            imin = i;
        }
    }
    let gap = (imax + 5 - imin) % 5;
    if gap != 1 && gap != 4 {
        return false;
    }
    s.swap(imax, imin);
    let descents = (0..5).filter(|&i| s[i] > s[(i + 1) % 5]).count();
    descents == 1 || descents == 4
}

fn sign(x: f64, tol: f64) -> i32 {
    if x > tol {
        1
    } else if x < -tol {
        -1
    } else {
        0
    }
}

/// For every corner, the neighbour angles compare oppositely to the far
/// angles: `θ_{i−1} > θ_{i+1}` exactly when `θ_{i−2} < θ_{i+2}`, with equality
/// matching equality. Applies to equal angles as well.
pub fn ordering_admissible(angles: &[f64], tol: f64) -> bool {
    let n = angles.len();
    (0..n).all(|i| {
        let l = angles[(i + n - 1) % n];
        let r = angles[(i + 1) % n];
        let ll = angles[(i + n - 2) % n];
        let rr = angles[(i + 2) % n];
        sign(l - r, tol) == -sign(ll - rr, tol)
    })
}

/// Label sequence version of [`ordering_admissible`]: true when some
/// assignment of distinct values to the distinct labels satisfies it.
pub fn labels_admissible(seq: &[u8; 5]) -> bool {
    let mut labels: Vec<u8> = seq.to_vec();
    labels.sort();
    labels.dedup();
    let k = labels.len();
    let mut order: Vec<usize> = (0..k).collect();
    loop {
        let mut value = [0.0f64; 5];
        for (rank, &li) in order.iter().enumerate() {
            value[labels[li] as usize] = rank as f64;
        }
        let vals: Vec<f64> = seq.iter().map(|&l| value[l as usize]).collect();
        if ordering_admissible(&vals, 0.5) {
            return true;
        }
        if !next_permutation(&mut order) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dodeca_edge() -> f64 {
        (5f64.sqrt() / 3.0).acos()
    }

    #[test]
    fn regular_dodecahedron_face_closes() {
        let p = realize_pentagon(&[2.0 * PI / 3.0; 5], dodeca_edge());
        assert!(p.closure_residual < 1e-12);
        assert!(p.is_simple());
        assert!((p.area() - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_vanishes_on_regular_face() {
        let t = 5f64.sqrt() / 3.0;
        let r = diagonal_residuals(&[2.0 * PI / 3.0; 5], t);
        assert!(r.iter().all(|x| x.abs() < 1e-14), "{r:?}");
    }

    #[test]
    fn isosceles_base_example() {
        let a = 0.17453 * PI;
        let x = isosceles_base(a, 2.0 * PI / 3.0);
        assert!((x / PI - 0.298).abs() < 5e-4, "{}", x / PI);
    }

    #[test]
    fn measured_angles_match_input() {
        let ang = [0.50792, 0.39366, 1.09842, 0.19683, 0.90158].map(|x| x * PI);
        let p = realize_pentagon(&ang, 0.85890f64.acos());
        assert!(p.closure_residual < 1e-3, "{}", p.closure_residual);
        for (m, a) in p.measured_angles().iter().zip(ang.iter()) {
            assert!((m - a).abs() < 1e-3);
        }
    }

    #[test]
    fn lemma7_small_examples() {
        assert!(lemma7_filter(&[1.0, 2.0, 3.0, 0.0, 4.0]));
        assert!(!lemma7_filter(&[1.0, 2.0, 3.0, 4.0, 0.5]));
        assert!(!lemma7_filter(&[1.0, 3.0, 2.0, 4.0, 0.5]));
    }

    #[test]
    fn admissible_label_sequences_with_repeats() {
        assert!(labels_admissible(&[0, 0, 1, 2, 1]));
        assert!(labels_admissible(&[0, 2, 0, 1, 1]));
        assert!(!labels_admissible(&[2, 0, 0, 1, 1]));
        assert!(!labels_admissible(&[2, 0, 1, 0, 1]));
    }
}
