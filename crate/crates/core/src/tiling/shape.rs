//! Concrete pentagons for the tilings, computed from the certified values.

use crate::cases::Arrangement;
use crate::certify::{check_degree8, octic_factors, subdivision_angles, subdivision_edge};
use crate::sphertrig::{diagonal_quadratic, diagonal_residuals, realize_pentagon};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// An equilateral pentagon with labelled angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileShape {
    pub name: String,
    pub arrangement: Arrangement,
    /// Radians, by label.
    pub angles: [f64; 5],
    pub cos_a: f64,
}

impl TileShape {
    pub fn edge(&self) -> f64 {
        self.cos_a.acos()
    }

    /// Angles in boundary order of the arrangement.
    pub fn boundary_angles(&self) -> [f64; 5] {
        self.arrangement.apply(&self.angles)
    }

    /// Closure residual of the boundary walk.
    pub fn closure(&self) -> f64 {
        realize_pentagon(&self.boundary_angles(), self.edge()).closure_residual
    }

    /// Largest diagonal-quadratic residual.
    pub fn residual(&self) -> f64 {
        diagonal_residuals(&self.boundary_angles(), self.cos_a).iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }

    /// Regular pentagon with angles `2π/3`, all corners labelled `α`.
    pub fn regular() -> TileShape {
        TileShape {
            name: "regular".into(),
            arrangement: Arrangement { name: "R".into(), seq: [0; 5] },
            angles: [2.0 * PI / 3.0; 5],
            cos_a: 5f64.sqrt() / 3.0,
        }
    }

    /// Pentagon of the subdivision of a solid with `n` triangles at a
    /// vertex, in A3 with `δ = 2π/3`, `ε = 2π/n`.
    pub fn subdivision(n: u32) -> Option<TileShape> {
        if n == 3 {
            return Some(TileShape::regular());
        }
        let (tri, c) = subdivision_edge(n)?;
        let [al, be, ga] = subdivision_angles(&tri, c.acos());
        Some(TileShape {
            name: format!("subdivision-{}", 3 * match n {
                4 => 8,
                _ => 20,
            }),
            arrangement: Arrangement::a(3),
            angles: [al, be, ga, 2.0 * PI / 3.0, 2.0 * PI / n as f64],
            cos_a: c,
        })
    }

    /// Earth map pentagons with `n` timezones, one per admissible root of
    /// the octic, largest `cos a` first. Shapes with a vanishing angle are
    /// dropped.
    pub fn earth_map(n: u32) -> Vec<TileShape> {
        let delta = 2.0 * PI / n as f64;
        let eps = PI - PI / n as f64;
        let oct = check_degree8(n);
        let mut roots: Vec<f64> = oct.real_roots(1e-7).into_iter().filter(|t| *t > 0.0 && *t < 1.0 - 1e-6).collect();
        roots.sort_by(|a, b| b.total_cmp(a));
        roots.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        // The factors locate the roots more sharply than the expanded octic.
        let sharp: Vec<f64> = octic_factors(n).unwrap_or_default().iter().flat_map(|p| p.real_roots(1e-7)).collect();
        for t in &mut roots {
            if let Some(s) = sharp.iter().copied().filter(|s| (s - *t).abs() < 1e-5).min_by(|a, b| (a - *t).abs().total_cmp(&(b - *t).abs())) {
                *t = s;
            }
        }
        let mut out = Vec::new();
        for t in roots {
            if let Some(s) = earth_map_shape(delta, eps, t) {
                let k = out.len();
                out.push(TileShape { name: format!("earth-map-{}{}", 4 * n, ['a', 'b', 'c', 'd'][k.min(3)]), ..s });
            }
        }
        out
    }
}

/// Completes `(δ, ε, cos a)` to a closed A3 pentagon with `α+β+γ = 2π`:
/// `β` from the diagonal with apex `ε`, then `α` from the diagonal with apex
/// `δ`. Returns `None` when no branch closes up.
fn earth_map_shape(delta: f64, eps: f64, t: f64) -> Option<TileShape> {
    // L t² + M t + N = 0 as P cos θ + Q sin θ = R in the unknown θ.
    let solve = |apex: f64, other: f64| -> Vec<f64> {
        let (l0, m0, n0) = diagonal_quadratic(apex, 0.0, other);
        let (l1, m1, n1) = diagonal_quadratic(apex, PI / 2.0, other);
        let (l2, m2, n2) = diagonal_quadratic(apex, PI, other);
        let f0 = l0 * t * t + m0 * t + n0;
        let f1 = l1 * t * t + m1 * t + n1;
        let f2 = l2 * t * t + m2 * t + n2;
        // f(θ) = K + P cos θ + Q sin θ.
        let k = 0.5 * (f0 + f2);
        let p = 0.5 * (f0 - f2);
        let q = f1 - k;
        let r = (p * p + q * q).sqrt();
        // Tangential solutions sit right at |k/r| = 1.
        if r < 1e-15 || (k / r).abs() > 1.0 + 1e-9 {
            return Vec::new();
        }
        let phi = q.atan2(p);
        let d = (-k / r).clamp(-1.0, 1.0).acos();
        vec![(phi + d).rem_euclid(2.0 * PI), (phi - d).rem_euclid(2.0 * PI)]
    };
    let mut best: Option<(f64, TileShape)> = None;
    for be in solve(eps, delta) {
        for al in solve(delta, eps) {
            let ga = 2.0 * PI - al - be;
            if [al, be, ga].iter().any(|&x| x < 1e-6 || x > 2.0 * PI - 1e-6) {
                continue;
            }
            let s = TileShape {
                name: String::new(),
                arrangement: Arrangement::a(3),
                angles: [al, be, ga, delta, eps],
                cos_a: t,
            };
            let r = s.residual() + s.closure();
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, s));
            }
        }
    }
    best.filter(|(r, _)| *r < 1e-8).map(|(_, s)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn earth_map_shapes_close() {
        for n in [4, 5, 6] {
            let shapes = TileShape::earth_map(n);
            assert_eq!(shapes.len(), if n == 6 { 2 } else { 1 }, "n={n}");
            for s in shapes {
                assert!(s.closure() < 1e-9, "{s:?}");
            }
        }
    }

    #[test]
    fn subdivision_shapes_close() {
        for n in [3, 4, 5] {
            let s = TileShape::subdivision(n).unwrap();
            assert!(s.closure() < 1e-9 && s.residual() < 1e-9, "{s:?}");
        }
    }
}
