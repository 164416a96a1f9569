//! Closed-form checks: polynomials in `cos a`, the subdivision geometry,
//! pentagon shape conditions and the exceptional-case region scan.

use crate::sphertrig::{base_angle, isosceles_base, triangle_angle_sum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Real polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPoly {
    pub coeffs: Vec<f64>,
}

impl RealPoly {
    /// Drops vanishing leading coefficients.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    /// From coefficients listed highest degree first.
    pub fn from_high(c: &[f64]) -> Self {
        RealPoly::new(c.iter().rev().copied().collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn lead(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn eval_c(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> RealPoly {
        if self.coeffs.len() == 1 {
            return RealPoly::new(vec![0.0]);
        }
        RealPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect())
    }

    pub fn mul(&self, o: &RealPoly) -> RealPoly {
        let mut c = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RealPoly::new(c)
    }

    pub fn add(&self, o: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let g = |p: &RealPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(0.0);
        RealPoly::new((0..n).map(|i| g(self, i) + g(o, i)).collect())
    }

    pub fn sub(&self, o: &RealPoly) -> RealPoly {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> RealPoly {
        self.scale(1.0 / self.lead())
    }

    /// All complex roots by Aberth iteration.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let p = self.monic();
        let dp = p.derivative();
        let bound = 1.0 + p.coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> =
            (0..n).map(|k| Complex64::from_polar(bound * 0.5, 2.0 * PI * (k as f64 + 0.25) / n as f64)).collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for k in 0..n {
                let ratio = p.eval_c(z[k]) / dp.eval_c(z[k]);
                let repel: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
                let w = ratio / (1.0 - ratio * repel);
                if w.is_finite() {
                    z[k] -= w;
                    moved = moved.max(w.norm());
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        z
    }

    /// Real roots (imaginary part below `tol`), ascending and polished.
    pub fn real_roots(&self, tol: f64) -> Vec<f64> {
        let mut r: Vec<f64> =
            self.roots().into_iter().filter(|z| z.im.abs() < tol).map(|z| self.newton(z.re)).collect();
        r.sort_by(f64::total_cmp);
        r
    }

    /// Newton refinement from `t`.
    pub fn newton(&self, mut t: f64) -> f64 {
        let d = self.derivative();
        for _ in 0..100 {
            let dv = d.eval(t);
            if dv == 0.0 {
                break;
            }
            let step = self.eval(t) / dv;
            t -= step;
            if step.abs() < 1e-16 * t.abs().max(1.0) {
                break;
            }
        }
        t
    }

    /// Root nearest to `t`.
    pub fn nearest_root(&self, t: f64) -> Option<f64> {
        self.real_roots(1e-6).into_iter().min_by(|a, b| (a - t).abs().total_cmp(&(b - t).abs()))
    }
}

/// Largest coefficient difference after scaling both to a unit leading coefficient.
pub fn monic_distance(p: &RealPoly, q: &RealPoly) -> f64 {
    if p.degree() != q.degree() {
        return f64::INFINITY;
    }
    let (p, q) = (p.monic(), q.monic());
    p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// `|p(t)| < tol` and a true root lies within `1e−4` of `t`, witnessed by a
/// sign change or by the Newton step `|p/p'|`.
pub fn check_root(p: &RealPoly, t: f64, tol: f64) -> bool {
    if p.eval(t).abs() >= tol {
        return false;
    }
    let h = 1e-4;
    if p.eval(t - h) * p.eval(t + h) <= 0.0 {
        return true;
    }
    let d = p.derivative().eval(t);
    d != 0.0 && (p.eval(t) / d).abs() < h
}

fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

/// `25t⁴ + 4(1−2√3)t³ − 2(1+4√3)t² + 4t + 1`, the edge of the f = 24 subdivision.
pub fn quartic_f24() -> RealPoly {
    let r3 = sqrt(3.0);
    RealPoly::from_high(&[25.0, 4.0 * (1.0 - 2.0 * r3), -2.0 * (1.0 + 4.0 * r3), 4.0, 1.0])
}

/// The quartic for the f = 60 subdivision edge.
pub fn quartic_f60() -> RealPoly {
    let r5 = sqrt(5.0);
    let s = sqrt(6.0) * sqrt(5.0 + r5);
    RealPoly::from_high(&[
        63.0 - 11.0 * r5,
        -4.0 * s + 16.0 - 8.0 * r5,
        -4.0 * s - 14.0 + 6.0 * r5,
        4.0 + 4.0 * r5,
        3.0 + r5,
    ])
}

/// Nested radical for `cos a` of the f = 60 subdivision.
pub fn nested_radical_f60() -> f64 {
    nested_radical_with(sqrt(5.0 - sqrt(5.0)))
}

/// The nested radical with `s` in place of `√(5−√5)`.
pub fn nested_radical_with(s: f64) -> f64 {
    let r5 = sqrt(5.0);
    let (s30, s6) = (sqrt(30.0) * s, sqrt(6.0) * s);
    (7.0 * s30 + 193.0 * s6 + 736.0 * r5 - 372.0) / 6728.0
        + sqrt(268198.0 * s30 + 599322.0 * s6 - 320888.0 * r5 + 124928.0) / 3364.0
}

/// `5√5 t³ + t² − (4+√5)t − 1`.
pub fn cubic_f20() -> RealPoly {
    let r5 = sqrt(5.0);
    RealPoly::from_high(&[5.0 * r5, 1.0, -(4.0 + r5), -1.0])
}

/// `49t⁴ + (16−18√2)t³ + (48−54√2)t² + (52−34√2)t + 43−30√2`.
pub fn quartic_f16() -> RealPoly {
    let r2 = sqrt(2.0);
    RealPoly::from_high(&[49.0, 16.0 - 18.0 * r2, 48.0 - 54.0 * r2, 52.0 - 34.0 * r2, 43.0 - 30.0 * r2])
}

/// Factors of the octic for the earth map with `n` timezones.
/// Returns `None` outside `n ∈ {4, 5, 6}`.
pub fn octic_factors(n: u32) -> Option<Vec<RealPoly>> {
    let (r2, r3, r5) = (sqrt(2.0), sqrt(3.0), sqrt(5.0));
    let t_plus_1_sq = RealPoly::from_high(&[1.0, 2.0, 1.0]);
    Some(match n {
        4 => vec![quartic_f16(), RealPoly::from_high(&[1.0, 0.0, 3.0 - 2.0 * r2]), t_plus_1_sq],
        5 => vec![
            cubic_f20(),
            RealPoly::from_high(&[r5, 0.0, r5 - 2.0]),
            RealPoly::from_high(&[r5, -1.0]),
            t_plus_1_sq,
        ],
        6 => vec![
            RealPoly::from_high(&[3.0, 2.0 - 2.0 * r3, 3.0 - 2.0 * r3]),
            RealPoly::from_high(&[1.0, 0.0, 3.0 - 2.0 * r3]),
            RealPoly::from_high(&[1.0, 0.0, 7.0 - 4.0 * r3]),
            t_plus_1_sq,
        ],
        _ => return None,
    })
}

/// Octic in `t = cos a` for the earth map pentagon in arrangement A3 with
/// `δ`, `ε` fixed.
///
/// Both `cos AB` through three edges (angles `β`, `ε`) against the triangle
/// through the pole, and the diagonal quadratic with apex `ε`, are linear in
/// `(cos β, sin β)`: `A_i cos β + B_i sin β = C_i`. Eliminating `β` gives
/// `(A₁C₂−A₂C₁)² + (B₁C₂−B₂C₁)² − (A₁B₂−A₂B₁)²`.
pub fn degree8(delta: f64, epsilon: f64) -> RealPoly {
    let (se, ce) = epsilon.sin_cos();
    let (sd, cd) = delta.sin_cos();
    let ch = (delta / 2.0).cos();
    let p = |c: &[f64]| RealPoly::new(c.to_vec());
    // cos AB = cos a·cos(π−a) + sin a·sin(π−a)·cos(δ/2)
    let a1 = p(&[0.0, 1.0 - ce, 0.0, -(1.0 - ce)]);
    let b1 = p(&[-se, 0.0, se]);
    let c1 = p(&[ch, -ce, -(1.0 + ch), -(1.0 - ce)]);
    let a2 = p(&[0.0, -(1.0 - cd), -(1.0 - cd)]);
    let b2 = p(&[-sd, -sd]);
    let c2 = p(&[-ce, cd - ce, -(1.0 - cd)]);
    let x = a1.mul(&c2).sub(&a2.mul(&c1));
    let y = b1.mul(&c2).sub(&b2.mul(&c1));
    let z = a1.mul(&b2).sub(&a2.mul(&b1));
    let mut r = x.mul(&x).add(&y.mul(&y)).sub(&z.mul(&z));
    let scale = r.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    for c in &mut r.coeffs {
        if c.abs() < 1e-13 * scale {
            *c = 0.0;
        }
    }
    RealPoly::new(r.coeffs)
}

/// Earth map octic for `n` timezones: `δ = 2π/n`, `ε = (1 − 1/n)π`.
pub fn check_degree8(n: u32) -> RealPoly {
    degree8(2.0 * PI / n as f64, PI - PI / n as f64)
}

/// Right triangle that is one sixth of a face of the base solid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubdivisionTriangle {
    pub n: u32,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    /// Angle at `V` between `VP` and `VU`, once `a` is known.
    pub theta: f64,
}

impl SubdivisionTriangle {
    /// Sides from the tabulated cosines, for `n ∈ {3, 4, 5}`.
    pub fn table(n: u32) -> Option<Self> {
        let r5 = sqrt(5.0);
        let (cu, cv, cw) = match n {
            3 => (1.0 / sqrt(3.0), 1.0 / sqrt(3.0), 1.0 / 3.0),
            4 => (1.0 / sqrt(2.0), sqrt(2.0) / sqrt(3.0), 1.0 / sqrt(3.0)),
            5 => (sqrt(2.0) / sqrt(5.0 - r5), (r5 + 1.0) / (2.0 * sqrt(3.0)), (r5 + 1.0) / sqrt(6.0 * (5.0 - r5))),
            _ => return None,
        };
        Some(SubdivisionTriangle { n, u: cu.acos(), v: cv.acos(), w: cw.acos(), theta: 0.0 })
    }

    /// `cos w − cos u cos v`, zero for a right angle at `W`.
    pub fn right_angle_defect(&self) -> f64 {
        self.w.cos() - self.u.cos() * self.v.cos()
    }

    /// Angles at `U`, `V`, `W` recomputed from the three sides.
    pub fn corner_angles(&self) -> [f64; 3] {
        use crate::sphertrig::opposite_angle;
        [opposite_angle(self.u, self.v, self.w), opposite_angle(self.v, self.w, self.u), opposite_angle(self.w, self.u, self.v)]
    }

    fn theta_at(&self, a: f64) -> f64 {
        ((self.w / 2.0).tan() / a.tan()).clamp(-1.0, 1.0).acos()
    }

    fn edge_residual(&self, a: f64) -> f64 {
        let th = self.theta_at(a);
        self.u.cos() * a.cos() + self.u.sin() * a.sin() * (PI / self.n as f64 - th).cos() - (a / 2.0).cos()
    }
}

/// `(α, β, γ)` at the `αβγ` vertex `P` for edge `a`.
pub fn subdivision_angles(tri: &SubdivisionTriangle, a: f64) -> [f64; 3] {
    let (sh, chh) = (a / 2.0).sin_cos();
    let (s, c) = a.sin_cos();
    let from = |cx: f64| ((cx - chh * c) / (sh * s)).clamp(-1.0, 1.0).acos();
    let gamma = ((tri.w.cos() - c * c) / (s * s)).clamp(-1.0, 1.0).acos();
    [from(tri.u.cos()), from(tri.v.cos()), gamma]
}

/// Solves the two relations for `a ∈ (w/2, π/2)` and returns the triangle
/// with `θ` filled in and `cos a`. Among the roots the one whose angles sum
/// to `2π` is taken.
pub fn subdivision_edge(n: u32) -> Option<(SubdivisionTriangle, f64)> {
    let mut tri = SubdivisionTriangle::table(n)?;
    let lo = tri.w / 2.0 + 1e-12;
    let hi = PI / 2.0 - 1e-12;
    let steps = 4000;
    let xs: Vec<f64> = (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect();
    for w in xs.windows(2) {
        let (fa, fb) = (tri.edge_residual(w[0]), tri.edge_residual(w[1]));
        if fa * fb > 0.0 {
            continue;
        }
        let a = bisect(|x| tri.edge_residual(x), w[0], w[1]);
        let s: f64 = subdivision_angles(&tri, a).iter().sum();
        if (s - 2.0 * PI).abs() < 1e-6 {
            tri.theta = tri.theta_at(a);
            return Some((tri, a.cos()));
        }
    }
    None
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Shape data of a pentagon `[α, β, δ, γ, ε]` (arrangement A3) with corners
/// `A, B, D, C, E`, split along the diagonals `CB = x` and `CA = y`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapeReport {
    pub x: f64,
    pub y: f64,
    /// Base angle of `△BCD`.
    pub phi: f64,
    /// Base angle of `△ACE`.
    pub psi: f64,
    pub triangle_abc_exists: bool,
    /// `α > ψ`, `β > φ`, `γ > φ + ψ`.
    pub union_of_triangles: bool,
    /// Corners with angle above `π`, by label.
    pub concave: [bool; 5],
    /// `|x + a − y|`, zero when `△ABC` collapses to an arc.
    pub degeneracy: f64,
}

impl ShapeReport {
    pub fn degenerate(&self, tol: f64) -> bool {
        self.degeneracy < tol
    }
}

/// `angles` by label `α..ε` in radians.
pub fn pentagon_shape_report(angles: &[f64; 5], a: f64) -> ShapeReport {
    let [al, be, ga, de, ep] = *angles;
    let x = isosceles_base(a, de);
    let y = isosceles_base(a, ep);
    let phi = base_angle(a, de);
    let psi = base_angle(a, ep);
    let triangle_abc_exists = a + x + y < 2.0 * PI && a < x + y && x < a + y && y < a + x;
    ShapeReport {
        x,
        y,
        phi,
        psi,
        triangle_abc_exists,
        union_of_triangles: al > psi && be > phi && ga > phi + psi,
        concave: angles.map(|t| t > PI),
        degeneracy: (x + a - y).abs(),
    }
}

/// Linear relation `P cos θ + Q sin θ = R` shared by `α` and `γ` of the
/// Case 5.5 pentagon; returns `(P, Q, R_α, R_γ)`.
pub fn case55_linear_coefficients() -> (f64, f64, f64, f64) {
    let r3 = sqrt(3.0);
    let s = sqrt(-5.0 + 4.0 * r3);
    let p = 7.0 + 6.0 * r3 + 8.0 * s + 5.0 * r3 * s;
    let q = 3.0 * (2.0 + r3 + s);
    let ra = 19.0 + 3.0 * r3 + 5.0 * s + 5.0 * r3 * s;
    let rg = 7.0 - 3.0 * r3 - s + 5.0 * r3 * s;
    (p, q, ra, rg)
}

/// Closed forms `(α, γ, cos a)` for the Case 5.5 pentagon.
pub fn case55_closed_forms() -> (f64, f64, f64) {
    let r3 = sqrt(3.0);
    let s = sqrt(-5.0 + 4.0 * r3);
    let alpha = ((4.0 + 3.0 * r3 - 2.0 * s + 4.0 * r3 * s) / 33.0).atan();
    let gamma = PI - ((12.0 + 7.0 * r3 + 6.0 * s + 4.0 * r3 * s) / 3.0).atan();
    let cos_a = (-1.0 + r3 + s) / 3.0;
    (alpha, gamma, cos_a)
}

/// `tan(α + γ)` from the closed forms.
pub fn case55_tan_sum() -> f64 {
    let (a, g, _) = case55_closed_forms();
    (a.tan() + g.tan()) / (1.0 - a.tan() * g.tan())
}

/// Closed forms `(α, β, cos a)` for the Case 1.2e pentagon after the
/// relabeling that puts it in arrangement A3.
pub fn case12e_closed_forms() -> (f64, f64, f64) {
    let phi = sqrt(3.0 + 2.0 * sqrt(3.0)).atan();
    (PI / 2.0 - phi, PI + phi, sqrt(-3.0 + 2.0 * sqrt(3.0)))
}

/// One certified statement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertCheck {
    pub name: String,
    pub value: f64,
    pub residual: f64,
    pub pass: bool,
}

fn check(name: &str, value: f64, residual: f64, tol: f64) -> CertCheck {
    CertCheck { name: name.to_string(), value, residual, pass: residual.abs() < tol }
}

/// Every closed-form statement, evaluated at refined roots.
pub fn certify_all() -> Vec<CertCheck> {
    let mut out = Vec::new();
    for n in [3, 4, 5] {
        let t = SubdivisionTriangle::table(n).unwrap();
        out.push(check(&format!("subdivision n={n} right angle at W"), t.w.cos(), t.right_angle_defect(), 1e-12));
    }

    let q24 = quartic_f24();
    let (_, c24) = subdivision_edge(4).unwrap();
    let r24 = q24.newton(c24);
    out.push(check("f=24 quartic at subdivision edge", c24, q24.eval(c24), 1e-9));
    out.push(check("f=24 quartic largest root is the edge", r24, r24 - q24.real_roots(1e-9).last().copied().unwrap(), 1e-9));

    let q60 = quartic_f60();
    let c60 = nested_radical_f60();
    let (_, e60) = subdivision_edge(5).unwrap();
    out.push(check("f=60 quartic at nested radical", c60, q60.eval(c60), 1e-9));
    out.push(check("f=60 nested radical equals subdivision edge", c60, c60 - e60, 1e-10));

    for n in [4u32, 5, 6] {
        let oct = check_degree8(n);
        let prod = octic_factors(n).unwrap().iter().skip(1).fold(octic_factors(n).unwrap()[0].clone(), |p, f| p.mul(f));
        out.push(check(&format!("octic n={n} equals product of factors"), oct.degree() as f64, monic_distance(&oct, &prod), 1e-9));
    }
    let f16 = quartic_f16();
    let t16 = f16.real_roots(1e-9).last().copied().unwrap();
    out.push(check("f=16 octic at quartic root", t16, check_degree8(4).eval(t16), 1e-9));
    let c20 = cubic_f20();
    let t20 = c20.real_roots(1e-9).last().copied().unwrap();
    out.push(check("f=20 cubic root", t20, c20.eval(t20), 1e-9));
    out.push(check("f=20 octic at cubic root", t20, check_degree8(5).eval(t20), 1e-9));

    let (al, ga, c55) = case55_closed_forms();
    out.push(check("case 5.5 tan(alpha+gamma) = -sqrt3", case55_tan_sum(), case55_tan_sum() + sqrt(3.0), 1e-9));
    out.push(check("case 5.5 alpha+gamma = 2pi/3", al + ga, al + ga - 2.0 * PI / 3.0, 1e-9));
    out.push(check("f=24 octic at case 5.5 cos a", c55, check_degree8(6).eval(c55), 1e-9));
    let (p, q, ra, rg) = case55_linear_coefficients();
    out.push(check("case 5.5 alpha linear relation", al, p * al.cos() + q * al.sin() - ra, 1e-9));
    out.push(check("case 5.5 gamma linear relation", ga, p * ga.cos() + q * ga.sin() - rg, 1e-9));

    let (_, _, c12) = case12e_closed_forms();
    let a12 = c12.acos();
    let s12 = pentagon_shape_report(&case12e_angles(), a12);
    out.push(check("case 1.2e cos AC = 0", s12.y, s12.y.cos(), 1e-9));
    out.push(check("case 1.2e BC + a = AC", s12.x + a12, s12.degeneracy, 1e-9));
    out.push(check("f=24 octic at case 1.2e cos a", c12, check_degree8(6).eval(c12), 1e-9));
    out
}

/// Case 1.2e pentagon in arrangement A3 labelling.
pub fn case12e_angles() -> [f64; 5] {
    let (al, be, _) = case12e_closed_forms();
    [al, be, PI / 2.0, PI / 3.0, 5.0 * PI / 6.0]
}

/// Exact Case 5.5 pentagon in arrangement A3 labelling (`α ↔ β` swapped).
pub fn case55_angles() -> [f64; 5] {
    let (al, ga, _) = case55_closed_forms();
    [al, 4.0 * PI / 3.0, ga, PI / 3.0, 5.0 * PI / 6.0]
}

/// Values at one grid cell of the exceptional-case scan.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RegionCell {
    pub a: f64,
    pub delta: f64,
    pub x: f64,
    pub y: f64,
    /// Angle sum of the triangle with sides `x`, `y`, `a`, when it exists.
    pub sigma: Option<f64>,
}

impl RegionCell {
    pub fn at(a: f64, delta: f64) -> Self {
        let eps = PI - delta / 2.0;
        let x = isosceles_base(a, delta);
        let y = isosceles_base(a, eps);
        RegionCell { a, delta, x, y, sigma: triangle_angle_sum(x, y, a) }
    }

    /// `y − x ≤ a` for `a ≤ π/2`, `Σ ≥ 22π/13` for `a > π/2`.
    pub fn in_region(&self) -> bool {
        if self.a <= PI / 2.0 {
            self.y - self.x <= self.a
        } else {
            self.sigma.is_some_and(|s| s >= 22.0 * PI / 13.0)
        }
    }

    /// Area of `△ACE` (legs `a`, apex `ε`) is at least `ε`.
    pub fn ace_area_at_least_epsilon(&self) -> bool {
        let eps = PI - self.delta / 2.0;
        let psi = base_angle(self.a, eps);
        eps + 2.0 * psi - PI >= eps
    }
}

/// Grid scan of `(a, δ) ∈ (0, π) × (0, π/2]` with `ε = π − δ/2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionScan {
    pub resolution: usize,
    pub cells_in_region_low: usize,
    pub cells_in_region_high: usize,
    pub violations: Vec<(f64, f64)>,
    /// Cells with `a > π/2` in the region where `Area(△ACE) ≥ ε` fails.
    pub ace_area_failures: usize,
    /// `(a, δ)` on `y − x = a` for `a ≤ π/2`.
    pub curve_low: Vec<(f64, f64)>,
    /// `(a, δ)` on `Σ = 22π/13` for `a > π/2`.
    pub curve_high: Vec<(f64, f64)>,
}

impl RegionScan {
    pub fn certified(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cell centers `a = (i+½)π/N`, `δ = (j+½)(π/2)/N`. A violation is a cell
/// in the region with `δ ≤ 8π/26`.
pub fn exceptional_region_scan(resolution: usize) -> RegionScan {
    let n = resolution.max(1);
    let bound = 8.0 * PI / 26.0;
    let rows: Vec<(usize, usize, Vec<(f64, f64)>, usize)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = (i as f64 + 0.5) / n as f64 * PI;
            let (mut lo, mut hi, mut viol, mut ace) = (0, 0, Vec::new(), 0);
            for j in 0..n {
                let d = (j as f64 + 0.5) / n as f64 * (PI / 2.0);
                let c = RegionCell::at(a, d);
                if c.in_region() {
                    if a <= PI / 2.0 {
                        lo += 1;
                    } else {
                        hi += 1;
                        if !c.ace_area_at_least_epsilon() {
                            ace += 1;
                        }
                    }
                    if d <= bound {
                        viol.push((a, d));
                    }
                }
            }
            (lo, hi, viol, ace)
        })
        .collect();
    let mut scan = RegionScan {
        resolution: n,
        cells_in_region_low: 0,
        cells_in_region_high: 0,
        violations: Vec::new(),
        ace_area_failures: 0,
        curve_low: Vec::new(),
        curve_high: Vec::new(),
    };
    for (lo, hi, v, ace) in rows {
        scan.cells_in_region_low += lo;
        scan.cells_in_region_high += hi;
        scan.violations.extend(v);
        scan.ace_area_failures += ace;
    }
    for i in 0..n {
        let a = (i as f64 + 0.5) / n as f64 * PI;
        if let Some(d) = boundary_delta(a, n) {
            if a <= PI / 2.0 {
                scan.curve_low.push((a, d));
            } else {
                scan.curve_high.push((a, d));
            }
        }
    }
    scan
}

/// Smallest `δ` where region membership flips along the column at `a`,
/// refined by bisection between neighbouring grid cells.
fn boundary_delta(a: f64, n: usize) -> Option<f64> {
    let inside = |d: f64| RegionCell::at(a, d).in_region();
    let h = PI / 2.0 / n as f64;
    let first = inside(h / 2.0);
    for j in 1..n {
        let d = (j as f64 + 0.5) * h;
        if inside(d) != first {
            let (mut lo, mut hi) = (d - h, d);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) == first {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
    }
    None
}

/// Plain-text coordinate table for the two boundary curves.
pub fn format_curves(scan: &RegionScan) -> String {
    let mut s = String::from("# curve a/pi delta/pi\n");
    for (name, c) in [("low", &scan.curve_low), ("high", &scan.curve_high)] {
        for (a, d) in c {
            s.push_str(&format!("{name} {:.8} {:.8}\n", a / PI, d / PI));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_simple_roots() {
        let p = RealPoly::from_high(&[1.0, -6.0, 11.0, -6.0]);
        let r = p.real_roots(1e-9);
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn dodecahedron_subdivision() {
        let (_, c) = subdivision_edge(3).unwrap();
        assert!((c - 5f64.sqrt() / 3.0).abs() < 1e-10);
        let tri = SubdivisionTriangle::table(3).unwrap();
        for x in subdivision_angles(&tri, c.acos()) {
            assert!((x - 2.0 * PI / 3.0).abs() < 1e-8);
        }
    }

    #[test]
    fn table_rows_are_right_triangles() {
        for n in [3, 4, 5] {
            let t = SubdivisionTriangle::table(n).unwrap();
            assert!(t.right_angle_defect().abs() < 1e-12, "n={n}");
            let [u, v, w] = t.corner_angles();
            assert!((u - PI / 3.0).abs() < 1e-9 && (v - PI / n as f64).abs() < 1e-9 && (w - PI / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn region_cells() {
        let (a, d) = (0.4 * PI, PI / 3.0);
        let c = RegionCell::at(a, d);
        let x = (a.cos().powi(2) + a.sin().powi(2) * d.cos()).acos();
        let y = (a.cos().powi(2) + a.sin().powi(2) * (PI - d / 2.0).cos()).acos();
        assert!((c.x - x).abs() < 1e-12 && (c.y - y).abs() < 1e-12);
        assert_eq!(c.in_region(), y - x <= a);
        // δ = 8π/24 lies above 8π/26, so this cell cannot be a violation.
        assert!(d > 8.0 * PI / 26.0);

        let (a, d) = (0.7 * PI, PI / 2.0);
        let c = RegionCell::at(a, d);
        let x = (a.cos().powi(2) + a.sin().powi(2) * d.cos()).acos();
        let y = (a.cos().powi(2) + a.sin().powi(2) * (PI - d / 2.0).cos()).acos();
        let ang = |o: f64, p: f64, q: f64| ((o.cos() - p.cos() * q.cos()) / (p.sin() * q.sin())).acos();
        let sigma = ang(x, y, a) + ang(y, a, x) + ang(a, x, y);
        assert!((c.sigma.unwrap() - sigma).abs() < 1e-10);
        assert_eq!(c.in_region(), sigma >= 22.0 * PI / 13.0);
    }

    #[test]
    fn plus_variant_is_not_a_cosine() {
        assert!(nested_radical_with(sqrt(5.0 + sqrt(5.0))) > 1.0);
    }

    #[test]
    fn all_certificates_pass() {
        for c in certify_all() {
            assert!(c.pass, "{c:?}");
        }
    }
}
