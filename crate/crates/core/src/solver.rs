//! The polynomial system of a case and its multistart solver.
//!
//! Unknowns are `t = cos a` and `(x_l, y_l) = (cos θ_l, sin θ_l)` for every
//! angle label not fixed by a pure power vertex `θ^k`. Equations:
//!
//! * one diagonal quadratic per pentagon corner,
//! * `x_l² + y_l² − 1` per free label,
//! * `Re Π(x_l + i y_l)^{m_l} − 1` and `Im Π(x_l + i y_l)^{m_l}` per vertex.
//!
//! The solver is a damped Gauss–Newton (Levenberg–Marquardt) iteration run
//! from many random starts, generic over `f64` and `Complex64`.

use crate::cases::{Arrangement, CaseSpec};
use crate::combo::Combo;
use crate::linalg::LinearSystem;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field operations the solver needs.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn abs2(self) -> f64;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
}

impl Scalar for Complex64 {
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im(self) -> f64 {
        self.im
    }
}

/// `a + i b` with `a`, `b` in the scalar field.
#[derive(Clone, Copy, Debug)]
struct Gauss<T>(T, T);

impl<T: Scalar> Gauss<T> {
    fn one() -> Self {
        Gauss(T::from_f64(1.0), T::from_f64(0.0))
    }
    fn mul(self, o: Self) -> Self {
        Gauss(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn pow(self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }
    fn scale(self, s: f64) -> Self {
        Gauss(self.0 * T::from_f64(s), self.1 * T::from_f64(s))
    }
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("case {0} has too few independent vertex equations to fix the pentagon")]
    Underdetermined(String),
    #[error("arrangement {0} does not match the angle pattern of case {1}")]
    Arrangement(String, String),
}

/// The polynomial system of one case and arrangement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolySystem {
    pub case_label: String,
    pub arrangement: Arrangement,
    /// Number of labels in use.
    pub labels: usize,
    /// `Some((cos, sin))` for labels fixed by a pure power vertex.
    pub fixed: [Option<(f64, f64)>; 5],
    /// Vertex equations still containing a free label.
    pub vertices: Vec<Combo>,
    /// Free labels in variable order.
    pub free: Vec<usize>,
    /// Extra equations `c·v = 0` used in tests to make the system inconsistent.
    #[serde(default)]
    pub extra_constant: Option<f64>,
}

impl PolySystem {
    pub fn nvars(&self) -> usize {
        1 + 2 * self.free.len()
    }

    pub fn nequations(&self) -> usize {
        5 + self.free.len() + 2 * self.vertices.len() + usize::from(self.extra_constant.is_some())
    }

    fn slot(&self, label: usize) -> Option<usize> {
        self.free.iter().position(|&l| l == label)
    }

    fn coords<T: Scalar>(&self, v: &[T]) -> ([T; 5], [T; 5]) {
        let mut x = [T::from_f64(1.0); 5];
        let mut y = [T::from_f64(0.0); 5];
        for l in 0..5 {
            if let Some((c, s)) = self.fixed[l] {
                x[l] = T::from_f64(c);
                y[l] = T::from_f64(s);
            } else if let Some(j) = self.slot(l) {
                x[l] = v[1 + 2 * j];
                y[l] = v[2 + 2 * j];
            }
        }
        (x, y)
    }

    /// Residuals and, when `jac` is given, the Jacobian (row major).
    pub fn eval<T: Scalar>(&self, v: &[T], jac: Option<&mut Vec<T>>) -> Vec<T> {
        let n = self.nvars();
        let (x, y) = self.coords(v);
        let t = v[0];
        let zero = T::from_f64(0.0);
        let one = T::from_f64(1.0);
        let mut f = Vec::with_capacity(self.nequations());
        let mut jrows: Vec<T> = Vec::new();
        let want = jac.is_some();
        let mut row = vec![zero; n];
        let xi = |l: usize| self.slot(l).map(|j| 1 + 2 * j);
        let yi = |l: usize| self.slot(l).map(|j| 2 + 2 * j);
        let seq = self.arrangement.seq;
        for i in 0..5 {
            let a = seq[i] as usize;
            let g = seq[(i + 2) % 5] as usize;
            let d = seq[(i + 3) % 5] as usize;
            let l = (one - x[g]) * (one - x[d]);
            let m = x[a] + x[g] * x[d] - y[g] * y[d] - x[g] - x[d];
            let nn = x[a] - y[g] * y[d];
            f.push(l * t * t + m * t + nn);
            if want {
                row.iter_mut().for_each(|r| *r = zero);
                row[0] = T::from_f64(2.0) * l * t + m;
                let tt = t * t + t;
                if let Some(k) = xi(a) {
                    row[k] = row[k] + t + one;
                }
                if let Some(k) = xi(g) {
                    row[k] = row[k] + (x[d] - one) * tt;
                }
                if let Some(k) = xi(d) {
                    row[k] = row[k] + (x[g] - one) * tt;
                }
                if let Some(k) = yi(g) {
                    row[k] = row[k] - y[d] * (t + one);
                }
                if let Some(k) = yi(d) {
                    row[k] = row[k] - y[g] * (t + one);
                }
                jrows.extend_from_slice(&row);
            }
        }
        for (j, &l) in self.free.iter().enumerate() {
            f.push(x[l] * x[l] + y[l] * y[l] - one);
            if want {
                row.iter_mut().for_each(|r| *r = zero);
                row[1 + 2 * j] = T::from_f64(2.0) * x[l];
                row[2 + 2 * j] = T::from_f64(2.0) * y[l];
                jrows.extend_from_slice(&row);
            }
        }
        for c in &self.vertices {
            let z: Vec<Gauss<T>> = (0..5).map(|l| Gauss(x[l], y[l])).collect();
            let p = (0..5).fold(Gauss::one(), |acc, l| acc.mul(z[l].pow(c.count(l) as u32)));
            f.push(p.0 - one);
            f.push(p.1);
            if want {
                let mut re_row = vec![zero; n];
                let mut im_row = vec![zero; n];
                for &l in &self.free {
                    let m = c.count(l) as u32;
                    if m == 0 {
                        continue;
                    }
                    let mut dl = z[l].pow(m - 1).scale(m as f64);
                    for o in 0..5 {
                        if o != l {
                            dl = dl.mul(z[o].pow(c.count(o) as u32));
                        }
                    }
                    let kx = xi(l).unwrap();
                    let ky = yi(l).unwrap();
                    // ∂/∂x = D, ∂/∂y = i·D.
                    re_row[kx] = dl.0;
                    im_row[kx] = dl.1;
                    re_row[ky] = -dl.1;
                    im_row[ky] = dl.0;
                }
                jrows.extend_from_slice(&re_row);
                jrows.extend_from_slice(&im_row);
            }
        }
        if let Some(c) = self.extra_constant {
            f.push(T::from_f64(c));
            if want {
                jrows.extend(std::iter::repeat(zero).take(n));
            }
        }
        if let Some(j) = jac {
            *j = jrows;
        }
        f
    }

    /// Full solution from a variable vector.
    pub fn unpack<T: Scalar>(&self, v: &[T]) -> (T, [T; 5], [T; 5]) {
        let (x, y) = self.coords(v);
        (v[0], x, y)
    }
}

/// Builds the system for `case` in arrangement `arr`.
pub fn build_system(case: &CaseSpec, arr: &Arrangement) -> Result<PolySystem, SystemError> {
    let labels = case.distinct_angles();
    let mut counts = [0u8; 5];
    for &l in &arr.seq {
        counts[l as usize] += 1;
    }
    if Combo::from_counts(counts) != case.pattern {
        return Err(SystemError::Arrangement(arr.name.clone(), case.label.clone()));
    }
    let rank = LinearSystem::from_combos(&case.vertices, 5).rank();
    if rank + 2 < labels {
        return Err(SystemError::Underdetermined(case.label.clone()));
    }
    let mut fixed = [None; 5];
    for (l, val) in case.pure_power_values() {
        let th = PI * (*val.numer() as f64) / (*val.denom() as f64);
        fixed[l as usize] = Some((th.cos(), th.sin()));
    }
    let used: Vec<usize> = (0..5).filter(|&l| case.pattern.count(l) > 0).collect();
    let free: Vec<usize> = used.iter().copied().filter(|&l| fixed[l].is_none()).collect();
    let vertices: Vec<Combo> =
        case.vertices.iter().copied().filter(|c| (0..5).any(|l| c.count(l) > 0 && fixed[l].is_none())).collect();
    Ok(PolySystem {
        case_label: case.label.clone(),
        arrangement: arr.clone(),
        labels,
        fixed,
        vertices,
        free,
        extra_constant: None,
    })
}

/// System for a pentagon with all five angles equal to `θ` given as a free
/// label with the vertex `θ³`.
pub fn regular_system() -> PolySystem {
    let c = CaseSpec {
        label: "regular".into(),
        family: crate::cases::Family::Three,
        pattern: Combo::from_counts([5, 0, 0, 0, 0]),
        vertices: vec![Combo::from_counts([3, 0, 0, 0, 0])],
        arrangements: vec![],
        catalogue_arrangements: None,
    };
    let arr = Arrangement { name: "R".into(), seq: [0; 5] };
    build_system(&c, &arr).expect("regular system")
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolveConfig {
    pub starts: usize,
    pub seed: u64,
    pub newton_tol: f64,
    pub dedup_tol: f64,
    pub max_iters: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { starts: 5000, seed: 42, newton_tol: 1e-12, dedup_tol: 1e-8, max_iters: 200 }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.starts == 0 {
            return Err("starts must be at least 1".into());
        }
        if !(self.newton_tol > 0.0 && self.dedup_tol > 0.0) {
            return Err("tolerances must be positive".into());
        }
        Ok(())
    }
}

fn solve_linear<T: Scalar>(a: &mut [T], b: &mut [T], n: usize) -> bool {
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i * n + col].abs2().total_cmp(&a[j * n + col].abs2())).unwrap();
        if a[p * n + col].abs2() < 1e-300 {
            return false;
        }
        if p != col {
            for k in 0..n {
                a.swap(p * n + k, col * n + k);
            }
            b.swap(p, col);
        }
        let piv = a[col * n + col];
        for r in (col + 1)..n {
            let fct = a[r * n + col] / piv;
            if fct.abs2() == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] = a[r * n + k] - fct * a[col * n + k];
            }
            b[r] = b[r] - fct * b[col];
        }
    }
    for r in (0..n).rev() {
        let mut s = b[r];
        for k in (r + 1)..n {
            s = s - a[r * n + k] * b[k];
        }
        b[r] = s / a[r * n + r];
    }
    true
}

fn norm2<T: Scalar>(f: &[T]) -> f64 {
    f.iter().map(|x| x.abs2()).sum()
}

fn max_abs<T: Scalar>(f: &[T]) -> f64 {
    f.iter().map(|x| x.abs2()).fold(0.0, f64::max).sqrt()
}

/// Damped Gauss–Newton from `v`. Returns the final point and max residual.
pub fn refine<T: Scalar>(sys: &PolySystem, mut v: Vec<T>, tol: f64, max_iters: usize) -> (Vec<T>, f64) {
    let n = v.len();
    let mut jac = Vec::new();
    let mut f = sys.eval(&v, Some(&mut jac));
    let mut r = norm2(&f);
    let mut lambda = 1e-3;
    for it in 0..max_iters {
        if max_abs(&f) < tol {
            break;
        }
        if it > 60 && r > 1e-4 {
            break;
        }
        let m = f.len();
        let mut a = vec![T::from_f64(0.0); n * n];
        let mut g = vec![T::from_f64(0.0); n];
        for i in 0..n {
            for k in 0..m {
                let jki = jac[k * n + i].conj();
                g[i] = g[i] - jki * f[k];
                for j in i..n {
                    a[i * n + j] = a[i * n + j] + jki * jac[k * n + j];
                }
            }
            for j in 0..i {
                a[i * n + j] = a[j * n + i].conj();
            }
        }
        let mut accepted = false;
        for _ in 0..12 {
            let mut aa = a.clone();
            for i in 0..n {
                aa[i * n + i] = aa[i * n + i] + T::from_f64(lambda);
            }
            let mut dx = g.clone();
            if !solve_linear(&mut aa, &mut dx, n) {
                lambda *= 10.0;
                continue;
            }
            let step = norm2(&dx).sqrt();
            if step > 1.0 {
                for d in dx.iter_mut() {
                    *d = *d * T::from_f64(1.0 / step);
                }
            }
            let cand: Vec<T> = v.iter().zip(&dx).map(|(a, b)| *a + *b).collect();
            let fc = sys.eval(&cand, None);
            let rc = norm2(&fc);
            if rc < r || rc == 0.0 {
                v = cand;
                f = sys.eval(&v, Some(&mut jac));
                r = rc;
                lambda = (lambda / 10.0).max(1e-15);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    let res = max_abs(&f);
    (v, res)
}

fn start_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn real_start(sys: &PolySystem, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut v = Vec::with_capacity(sys.nvars());
    let a: f64 = rng.gen_range(0.0..PI);
    v.push(a.cos());
    for _ in &sys.free {
        let th: f64 = rng.gen_range(0.0..2.0 * PI);
        v.push(th.cos());
        v.push(th.sin());
    }
    v
}

fn complex_start(sys: &PolySystem, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(sys.nvars());
    let im = |rng: &mut ChaCha8Rng| rng.gen_range(-1.0..1.0);
    let a = Complex64::new(rng.gen_range(0.0..PI), im(rng));
    v.push(a.cos());
    for _ in &sys.free {
        let th = Complex64::new(rng.gen_range(0.0..2.0 * PI), im(rng));
        v.push(th.cos());
        v.push(th.sin());
    }
    v
}

/// Saturation: no angle is `0` and no two distinct labels coincide.
fn saturated<T: Scalar>(sys: &PolySystem, x: &[T; 5], y: &[T; 5]) -> bool {
    let used: Vec<usize> = (0..5).filter(|&l| sys.free.contains(&l) || sys.fixed[l].is_some()).collect();
    for &l in &used {
        if (x[l] - T::from_f64(1.0)).abs2() < 1e-14 {
            return false;
        }
    }
    for (i, &l) in used.iter().enumerate() {
        for &m in &used[i + 1..] {
            if (x[l] - x[m]).abs2() + (y[l] - y[m]).abs2() < 1e-14 {
                return false;
            }
        }
    }
    true
}

/// A converged point of the system.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealSolution {
    pub t: f64,
    pub x: [f64; 5],
    pub y: [f64; 5],
    pub residual: f64,
}

impl RealSolution {
    /// Angles in `[0, 2π)`, indexed by label.
    pub fn angles(&self) -> [f64; 5] {
        std::array::from_fn(|l| self.y[l].atan2(self.x[l]).rem_euclid(2.0 * PI))
    }

    pub fn cos_a(&self) -> f64 {
        self.t
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexSolution {
    pub t: Complex64,
    pub x: [Complex64; 5],
    pub y: [Complex64; 5],
    pub residual: f64,
}

impl ComplexSolution {
    pub fn is_real(&self, tol: f64) -> bool {
        self.t.im.abs() < tol && self.x.iter().chain(self.y.iter()).all(|z| z.im.abs() < tol)
    }

    pub fn to_real(&self) -> RealSolution {
        RealSolution { t: self.t.re, x: self.x.map(|z| z.re), y: self.y.map(|z| z.re), residual: self.residual }
    }
}

fn dedup_push<S, K: Fn(&S) -> Vec<f64>>(out: &mut Vec<S>, s: S, key: K, tol: f64) {
    let ks = key(&s);
    let dup = out.iter().any(|o| {
        let ko = key(o);
        ko.iter().zip(&ks).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() < tol
    });
    if !dup {
        out.push(s);
    }
}

fn sort_real(v: &mut [RealSolution]) {
    v.sort_by(|a, b| {
        let ka = [a.t].into_iter().chain(a.angles());
        let kb = [b.t].into_iter().chain(b.angles());
        ka.zip(kb).map(|(p, q)| p.total_cmp(&q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Real solutions from real starts with `t ∈ (−1, 1)`, deduplicated and
/// sorted.
pub fn solve_all(sys: &PolySystem, cfg: &SolveConfig) -> Vec<RealSolution> {
    let found: Vec<RealSolution> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = start_rng(cfg.seed, i);
            let v0 = real_start(sys, &mut rng);
            let (v, res) = refine(sys, v0, cfg.newton_tol, cfg.max_iters);
            if res >= cfg.newton_tol.max(1e-11) {
                return None;
            }
            let (t, x, y) = sys.unpack(&v);
            if !(t > -1.0 && t < 1.0) || !saturated(sys, &x, &y) {
                return None;
            }
            Some(RealSolution { t, x, y, residual: res })
        })
        .collect();
    let mut out = Vec::new();
    for s in found {
        dedup_push(&mut out, s, |s| [s.t].into_iter().chain(s.x).chain(s.y).collect(), cfg.dedup_tol.max(1e-7));
    }
    sort_real(&mut out);
    out
}

/// All solutions from complex starts, deduplicated.
pub fn solve_complex(sys: &PolySystem, cfg: &SolveConfig) -> Vec<ComplexSolution> {
    let found: Vec<ComplexSolution> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = start_rng(cfg.seed, i);
            let v0 = complex_start(sys, &mut rng);
            let (v, res) = refine(sys, v0, cfg.newton_tol, cfg.max_iters);
            if res >= cfg.newton_tol.max(1e-11) {
                return None;
            }
            let (t, x, y) = sys.unpack(&v);
            if !saturated(sys, &x, &y) {
                return None;
            }
            Some(ComplexSolution { t, x, y, residual: res })
        })
        .collect();
    let mut out = Vec::new();
    for s in found {
        dedup_push(
            &mut out,
            s,
            |s| [s.t].iter().chain(&s.x).chain(&s.y).flat_map(|z| [z.re, z.im]).collect(),
            cfg.dedup_tol.max(1e-7),
        );
    }
    out
}

/// Number of real solutions found for each seed.
pub fn seed_counts(sys: &PolySystem, cfg: &SolveConfig, seeds: &[u64]) -> Vec<usize> {
    seeds.iter().map(|&s| solve_all(sys, &SolveConfig { seed: s, ..cfg.clone() }).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_matches_finite_differences() {
        let case = crate::cases::find_case("1.1").unwrap();
        let sys = build_system(&case, &Arrangement::a(1)).unwrap();
        let mut rng = start_rng(7, 0);
        let v = real_start(&sys, &mut rng);
        let mut jac = Vec::new();
        let f0 = sys.eval(&v, Some(&mut jac));
        let n = v.len();
        let h = 1e-6;
        for j in 0..n {
            let mut vp = v.clone();
            let mut vm = v.clone();
            vp[j] += h;
            vm[j] -= h;
            let fp = sys.eval(&vp, None);
            let fm = sys.eval(&vm, None);
            for k in 0..f0.len() {
                let fd = (fp[k] - fm[k]) / (2.0 * h);
                assert!((fd - jac[k * n + j]).abs() < 1e-6, "eq {k} var {j}: {fd} vs {}", jac[k * n + j]);
            }
        }
    }

    #[test]
    fn regular_pentagon_root() {
        let sys = regular_system();
        let sols = solve_all(&sys, &SolveConfig { starts: 200, ..Default::default() });
        let want = 5f64.sqrt() / 3.0;
        let ts: Vec<f64> = sols.iter().map(|s| s.t).collect();
        assert_eq!(ts.len(), 2, "{ts:?}");
        assert!((ts[0] + want).abs() < 1e-10 && (ts[1] - want).abs() < 1e-10, "{ts:?}");
        assert!(sols.iter().all(|s| (s.angles()[0] - 2.0 * PI / 3.0).abs() < 1e-12));
    }

    #[test]
    fn inconsistent_system_has_no_solutions() {
        let case = crate::cases::find_case("4.2c").unwrap();
        let mut sys = build_system(&case, &Arrangement::a(3)).unwrap();
        sys.extra_constant = Some(1.0);
        assert!(solve_all(&sys, &SolveConfig { starts: 50, ..Default::default() }).is_empty());
    }
}

#[cfg(test)]
mod count_tests {
    use super::*;

    #[test]
    fn case_1_1_root_count() {
        let case = crate::cases::find_case("1.1").unwrap();
        let sys = build_system(&case, &Arrangement::a(1)).unwrap();
        let all = solve_complex(&sys, &SolveConfig { starts: 2000, ..Default::default() });
        assert_eq!(all.len(), 8);
        assert_eq!(all.iter().filter(|s| s.is_real(1e-8)).count(), 4);
        assert_eq!(solve_all(&sys, &SolveConfig::default()).len(), 4);
    }
}
