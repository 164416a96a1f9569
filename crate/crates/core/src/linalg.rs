//! Exact rational linear algebra for angle-sum equations.
//!
//! Angles are measured in units of π, so a vertex equation reads
//! `Σ m_i θ_i = 2`. Everything here is exact over `Ratio<i64>`.

use crate::combo::Combo;
use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// A linear system `A x = b` with rational entries.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub cols: usize,
    pub rows: Vec<(Vec<Q>, Q)>,
}

/// Reduced row echelon form of a [`LinearSystem`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    /// Nonzero rows, each with its pivot column.
    pub rows: Vec<(usize, Vec<Q>, Q)>,
    pub consistent: bool,
}

impl LinearSystem {
    pub fn new(cols: usize) -> Self {
        LinearSystem { cols, rows: Vec::new() }
    }

    /// Vertex equations `Σ m_i θ_i = 2` for the first `n` labels.
    pub fn from_combos(combos: &[Combo], n: usize) -> Self {
        let mut s = LinearSystem::new(n);
        for c in combos {
            s.push_combo(c);
        }
        s
    }

    pub fn push_combo(&mut self, c: &Combo) {
        let counts = c.counts();
        let row: Vec<Q> = (0..self.cols).map(|i| q(counts[i] as i64)).collect();
        self.rows.push((row, q(2)));
    }

    pub fn push(&mut self, row: Vec<Q>, rhs: Q) {
        assert_eq!(row.len(), self.cols);
        self.rows.push((row, rhs));
    }

    pub fn rref(&self) -> Rref {
        let mut m: Vec<(Vec<Q>, Q)> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| m[i].0[col] != q(0)) else {
                continue;
            };
            m.swap(r, p);
            let pv = m[r].0[col];
            for x in m[r].0.iter_mut() {
                *x /= pv;
            }
            m[r].1 /= pv;
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row.0[col] != q(0) {
                    let f = row.0[col];
                    for (x, y) in row.0.iter_mut().zip(pivot_row.0.iter()) {
                        *x -= f * *y;
                    }
                    row.1 -= f * pivot_row.1;
                }
            }
            pivots.push(col);
            r += 1;
        }
        let consistent = m[r..].iter().all(|row| row.1 == q(0));
        let rows = m
            .into_iter()
            .take(r)
            .zip(pivots)
            .map(|((row, rhs), p)| (p, row, rhs))
            .collect();
        Rref { cols: self.cols, rows, consistent }
    }

    pub fn rank(&self) -> usize {
        self.rref().rows.len()
    }
}

impl Rref {
    /// If the linear form `v·x` is constant on the solution set, returns it.
    pub fn constant_form(&self, v: &[Q]) -> Option<Q> {
        let mut v = v.to_vec();
        let mut val = q(0);
        for (p, row, rhs) in &self.rows {
            let c = v[*p];
            if c != q(0) {
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= c * *y;
                }
                val += c * *rhs;
            }
        }
        if v.iter().all(|x| *x == q(0)) {
            Some(val)
        } else {
            None
        }
    }

    /// Value of variable `i` when the system determines it uniquely.
    pub fn determined(&self, i: usize) -> Option<Q> {
        if !self.consistent {
            return None;
        }
        let mut e = vec![q(0); self.cols];
        e[i] = q(1);
        self.constant_form(&e)
    }
}

/// True when the vertex equations of `combos` over labels `0..n` admit no
/// solution with all labels pairwise distinct.
pub fn forces_equal(combos: &[Combo], n: usize) -> bool {
    let r = LinearSystem::from_combos(combos, n).rref();
    if !r.consistent {
        return true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = vec![q(0); n];
            v[i] = q(1);
            v[j] = q(-1);
            if r.constant_form(&v) == Some(q(0)) {
                return true;
            }
        }
    }
    false
}

/// Bounds for one variable of a [`Polytope`].
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    pub lo: Q,
    pub lo_strict: bool,
    pub hi: Q,
    pub hi_strict: bool,
}

impl Bound {
    pub fn open(lo: Q, hi: Q) -> Self {
        Bound { lo, lo_strict: true, hi, hi_strict: true }
    }
}

/// Feasibility of `{x : A x = b, bounds}` by exact vertex enumeration.
///
/// Strict bounds are handled through the centroid of the closed polytope's
/// vertices: the relative interior meets a strict face's complement exactly
/// when some vertex lies off that face.
pub fn feasible(system: &LinearSystem, bounds: &[Bound]) -> bool {
    !feasible_point(system, bounds).is_none()
}

/// A feasible point (the vertex centroid), if one exists.
pub fn feasible_point(system: &LinearSystem, bounds: &[Bound]) -> Option<Vec<Q>> {
    let n = system.cols;
    assert_eq!(bounds.len(), n);
    let r = system.rref();
    if !r.consistent {
        return None;
    }
    let pivots: Vec<usize> = r.rows.iter().map(|(p, _, _)| *p).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let d = free.len();
    // x = x0 + Σ_k t_k * dir_k, expressed in the free coordinates.
    let eval = |t: &[Q]| -> Vec<Q> {
        let mut x = vec![q(0); n];
        for (k, &f) in free.iter().enumerate() {
            x[f] = t[k];
        }
        for (p, row, rhs) in &r.rows {
            let mut v = *rhs;
            for (k, &f) in free.iter().enumerate() {
                v -= row[f] * t[k];
            }
            x[*p] = v;
        }
        x
    };
    // Each variable bound is an affine inequality in t: x_i(t) ≥ lo or ≤ hi.
    // Affine form of x_i: constant + Σ coef_k t_k.
    let mut forms: Vec<(Vec<Q>, Q)> = Vec::with_capacity(n);
    for i in 0..n {
        let base = eval(&vec![q(0); d])[i];
        let mut coefs = Vec::with_capacity(d);
        for k in 0..d {
            let mut t = vec![q(0); d];
            t[k] = q(1);
            coefs.push(eval(&t)[i] - base);
        }
        forms.push((coefs, base));
    }
    // Candidate active constraints: (variable, value).
    let mut planes: Vec<(usize, Q)> = Vec::new();
    for i in 0..n {
        planes.push((i, bounds[i].lo));
        planes.push((i, bounds[i].hi));
    }
    let inside = |x: &[Q]| (0..n).all(|i| x[i] >= bounds[i].lo && x[i] <= bounds[i].hi);
    let mut vertices: Vec<Vec<Q>> = Vec::new();
    if d == 0 {
        let x = eval(&[]);
        if inside(&x) {
            vertices.push(x);
        }
    } else {
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            // Solve forms[plane].coefs · t = value - base for the chosen planes.
            let mut sys = LinearSystem::new(d);
            for &pi in &idx {
                let (var, val) = planes[pi];
                sys.push(forms[var].0.clone(), val - forms[var].1);
            }
            let rr = sys.rref();
            if rr.consistent && rr.rows.len() == d {
                let mut t = vec![q(0); d];
                for (p, _, rhs) in &rr.rows {
                    t[*p] = *rhs;
                }
                let x = eval(&t);
                if inside(&x) && !vertices.contains(&x) {
                    vertices.push(x);
                }
            }
            // next combination
            let mut k = d;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if idx[k] < planes.len() - d + k {
                    idx[k] += 1;
                    for j in (k + 1)..d {
                        idx[j] = idx[j - 1] + 1;
                    }
                    k = usize::MAX;
                    break;
                }
            }
            if k != usize::MAX {
                break;
            }
        }
    }
    if vertices.is_empty() {
        return None;
    }
    let m = q(vertices.len() as i64);
    let centroid: Vec<Q> = (0..n)
        .map(|i| vertices.iter().map(|v| v[i]).fold(q(0), |a, b| a + b) / m)
        .collect();
    let ok = (0..n).all(|i| {
        let b = bounds[i];
        (!b.lo_strict || centroid[i] > b.lo) && (!b.hi_strict || centroid[i] < b.hi)
    });
    ok.then_some(centroid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn combos(s: &str) -> Vec<Combo> {
        crate::combo::parse_avc(s).unwrap()
    }

    #[test]
    fn two_angle_pairs_force() {
        assert!(forces_equal(&combos("a2b, ab2"), 2));
        assert!(!forces_equal(&combos("ab2"), 2));
        assert!(forces_equal(&combos("abc, ac2"), 3));
        assert!(!forces_equal(&combos("abc, a3"), 3));
        assert!(forces_equal(&combos("a3, b3"), 2));
    }

    #[test]
    fn tabulated_row_with_gamma_equal_delta() {
        // β+γ = δ+ε from the two three-distinct vertices, then β = 2−2δ and
        // ε = 2−2γ give 3γ = 3δ.
        assert!(forces_equal(&combos("abc, ade, bd2, c2e"), 5));
        assert!(!forces_equal(&combos("abc, ad2, b2e, de2"), 5));
    }

    #[test]
    fn determined_values() {
        let r = LinearSystem::from_combos(&combos("abc, de2, d4"), 5).rref();
        assert_eq!(r.determined(3), Some(qf(1, 2)));
        assert_eq!(r.determined(4), Some(qf(3, 4)));
        assert_eq!(r.determined(0), None);
    }

    #[test]
    fn polytope_feasibility() {
        // θ ∈ (0, 2), 3θ = 2 is feasible; 3θ = 7 is not.
        let b = [Bound::open(q(0), q(2))];
        let mut s = LinearSystem::new(1);
        s.push(vec![q(3)], q(2));
        assert!(feasible(&s, &b));
        let mut s = LinearSystem::new(1);
        s.push(vec![q(3)], q(7));
        assert!(!feasible(&s, &b));
        // θ = 0 only: closed feasible, strict infeasible.
        let mut s = LinearSystem::new(1);
        s.push(vec![q(1)], q(0));
        assert!(!feasible(&s, &b));
    }
}
