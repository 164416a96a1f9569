//! Combinatorial and geometric checks of a tiling.

use super::map::{CombTiling, StructureError};
use super::shape::TileShape;
use crate::combo::Combo;
use crate::sphertrig::{polygon_contains, realize_pentagon, spherical_area};
use crate::vec3::{Mat3, Vec3};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TilingReport {
    pub structure_ok: bool,
    pub avc_ok: bool,
    pub angle_sums_ok: bool,
    pub euler_ok: bool,
    pub geometric_ok: bool,
    pub degree_histogram: BTreeMap<u32, u32>,
    /// Largest distance between corners that should coincide.
    pub worst_residual: f64,
    pub area: f64,
    pub overlap_free: bool,
    pub problems: Vec<String>,
}

impl TilingReport {
    pub fn pass(&self) -> bool {
        self.structure_ok && self.avc_ok && self.angle_sums_ok && self.euler_ok && self.geometric_ok
    }
}

/// Tile corners on the unit sphere, one array per tile.
pub type Placement = Vec<[Vec3; 5]>;

/// Places congruent copies tile by tile across matched edges.
pub fn place(t: &CombTiling, shape: &TileShape) -> Placement {
    let a = shape.edge();
    let local: Vec<[Vec3; 5]> =
        t.tiles.iter().map(|tile| realize_pentagon(&tile.labels.map(|l| shape.angles[l as usize]), a).vertices).collect();
    let mut pos: Vec<Option<[Vec3; 5]>> = vec![None; t.f()];
    pos[0] = Some(local[0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let pu = pos[u].unwrap();
        for i in 0..5 {
            let Some(p) = t.partner(5 * u + i) else { continue };
            let (w, j) = (p / 5, p % 5);
            if pos[w].is_some() {
                continue;
            }
            let lw = &local[w];
            let r = Mat3::align(lw[(j + 1) % 5], lw[j], pu[i], pu[(i + 1) % 5]);
            pos[w] = Some(lw.map(|v| r.apply(v)));
            queue.push_back(w);
        }
    }
    pos.into_iter().map(|p| p.unwrap_or([Vec3::new(0.0, 0.0, 0.0); 5])).collect()
}

/// Runs every check. `avc` lists the allowed vertex combinations.
pub fn validate(t: &CombTiling, shape: &TileShape, avc: &[Combo]) -> TilingReport {
    let mut r = TilingReport::default();
    if let Err(e) = t.check_structure() {
        r.problems.push(e.to_string());
        return r;
    }
    r.structure_ok = true;
    combinatorial(t, shape, avc, &mut r);
    if r.avc_ok && r.angle_sums_ok && r.euler_ok {
        geometric(t, shape, &mut r);
    }
    r
}

/// Only the combinatorial checks; geometry is skipped.
pub fn validate_combinatorial(t: &CombTiling, shape: &TileShape, avc: &[Combo]) -> TilingReport {
    let mut r = TilingReport::default();
    if let Err(e) = t.check_structure() {
        r.problems.push(e.to_string());
        return r;
    }
    r.structure_ok = true;
    combinatorial(t, shape, avc, &mut r);
    r
}

fn combinatorial(t: &CombTiling, shape: &TileShape, avc: &[Combo], r: &mut TilingReport) {
    let verts = t.vertices();
    let f = t.f() as i64;
    r.degree_histogram = t.degree_histogram();
    let e = 5 * f / 2;
    let counting: i64 = r.degree_histogram.iter().map(|(&k, &n)| (k as i64 - 3) * n as i64).sum();
    r.euler_ok = 5 * f % 2 == 0
        && verts.len() as i64 - e + f == 2
        && verts.iter().all(|v| v.len() >= 3)
        && 2 * counting == f - 12;
    if !r.euler_ok {
        r.problems.push(format!("euler: v={} e={} f={}", verts.len(), e, f));
    }
    r.avc_ok = true;
    r.angle_sums_ok = true;
    for v in &verts {
        let labels: Vec<u8> = v.iter().map(|&c| t.label(c)).collect();
        let combo = Combo::from_labels(&labels);
        if !avc.contains(&combo) {
            r.avc_ok = false;
            r.problems.push(format!("vertex {combo} not in AVC"));
        }
        let sum: f64 = labels.iter().map(|&l| shape.angles[l as usize]).sum();
        if (sum - 2.0 * PI).abs() > 1e-6 {
            r.angle_sums_ok = false;
            r.problems.push(format!("vertex {combo} sums to {:.6}π", sum / PI));
        }
    }
}

fn geometric(t: &CombTiling, shape: &TileShape, r: &mut TilingReport) {
    let pos = place(t, shape);
    let mut worst = 0.0f64;
    for (s, &p) in t.matching.iter().enumerate() {
        let (u, i, w, j) = (s / 5, s % 5, p as usize / 5, p as usize % 5);
        worst = worst.max((pos[u][i] - pos[w][(j + 1) % 5]).norm());
        worst = worst.max((pos[u][(i + 1) % 5] - pos[w][j]).norm());
    }
    for v in t.vertices() {
        let p0 = pos[v[0].0][v[0].1];
        for &(u, i) in &v[1..] {
            worst = worst.max((pos[u][i] - p0).norm());
        }
    }
    r.worst_residual = worst;
    r.area = pos.iter().map(|p| spherical_area(p)).sum();
    r.overlap_free = overlap_free(&pos, shape.edge());
    r.geometric_ok = worst < 1e-5 && (r.area - 4.0 * PI).abs() < 1e-4 && r.overlap_free;
    if !r.geometric_ok {
        r.problems.push(format!("geometry: residual {worst:.2e}, area {:.6}π, overlap-free {}", r.area / PI, r.overlap_free));
    }
}

/// Points just inside each edge midpoint lie in their own tile and in no
/// other.
pub fn overlap_free(pos: &Placement, a: f64) -> bool {
    let eps = 1e-3 * a;
    for (t, p) in pos.iter().enumerate() {
        for i in 0..5 {
            let (u, v) = (p[i], p[(i + 1) % 5]);
            let m = (u + v).normalized();
            let d = m.tangent_towards(v);
            let x = (m + m.cross(d) * eps).normalized();
            if !polygon_contains(p, x) {
                return false;
            }
            for (s, q) in pos.iter().enumerate() {
                if s != t && q.iter().any(|c| c.dot(x) > (2.0 * a).cos()) && polygon_contains(q, x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Both re-pairings of every two matched edges.
pub fn transpositions(t: &CombTiling) -> impl Iterator<Item = CombTiling> + '_ {
    let edges: Vec<(usize, usize)> =
        t.matching.iter().enumerate().filter(|(s, &p)| *s < p as usize).map(|(s, &p)| (s, p as usize)).collect();
    let n = edges.len();
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j))).flat_map(move |(i, j)| {
        let ((s1, p1), (s2, p2)) = (edges[i], edges[j]);
        [[(s1, s2), (p1, p2)], [(s1, p2), (p1, s2)]].into_iter().map(move |pairs| {
            let mut m = t.clone();
            for (x, y) in pairs {
                m.matching[x] = y as u32;
                m.matching[y] = x as u32;
            }
            m
        })
    })
}

/// Counts how many single transpositions still validate.
pub fn mutation_survivors(t: &CombTiling, shape: &TileShape, avc: &[Combo]) -> (usize, usize) {
    let mut total = 0;
    let mut passed = 0;
    for m in transpositions(t) {
        total += 1;
        let r = validate_combinatorial(&m, shape, avc);
        if r.structure_ok && r.avc_ok && r.angle_sums_ok && r.euler_ok && validate(&m, shape, avc).pass() {
            passed += 1;
        }
    }
    (total, passed)
}

/// OFF file of the placed tiling: one vertex per vertex cycle.
pub fn to_off(t: &CombTiling, shape: &TileShape) -> Result<String, StructureError> {
    t.check_structure()?;
    let pos = place(t, shape);
    let verts = t.vertices();
    let mut id = vec![[0usize; 5]; t.f()];
    let mut s = format!("OFF\n{} {} {}\n", verts.len(), t.f(), 5 * t.f() / 2);
    for (k, v) in verts.iter().enumerate() {
        let p = v.iter().fold(Vec3::new(0.0, 0.0, 0.0), |acc, &(u, i)| acc + pos[u][i]).normalized();
        s.push_str(&format!("{:.12} {:.12} {:.12}\n", p.x, p.y, p.z));
        for &(u, i) in v {
            id[u][i] = k;
        }
    }
    for f in id {
        s.push_str(&format!("5 {} {} {} {} {}\n", f[0], f[1], f[2], f[3], f[4]));
    }
    Ok(s)
}
