//! Constructions of the tilings: pentagonal subdivisions, earth maps of
//! distance 5 and the special tiling with twenty tiles.

use super::map::{placements, CombTiling};
use super::shape::TileShape;
use super::validate::validate;
use crate::cases::Arrangement;
use crate::combo::{parse_avc, Combo};
use crate::vec3::Vec3;
use std::collections::{HashMap, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Tetrahedron,
    Octahedron,
    Icosahedron,
}

impl Base {
    pub fn vertex_degree(self) -> u32 {
        match self {
            Base::Tetrahedron => 3,
            Base::Octahedron => 4,
            Base::Icosahedron => 5,
        }
    }

    fn points(self) -> Vec<Vec3> {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        match self {
            Base::Tetrahedron => {
                vec![Vec3::new(1.0, 1.0, 1.0), Vec3::new(1.0, -1.0, -1.0), Vec3::new(-1.0, 1.0, -1.0), Vec3::new(-1.0, -1.0, 1.0)]
            }
            Base::Octahedron => (0..3)
                .flat_map(|k| {
                    [1.0, -1.0].map(|s| {
                        let mut c = [0.0; 3];
                        c[k] = s;
                        Vec3::new(c[0], c[1], c[2])
                    })
                })
                .collect(),
            Base::Icosahedron => {
                let mut v = Vec::new();
                for s1 in [1.0, -1.0] {
                    for s2 in [1.0, -1.0] {
                        v.push(Vec3::new(0.0, s1, s2 * g));
                        v.push(Vec3::new(s1, s2 * g, 0.0));
                        v.push(Vec3::new(s2 * g, 0.0, s1));
                    }
                }
                v
            }
        }
        .into_iter()
        .map(|p| p.normalized())
        .collect()
    }

    /// Triangles, counterclockwise from outside.
    pub fn faces(self) -> Vec<[usize; 3]> {
        let p = self.points();
        let n = p.len();
        let mut dmin = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                dmin = dmin.min(p[i].arc_to(p[j]));
            }
        }
        let adj = |i: usize, j: usize| (p[i].arc_to(p[j]) - dmin).abs() < 1e-9;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if adj(i, j) && adj(j, k) && adj(i, k) {
                        let ccw = (p[j] - p[i]).cross(p[k] - p[i]).dot(p[i]) > 0.0;
                        out.push(if ccw { [i, j, k] } else { [i, k, j] });
                    }
                }
            }
        }
        out
    }
}

/// Role labels `(U, P_i, V_i, P^G, P_{i+1})` of a subdivision tile: face
/// centre `δ`, base vertex `ε`.
pub const SUBDIVISION_ROLES: [u8; 5] = [3, 2, 4, 0, 1];

/// Three pentagons per triangle. `P_i` sits near corner `V_i` and is joined
/// across the edge `V_{i−1}V_i` to the point of the neighbouring face at
/// `V_{i−1}`. The regular shape labels every corner `α`.
pub fn pentagonal_subdivision(base: Base, shape: &TileShape) -> CombTiling {
    let faces = base.faces();
    let nv = faces.iter().flatten().max().unwrap() + 1;
    let nf = faces.len();
    let center = |f: usize| nv + f;
    let point = |f: usize, i: usize| nv + nf + 3 * f + i;
    let mut edge_face: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (f, tri) in faces.iter().enumerate() {
        for i in 0..3 {
            edge_face.insert((tri[i], tri[(i + 1) % 3]), (f, i));
        }
    }
    let roles = if shape.arrangement.seq == [0; 5] { [0; 5] } else { SUBDIVISION_ROLES };
    let mut tiles = Vec::new();
    for (f, tri) in faces.iter().enumerate() {
        for i in 0..3 {
            let (vi, vj) = (tri[i], tri[(i + 1) % 3]);
            let (g, k) = edge_face[&(vj, vi)];
            // In face g the edge runs vj → vi, so vi is its corner k + 1.
            let pg = point(g, (k + 1) % 3);
            tiles.push([center(f), point(f, i), vi, pg, point(f, (i + 1) % 3)]);
        }
    }
    let labels = vec![roles; tiles.len()];
    let name = match base {
        Base::Tetrahedron => "subdivision-12",
        Base::Octahedron => "subdivision-24",
        Base::Icosahedron => "subdivision-60",
    };
    CombTiling::from_faces(name, &shape.arrangement, &tiles, &labels).expect("subdivision is well formed")
}

/// Faces of the earth map of distance 5 with `m` timezones, `4m` tiles.
///
/// Vertex ids: `N = 0`, `S = 1`, then per timezone `k` the northern
/// `a_k, b_k, c_k` and southern `a'_k, b'_k, c'_k`.
pub fn earth_map_faces(m: usize) -> Vec<[usize; 5]> {
    let (n, s) = (0, 1);
    let id = |k: usize, r: usize| 2 + 6 * (k % m) + r;
    let (a, b, c) = (|k| id(k, 0), |k| id(k, 1), |k| id(k, 2));
    let (a2, b2, c2) = (|k| id(k, 3), |k| id(k, 4), |k| id(k, 5));
    let mut faces = Vec::new();
    for k in 0..m {
        let prev = (k + m - 1) % m;
        faces.push([n, a(k), b(k), c(k), a(k + 1)]);
        faces.push([s, a2(k + 1), c2(k), b2(k), a2(k)]);
        faces.push([b2(k), c2(k), b(k), a(k), c(prev)]);
        faces.push([c2(k), a2(k + 1), b2(k + 1), c(k), b(k)]);
    }
    faces
}

/// Assigns a placement of `arr` to every face so that each vertex is in
/// `avc`; calls `accept` on each complete assignment until it returns true.
pub fn assign_labels(
    name: &str,
    arr: &Arrangement,
    faces: &[[usize; 5]],
    avc: &[Combo],
    mut accept: impl FnMut(&CombTiling) -> bool,
) -> Option<CombTiling> {
    let nv = faces.iter().flatten().max().map_or(0, |m| m + 1);
    let mut degree = vec![0u32; nv];
    for f in faces {
        for &v in f {
            degree[v] += 1;
        }
    }
    let partial = sub_multisets(avc);
    let exact: HashSet<[u8; 5]> = avc.iter().map(|c| c.counts()).collect();
    let opts = placements(&arr.seq);
    let order = face_order(faces);
    let mut fans = vec![[0u8; 5]; nv];
    let mut seen = vec![0u32; nv];
    let mut labels = vec![[0u8; 5]; faces.len()];
    let mut found = None;
    fn rec(
        k: usize,
        ctx: &mut (
            &[[usize; 5]],
            &[usize],
            &[[u8; 5]],
            &HashSet<[u8; 5]>,
            &HashSet<[u8; 5]>,
            &[u32],
        ),
        fans: &mut Vec<[u8; 5]>,
        seen: &mut Vec<u32>,
        labels: &mut Vec<[u8; 5]>,
        done: &mut dyn FnMut(&[[u8; 5]]) -> bool,
    ) -> bool {
        let (faces, order, opts, partial, exact, degree) = *ctx;
        if k == order.len() {
            return done(labels);
        }
        let f = order[k];
        for p in opts {
            let ok = (0..5).all(|i| {
                let v = faces[f][i];
                let mut c = fans[v];
                c[p[i] as usize] += 1;
                if seen[v] + 1 == degree[v] {
                    exact.contains(&c)
                } else {
                    partial.contains(&c)
                }
            });
            if !ok {
                continue;
            }
            for i in 0..5 {
                let v = faces[f][i];
                fans[v][p[i] as usize] += 1;
                seen[v] += 1;
            }
            labels[f] = *p;
            if rec(k + 1, ctx, fans, seen, labels, done) {
                return true;
            }
            for i in 0..5 {
                let v = faces[f][i];
                fans[v][p[i] as usize] -= 1;
                seen[v] -= 1;
            }
        }
        false
    }
    let mut done = |l: &[[u8; 5]]| -> bool {
        match CombTiling::from_faces(name, arr, faces, l) {
            Ok(t) if accept(&t) => {
                found = Some(t);
                true
            }
            _ => false,
        }
    };
    let mut ctx = (faces, order.as_slice(), opts.as_slice(), &partial, &exact, degree.as_slice());
    rec(0, &mut ctx, &mut fans, &mut seen, &mut labels, &mut done);
    found
}

/// Breadth-first order over shared vertices.
fn face_order(faces: &[[usize; 5]]) -> Vec<usize> {
    let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
    for (f, face) in faces.iter().enumerate() {
        for &v in face {
            at.entry(v).or_default().push(f);
        }
    }
    let mut order = Vec::new();
    let mut seen = vec![false; faces.len()];
    for s in 0..faces.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(f) = q.pop_front() {
            order.push(f);
            for v in faces[f] {
                for &g in &at[&v] {
                    if !seen[g] {
                        seen[g] = true;
                        q.push_back(g);
                    }
                }
            }
        }
    }
    order
}

/// All sub-multisets of members of `avc`, as label counts.
pub fn sub_multisets(avc: &[Combo]) -> HashSet<[u8; 5]> {
    let mut out = HashSet::new();
    for c in avc {
        let n = c.counts();
        let mut cur = [0u8; 5];
        fn rec(i: usize, n: &[u8; 5], cur: &mut [u8; 5], out: &mut HashSet<[u8; 5]>) {
            if i == 5 {
                out.insert(*cur);
                return;
            }
            for k in 0..=n[i] {
                cur[i] = k;
                rec(i + 1, n, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, &n, &mut cur, &mut out);
    }
    out
}

/// AVC of the earth map with `m` timezones.
pub fn earth_map_avc(m: usize) -> Vec<Combo> {
    parse_avc(&format!("abc, de2, d{m}")).unwrap()
}

/// Earth map of distance 5 with `m ∈ {4, 5, 6}` timezones for `shape`:
/// the first labelling whose geometric realization validates.
pub fn earth_map_distance5(m: usize, shape: &TileShape) -> Option<CombTiling> {
    if !(4..=6).contains(&m) {
        return None;
    }
    let avc = earth_map_avc(m);
    assign_labels(&shape.name, &shape.arrangement, &earth_map_faces(m), &avc, |t| validate(t, shape, &avc).pass())
}

/// AVC of the special tiling.
pub fn special_avc() -> Vec<Combo> {
    parse_avc("abc, de2, d3e").unwrap()
}

/// Faces and labels of the special tiling. Vertex ids `0..32`; the four
/// vertices `δ³ε` have degree 4, all others degree 3. The table is the
/// unique result of `search` for its AVC in arrangement A3.
pub const SPECIAL_F20: [([usize; 5], [u8; 5]); 20] = [
    ([0, 1, 2, 3, 4], [0, 1, 3, 2, 4]),
    ([1, 0, 5, 6, 7], [0, 1, 3, 2, 4]),
    ([2, 1, 7, 8, 9], [3, 2, 4, 0, 1]),
    ([7, 6, 10, 11, 8], [3, 1, 0, 4, 2]),
    ([9, 8, 11, 12, 13], [0, 1, 3, 2, 4]),
    ([10, 6, 5, 14, 15], [1, 0, 4, 2, 3]),
    ([5, 0, 4, 16, 17], [3, 2, 4, 0, 1]),
    ([14, 5, 17, 18, 19], [1, 3, 2, 4, 0]),
    ([18, 17, 16, 20, 21], [4, 0, 1, 3, 2]),
    ([16, 4, 3, 22, 20], [2, 3, 1, 0, 4]),
    ([14, 19, 23, 24, 15], [0, 1, 3, 2, 4]),
    ([19, 18, 21, 25, 23], [2, 3, 1, 0, 4]),
    ([21, 20, 22, 26, 25], [0, 4, 2, 3, 1]),
    ([22, 3, 2, 27, 26], [1, 0, 4, 2, 3]),
    ([2, 9, 13, 28, 27], [3, 2, 4, 0, 1]),
    ([13, 12, 29, 30, 28], [3, 1, 0, 4, 2]),
    ([26, 27, 28, 30, 31], [4, 0, 1, 3, 2]),
    ([25, 26, 31, 24, 23], [2, 3, 1, 0, 4]),
    ([15, 24, 31, 30, 29], [3, 1, 0, 4, 2]),
    ([10, 15, 29, 12, 11], [2, 3, 1, 0, 4]),
];

/// The special tiling with twenty tiles.
pub fn special_tiling_f20(shape: &TileShape) -> CombTiling {
    let faces: Vec<[usize; 5]> = SPECIAL_F20.iter().map(|(f, _)| *f).collect();
    let labels: Vec<[u8; 5]> = SPECIAL_F20.iter().map(|(_, l)| *l).collect();
    CombTiling::from_faces("special-20", &shape.arrangement, &faces, &labels).expect("special tiling table is consistent")
}

/// One of the eight tilings with its pentagon and vertex set.
#[derive(Clone, Debug)]
pub struct NamedTiling {
    pub name: String,
    pub shape: TileShape,
    pub avc: Vec<Combo>,
    pub tiling: CombTiling,
}

/// The eight tilings, built from the certified pentagons.
pub fn all_tilings() -> Vec<NamedTiling> {
    let mut out = Vec::new();
    let mut push = |name: &str, mut shape: TileShape, avc: Vec<Combo>, build: &dyn Fn(&TileShape) -> Option<CombTiling>| {
        shape.name = name.to_string();
        if let Some(mut tiling) = build(&shape) {
            tiling.pentagon = name.to_string();
            out.push(NamedTiling { name: name.to_string(), shape, avc, tiling });
        }
    };
    push("dodecahedron", TileShape::regular(), parse_avc("a3").unwrap(), &|s| {
        Some(pentagonal_subdivision(Base::Tetrahedron, s))
    });
    for (n, base) in [(4, Base::Octahedron), (5, Base::Icosahedron)] {
        if let Some(shape) = TileShape::subdivision(n) {
            let avc = parse_avc(&format!("abc, d3, e{n}")).unwrap();
            push(&format!("subdivision-{}", if n == 4 { 24 } else { 60 }), shape, avc, &|s| {
                Some(pentagonal_subdivision(base, s))
            });
        }
    }
    for m in 4..=6 {
        let shapes = TileShape::earth_map(m as u32);
        let many = shapes.len() > 1;
        for (k, shape) in shapes.into_iter().enumerate() {
            let name = if many { format!("earth-map-{}{}", 4 * m, (b'a' + k as u8) as char) } else { format!("earth-map-{}", 4 * m) };
            push(&name, shape, earth_map_avc(m), &|s| earth_map_distance5(m, s));
        }
    }
    if let Some(shape) = TileShape::earth_map(5).into_iter().next() {
        push("special-20", shape, special_avc(), &|s| Some(special_tiling_f20(s)));
    }
    out
}

/// Looks up one of [`all_tilings`] by name.
pub fn tiling_by_name(name: &str) -> Option<NamedTiling> {
    all_tilings().into_iter().find(|t| t.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_solids() {
        for (b, f, v) in [(Base::Tetrahedron, 4, 4), (Base::Octahedron, 8, 6), (Base::Icosahedron, 20, 12)] {
            let faces = b.faces();
            assert_eq!(faces.len(), f);
            let mut deg = vec![0; v];
            faces.iter().flatten().for_each(|&i| deg[i] += 1);
            assert!(deg.iter().all(|&d| d == b.vertex_degree()));
        }
    }

    #[test]
    fn earth_map_faces_census() {
        for m in 4..=6 {
            let faces = earth_map_faces(m);
            let mut deg = vec![0; 2 + 6 * m];
            faces.iter().flatten().for_each(|&i| deg[i] += 1);
            assert_eq!(&deg[..2], &[m, m]);
            assert!(deg[2..].iter().all(|&d| d == 3));
        }
    }

    #[test]
    fn special_table_is_a_sphere() {
        let shape = TileShape::earth_map(5).remove(0);
        let t = special_tiling_f20(&shape);
        assert_eq!(t.degree_histogram(), [(3, 28), (4, 4)].into_iter().collect());
        assert!(t.tiles.iter().all(|tile| tile.orientation != 0));
    }
}
