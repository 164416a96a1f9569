//! The case list: pentagon angle pattern, prescribed vertices and the angle
//! arrangements that remain after symmetry reduction.
//!
//! Cases are produced generatively from the degree 3 collections in
//! [`crate::avc3`] and then given their conventional labels by matching the
//! canonical form of `(pattern, vertices)` against a label catalogue.

use crate::avc3::enumerate_avc3;
use crate::combo::{parse_avc, permutations, relabel_set, Combo, Perm};
use crate::linalg::{feasible, forces_equal, qf, Bound, LinearSystem, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// The twelve arrangements of a pentagon with five distinct angles, up to
/// rotation and flipping.
pub const ARRANGEMENTS: [[u8; 5]; 12] = [
    [0, 1, 2, 3, 4],
    [0, 1, 2, 4, 3],
    [0, 1, 3, 2, 4],
    [0, 1, 3, 4, 2],
    [0, 1, 4, 2, 3],
    [0, 1, 4, 3, 2],
    [0, 2, 1, 3, 4],
    [0, 2, 1, 4, 3],
    [0, 2, 3, 1, 4],
    [0, 2, 4, 1, 3],
    [0, 3, 1, 2, 4],
    [0, 3, 2, 1, 4],
];

/// The two admissible arrangements of `α²β²γ`.
pub const THREE_ANGLE_ARRANGEMENTS: [[u8; 5]; 2] = [[0, 0, 1, 2, 1], [0, 2, 0, 1, 1]];

/// A named cyclic order of angle labels around the pentagon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrangement {
    pub name: String,
    pub seq: [u8; 5],
}

impl Arrangement {
    /// `A1..A12` for five distinct angles, `S1`, `S2` for `α²β²γ`.
    pub fn by_name(name: &str) -> Option<Arrangement> {
        let (list, prefix): (&[[u8; 5]], &str) = if name.starts_with('S') {
            (&THREE_ANGLE_ARRANGEMENTS, "S")
        } else {
            (&ARRANGEMENTS, "A")
        };
        let i: usize = name.strip_prefix(prefix)?.parse().ok()?;
        (1..=list.len()).contains(&i).then(|| Arrangement { name: name.to_string(), seq: list[i - 1] })
    }

    pub fn a(i: usize) -> Arrangement {
        Arrangement { name: format!("A{i}"), seq: ARRANGEMENTS[i - 1] }
    }

    /// Places label values in this cyclic order.
    pub fn apply<T: Copy>(&self, values: &[T]) -> [T; 5] {
        self.seq.map(|l| values[l as usize])
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.seq.iter().map(|&l| crate::combo::label_name(l).to_string()).collect();
        write!(f, "{}=[{}]", self.name, s.join(","))
    }
}

/// Least rotation or reflection of a cyclic sequence.
pub fn dihedral_key(seq: &[u8; 5]) -> [u8; 5] {
    let mut best = *seq;
    for r in 0..5 {
        let rot: [u8; 5] = std::array::from_fn(|i| seq[(i + r) % 5]);
        let refl: [u8; 5] = std::array::from_fn(|i| seq[(r + 5 - i) % 5]);
        best = best.min(rot).min(refl);
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Three distinct angles.
    Three,
    /// Four distinct angles at degree 3 vertices.
    Four,
    /// Five distinct angles at degree 3 vertices.
    Five,
    /// `{αβγ, δε²}` extended by a degree 4 vertex.
    Degree4,
    /// `{αβγ, δε²}` extended by a degree 5 vertex.
    Degree5,
    /// `{αβγ, δε²}` with no vertex of degree 4 or 5.
    Exceptional,
}

impl Family {
    pub fn digit(&self) -> &'static str {
        match self {
            Family::Three => "3",
            Family::Four => "4",
            Family::Five => "5",
            Family::Degree4 => "1",
            Family::Degree5 => "2",
            Family::Exceptional => "X",
        }
    }

    pub fn from_digit(s: &str) -> Option<Family> {
        Some(match s {
            "3" => Family::Three,
            "4" => Family::Four,
            "5" => Family::Five,
            "1" => Family::Degree4,
            "2" => Family::Degree5,
            "X" | "x" => Family::Exceptional,
            _ => return None,
        })
    }
}

/// One labelled case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub label: String,
    pub family: Family,
    /// Angle multiset of the pentagon, e.g. `α²β²γ` or `αβγδε`.
    pub pattern: Combo,
    pub vertices: Vec<Combo>,
    /// Orbit representatives, in catalogue labelling.
    pub arrangements: Vec<Arrangement>,
    /// Arrangement count annotated in the catalogue, when it differs from
    /// the computed one both are kept.
    pub catalogue_arrangements: Option<usize>,
}

impl CaseSpec {
    pub fn distinct_angles(&self) -> usize {
        self.pattern.distinct()
    }

    /// Labels fixed by a pure power vertex `θ^k`, with their values in units
    /// of π.
    pub fn pure_power_values(&self) -> Vec<(u8, Q)> {
        let mut out = Vec::new();
        for v in &self.vertices {
            if v.distinct() == 1 {
                let l = (0..5).find(|&i| v.count(i) > 0).unwrap();
                out.push((l as u8, qf(2, v.degree() as i64)));
            }
        }
        out
    }

    pub fn arrangement(&self, name: &str) -> Option<&Arrangement> {
        self.arrangements.iter().find(|a| a.name == name)
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(|c| c.to_string()).collect();
        let a: Vec<&str> = self.arrangements.iter().map(|a| a.name.as_str()).collect();
        write!(f, "{} {{{}: {}}} [{}]", self.label, self.pattern, v.join(", "), a.join(" "))
    }
}

/// `(pattern, vertices)` before labelling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawCase {
    pub family: Family,
    pub pattern: Combo,
    pub vertices: Vec<Combo>,
}

type CanonKey = (Combo, Vec<Combo>);

fn canonical_key(pattern: &Combo, vertices: &[Combo]) -> CanonKey {
    permutations(5)
        .iter()
        .map(|p| (pattern.relabel(p), relabel_set(vertices, p)))
        .min()
        .unwrap()
}

/// Angle-count conditions on the degree 3 vertices against the pentagon.
pub fn deg3_lemmas_hold(pattern: &Combo, deg3: &[Combo]) -> bool {
    if deg3.is_empty() {
        return true;
    }
    for l in 0..5 {
        if deg3.iter().all(|v| v.count(l) >= 1) && pattern.count(l) < 2 {
            return false;
        }
        if deg3.iter().all(|v| v.count(l) >= 2) && pattern.count(l) < 3 {
            return false;
        }
        for m in (l + 1)..5 {
            let pair = |c: &Combo| c.count(l) + c.count(m);
            if deg3.iter().all(|v| pair(v) >= 2) && pair(pattern) < 3 {
                return false;
            }
        }
    }
    true
}

/// The two single-angle conditions of [`deg3_lemmas_hold`].
pub fn single_angle_lemmas_hold(pattern: &Combo, deg3: &[Combo]) -> bool {
    (0..5).all(|l| {
        !(deg3.iter().all(|v| v.count(l) >= 1) && pattern.count(l) < 2)
            && !(deg3.iter().all(|v| v.count(l) >= 2) && pattern.count(l) < 3)
    })
}

/// Vertex equations together with the pentagon angle sum `Σ = 3 + 4/f`
/// admit angles in `(0, 2)` (units of π) with `f ≥ 16`.
pub fn angle_sums_feasible(pattern: &Combo, vertices: &[Combo]) -> bool {
    let mut sys = LinearSystem::new(6);
    let row = |c: &Combo| -> Vec<Q> {
        let mut r: Vec<Q> = c.counts().iter().map(|&x| Q::from_integer(x as i64)).collect();
        r.push(Q::from_integer(0));
        r
    };
    for v in vertices {
        sys.push(row(v), Q::from_integer(2));
    }
    let mut p = row(pattern);
    p[5] = Q::from_integer(-1);
    sys.push(p, Q::from_integer(3));
    let mut bounds = Vec::new();
    for l in 0..5 {
        if pattern.count(l) > 0 {
            bounds.push(Bound::open(Q::from_integer(0), Q::from_integer(2)));
        } else {
            // Unused label, pinned by an equation below.
            bounds.push(Bound { lo: Q::from_integer(0), lo_strict: false, hi: Q::from_integer(0), hi_strict: false });
        }
    }
    bounds.push(Bound { lo: Q::from_integer(0), lo_strict: true, hi: qf(1, 4), hi_strict: false });
    feasible(&sys, &bounds)
}

fn vertex_rank(vertices: &[Combo]) -> usize {
    LinearSystem::from_combos(vertices, 5).rank()
}

fn subsets(items: &[Combo]) -> Vec<Vec<Combo>> {
    let mut out: Vec<Vec<Combo>> = (0u32..(1 << items.len()))
        .map(|mask| (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect())
        .collect();
    out.sort_by_key(|s: &Vec<Combo>| s.len());
    out
}

fn is_subset(a: &[Combo], b: &[Combo]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn three_angle_patterns(m: usize) -> Vec<Combo> {
    if m == 2 {
        return vec![Combo::from_counts([2, 2, 1, 0, 0])];
    }
    vec![
        Combo::from_counts([2, 2, 1, 0, 0]),
        Combo::from_counts([2, 1, 2, 0, 0]),
        Combo::from_counts([1, 2, 2, 0, 0]),
    ]
}

fn admissible_arrangement_exists(pattern: &Combo) -> bool {
    let mut labels = Vec::new();
    for l in 0..5u8 {
        for _ in 0..pattern.count(l as usize) {
            labels.push(l);
        }
    }
    // All cyclic orders of the multiset.
    let mut found = false;
    permute_multiset(&mut labels.clone(), 0, &mut |seq| {
        if crate::sphertrig::labels_admissible(seq) {
            found = true;
        }
    });
    found
}

fn permute_multiset(v: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8; 5])) {
    if k == v.len() {
        let seq: [u8; 5] = v.as_slice().try_into().unwrap();
        f(&seq);
        return;
    }
    let mut used = Vec::new();
    for i in k..v.len() {
        if used.contains(&v[i]) {
            continue;
        }
        used.push(v[i]);
        v.swap(k, i);
        permute_multiset(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Degree 4 and 5 vertices allowed to complete a case whose degree 3
/// vertices have rank below three.
fn extensions(n: &[Combo], pattern: &Combo, hidden: Option<usize>) -> Vec<(Family, Combo)> {
    let mut out = Vec::new();
    for deg in [4usize, 5] {
        for c in Combo::all_of_degree(5, deg) {
            let allowed = match hidden {
                Some(h) => {
                    let k = c.count(h) as usize;
                    (k == deg || k == 3 && deg == 4) && (deg == 4 || k == 5)
                }
                None => !n.iter().any(|v| c.contains(v)),
            };
            if !allowed {
                continue;
            }
            let mut v = n.to_vec();
            v.push(c);
            if vertex_rank(&v) >= 3 && !forces_equal(&v, 5) && angle_sums_feasible(pattern, &v) {
                out.push((if deg == 4 { Family::Degree4 } else { Family::Degree5 }, c));
            }
        }
    }
    out
}

/// All cases before labelling, deduplicated up to relabelling.
pub fn generate_raw() -> Vec<RawCase> {
    let mut found: BTreeMap<CanonKey, RawCase> = BTreeMap::new();
    let mut push = |family: Family, pattern: Combo, mut vertices: Vec<Combo>| {
        vertices.sort();
        let key = canonical_key(&pattern, &vertices);
        found.entry(key).or_insert(RawCase { family, pattern, vertices });
    };
    for (k, ms) in [(3usize, [2usize, 3]), (5, [4, 5])] {
        for m in ms {
            for row in enumerate_avc3(m) {
                let patterns = if k == 3 { three_angle_patterns(m) } else { vec![Combo::from_counts([1; 5])] };
                for pattern in patterns {
                    if !admissible_arrangement_exists(&pattern) {
                        continue;
                    }
                    let hidden = (m < k).then_some(m);
                    let mut valid: Vec<Vec<Combo>> = Vec::new();
                    let mut done: Vec<Vec<Combo>> = Vec::new();
                    for s in subsets(&row.optional) {
                        if done.iter().any(|d| is_subset(d, &s)) {
                            continue;
                        }
                        let mut v = row.necessary.clone();
                        v.extend_from_slice(&s);
                        // A necessary part that already determines the angles is
                        // taken as is; optional vertices are added only when they
                        // are needed for three equations.
                        let complete = k == 3 || vertex_rank(&v) >= 3;
                        let lemmas = if k == 3 || !complete {
                            deg3_lemmas_hold(&pattern, &v)
                        } else {
                            s.is_empty() || single_angle_lemmas_hold(&pattern, &v)
                        };
                        if !lemmas || !angle_sums_feasible(&pattern, &v) {
                            continue;
                        }
                        if complete {
                            done.push(s.clone());
                            let fam = if k == 3 { Family::Three } else if m == 4 { Family::Four } else { Family::Five };
                            push(fam, pattern, v);
                        } else if !valid.iter().any(|d| is_subset(d, &s)) {
                            valid.push(s.clone());
                            for (fam, c) in extensions(&v, &pattern, hidden) {
                                let mut w = v.clone();
                                w.push(c);
                                let fam = if m == 4 { Family::Four } else { fam };
                                push(fam, pattern, w);
                            }
                        }
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

struct CatalogueEntry {
    label: &'static str,
    pattern: &'static str,
    vertices: &'static str,
    arrangements: usize,
}

const fn e(label: &'static str, pattern: &'static str, vertices: &'static str, arrangements: usize) -> CatalogueEntry {
    CatalogueEntry { label, pattern, vertices, arrangements }
}

const P5: &str = "abcde";
const P3: &str = "a2b2c";

#[rustfmt::skip]
const CATALOGUE: &[CatalogueEntry] = &[
    e("3.1", P3, "abc, a3", 2),
    e("3.2a", P3, "ab2, a2c", 2),
    e("3.2b", P3, "a2b, ac2", 2),
    e("3.3a", P3, "ab2, c3", 2),
    e("3.3b", P3, "ac2, b3", 2),
    e("4.1a", P5, "abc, ad2, b2d", 12),
    e("4.1b", P5, "abc, ad2, b3", 12),
    e("4.1c", P5, "abc, a2d, b3", 12),
    e("4.2a", P5, "abc, d3, ae3", 6),
    e("4.2b", P5, "abc, d3, de3", 2),
    e("4.2c", P5, "abc, d3, e4", 2),
    e("4.2d", P5, "abc, d3, e5", 2),
    e("4.3", P5, "ab2, cd2, a2d", 12),
    e("4.4", P5, "ab2, a2c, d3", 12),
    e("5.1a", P5, "abc, ade, ce2", 12),
    e("5.1b", P5, "abc, ade, c3", 6),
    e("5.2", P5, "abc, ad2, a2e", 6),
    e("5.3", P5, "abc, ad2, be2", 8),
    e("5.4", P5, "abc, ad2, b2e", 12),
    e("5.5", P5, "abc, ad2, de2", 6),
    e("5.6", P5, "abc, ad2, e3", 6),
    e("5.7", P5, "abc, a2d, b2e", 8),
    e("5.8", P5, "abc, a2d, d2e", 6),
    e("5.9", P5, "abc, a2d, e3", 6),
    e("5.10", P5, "abc, de2, a3", 6),
    e("5.11", P5, "ab2, cd2, a2e", 12),
    e("5.12", P5, "ab2, cd2, e3", 8),
    e("1.1", P5, "abc, de2, abde", 6),
    e("1.2a", P5, "abc, de2, ab2d", 12),
    e("1.2b", P5, "abc, de2, ab2e", 12),
    e("1.2c", P5, "abc, de2, abd2", 6),
    e("1.2d", P5, "abc, de2, abe2", 6),
    e("1.2e", P5, "abc, de2, ad2e", 6),
    e("1.2f", P5, "abc, de2, a2de", 6),
    e("1.3a", P5, "abc, de2, a2b2", 6),
    e("1.3b", P5, "abc, de2, a2d2", 6),
    e("1.3c", P5, "abc, de2, a2e2", 6),
    e("1.4a", P5, "abc, de2, ab3", 12),
    e("1.4b", P5, "abc, de2, ad3", 6),
    e("1.4c", P5, "abc, de2, a3d", 6),
    e("1.4d", P5, "abc, de2, a3e", 6),
    e("1.4e", P5, "abc, de2, d3e", 2),
    e("1.5a", P5, "abc, de2, a4", 6),
    e("1.5b", P5, "abc, de2, d4", 2),
    e("2.1a", P5, "abc, de2, ab2de", 12),
    e("2.1b", P5, "abc, de2, abd2e", 6),
    e("2.2a", P5, "abc, de2, a2b2d", 6),
    e("2.2b", P5, "abc, de2, a2b2e", 6),
    e("2.2c", P5, "abc, de2, a2d2e", 6),
    e("2.2d", P5, "abc, de2, ab2d2", 12),
    e("2.2e", P5, "abc, de2, ab2e2", 12),
    e("2.3a", P5, "abc, de2, a3de", 6),
    e("2.3b", P5, "abc, de2, ab3d", 12),
    e("2.3c", P5, "abc, de2, ab3e", 12),
    e("2.3d", P5, "abc, de2, ad3e", 6),
    e("2.3e", P5, "abc, de2, abd3", 6),
    e("2.4a", P5, "abc, de2, a2b3", 12),
    e("2.4b", P5, "abc, de2, a2d3", 6),
    e("2.4c", P5, "abc, de2, a3d2", 6),
    e("2.4d", P5, "abc, de2, a3e2", 6),
    e("2.5a", P5, "abc, de2, ab4", 12),
    e("2.5b", P5, "abc, de2, ad4", 6),
    e("2.5c", P5, "abc, de2, a4d", 6),
    e("2.5d", P5, "abc, de2, a4e", 6),
    e("2.5e", P5, "abc, de2, d4e", 2),
    e("2.6a", P5, "abc, de2, a5", 6),
    e("2.6b", P5, "abc, de2, d5", 2),
];

fn family_of_label(label: &str) -> Family {
    Family::from_digit(&label[..1]).expect("catalogue label")
}

fn catalogue_index() -> &'static BTreeMap<CanonKey, usize> {
    static INDEX: OnceLock<BTreeMap<CanonKey, usize>> = OnceLock::new();
    INDEX.get_or_init(|| {
        CATALOGUE
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let p: Combo = c.pattern.parse().unwrap();
                let v = parse_avc(c.vertices).unwrap();
                (canonical_key(&p, &v), i)
            })
            .collect()
    })
}

/// Label permutations fixing both the pattern and the vertex set.
pub fn stabilizer(pattern: &Combo, vertices: &[Combo]) -> Vec<Perm> {
    let mut v = vertices.to_vec();
    v.sort();
    permutations(5)
        .into_iter()
        .filter(|p| pattern.relabel(p) == *pattern && relabel_set(&v, p) == v)
        .collect()
}

/// One arrangement per orbit under the stabilizer, keeping the first in list
/// order.
pub fn reduce_arrangements(candidates: &[Arrangement], symmetries: &[Perm]) -> Vec<Arrangement> {
    let mut reps: Vec<Arrangement> = Vec::new();
    let mut seen: Vec<[u8; 5]> = Vec::new();
    for a in candidates {
        let key = dihedral_key(&a.seq);
        if seen.contains(&key) {
            continue;
        }
        for p in symmetries {
            let img = a.seq.map(|l| p[l as usize]);
            seen.push(dihedral_key(&img));
        }
        seen.push(key);
        reps.push(a.clone());
    }
    reps
}

/// All twelve arrangements of five distinct angles.
pub fn arrangements() -> Vec<Arrangement> {
    (1..=12).map(Arrangement::a).collect()
}

fn candidate_arrangements(pattern: &Combo) -> Vec<Arrangement> {
    if pattern.distinct() == 5 {
        arrangements()
    } else {
        (1..=2).map(|i| Arrangement::by_name(&format!("S{i}")).unwrap()).collect()
    }
}

fn family_order(f: Family) -> usize {
    match f {
        Family::Three => 0,
        Family::Four => 1,
        Family::Five => 2,
        Family::Degree4 => 3,
        Family::Degree5 => 4,
        Family::Exceptional => 5,
    }
}

fn label_sort_key(label: &str) -> (usize, Vec<(u32, String)>) {
    let fam = Family::from_digit(&label[..1]).map(family_order).unwrap_or(9);
    let parts = label
        .split('.')
        .map(|s| {
            let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
            (digits.parse().unwrap_or(u32::MAX), s[digits.len()..].to_string())
        })
        .collect();
    (fam, parts)
}

fn build_case(label: String, family: Family, pattern: Combo, vertices: Vec<Combo>, count: Option<usize>) -> CaseSpec {
    let stab = stabilizer(&pattern, &vertices);
    let arrangements = reduce_arrangements(&candidate_arrangements(&pattern), &stab);
    CaseSpec { label, family, pattern, vertices, arrangements, catalogue_arrangements: count }
}

/// The full labelled case list, excluding the exceptional case.
pub fn all_cases() -> &'static [CaseSpec] {
    static CASES: OnceLock<Vec<CaseSpec>> = OnceLock::new();
    CASES.get_or_init(|| {
        let index = catalogue_index();
        let mut unlabelled = 0;
        let mut out: Vec<CaseSpec> = generate_raw()
            .into_iter()
            .map(|raw| {
                let key = canonical_key(&raw.pattern, &raw.vertices);
                match index.get(&key) {
                    Some(&i) => {
                        let c = &CATALOGUE[i];
                        build_case(
                            c.label.to_string(),
                            family_of_label(c.label),
                            c.pattern.parse().unwrap(),
                            parse_avc(c.vertices).unwrap(),
                            Some(c.arrangements),
                        )
                    }
                    None => {
                        unlabelled += 1;
                        let label = format!("{}.new{unlabelled}", raw.family.digit());
                        build_case(label, raw.family, raw.pattern, raw.vertices, None)
                    }
                }
            })
            .collect();
        out.sort_by(|a, b| label_sort_key(&a.label).cmp(&label_sort_key(&b.label)));
        out
    })
}

pub fn cases_in_family(family: Family) -> Vec<&'static CaseSpec> {
    all_cases().iter().filter(|c| c.family == family).collect()
}

pub fn find_case(label: &str) -> Option<CaseSpec> {
    if label == "X" {
        return Some(exceptional_case());
    }
    all_cases().iter().find(|c| c.label == label).cloned()
}

/// Number of case-arrangement pairs in a family.
pub fn pair_count(family: Family) -> usize {
    cases_in_family(family).iter().map(|c| c.arrangements.len()).sum()
}

/// `{αβγ, δε²}` with `δ⁶`, the configuration left once degree 4 and 5
/// vertices are excluded.
pub fn exceptional_case() -> CaseSpec {
    let pattern = Combo::from_counts([1; 5]);
    let vertices = parse_avc("abc, de2, d6").unwrap();
    let mut c = build_case("X".to_string(), Family::Exceptional, pattern, vertices, Some(2));
    c.family = Family::Exceptional;
    c
}

/// `δ = 8π/f` for `{αβγ, δε²}`, in units of π.
pub fn exceptional_delta(f: u32) -> Q {
    qf(8, f as i64)
}

/// `ε = (1 − 4/f)π`, in units of π.
pub fn exceptional_epsilon(f: u32) -> Q {
    Q::from_integer(1) - qf(4, f as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_names() {
        assert_eq!(Arrangement::by_name("A3").unwrap().seq, [0, 1, 3, 2, 4]);
        assert_eq!(Arrangement::by_name("A12").unwrap().seq, [0, 3, 2, 1, 4]);
        assert!(Arrangement::by_name("A13").is_none());
    }

    #[test]
    fn twelve_classes() {
        let keys: std::collections::BTreeSet<_> = ARRANGEMENTS.iter().map(dihedral_key).collect();
        assert_eq!(keys.len(), 12);
    }

    #[test]
    fn beta_gamma_takes_a4_to_a6() {
        let p: Perm = [0, 2, 1, 3, 4];
        let img = ARRANGEMENTS[3].map(|l| p[l as usize]);
        assert_eq!(dihedral_key(&img), dihedral_key(&ARRANGEMENTS[5]));
    }

    #[test]
    fn exceptional_values() {
        assert_eq!(exceptional_delta(24), qf(1, 3));
        assert_eq!(exceptional_epsilon(24), qf(5, 6));
        assert_eq!(exceptional_epsilon(16), qf(3, 4));
    }

    #[test]
    fn twelve_is_dismissed() {
        let p: Combo = "ab2c2".parse().unwrap();
        assert!(!angle_sums_feasible(&p, &parse_avc("ab2, c3").unwrap()));
        let p: Combo = "a2b2c".parse().unwrap();
        assert!(angle_sums_feasible(&p, &parse_avc("ab2, c3").unwrap()));
    }
}

#[cfg(test)]
mod count_tests {
    use super::*;

    #[test]
    fn family_pair_counts() {
        for c in all_cases() {
            println!("{c}  catalogue={:?}", c.catalogue_arrangements);
        }
        let counts: Vec<usize> =
            [Family::Three, Family::Four, Family::Five, Family::Degree4, Family::Degree5].map(pair_count).to_vec();
        assert_eq!(counts, vec![10, 72, 102, 112, 172]);
    }
}
