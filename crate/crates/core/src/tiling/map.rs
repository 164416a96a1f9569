//! Labelled combinatorial maps of pentagons on the sphere.
//!
//! Tile corners are listed counterclockwise as seen from outside. Edge slot
//! `5t + i` of tile `t` runs from corner `i` to corner `i + 1`. Matched slots
//! run in opposite directions, so slot `(t, i)` matched with `(u, j)` puts
//! corner `u.j` on `t.(i+1)` and corner `u.(j+1)` on `t.i`.

use crate::cases::Arrangement;
use crate::combo::{label_name, Combo};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

pub const UNMATCHED: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("matching has {got} slots, expected {expected}")]
    SlotCount { got: usize, expected: usize },
    #[error("slot {0} is unmatched")]
    Unmatched(usize),
    #[error("slot {0} is matched to itself")]
    SelfMatched(usize),
    #[error("slots {0} and {1} do not match each other back")]
    NotInvolution(usize, usize),
    #[error("tile {0} labels are not a placement of the arrangement")]
    BadLabels(usize),
    #[error("tile {0} orientation sign disagrees with its labels")]
    BadOrientation(usize),
    #[error("edge {0:?} occurs more than once")]
    DuplicateEdge((usize, usize)),
    #[error("tiling is disconnected")]
    Disconnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub labels: [u8; 5],
    /// `+1` when the counterclockwise labels are a rotation of the
    /// arrangement, `−1` for a rotation of its reverse.
    pub orientation: i8,
}

/// Orientation of `labels` relative to `seq`, if it is a placement at all.
pub fn placement_orientation(seq: &[u8; 5], labels: &[u8; 5]) -> Option<i8> {
    let rot = |s: &[u8; 5]| (0..5).any(|r| (0..5).all(|i| s[(i + r) % 5] == labels[i]));
    let mut rev = *seq;
    rev.reverse();
    if rot(seq) {
        Some(1)
    } else if rot(&rev) {
        Some(-1)
    } else {
        None
    }
}

/// The distinct label sequences of all ten placements, `+1` ones first.
pub fn placements(seq: &[u8; 5]) -> Vec<[u8; 5]> {
    let mut out: Vec<[u8; 5]> = Vec::new();
    let mut rev = *seq;
    rev.reverse();
    for s in [*seq, rev] {
        for r in 0..5 {
            let p: [u8; 5] = std::array::from_fn(|i| s[(i + r) % 5]);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CombTiling {
    /// Name of the pentagon the tiling is meant for.
    pub pentagon: String,
    pub arrangement: Arrangement,
    pub tiles: Vec<Tile>,
    pub matching: Vec<u32>,
}

/// A corner `(tile, index)`.
pub type Corner = (usize, usize);

impl CombTiling {
    pub fn f(&self) -> usize {
        self.tiles.len()
    }

    pub fn partner(&self, slot: usize) -> Option<usize> {
        let p = self.matching[slot];
        (p != UNMATCHED).then_some(p as usize)
    }

    /// Builds the matching from vertex ids: tile `t` has corners
    /// `faces[t][0..5]` counterclockwise.
    pub fn from_faces(
        pentagon: &str,
        arrangement: &Arrangement,
        faces: &[[usize; 5]],
        labels: &[[u8; 5]],
    ) -> Result<CombTiling, StructureError> {
        let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, face) in faces.iter().enumerate() {
            for i in 0..5 {
                let e = (face[i], face[(i + 1) % 5]);
                if edges.insert(e, 5 * t + i).is_some() {
                    return Err(StructureError::DuplicateEdge(e));
                }
            }
        }
        let mut matching = vec![UNMATCHED; 5 * faces.len()];
        for (&(u, v), &s) in &edges {
            if let Some(&p) = edges.get(&(v, u)) {
                matching[s] = p as u32;
            }
        }
        let tiles = labels
            .iter()
            .enumerate()
            .map(|(t, l)| {
                placement_orientation(&arrangement.seq, l)
                    .map(|orientation| Tile { labels: *l, orientation })
                    .ok_or(StructureError::BadLabels(t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let t = CombTiling { pentagon: pentagon.to_string(), arrangement: arrangement.clone(), tiles, matching };
        t.check_structure()?;
        Ok(t)
    }

    /// Perfect matching without fixed points, labels and orientation signs
    /// consistent with the arrangement, connected.
    pub fn check_structure(&self) -> Result<(), StructureError> {
        let n = 5 * self.tiles.len();
        if self.matching.len() != n {
            return Err(StructureError::SlotCount { got: self.matching.len(), expected: n });
        }
        for s in 0..n {
            let p = self.partner(s).ok_or(StructureError::Unmatched(s))?;
            if p == s {
                return Err(StructureError::SelfMatched(s));
            }
            if p >= n || self.matching[p] as usize != s {
                return Err(StructureError::NotInvolution(s, p));
            }
        }
        for (t, tile) in self.tiles.iter().enumerate() {
            match placement_orientation(&self.arrangement.seq, &tile.labels) {
                None => return Err(StructureError::BadLabels(t)),
                Some(o) if o != tile.orientation && !symmetric(&self.arrangement.seq) => {
                    return Err(StructureError::BadOrientation(t))
                }
                _ => {}
            }
        }
        let mut seen = vec![false; self.tiles.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for i in 0..5 {
                let u = self.matching[5 * t + i] as usize / 5;
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(StructureError::Disconnected);
        }
        Ok(())
    }

    /// Next corner counterclockwise around the vertex at `c`.
    pub fn rotate(&self, c: Corner) -> Option<Corner> {
        let p = self.partner(5 * c.0 + (c.1 + 4) % 5)?;
        Some((p / 5, p % 5))
    }

    /// Vertex cycles as lists of corners. Requires a full matching.
    pub fn vertices(&self) -> Vec<Vec<Corner>> {
        let mut seen = vec![false; 5 * self.tiles.len()];
        let mut out = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut c = (start / 5, start % 5);
            loop {
                let k = 5 * c.0 + c.1;
                if seen[k] {
                    break;
                }
                seen[k] = true;
                cyc.push(c);
                match self.rotate(c) {
                    Some(n) => c = n,
                    None => break,
                }
            }
            out.push(cyc);
        }
        out
    }

    pub fn label(&self, c: Corner) -> u8 {
        self.tiles[c.0].labels[c.1]
    }

    pub fn vertex_combos(&self) -> Vec<Combo> {
        self.vertices().iter().map(|v| Combo::from_labels(&v.iter().map(|&c| self.label(c)).collect::<Vec<_>>())).collect()
    }

    /// Distinct vertex combinations that occur.
    pub fn realized_avc(&self) -> Vec<Combo> {
        let mut v = self.vertex_combos();
        v.sort();
        v.dedup();
        v
    }

    /// Number of vertices of each degree.
    pub fn degree_histogram(&self) -> BTreeMap<u32, u32> {
        let mut h = BTreeMap::new();
        for v in self.vertices() {
            *h.entry(v.len() as u32).or_insert(0) += 1;
        }
        h
    }

    /// Plain-text form, see [`CombTiling::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let seq: Vec<String> = self.arrangement.seq.iter().map(|&l| label_name(l).to_string()).collect();
        writeln!(s, "f {}", self.f()).unwrap();
        writeln!(s, "pentagon {}", self.pentagon).unwrap();
        writeln!(s, "arrangement {} {}", self.arrangement.name, seq.join(",")).unwrap();
        writeln!(s, "tiles").unwrap();
        for (t, tile) in self.tiles.iter().enumerate() {
            let l: Vec<String> = tile.labels.iter().map(|&l| ascii(l).to_string()).collect();
            writeln!(s, "{t} {} {}", l.join(" "), if tile.orientation > 0 { '+' } else { '-' }).unwrap();
        }
        writeln!(s, "matchings").unwrap();
        for (a, &b) in self.matching.iter().enumerate() {
            if (a as u32) < b && b != UNMATCHED {
                writeln!(s, "{} {} {} {}", a / 5, a % 5, b / 5, b % 5).unwrap();
            }
        }
        s
    }

    /// Parses the output of [`CombTiling::to_text`]. Lines starting with
    /// `#` are comments.
    pub fn parse(text: &str) -> Result<CombTiling, StructureError> {
        let err = |line: usize, msg: &str| StructureError::Parse { line, msg: msg.to_string() };
        let mut f = None;
        let mut pentagon = String::new();
        let mut arrangement = None;
        let mut tiles: Vec<Tile> = Vec::new();
        let mut pairs = Vec::new();
        let mut section = "";
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let w: Vec<&str> = l.split_whitespace().collect();
            match w[0] {
                "f" => f = Some(w.get(1).and_then(|x| x.parse::<usize>().ok()).ok_or_else(|| err(line, "bad f"))?),
                "pentagon" => pentagon = w[1..].join(" "),
                "arrangement" => {
                    let name = w.get(1).ok_or_else(|| err(line, "missing arrangement"))?;
                    let seq_s = w.get(2).ok_or_else(|| err(line, "missing sequence"))?;
                    let seq: Vec<u8> =
                        seq_s.split(',').map(parse_label).collect::<Option<_>>().ok_or_else(|| err(line, "bad label"))?;
                    let seq: [u8; 5] = seq.try_into().map_err(|_| err(line, "sequence needs five labels"))?;
                    arrangement = Some(Arrangement { name: name.to_string(), seq });
                }
                "tiles" | "matchings" => section = w[0],
                _ if section == "tiles" => {
                    if w.len() != 7 {
                        return Err(err(line, "tile line needs index, five labels and a sign"));
                    }
                    let idx: usize = w[0].parse().map_err(|_| err(line, "bad tile index"))?;
                    if idx != tiles.len() {
                        return Err(err(line, "tiles out of order"));
                    }
                    let labels: Vec<u8> =
                        w[1..6].iter().map(|x| parse_label(x)).collect::<Option<_>>().ok_or_else(|| err(line, "bad label"))?;
                    let orientation = match w[6] {
                        "+" => 1,
                        "-" => -1,
                        _ => return Err(err(line, "bad orientation")),
                    };
                    tiles.push(Tile { labels: labels.try_into().unwrap(), orientation });
                }
                _ if section == "matchings" => {
                    let v: Vec<usize> =
                        w.iter().map(|x| x.parse().ok()).collect::<Option<_>>().ok_or_else(|| err(line, "bad slot"))?;
                    if v.len() != 4 || v[1] > 4 || v[3] > 4 {
                        return Err(err(line, "matching line needs tile edge tile edge"));
                    }
                    pairs.push((5 * v[0] + v[1], 5 * v[2] + v[3]));
                }
                _ => return Err(err(line, "unexpected line")),
            }
        }
        let arrangement = arrangement.ok_or_else(|| err(0, "missing arrangement"))?;
        if f != Some(tiles.len()) {
            return Err(err(0, "f does not match the tile count"));
        }
        let mut matching = vec![UNMATCHED; 5 * tiles.len()];
        for (a, b) in pairs {
            if a >= matching.len() || b >= matching.len() || matching[a] != UNMATCHED || matching[b] != UNMATCHED {
                return Err(err(0, "slot matched twice or out of range"));
            }
            matching[a] = b as u32;
            matching[b] = a as u32;
        }
        let t = CombTiling { pentagon, arrangement, tiles, matching };
        t.check_structure()?;
        Ok(t)
    }

    /// Encoding minimal over all starting corners and both reading
    /// directions. Equal for isomorphic tilings, mirror images included.
    pub fn canonical_form(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for t in 0..self.tiles.len() {
            for c in 0..5 {
                for dir in [1i8, -1] {
                    let code = self.code_from(t, c, dir, best.as_deref());
                    if let Some(code) = code {
                        best = Some(code);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Breadth-first code from tile `t`, corner `c`; `None` as soon as it
    /// exceeds `bound`.
    fn code_from(&self, t0: usize, c0: usize, dir: i8, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        let n = self.tiles.len();
        let mut index = vec![u32::MAX; n];
        let mut start = vec![(0usize, 0i8); n];
        let mut order = VecDeque::from([t0]);
        index[t0] = 0;
        start[t0] = (c0, dir);
        let mut next = 1u32;
        let mut code = Vec::with_capacity(10 * n);
        let mut tight = bound.is_some();
        let push = |code: &mut Vec<u32>, x: u32, tight: &mut bool| -> bool {
            if *tight {
                let b = bound.unwrap()[code.len()];
                if x > b {
                    return false;
                }
                if x < b {
                    *tight = false;
                }
            }
            code.push(x);
            true
        };
        while let Some(t) = order.pop_front() {
            let (c, d) = start[t];
            let step = |k: usize| -> usize { (c as isize + d as isize * k as isize).rem_euclid(5) as usize };
            for k in 0..5 {
                if !push(&mut code, self.tiles[t].labels[step(k)] as u32, &mut tight) {
                    return None;
                }
            }
            for k in 0..5 {
                let e = if d > 0 { step(k) } else { (step(k) + 4) % 5 };
                let p = self.matching[5 * t + e] as usize;
                let (u, j) = (p / 5, p % 5);
                if index[u] == u32::MAX {
                    index[u] = next;
                    next += 1;
                    start[u] = (if d > 0 { (j + 1) % 5 } else { j }, d);
                    order.push_back(u);
                }
                if !push(&mut code, index[u], &mut tight) {
                    return None;
                }
            }
        }
        if tight {
            // Equal to the bound; keep the existing one.
            return None;
        }
        Some(code)
    }

    pub fn isomorphic(&self, other: &CombTiling) -> bool {
        self.f() == other.f() && self.canonical_form() == other.canonical_form()
    }
}

fn symmetric(seq: &[u8; 5]) -> bool {
    placement_orientation(seq, &{
        let mut r = *seq;
        r.reverse();
        r
    }) == Some(1)
}

fn ascii(l: u8) -> char {
    (b'a' + l) as char
}

fn parse_label(s: &str) -> Option<u8> {
    match s {
        "a" | "α" => Some(0),
        "b" | "β" => Some(1),
        "c" | "γ" => Some(2),
        "d" | "δ" => Some(3),
        "e" | "ε" => Some(4),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placements_of_distinct_labels() {
        assert_eq!(placements(&[0, 1, 3, 2, 4]).len(), 10);
        assert_eq!(placements(&[0, 0, 0, 0, 0]).len(), 1);
        assert_eq!(placement_orientation(&[0, 1, 3, 2, 4], &[3, 2, 4, 0, 1]), Some(1));
        assert_eq!(placement_orientation(&[0, 1, 3, 2, 4], &[4, 2, 3, 1, 0]), Some(-1));
        assert_eq!(placement_orientation(&[0, 1, 3, 2, 4], &[0, 1, 2, 3, 4]), None);
    }
}
