//! Exhaustive search for edge-to-edge tilings with a given AVC.
//!
//! The state is an oriented partial surface of labelled tiles. Every
//! unmatched slot is the outgoing edge of exactly one boundary vertex and
//! the incoming edge of another. The search picks the slot with the fewest
//! options and either glues it to another unmatched slot or attaches a new
//! tile across it. Vertex fans are pruned against the AVC: open fans must be
//! sub-multisets of a member, closed fans must be members.

use super::generate::sub_multisets;
use super::map::{placements, CombTiling, Tile, UNMATCHED};
use crate::cases::Arrangement;
use crate::combo::Combo;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub arrangement: Arrangement,
    pub avc: Vec<Combo>,
    pub f: usize,
    /// Nodes before giving up.
    pub node_budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    Complete,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Pairwise non-isomorphic, mirror images identified.
    pub tilings: Vec<CombTiling>,
    pub nodes: u64,
}

#[derive(Clone, Copy)]
enum Move {
    Glue(usize),
    Attach([u8; 5]),
}

struct Search<'a> {
    cfg: &'a SearchConfig,
    partial: HashSet<[u8; 5]>,
    exact: HashSet<[u8; 5]>,
    opts: Vec<[u8; 5]>,
    labels: Vec<[u8; 5]>,
    matching: Vec<u32>,
    nodes: u64,
    out_of_budget: bool,
    found: HashMap<Vec<u32>, CombTiling>,
}

fn add(mut a: [u8; 5], b: &[u8; 5]) -> [u8; 5] {
    for i in 0..5 {
        a[i] += b[i];
    }
    a
}

fn with(mut a: [u8; 5], l: u8) -> [u8; 5] {
    a[l as usize] += 1;
    a
}

impl Search<'_> {
    /// For every unmatched slot `s`: the incoming slot of the open fan whose
    /// outgoing slot is `s`, and the label counts of the fan entered by `s`.
    fn fans(&self) -> (Vec<usize>, HashMap<usize, [u8; 5]>, Vec<usize>) {
        let mut open = Vec::new();
        let mut head = vec![usize::MAX; self.matching.len()];
        let mut counts = HashMap::new();
        for s in 0..self.matching.len() {
            if self.matching[s] != UNMATCHED {
                continue;
            }
            open.push(s);
            // Walk back from corner (t, i) through matched incoming slots.
            let (mut t, mut i) = (s / 5, s % 5);
            let mut c = [0u8; 5];
            loop {
                c[self.labels[t][i] as usize] += 1;
                let inc = 5 * t + (i + 4) % 5;
                let p = self.matching[inc];
                if p == UNMATCHED {
                    head[s] = inc;
                    counts.insert(inc, c);
                    break;
                }
                (t, i) = (p as usize / 5, p as usize % 5);
            }
        }
        (open, counts, head)
    }

    fn moves(&self, s: usize, open: &[usize], counts: &HashMap<usize, [u8; 5]>, head: &[usize]) -> Vec<Move> {
        let mut out = Vec::new();
        let ok = |c: [u8; 5], closed: bool| if closed { self.exact.contains(&c) } else { self.partial.contains(&c) };
        for &r in open {
            if r == s {
                continue;
            }
            // Vertex at the start of s meets the vertex at the end of r, and
            // the end of s meets the start of r.
            let first = if head[s] == r { ok(counts[&r], true) } else { ok(add(counts[&head[s]], &counts[&r]), false) };
            if !first {
                continue;
            }
            let second = if head[r] == s { ok(counts[&s], true) } else { ok(add(counts[&s], &counts[&head[r]]), false) };
            if second {
                out.push(Move::Glue(r));
            }
        }
        if self.labels.len() < self.cfg.f {
            for p in &self.opts {
                // New tile corner 1 sits at the start of s, corner 0 at its end.
                if ok(with(counts[&head[s]], p[1]), false) && ok(with(counts[&s], p[0]), false) {
                    out.push(Move::Attach(*p));
                }
            }
        }
        out
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget {
            self.out_of_budget = true;
            return;
        }
        let (open, counts, head) = self.fans();
        if open.is_empty() {
            self.record();
            return;
        }
        let mut best: Option<(usize, Vec<Move>)> = None;
        for &s in &open {
            let m = self.moves(s, &open, &counts, &head);
            if best.as_ref().is_none_or(|(_, b)| m.len() < b.len()) {
                let empty = m.is_empty();
                best = Some((s, m));
                if empty {
                    return;
                }
            }
        }
        let (s, moves) = best.unwrap();
        for mv in moves {
            match mv {
                Move::Glue(r) => {
                    self.matching[s] = r as u32;
                    self.matching[r] = s as u32;
                    self.run();
                    self.matching[s] = UNMATCHED;
                    self.matching[r] = UNMATCHED;
                }
                Move::Attach(p) => {
                    let n = self.labels.len();
                    self.labels.push(p);
                    self.matching.extend([s as u32, UNMATCHED, UNMATCHED, UNMATCHED, UNMATCHED]);
                    self.matching[s] = 5 * n as u32;
                    self.run();
                    self.labels.pop();
                    self.matching.truncate(5 * n);
                    self.matching[s] = UNMATCHED;
                }
            }
            if self.out_of_budget {
                return;
            }
        }
    }

    fn record(&mut self) {
        if self.labels.len() != self.cfg.f {
            return;
        }
        let tiles = self
            .labels
            .iter()
            .map(|l| Tile {
                labels: *l,
                orientation: super::map::placement_orientation(&self.cfg.arrangement.seq, l).unwrap_or(1),
            })
            .collect();
        let t = CombTiling {
            pentagon: String::new(),
            arrangement: self.cfg.arrangement.clone(),
            tiles,
            matching: self.matching.clone(),
        };
        // Closed orientable surface; keep spheres only.
        let f = t.f() as i64;
        if t.vertices().len() as i64 - 5 * f / 2 + f != 2 {
            return;
        }
        self.found.entry(t.canonical_form()).or_insert(t);
    }
}

/// Enumerates all tilings by `f` congruent tiles with the arrangement of
/// `cfg`, every vertex in `cfg.avc`, up to isomorphism.
pub fn search(cfg: &SearchConfig) -> SearchOutcome {
    let opts = placements(&cfg.arrangement.seq);
    let partial = sub_multisets(&cfg.avc);
    let opts: Vec<[u8; 5]> = opts.into_iter().filter(|p| p.iter().all(|&l| partial.contains(&with([0; 5], l)))).collect();
    let exact = cfg.avc.iter().map(|c| c.counts()).collect();
    let mut s = Search {
        cfg,
        partial,
        exact,
        opts: opts.clone(),
        labels: Vec::new(),
        matching: Vec::new(),
        nodes: 0,
        out_of_budget: false,
        found: HashMap::new(),
    };
    // Any tile can be read from any corner, and mirror images are identified.
    if let Some(&first) = opts.first() {
        if cfg.f > 0 {
            s.labels.push(first);
            s.matching.extend([UNMATCHED; 5]);
            s.run();
        }
    }
    let mut tilings: Vec<(Vec<u32>, CombTiling)> = s.found.into_iter().collect();
    tilings.sort_by(|a, b| a.0.cmp(&b.0));
    SearchOutcome {
        status: if s.out_of_budget { SearchStatus::Inconclusive } else { SearchStatus::Complete },
        tilings: tilings.into_iter().map(|(_, t)| t).collect(),
        nodes: s.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::parse_avc;

    fn run(seq: [u8; 5], avc: &str, f: usize) -> SearchOutcome {
        search(&SearchConfig {
            arrangement: Arrangement { name: "test".into(), seq },
            avc: parse_avc(avc).unwrap(),
            f,
            node_budget: 10_000_000,
        })
    }

    #[test]
    fn dodecahedron_is_unique() {
        let out = run([0; 5], "a3", 12);
        assert_eq!(out.status, SearchStatus::Complete);
        assert_eq!(out.tilings.len(), 1);
        assert_eq!(out.tilings[0].vertices().len(), 20);
    }

    #[test]
    fn wrong_tile_count_gives_nothing() {
        let out = run([0; 5], "a3", 14);
        assert_eq!(out.status, SearchStatus::Complete);
        assert!(out.tilings.is_empty());
    }
}
