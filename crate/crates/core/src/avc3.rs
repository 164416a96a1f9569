//! Collections of angle combinations at degree 3 vertices.
//!
//! For `n` distinct angles the enumeration proceeds by the number of vertices
//! with three distinct angles (`αβγ`-type). Those vertices are all placed in
//! the necessary part. The remaining angles are then covered:
//!
//! * through a bridge, a vertex mixing a covered angle with an uncovered one,
//!   followed by a minimal cover of whatever is still missing; or
//! * without bridges, by vertices over the uncovered angles only, in which
//!   case optional vertices may not mix the two groups either.
//!
//! With no `αβγ`-type vertex the necessary part is a minimal cover. Each
//! necessary part is paired with every maximal set of further non-forcing
//! vertices (never `αβγ`-type), one row per relabelling class.

use crate::combo::{permutations, relabel_set, Combo, Perm};
use crate::linalg::forces_equal;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// One collection: vertices that must appear plus a maximal set of vertices
/// that may appear in addition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Avc3Row {
    pub n: usize,
    pub necessary: Vec<Combo>,
    pub optional: Vec<Combo>,
}

impl Avc3Row {
    pub fn new(n: usize, necessary: &[Combo], optional: &[Combo]) -> Self {
        let mut necessary = necessary.to_vec();
        let mut optional = optional.to_vec();
        necessary.sort();
        optional.sort();
        Avc3Row { n, necessary, optional }
    }

    /// Lexicographically least relabelling.
    pub fn canonical(&self) -> Avc3Row {
        let mut best: Option<(Vec<Combo>, Vec<Combo>)> = None;
        for p in permutations(self.n) {
            let key = (relabel_set(&self.necessary, &p), relabel_set(&self.optional, &p));
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        let (necessary, optional) = best.unwrap();
        Avc3Row { n: self.n, necessary, optional }
    }

    pub fn relabel(&self, p: &Perm) -> Avc3Row {
        Avc3Row {
            n: self.n,
            necessary: relabel_set(&self.necessary, p),
            optional: relabel_set(&self.optional, p),
        }
    }

    /// Number of `αβγ`-type vertices in the necessary part.
    pub fn three_distinct_count(&self) -> usize {
        self.necessary.iter().filter(|c| c.distinct() == 3).count()
    }
}

impl fmt::Display for Avc3Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nec: Vec<String> = self.necessary.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}", nec.join(", "))?;
        if !self.optional.is_empty() {
            let opt: Vec<String> = self.optional.iter().map(|c| c.to_string()).collect();
            write!(f, " opt {}", opt.join(", "))?;
        }
        write!(f, "}}")
    }
}

fn label_set(c: &Combo) -> u8 {
    c.support()
}

fn union_support(w: &[Combo], mask: u8) -> u8 {
    w.iter().fold(0u8, |acc, c| acc | (label_set(c) & mask))
}

/// Minimal sets of `cands` whose supports cover `target`.
fn minimal_covers(target: u8, cands: &[Combo]) -> Vec<Vec<Combo>> {
    let mut out = Vec::new();
    let k_max = target.count_ones() as usize;
    for k in 0..=k_max {
        let mut idx: Vec<usize> = (0..k).collect();
        if k > cands.len() {
            break;
        }
        loop {
            let w: Vec<Combo> = idx.iter().map(|&i| cands[i]).collect();
            if union_support(&w, target) == target {
                let minimal = (0..w.len()).all(|skip| {
                    let rest: Vec<Combo> =
                        w.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, c)| *c).collect();
                    union_support(&rest, target) != target
                });
                if minimal {
                    out.push(w);
                }
            }
            // advance combination
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < cands.len() - k + i {
                    idx[i] += 1;
                    for j in (i + 1)..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

/// Maximal subsets `O` of `pool` with `necessary ∪ O` non-forcing.
pub fn maximal_optional_sets(necessary: &[Combo], pool: &[Combo], n: usize) -> Vec<Vec<Combo>> {
    let cands: Vec<Combo> = pool
        .iter()
        .copied()
        .filter(|c| !necessary.contains(c))
        .filter(|c| {
            let mut v = necessary.to_vec();
            v.push(*c);
            !forces_equal(&v, n)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Combo> = Vec::new();
    fn rec(
        i: usize,
        cands: &[Combo],
        necessary: &[Combo],
        n: usize,
        cur: &mut Vec<Combo>,
        out: &mut Vec<Vec<Combo>>,
    ) {
        let ok_with = |cur: &Vec<Combo>, c: Combo| {
            let mut v = necessary.to_vec();
            v.extend_from_slice(cur);
            v.push(c);
            !forces_equal(&v, n)
        };
        if i == cands.len() {
            let maximal = cands.iter().all(|c| cur.contains(c) || !ok_with(cur, *c));
            if maximal {
                out.push(cur.clone());
            }
            return;
        }
        let c = cands[i];
        if ok_with(cur, c) {
            cur.push(c);
            rec(i + 1, cands, necessary, n, cur, out);
            cur.pop();
        }
        rec(i + 1, cands, necessary, n, cur, out);
    }
    rec(0, &cands, necessary, n, &mut cur, &mut out);
    out
}

/// Necessary parts together with the pool optional vertices are drawn from.
fn necessary_parts(n: usize) -> Vec<(Vec<Combo>, Vec<Combo>)> {
    let all = Combo::all_of_degree(n, 3);
    let t3: Vec<Combo> = all.iter().copied().filter(|c| c.distinct() == 3).collect();
    let non: Vec<Combo> = all.iter().copied().filter(|c| c.distinct() < 3).collect();
    let full: u8 = ((1u16 << n) - 1) as u8;
    let mut parts = Vec::new();
    for k in 0..=t3.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let s: Vec<Combo> = idx.iter().map(|&i| t3[i]).collect();
            if s.is_empty() || !forces_equal(&s, n) {
                let covered = s.iter().fold(0u8, |a, c| a | c.support());
                let rest = full & !covered;
                if rest == 0 {
                    if !s.is_empty() {
                        parts.push((s.clone(), non.clone()));
                    }
                } else if !s.is_empty() {
                    for b in &non {
                        let sb = b.support();
                        if sb & covered == 0 || sb & rest == 0 {
                            continue;
                        }
                        let mut sb_set = s.clone();
                        sb_set.push(*b);
                        if forces_equal(&sb_set, n) {
                            continue;
                        }
                        for w in minimal_covers(rest & !sb, &non) {
                            let mut nec = sb_set.clone();
                            if w.iter().any(|c| nec.contains(c)) {
                                continue;
                            }
                            nec.extend(w);
                            if !forces_equal(&nec, n) {
                                parts.push((nec, non.clone()));
                            }
                        }
                    }
                    let inner: Vec<Combo> =
                        non.iter().copied().filter(|c| c.support() & !rest == 0).collect();
                    let no_bridge: Vec<Combo> = non
                        .iter()
                        .copied()
                        .filter(|c| c.support() & !rest == 0 || c.support() & !covered == 0)
                        .collect();
                    for w in minimal_covers(rest, &inner) {
                        let mut nec = s.clone();
                        nec.extend(w);
                        if !forces_equal(&nec, n) {
                            parts.push((nec, no_bridge.clone()));
                        }
                    }
                } else {
                    for w in minimal_covers(full, &non) {
                        if !forces_equal(&w, n) {
                            parts.push((w, non.clone()));
                        }
                    }
                }
            }
            // advance
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < t3.len() - k + i {
                    idx[i] += 1;
                    for j in (i + 1)..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    parts
}

/// All collections for `n` distinct angles, canonical and sorted.
pub fn enumerate_avc3(n: usize) -> Vec<Avc3Row> {
    assert!((1..=5).contains(&n), "between one and five distinct angles");
    let mut seen_parts: BTreeSet<(Vec<Combo>, Vec<Combo>)> = BTreeSet::new();
    let mut rows: BTreeSet<Avc3Row> = BTreeSet::new();
    for (nec, pool) in necessary_parts(n) {
        let mut key_n = nec.clone();
        key_n.sort();
        if !seen_parts.insert((key_n, pool.clone())) {
            continue;
        }
        for opt in maximal_optional_sets(&nec, &pool, n) {
            rows.insert(Avc3Row::new(n, &nec, &opt).canonical());
        }
    }
    rows.into_iter().collect()
}

/// Counts for `n = 1..=5`.
pub fn table_counts() -> [usize; 5] {
    let mut out = [0; 5];
    for n in 1..=5 {
        out[n - 1] = enumerate_avc3(n).len();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_avc3(1).len(), 1);
        assert_eq!(enumerate_avc3(2).len(), 1);
        assert_eq!(enumerate_avc3(3).len(), 3);
    }

    #[test]
    fn three_angle_rows() {
        let rows: Vec<String> = enumerate_avc3(3).iter().map(|r| r.to_string()).collect();
        assert!(rows.contains(&"{αβγ opt γ³}".to_string()), "{rows:?}");
    }

    #[test]
    fn canonical_is_idempotent() {
        for r in enumerate_avc3(4) {
            assert_eq!(r.canonical(), r);
        }
    }
}
