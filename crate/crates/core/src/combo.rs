//! Angle labels and angle combinations at a vertex.
//!
//! A pentagon in this crate has at most five distinct angle values, labelled
//! `0..5` and printed as `α β γ δ ε`. A [`Combo`] is a multiset of labels, the
//! angles that meet at one vertex of a tiling.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Maximum number of distinct angle labels.
pub const MAX_LABELS: usize = 5;

/// Greek names of the labels, in label order.
pub const GREEK: [char; MAX_LABELS] = ['α', 'β', 'γ', 'δ', 'ε'];

/// A label permutation: `perm[i]` is the new label of old label `i`.
pub type Perm = [u8; MAX_LABELS];

/// Identity permutation on all five labels.
pub const IDENTITY: Perm = [0, 1, 2, 3, 4];

/// Multiset of angle labels meeting at a vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Combo {
    counts: [u8; MAX_LABELS],
}

/// Error from parsing a [`Combo`] or an AVC list.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseComboError {
    #[error("unknown angle symbol {0:?}")]
    UnknownSymbol(char),
    #[error("exponent without a preceding angle in {0:?}")]
    DanglingExponent(String),
    #[error("empty angle combination")]
    Empty,
}

impl Combo {
    pub fn from_counts(counts: [u8; MAX_LABELS]) -> Self {
        Combo { counts }
    }

    /// Builds a combo from a list of labels, e.g. `[0, 3, 3]` is αδ².
    pub fn from_labels(labels: &[u8]) -> Self {
        let mut counts = [0u8; MAX_LABELS];
        for &l in labels {
            counts[l as usize] += 1;
        }
        Combo { counts }
    }

    pub fn counts(&self) -> [u8; MAX_LABELS] {
        self.counts
    }

    pub fn count(&self, label: usize) -> u8 {
        self.counts[label]
    }

    /// Number of corners at the vertex.
    pub fn degree(&self) -> u32 {
        self.counts.iter().map(|&c| c as u32).sum()
    }

    /// Number of distinct labels present.
    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Bitmask of labels present.
    pub fn support(&self) -> u8 {
        let mut m = 0u8;
        for (i, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    /// Sub-multiset test.
    pub fn contains(&self, other: &Combo) -> bool {
        self.counts.iter().zip(other.counts.iter()).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &Combo) -> Combo {
        let mut counts = self.counts;
        for i in 0..MAX_LABELS {
            counts[i] += other.counts[i];
        }
        Combo { counts }
    }

    pub fn with_label(&self, label: u8) -> Combo {
        let mut counts = self.counts;
        counts[label as usize] += 1;
        Combo { counts }
    }

    pub fn relabel(&self, perm: &Perm) -> Combo {
        let mut counts = [0u8; MAX_LABELS];
        for i in 0..MAX_LABELS {
            if self.counts[i] > 0 {
                counts[perm[i] as usize] += self.counts[i];
            }
        }
        Combo { counts }
    }

    /// Angle sum given label values.
    pub fn angle_sum(&self, values: &[f64]) -> f64 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| c as f64 * values[i])
            .sum()
    }

    /// All multisets of the given degree over labels `0..n`, in lexicographic
    /// order of their sorted label lists.
    pub fn all_of_degree(n: usize, degree: usize) -> Vec<Combo> {
        fn rec(n: usize, start: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Combo>) {
            if left == 0 {
                out.push(Combo::from_labels(cur));
                return;
            }
            for l in start..n {
                cur.push(l as u8);
                rec(n, l, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, degree, &mut Vec::new(), &mut out);
        out
    }

    /// ASCII form such as `a b2 d` without spaces: `ab2d`.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                s.push((b'a' + i as u8) as char);
                if c > 1 {
                    s.push_str(&c.to_string());
                }
            }
        }
        s
    }
}

fn superscript(n: u8) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                write!(f, "{}", GREEK[i])?;
                if c > 1 {
                    write!(f, "{}", superscript(c))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn symbol_label(c: char) -> Option<u8> {
    match c {
        'α' | 'a' | 'A' => Some(0),
        'β' | 'b' | 'B' => Some(1),
        'γ' | 'c' | 'C' | 'g' | 'G' => Some(2),
        'δ' | 'd' | 'D' => Some(3),
        'ε' | 'ϵ' | 'e' | 'E' => Some(4),
        _ => None,
    }
}

fn superscript_digit(c: char) -> Option<u32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴' => Some(4),
        '⁵' => Some(5),
        '⁶' => Some(6),
        '⁷' => Some(7),
        '⁸' => Some(8),
        '⁹' => Some(9),
        _ => None,
    }
}

impl FromStr for Combo {
    type Err = ParseComboError;

    /// Accepts `αβ²γ`, `ab2c`, `a b^2 c`, `abbc`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut counts = [0u32; MAX_LABELS];
        let mut last: Option<u8> = None;
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() || c == '*' || c == '·' {
                continue;
            }
            if let Some(l) = symbol_label(c) {
                counts[l as usize] += 1;
                last = Some(l);
                continue;
            }
            let digit = if c == '^' {
                None
            } else {
                c.to_digit(10).or_else(|| superscript_digit(c))
            };
            if c != '^' && digit.is_none() {
                return Err(ParseComboError::UnknownSymbol(c));
            }
            let l = last.ok_or_else(|| ParseComboError::DanglingExponent(s.to_string()))?;
            let mut value = digit.unwrap_or(0);
            let mut seen = digit.is_some();
            while let Some(&n) = chars.peek() {
                match n.to_digit(10).or_else(|| superscript_digit(n)) {
                    Some(d) => {
                        value = value * 10 + d;
                        seen = true;
                        chars.next();
                    }
                    None => break,
                }
            }
            if !seen {
                return Err(ParseComboError::DanglingExponent(s.to_string()));
            }
            // The label was already counted once when it was read.
            counts[l as usize] += value.saturating_sub(1);
            last = None;
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(ParseComboError::Empty);
        }
        let mut out = [0u8; MAX_LABELS];
        for i in 0..MAX_LABELS {
            out[i] = counts[i] as u8;
        }
        Ok(Combo { counts: out })
    }
}

/// Parses a comma or semicolon separated list such as `abc, d3, de3`.
pub fn parse_avc(spec: &str) -> Result<Vec<Combo>, ParseComboError> {
    let spec = spec.trim().trim_start_matches('{').trim_end_matches('}');
    spec.split([',', ';'])
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse())
        .collect()
}

/// Formats a list of combos as `{αβγ, δ³}`, by degree and then with earlier
/// labels first.
pub fn format_avc(combos: &[Combo]) -> String {
    let mut sorted = combos.to_vec();
    sorted.sort_by_key(|c| (c.degree(), std::cmp::Reverse(c.counts())));
    let parts: Vec<String> = sorted.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// All permutations of labels `0..n`, extended by the identity on the rest.
pub fn permutations(n: usize) -> Vec<Perm> {
    fn rec(n: usize, k: usize, cur: &mut Perm, used: &mut [bool; MAX_LABELS], out: &mut Vec<Perm>) {
        if k == n {
            out.push(*cur);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[k] = v as u8;
                rec(n, k + 1, cur, used, out);
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = IDENTITY;
    rec(n, 0, &mut cur, &mut [false; MAX_LABELS], &mut out);
    out
}

/// Sorted relabelled copy of a combo set.
pub fn relabel_set(set: &[Combo], perm: &Perm) -> Vec<Combo> {
    let mut v: Vec<Combo> = set.iter().map(|c| c.relabel(perm)).collect();
    v.sort();
    v
}

/// Label name for display.
pub fn label_name(label: u8) -> char {
    GREEK[label as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let c: Combo = "αβ²γ".parse().unwrap();
        assert_eq!(c.counts(), [1, 2, 1, 0, 0]);
        assert_eq!(c.to_string(), "αβ²γ");
        assert_eq!("ab2c".parse::<Combo>().unwrap(), c);
        assert_eq!("a b^2 c".parse::<Combo>().unwrap(), c);
        assert_eq!("abbc".parse::<Combo>().unwrap(), c);
        assert_eq!("d^10".parse::<Combo>().unwrap().degree(), 10);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("xq".parse::<Combo>().is_err());
        assert!("2a".parse::<Combo>().is_err());
        assert!("".parse::<Combo>().is_err());
    }

    #[test]
    fn avc_list() {
        let v = parse_avc("{abc, d3, de3}").unwrap();
        assert_eq!(format_avc(&v), "{αβγ, δ³, δε³}");
    }

    #[test]
    fn degree_three_counts() {
        assert_eq!(Combo::all_of_degree(5, 3).len(), 35);
        assert_eq!(Combo::all_of_degree(5, 4).len(), 70);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn relabel_moves_counts() {
        let c: Combo = "ab2".parse().unwrap();
        let p: Perm = [1, 0, 2, 3, 4];
        assert_eq!(c.relabel(&p).to_string(), "α²β");
    }
}
