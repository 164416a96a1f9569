//! Filters applied to the real solutions of every case, the resulting
//! candidate list, and the derivation of all vertices a candidate allows.

use crate::cases::{all_cases, exceptional_case, Arrangement, CaseSpec};
use crate::combo::Combo;
use crate::linalg::{LinearSystem, Q};
use crate::solver::{build_system, solve_all, RealSolution, SolveConfig};
use crate::sphertrig::{ordering_admissible, realize_pentagon};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub angle_sum: bool,
    pub tiling_number: bool,
    pub ordering: bool,
    pub simple: bool,
    pub distinct: bool,
}

impl Verdicts {
    pub fn survives(&self) -> bool {
        self.angle_sum && self.tiling_number && self.ordering && self.distinct && self.simple
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateSolution {
    pub case_label: String,
    pub arrangement: Arrangement,
    /// Angles by label, radians.
    pub angles: [f64; 5],
    pub cos_a: f64,
    /// `4π / (Σ − 3π)`.
    pub f_value: f64,
    pub f: Option<u32>,
    pub residual: f64,
    pub verdicts: Verdicts,
}

impl CandidateSolution {
    pub fn angles_over_pi(&self) -> [f64; 5] {
        self.angles.map(|a| a / PI)
    }

    /// Angles in boundary order.
    pub fn boundary_angles(&self) -> [f64; 5] {
        self.arrangement.apply(&self.angles)
    }
}

fn pentagon_sum(pattern: &Combo, angles: &[f64; 5]) -> f64 {
    pattern.angle_sum(angles)
}

/// Every prescribed vertex sums to `2π` within `1e−7`.
pub fn angle_sum_test(angles: &[f64; 5], case: &CaseSpec) -> bool {
    case.vertices.iter().all(|v| (v.angle_sum(angles) - 2.0 * PI).abs() < 1e-7)
}

/// `f = 4π/(Σ − 3π)` when it is an even integer (within `1e−3`) at least 16.
pub fn tiling_number_test(angles: &[f64; 5], pattern: &Combo) -> Option<u32> {
    let f = tiling_number(angles, pattern);
    let r = f.round();
    (f.is_finite() && (f - r).abs() < 1e-3 && r >= 16.0 && (r as i64) % 2 == 0).then_some(r as u32)
}

pub fn tiling_number(angles: &[f64; 5], pattern: &Combo) -> f64 {
    4.0 * PI / (pentagon_sum(pattern, angles) - 3.0 * PI)
}

/// Runs the filters on one real solution.
pub fn evaluate(case: &CaseSpec, arr: &Arrangement, s: &RealSolution) -> CandidateSolution {
    let angles = s.angles();
    let f_value = tiling_number(&angles, &case.pattern);
    let angle_sum = angle_sum_test(&angles, case);
    let f = tiling_number_test(&angles, &case.pattern);
    let boundary = arr.apply(&angles);
    let ordering = ordering_admissible(&boundary, 1e-9);
    let used: Vec<usize> = (0..5).filter(|&l| case.pattern.count(l) > 0).collect();
    let distinct = used
        .iter()
        .enumerate()
        .all(|(i, &l)| used[i + 1..].iter().all(|&m| (angles[l] - angles[m]).abs() > 1e-7));
    let p = realize_pentagon(&boundary, s.t.acos());
    let simple = p.closure_residual < 1e-6 && p.is_simple();
    CandidateSolution {
        case_label: case.label.clone(),
        arrangement: arr.clone(),
        angles,
        cos_a: s.t,
        f_value,
        f,
        residual: s.residual,
        verdicts: Verdicts { angle_sum, tiling_number: f.is_some(), ordering, simple, distinct },
    }
}

/// Per case and arrangement tallies.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case_label: String,
    pub arrangement: String,
    pub real_solutions: usize,
    pub angle_sum: usize,
    pub tiling_number: usize,
    pub survivors: usize,
}

/// Survivors that share a pentagon.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateGroup {
    pub cases: Vec<String>,
    pub arrangement: String,
    pub angles: [f64; 5],
    pub cos_a: f64,
    pub f: u32,
    pub simple: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub config: SolveConfig,
    pub summaries: Vec<CaseSummary>,
    pub survivors: Vec<CandidateSolution>,
    pub groups: Vec<CandidateGroup>,
}

/// Solves and filters one case in every listed arrangement.
pub fn classify_case(case: &CaseSpec, cfg: &SolveConfig) -> (Vec<CaseSummary>, Vec<CandidateSolution>) {
    let mut summaries = Vec::new();
    let mut survivors = Vec::new();
    for arr in &case.arrangements {
        let Ok(sys) = build_system(case, arr) else { continue };
        let sols = solve_all(&sys, cfg);
        let evals: Vec<CandidateSolution> = sols.iter().map(|s| evaluate(case, arr, s)).collect();
        summaries.push(CaseSummary {
            case_label: case.label.clone(),
            arrangement: arr.name.clone(),
            real_solutions: evals.len(),
            angle_sum: evals.iter().filter(|c| c.verdicts.angle_sum).count(),
            tiling_number: evals.iter().filter(|c| c.verdicts.angle_sum && c.verdicts.tiling_number).count(),
            survivors: evals.iter().filter(|c| c.verdicts.survives()).count(),
        });
        survivors.extend(evals.into_iter().filter(|c| c.verdicts.survives()));
    }
    (summaries, survivors)
}

/// Every case in the list plus the exceptional case.
pub fn classify(cfg: &SolveConfig) -> ClassifyReport {
    let mut cases: Vec<CaseSpec> = all_cases().to_vec();
    cases.push(exceptional_case());
    classify_cases(&cases, cfg)
}

pub fn classify_cases(cases: &[CaseSpec], cfg: &SolveConfig) -> ClassifyReport {
    let mut summaries = Vec::new();
    let mut survivors = Vec::new();
    for case in cases {
        let (s, c) = classify_case(case, cfg);
        summaries.extend(s);
        survivors.extend(c);
    }
    let groups = merge(&survivors, 1e-5);
    ClassifyReport { config: cfg.clone(), summaries, survivors, groups }
}

/// Groups survivors in the same arrangement whose angles and `cos a` agree
/// within `tol·π` and `tol`.
pub fn merge(survivors: &[CandidateSolution], tol: f64) -> Vec<CandidateGroup> {
    let mut groups: Vec<CandidateGroup> = Vec::new();
    for c in survivors {
        let same = groups.iter_mut().find(|g| {
            g.arrangement == c.arrangement.name
                && (g.cos_a - c.cos_a).abs() < tol
                && g.angles.iter().zip(&c.angles).all(|(a, b)| (a - b).abs() < tol * PI)
        });
        match same {
            Some(g) => {
                if !g.cases.contains(&c.case_label) {
                    g.cases.push(c.case_label.clone());
                }
            }
            None => groups.push(CandidateGroup {
                cases: vec![c.case_label.clone()],
                arrangement: c.arrangement.name.clone(),
                angles: c.angles,
                cos_a: c.cos_a,
                f: c.f.unwrap_or(0),
                simple: c.verdicts.simple,
            }),
        }
    }
    groups
}

/// Angles (units of π) fixed by the vertex equations together with the
/// pentagon angle sum for `f` tiles.
pub fn exact_angles(case: &CaseSpec, f: u32) -> [Option<Q>; 5] {
    let mut sys = LinearSystem::from_combos(&case.vertices, 5);
    let row: Vec<Q> = case.pattern.counts().iter().map(|&c| Q::from_integer(c as i64)).collect();
    sys.push(row, Q::from_integer(3) + Q::new(4, f as i64));
    for l in 0..5 {
        if case.pattern.count(l) == 0 {
            let mut e = vec![Q::from_integer(0); 5];
            e[l] = Q::from_integer(1);
            sys.push(e, Q::from_integer(0));
        }
    }
    let r = sys.rref();
    std::array::from_fn(|l| if case.pattern.count(l) > 0 { r.determined(l) } else { None })
}

/// All vertices of degree at least 3 whose angle sum is `2π` within
/// `1e−5·π` per approximate angle used.
///
/// `angles` are in units of π; `exact` marks exactly known angles.
pub fn derive_avc(angles: &[f64; 5], exact: &[Option<Q>; 5], labels: &[usize]) -> Vec<Combo> {
    let vals: Vec<f64> = labels
        .iter()
        .map(|&l| exact[l].map(|q| *q.numer() as f64 / *q.denom() as f64).unwrap_or(angles[l]))
        .collect();
    let bounds: Vec<u32> = vals.iter().map(|v| (2.0 / v + 1e-9).floor() as u32).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u32; labels.len()];
    fn rec(
        i: usize,
        sum: f64,
        approx: u32,
        counts: &mut Vec<u32>,
        vals: &[f64],
        bounds: &[u32],
        is_exact: &[bool],
        labels: &[usize],
        out: &mut Vec<Combo>,
    ) {
        if sum > 2.0 + 1e-9 + 1e-5 * approx as f64 + 1e-5 * 20.0 {
            return;
        }
        if i == vals.len() {
            let deg: u32 = counts.iter().sum();
            if deg >= 3 && (sum - 2.0).abs() <= 1e-5 * approx as f64 + 1e-12 {
                let mut c = [0u8; 5];
                for (k, &l) in labels.iter().enumerate() {
                    c[l] = counts[k] as u8;
                }
                out.push(Combo::from_counts(c));
            }
            return;
        }
        for m in 0..=bounds[i] {
            counts[i] = m;
            let a = if is_exact[i] { 0 } else { m };
            rec(i + 1, sum + m as f64 * vals[i], approx + a, counts, vals, bounds, is_exact, labels, out);
        }
        counts[i] = 0;
    }
    let is_exact: Vec<bool> = labels.iter().map(|&l| exact[l].is_some()).collect();
    rec(0, 0.0, 0, &mut counts, &vals, &bounds, &is_exact, labels, &mut out);
    out.sort();
    out
}

/// Result of counting vertices in a tiling with `f` tiles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneResult {
    /// Vertices used by at least one feasible assignment.
    pub avc: Vec<Combo>,
    /// Feasible assignments `n_v`, in `avc_in` order.
    pub assignments: Vec<Vec<u32>>,
}

impl PruneResult {
    /// Vertex counts by degree for each assignment.
    pub fn degree_histograms(&self, avc_in: &[Combo]) -> Vec<std::collections::BTreeMap<u32, u32>> {
        self.assignments
            .iter()
            .map(|a| {
                let mut h = std::collections::BTreeMap::new();
                for (n, c) in a.iter().zip(avc_in) {
                    if *n > 0 {
                        *h.entry(c.degree()).or_insert(0) += n;
                    }
                }
                h
            })
            .collect()
    }
}

/// Integer vertex counts: each label `l` appears `f·pattern_l` times and the
/// number of vertices is `3f/2 + 2`. Returns `None` when no assignment exists.
pub fn avc_prune(avc: &[Combo], pattern: &Combo, f: u32) -> Option<PruneResult> {
    let need: Vec<i64> = (0..5).map(|l| pattern.count(l) as i64 * f as i64).collect();
    let vertices = 3 * f as i64 / 2 + 2;
    let mut assignments = Vec::new();
    let mut cur = vec![0u32; avc.len()];
    fn rec(i: usize, avc: &[Combo], left: &mut Vec<i64>, vleft: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == avc.len() {
            if vleft == 0 && left.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let c = avc[i];
        // The last combo using a label must finish it; bound by remaining counts.
        let max = (0..5)
            .filter(|&l| c.count(l) > 0)
            .map(|l| left[l] / c.count(l) as i64)
            .min()
            .unwrap_or(0)
            .min(vleft);
        for n in 0..=max {
            for l in 0..5 {
                left[l] -= n * c.count(l) as i64;
            }
            cur[i] = n as u32;
            // Labels no later combo can supply must be exhausted now.
            let ok = (0..5).all(|l| left[l] == 0 || avc[i + 1..].iter().any(|d| d.count(l) > 0));
            if ok {
                rec(i + 1, avc, left, vleft - n, cur, out);
            }
            for l in 0..5 {
                left[l] += n * c.count(l) as i64;
            }
        }
        cur[i] = 0;
    }
    let mut left = need;
    rec(0, avc, &mut left, vertices, &mut cur, &mut assignments);
    if assignments.is_empty() {
        return None;
    }
    let pruned: Vec<Combo> =
        avc.iter().enumerate().filter(|(i, _)| assignments.iter().any(|a| a[*i] > 0)).map(|(_, c)| *c).collect();
    Some(PruneResult { avc: pruned, assignments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::parse_avc;

    #[test]
    fn dodecahedron_avc() {
        let exact = [Some(Q::new(2, 3)), None, None, None, None];
        let avc = derive_avc(&[2.0 / 3.0, 0.0, 0.0, 0.0, 0.0], &exact, &[0]);
        assert_eq!(avc, parse_avc("a3").unwrap());
        let p: Combo = "a5".parse().unwrap();
        let r = avc_prune(&avc, &p, 12).unwrap();
        assert_eq!(r.assignments, vec![vec![20]]);
    }

    #[test]
    fn prune_exceptional_f24() {
        let avc = parse_avc("abc, de2, cd2e, c4, c2d3, d6").unwrap();
        let p: Combo = "abcde".parse().unwrap();
        let r = avc_prune(&avc, &p, 24).unwrap();
        assert_eq!(r.avc, parse_avc("abc, de2, d6").unwrap());
        assert_eq!(r.assignments.len(), 1);
    }

    #[test]
    fn infeasible_prune() {
        let p: Combo = "abcde".parse().unwrap();
        assert!(avc_prune(&parse_avc("abc, d3").unwrap(), &p, 24).is_none());
    }

    #[test]
    fn tiling_number_rejects_twelve() {
        let p: Combo = "a5".parse().unwrap();
        let ang = [2.0 * PI / 3.0, 0.0, 0.0, 0.0, 0.0];
        assert!((tiling_number(&ang, &p) - 12.0).abs() < 1e-9);
        assert_eq!(tiling_number_test(&ang, &p), None);
    }
}
