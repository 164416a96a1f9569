//! End-to-end classification: candidates, their vertex sets, tilings,
//! certificates, and the files written by `report`.

use crate::cases::{all_cases, exceptional_case, find_case, Arrangement, CaseSpec, Family, ARRANGEMENTS};
use crate::certify::{certify_all, exceptional_region_scan, format_curves, CertCheck, RegionScan};
use crate::classify::{avc_prune, classify_cases, derive_avc, exact_angles, CandidateGroup, ClassifyReport};
use crate::combo::{format_avc, parse_avc, Combo};
use crate::solver::SolveConfig;
use crate::tiling::generate::{assign_labels, earth_map_faces, pentagonal_subdivision, special_tiling_f20, Base};
use crate::tiling::map::Tile;
use crate::tiling::validate::to_off;
use crate::tiling::{search, validate, CombTiling, SearchConfig, SearchStatus, TileShape, TilingReport};
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Clone, Debug, Serialize)]
pub struct PipelineConfig {
    pub solve: SolveConfig,
    /// Restricts the case list; `None` runs every family and the
    /// exceptional case.
    pub families: Option<Vec<Family>>,
    pub skip_search: bool,
    /// Searches with more tiles are skipped and flagged.
    pub search_max_f: usize,
    pub node_budget: u64,
    pub region_resolution: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            solve: SolveConfig::default(),
            families: None,
            skip_search: false,
            search_max_f: 60,
            node_budget: 50_000_000,
            region_resolution: 500,
        }
    }
}

impl PipelineConfig {
    /// Applies `PENTASPHERE_NODE_BUDGET`, `PENTASPHERE_SEARCH_MAX_F`,
    /// `PENTASPHERE_STARTS` and `PENTASPHERE_REGION_RESOLUTION` when set.
    pub fn with_env_overrides(mut self) -> Self {
        fn var<T: std::str::FromStr>(name: &str) -> Option<T> {
            std::env::var(name).ok()?.parse().ok()
        }
        if let Some(v) = var("PENTASPHERE_NODE_BUDGET") {
            self.node_budget = v;
        }
        if let Some(v) = var("PENTASPHERE_SEARCH_MAX_F") {
            self.search_max_f = v;
        }
        if let Some(v) = var("PENTASPHERE_STARTS") {
            self.solve.starts = v;
        }
        if let Some(v) = var("PENTASPHERE_REGION_RESOLUTION") {
            self.region_resolution = v;
        }
        self
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("stage {stage}: {detail}")]
    Stage { stage: &'static str, detail: String },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn stage(stage: &'static str, detail: impl Into<String>) -> PipelineError {
    PipelineError::Stage { stage, detail: detail.into() }
}

/// Vertex sets of one candidate pentagon.
#[derive(Clone, Debug, Serialize)]
pub struct AvcRecord {
    pub cases: Vec<String>,
    pub arrangement: String,
    pub f: u32,
    pub derived: String,
    /// Vertices used by some integer vertex count; `None` if there is none.
    pub pruned: Option<String>,
    #[serde(skip)]
    pub pruned_combos: Vec<Combo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub cases: Vec<String>,
    pub arrangement: String,
    pub f: u32,
    pub avc: String,
    /// `None` when the search was skipped.
    pub status: Option<SearchStatus>,
    pub nodes: u64,
    /// Combinatorial tilings up to isomorphism.
    pub combinatorial: usize,
    /// Those that realize with the candidate pentagon.
    pub geometric: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Uniqueness {
    /// A complete search found no other tiling for the pentagon.
    Verified,
    Inconclusive,
    Unverified,
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingEntry {
    pub name: String,
    pub f: usize,
    pub cases: Vec<String>,
    pub shape: TileShape,
    pub avc: String,
    pub report: TilingReport,
    pub uniqueness: Uniqueness,
    #[serde(skip)]
    pub tiling: CombTiling,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub config: PipelineConfig,
    pub candidates: ClassifyReport,
    pub avcs: Vec<AvcRecord>,
    pub searches: Vec<SearchRecord>,
    pub certificates: Vec<CertCheck>,
    pub region: RegionScan,
    pub tilings: Vec<TilingEntry>,
}

/// Shape of a candidate group.
pub fn group_shape(g: &CandidateGroup) -> Option<TileShape> {
    Some(TileShape {
        name: format!("{}-{}", g.cases.join("/"), g.arrangement),
        arrangement: Arrangement::by_name(&g.arrangement)?,
        angles: g.angles,
        cos_a: g.cos_a,
    })
}

/// Derived and pruned vertex sets of a group. Exact angles from any of the
/// merged cases are used.
pub fn group_avc(g: &CandidateGroup) -> AvcRecord {
    let cases: Vec<CaseSpec> = g.cases.iter().filter_map(|c| find_case(c)).collect();
    let mut exact = [None; 5];
    for c in &cases {
        for (l, q) in exact_angles(c, g.f).into_iter().enumerate() {
            exact[l] = exact[l].or(q);
        }
    }
    let pattern = cases.first().map(|c| c.pattern).unwrap_or(Combo::from_counts([1; 5]));
    let labels: Vec<usize> = (0..5).filter(|&l| pattern.count(l) > 0).collect();
    let derived = derive_avc(&g.angles.map(|a| a / PI), &exact, &labels);
    let pruned = avc_prune(&derived, &pattern, g.f);
    AvcRecord {
        cases: g.cases.clone(),
        arrangement: g.arrangement.clone(),
        f: g.f,
        derived: format_avc(&derived),
        pruned: pruned.as_ref().map(|p| format_avc(&p.avc)),
        pruned_combos: pruned.map(|p| p.avc).unwrap_or_default(),
    }
}

/// Tilings from the generators that realize `shape` with vertices in `avc`.
pub fn generated_tilings(shape: &TileShape, f: u32, avc: &[Combo]) -> Vec<(String, CombTiling)> {
    let mut out = Vec::new();
    let passes = |t: &CombTiling| validate(t, shape, avc).pass();
    if shape.arrangement.seq == ARRANGEMENTS[2] {
        for (base, n) in [(Base::Octahedron, 24), (Base::Icosahedron, 60)] {
            if f == n {
                let t = pentagonal_subdivision(base, shape);
                if passes(&t) {
                    out.push((format!("subdivision-{n}"), t));
                }
            }
        }
        if f == 20 {
            let t = special_tiling_f20(shape);
            if passes(&t) {
                out.push(("special-20".to_string(), t));
            }
        }
    }
    if f % 4 == 0 && (16..=24).contains(&f) {
        let faces = earth_map_faces(f as usize / 4);
        if let Some(t) = assign_labels(&shape.name, &shape.arrangement, &faces, avc, |t| passes(t)) {
            out.push((format!("earth-map-{f}"), t));
        }
    }
    out
}

/// Canonical form after replacing labels by the rank of their angle value,
/// so that congruent pentagons labelled differently compare equal.
pub fn congruence_form(t: &CombTiling, shape: &TileShape) -> Vec<u32> {
    let mut values: Vec<f64> = shape.angles.to_vec();
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() < 1e-7);
    let rank = |l: u8| values.iter().position(|v| (v - shape.angles[l as usize]).abs() < 1e-7).unwrap_or(0) as u8;
    let relabelled = CombTiling {
        pentagon: String::new(),
        arrangement: Arrangement { name: String::new(), seq: shape.arrangement.seq.map(rank) },
        tiles: t.tiles.iter().map(|x| Tile { labels: x.labels.map(rank), orientation: x.orientation }).collect(),
        matching: t.matching.clone(),
    };
    relabelled.canonical_form()
}

fn dodecahedron(cfg: &PipelineConfig, searches: &mut Vec<SearchRecord>) -> TilingEntry {
    let shape = TileShape::regular();
    let avc = parse_avc("a3").unwrap();
    let tiling = pentagonal_subdivision(Base::Tetrahedron, &shape);
    let report = validate(&tiling, &shape, &avc);
    let mut uniqueness = Uniqueness::Unverified;
    if !cfg.skip_search {
        let out = search(&SearchConfig { arrangement: shape.arrangement.clone(), avc: avc.clone(), f: 12, node_budget: cfg.node_budget });
        uniqueness = match (out.status, out.tilings.len()) {
            (SearchStatus::Complete, 1) => Uniqueness::Verified,
            (SearchStatus::Complete, _) => Uniqueness::Unverified,
            _ => Uniqueness::Inconclusive,
        };
        searches.push(SearchRecord {
            cases: vec!["regular".into()],
            arrangement: "R".into(),
            f: 12,
            avc: format_avc(&avc),
            status: Some(out.status),
            nodes: out.nodes,
            combinatorial: out.tilings.len(),
            geometric: out.tilings.iter().filter(|t| validate(t, &shape, &avc).pass()).count(),
        });
    }
    TilingEntry {
        name: "dodecahedron".into(),
        f: 12,
        cases: vec!["regular".into()],
        shape,
        avc: format_avc(&avc),
        report,
        uniqueness,
        tiling,
    }
}

/// Runs every stage in order.
pub fn run_full(cfg: &PipelineConfig) -> Result<ClassificationReport, PipelineError> {
    cfg.solve.validate().map_err(|e| stage("solve", e))?;

    let mut cases: Vec<CaseSpec> = all_cases()
        .iter()
        .filter(|c| cfg.families.as_ref().is_none_or(|f| f.contains(&c.family)))
        .cloned()
        .collect();
    if cfg.families.as_ref().is_none_or(|f| f.contains(&Family::Exceptional)) {
        cases.push(exceptional_case());
    }
    let candidates = classify_cases(&cases, &cfg.solve);
    run_from_candidates(cfg, candidates)
}

/// The stages after classification.
pub fn run_from_candidates(cfg: &PipelineConfig, candidates: ClassifyReport) -> Result<ClassificationReport, PipelineError> {
    let mut searches = Vec::new();
    let mut entries = vec![dodecahedron(cfg, &mut searches)];
    let mut avcs = Vec::new();
    // (congruence key) → index into entries
    let mut seen: BTreeMap<(usize, i64, Vec<u32>), usize> = BTreeMap::new();
    for g in &candidates.groups {
        let rec = group_avc(g);
        let shape = group_shape(g).ok_or_else(|| stage("derive-avc", format!("unknown arrangement {}", g.arrangement)))?;
        let avc = rec.pruned_combos.clone();
        avcs.push(rec);
        if avc.is_empty() {
            continue;
        }
        let mut found = generated_tilings(&shape, g.f, &avc);
        let mut status = None;
        if !cfg.skip_search && (g.f as usize) <= cfg.search_max_f {
            let out = search(&SearchConfig {
                arrangement: shape.arrangement.clone(),
                avc: avc.clone(),
                f: g.f as usize,
                node_budget: cfg.node_budget,
            });
            let realized: Vec<&CombTiling> = out.tilings.iter().filter(|t| validate(t, &shape, &avc).pass()).collect();
            for t in &realized {
                if !found.iter().any(|(_, u)| u.isomorphic(t)) {
                    found.push((format!("found-{}", g.f), (*t).clone()));
                }
            }
            searches.push(SearchRecord {
                cases: g.cases.clone(),
                arrangement: g.arrangement.clone(),
                f: g.f,
                avc: format_avc(&avc),
                status: Some(out.status),
                nodes: out.nodes,
                combinatorial: out.tilings.len(),
                geometric: realized.len(),
            });
            status = Some((out.status, realized.len()));
        } else {
            searches.push(SearchRecord {
                cases: g.cases.clone(),
                arrangement: g.arrangement.clone(),
                f: g.f,
                avc: format_avc(&avc),
                status: None,
                nodes: 0,
                combinatorial: 0,
                geometric: 0,
            });
        }
        let uniqueness = match status {
            Some((SearchStatus::Complete, n)) if n == found.len() => Uniqueness::Verified,
            Some((SearchStatus::Inconclusive, _)) => Uniqueness::Inconclusive,
            _ => Uniqueness::Unverified,
        };
        for (name, tiling) in found {
            let key = (tiling.f(), (shape.cos_a * 1e6).round() as i64, congruence_form(&tiling, &shape));
            if let Some(&i) = seen.get(&key) {
                let e: &mut TilingEntry = &mut entries[i];
                e.cases.extend(g.cases.iter().cloned());
                if uniqueness == Uniqueness::Verified {
                    e.uniqueness = Uniqueness::Verified;
                }
                continue;
            }
            let report = validate(&tiling, &shape, &avc);
            seen.insert(key, entries.len());
            entries.push(TilingEntry {
                name,
                f: tiling.f(),
                cases: g.cases.clone(),
                shape: shape.clone(),
                avc: format_avc(&avc),
                report,
                uniqueness,
                tiling,
            });
        }
    }
    name_entries(&mut entries);

    let certificates = certify_all();
    if let Some(bad) = certificates.iter().find(|c| !c.pass) {
        return Err(stage("certify", format!("{} has residual {:e}", bad.name, bad.residual)));
    }
    let region = exceptional_region_scan(cfg.region_resolution);
    if !region.certified() {
        return Err(stage("certify", format!("{} violating cells in the region scan", region.violations.len())));
    }
    Ok(ClassificationReport { config: cfg.clone(), candidates, avcs, searches, certificates, region, tilings: entries })
}

/// Sorts by `f` then name, and tells apart equal names by `cos a`.
fn name_entries(entries: &mut [TilingEntry]) {
    entries.sort_by(|a, b| a.f.cmp(&b.f).then(a.name.cmp(&b.name)).then(b.shape.cos_a.total_cmp(&a.shape.cos_a)));
    let mut count: BTreeMap<String, usize> = BTreeMap::new();
    for e in entries.iter() {
        *count.entry(e.name.clone()).or_default() += 1;
    }
    let mut k: BTreeMap<String, usize> = BTreeMap::new();
    for e in entries.iter_mut() {
        if count[&e.name] > 1 {
            let i = k.entry(e.name.clone()).or_default();
            let suffix = (b'a' + *i as u8) as char;
            *i += 1;
            e.name.push(suffix);
        }
        e.shape.name = e.name.clone();
        e.tiling.pentagon = e.name.clone();
    }
}

/// The candidate table as text: one row per merged candidate.
pub fn candidate_table(report: &ClassificationReport) -> String {
    let mut s = String::from("# cases arrangement f cos_a angles/pi(alpha..epsilon) avc tilings\n");
    for (g, a) in report.candidates.groups.iter().zip(&report.avcs) {
        let n = report.tilings.iter().filter(|t| t.cases.iter().any(|c| g.cases.contains(c))
            && (t.shape.cos_a - g.cos_a).abs() < 1e-6).count();
        let angles: Vec<String> = g.angles.iter().map(|x| format!("{:.6}", x / PI)).collect();
        let _ = writeln!(
            s,
            "{} {} {} {:.6} [{}] {} {}",
            g.cases.join("/"),
            g.arrangement,
            g.f,
            g.cos_a,
            angles.join(","),
            a.pruned.as_deref().unwrap_or("none"),
            if n == 0 { "no-tiling".to_string() } else { n.to_string() }
        );
    }
    s
}

fn write(path: &Path, contents: &str) -> Result<(), PipelineError> {
    std::fs::write(path, contents).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}

/// Writes the report files into `dir`. Output depends only on the report.
pub fn emit(report: &ClassificationReport, dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let tiling_dir = dir.join("tilings");
    std::fs::create_dir_all(&tiling_dir).map_err(|source| PipelineError::Io { path: tiling_dir.clone(), source })?;
    let mut written = Vec::new();
    let mut put = |path: PathBuf, contents: String| -> Result<(), PipelineError> {
        write(&path, &contents)?;
        written.push(path);
        Ok(())
    };
    put(dir.join("candidates.txt"), candidate_table(report))?;
    let mut avc = String::from("# cases arrangement f derived pruned\n");
    for a in &report.avcs {
        let _ = writeln!(avc, "{} {} {} {} {}", a.cases.join("/"), a.arrangement, a.f, a.derived, a.pruned.as_deref().unwrap_or("none"));
    }
    put(dir.join("avc.txt"), avc)?;
    let mut searches = String::from("# cases arrangement f avc status nodes combinatorial geometric\n");
    for r in &report.searches {
        let status = r.status.map_or("skipped".to_string(), |s| format!("{s:?}").to_lowercase());
        let _ = writeln!(
            searches,
            "{} {} {} {} {} {} {} {}",
            r.cases.join("/"),
            r.arrangement,
            r.f,
            r.avc,
            status,
            r.nodes,
            r.combinatorial,
            r.geometric
        );
    }
    put(dir.join("searches.txt"), searches)?;
    let mut certs = String::from("# pass residual value name\n");
    for c in &report.certificates {
        let _ = writeln!(certs, "{} {:.3e} {:.15} {}", if c.pass { "pass" } else { "FAIL" }, c.residual, c.value, c.name);
    }
    put(dir.join("certificates.txt"), certs)?;
    put(dir.join("region_curves.txt"), format_curves(&report.region))?;
    let mut summary = String::from("# name f cos_a uniqueness pass degrees avc\n");
    for e in &report.tilings {
        let degrees: Vec<String> = e.report.degree_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(
            summary,
            "{} {} {:.6} {:?} {} {} {}",
            e.name,
            e.f,
            e.shape.cos_a,
            e.uniqueness,
            e.report.pass(),
            degrees.join(","),
            e.avc
        );
        put(tiling_dir.join(format!("{}.tiling", e.name)), e.tiling.to_text())?;
        let off = to_off(&e.tiling, &e.shape).map_err(|err| stage("emit", format!("{}: {err}", e.name)))?;
        put(tiling_dir.join(format!("{}.off", e.name)), off)?;
    }
    put(dir.join("tilings.txt"), summary)?;
    let json = serde_json::to_string_pretty(report).map_err(|e| stage("emit", e.to_string()))?;
    put(dir.join("report.json"), json)?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_ignores_label_names() {
        let s = TileShape::earth_map(6).remove(0);
        let avc = parse_avc("abc, de2, d6").unwrap();
        let t = generated_tilings(&s, 24, &avc);
        assert_eq!(t.len(), 1);
        // Swap α and β, which swaps the arrangement A3 into A5's labels.
        let swap = |l: u8| match l {
            0 => 1,
            1 => 0,
            x => x,
        };
        let mut s2 = s.clone();
        s2.angles.swap(0, 1);
        s2.arrangement.seq = s.arrangement.seq.map(swap);
        let mut t2 = t[0].1.clone();
        for tile in &mut t2.tiles {
            tile.labels = tile.labels.map(swap);
        }
        assert_eq!(congruence_form(&t[0].1, &s), congruence_form(&t2, &s2));
    }
}
