use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pentasphere::avc3::enumerate_avc3;
use pentasphere::cases::{cases_in_family, find_case, pair_count, Arrangement, Family};
use pentasphere::certify::{certify_all, exceptional_region_scan, format_curves};
use pentasphere::classify::{avc_prune, classify, derive_avc, evaluate, exact_angles};
use pentasphere::combo::{format_avc, parse_avc};
use pentasphere::pipeline::{candidate_table, emit, run_full, PipelineConfig};
use pentasphere::solver::{build_system, solve_all, solve_complex, SolveConfig};
use pentasphere::tiling::validate::{mutation_survivors, to_off};
use pentasphere::tiling::{all_tilings, search, validate, CombTiling, SearchConfig};
use std::f64::consts::PI;
use std::path::PathBuf;

/// Classifies edge-to-edge tilings of the sphere by congruent equilateral pentagons.
#[derive(Parser)]
#[command(name = "pentasphere", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed of the multistart solver.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Residual tolerance of the solver.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Degree 3 angle combinations for N distinct angles.
    EnumerateAvc3 {
        #[arg(long)]
        angles: Option<usize>,
    },
    /// Case list with vertex sets and arrangements.
    Cases {
        #[arg(long)]
        list: bool,
        /// 3, 4, 5, 1 (degree 4), 2 (degree 5) or X.
        #[arg(long)]
        family: Option<String>,
    },
    /// Solves one case in one arrangement.
    Solve {
        #[arg(long = "case")]
        case: String,
        #[arg(long)]
        arrangement: String,
        #[arg(long, default_value_t = 5000)]
        starts: usize,
        /// Also count complex solutions.
        #[arg(long)]
        complex: bool,
    },
    /// Runs every case and prints the merged candidates.
    Classify {
        #[arg(long, default_value_t = 5000)]
        starts: usize,
        /// Writes the full JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex sets of the surviving pentagons of one case.
    DeriveAvc {
        #[arg(long = "case")]
        case: String,
        #[arg(long, default_value_t = 5000)]
        starts: usize,
    },
    /// Builds the eight tilings.
    Tilings {
        /// `all` or a tiling name.
        #[arg(long, default_value = "all")]
        build: String,
        /// Validates and runs the mutation sweep.
        #[arg(long)]
        verify: bool,
        /// Writes `.tiling` and `.off` files here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Validates a tiling file against the pentagon it names.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Exhaustive search for tilings with a given vertex set.
    Search {
        /// For example `abc,de2,d3e`.
        #[arg(long)]
        avc: String,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value = "A3")]
        arrangement: String,
        /// Node budget; `PENTASPHERE_NODE_BUDGET` overrides the default.
        #[arg(long)]
        budget: Option<u64>,
        /// Prints every tiling in the text format.
        #[arg(long)]
        print: bool,
    },
    /// Closed-form certificates and the exceptional region scan.
    Certify {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        region: bool,
        #[arg(long, default_value_t = 500)]
        resolution: usize,
        #[arg(long)]
        emit_curves: Option<PathBuf>,
    },
    /// Runs every stage and writes the report files.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        skip_search: bool,
        /// Restricts the case list, e.g. `--family 3`.
        #[arg(long)]
        family: Vec<String>,
        #[arg(long, default_value_t = 5000)]
        starts: usize,
    },
}

fn solve_cfg(g: &Global, starts: usize) -> SolveConfig {
    SolveConfig { starts, seed: g.seed, newton_tol: g.tol, ..SolveConfig::default() }
}

fn family(s: &str) -> Result<Family> {
    Family::from_digit(s).ok_or_else(|| anyhow!("unknown family {s}"))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let g = &cli.global;
    if g.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(g.threads).build_global()?;
    }
    match cli.command {
        Command::EnumerateAvc3 { angles } => {
            let ns: Vec<usize> = angles.map_or((1..=5).collect(), |n| vec![n]);
            for n in ns {
                let rows = enumerate_avc3(n);
                println!("# n={n} rows={}", rows.len());
                for r in rows {
                    println!("{r}");
                }
            }
        }
        Command::Cases { list, family: fam } => {
            let families = match fam {
                Some(s) => vec![family(&s)?],
                None => vec![Family::Four, Family::Five, Family::Degree4, Family::Degree5, Family::Three],
            };
            for f in families {
                let cases = cases_in_family(f);
                println!("# family {} cases={} pairs={}", f.digit(), cases.len(), pair_count(f));
                if list {
                    for c in cases {
                        println!("{c}");
                    }
                }
            }
        }
        Command::Solve { case, arrangement, starts, complex } => {
            let spec = find_case(&case).ok_or_else(|| anyhow!("unknown case {case}"))?;
            let arr = spec
                .arrangement(&arrangement)
                .cloned()
                .or_else(|| Arrangement::by_name(&arrangement))
                .ok_or_else(|| anyhow!("unknown arrangement {arrangement}"))?;
            let sys = build_system(&spec, &arr).map_err(|e| anyhow!("{e:?}"))?;
            let cfg = solve_cfg(g, starts);
            if complex {
                let all = solve_complex(&sys, &cfg);
                let real = all.iter().filter(|s| s.is_real(1e-7)).count();
                println!("# solutions={} real={} non-real={}", all.len(), real, all.len() - real);
            }
            println!("# cos_a angles/pi(alpha..epsilon) f angle_sum tiling_number ordering distinct simple");
            for s in solve_all(&sys, &cfg) {
                let c = evaluate(&spec, &arr, &s);
                let a: Vec<String> = c.angles_over_pi().iter().map(|x| format!("{x:.6}")).collect();
                let v = &c.verdicts;
                println!(
                    "{:.6} [{}] {:.4} {} {} {} {} {}",
                    c.cos_a,
                    a.join(","),
                    c.f_value,
                    v.angle_sum,
                    v.tiling_number,
                    v.ordering,
                    v.distinct,
                    v.simple
                );
            }
        }
        Command::Classify { starts, out } => {
            let report = classify(&solve_cfg(g, starts));
            println!("# cases arrangement f cos_a angles/pi(alpha..epsilon)");
            for grp in &report.groups {
                let a: Vec<String> = grp.angles.iter().map(|x| format!("{:.6}", x / PI)).collect();
                println!("{} {} {} {:.6} [{}]", grp.cases.join("/"), grp.arrangement, grp.f, grp.cos_a, a.join(","));
            }
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&report)?).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::DeriveAvc { case, starts } => {
            let spec = find_case(&case).ok_or_else(|| anyhow!("unknown case {case}"))?;
            let cfg = solve_cfg(g, starts);
            let labels: Vec<usize> = (0..5).filter(|&l| spec.pattern.count(l) > 0).collect();
            for arr in &spec.arrangements {
                let Ok(sys) = build_system(&spec, arr) else { continue };
                for s in solve_all(&sys, &cfg) {
                    let c = evaluate(&spec, arr, &s);
                    let (true, Some(f)) = (c.verdicts.survives(), c.f) else { continue };
                    let derived = derive_avc(&c.angles_over_pi(), &exact_angles(&spec, f), &labels);
                    let pruned = avc_prune(&derived, &spec.pattern, f);
                    println!(
                        "{} f={} cos_a={:.6} derived={} pruned={}",
                        arr.name,
                        f,
                        c.cos_a,
                        format_avc(&derived),
                        pruned.map_or("none".to_string(), |p| format_avc(&p.avc))
                    );
                }
            }
        }
        Command::Tilings { build, verify, out, check } => {
            let all = all_tilings();
            if let Some(path) = check {
                let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let t = CombTiling::parse(&text)?;
                let named = all.iter().find(|n| n.name == t.pentagon).ok_or_else(|| anyhow!("unknown pentagon {}", t.pentagon))?;
                let r = validate(&t, &named.shape, &named.avc);
                println!("{} pass={} problems={:?}", path.display(), r.pass(), r.problems);
                if !r.pass() {
                    bail!("validation failed");
                }
                return Ok(());
            }
            let chosen: Vec<_> = all.into_iter().filter(|n| build == "all" || n.name == build).collect();
            if chosen.is_empty() {
                bail!("no tiling named {build}");
            }
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            for n in &chosen {
                let hist: Vec<String> = n.tiling.degree_histogram().iter().map(|(k, v)| format!("{k}:{v}")).collect();
                print!("{} f={} cos_a={:.6} degrees={} avc={}", n.name, n.tiling.f(), n.shape.cos_a, hist.join(","), format_avc(&n.avc));
                if verify {
                    let r = validate(&n.tiling, &n.shape, &n.avc);
                    let (total, passed) = mutation_survivors(&n.tiling, &n.shape, &n.avc);
                    print!(
                        " pass={} residual={:.1e} area/pi={:.8} mutations={}/{} rejected",
                        r.pass(),
                        r.worst_residual,
                        r.area / PI,
                        total - passed,
                        total
                    );
                }
                println!();
                if let Some(dir) = &out {
                    std::fs::write(dir.join(format!("{}.tiling", n.name)), n.tiling.to_text())?;
                    std::fs::write(dir.join(format!("{}.off", n.name)), to_off(&n.tiling, &n.shape)?)?;
                }
            }
        }
        Command::Search { avc, f, arrangement, budget, print } => {
            let arrangement = Arrangement::by_name(&arrangement).ok_or_else(|| anyhow!("unknown arrangement {arrangement}"))?;
            let avc = parse_avc(&avc).map_err(|e| anyhow!("{e:?}"))?;
            let default = PipelineConfig::default().with_env_overrides().node_budget;
            let out = search(&SearchConfig { arrangement, avc: avc.clone(), f, node_budget: budget.unwrap_or(default) });
            println!("avc={} f={} status={:?} tilings={} nodes={}", format_avc(&avc), f, out.status, out.tilings.len(), out.nodes);
            for t in &out.tilings {
                let hist: Vec<String> = t.degree_histogram().iter().map(|(k, v)| format!("{k}:{v}")).collect();
                println!("  degrees={} avc={}", hist.join(","), format_avc(&t.realized_avc()));
                if print {
                    println!("{}", t.to_text());
                }
            }
        }
        Command::Certify { all, region, resolution, emit_curves } => {
            let mut failed = false;
            if all || !region {
                for c in certify_all() {
                    println!("{} {:.3e} {:.15} {}", if c.pass { "pass" } else { "FAIL" }, c.residual, c.value, c.name);
                    failed |= !c.pass;
                }
            }
            if region || emit_curves.is_some() {
                let scan = exceptional_region_scan(resolution);
                println!(
                    "region resolution={} cells={} violations={}",
                    scan.resolution,
                    scan.cells_in_region_low + scan.cells_in_region_high,
                    scan.violations.len()
                );
                failed |= !scan.certified();
                if let Some(path) = emit_curves {
                    std::fs::write(&path, format_curves(&scan)).with_context(|| format!("writing {}", path.display()))?;
                }
            }
            if failed {
                bail!("certification failed");
            }
        }
        Command::Report { out, skip_search, family: fams, starts } => {
            let families = if fams.is_empty() { None } else { Some(fams.iter().map(|s| family(s)).collect::<Result<Vec<_>>>()?) };
            let cfg = PipelineConfig { solve: solve_cfg(g, starts), families, skip_search, ..PipelineConfig::default() }
                .with_env_overrides();
            let report = run_full(&cfg)?;
            print!("{}", candidate_table(&report));
            for e in &report.tilings {
                println!("tiling {} f={} cos_a={:.6} {:?}", e.name, e.f, e.shape.cos_a, e.uniqueness);
            }
            for p in emit(&report, &out)? {
                eprintln!("wrote {}", p.display());
            }
        }
    }
    Ok(())
}
