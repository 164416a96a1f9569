use pentasphere::cases::{find_case, Arrangement, Family};
use pentasphere::classify::evaluate;
use pentasphere::pipeline::{emit, run_full, PipelineConfig, Uniqueness};
use pentasphere::solver::{build_system, solve_all, SolveConfig};
use pentasphere::sphertrig::diagonal_residuals;

fn pool(n: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()
}

#[test]
fn solver_ignores_thread_count() {
    let case = find_case("4.2c").unwrap();
    let sys = build_system(&case, &Arrangement::a(3)).unwrap();
    let cfg = SolveConfig { starts: 1000, ..SolveConfig::default() };
    let one = pool(1).install(|| solve_all(&sys, &cfg));
    let three = pool(3).install(|| solve_all(&sys, &cfg));
    assert!(!one.is_empty());
    assert_eq!(format!("{one:?}"), format!("{three:?}"));
}

#[test]
fn candidates_satisfy_diagonal_quadratics() {
    for (label, arr) in [("4.2c", 3), ("4.2d", 3), ("1.5b", 3), ("1.4e", 1)] {
        let case = find_case(label).unwrap();
        let arr = Arrangement::a(arr);
        let sys = build_system(&case, &arr).unwrap();
        for s in solve_all(&sys, &SolveConfig::default()) {
            for (x, y) in s.x.iter().zip(&s.y) {
                assert!((x * x + y * y - 1.0).abs() < 1e-12);
            }
            let c = evaluate(&case, &arr, &s);
            let corner: [f64; 5] = arr.seq.map(|l| c.angles[l as usize]);
            for r in diagonal_residuals(&corner, c.cos_a) {
                assert!(r.abs() < 1e-9, "{label}: {r}");
            }
        }
    }
}

#[test]
fn three_angle_family_gives_only_the_dodecahedron() {
    let cfg = PipelineConfig { families: Some(vec![Family::Three]), ..PipelineConfig::default() };
    let a = run_full(&cfg).unwrap();
    let b = run_full(&cfg).unwrap();
    assert!(a.candidates.groups.is_empty());
    let names: Vec<&str> = a.tilings.iter().map(|t| t.name.as_str()).collect();
    assert_eq!(names, ["dodecahedron"]);
    assert_eq!(a.tilings[0].uniqueness, Uniqueness::Verified);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());

    let dir = std::env::temp_dir().join(format!("pentasphere-family3-{}", std::process::id()));
    let files = emit(&a, &dir).unwrap();
    assert!(files.iter().any(|p| p.ends_with("report.json")));
    let off = std::fs::read_to_string(dir.join("tilings/dodecahedron.off")).unwrap();
    assert!(off.starts_with("OFF\n20 12 30\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
