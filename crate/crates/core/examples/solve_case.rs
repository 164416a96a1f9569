//! Solves one case in one arrangement and shows how each real solution
//! fares against the filters.
//!
//! `cargo run --release --example solve_case -- [case] [arrangement]`

use pentasphere::cases::{find_case, Arrangement};
use pentasphere::classify::evaluate;
use pentasphere::solver::{build_system, solve_all, solve_complex, SolveConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| "1.1".into());
    let arr = args.next().unwrap_or_else(|| "A1".into());
    let case = find_case(&label).expect("known case label");
    let arr = Arrangement::by_name(&arr).expect("arrangement A1..A12");
    let sys = build_system(&case, &arr).expect("system");

    let complex = solve_complex(&sys, &SolveConfig { starts: 2000, ..SolveConfig::default() });
    let non_real = complex.iter().filter(|s| !s.is_real(1e-8)).count();
    println!("{label}({}): {} complex solutions, {non_real} non-real", arr.name, complex.len());

    for s in solve_all(&sys, &SolveConfig::default()) {
        let c = evaluate(&case, &arr, &s);
        let a: Vec<String> = c.angles_over_pi().iter().map(|x| format!("{x:.5}")).collect();
        println!(
            "  cos a={:.5} angles/π=[{}] f={:.3} angle-sum={} integral-f={} ordering={} simple={}",
            c.cos_a,
            a.join(", "),
            c.f_value,
            c.verdicts.angle_sum,
            c.verdicts.tiling_number,
            c.verdicts.ordering,
            c.verdicts.simple
        );
    }
}
