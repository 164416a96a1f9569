//! Lists the generated cases of one family with their arrangements.
//!
//! `cargo run --example case_catalogue -- [3|4|5|1|2]`

use pentasphere::cases::{cases_in_family, pair_count, Family};
use pentasphere::combo::format_avc;

fn main() {
    let digit = std::env::args().nth(1).unwrap_or_else(|| "4".into());
    let family = Family::from_digit(&digit).expect("family is one of 3, 4, 5, 1, 2");
    for case in cases_in_family(family) {
        let arrs: Vec<&str> = case.arrangements.iter().map(|a| a.name.as_str()).collect();
        println!("{:<7} {} {} [{}]", case.label, case.pattern, format_avc(&case.vertices), arrs.join(" "));
    }
    println!("{} case-arrangement pairs", pair_count(family));
}
