// Seeded fuzz campaigns for every sign case and the refinement.
//
// cargo run --release --example fuzz_campaign

use sharpbound::oracle::{fuzz_case, fuzz_case_with, fuzz_refinement, LambdaPlacement, SearchConfig};
use sharpbound::{CaseLabel, Exponent};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SearchConfig::default().with_seed(2024).with_trials(500).with_local_steps(40);
    let exp = Exponent::new(2.5)?;
    for case in [CaseLabel::CaseI, CaseLabel::CaseII, CaseLabel::CaseIII] {
        let r = fuzz_case(case, 3, exp, &cfg)?;
        println!("{case:?}: {} instances, {} violations", r.instances_tested, r.violation_count);
    }
    for p in [1.5, 2.0, 3.0] {
        let r = fuzz_refinement(4, p, &cfg)?;
        println!("refinement p = {p}: {} instances, {} violations", r.instances_tested, r.violation_count);
    }
    let r = fuzz_case_with(CaseLabel::CaseI, 3, exp, &cfg, LambdaPlacement::Scaled(0.99))?;
    println!("below the sharp constant: {} violations, worst margin {:e}", r.violation_count, r.worst_margin);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
