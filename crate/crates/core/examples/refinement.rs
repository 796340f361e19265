// Superquadratic refinement of the sharp bound and the gap for `p <= 2`.
//
// cargo run --example refinement

use sharpbound::superquad::SuperquadraticWitness;
use sharpbound::{jensen_refinement, refined_bound, subquadratic_gap, two_term_refined_bound, WeightedSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = SuperquadraticWitness::new(3.0)?;
    println!("margin of x^3 at (1, 4): {}", w.margin(1.0, 4.0));

    let j = jensen_refinement(3.0, &[0.25, 0.75], &[1.0, 4.0])?;
    println!("weighted Jensen: {} <= {} (remainder {})", j.lhs, j.rhs, j.remainder);

    for p in [2.0, 3.0] {
        let sys = WeightedSystem::real(p, &[1.0, 2.0, 0.5], &[1.0, 3.0, 2.0], Some(&[0.5, 2.0, 1.0]))?;
        let r = refined_bound(&sys)?;
        println!(
            "p = {p}: lhs {:.6} >= main {:.6} + correction {:.6} = {:.6}",
            r.lhs, r.main_term, r.correction, r.total
        );
    }
    let two = two_term_refined_bound(3.0, 4.0, 1.0, 1.0, 1.0, 1.0, 2.0)?;
    println!("two terms at p = 2: {} = {}", two.lhs, two.total);

    let sys = WeightedSystem::real(1.5, &[1.0, 1.0], &[1.0, 1.0], Some(&[1.0, 0.0]))?;
    let g = subquadratic_gap(&sys)?;
    println!("p = 1.5: 0 <= gap {:.6} <= {:.6}", g.gap, g.upper);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
