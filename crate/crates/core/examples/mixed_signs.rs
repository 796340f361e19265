// Mixed-sign weights: admissibility, the reversed inequality and the
// substitution back to positive weights.
//
// cargo run --example mixed_signs

use sharpbound::bounds::{case_ii_lambda_max, check_worst_phase};
use sharpbound::domain::VERDICT_TOL;
use sharpbound::{case_ii_transform, check_case_i, check_case_ii, check_case_iii, classify_case, WeightedSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sys = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[2.0, 1.0]))?;
    let max = case_ii_lambda_max(&sys.mu, &sys.a, sys.exponent).expect("first weight dominates");
    println!("{:?}, largest admissible lambda = {max}", classify_case(&sys.mu, max)?);

    let aligned = check_case_ii(&sys, max)?;
    let (_, worst) = check_worst_phase(&sys, max, VERDICT_TOL)?;
    println!("x = [2, 1]: margin {}", aligned.margin);
    println!("least favourable phases: margin {}", worst.margin);
    let opposed = WeightedSystem::real(2.0, &[2.0, 1.0], &[1.0, -1.0], Some(&[2.0, -1.0]))?;
    println!("x = [2, -1]: margin {}", check_case_ii(&opposed, max)?.margin);

    let t = case_ii_transform(&sys, 1.5)?;
    println!("transform: Lambda = {}, nu = {:?}, admissible = {}", t.big_lambda, t.nu, t.admissible(sys.exponent)?);
    let via = check_case_i(&t.case_i_system(sys.exponent)?, t.big_lambda)?;
    println!("as positive weights: lhs = {}, rhs = {}", via.lhs, via.rhs);

    let negated = WeightedSystem::real(3.0, &[1.0, 1.0, 0.5], &[-4.0, 0.5, 1.0], Some(&[1.0, 2.0, 3.0]))?;
    let r = check_case_iii(&negated, -0.5)?;
    println!("negated signs: {:?} holds = {}", r.direction, r.holds);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
