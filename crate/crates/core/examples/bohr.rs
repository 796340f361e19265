// Bohr-type inequality `|x + y|^p <= s^{p-1} |x|^p + t^{p-1} |y|^p` as a
// special case of the sharp constant.
//
// cargo run --example bohr

use sharpbound::{bohr_chain_check, bohr_params};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (s, p) in [(2.0, 2.0), (1.5, 3.0), (1.25, 1.5)] {
        let b = bohr_params(s, p)?;
        println!(
            "s = {s}, p = {p}: t = {:.6}, lambda = {:.6}, sharp = {:.6}, matches = {}",
            b.t,
            b.lambda,
            b.sharp_lambda()?,
            b.matches_sharp()?
        );
        let (first, second) = bohr_chain_check(s, p, 1.0, 3.0)?;
        println!("  chain at (1, 3): {:.6} <= {:.6} <= {:.6}", second.rhs, first.rhs, first.lhs);
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
