// Sharp constant, extremal point and a check at equality.
//
// cargo run --example sharp_constant

use sharpbound::{check_case_i, BoundCertificate, Complex, Exponent, WeightedSystem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let exp = Exponent::new(3.0)?;
    let mu = [2.0, 0.5, 1.5];
    let a = [Complex::new(1.0, 0.0), Complex::new(0.0, 4.0), Complex::new(0.25, 0.0)];

    let cert = BoundCertificate::new(&mu, &a, exp)?;
    println!("p = {}, q = {}", exp.p(), exp.q());
    println!("lambda_bar = {}", cert.lambda_bar);
    println!("Q = {:?} (sum {})", cert.q_weights, cert.q_weights.iter().sum::<f64>());
    println!("x* = {:?}", cert.x_star);

    // x* holds moduli; the phases are chosen to line up every a_i x_i
    let aligned: Vec<Complex> = cert.x_star.iter().zip(&a).map(|(&r, ai)| ai.conj() / ai.norm() * r).collect();
    let sys = WeightedSystem::new(exp, a.to_vec(), mu.to_vec())?.with_points(aligned)?;
    let at_sharp = check_case_i(&sys, cert.lambda_bar)?;
    println!("at x*: lhs = {}, rhs = {}, margin = {:e}", at_sharp.lhs, at_sharp.rhs, at_sharp.margin);

    let too_small = check_case_i(&sys, 0.99 * cert.lambda_bar)?;
    println!("with 0.99 lambda_bar: holds = {}, guaranteed = {}", too_small.holds, too_small.guaranteed);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
