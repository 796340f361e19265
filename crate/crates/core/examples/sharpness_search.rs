// Independent numerical search for the sharp constant.
//
// cargo run --release --example sharpness_search

use sharpbound::oracle::{equality_probe, sharpness_campaign, SearchConfig};
use sharpbound::{extremal_point, sharp_lambda, Complex, Exponent};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let exp = Exponent::new(1.5)?;
    let mu = [1.0, 2.0, 3.0];
    let a: Vec<Complex> = [3.0, 1.0, 2.0].iter().map(|&v| Complex::new(v, 0.0)).collect();
    let cfg = SearchConfig::default().with_seed(11).with_trials(500);

    let (found, report) = sharpness_campaign(&mu, &a, exp, &cfg)?;
    let lambda = sharp_lambda(&mu, &a, exp)?;
    println!("closed form {lambda}, search {} (relative gap {:e})", found.best_ratio, 1.0 - found.best_ratio / lambda);
    println!("violations at the closed form: {}", report.violation_count);

    let probe = equality_probe(&mu, &a, exp, &cfg)?;
    let x_star = extremal_point(&mu, &a, exp)?;
    let top = x_star.iter().copied().fold(0.0, f64::max);
    println!("equality point found   {probe:?}");
    println!("closed-form direction  {:?}", x_star.iter().map(|v| v / top).collect::<Vec<_>>());
    Ok(())
}

fn main() {
    run_example().unwrap();
}
