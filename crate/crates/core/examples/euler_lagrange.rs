// Two-term identity with signed weights.
//
// cargo run --example euler_lagrange

use sharpbound::euler_lagrange_identity;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (3.0, 4.0, 2.0, 1.0, 1.0, 1.0),
        (1.5, -2.0, 0.5, 3.0, 2.0, 0.25),
        (1.0, 2.0, 1.0, 1.0, 3.0, -1.0),
    ];
    for (x, y, a, b, mu, nu) in cases {
        let id = euler_lagrange_identity(x, y, a, b, mu, nu)?;
        println!(
            "x={x} y={y} a={a} b={b} mu={mu} nu={nu}: {} vs {} (agree = {})",
            id.lhs,
            id.rhs,
            id.agree()
        );
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
