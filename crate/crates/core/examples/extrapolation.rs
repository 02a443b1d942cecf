//! sin(πx/2) at n = 9: the weak operator stays on one side of f inside [0, 1],
//! the projection crosses it repeatedly, and both are evaluated beyond the interval.

use std::f64::consts::FRAC_PI_2;

use altapprox::operators::{omega_hat, omega_weak, FuncSpec};
use altapprox::quadrature::QuadOptions;
use altapprox::roots::{linspace, sign_changes};

fn main() -> altapprox::Result<()> {
    let f = FuncSpec::new(|x| (FRAC_PI_2 * x).sin());
    let opts = QuadOptions::default();
    let omega = omega_weak(&f, 9, &opts)?;
    let hat = omega_hat(&f, 9, &opts)?;

    let inside = &linspace(0.0, 1.0, 2001)[1..2000];
    let e1: Vec<f64> = inside.iter().map(|&x| omega.value(x) - f.eval(x)).collect();
    let e2: Vec<f64> = inside.iter().map(|&x| hat.value(x) - f.eval(x)).collect();
    println!("weak operator error: {} sign changes, range [{:.2e}, {:.2e}]",
        sign_changes(&e1),
        e1.iter().cloned().fold(f64::INFINITY, f64::min),
        e1.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    println!("projection error:    {} sign changes", sign_changes(&e2));

    println!("\n{:>6} {:>12} {:>12} {:>12}", "x", "f", "omega_hat", "omega");
    for x in linspace(-1.5, 2.5, 17) {
        println!("{x:>6.2} {:>12.6} {:>12.6} {:>12.6}", f.eval(x), hat.value(x), omega.value(x));
    }
    Ok(())
}
