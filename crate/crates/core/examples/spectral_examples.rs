//! Three classic fits with the spectral operator: a monotone function, an even
//! convex one approximated at odd degree, and √x, which is not differentiable at 0.

use std::f64::consts::PI;

use altapprox::operators::{omega_spectral, BPath, FuncSpec};
use altapprox::quadrature::QuadOptions;
use altapprox::roots::{bracketed_roots, linspace};

fn show(name: &str, f: &FuncSpec, n: usize, path: BPath) -> altapprox::Result<()> {
    let e = omega_spectral(f, n, path, &QuadOptions::default())?;
    let m = e.monomial_coeffs()?;
    let terms: Vec<String> = m.iter().enumerate().map(|(i, c)| format!("{c:+.12}·x^{i}")).collect();
    println!("{name}, n = {n}:\n  {}", terms.join(" "));
    let grid = linspace(0.0, 1.0, 1001);
    let err = grid.iter().map(|&x| (e.value(x) - f.eval(x)).abs()).fold(0.0, f64::max);
    println!("  max |error| on [0,1]: {err:.2e}");
    Ok(())
}

fn main() -> altapprox::Result<()> {
    let log = FuncSpec::new(|x: f64| x.ln_1p()).with_derivative(|x| 1.0 / (1.0 + x));
    show("ln(1+x)", &log, 3, BPath::Direct)?;

    let bump = FuncSpec::new(|x| 1.0 - (PI * x).sin()).with_derivative(|x| -PI * (PI * x).cos());
    show("1 - sin(πx)", &bump, 3, BPath::Direct)?;

    // f' is singular at 0; the c-coefficient path only needs f itself
    let root = FuncSpec::new(f64::sqrt).endpoint_singular(true);
    show("√x", &root, 5, BPath::FromC)?;
    println!("  expected (2/11)(15x − 35x² + 56x³ − 45x⁴ + 14x⁵)");

    // the derivative of the fit approximates f' and meets it at a few points
    let e = omega_spectral(&bump, 3, BPath::Direct, &QuadOptions::default())?;
    let grid = linspace(1e-3, 1.0 - 1e-3, 2001);
    let hits = bracketed_roots(|x| e.derivative(x) - bump.deriv(x).unwrap(), &grid)?;
    println!("\nderivative of the 1 - sin(πx) fit meets -π cos(πx) at {hits:.6?}");
    Ok(())
}
