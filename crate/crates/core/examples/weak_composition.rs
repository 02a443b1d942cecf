//! The weak form of the operator and its relation to the weighted projection:
//! c-coefficients, the S map, and the fixed point for sin(πx) at n = 4.

use std::f64::consts::PI;

use altapprox::operators::{
    b_coeffs_direct, b_from_c, c_coeffs, omega_hat, omega_weak, s_matrix, weak_transform,
    FuncSpec,
};
use altapprox::quadrature::QuadOptions;

fn main() -> altapprox::Result<()> {
    let opts = QuadOptions::default();
    let f = FuncSpec::new(|x| (PI * x).sin()).with_derivative(|x| PI * (PI * x).cos());

    println!("S_4 =");
    for row in s_matrix(4).rows() {
        println!("  {row:?}");
    }

    let c = c_coeffs(&f, 4, &opts)?;
    println!("\nc (projection coefficients)  {c:.15?}");
    let p3 = PI * PI * PI;
    let closed = [
        6.0 * (3.0 * PI * PI - 28.0) / p3,
        4.0 / PI,
        -6.0 * (PI * PI - 20.0) / p3,
        8.0 * (PI * PI - 6.0) / p3,
    ];
    println!("closed forms                 {closed:.15?}");

    // f₀(1) = 0 here, so the weak map reduces to S c, and S c = c
    println!("S c                          {:.15?}", weak_transform(&c, 0.0));

    let b1 = b_coeffs_direct(&f, 4, &opts)?;
    let b2 = b_from_c(&c, f.f0_at_1());
    println!("\nb from f'  {b1:.12?}\nb from c   {b2:.12?}");

    let hat = omega_hat(&f, 4, &opts)?;
    let again = omega_weak(&hat.to_func_spec(), 4, &opts)?;
    let drift = (0..=100)
        .map(|i| i as f64 / 100.0)
        .map(|x| (again.value(x) - hat.value(x)).abs())
        .fold(0.0, f64::max);
    println!("\napplying the weak operator to the projection moves it by {drift:.1e}");
    Ok(())
}
