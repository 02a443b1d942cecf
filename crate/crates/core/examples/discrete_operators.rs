//! The discrete operators need f only at 0, the Gauss nodes and 1. This compares
//! them with the continuous weak operator and checks the cardinal (pseudo-basis) form.

use std::f64::consts::FRAC_PI_2;

use altapprox::operators::{omega_weak, pseudo_basis, w_discrete, w_hat, w_via_pseudo, FuncSpec};
use altapprox::quadrature::{gauss_rule, QuadOptions};
use altapprox::roots::linspace;

fn main() -> altapprox::Result<()> {
    let f = FuncSpec::new(|x| (FRAC_PI_2 * x).sin());
    let grid = linspace(0.0, 1.0, 1001);
    let gap = |a: &dyn Fn(f64) -> f64, b: &dyn Fn(f64) -> f64| {
        grid.iter().map(|&x| (a(x) - b(x)).abs()).fold(0.0, f64::max)
    };

    for n in [3, 6, 9] {
        let w = w_discrete(&f, n)?;
        let weak = omega_weak(&f, n, &QuadOptions::default())?;
        let pseudo = w_via_pseudo(&f, n)?;
        println!(
            "n = {n}: |W - Ω| ≤ {:.1e}, |W - pseudo form| ≤ {:.1e}",
            gap(&|x| w.value(x), &|x| weak.value(x)),
            gap(&|x| w.value(x), &|x| pseudo.value(x)),
        );
    }

    let n = 5;
    let h = w_hat(&f, n)?;
    let rule = gauss_rule(n)?;
    let worst = rule
        .nodes()
        .iter()
        .map(|&x| (h.value(x) - f.eval(x)).abs())
        .fold((h.value(0.0) - f.eval(0.0)).abs(), f64::max);
    println!("\nŴ_{n} interpolates at 0 and the nodes to within {worst:.1e}");

    println!("\nsign of the pseudo-basis functions P_nj on (0, 1]:");
    for n in 2..=7 {
        let p = pseudo_basis(n)?;
        let signs: Vec<&str> = p[1..=n]
            .iter()
            .map(|pj| {
                let v: Vec<f64> = grid[1..].iter().map(|&x| pj.value(x)).collect();
                if v.iter().all(|&y| y > 0.0) {
                    "+"
                } else if v.iter().all(|&y| y < 0.0) {
                    "-"
                } else {
                    "0"
                }
            })
            .collect();
        println!("  n = {n}: {}", signs.join(" "));
    }
    Ok(())
}
