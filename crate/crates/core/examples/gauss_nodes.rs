//! Gauss nodes on [0, 1], their role as zeros of A_{n,0}, and the discrete
//! orthogonality of the A-system under the same rule.

use altapprox::apoly::build_a_system;
use altapprox::io::format_g17;
use altapprox::quadrature::{discrete_gram, gauss_rule};

fn main() -> altapprox::Result<()> {
    for n in [1, 2, 3, 5] {
        let rule = gauss_rule(n)?;
        let a = build_a_system(n)?;
        let ev = a.evaluator();
        println!("n = {n}");
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            println!("  x = {:<22} w = {:<22} A_n0(x) = {:.1e}", format_g17(x), format_g17(w), ev.at(x).a(0));
        }
    }

    let n = 6;
    let g = discrete_gram(&build_a_system(n)?, &gauss_rule(n)?)?;
    let worst = (0..n)
        .flat_map(|k| (0..n).map(move |l| (k, l)))
        .map(|(k, l)| {
            let want = if k == l { 1.0 / (k + l + 2) as f64 } else { 0.0 };
            (g[k][l] - want).abs()
        })
        .fold(0.0, f64::max);
    println!("\ndiscrete Gram matrix for n = {n} deviates from δ_kl/(k+l) by at most {worst:.1e}");
    Ok(())
}
