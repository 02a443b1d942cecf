//! Build the A-system and its co-basis, print the members, and confirm the
//! orthogonality relations exactly.

use altapprox::apoly::{build_a_system, build_b_system, gram_matrix, shifted_orthogonality_check};

fn main() -> altapprox::Result<()> {
    let n = 4;
    let a = build_a_system(n)?;
    let b = build_b_system(&a);
    for k in (0..=n).rev() {
        println!("A_{n}{k} = {}", a.polys()[k]);
    }
    for k in 1..=n {
        println!("B_{n}{k} = {}", b.polys()[k]);
    }

    let g = gram_matrix(&a);
    println!("\n∫ A_k A_l / x dx, k,l = 1..{n}:");
    for row in &g {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        println!("  {}", cells.join(" "));
    }

    let s = shifted_orthogonality_check(&a, &b)?;
    println!("\n∫ A_k B'_l dx, k,l = 0..{n}:");
    for row in &s {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        println!("  {}", cells.join(" "));
    }
    Ok(())
}
