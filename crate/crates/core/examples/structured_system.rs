//! The structured system: π-sequence, Gram–Schmidt members, the Rodrigues form,
//! the marginal member as a shifted Legendre polynomial, and Lobatto nodes.

use altapprox::structured::{build_structured, lobatto_from_s1, pi_seq, rodrigues};

fn main() -> altapprox::Result<()> {
    let n = 3;
    let s = build_structured(n)?;
    for (k, p) in pi_seq(n).iter().enumerate() {
        println!("π_{k} = {p}");
    }
    println!();
    for k in (0..=n).rev() {
        let pi: Vec<String> = s.to_pi_basis(k)?.iter().map(ToString::to_string).collect();
        let norm = s.norm_sq(k).map_or("-".to_string(), ToString::to_string);
        println!("raw_{k} = {:<28} π-coefficients [{}]  norm² {norm}", s.raw()[k].to_string(), pi.join(", "));
    }

    println!();
    for k in 0..=n {
        let r = rodrigues(n, k)?;
        let c = r.proportionality(&s.raw()[k]).expect("proportional");
        println!("Rodrigues k = {k}: {r}   (= {c} · raw_{k})");
    }

    println!();
    for n in 2..=6 {
        let nodes = lobatto_from_s1(&build_structured(n)?)?;
        println!("interior Lobatto nodes, n = {n}: {nodes:.15?}");
    }
    Ok(())
}
