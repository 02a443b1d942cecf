//! Λ members: compact support, smoothness from the endpoint zero orders, and the
//! antisymmetric zero-mean subset that serves as mother wavelets.

use altapprox::structured::{build_structured, wavelet_subset};

fn main() -> altapprox::Result<()> {
    for n in [7, 11] {
        let s = build_structured(n)?;
        println!("n = {n}");
        for k in 2..=n {
            let l = s.lambda(k)?;
            let sm = l.smoothness();
            println!(
                "  k = {k:>2}: zero orders ({}, {}) -> C^{}, antisymmetric {:<5} mean {:+.3e}",
                sm.zero_order_at_0,
                sm.zero_order_at_1,
                sm.class,
                s.is_antisymmetric(k),
                l.moment()
            );
        }
        let ks: Vec<usize> = wavelet_subset(&s).iter().map(|p| p.1).collect();
        println!("  wavelet subset: k = {ks:?}");
    }
    Ok(())
}
