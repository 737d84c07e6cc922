//! Factor x^n + 1 over F2 for a few periods and show how the odd part of n
//! drives the repeated-factor structure.

use seqlc::gf2poly::factor_xn_plus_1;

fn main() {
    for n in [7u64, 10, 15, 30, 64, 1000] {
        let f = factor_xn_plus_1(n).unwrap();
        println!("x^{n} + 1  (sigma = {}, odd part {})", f.sigma, n >> f.sigma);
        for fp in &f.factors {
            println!(
                "  ({})^{}  deg {}",
                fp.poly.sparse_string(),
                fp.multiplicity,
                fp.poly.degree().unwrap()
            );
        }
    }
}
