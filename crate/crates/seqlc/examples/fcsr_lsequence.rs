//! Binary expansions of 1/q for safe primes q = 2p + 1 where 2 generates the
//! full group mod q: period q - 1, second half complements the first, and
//! the complexity lands on p + 1.

use num_bigint::BigUint;
use seqlc::analysis::lc_of_cycle;
use seqlc::generators::FcsrSpec;

fn main() {
    for q in [11u32, 59] {
        let spec = FcsrSpec::new(BigUint::from(1u32), BigUint::from(q)).unwrap();
        let cycle = spec.output_cycle(1 << 16).unwrap();
        let period = spec.period().unwrap();
        let p = (q - 1) / 2;
        let half = cycle.len() / 2;
        let complemented = (0..half).all(|i| cycle[i] != cycle[i + half]);
        let lc = lc_of_cycle(&cycle).unwrap();
        let line: String = cycle.iter().map(|b| char::from(b'0' + b)).collect();
        println!("1/{q}: period {period}, bits {line}");
        println!("  half-period complement: {complemented}");
        println!("  complexity {lc} = p + 1 with p = {p}");
        assert!(complemented);
        assert_eq!(lc, (p + 1) as usize);
    }

    // 1/23 shows why the hypothesis matters: 2047 = 23 * 89, so 2 only has
    // order 11 mod 23 and the expansion repeats twice as fast.
    let spec = FcsrSpec::new(BigUint::from(1u32), BigUint::from(23u32)).unwrap();
    let cycle = spec.output_cycle(1 << 16).unwrap();
    println!(
        "1/23: period {} (not 22), complexity {} (not 12)",
        spec.period().unwrap(),
        lc_of_cycle(&cycle).unwrap()
    );
}
