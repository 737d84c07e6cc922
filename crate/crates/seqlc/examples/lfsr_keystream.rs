//! Run a maximal-length register, print one full period, and confirm the
//! complexity equals the register degree.

use seqlc::analysis::lc_result_of_cycle;
use seqlc::generators::LfsrSpec;
use seqlc::gf2poly::BinaryPolynomial;

fn main() {
    let feedback = BinaryPolynomial::parse("x^5 + x^2 + 1").unwrap();
    let spec = LfsrSpec::new(feedback, vec![1, 0, 0, 0, 0]).unwrap();
    let cycle = spec.output_cycle(1 << 10).unwrap();
    println!("feedback   {}", spec.feedback().sparse_string());
    println!("period     {}", cycle.len());
    let line: String = cycle.iter().map(|b| char::from(b'0' + b)).collect();
    println!("one period {line}");

    let lc = lc_result_of_cycle(&cycle).unwrap();
    println!("complexity {}", lc.complexity);
    println!("char poly  {}", lc.min_poly.sparse_string());
    assert_eq!(lc.complexity, 5);
}
