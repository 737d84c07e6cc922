//! The smallest interesting clocked generator: a 2-state control register
//! steps a period-4 register, the keystream period multiplies out to 8, and
//! the exact complexity sits between the spectral bound and the interleaving
//! ceiling.

use seqlc::analysis::lc_of_cycle;
use seqlc::bound::{compute_bound, BoundOptions};
use seqlc::generators::{
    minimal_period_of_cycle, ClockedSpec, ControlSpec, ControlledSpec, LfsrSpec, StepMap,
};
use seqlc::gf2poly::BinaryPolynomial;

fn main() {
    let control = ControlSpec::new(
        LfsrSpec::new(BinaryPolynomial::parse("x^2 + 1").unwrap(), vec![0, 1]).unwrap(),
        StepMap::one_plus_bit(0),
    )
    .unwrap();
    let controlled = ControlledSpec::Lfsr(
        LfsrSpec::new(BinaryPolynomial::parse("x^4 + 1").unwrap(), vec![0, 0, 0, 1]).unwrap(),
    );
    let spec = ClockedSpec::new(control, controlled);

    let d = spec.control.step_cycle(64).unwrap();
    let b = spec.controlled.cycle(64).unwrap();
    println!("step cycle        {d:?}  (m = {})", d.len());
    println!("controlled cycle  {b:?}  (n = {})", b.len());

    let ks = spec.keystream_prefix(16);
    let line: String = ks.iter().map(|x| char::from(b'0' + x)).collect();
    println!("keystream         {line}");
    println!("keystream period  {}", minimal_period_of_cycle(&ks));
    println!("keystream lc      {}", lc_of_cycle(&ks).unwrap());

    let opts = BoundOptions {
        exact: true,
        ..BoundOptions::default()
    };
    let rep = compute_bound(&spec, &opts).unwrap();
    println!(
        "bound {} <= exact {} <= upper {}",
        rep.bound,
        rep.exact_lc.unwrap(),
        rep.upper_bound.unwrap()
    );
}
