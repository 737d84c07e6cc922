//! Certify the full-scale generator parameters without enumerating anything:
//! a degree-39 control register with a two-bit weighted step map drives the
//! binary expansion of 1/q for an 89-bit safe prime. Everything here runs in
//! about a millisecond.

use seqlc::config::GeneratorConfig;
use seqlc::bound::validate_lifi_params;
use seqlc::generators::ControlledSpec;

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../configs/lifi_full.json"
    ))
    .unwrap();
    let cfg = GeneratorConfig::from_json(&text).unwrap();
    let spec = cfg.build().unwrap();

    let q = match &spec.controlled {
        ControlledSpec::Fcsr(f) => f.modulus().clone(),
        _ => unreachable!(),
    };
    let v = validate_lifi_params(
        Some(spec.control.lfsr().feedback().clone()),
        spec.control.lfsr().initial_state(),
        spec.control.step_map(),
        &q,
        1 << 16,
    )
    .unwrap();

    println!("control feedback    {}", v.control_feedback.sparse_string());
    println!("control period      {}", v.control_period);
    println!("stride sum          {}", v.step_sum);
    println!("controlled modulus  {q}");
    println!("controlled period   {}", v.controlled_period);
    println!("stride invertible   {}", v.stride_invertible);
    println!("keystream period    {}", v.expected_keystream_period);

    let first: String = spec
        .keystream()
        .take(64)
        .map(|b| char::from(b'0' + b))
        .collect();
    println!("first 64 bits       {first}");
}
