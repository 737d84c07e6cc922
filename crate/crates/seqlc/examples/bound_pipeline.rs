//! Walk the spectral bound pipeline on the desk-scale reference generator: a
//! degree-3 control register steps the 1/11 fraction sequence, and the
//! per-factor ranks add up to a lower bound of 30 against an exact
//! complexity of 33.

use seqlc::bound::{compute_bound, exact_decomposition_check, BoundOptions};
use seqlc::config::GeneratorConfig;

fn main() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../configs/lifi_desk.json"
    ))
    .unwrap();
    let spec = GeneratorConfig::from_json(&text).unwrap().build().unwrap();

    let opts = BoundOptions {
        exact: true,
        diagnostics_all_factors: true,
        ..BoundOptions::default()
    };
    let rep = compute_bound(&spec, &opts).unwrap();

    println!("m = {}, n = {}, stride sum = {}, v = {}", rep.m, rep.n, rep.step_sum, rep.v);
    println!("decimation complexity = {}", rep.decimation_complexity);
    println!("factors of x^{} + 1:", rep.n);
    for f in &rep.factors {
        println!(
            "  {:>12}  deg {}  h {}  g {:?}  contributes {}",
            f.p.sparse_string(),
            f.deg,
            f.h,
            f.g,
            f.contribution
        );
    }
    println!(
        "bound {} <= exact {} <= upper {}",
        rep.bound,
        rep.exact_lc.unwrap(),
        rep.upper_bound.unwrap()
    );

    println!("per-factor rank decomposition of the decimation:");
    for row in exact_decomposition_check(&spec, &opts).unwrap() {
        println!("  {:>12}  h {}  rank {}", row.p.sparse_string(), row.h, row.rank);
    }
}
