//! Acceptance gate for the workspace. Each test prints exactly one
//! `ACCEPTANCE <k> <name>: PASS/FAIL` line and enforces a pinned wall-clock
//! budget. Randomness is seeded ChaCha20 throughout, so every run sees the
//! same instances; test 10 re-runs the other nine and demands byte-identical
//! artifacts.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use seqlc::analysis::{berlekamp_massey, decimate_cycle, lc_of_cycle, lc_via_circulant_rank};
use seqlc::bound::{
    compute_bound_for_cycles, exact_decomposition_for_cycles, smallest_primitive, BoundOptions,
};
use seqlc::config::GeneratorConfig;
use seqlc::generators::{minimal_period_of_cycle, ControlSpec, FcsrSpec, LfsrSpec, StepMap};
use seqlc::gf2linalg::{block_rank_check, BitMatrix};
use seqlc::gf2poly::BinaryPolynomial;

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One period of the clocked keystream: c_t = b_{s_t} with s_t the partial
/// sums of the step cycle.
fn synthesize_keystream(d: &[u64], b: &[u8], len: usize) -> Vec<u8> {
    let n = b.len() as u128;
    let mut out = Vec::with_capacity(len);
    let mut s = 0u128;
    let mut t = 0usize;
    while out.len() < len {
        s += d[t] as u128;
        t = (t + 1) % d.len();
        out.push(b[((s - 1) % n) as usize]);
    }
    out
}

fn random_bits(rng: &mut ChaCha20Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

/// Random bit cycle whose minimal period is exactly `t`.
fn random_cycle_exact_period(rng: &mut ChaCha20Rng, t: usize) -> Vec<u8> {
    loop {
        let c = random_bits(rng, t);
        if minimal_period_of_cycle(&c) == t {
            return c;
        }
    }
}

/// Random step cycle (entries 1..=4) whose minimal period is exactly `t`.
fn random_steps_exact_period(rng: &mut ChaCha20Rng, t: usize) -> Vec<u64> {
    loop {
        let d: Vec<u64> = (0..t).map(|_| rng.gen_range(1..=4u64)).collect();
        if minimal_period_of_cycle(&d) == t {
            return d;
        }
    }
}

fn report_line(idx: u32, name: &str, pass: bool, detail: &str, elapsed: Duration) {
    println!(
        "ACCEPTANCE {idx:02} {name}: {} ({detail}, {:.2}s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
}

// ---------------------------------------------------------------------------
// 1. Linear complexity agrees between the recurrence solver and circulant rank.

fn run_bm_vs_circulant() -> (bool, String) {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCE5501);
    let mut rows: Vec<(usize, usize)> = Vec::new();
    let mut ok = 0u32;
    for _ in 0..200 {
        let n = rng.gen_range(1..=64usize);
        let cycle = random_bits(&mut rng, n);
        let mut doubled = cycle.clone();
        doubled.extend_from_slice(&cycle);
        let bm = berlekamp_massey(&doubled).unwrap().complexity;
        let rank = lc_via_circulant_rank(&cycle).unwrap();
        if bm == rank {
            ok += 1;
        }
        rows.push((n, bm));
    }
    (ok == 200, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a01_recurrence_matches_circulant_rank() {
    let t0 = Instant::now();
    let (pass, _) = run_bm_vs_circulant();
    let dt = t0.elapsed();
    report_line(1, "bm-vs-circulant-rank", pass, "200 random cycles", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(5), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 2. Complexity is invariant under decimation by any stride coprime to the
//    period, from any start.

fn run_decimation_invariance() -> (bool, String) {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCE5502);
    let mut rows: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut ok = 0u32;
    for _ in 0..100 {
        let n = rng.gen_range(1..=64usize);
        let cycle = random_bits(&mut rng, n);
        let start = rng.gen_range(1..=3 * n);
        let step = loop {
            let l = rng.gen_range(1..=2 * n);
            if gcd(l as u128, n as u128) == 1 {
                break l;
            }
        };
        let base = lc_of_cycle(&cycle).unwrap();
        let dec = decimate_cycle(&cycle, start, step, n);
        let mut doubled = dec.clone();
        doubled.extend_from_slice(&dec);
        let lc = berlekamp_massey(&doubled).unwrap().complexity;
        if lc == base {
            ok += 1;
        }
        rows.push((n, start, step, lc));
    }
    (ok == 100, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a02_decimation_preserves_complexity() {
    let t0 = Instant::now();
    let (pass, _) = run_decimation_invariance();
    let dt = t0.elapsed();
    report_line(2, "decimation-invariance", pass, "100 coprime decimations", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(2), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 3. Period composition law: step period T1, controlled period T2,
//    gcd(S, T2) = 1 forces keystream period exactly T1*T2 -- provided the
//    step cycle keeps its period after reduction mod T2, because the
//    keystream only sees step residues. Two degeneracies are excluded by
//    construction and asserted explicitly below: a constant controlled cycle
//    (T2 = 1) collapses the keystream to a constant, and a step cycle whose
//    residues mod T2 are periodic with period < T1 collapses the period the
//    same way (e.g. steps [4, 1] against a period-3 cycle act like [1, 1]).

fn run_period_law() -> (bool, String) {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCE5503);
    let mut rows: Vec<(usize, usize, u32)> = Vec::new();
    let mut all_ok = true;
    for t1 in 1..=8usize {
        for t2 in 2..=16usize {
            let mut cell_ok = 0u32;
            for _ in 0..5 {
                let d = loop {
                    let d = random_steps_exact_period(&mut rng, t1);
                    let s: u128 = d.iter().map(|&x| x as u128).sum();
                    let reduced: Vec<u64> = d.iter().map(|&x| x % t2 as u64).collect();
                    if gcd(s, t2 as u128) == 1 && minimal_period_of_cycle(&reduced) == t1 {
                        break d;
                    }
                };
                let b = random_cycle_exact_period(&mut rng, t2);
                let ks = synthesize_keystream(&d, &b, t1 * t2);
                if minimal_period_of_cycle(&ks) == t1 * t2 {
                    cell_ok += 1;
                }
            }
            all_ok &= cell_ok == 5;
            rows.push((t1, t2, cell_ok));
        }
    }
    (all_ok, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a03_keystream_period_is_product() {
    let t0 = Instant::now();
    let (pass, _) = run_period_law();
    let dt = t0.elapsed();
    // The excluded degeneracies: constant controlled input gives a constant
    // keystream whatever the step period is, and steps congruent mod T2
    // collapse the same way even though gcd(S, T2) = 1.
    let collapsed = synthesize_keystream(&[1, 2, 1, 1, 3, 1, 2], &[1], 14);
    assert_eq!(minimal_period_of_cycle(&collapsed), 1);
    let aliased = synthesize_keystream(&[4, 1], &[1, 1, 0], 6);
    assert_eq!(minimal_period_of_cycle(&aliased), 3);
    report_line(3, "period-product-law", pass, "grid T1 1..=8 x T2 2..=16, 5 maps/cell", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(10), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 4. The spectral lower bound never exceeds the measured complexity, which
//    never exceeds the interleaving upper bound, on 500 random instances.

/// Deterministic instance pool shared by tests 4 and 5: step cycles of
/// minimal period <= 16, controlled cycles of minimal period 2..=40 with
/// stride coprime to the period.
fn sample_instances(count: usize) -> Vec<(Vec<u64>, Vec<u8>)> {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCE5504);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d_raw: Vec<u64> = (0..rng.gen_range(1..=16usize))
            .map(|_| rng.gen_range(1..=4u64))
            .collect();
        let b_len = rng.gen_range(2..=40usize);
        let b_raw = random_bits(&mut rng, b_len);
        let d = d_raw[..minimal_period_of_cycle(&d_raw)].to_vec();
        let b = b_raw[..minimal_period_of_cycle(&b_raw)].to_vec();
        if b.len() < 2 {
            continue;
        }
        let s: u128 = d.iter().map(|&x| x as u128).sum();
        if gcd(s, b.len() as u128) != 1 {
            continue;
        }
        out.push((d, b));
    }
    out
}

fn run_bound_sandwich() -> (bool, String) {
    let opts = BoundOptions {
        exact: true,
        ..BoundOptions::default()
    };
    let mut rows: Vec<(u64, u64, u128, u64, u128)> = Vec::new();
    let mut ok = true;
    for (d, b) in sample_instances(500) {
        let rep = compute_bound_for_cycles(&d, &b, &opts).unwrap();
        let exact = rep.exact_lc.unwrap();
        let upper = rep.upper_bound.unwrap();
        // Independent oracle: solve the recurrence on two periods directly.
        let mn = (rep.m * rep.n) as usize;
        let ks = synthesize_keystream(&d, &b, 2 * mn);
        let bm = berlekamp_massey(&ks).unwrap().complexity as u64;
        ok &= rep.bound <= exact as u128 && (exact as u128) <= upper && bm == exact;
        rep.check_invariants().unwrap();
        rows.push((rep.m, rep.n, rep.bound, exact, upper));
    }
    (ok, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a04_bound_is_sound_on_random_instances() {
    let t0 = Instant::now();
    let (pass, _) = run_bound_sandwich();
    let dt = t0.elapsed();
    report_line(4, "spectral-bound-sandwich", pass, "500 instances, 0 violations allowed", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(60), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 5. The per-factor rank decomposition reproduces each factor's multiplicity
//    exactly on every instance small enough to materialize.

fn run_decomposition_equality() -> (bool, String) {
    let opts = BoundOptions::default();
    let mut rows: Vec<(u64, u64, usize, u64)> = Vec::new();
    let mut ok = true;
    for (d, b) in sample_instances(500) {
        let m = minimal_period_of_cycle(&d) as u64;
        let n = minimal_period_of_cycle(&b) as u64;
        if m * n > 4096 {
            continue;
        }
        match exact_decomposition_for_cycles(&d, &b, &opts) {
            Ok(table) => {
                let rank_sum: u64 = table.iter().map(|r| r.rank as u64).sum();
                rows.push((m, n, table.len(), rank_sum));
            }
            Err(_) => ok = false,
        }
    }
    (ok && rows.len() == 500, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a05_rank_decomposition_is_exact() {
    let t0 = Instant::now();
    let (pass, _) = run_decomposition_equality();
    let dt = t0.elapsed();
    report_line(5, "factor-rank-decomposition", pass, "500 instances, every factor", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(120), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 6. The desk-scale reference instance: bound 30 = (L(B)-2)m + 2, measured
//    complexity 33, keystream period 70.

fn desk_spec() -> seqlc::generators::ClockedSpec {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/lifi_desk.json");
    let text = std::fs::read_to_string(path).unwrap();
    GeneratorConfig::from_json(&text).unwrap().build().unwrap()
}

fn run_desk_reference() -> (bool, String) {
    let spec = desk_spec();
    let opts = BoundOptions {
        exact: true,
        ..BoundOptions::default()
    };
    let d = spec.control.step_cycle(1 << 17).unwrap();
    let b = spec.controlled.cycle(1 << 17).unwrap();
    let rep = compute_bound_for_cycles(&d, &b, &opts).unwrap();
    let controlled_lc = lc_of_cycle(&b).unwrap();
    let ks = spec.keystream_prefix(140);
    let bm = berlekamp_massey(&ks).unwrap().complexity;
    let period = minimal_period_of_cycle(&ks[..70]);
    let closed_form = (controlled_lc as u128 - 2) * rep.m as u128 + 2;
    let pass = rep.m == 7
        && rep.n == 10
        && controlled_lc == 6
        && rep.bound == 30
        && rep.bound == closed_form
        && period == 70
        && rep.exact_lc == Some(33)
        && bm == 33
        && rep.bound <= bm as u128;
    let artifact = serde_json::json!({
        "report": rep,
        "keystream_period": period,
        "bm_complexity": bm,
    });
    (pass, artifact.to_string())
}

#[test]
fn a06_desk_reference_instance() {
    let t0 = Instant::now();
    let (pass, _) = run_desk_reference();
    let dt = t0.elapsed();
    report_line(6, "desk-reference-bound-30", pass, "bound 30, exact 33, period 70", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(1), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 7. Maximal-period fraction sequences: when 2 generates the full group mod
//    q = 2p+1, the complexity is exactly p+1. That hypothesis holds for 11
//    and 59. It fails for 23 (2 has order 11 mod 23, since 2047 = 23*89), so
//    there the sequence has period 11 and complexity 10 = p-1, and the test
//    pins that behavior instead of the law.

fn fcsr_cycle_lc(q: u64) -> (BigUint, usize, usize) {
    let spec = FcsrSpec::new(BigUint::from(1u32), BigUint::from(q)).unwrap();
    let period = spec.period().unwrap();
    let cycle = spec.output_cycle(1 << 20).unwrap();
    let mut doubled = cycle.clone();
    doubled.extend_from_slice(&cycle);
    let lc = berlekamp_massey(&doubled).unwrap().complexity;
    (period, cycle.len(), lc)
}

fn run_lsequence_complexity() -> (bool, String) {
    let mut rows: Vec<(u64, String, usize)> = Vec::new();
    let mut ok = true;
    for q in [11u64, 59] {
        let p = (q - 1) / 2;
        let (period, cycle_len, lc) = fcsr_cycle_lc(q);
        ok &= period == BigUint::from(q - 1)
            && cycle_len == (q - 1) as usize
            && lc == (p + 1) as usize;
        rows.push((q, period.to_string(), lc));
    }
    let (period, cycle_len, lc) = fcsr_cycle_lc(23);
    ok &= period == BigUint::from(11u32) && cycle_len == 11 && lc == 10;
    rows.push((23, period.to_string(), lc));
    (ok, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a07_lsequence_complexity_law() {
    let t0 = Instant::now();
    let (pass, _) = run_lsequence_complexity();
    let dt = t0.elapsed();
    report_line(
        7,
        "fraction-sequence-complexity",
        pass,
        "q=11,59: p+1; q=23 pinned at order 11, lc 10",
        dt,
    );
    assert!(pass);
    assert!(dt < Duration::from_secs(1), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 8. Block-matrix rank law: expanding a matrix over F2[x]/(p^r) to its binary
//    image never loses more rank than the quotient map to F2[x]/(p) predicts.

fn random_irreducible(rng: &mut ChaCha20Rng, max_deg: usize) -> BinaryPolynomial {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut support = vec![0usize, deg];
        for k in 1..deg {
            if rng.gen_bool(0.5) {
                support.push(k);
            }
        }
        let p = BinaryPolynomial::from_support(&support);
        let f = p.factor().unwrap();
        if f.len() == 1 && f[0].1 == 1 {
            return p;
        }
    }
}

fn run_block_rank_law() -> (bool, String) {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCE5508);
    let mut rows: Vec<(usize, usize, u32, usize, usize)> = Vec::new();
    let mut ok = true;
    for _ in 0..100 {
        let m = rng.gen_range(1..=4usize);
        let p = random_irreducible(&mut rng, 4);
        let dp = p.degree().unwrap();
        let rexp = rng.gen_range(1..=3u32);
        let slots = dp * rexp as usize;
        let entries: Vec<Vec<BinaryPolynomial>> = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let support: Vec<usize> =
                            (0..slots).filter(|_| rng.gen_bool(0.5)).collect();
                        BinaryPolynomial::from_support(&support)
                    })
                    .collect()
            })
            .collect();
        let (full, quot) = block_rank_check(&entries, &p, rexp).unwrap();
        ok &= full >= dp * quot;
        rows.push((m, dp, rexp, full, quot));
    }
    (ok, serde_json::to_string(&rows).unwrap())
}

#[test]
fn a08_block_rank_inequality() {
    let t0 = Instant::now();
    let (pass, _) = run_block_rank_law();
    let dt = t0.elapsed();
    report_line(8, "block-matrix-rank-law", pass, "100 matrices over F2[x]/(p^r)", dt);
    assert!(pass);
    assert!(dt < Duration::from_secs(30), "budget exceeded: {dt:?}");
}

// ---------------------------------------------------------------------------
// 9. Performance floor: dense 4096x4096 rank under 2 s, and the bound
//    pipeline at m = 127, n = 1000 (exact disabled) under 10 s.

fn run_performance_floor() -> (bool, String, Duration, Duration) {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCE5509);
    let mut mat = BitMatrix::new(4096, 4096);
    for r in 0..4096 {
        for c in 0..4096 {
            mat.set(r, c, rng.gen_bool(0.5));
        }
    }
    let t_rank = Instant::now();
    let rank = mat.rank();
    let rank_dt = t_rank.elapsed();

    let control = ControlSpec::new(
        LfsrSpec::new(smallest_primitive(7).unwrap(), vec![1, 0, 0, 0, 0, 0, 0]).unwrap(),
        StepMap::one_plus_bit(0),
    )
    .unwrap();
    let d = control.step_cycle(1 << 17).unwrap();
    let b = random_cycle_exact_period(&mut rng, 1000);
    let s: u128 = d.iter().map(|&x| x as u128).sum();
    let t_bound = Instant::now();
    let rep = compute_bound_for_cycles(&d, &b, &BoundOptions::default()).unwrap();
    let bound_dt = t_bound.elapsed();

    let pass = rank >= 4000
        && d.len() == 127
        && s == 191
        && gcd(s, 1000) == 1
        && rep.m == 127
        && rep.n == 1000
        && rep.bound >= 1
        && rep.exact_lc.is_none();
    let artifact = serde_json::json!({ "rank": rank, "report": rep });
    (pass, artifact.to_string(), rank_dt, bound_dt)
}

#[test]
fn a09_performance_floor() {
    let t0 = Instant::now();
    let (pass, _, rank_dt, bound_dt) = run_performance_floor();
    let dt = t0.elapsed();
    report_line(
        9,
        "performance-floor",
        pass,
        &format!(
            "4096 rank {:.2}s, m=127 n=1000 bound {:.2}s",
            rank_dt.as_secs_f64(),
            bound_dt.as_secs_f64()
        ),
        dt,
    );
    assert!(pass);
    assert!(rank_dt < Duration::from_secs(2), "rank budget exceeded: {rank_dt:?}");
    assert!(bound_dt < Duration::from_secs(10), "bound budget exceeded: {bound_dt:?}");
}

// ---------------------------------------------------------------------------
// 10. Determinism: re-running every criterion with the same seeds produces
//     byte-identical artifacts.

#[test]
fn a10_artifacts_are_deterministic() {
    let t0 = Instant::now();
    let runs: Vec<(&str, fn() -> (bool, String))> = vec![
        ("01", run_bm_vs_circulant),
        ("02", run_decimation_invariance),
        ("03", run_period_law),
        ("04", run_bound_sandwich),
        ("05", run_decomposition_equality),
        ("06", run_desk_reference),
        ("07", run_lsequence_complexity),
        ("08", run_block_rank_law),
    ];
    let mut pass = true;
    for (name, f) in &runs {
        let (_, first) = f();
        let (_, second) = f();
        if first != second {
            pass = false;
            println!("ACCEPTANCE 10: artifact drift in criterion {name}");
        }
    }
    let (_, perf_a, _, _) = run_performance_floor();
    let (_, perf_b, _, _) = run_performance_floor();
    pass &= perf_a == perf_b;
    let dt = t0.elapsed();
    report_line(10, "artifact-determinism", pass, "criteria 1-9 re-run, byte-compared", dt);
    assert!(pass);
}
