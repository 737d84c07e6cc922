//! Lower bound on the linear complexity of a clocked keystream from the
//! spectral structure of one control period against the controlled period.
//!
//! Write m for the step-sequence period, n for the controlled period, S for
//! the step sum over one control period, and C^1 for the decimation
//! c_1, c_{1+m}, c_{1+2m}, ... of the keystream. C^1 is the controlled
//! sequence resampled at stride S, so its connection polynomial H divides
//! x^n + 1 = prod_t p_t^{2^sigma}. Each irreducible p_t appearing in H with
//! multiplicity h_t contributes
//!     h_t * deg(p_t) * (m - g_t)
//! to a provable lower bound on the keystream complexity, where g_t is the
//! degree of gcd(E_t(y), y^m + alpha^{-1}) over F2[x]/(p_t), alpha the class
//! of x, beta = alpha^{v} with v = S^{-1} mod n reduced mod the odd part n',
//! and E_t(y) = sum_{i=0}^{m-1} beta^{s_{i+1} mod n'} y^i built from the
//! partial step sums s_t. Since deg E_t = m - 1, every g_t <= m - 1, so the
//! bound is at least deg H: the keystream is at least as complex as the
//! decimation it contains.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{self, AnalysisError};
use crate::extfield::{ExtensionElement, ExtensionFieldContext, ExtensionPolynomial, FieldError};
use crate::generators::{
    minimal_period_of_cycle, ClockedSpec, ControlSpec, ControlledSpec, GeneratorError, LfsrSpec,
    StepMap,
};
use crate::gf2linalg::{r_circulant_rank_ext, rank_of_poly_at_companion, LinalgError};
use crate::gf2poly::{BinaryPolynomial, PolyError};

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("controlled period {n} exceeds the analysis limit {limit}")]
    AnalysisLimit { n: u64, limit: u64 },
    #[error("exact complexity needs the full period {mn}, beyond the cap {cap}")]
    ExactCapExceeded { mn: u128, cap: u64 },
    #[error("step sum {s_mod_n} mod {n} shares a factor with {n}; the stride must be invertible")]
    PreconditionViolated { s_mod_n: u64, n: u64 },
    #[error("controlled sequence is constant; the clocked composition degenerates")]
    DegenerateControlled,
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("soundness check failed: {0}")]
    SoundnessViolation(String),
    #[error("independent measurements disagree: {0}")]
    OracleDisagreement(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone)]
pub struct BoundOptions {
    /// Also measure the exact keystream complexity over the full period m*n.
    pub exact: bool,
    /// Report the gcd degree g for every factor, including spectrally
    /// absent ones (h = 0) that contribute nothing.
    pub diagnostics_all_factors: bool,
    /// Refuse controlled periods beyond this.
    pub analysis_limit: u64,
    /// Cap on any single cycle enumeration.
    pub enumeration_cap: u64,
    /// Cap on the full period m*n for exact measurement.
    pub exact_cap: u64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            exact: false,
            diagnostics_all_factors: false,
            analysis_limit: 65536,
            enumeration_cap: 1 << 17,
            exact_cap: 1 << 17,
        }
    }
}

/// One irreducible factor of x^n + 1 in the bound decomposition.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorReport {
    pub p: BinaryPolynomial,
    pub deg: usize,
    /// Multiplicity of p in the connection polynomial of the decimation.
    pub h: u64,
    /// deg gcd(E(y), y^m + alpha^{-1}); absent when h = 0 and diagnostics
    /// were not requested.
    pub g: Option<usize>,
    pub contribution: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "s_m")]
    pub step_sum: u128,
    pub v: u64,
    pub sigma: u32,
    /// Exact complexity of the decimation C^1, i.e. deg H.
    pub decimation_complexity: usize,
    pub factors: Vec<FactorReport>,
    pub bound: u128,
    pub exact_lc: Option<u64>,
    pub upper_bound: Option<u128>,
}

impl BoundReport {
    /// Structural soundness of a finished report. Violations are bugs, not
    /// data conditions.
    pub fn check_invariants(&self) -> Result<(), BoundError> {
        let err = |msg: String| Err(BoundError::SoundnessViolation(msg));
        let mut sum = 0u128;
        let mut hdeg = 0u128;
        for f in &self.factors {
            if f.h > 0 {
                match f.g {
                    Some(g) if g < self.m as usize => {
                        if f.contribution
                            != f.h as u128 * f.deg as u128 * (self.m as u128 - g as u128)
                        {
                            return err(format!("contribution mismatch for {}", f.p));
                        }
                    }
                    _ => return err(format!("missing or out-of-range g for {}", f.p)),
                }
            } else if f.contribution != 0 {
                return err(format!("nonzero contribution with h = 0 for {}", f.p));
            }
            if f.h > 1u64 << self.sigma {
                return err(format!("multiplicity of {} exceeds 2^sigma", f.p));
            }
            sum += f.contribution;
            hdeg += f.h as u128 * f.deg as u128;
        }
        if sum != self.bound {
            return err("factor contributions do not sum to the bound".into());
        }
        if hdeg != self.decimation_complexity as u128 {
            return err("multiplicities do not account for the decimation complexity".into());
        }
        if self.bound < self.decimation_complexity as u128 || self.decimation_complexity == 0 {
            return err("bound fell below the decimation complexity".into());
        }
        if let Some(exact) = self.exact_lc {
            if self.bound > exact as u128 {
                return err(format!("bound {} exceeds exact complexity {exact}", self.bound));
            }
            if let Some(upper) = self.upper_bound {
                if (exact as u128) > upper {
                    return err(format!("exact complexity {exact} exceeds upper bound {upper}"));
                }
            }
        }
        Ok(())
    }
}

/// Interleaving bound: a keystream assembled from m strided copies of a
/// sequence of complexity l has complexity at most m * l.
pub fn interleaving_upper_bound(m: u64, controlled_lc: usize) -> u128 {
    m as u128 * controlled_lc as u128
}

fn modinv_u64(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut newt): (i128, i128) = (0, 1);
    let (mut r, mut newr): (i128, i128) = (n as i128, (a % n) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    if r != 1 {
        return None;
    }
    Some(((t % n as i128 + n as i128) % n as i128) as u64)
}

struct Pipeline {
    m: u64,
    n: u64,
    step_sum: u128,
    v: u64,
    sigma: u32,
    n_odd: u64,
    /// Partial step sums s_1..s_m.
    s: Vec<u128>,
    b_cycle: Vec<u8>,
    fbar1: BinaryPolynomial,
    connection: BinaryPolynomial,
    factors: Vec<(BinaryPolynomial, u64)>,
}

fn spec_cycles(
    spec: &ClockedSpec,
    opts: &BoundOptions,
) -> Result<(Vec<u64>, Vec<u8>), BoundError> {
    Ok((
        spec.control.step_cycle(opts.enumeration_cap)?,
        spec.controlled.cycle(opts.enumeration_cap)?,
    ))
}

fn prepare(
    step_cycle: &[u64],
    controlled_cycle: &[u8],
    opts: &BoundOptions,
) -> Result<Pipeline, BoundError> {
    if step_cycle.is_empty() || step_cycle.iter().any(|&d| d == 0) {
        return Err(BoundError::InvalidCycle(
            "step cycle must be nonempty with positive entries".into(),
        ));
    }
    if controlled_cycle.is_empty() || controlled_cycle.iter().any(|&b| b > 1) {
        return Err(BoundError::InvalidCycle(
            "controlled cycle must be nonempty with 0/1 entries".into(),
        ));
    }
    let d_cycle = &step_cycle[..minimal_period_of_cycle(step_cycle)];
    let m = d_cycle.len() as u64;
    let b_cycle = controlled_cycle[..minimal_period_of_cycle(controlled_cycle)].to_vec();
    let n = b_cycle.len() as u64;
    if n > opts.analysis_limit {
        return Err(BoundError::AnalysisLimit {
            n,
            limit: opts.analysis_limit,
        });
    }
    if n == 1 {
        return Err(BoundError::DegenerateControlled);
    }
    let mut s = Vec::with_capacity(m as usize);
    let mut acc = 0u128;
    for &d in d_cycle {
        acc += d as u128;
        s.push(acc);
    }
    let step_sum = acc;
    let s_mod_n = (step_sum % n as u128) as u64;
    let v = modinv_u64(s_mod_n, n).ok_or(BoundError::PreconditionViolated { s_mod_n, n })?;
    // C^1_i = c_{1 + m i} = b_{s_1 + i S}, indices 1-based mod n
    let c1: Vec<u8> = (0..n)
        .map(|i| {
            let idx = (s[0] - 1 + i as u128 * step_sum) % n as u128;
            b_cycle[idx as usize]
        })
        .collect();
    let support: Vec<usize> = (0..n as usize).filter(|&i| c1[i] == 1).collect();
    let fbar1 = BinaryPolynomial::from_support(&support);
    let connection = analysis::connection_polynomial_of_cycle(&c1)?;
    let list = crate::gf2poly::factor_xn_plus_1(n)?;
    let sigma = list.sigma;
    let factors = list
        .factors
        .into_iter()
        .map(|fp| (fp.poly, fp.multiplicity))
        .collect();
    Ok(Pipeline {
        m,
        n,
        step_sum,
        v,
        sigma,
        n_odd: n >> sigma,
        s,
        b_cycle,
        fbar1,
        connection,
        factors,
    })
}

/// E(y) = sum_{i=0}^{m-1} beta^{s_{i+1} mod n'} y^i over F2[x]/(p). The
/// coefficients are powers of a unit, so deg E = m - 1 exactly.
fn spectral_symbol(
    ctx: &ExtensionFieldContext,
    pl: &Pipeline,
) -> Result<(ExtensionPolynomial, ExtensionElement), BoundError> {
    let n_odd = pl.n_odd as u128;
    let alpha = ctx.alpha();
    // Block (i,j) of the grouped circulant is M_cir(C^1) times a power of the
    // forward shift D; projecting D to alpha turns the phase pattern into the
    // r-circulant with first row alpha^(-v s_1), ..., alpha^(-v s_m) and
    // r = alpha. Hence beta = alpha^(-v), and the gcd runs against y^m + alpha.
    let beta = alpha.pow(-((pl.v as u128 % n_odd) as i128))?;
    let mut per_step: HashMap<u128, ExtensionElement> = HashMap::new();
    let mut coeffs = Vec::with_capacity(pl.m as usize);
    let mut cur = ctx.one();
    let mut prev = 0u128;
    for &si in &pl.s {
        let d = si - prev;
        prev = si;
        let factor = match per_step.get(&d) {
            Some(f) => f.clone(),
            None => {
                let f = beta.pow((d % n_odd) as i128)?;
                per_step.insert(d, f.clone());
                f
            }
        };
        cur = cur.mul(&factor)?;
        coeffs.push(cur.clone());
    }
    let e = ExtensionPolynomial::from_elements(ctx, coeffs)?;
    debug_assert_eq!(e.degree(), Some(pl.m as usize - 1));
    Ok((e, alpha))
}

impl Pipeline {
    /// c_1..c_len synthesized from the cycles: c_t = b_{s_t}.
    fn keystream(&self, len: usize) -> Vec<u8> {
        let m = self.s.len();
        let n = self.b_cycle.len() as u128;
        let mut out = Vec::with_capacity(len);
        let mut base = 0u128;
        let mut t = 0usize;
        while out.len() < len {
            let st = base + self.s[t];
            out.push(self.b_cycle[((st - 1) % n) as usize]);
            t += 1;
            if t == m {
                t = 0;
                base += self.step_sum;
            }
        }
        out
    }
}

/// Compute the spectral lower bound for a clocked generator, optionally with
/// the exact complexity and the interleaving upper bound alongside.
pub fn compute_bound(spec: &ClockedSpec, opts: &BoundOptions) -> Result<BoundReport, BoundError> {
    let (d, b) = spec_cycles(spec, opts)?;
    compute_bound_for_cycles(&d, &b, opts)
}

/// The same pipeline on raw cycles: one period of the step sequence and one
/// period of the controlled sequence. Both are reduced to their minimal
/// periods first.
pub fn compute_bound_for_cycles(
    step_cycle: &[u64],
    controlled_cycle: &[u8],
    opts: &BoundOptions,
) -> Result<BoundReport, BoundError> {
    let pl = prepare(step_cycle, controlled_cycle, opts)?;
    let mut factors = Vec::with_capacity(pl.factors.len());
    let mut bound = 0u128;
    for (p, _mult) in &pl.factors {
        let deg = p.degree().unwrap();
        let h = pl.connection.multiplicity(p)?;
        let g = if h > 0 || opts.diagnostics_all_factors {
            let ctx = ExtensionFieldContext::new(p.clone())?;
            let (e, r) = spectral_symbol(&ctx, &pl)?;
            let rank = r_circulant_rank_ext(&e, pl.m as usize, &r)?;
            Some(pl.m as usize - rank)
        } else {
            None
        };
        let contribution = if h > 0 {
            let g = g.unwrap();
            h as u128 * deg as u128 * (pl.m as u128 - g as u128)
        } else {
            0
        };
        bound += contribution;
        factors.push(FactorReport {
            p: p.clone(),
            deg,
            h,
            g,
            contribution,
        });
    }

    let mut exact_lc = None;
    let mut upper_bound = None;
    if opts.exact {
        let mn = pl.m as u128 * pl.n as u128;
        if mn > opts.exact_cap as u128 {
            return Err(BoundError::ExactCapExceeded {
                mn,
                cap: opts.exact_cap,
            });
        }
        // m*n is always a period of the keystream; the minimal period can be
        // a proper divisor when the step cycle collapses mod n (steps only
        // act through their residues). The complexity of the window is exact
        // either way.
        let ks = pl.keystream(mn as usize);
        let lc = analysis::lc_of_cycle(&ks)? as u64;
        let upper = interleaving_upper_bound(pl.m, analysis::lc_of_cycle(&pl.b_cycle)?);
        if bound > lc as u128 || (lc as u128) > upper {
            return Err(BoundError::SoundnessViolation(format!(
                "bound {bound} <= exact {lc} <= upper {upper} fails"
            )));
        }
        exact_lc = Some(lc);
        upper_bound = Some(upper);
    }

    let report = BoundReport {
        n: pl.n,
        m: pl.m,
        step_sum: pl.step_sum,
        v: pl.v,
        sigma: pl.sigma,
        decimation_complexity: pl.connection.degree().unwrap_or(0),
        factors,
        bound,
        exact_lc,
        upper_bound,
    };
    report.check_invariants()?;
    Ok(report)
}

/// One factor's slice of the decimation, cross-checked by dense rank.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionRow {
    pub p: BinaryPolynomial,
    pub h: u64,
    pub rank: usize,
}

/// Verify that the decimation splits across the factors of x^n + 1 exactly
/// as its connection polynomial says: for each p, the rank of the shifted
/// series polynomial at the companion matrix of p^{2^sigma} must equal
/// h * deg p. A mismatch means a computation bug, never bad input.
pub fn exact_decomposition_check(
    spec: &ClockedSpec,
    opts: &BoundOptions,
) -> Result<Vec<DecompositionRow>, BoundError> {
    let (d, b) = spec_cycles(spec, opts)?;
    exact_decomposition_for_cycles(&d, &b, opts)
}

/// Cycle-based form of [`exact_decomposition_check`].
pub fn exact_decomposition_for_cycles(
    step_cycle: &[u64],
    controlled_cycle: &[u8],
    opts: &BoundOptions,
) -> Result<Vec<DecompositionRow>, BoundError> {
    let pl = prepare(step_cycle, controlled_cycle, opts)?;
    let n = pl.n;
    // Phase-align the decimation: the diagonal block is F1(D) * D^(v s_1),
    // and x^e is a unit mod p^(2^sigma), so the alignment never moves rank.
    let shift = (((pl.s[0] % n as u128) as u64 * pl.v) % n) as usize;
    let shifted = pl.fbar1.shifted(shift);
    let mut rows = Vec::with_capacity(pl.factors.len());
    for (p, mult) in &pl.factors {
        let mut modulus = BinaryPolynomial::one();
        for _ in 0..*mult {
            modulus = modulus.mul(p);
        }
        let rank = rank_of_poly_at_companion(&shifted, &modulus);
        let h = pl.connection.multiplicity(p)?;
        let expect = h as usize * p.degree().unwrap();
        if rank != expect {
            return Err(BoundError::SoundnessViolation(format!(
                "factor {p}: rank {rank}, spectral multiplicity predicts {expect}"
            )));
        }
        rows.push(DecompositionRow {
            p: p.clone(),
            h,
            rank,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub trials: usize,
    pub seed: u64,
    pub control_degrees: std::ops::RangeInclusive<usize>,
    pub controlled_degrees: std::ops::RangeInclusive<usize>,
    pub options: BoundOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            trials: 32,
            seed: 0,
            control_degrees: 2..=5,
            controlled_degrees: 2..=7,
            options: BoundOptions {
                exact: true,
                ..BoundOptions::default()
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub m: u64,
    pub n: u64,
    pub bound: u128,
    pub exact_lc: u64,
    pub tightness: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepSummary {
    pub trials: usize,
    pub completed: usize,
    pub exact_matches: usize,
    pub mean_tightness: f64,
    pub min_tightness: f64,
    pub rows: Vec<SweepRow>,
}

fn random_polynomial(rng: &mut ChaCha20Rng, degree: usize) -> BinaryPolynomial {
    let mut f = BinaryPolynomial::one();
    f.set_coeff(degree, true);
    for i in 1..degree {
        if rng.gen_bool(0.5) {
            f.set_coeff(i, true);
        }
    }
    f
}

fn random_state(rng: &mut ChaCha20Rng, len: usize) -> Vec<u8> {
    loop {
        let state: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        if state.iter().any(|&b| b == 1) {
            return state;
        }
    }
}

fn sample_row(index: usize, cfg: &SweepConfig) -> Option<SweepRow> {
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
    for _ in 0..200 {
        let cl = rng.gen_range(cfg.control_degrees.clone());
        let feedback = random_polynomial(&mut rng, cl);
        let state = random_state(&mut rng, cl);
        let Ok(lfsr) = LfsrSpec::new(feedback, state) else {
            continue;
        };
        let step = if cl >= 2 && rng.gen_bool(0.5) {
            let t1 = rng.gen_range(0..cl);
            let mut t2 = rng.gen_range(0..cl);
            while t2 == t1 {
                t2 = rng.gen_range(0..cl);
            }
            StepMap::two_bit_weighted(t1, t2).unwrap()
        } else {
            StepMap::one_plus_bit(rng.gen_range(0..cl))
        };
        let Ok(control) = ControlSpec::new(lfsr, step) else {
            continue;
        };
        let bl = rng.gen_range(cfg.controlled_degrees.clone());
        let Ok(blfsr) = LfsrSpec::new(random_polynomial(&mut rng, bl), random_state(&mut rng, bl))
        else {
            continue;
        };
        let spec = ClockedSpec::new(control, ControlledSpec::Lfsr(blfsr));
        match compute_bound(&spec, &cfg.options) {
            Ok(report) => {
                let exact = report.exact_lc.expect("sweep options request exact");
                return Some(SweepRow {
                    index,
                    m: report.m,
                    n: report.n,
                    bound: report.bound,
                    exact_lc: exact,
                    tightness: report.bound as f64 / exact as f64,
                });
            }
            Err(
                BoundError::PreconditionViolated { .. }
                | BoundError::DegenerateControlled
                | BoundError::ExactCapExceeded { .. }
                | BoundError::AnalysisLimit { .. }
                | BoundError::Generator(_),
            ) => continue,
            Err(other) => panic!("sweep trial hit an unexpected failure: {other}"),
        }
    }
    None
}

/// Randomized tightness study: sample admissible clocked generators, compare
/// the bound against the exact complexity. Per-trial seeding keeps results
/// identical across thread counts.
pub fn tightness_sweep(cfg: &SweepConfig) -> SweepSummary {
    let rows: Vec<SweepRow> = (0..cfg.trials)
        .into_par_iter()
        .filter_map(|i| sample_row(i, cfg))
        .collect();
    let mut rows = rows;
    rows.sort_by_key(|r| r.index);
    let completed = rows.len();
    let exact_matches = rows
        .iter()
        .filter(|r| r.bound == r.exact_lc as u128)
        .count();
    let mean = if completed == 0 {
        0.0
    } else {
        rows.iter().map(|r| r.tightness).sum::<f64>() / completed as f64
    };
    let min = rows
        .iter()
        .map(|r| r.tightness)
        .fold(f64::INFINITY, f64::min);
    SweepSummary {
        trials: cfg.trials,
        completed,
        exact_matches,
        mean_tightness: mean,
        min_tightness: if completed == 0 { 0.0 } else { min },
        rows,
    }
}

/// Smallest primitive polynomial of the given degree, ordering candidates by
/// their coefficient bits as an integer.
pub fn smallest_primitive(degree: usize) -> Result<BinaryPolynomial, PolyError> {
    assert!((1..=63).contains(&degree));
    for middle in 0u64..(1u64 << (degree.saturating_sub(1))) {
        let mut f = BinaryPolynomial::one();
        f.set_coeff(degree, true);
        for i in 1..degree {
            if (middle >> (i - 1)) & 1 == 1 {
                f.set_coeff(i, true);
            }
        }
        if f.is_primitive()? {
            return Ok(f);
        }
    }
    unreachable!("a primitive polynomial exists for every degree");
}

/// Full-scale parameter validation for a clocked generator with an l-sequence
/// controlled register: certifies periods and the stride precondition without
/// enumerating anything, and reports whether the analysis pipeline could run.
#[derive(Debug, Clone, Serialize)]
pub struct LifiValidation {
    pub control_feedback: BinaryPolynomial,
    pub control_period: BigUint,
    pub step_sum: BigUint,
    pub controlled_period: BigUint,
    pub stride_invertible: bool,
    pub expected_keystream_period: BigUint,
    pub within_analysis_limit: bool,
}

pub fn validate_lifi_params(
    feedback: Option<BinaryPolynomial>,
    state: &[u8],
    step: &StepMap,
    q: &BigUint,
    limit: u64,
) -> Result<LifiValidation, BoundError> {
    let degree = match &feedback {
        Some(f) => f.degree().ok_or(GeneratorError::ConstantFeedback)?,
        None => state.len(),
    };
    let feedback = match feedback {
        Some(f) => f,
        None => smallest_primitive(degree)?,
    };
    let lfsr = LfsrSpec::new(feedback.clone(), state.to_vec())?;
    let control = ControlSpec::new(lfsr, step.clone())?;
    let fcsr = crate::generators::FcsrSpec::new(BigUint::one(), q.clone())?;
    let controlled_period = fcsr.period()?;
    // analytic where possible; enumeration only below a modest cap
    let m = BigUint::from(control.step_period(1 << 22)?);
    let s = BigUint::from(control.step_sum(1 << 22)?);
    let n = &controlled_period;
    let stride_invertible = (&s % n).gcd(n).is_one();
    let expected = &m * n;
    Ok(LifiValidation {
        control_feedback: feedback,
        control_period: m,
        step_sum: s,
        controlled_period: controlled_period.clone(),
        stride_invertible,
        expected_keystream_period: expected,
        within_analysis_limit: n <= &BigUint::from(limit),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    fn lfsr(f: &str, state: &[u8]) -> LfsrSpec {
        LfsrSpec::new(p(f), state.to_vec()).unwrap()
    }

    fn toy() -> ClockedSpec {
        let control = ControlSpec::new(lfsr("101", &[0, 1]), StepMap::one_plus_bit(0)).unwrap();
        ClockedSpec::new(control, ControlledSpec::Lfsr(lfsr("10001", &[0, 0, 0, 1])))
    }

    fn desk() -> ClockedSpec {
        let control = ControlSpec::new(lfsr("1101", &[1, 0, 0]), StepMap::one_plus_bit(0)).unwrap();
        let fcsr = crate::generators::FcsrSpec::new(BigUint::from(1u32), BigUint::from(11u32))
            .unwrap();
        ClockedSpec::new(control, ControlledSpec::Fcsr(fcsr))
    }

    fn exact_opts() -> BoundOptions {
        BoundOptions {
            exact: true,
            ..BoundOptions::default()
        }
    }

    #[test]
    fn toy_bound_report() {
        let r = compute_bound(&toy(), &exact_opts()).unwrap();
        assert_eq!((r.m, r.n, r.step_sum, r.v, r.sigma), (2, 4, 3, 3, 2));
        assert_eq!(r.decimation_complexity, 4);
        assert_eq!(r.factors.len(), 1);
        let f = &r.factors[0];
        assert_eq!((f.p.clone(), f.deg, f.h, f.g), (p("11"), 1, 4, Some(1)));
        assert_eq!(f.contribution, 4);
        assert_eq!(r.bound, 4);
        assert_eq!(r.exact_lc, Some(7));
        assert_eq!(r.upper_bound, Some(8));
        r.check_invariants().unwrap();
    }

    #[test]
    fn desk_bound_report() {
        let r = compute_bound(&desk(), &exact_opts()).unwrap();
        assert_eq!((r.m, r.n, r.step_sum, r.v, r.sigma), (7, 10, 11, 1, 1));
        assert_eq!(r.decimation_complexity, 6);
        let fs: Vec<_> = r
            .factors
            .iter()
            .map(|f| (f.p.sparse_string(), f.h, f.g, f.contribution))
            .collect();
        assert_eq!(
            fs,
            vec![
                ("x + 1".to_string(), 2, Some(6), 2),
                ("x^4 + x^3 + x^2 + x + 1".to_string(), 1, Some(0), 28),
            ]
        );
        assert_eq!(r.bound, 30);
        assert_eq!(r.upper_bound, Some(42));
        assert_eq!(r.exact_lc, Some(33));
        r.check_invariants().unwrap();
    }

    #[test]
    fn decomposition_check_examples() {
        let rows = exact_decomposition_check(&desk(), &BoundOptions::default()).unwrap();
        let got: Vec<_> = rows
            .iter()
            .map(|r| (r.p.sparse_string(), r.h, r.rank))
            .collect();
        assert_eq!(
            got,
            vec![
                ("x + 1".to_string(), 2, 2),
                ("x^4 + x^3 + x^2 + x + 1".to_string(), 1, 4),
            ]
        );
        let rows = exact_decomposition_check(&toy(), &BoundOptions::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].h, rows[0].rank), (4, 4));
    }

    #[test]
    fn stride_precondition_rejected() {
        // steps are constantly 2 against period 4: gcd(2, 4) != 1
        let control = ControlSpec::new(lfsr("101", &[1, 1]), StepMap::one_plus_bit(0)).unwrap();
        let spec = ClockedSpec::new(control, ControlledSpec::Lfsr(lfsr("10001", &[0, 0, 0, 1])));
        match compute_bound(&spec, &BoundOptions::default()) {
            Err(BoundError::PreconditionViolated { s_mod_n: 2, n: 4 }) => {}
            other => panic!("expected precondition violation, got {other:?}"),
        }
    }

    #[test]
    fn constant_controlled_rejected() {
        let control = ControlSpec::new(lfsr("1101", &[1, 0, 0]), StepMap::one_plus_bit(0)).unwrap();
        let spec = ClockedSpec::new(control, ControlledSpec::Lfsr(lfsr("101", &[1, 1])));
        match compute_bound(&spec, &BoundOptions::default()) {
            Err(BoundError::DegenerateControlled) => {}
            other => panic!("expected degenerate-controlled error, got {other:?}"),
        }
    }

    #[test]
    fn analysis_limit_enforced() {
        let opts = BoundOptions {
            analysis_limit: 5,
            ..BoundOptions::default()
        };
        match compute_bound(&desk(), &opts) {
            Err(BoundError::AnalysisLimit { n: 10, limit: 5 }) => {}
            other => panic!("expected analysis limit refusal, got {other:?}"),
        }
        let opts = BoundOptions {
            exact: true,
            exact_cap: 32,
            ..BoundOptions::default()
        };
        match compute_bound(&desk(), &opts) {
            Err(BoundError::ExactCapExceeded { mn: 70, cap: 32 }) => {}
            other => panic!("expected exact cap refusal, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_cover_absent_factors() {
        // controlled period 5 with a decimation that misses a factor is hard
        // to arrange cheaply; instead check that diagnostics populate g for
        // every factor on the desk example
        let opts = BoundOptions {
            diagnostics_all_factors: true,
            ..BoundOptions::default()
        };
        let r = compute_bound(&desk(), &opts).unwrap();
        assert!(r.factors.iter().all(|f| f.g.is_some()));
        assert_eq!(r.bound, 30);
    }

    #[test]
    fn sweep_is_deterministic_across_thread_counts() {
        let cfg = SweepConfig {
            trials: 12,
            seed: 42,
            ..SweepConfig::default()
        };
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| tightness_sweep(&cfg));
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| tightness_sweep(&cfg));
        assert_eq!(one, four);
        assert!(one.completed > 0);
        for row in &one.rows {
            assert!(row.bound >= 1 && row.bound <= row.exact_lc as u128);
            assert!(row.tightness > 0.0 && row.tightness <= 1.0);
        }
    }

    #[test]
    fn smallest_primitive_examples() {
        assert_eq!(smallest_primitive(1).unwrap(), p("11"));
        assert_eq!(smallest_primitive(2).unwrap(), p("111"));
        assert_eq!(smallest_primitive(3).unwrap(), p("1101"));
        assert_eq!(smallest_primitive(4).unwrap(), p("11001"));
    }

    #[test]
    fn lifi_validation_desk() {
        let v = validate_lifi_params(
            Some(p("1101")),
            &[1, 0, 0],
            &StepMap::one_plus_bit(0),
            &BigUint::from(11u32),
            65536,
        )
        .unwrap();
        assert_eq!(v.control_period, BigUint::from(7u32));
        assert_eq!(v.step_sum, BigUint::from(11u32));
        assert_eq!(v.controlled_period, BigUint::from(10u32));
        assert!(v.stride_invertible);
        assert_eq!(v.expected_keystream_period, BigUint::from(70u32));
        assert!(v.within_analysis_limit);
    }

    #[test]
    fn report_serializes_with_schema_names() {
        let r = compute_bound(&toy(), &exact_opts()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["s_m"], 3);
        assert_eq!(json["factors"][0]["deg"], 1);
        assert_eq!(json["factors"][0]["p"], "11");
        assert_eq!(json["bound"], 4);
        let back: BoundReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
