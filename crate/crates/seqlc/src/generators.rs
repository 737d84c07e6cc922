//! Binary sequence generators: LFSRs, FCSR l-sequences, and the feedforward
//! clock-controlled composition of a stepping control register with a
//! controlled register.
//!
//! Indexing is 1-based throughout: a generator run produces b_1, b_2, ...
//! and a cycle slice `v` stores b_i at `v[i - 1]`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::gf2poly::{BinaryPolynomial, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("feedback polynomial must be non-constant")]
    ConstantFeedback,
    #[error("feedback polynomial must have constant term 1")]
    FeedbackConstantTermZero,
    #[error("initial state must have one bit per feedback degree: expected {expected}, got {got}")]
    StateLengthMismatch { expected: usize, got: usize },
    #[error("state entries must be 0 or 1")]
    InvalidBit,
    #[error("all-zero initial state generates the zero sequence")]
    ZeroState,
    #[error("step map needs at least one tap")]
    EmptyTaps,
    #[error("step map taps must be distinct")]
    DuplicateTap,
    #[error("tap {tap} out of range for register of degree {degree}")]
    TapOutOfRange { tap: usize, degree: usize },
    #[error("step table must have one entry per tap pattern: expected {expected}, got {got}")]
    TableSizeMismatch { expected: usize, got: usize },
    #[error("step values must be >= 1")]
    NonPositiveStep,
    #[error("fraction denominator must be odd")]
    EvenModulus,
    #[error("fraction denominator must be >= 3")]
    ModulusTooSmall,
    #[error("fraction numerator must satisfy 0 < a < q")]
    FractionOutOfRange,
    #[error("enumeration exceeded the cap of {cap}")]
    CapExceeded { cap: u64 },
    #[error("period of the fraction could not be certified at this size")]
    PeriodUndetermined,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Minimal period of a slice that holds exactly one (not necessarily minimal)
/// period of a sequence.
pub fn minimal_period_of_cycle<T: PartialEq>(cycle: &[T]) -> usize {
    let n = cycle.len();
    'outer: for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        for i in d..n {
            if cycle[i] != cycle[i % d] {
                continue 'outer;
            }
        }
        return d;
    }
    n
}

/// Fibonacci LFSR. The feedback polynomial is monic with constant term 1;
/// writing it as x^L + sum c_j x^j, the output obeys
/// b_{k+L} = sum_{j<L} c_j b_{k+j}, and the initial state is the first L
/// output bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrSpec {
    feedback: BinaryPolynomial,
    state: Vec<u8>,
}

impl LfsrSpec {
    pub fn new(feedback: BinaryPolynomial, state: Vec<u8>) -> Result<Self, GeneratorError> {
        let deg = match feedback.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(GeneratorError::ConstantFeedback),
        };
        if !feedback.constant_term() {
            return Err(GeneratorError::FeedbackConstantTermZero);
        }
        if state.len() != deg {
            return Err(GeneratorError::StateLengthMismatch {
                expected: deg,
                got: state.len(),
            });
        }
        if state.iter().any(|&b| b > 1) {
            return Err(GeneratorError::InvalidBit);
        }
        if state.iter().all(|&b| b == 0) {
            return Err(GeneratorError::ZeroState);
        }
        Ok(Self { feedback, state })
    }

    pub fn feedback(&self) -> &BinaryPolynomial {
        &self.feedback
    }

    pub fn degree(&self) -> usize {
        self.state.len()
    }

    pub fn initial_state(&self) -> &[u8] {
        &self.state
    }

    fn engine(&self) -> LfsrEngine {
        let deg = self.degree();
        let support = (0..deg).filter(|&j| self.feedback.coeff(j)).collect();
        LfsrEngine {
            support,
            window: self.state.clone(),
            pos: 0,
        }
    }

    /// Infinite output stream b_1, b_2, ...
    pub fn bits(&self) -> impl Iterator<Item = u8> + 'static {
        self.engine()
    }

    /// Period of the internal state cycle. Analytic for a primitive feedback
    /// polynomial, otherwise found by stepping until the state recurs.
    pub fn state_period(&self, cap: u64) -> Result<u64, GeneratorError> {
        let deg = self.degree();
        if deg <= 63 && self.feedback.is_primitive()? {
            return Ok((1u64 << deg) - 1);
        }
        let mut eng = self.engine();
        let start = eng.snapshot();
        let mut t = 0u64;
        loop {
            eng.next();
            t += 1;
            if eng.snapshot() == start {
                return Ok(t);
            }
            if t >= cap {
                return Err(GeneratorError::CapExceeded { cap });
            }
        }
    }

    /// Exactly one minimal period of the output sequence.
    pub fn output_cycle(&self, cap: u64) -> Result<Vec<u8>, GeneratorError> {
        let p = self.state_period(cap)?;
        if p > cap {
            return Err(GeneratorError::CapExceeded { cap });
        }
        let cycle: Vec<u8> = self.bits().take(p as usize).collect();
        let n = minimal_period_of_cycle(&cycle);
        Ok(cycle[..n].to_vec())
    }
}

struct LfsrEngine {
    support: Vec<usize>,
    window: Vec<u8>,
    pos: usize,
}

impl LfsrEngine {
    fn window_bit(&self, j: usize) -> u8 {
        let l = self.window.len();
        self.window[(self.pos + j) % l]
    }

    fn snapshot(&self) -> Vec<u8> {
        (0..self.window.len()).map(|j| self.window_bit(j)).collect()
    }
}

impl Iterator for LfsrEngine {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let l = self.window.len();
        let out = self.window[self.pos];
        let fb = self
            .support
            .iter()
            .fold(0u8, |acc, &j| acc ^ self.window_bit(j));
        self.window[self.pos] = fb;
        self.pos = (self.pos + 1) % l;
        Some(out)
    }
}

/// The fraction a/q in 2-adic form: bit i of the output is
/// (a * 2^{-i} mod q) mod 2 for i >= 1. The fraction is reduced to lowest
/// terms on construction; the reduced form generates the identical stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcsrSpec {
    a: BigUint,
    q: BigUint,
}

impl FcsrSpec {
    pub fn new(a: BigUint, q: BigUint) -> Result<Self, GeneratorError> {
        if q.is_even() {
            return Err(GeneratorError::EvenModulus);
        }
        if q < BigUint::from(3u32) {
            return Err(GeneratorError::ModulusTooSmall);
        }
        if a.is_zero() || a >= q {
            return Err(GeneratorError::FractionOutOfRange);
        }
        let g = a.gcd(&q);
        let (a, q) = if g.is_one() { (a, q) } else { (&a / &g, &q / &g) };
        Ok(Self { a, q })
    }

    pub fn numerator(&self) -> &BigUint {
        &self.a
    }

    pub fn modulus(&self) -> &BigUint {
        &self.q
    }

    /// Infinite output stream b_1, b_2, ...
    pub fn bits(&self) -> impl Iterator<Item = u8> + 'static {
        let inv2 = (&self.q + 1u32) >> 1;
        FcsrBits {
            cur: self.a.clone(),
            q: self.q.clone(),
            inv2,
        }
    }

    /// Exact output period, ord_q(2). Certified two ways: a safe-prime
    /// certificate q = 2p + 1 with 2^p = -1 (works at any size), or a full
    /// multiplicative-order computation when q fits in 63 bits. Anything
    /// else is refused rather than guessed.
    pub fn period(&self) -> Result<BigUint, GeneratorError> {
        if let Some(p) = self.safe_prime_period() {
            return Ok(p);
        }
        if let Ok(q) = u64::try_from(&self.q) {
            if q < (1 << 63) {
                return Ok(BigUint::from(multiplicative_order_of_two(q)));
            }
        }
        Err(GeneratorError::PeriodUndetermined)
    }

    fn safe_prime_period(&self) -> Option<BigUint> {
        let one = BigUint::one();
        let two = BigUint::from(2u32);
        let p = (&self.q - &one) >> 1;
        if p < two {
            return None;
        }
        if !num_prime::nt_funcs::is_prime(&self.q, None).probably()
            || !num_prime::nt_funcs::is_prime(&p, None).probably()
        {
            return None;
        }
        // 2^p = -1 mod q forces ord(2) = 2p = q - 1
        if two.modpow(&p, &self.q) == &self.q - &one {
            Some(&self.q - &one)
        } else {
            None
        }
    }

    /// Exactly one minimal period of the output. The bit stream determines
    /// the fraction, so its minimal period equals ord_q(2) with no further
    /// reduction.
    pub fn output_cycle(&self, cap: u64) -> Result<Vec<u8>, GeneratorError> {
        let inv2 = (&self.q + 1u32) >> 1;
        let mut cur = self.a.clone();
        let mut out = Vec::new();
        loop {
            cur = (&cur * &inv2) % &self.q;
            out.push(if cur.is_odd() { 1 } else { 0 });
            if cur == self.a {
                return Ok(out);
            }
            if out.len() as u64 >= cap {
                return Err(GeneratorError::CapExceeded { cap });
            }
        }
    }
}

struct FcsrBits {
    cur: BigUint,
    q: BigUint,
    inv2: BigUint,
}

impl Iterator for FcsrBits {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        self.cur = (&self.cur * &self.inv2) % &self.q;
        Some(if self.cur.is_odd() { 1 } else { 0 })
    }
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// ord_q(2) for odd q >= 3 that fits in 63 bits, via the Carmichael function
/// of q and divisor reduction.
fn multiplicative_order_of_two(q: u64) -> u64 {
    let mut lambda = 1u64;
    for (p, k) in num_prime::nt_funcs::factorize(q) {
        let p = p as u64;
        let mut eul = p - 1;
        for _ in 1..k {
            eul *= p;
        }
        lambda = lambda.lcm(&eul);
    }
    let mut ord = lambda;
    for (r, _) in num_prime::nt_funcs::factorize(lambda) {
        let r = r as u64;
        while ord % r == 0 && powmod_u64(2, ord / r, q) == 1 {
            ord /= r;
        }
    }
    debug_assert_eq!(powmod_u64(2, ord, q), 1);
    ord
}

/// Maps the control register's state window to a step count >= 1. The taps
/// pick state positions; the table is indexed by the tapped bits with the
/// first tap as the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepMap {
    taps: Vec<usize>,
    table: Vec<u64>,
}

impl StepMap {
    pub fn from_table(taps: Vec<usize>, table: Vec<u64>) -> Result<Self, GeneratorError> {
        if taps.is_empty() {
            return Err(GeneratorError::EmptyTaps);
        }
        let mut seen = taps.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != taps.len() {
            return Err(GeneratorError::DuplicateTap);
        }
        let expected = 1usize << taps.len();
        if table.len() != expected {
            return Err(GeneratorError::TableSizeMismatch {
                expected,
                got: table.len(),
            });
        }
        if table.iter().any(|&d| d == 0) {
            return Err(GeneratorError::NonPositiveStep);
        }
        Ok(Self { taps, table })
    }

    /// Step 1 + b where b is the bit at `tap`.
    pub fn one_plus_bit(tap: usize) -> Self {
        Self {
            taps: vec![tap],
            table: vec![1, 2],
        }
    }

    /// Step 1 + 2*b1 + b2 from the bits at two taps, covering steps 1..=4.
    pub fn two_bit_weighted(t1: usize, t2: usize) -> Result<Self, GeneratorError> {
        Self::from_table(vec![t1, t2], vec![1, 2, 3, 4])
    }

    pub fn taps(&self) -> &[usize] {
        &self.taps
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn max_tap(&self) -> usize {
        *self.taps.iter().max().unwrap()
    }

    pub fn max_step(&self) -> u64 {
        *self.table.iter().max().unwrap()
    }

    /// An injective table makes the step sequence carry the tapped bits
    /// verbatim, which pins its period to the control register's period.
    pub fn is_injective(&self) -> bool {
        let mut vals = self.table.clone();
        vals.sort_unstable();
        vals.dedup();
        vals.len() == self.table.len()
    }

    fn step_of(&self, window_bit: impl Fn(usize) -> u8) -> u64 {
        let mut idx = 0usize;
        for &t in &self.taps {
            idx = (idx << 1) | window_bit(t) as usize;
        }
        self.table[idx]
    }
}

/// Control half of a clocked generator: an LFSR whose state drives a step
/// map, emitting the step sequence d_1, d_2, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlSpec {
    lfsr: LfsrSpec,
    step: StepMap,
}

impl ControlSpec {
    pub fn new(lfsr: LfsrSpec, step: StepMap) -> Result<Self, GeneratorError> {
        if step.max_tap() >= lfsr.degree() {
            return Err(GeneratorError::TapOutOfRange {
                tap: step.max_tap(),
                degree: lfsr.degree(),
            });
        }
        Ok(Self { lfsr, step })
    }

    pub fn lfsr(&self) -> &LfsrSpec {
        &self.lfsr
    }

    pub fn step_map(&self) -> &StepMap {
        &self.step
    }

    /// Infinite step stream d_1, d_2, ...
    pub fn steps(&self) -> impl Iterator<Item = u64> + 'static {
        StepStream {
            engine: self.lfsr.engine(),
            step: self.step.clone(),
        }
    }

    fn analytic_ready(&self) -> Result<bool, GeneratorError> {
        Ok(self.lfsr.degree() <= 63
            && self.lfsr.feedback().is_primitive()?
            && self.step.is_injective())
    }

    /// Exactly one minimal period of the step sequence.
    pub fn step_cycle(&self, cap: u64) -> Result<Vec<u64>, GeneratorError> {
        let p = self.lfsr.state_period(cap)?;
        if p > cap {
            return Err(GeneratorError::CapExceeded { cap });
        }
        let cycle: Vec<u64> = self.steps().take(p as usize).collect();
        let m = minimal_period_of_cycle(&cycle);
        Ok(cycle[..m].to_vec())
    }

    /// Minimal period m of the step sequence. With primitive feedback and an
    /// injective table the steps encode the tapped state bits, so m is the
    /// full state period 2^L - 1 with no enumeration.
    pub fn step_period(&self, cap: u64) -> Result<u64, GeneratorError> {
        if self.analytic_ready()? {
            return Ok((1u64 << self.lfsr.degree()) - 1);
        }
        Ok(self.step_cycle(cap)?.len() as u64)
    }

    /// Sum of the steps over one minimal period. In the analytic case every
    /// nonzero state appears exactly once per period, so the sum counts each
    /// table entry 2^(L-k) times and drops one visit to the zero pattern.
    pub fn step_sum(&self, cap: u64) -> Result<u128, GeneratorError> {
        if self.analytic_ready()? {
            let l = self.lfsr.degree();
            let k = self.step.taps.len();
            let total: u128 = self.step.table.iter().map(|&d| d as u128).sum();
            return Ok((total << (l - k)) - self.step.table[0] as u128);
        }
        Ok(self.step_cycle(cap)?.iter().map(|&d| d as u128).sum())
    }
}

struct StepStream {
    engine: LfsrEngine,
    step: StepMap,
}

impl Iterator for StepStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let d = self.step.step_of(|j| self.engine.window_bit(j));
        self.engine.next();
        Some(d)
    }
}

/// Controlled half of a clocked generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ControlledSpec {
    Lfsr(LfsrSpec),
    Fcsr(FcsrSpec),
}

impl ControlledSpec {
    /// Infinite output stream b_1, b_2, ...
    pub fn bits(&self) -> Box<dyn Iterator<Item = u8>> {
        match self {
            Self::Lfsr(l) => Box::new(l.bits()),
            Self::Fcsr(f) => Box::new(f.bits()),
        }
    }

    /// Exactly one minimal period of the output.
    pub fn cycle(&self, cap: u64) -> Result<Vec<u8>, GeneratorError> {
        match self {
            Self::Lfsr(l) => l.output_cycle(cap),
            Self::Fcsr(f) => f.output_cycle(cap),
        }
    }

    /// Output period without enumeration, where one can be certified.
    pub fn period_analytic(&self) -> Result<BigUint, GeneratorError> {
        match self {
            Self::Lfsr(l) => {
                if l.degree() <= 63 && l.feedback().is_primitive()? {
                    Ok(BigUint::from((1u64 << l.degree()) - 1))
                } else {
                    Err(GeneratorError::PeriodUndetermined)
                }
            }
            Self::Fcsr(f) => f.period(),
        }
    }
}

/// The clocked composition: at time t the control has advanced the cursor by
/// the partial step sum s_t = d_1 + ... + d_t, and the keystream bit is
/// c_t = b_{s_t} from the controlled register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClockedSpec {
    pub control: ControlSpec,
    pub controlled: ControlledSpec,
}

impl ClockedSpec {
    pub fn new(control: ControlSpec, controlled: ControlledSpec) -> Self {
        Self {
            control,
            controlled,
        }
    }

    /// Infinite keystream c_1, c_2, ... Streams at any scale: each output
    /// bit consumes d_t controlled bits and emits the last one.
    pub fn keystream(&self) -> impl Iterator<Item = u8> + 'static {
        let mut steps = self.control.steps();
        let mut bits = self.controlled.bits();
        std::iter::from_fn(move || {
            let d = steps.next()?;
            let mut out = 0;
            for _ in 0..d {
                out = bits.next()?;
            }
            Some(out)
        })
    }

    pub fn keystream_prefix(&self, len: usize) -> Vec<u8> {
        self.keystream().take(len).collect()
    }
}
