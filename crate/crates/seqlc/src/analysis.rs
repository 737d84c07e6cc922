//! Linear-complexity analysis of binary sequences.
//!
//! Two conventions meet here and the distinction matters. For a sequence
//! with recurrence b_t = sum_{i=1..L} c_i b_{t-i}, the connection polynomial
//! is C(x) = 1 + c_1 x + ... + c_L x^L, and the characteristic polynomial is
//! its reversal x^L C(1/x), monic of degree exactly L. Results report the
//! characteristic form; [`connection_polynomial_of_cycle`] reports the
//! connection form, whose roots' multiplicities drive the spectral
//! decomposition downstream.

use thiserror::Error;

use crate::gf2linalg::circulant;
use crate::gf2poly::{BinaryPolynomial, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("input sequence is empty")]
    EmptyInput,
    #[error("sequence entries must be 0 or 1")]
    InvalidBit,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Outcome of a linear-complexity measurement on a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearComplexityResult {
    /// Shortest LFSR length reproducing every consumed bit.
    pub complexity: usize,
    /// Characteristic polynomial, monic of degree `complexity`.
    pub min_poly: BinaryPolynomial,
    /// Number of input bits the measurement is valid for.
    pub consumed: usize,
}

/// Berlekamp-Massey over GF(2).
///
/// The result describes the given prefix only. Fed at least two full periods
/// of a periodic sequence, it recovers the exact complexity and minimal
/// characteristic polynomial.
pub fn berlekamp_massey(bits: &[u8]) -> Result<LinearComplexityResult, AnalysisError> {
    if bits.iter().any(|&b| b > 1) {
        return Err(AnalysisError::InvalidBit);
    }
    let n = bits.len();
    let wn = n / 64 + 1;
    // connection registers, bit i = coefficient of x^i; deg <= l holds throughout
    let mut c = vec![0u64; wn];
    let mut b = vec![0u64; wn];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    // window register, bit i = bits[t - i]
    let mut rw = vec![0u64; wn];
    for (t, &bit) in bits.iter().enumerate() {
        let mut carry = bit as u64;
        for w in rw.iter_mut().take(t / 64 + 1) {
            let next = *w >> 63;
            *w = (*w << 1) | carry;
            carry = next;
        }
        let mut acc = 0u64;
        for w in 0..(l / 64 + 1) {
            acc ^= c[w] & rw[w];
        }
        if acc.count_ones() & 1 == 1 {
            if 2 * l <= t {
                let prev = c.clone();
                xor_shifted_words(&mut c, &b, shift);
                b = prev;
                l = t + 1 - l;
                shift = 1;
            } else {
                xor_shifted_words(&mut c, &b, shift);
                shift += 1;
            }
        } else {
            shift += 1;
        }
    }
    let support: Vec<usize> = (0..=l).filter(|&i| (c[i / 64] >> (i % 64)) & 1 == 1).collect();
    let connection = BinaryPolynomial::from_support(&support);
    Ok(LinearComplexityResult {
        complexity: l,
        min_poly: characteristic_from_connection(&connection, l),
        consumed: n,
    })
}

fn xor_shifted_words(dst: &mut [u64], src: &[u64], shift: usize) {
    let (wsh, bsh) = (shift / 64, shift % 64);
    if bsh == 0 {
        for i in (0..dst.len().saturating_sub(wsh)).rev() {
            dst[i + wsh] ^= src[i];
        }
    } else {
        for i in (0..dst.len().saturating_sub(wsh)).rev() {
            dst[i + wsh] ^= src[i] << bsh;
            if i + wsh + 1 < dst.len() {
                dst[i + wsh + 1] ^= src[i] >> (64 - bsh);
            }
        }
    }
}

/// x^l * C(1/x) for a connection polynomial of a length-l recurrence.
fn characteristic_from_connection(connection: &BinaryPolynomial, l: usize) -> BinaryPolynomial {
    let support: Vec<usize> = (0..=l).filter(|&i| connection.coeff(i)).map(|i| l - i).collect();
    BinaryPolynomial::from_support(&support)
}

/// Connection polynomial of the periodic sequence whose single full period
/// is `cycle`: H(x) = (x^n + 1) / gcd(sum_i cycle[i] x^i, x^n + 1). Its
/// degree is the linear complexity, its constant term is 1, and it divides
/// x^n + 1.
pub fn connection_polynomial_of_cycle(cycle: &[u8]) -> Result<BinaryPolynomial, AnalysisError> {
    if cycle.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    if cycle.iter().any(|&b| b > 1) {
        return Err(AnalysisError::InvalidBit);
    }
    let n = cycle.len();
    let support: Vec<usize> = (0..n).filter(|&i| cycle[i] == 1).collect();
    let fbar = BinaryPolynomial::from_support(&support);
    let xn1 = BinaryPolynomial::monomial(n).add(&BinaryPolynomial::one());
    if fbar.is_zero() {
        return Ok(BinaryPolynomial::one());
    }
    let g = fbar.gcd(&xn1)?;
    let (h, r) = xn1.divmod(&g)?;
    debug_assert!(r.is_zero());
    Ok(h)
}

/// Exact linear complexity of the periodic sequence with period `cycle`.
pub fn lc_of_cycle(cycle: &[u8]) -> Result<usize, AnalysisError> {
    Ok(connection_polynomial_of_cycle(cycle)?.degree().unwrap_or(0))
}

/// Exact complexity and minimal characteristic polynomial of the periodic
/// sequence with period `cycle`, without running the recurrence solver.
pub fn lc_result_of_cycle(cycle: &[u8]) -> Result<LinearComplexityResult, AnalysisError> {
    let h = connection_polynomial_of_cycle(cycle)?;
    let l = h.degree().unwrap_or(0);
    Ok(LinearComplexityResult {
        complexity: l,
        min_poly: characteristic_from_connection(&h, l),
        consumed: cycle.len(),
    })
}

/// Linear complexity as the rank of the 1-circulant of the period, by dense
/// elimination. Independent of the polynomial routes; quadratic space, so
/// meant for cross-checking at moderate period lengths.
pub fn lc_via_circulant_rank(cycle: &[u8]) -> Result<usize, AnalysisError> {
    if cycle.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    if cycle.iter().any(|&b| b > 1) {
        return Err(AnalysisError::InvalidBit);
    }
    Ok(circulant(cycle, 1).expect("nonempty").rank())
}

/// The decimation c_{start}, c_{start+step}, ... (1-based) of the periodic
/// sequence with period `cycle`, taking `count` terms.
pub fn decimate_cycle(cycle: &[u8], start: usize, step: usize, count: usize) -> Vec<u8> {
    assert!(!cycle.is_empty() && start >= 1);
    let n = cycle.len();
    (0..count)
        .map(|i| cycle[(start - 1 + i * step) % n])
        .collect()
}
