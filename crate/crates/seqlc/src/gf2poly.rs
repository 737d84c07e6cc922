//! Polynomials over GF(2), bit-packed 64 coefficients per word.
//!
//! Coefficient i lives at bit (i % 64) of word (i / 64). The text form used
//! everywhere (files, JSON, `Display`) is the lowest-degree-first bit string:
//! "11" is 1+x, "101" is 1+x^2. Parsing also accepts the sparse form "1+x^2".

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    GcdBothZero,
    #[error("operation requires a non-constant polynomial")]
    ConstantInput,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("primitivity test supports degree 1..={max}, got {got}")]
    DegreeTooLarge { got: usize, max: usize },
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

/// A polynomial over GF(2). The zero polynomial has degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    // Invariant: no trailing zero words; zero polynomial is the empty vec.
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    pub fn x() -> Self {
        Self { words: vec![2] }
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(k, true);
        p
    }

    /// Coefficients in ascending degree order; entries must be 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut p = Self::zero();
        for (i, &b) in bits.iter().enumerate() {
            debug_assert!(b <= 1);
            if b & 1 == 1 {
                p.set_coeff(i, true);
            }
        }
        p
    }

    pub fn from_support(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.set_coeff(e, !p.coeff(e));
        }
        p
    }

    fn normalize(&mut self) {
        while let Some(&w) = self.words.last() {
            if w == 0 {
                self.words.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let w = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - w.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i >> 6)
            .map_or(false, |w| (w >> (i & 63)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, bit: bool) {
        let wi = i >> 6;
        if bit {
            if self.words.len() <= wi {
                self.words.resize(wi + 1, 0);
            }
            self.words[wi] |= 1 << (i & 63);
        } else if wi < self.words.len() {
            self.words[wi] &= !(1 << (i & 63));
            self.normalize();
        }
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// self * x^k
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let (wshift, bshift) = (k >> 6, (k & 63) as u32);
        let mut words = vec![0u64; self.words.len() + wshift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + wshift] |= w << bshift;
            if bshift > 0 {
                words[i + wshift + 1] |= w >> (64 - bshift);
            }
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    fn xor_shifted_in_place(&mut self, other: &Self, k: usize) {
        let (wshift, bshift) = (k >> 6, (k & 63) as u32);
        let need = other.words.len() + wshift + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + wshift] ^= w << bshift;
            if bshift > 0 {
                self.words[i + wshift + 1] ^= w >> (64 - bshift);
            }
        }
        self.normalize();
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (i, &w) in short.words.iter().enumerate() {
            words[i] ^= w;
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = Self::zero();
        for (wi, &w) in a.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let j = w.trailing_zeros() as usize;
                acc.xor_shifted_in_place(b, (wi << 6) + j);
                w &= w - 1;
            }
        }
        acc
    }

    pub fn square(&self) -> Self {
        let mut sq = Self::zero();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let j = w.trailing_zeros() as usize;
                sq.set_coeff(((wi << 6) + j) * 2, true);
                w &= w - 1;
            }
        }
        sq
    }

    /// Square root of a polynomial that is a perfect square (all exponents even).
    fn sqrt(&self) -> Self {
        let mut r = Self::zero();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let j = w.trailing_zeros() as usize;
                let e = (wi << 6) + j;
                debug_assert!(e % 2 == 0, "sqrt of non-square");
                r.set_coeff(e / 2, true);
                w &= w - 1;
            }
        }
        r
    }

    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let ddeg = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(rdeg) = r.degree() {
            if rdeg < ddeg {
                break;
            }
            let s = rdeg - ddeg;
            r.xor_shifted_in_place(divisor, s);
            q.set_coeff(s, true);
        }
        Ok((q, r))
    }

    pub fn rem(&self, modulus: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(modulus)?.1)
    }

    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdBothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        Ok(a)
    }

    pub fn mulmod(&self, rhs: &Self, modulus: &Self) -> Result<Self, PolyError> {
        self.mul(rhs).rem(modulus)
    }

    pub fn powmod(&self, mut e: u64, modulus: &Self) -> Result<Self, PolyError> {
        if modulus.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one().rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Reciprocal polynomial x^deg * f(1/x); zero maps to zero.
    pub fn reverse(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => {
                let mut r = Self::zero();
                for i in 0..=d {
                    if self.coeff(i) {
                        r.set_coeff(d - i, true);
                    }
                }
                r
            }
        }
    }

    /// Formal derivative (characteristic 2: even-exponent terms vanish).
    pub fn derivative(&self) -> Self {
        let mut d = Self::zero();
        if let Some(deg) = self.degree() {
            for i in (1..=deg).step_by(2) {
                if self.coeff(i) {
                    d.set_coeff(i - 1, true);
                }
            }
        }
        d
    }

    /// Rabin's test: f of degree d is irreducible iff x^(2^d) = x (mod f) and
    /// gcd(x^(2^(d/r)) - x, f) = 1 for every prime r dividing d.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        let d = self.degree().ok_or(PolyError::ZeroInput)?;
        if d == 0 {
            return Err(PolyError::ConstantInput);
        }
        if d == 1 {
            return Ok(true);
        }
        let checkpoints: Vec<usize> = prime_divisors(d as u64)
            .into_iter()
            .map(|r| d / r as usize)
            .collect();
        let x = Self::x();
        let mut h = x.rem(self)?;
        for k in 1..=d {
            h = h.mulmod(&h, self)?;
            if checkpoints.contains(&k) {
                let g = h.add(&x).gcd(self)?;
                if !g.is_one() {
                    return Ok(false);
                }
            }
        }
        Ok(h == x.rem(self)?)
    }

    /// Irreducible with x of full multiplicative order 2^d - 1. Needs the
    /// factorization of 2^d - 1, so the degree is capped at 63.
    pub fn is_primitive(&self) -> Result<bool, PolyError> {
        let d = self.degree().ok_or(PolyError::ZeroInput)?;
        if d == 0 {
            return Err(PolyError::ConstantInput);
        }
        if d > 63 {
            return Err(PolyError::DegreeTooLarge { got: d, max: 63 });
        }
        if !self.is_irreducible()? || !self.constant_term() {
            return Ok(false);
        }
        let order = (1u64 << d) - 1;
        let x = Self::x();
        for p in prime_divisors(order) {
            if x.powmod(order / p, self)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiplicity of the irreducible p in self.
    pub fn multiplicity(&self, p: &Self) -> Result<u64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        if p.degree().ok_or(PolyError::ZeroInput)? == 0 {
            return Err(PolyError::ConstantInput);
        }
        let mut h = self.clone();
        let mut count = 0;
        loop {
            let (q, r) = h.divmod(p)?;
            if !r.is_zero() {
                return Ok(count);
            }
            count += 1;
            h = q;
        }
    }

    /// Complete factorization into irreducibles with multiplicities,
    /// canonically ordered. The unit polynomial factors as the empty product.
    pub fn factor(&self) -> Result<Vec<(Self, u64)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut out: Vec<(Self, u64)> = Vec::new();
        factor_into(self, 1, &mut out);
        merge_sort_factors(&mut out);
        Ok(out)
    }

    pub fn parse(s: &str) -> Result<Self, PolyError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        if t.contains('+') || t.contains('x') {
            return parse_sparse(t);
        }
        let mut p = Self::zero();
        for (i, ch) in t.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => p.set_coeff(i, true),
                c => {
                    return Err(PolyError::Parse(format!(
                        "unexpected character {c:?} at position {i}"
                    )))
                }
            }
        }
        Ok(p)
    }

    /// Human-oriented sparse form, highest degree first: "x^3 + x + 1".
    pub fn sparse_string(&self) -> String {
        let Some(d) = self.degree() else {
            return "0".into();
        };
        let mut terms = Vec::new();
        for i in (0..=d).rev() {
            if self.coeff(i) {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                });
            }
        }
        terms.join(" + ")
    }
}

fn parse_sparse(t: &str) -> Result<BinaryPolynomial, PolyError> {
    let mut p = BinaryPolynomial::zero();
    for term in t.split('+') {
        let term = term.trim();
        let e = if term == "1" {
            0
        } else if term == "x" {
            1
        } else if let Some(rest) = term.strip_prefix("x^") {
            rest.trim()
                .parse::<usize>()
                .map_err(|_| PolyError::Parse(format!("bad exponent in term {term:?}")))?
        } else {
            return Err(PolyError::Parse(format!("bad term {term:?}")));
        };
        p.set_coeff(e, !p.coeff(e));
    }
    Ok(p)
}

fn factor_into(f: &BinaryPolynomial, mult: u64, out: &mut Vec<(BinaryPolynomial, u64)>) {
    let d = f.degree().expect("nonzero");
    if d == 0 {
        return;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f is a perfect square in characteristic 2
        factor_into(&f.sqrt(), mult * 2, out);
        return;
    }
    let c = f.gcd(&fp).expect("nonzero");
    let w = f.divmod(&c).expect("nonzero").0;
    for p in factor_squarefree(&w) {
        out.push((p, mult));
    }
    if !c.is_one() {
        factor_into(&c, mult, out);
    }
}

fn merge_sort_factors(out: &mut Vec<(BinaryPolynomial, u64)>) {
    out.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BinaryPolynomial, u64)> = Vec::with_capacity(out.len());
    for (p, m) in out.drain(..) {
        match merged.last_mut() {
            Some(last) if last.0 == p => last.1 += m,
            _ => merged.push((p, m)),
        }
    }
    *out = merged;
}

/// Distinct-degree then equal-degree splitting of a squarefree polynomial.
fn factor_squarefree(w: &BinaryPolynomial) -> Vec<BinaryPolynomial> {
    let mut res = Vec::new();
    let mut w = w.clone();
    let x = BinaryPolynomial::x();
    let mut h = x.rem(&w).expect("nonzero");
    let mut d = 0usize;
    while let Some(wd) = w.degree() {
        if wd == 0 {
            break;
        }
        d += 1;
        if 2 * d > wd {
            // whatever remains is a single irreducible
            res.push(w.clone());
            return res;
        }
        h = h.mulmod(&h, &w).expect("nonzero");
        let g = h.add(&x).gcd(&w).expect("nonzero");
        if g.degree() != Some(0) {
            split_equal_degree(&g, d, &mut res);
            w = w.divmod(&g).expect("nonzero").0;
            h = h.rem(&w).expect("nonzero");
        }
    }
    res
}

/// Split a product of distinct irreducibles of equal degree d.
///
/// Deterministic: for u = x^j, the trace polynomial u + u^2 + ... + u^(2^(d-1))
/// takes a constant value in each residue field, and any two distinct
/// irreducibles of degree d are separated by some j <= 2d.
fn split_equal_degree(g: &BinaryPolynomial, d: usize, out: &mut Vec<BinaryPolynomial>) {
    let gdeg = g.degree().expect("nonzero");
    if gdeg == d {
        out.push(g.clone());
        return;
    }
    for j in 1..=(2 * d + 2) as u64 {
        let u = BinaryPolynomial::x().powmod(j, g).expect("nonzero");
        let mut t = u.clone();
        let mut sq = u;
        for _ in 1..d {
            sq = sq.mulmod(&sq, g).expect("nonzero");
            t = t.add(&sq);
        }
        for cand in [t.gcd(g).expect("nonzero"), t.add(&BinaryPolynomial::one()).gcd(g).expect("nonzero")] {
            let cd = cand.degree().unwrap_or(0);
            if cd > 0 && cd < gdeg {
                split_equal_degree(&cand, d, out);
                let rest = g.divmod(&cand).expect("nonzero").0;
                split_equal_degree(&rest, d, out);
                return;
            }
        }
    }
    if gdeg <= 20 {
        // exhaustive fallback, reachable only if the trace family failed
        for (p, m) in trial_division_factor(g) {
            for _ in 0..m {
                out.push(p.clone());
            }
        }
        return;
    }
    unreachable!("equal-degree splitting failed for degree-{gdeg} input");
}

/// Brute-force factorization by dividing out the smallest divisor, in
/// canonical order. Only sensible for small degrees; used as an oracle.
pub(crate) fn trial_division_factor(f: &BinaryPolynomial) -> Vec<(BinaryPolynomial, u64)> {
    let mut out: Vec<(BinaryPolynomial, u64)> = Vec::new();
    let mut f = f.clone();
    'outer: while f.degree().map_or(false, |d| d > 0) {
        let fd = f.degree().unwrap();
        for bits in 2u64..(1u64 << (fd / 2 + 1)) {
            let cand = poly_from_int(bits);
            if cand.degree() == Some(0) {
                continue;
            }
            let (q, r) = f.divmod(&cand).expect("nonzero");
            if r.is_zero() {
                bump(&mut out, cand);
                f = q;
                continue 'outer;
            }
        }
        bump(&mut out, f.clone());
        break;
    }
    merge_sort_factors(&mut out);
    out
}

fn bump(out: &mut Vec<(BinaryPolynomial, u64)>, p: BinaryPolynomial) {
    out.push((p, 1));
}

fn poly_from_int(bits: u64) -> BinaryPolynomial {
    let mut p = BinaryPolynomial { words: vec![bits] };
    p.normalize();
    p
}

fn prime_divisors(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize(n).into_keys().collect()
}

/// Factorization of x^n + 1 over GF(2): with n = 2^sigma * n' (n' odd),
/// x^n + 1 = prod p_t^(2^sigma) over the distinct irreducible p_t | x^n' + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub n: u64,
    pub sigma: u32,
    pub factors: Vec<FactorPower>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPower {
    pub poly: BinaryPolynomial,
    pub multiplicity: u64,
}

impl FactorList {
    pub fn product(&self) -> BinaryPolynomial {
        let mut acc = BinaryPolynomial::one();
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = acc.mul(&f.poly);
            }
        }
        acc
    }
}

pub fn factor_xn_plus_1(n: u64) -> Result<FactorList, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroInput);
    }
    let sigma = n.trailing_zeros();
    let n_odd = (n >> sigma) as usize;
    let f = BinaryPolynomial::monomial(n_odd).add(&BinaryPolynomial::one());
    let mut parts = factor_squarefree(&f);
    parts.sort();
    let multiplicity = 1u64 << sigma;
    Ok(FactorList {
        n,
        sigma,
        factors: parts
            .into_iter()
            .map(|poly| FactorPower { poly, multiplicity })
            .collect(),
    })
}

impl PartialOrd for BinaryPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BinaryPolynomial {
    /// Canonical order: by degree, then by coefficient bits read as an integer.
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            None => f.write_str("0"),
            Some(d) => {
                let mut s = String::with_capacity(d + 1);
                for i in 0..=d {
                    s.push(if self.coeff(i) { '1' } else { '0' });
                }
                f.write_str(&s)
            }
        }
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly({})", self.sparse_string())
    }
}

impl FromStr for BinaryPolynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for BinaryPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl std::ops::Add<&BinaryPolynomial> for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        BinaryPolynomial::add(self, rhs)
    }
}

impl std::ops::Mul<&BinaryPolynomial> for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: &BinaryPolynomial) -> BinaryPolynomial {
        BinaryPolynomial::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    #[test]
    fn text_format_round_trips() {
        assert_eq!(p("11").sparse_string(), "x + 1");
        assert_eq!(p("101").sparse_string(), "x^2 + 1");
        assert_eq!(p("1+x^2"), p("101"));
        assert_eq!(p("x^3 + x + 1"), p("1101"));
        assert_eq!(p("x"), p("01"));
        assert_eq!(BinaryPolynomial::zero().to_string(), "0");
        assert_eq!(p("0"), BinaryPolynomial::zero());
        assert_eq!(p("1101").to_string(), "1101");
        assert!(BinaryPolynomial::parse("12").is_err());
        assert!(BinaryPolynomial::parse("x^").is_err());
        assert!(BinaryPolynomial::parse("").is_err());
    }

    #[test]
    fn degree_and_weight() {
        assert_eq!(BinaryPolynomial::zero().degree(), None);
        assert_eq!(p("1").degree(), Some(0));
        assert_eq!(p("1101").degree(), Some(3));
        assert_eq!(p("1101").weight(), 3);
        assert_eq!(BinaryPolynomial::monomial(100).degree(), Some(100));
    }

    #[test]
    fn divmod_example() {
        // (x^5 + x^3 + 1) / (x^2 + 1) = x^3 remainder 1
        let (q, r) = p("100101").divmod(&p("101")).unwrap();
        assert_eq!(q, p("0001"));
        assert_eq!(r, p("1"));
        assert_eq!(
            p("1").divmod(&BinaryPolynomial::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^4 + 1, x^6 + 1) = x^2 + 1
        let g = p("10001").gcd(&p("1000001")).unwrap();
        assert_eq!(g, p("101"));
        assert_eq!(p("11").gcd(&BinaryPolynomial::zero()).unwrap(), p("11"));
        assert_eq!(
            BinaryPolynomial::zero().gcd(&BinaryPolynomial::zero()),
            Err(PolyError::GcdBothZero)
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p("111").is_irreducible().unwrap()); // x^2+x+1
        assert!(!p("101").is_irreducible().unwrap()); // (x+1)^2
        assert!(p("11111").is_irreducible().unwrap()); // x^4+x^3+x^2+x+1
        assert!(p("11").is_irreducible().unwrap());
        assert!(p("01").is_irreducible().unwrap()); // x
        assert_eq!(p("1").is_irreducible(), Err(PolyError::ConstantInput));
        assert_eq!(
            BinaryPolynomial::zero().is_irreducible(),
            Err(PolyError::ZeroInput)
        );
    }

    #[test]
    fn primitivity() {
        assert!(p("1101").is_primitive().unwrap()); // x^3+x+1
        assert!(p("1011").is_primitive().unwrap()); // x^3+x^2+1
        // irreducible but x has order 5, not 15
        assert!(!p("11111").is_primitive().unwrap());
        assert!(p("11001").is_primitive().unwrap()); // x^4+x^3+1
        assert!(!p("01").is_primitive().unwrap()); // x: zero constant term
        assert!(p("11").is_primitive().unwrap());
    }

    #[test]
    fn primitive_trinomial_degree_39() {
        let f = p("x^39 + x^4 + 1");
        assert!(f.is_primitive().unwrap());
    }

    #[test]
    fn multiplicity_example() {
        let h = p("11").mul(&p("11")).mul(&p("11")).mul(&p("111"));
        assert_eq!(h.multiplicity(&p("11")).unwrap(), 3);
        assert_eq!(h.multiplicity(&p("111")).unwrap(), 1);
        assert_eq!(h.multiplicity(&p("1101")).unwrap(), 0);
        assert_eq!(h.multiplicity(&p("1")), Err(PolyError::ConstantInput));
    }

    #[test]
    fn factor_xn_examples() {
        // n = 10: sigma 1, (x+1)^2 (x^4+x^3+x^2+x+1)^2
        let fl = factor_xn_plus_1(10).unwrap();
        assert_eq!(fl.sigma, 1);
        assert_eq!(fl.factors.len(), 2);
        assert_eq!(fl.factors[0].poly, p("11"));
        assert_eq!(fl.factors[0].multiplicity, 2);
        assert_eq!(fl.factors[1].poly, p("11111"));
        assert_eq!(fl.factors[1].multiplicity, 2);

        let fl = factor_xn_plus_1(1).unwrap();
        assert_eq!(fl.sigma, 0);
        assert_eq!(fl.factors.len(), 1);
        assert_eq!(fl.factors[0].poly, p("11"));
        assert_eq!(fl.factors[0].multiplicity, 1);

        // n = 8: (x+1)^8
        let fl = factor_xn_plus_1(8).unwrap();
        assert_eq!(fl.sigma, 3);
        assert_eq!(fl.factors.len(), 1);
        assert_eq!(fl.factors[0].multiplicity, 8);

        assert!(factor_xn_plus_1(0).is_err());
    }

    #[test]
    fn factor_xn_full_range() {
        for n in 1u64..=512 {
            let fl = factor_xn_plus_1(n).unwrap();
            assert_eq!(fl.sigma, n.trailing_zeros(), "n={n}");
            let expect = BinaryPolynomial::monomial(n as usize).add(&BinaryPolynomial::one());
            assert_eq!(fl.product(), expect, "product mismatch at n={n}");
            let mut prev: Option<&BinaryPolynomial> = None;
            for f in &fl.factors {
                assert_eq!(f.multiplicity, 1 << fl.sigma, "n={n}");
                assert!(f.poly.is_irreducible().unwrap(), "n={n} f={}", f.poly);
                if let Some(pr) = prev {
                    assert!(pr < &f.poly, "ordering violated at n={n}");
                }
                prev = Some(&f.poly);
            }
        }
    }

    #[test]
    fn factor_matches_trial_division() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(0xfac70);
        for _ in 0..200 {
            let bits: u64 = rng.gen_range(2..(1 << 16));
            let f = poly_from_int(bits);
            let got = f.factor().unwrap();
            let want = trial_division_factor(&f);
            assert_eq!(got, want, "f={f}");
        }
    }

    #[test]
    fn factor_reconstructs_and_unit_is_empty() {
        assert_eq!(p("1").factor().unwrap(), vec![]);
        assert!(BinaryPolynomial::zero().factor().is_err());
        let f = p("11").mul(&p("11")).mul(&p("1101")).mul(&p("01"));
        let fs = f.factor().unwrap();
        let mut acc = BinaryPolynomial::one();
        for (q, m) in &fs {
            assert!(q.is_irreducible().unwrap());
            for _ in 0..*m {
                acc = acc.mul(q);
            }
        }
        assert_eq!(acc, f);
    }

    #[test]
    fn canonical_ordering() {
        let mut v = vec![p("111"), p("11"), p("1101"), p("1011"), p("01")];
        v.sort();
        assert_eq!(v, vec![p("01"), p("11"), p("111"), p("1101"), p("1011")]);
    }

    #[test]
    fn reverse_and_derivative() {
        assert_eq!(p("1101").reverse(), p("1011"));
        assert_eq!(p("01").reverse(), p("1"));
        assert_eq!(BinaryPolynomial::zero().reverse(), BinaryPolynomial::zero());
        // d/dx (x^3 + x^2 + 1) = x^2
        assert_eq!(p("1011").derivative(), p("001"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn divmod_round_trip(a in 0u64..u64::MAX, b in 1u64..u64::MAX) {
            let f = poly_from_int(a);
            let g = poly_from_int(b);
            let (q, r) = f.divmod(&g).unwrap();
            prop_assert!(r.degree().map_or(true, |rd| rd < g.degree().unwrap()));
            prop_assert_eq!(q.mul(&g).add(&r), f);
        }

        #[test]
        fn gcd_divides_both(a in 1u64..u64::MAX, b in 1u64..u64::MAX) {
            let f = poly_from_int(a);
            let g = poly_from_int(b);
            let d = f.gcd(&g).unwrap();
            prop_assert!(f.rem(&d).unwrap().is_zero());
            prop_assert!(g.rem(&d).unwrap().is_zero());
            prop_assert_eq!(f.gcd(&g).unwrap(), g.gcd(&f).unwrap());
        }

        #[test]
        fn square_matches_mul(a in 0u64..u64::MAX) {
            let f = poly_from_int(a);
            prop_assert_eq!(f.square(), f.mul(&f));
        }

        #[test]
        fn mul_distributes(a in 0u64..u64::MAX, b in 0u64..u64::MAX, c in 0u64..u64::MAX) {
            let (f, g, h) = (poly_from_int(a), poly_from_int(b), poly_from_int(c));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }

        #[test]
        fn powmod_matches_naive(a in 0u64..1024, e in 0u64..64, m in 2u64..4096) {
            let f = poly_from_int(a);
            let md = poly_from_int(m);
            let mut naive = BinaryPolynomial::one().rem(&md).unwrap();
            for _ in 0..e {
                naive = naive.mulmod(&f, &md).unwrap();
            }
            prop_assert_eq!(f.powmod(e, &md).unwrap(), naive);
        }

        #[test]
        fn reverse_involutive_for_unit_constant(a in 0u64..u64::MAX) {
            let f = poly_from_int(a | 1);
            prop_assert_eq!(f.reverse().reverse(), f);
        }

        #[test]
        fn multiplicity_totals_degree(n in 1u64..128) {
            let fl = factor_xn_plus_1(n).unwrap();
            let f = BinaryPolynomial::monomial(n as usize).add(&BinaryPolynomial::one());
            let total: u64 = fl.factors.iter()
                .map(|fp| f.multiplicity(&fp.poly).unwrap() * fp.poly.degree().unwrap() as u64)
                .sum();
            prop_assert_eq!(total, n);
        }
    }
}
