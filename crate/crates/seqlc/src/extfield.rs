//! Extension fields F2[x]/(p) for irreducible p, and polynomials in y with
//! coefficients in such a field.
//!
//! A context pins the modulus; elements from different contexts never mix.
//! The degenerate degree-1 context (modulus x+1, the field F2 itself) runs
//! through the same code paths as every other degree.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf2poly::{BinaryPolynomial, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("context modulus must be irreducible")]
    ReducibleModulus,
    #[error("context modulus must have degree >= 1 and constant term 1")]
    InvalidModulus,
    #[error("elements belong to different field contexts")]
    ContextMismatch,
    #[error("zero element has no inverse")]
    ZeroInverse,
    #[error("zero element raised to a negative power")]
    ZeroToNegativePower,
    #[error("gcd of two zero polynomials")]
    GcdBothZero,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

struct Ctx {
    modulus: BinaryPolynomial,
    degree: usize,
}

/// The field F2[x]/(modulus). Cheap to clone and share across threads.
#[derive(Clone)]
pub struct ExtensionFieldContext {
    inner: Arc<Ctx>,
}

impl ExtensionFieldContext {
    /// The modulus must be irreducible with constant term 1, which keeps the
    /// class of x invertible. This rejects the irreducible p = x.
    pub fn new(modulus: BinaryPolynomial) -> Result<Self, FieldError> {
        let degree = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(FieldError::InvalidModulus),
        };
        if !modulus.constant_term() {
            return Err(FieldError::InvalidModulus);
        }
        if !modulus.is_irreducible()? {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(Self {
            inner: Arc::new(Ctx { modulus, degree }),
        })
    }

    pub fn modulus(&self) -> &BinaryPolynomial {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }

    pub fn zero(&self) -> ExtensionElement {
        ExtensionElement {
            repr: BinaryPolynomial::zero(),
            ctx: self.clone(),
        }
    }

    pub fn one(&self) -> ExtensionElement {
        ExtensionElement {
            repr: BinaryPolynomial::one(),
            ctx: self.clone(),
        }
    }

    /// The class of x, written alpha.
    pub fn alpha(&self) -> ExtensionElement {
        self.element(BinaryPolynomial::x())
    }

    /// Reduce an arbitrary polynomial into the field.
    pub fn element(&self, p: BinaryPolynomial) -> ExtensionElement {
        let repr = p.rem(&self.inner.modulus).expect("nonzero modulus");
        ExtensionElement {
            repr,
            ctx: self.clone(),
        }
    }

    fn raw_mul(&self, a: &BinaryPolynomial, b: &BinaryPolynomial) -> BinaryPolynomial {
        a.mulmod(b, &self.inner.modulus).expect("nonzero modulus")
    }

    fn raw_inv(&self, a: &BinaryPolynomial) -> Result<BinaryPolynomial, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.inner.modulus.clone(), a.clone());
        let (mut t0, mut t1) = (BinaryPolynomial::zero(), BinaryPolynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            (r0, r1) = (r1, r);
            let t2 = t0.add(&q.mul(&t1));
            (t0, t1) = (t1, t2);
        }
        debug_assert!(r0.is_one(), "modulus not irreducible?");
        Ok(t0.rem(&self.inner.modulus).expect("nonzero modulus"))
    }
}

impl fmt::Debug for ExtensionFieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[x]/({})", self.inner.modulus.sparse_string())
    }
}

/// An element of an extension field, stored as its reduced representative.
#[derive(Clone)]
pub struct ExtensionElement {
    repr: BinaryPolynomial,
    ctx: ExtensionFieldContext,
}

impl ExtensionElement {
    pub fn repr(&self) -> &BinaryPolynomial {
        &self.repr
    }

    pub fn context(&self) -> &ExtensionFieldContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr.is_one()
    }

    fn check_ctx(&self, other: &Self) -> Result<(), FieldError> {
        if self.ctx.same_field(&other.ctx) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_ctx(other)?;
        Ok(Self {
            repr: self.repr.add(&other.repr),
            ctx: self.ctx.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_ctx(other)?;
        Ok(Self {
            repr: self.ctx.raw_mul(&self.repr, &other.repr),
            ctx: self.ctx.clone(),
        })
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(Self {
            repr: self.ctx.raw_inv(&self.repr)?,
            ctx: self.ctx.clone(),
        })
    }

    /// Square-and-multiply; negative exponents route through the inverse.
    /// Callers with huge exponents reduce them modulo the element's order
    /// first (for a power of alpha in a factor of x^n + 1, modulo n).
    pub fn pow(&self, e: i128) -> Result<Self, FieldError> {
        if e < 0 {
            if self.is_zero() {
                return Err(FieldError::ZeroToNegativePower);
            }
            return self.inv()?.pow(-e);
        }
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = e as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl PartialEq for ExtensionElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.repr == other.repr
    }
}

impl Eq for ExtensionElement {}

impl fmt::Debug for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.repr)
    }
}

/// A polynomial in y over an extension field, canonical (no leading zeros).
#[derive(Clone)]
pub struct ExtensionPolynomial {
    ctx: ExtensionFieldContext,
    coeffs: Vec<BinaryPolynomial>,
}

impl ExtensionPolynomial {
    pub fn zero(ctx: &ExtensionFieldContext) -> Self {
        Self {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_elements(
        ctx: &ExtensionFieldContext,
        coeffs: Vec<ExtensionElement>,
    ) -> Result<Self, FieldError> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if !c.ctx.same_field(ctx) {
                return Err(FieldError::ContextMismatch);
            }
            raw.push(c.repr);
        }
        let mut p = Self {
            ctx: ctx.clone(),
            coeffs: raw,
        };
        p.normalize();
        Ok(p)
    }

    /// y^m + c
    pub fn monic_binomial(ctx: &ExtensionFieldContext, m: usize, c: &ExtensionElement) -> Result<Self, FieldError> {
        if !c.ctx.same_field(ctx) {
            return Err(FieldError::ContextMismatch);
        }
        let mut coeffs = vec![BinaryPolynomial::zero(); m + 1];
        coeffs[0] = c.repr.clone();
        coeffs[m] = BinaryPolynomial::one();
        Ok(Self {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn context(&self) -> &ExtensionFieldContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> ExtensionElement {
        ExtensionElement {
            repr: self.coeffs.get(i).cloned().unwrap_or_default(),
            ctx: self.ctx.clone(),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), FieldError> {
        if self.ctx.same_field(&other.ctx) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = other.coeffs.get(i).cloned().unwrap_or_default();
            coeffs.push(a.add(&b));
        }
        let mut p = Self {
            ctx: self.ctx.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut coeffs =
            vec![BinaryPolynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = self.ctx.raw_mul(a, b);
                coeffs[i + j] = coeffs[i + j].add(&prod);
            }
        }
        let mut p = Self {
            ctx: self.ctx.clone(),
            coeffs,
        };
        p.normalize();
        Ok(p)
    }

    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        self.check_ctx(divisor)?;
        let ddeg = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = self.ctx.raw_inv(&divisor.coeffs[ddeg])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BinaryPolynomial::zero(); self.coeffs.len().saturating_sub(ddeg)];
        let mut top = rem.len();
        while top > ddeg {
            let k = top - 1;
            if !rem[k].is_zero() {
                let factor = self.ctx.raw_mul(&rem[k], &lead_inv);
                let s = k - ddeg;
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    if !dc.is_zero() {
                        let sub = self.ctx.raw_mul(&factor, dc);
                        rem[s + i] = rem[s + i].add(&sub);
                    }
                }
                quot[s] = factor;
                debug_assert!(rem[k].is_zero());
            }
            top -= 1;
        }
        let mut q = Self {
            ctx: self.ctx.clone(),
            coeffs: quot,
        };
        q.normalize();
        let mut r = Self {
            ctx: self.ctx.clone(),
            coeffs: rem,
        };
        r.coeffs.truncate(ddeg);
        r.normalize();
        Ok((q, r))
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self, FieldError> {
        let Some(d) = self.degree() else {
            return Ok(self.clone());
        };
        if self.coeffs[d].is_one() {
            return Ok(self.clone());
        }
        let inv = self.ctx.raw_inv(&self.coeffs[d])?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.ctx.raw_mul(c, &inv))
            .collect();
        Ok(Self {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }
}

impl PartialEq for ExtensionPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for ExtensionPolynomial {}

impl fmt::Debug for ExtensionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("[{c}]"),
                1 => format!("[{c}]y"),
                _ => format!("[{c}]y^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Monic gcd over the coefficient field. gcd(0, f) is monic(f); two zero
/// inputs are rejected.
pub fn extpoly_gcd(
    a: &ExtensionPolynomial,
    b: &ExtensionPolynomial,
) -> Result<ExtensionPolynomial, FieldError> {
    a.check_ctx(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(FieldError::GcdBothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.divmod(&r1)?;
        r0 = r1;
        r1 = r;
    }
    r0.monic()
}
