//! Dense GF(2) linear algebra, bit-packed 64 columns per word, plus rank
//! computations over extension fields.
//!
//! Rank never mutates its input; elimination always runs on a private copy.

use thiserror::Error;

use crate::extfield::{ExtensionElement, ExtensionFieldContext, ExtensionPolynomial, FieldError, extpoly_gcd};
use crate::gf2poly::{BinaryPolynomial, PolyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("sequence must be nonempty")]
    EmptySequence,
    #[error("companion matrix requires degree >= 1")]
    ConstantPolynomial,
    #[error("r-circulant scalar must be nonzero")]
    ZeroScalar,
    #[error("matrix is not square or rows have unequal lengths")]
    ShapeMismatch,
    #[error("exponent must be >= 1")]
    ZeroExponent,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A rows x cols matrix over GF(2), one row packed into `wpr` words.
///
/// Trailing bits past `cols` in the last word of each row stay zero; every
/// mutation preserves that, so equality is plain data equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(64);
        Self {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.wpr + (c >> 6)] >> (c & 63)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = r * self.wpr + (c >> 6);
        if bit {
            self.data[w] |= 1 << (c & 63);
        } else {
            self.data[w] &= !(1 << (c & 63));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for r in 0..self.rows {
            let base = r * self.wpr;
            for w in 0..self.wpr {
                let mut word = self.data[base + w];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    t.set((w << 6) + b, r, true);
                    word &= word - 1;
                }
            }
        }
        t
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::new(self.rows, rhs.cols);
        for r in 0..self.rows {
            let base = r * self.wpr;
            let obase = r * out.wpr;
            for w in 0..self.wpr {
                let mut word = self.data[base + w];
                while word != 0 {
                    let k = (w << 6) + word.trailing_zeros() as usize;
                    let rbase = k * rhs.wpr;
                    for j in 0..rhs.wpr {
                        out.data[obase + j] ^= rhs.data[rbase + j];
                    }
                    word &= word - 1;
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a private copy.
    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        let wpr = self.wpr;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (w, b) = (col >> 6, col & 63);
            let Some(pivot) = (rank..self.rows).find(|&r| (data[r * wpr + w] >> b) & 1 == 1)
            else {
                continue;
            };
            if pivot != rank {
                for j in w..wpr {
                    data.swap(pivot * wpr + j, rank * wpr + j);
                }
            }
            for r in (rank + 1)..self.rows {
                if (data[r * wpr + w] >> b) & 1 == 1 {
                    for j in w..wpr {
                        data[r * wpr + j] ^= data[rank * wpr + j];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            for c in 0..self.cols.min(64) {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The r-circulant of a sequence: row 1 is the sequence, each later row is the
/// previous one rotated right with the wrapped entry scaled by r.
pub fn circulant(seq: &[u8], r: u8) -> Result<BitMatrix, LinalgError> {
    if seq.is_empty() {
        return Err(LinalgError::EmptySequence);
    }
    let n = seq.len();
    let mut m = BitMatrix::new(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if j >= i {
                seq[j - i]
            } else {
                r & seq[n - i + j]
            };
            if v & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Companion matrix of a monic polynomial g of degree L >= 1: ones on the
/// superdiagonal, the coefficients of g along the bottom row, so that g is
/// both its characteristic and minimal polynomial.
pub fn companion(g: &BinaryPolynomial) -> Result<BitMatrix, LinalgError> {
    let l = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(LinalgError::ConstantPolynomial),
    };
    let mut m = BitMatrix::new(l, l);
    for i in 0..l - 1 {
        m.set(i, i + 1, true);
    }
    for j in 0..l {
        if g.coeff(j) {
            m.set(l - 1, j, true);
        }
    }
    Ok(m)
}

/// Evaluate f at a square matrix.
pub fn poly_at_matrix(f: &BinaryPolynomial, m: &BitMatrix) -> BitMatrix {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut acc = BitMatrix::new(n, n);
    let Some(d) = f.degree() else {
        return acc;
    };
    let mut power = BitMatrix::identity(n);
    for i in 0..=d {
        if f.coeff(i) {
            acc = acc.add(&power);
        }
        if i < d {
            power = power.mul(m);
        }
    }
    acc
}

/// rank(f(C_g)) for the companion matrix of g, without building the matrix:
/// multiplication by f on F2[x]/(g) has image of dimension
/// deg(g) - deg(gcd(f mod g, g)).
pub fn rank_of_poly_at_companion(f: &BinaryPolynomial, g: &BinaryPolynomial) -> usize {
    let d = g.degree().expect("g must be non-constant");
    assert!(d >= 1, "g must be non-constant");
    let fr = f.rem(g).expect("nonzero g");
    if fr.is_zero() {
        return 0;
    }
    d - fr.gcd(g).expect("nonzero").degree().unwrap_or(0)
}

/// Rank of the r-circulant over an extension field whose first row is the
/// coefficient list of w, via rank = m - deg(gcd(w(y), y^m - r)).
pub fn r_circulant_rank_ext(
    w: &ExtensionPolynomial,
    m: usize,
    r: &ExtensionElement,
) -> Result<usize, LinalgError> {
    if r.is_zero() {
        return Err(LinalgError::ZeroScalar);
    }
    assert!(
        w.degree().map_or(true, |d| d < m),
        "symbol degree must be below the matrix order"
    );
    let j = ExtensionPolynomial::monic_binomial(w.context(), m, r)?;
    let g = extpoly_gcd(w, &j)?;
    Ok(m - g.degree().unwrap_or(0))
}

/// Explicit r-circulant over an extension field, for cross-checking the gcd
/// formula against elimination and the GF(2) block expansion.
pub fn build_r_circulant_ext(
    first_row: &[ExtensionElement],
    r: &ExtensionElement,
) -> Result<Vec<Vec<ExtensionElement>>, LinalgError> {
    if first_row.is_empty() {
        return Err(LinalgError::EmptySequence);
    }
    let n = first_row.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            if j >= i {
                row.push(first_row[j - i].clone());
            } else {
                row.push(r.mul(&first_row[n - i + j])?);
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Rank over the coefficient field by Gaussian elimination.
pub fn ext_matrix_rank(mat: &[Vec<ExtensionElement>]) -> Result<usize, LinalgError> {
    let rows = mat.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = mat[0].len();
    if mat.iter().any(|r| r.len() != cols) {
        return Err(LinalgError::ShapeMismatch);
    }
    let mut work: Vec<Vec<ExtensionElement>> = mat.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(p, rank);
        let inv = work[rank][col].inv()?;
        for c in col..cols {
            work[rank][c] = work[rank][c].mul(&inv)?;
        }
        for r in 0..rows {
            if r != rank && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in col..cols {
                    let sub = factor.mul(&work[rank][c])?;
                    work[r][c] = work[r][c].add(&sub)?;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Replace each field element by the GF(2) matrix of multiplication by it,
/// giving a (rows*d) x (cols*d) matrix with d = field degree. Ranks scale
/// exactly by d under this expansion.
pub fn ext_matrix_gf2_expansion(mat: &[Vec<ExtensionElement>]) -> Result<BitMatrix, LinalgError> {
    let rows = mat.len();
    if rows == 0 {
        return Ok(BitMatrix::new(0, 0));
    }
    let cols = mat[0].len();
    if mat.iter().any(|r| r.len() != cols) {
        return Err(LinalgError::ShapeMismatch);
    }
    let ctx = mat[0][0].context().clone();
    let d = ctx.degree();
    let mut out = BitMatrix::new(rows * d, cols * d);
    for (bi, row) in mat.iter().enumerate() {
        for (bj, e) in row.iter().enumerate() {
            let mut col_elem = e.clone();
            let alpha = ctx.alpha();
            for c in 0..d {
                // column c of the block is e * x^c in the power basis
                for r in 0..d {
                    if col_elem.repr().coeff(r) {
                        out.set(bi * d + r, bj * d + c, true);
                    }
                }
                if c + 1 < d {
                    col_elem = col_elem.mul(&alpha)?;
                }
            }
        }
    }
    Ok(out)
}

/// For an m x m grid of polynomial entries and a primary modulus p^rexp:
/// rank over GF(2) of the grid evaluated blockwise at companion(p^rexp),
/// alongside the rank over the residue field F2[x]/(p) of the entrywise
/// reduction. Callers assert rank_full >= deg(p) * rank_quotient.
pub fn block_rank_check(
    entries: &[Vec<BinaryPolynomial>],
    p: &BinaryPolynomial,
    rexp: u32,
) -> Result<(usize, usize), LinalgError> {
    if rexp == 0 {
        return Err(LinalgError::ZeroExponent);
    }
    let m = entries.len();
    if m == 0 || entries.iter().any(|r| r.len() != m) {
        return Err(LinalgError::ShapeMismatch);
    }
    let ctx = ExtensionFieldContext::new(p.clone())?;
    let mut g = BinaryPolynomial::one();
    for _ in 0..rexp {
        g = g.mul(p);
    }
    let c = companion(&g)?;
    let n = g.degree().unwrap();
    let mut full = BitMatrix::new(m * n, m * n);
    for (i, row) in entries.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            let block = poly_at_matrix(&f.rem(&g)?, &c);
            for r in 0..n {
                for cc in 0..n {
                    if block.get(r, cc) {
                        full.set(i * n + r, j * n + cc, true);
                    }
                }
            }
        }
    }
    let rank_full = full.rank();
    let reduced: Vec<Vec<ExtensionElement>> = entries
        .iter()
        .map(|row| row.iter().map(|f| ctx.element(f.clone())).collect())
        .collect();
    let rank_quotient = ext_matrix_rank(&reduced)?;
    Ok((rank_full, rank_quotient))
}
