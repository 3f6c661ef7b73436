//! Exact rational matrices and quadratic forms.
//!
//! Everything downstream (Gram matrices, label criteria, transition
//! certificates) is decided by exact comparisons, so this module works over
//! arbitrary precision rationals throughout.  Matrices are small (at most
//! 10 x 10), which keeps plain Gaussian elimination perfectly adequate.

use crate::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Arbitrary precision rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced with positive denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix over [`Rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            nrows,
            ncols,
            data: vec![Rational::zero(); nrows * ncols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Build from rational rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer rows.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RatMatrix {
            nrows,
            ncols,
            data: rows.iter().flatten().map(|&n| rat(n)).collect(),
        }
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Whether the matrix is square.
    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Whether the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows)
                .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Transposed copy.
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, Error> {
        if self.ncols != rhs.nrows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let term = a * &rhs[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if self.ncols != v.len() {
            return Err(Error::Dimension(format!(
                "{}x{} * vec{}",
                self.nrows,
                self.ncols,
                v.len()
            )));
        }
        Ok((0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect())
    }

    /// Congruence transform `t^T * self * t`.
    pub fn congruence(&self, t: &RatMatrix) -> Result<RatMatrix, Error> {
        t.transpose().mul(self)?.mul(t)
    }

    /// Determinant by Gaussian elimination with exact pivoting.
    pub fn det(&self) -> Result<Rational, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(Rational::zero()),
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &p;
                for c in col..n {
                    let sub = &factor * &m[(col, c)];
                    m[(r, c)] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination; errors on singular input.
    pub fn inverse(&self) -> Result<RatMatrix, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.nrows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[(r, col)].is_zero())
                .ok_or_else(|| Error::Singular { rank: self.rank() })?;
            if pivot != col {
                m.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = m[(col, col)].clone();
            for c in 0..n {
                m[(col, c)] /= &p;
                inv[(col, c)] /= &p;
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in 0..n {
                    let a = &factor * &m[(col, c)];
                    m[(r, c)] -= a;
                    let b = &factor * &inv[(col, c)];
                    inv[(r, c)] -= b;
                }
            }
        }
        Ok(inv)
    }

    /// Rank via row echelon form.
    pub fn rank(&self) -> usize {
        let (_, rank) = self.echelon();
        rank
    }

    /// Solve `self * x = b` exactly.  Returns `None` when inconsistent.
    /// When the solution space is positive dimensional the free variables
    /// are set to zero, which keeps the output deterministic.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        if b.len() != self.nrows {
            return None;
        }
        // Eliminate on the augmented matrix.
        let mut aug = Self::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.ncols)] = b[i].clone();
        }
        let (aug, _) = aug.echelon();
        let mut x = vec![Rational::zero(); self.ncols];
        for i in (0..self.nrows).rev() {
            let lead = (0..self.ncols).find(|&j| !aug[(i, j)].is_zero());
            match lead {
                Some(j) => {
                    let mut acc = aug[(i, self.ncols)].clone();
                    for k in j + 1..self.ncols {
                        acc -= &aug[(i, k)] * &x[k];
                    }
                    x[j] = acc / &aug[(i, j)];
                }
                None => {
                    if !aug[(i, self.ncols)].is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(x)
    }

    /// Row echelon form and rank.
    fn echelon(&self) -> (RatMatrix, usize) {
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows {
                break;
            }
            let pivot = (row..m.nrows).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            m.swap_rows(pivot, row);
            let p = m[(row, col)].clone();
            for r in row + 1..m.nrows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &p;
                for c in col..m.ncols {
                    let sub = &factor * &m[(row, c)];
                    m[(r, c)] -= sub;
                }
            }
            row += 1;
        }
        (m, row)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.ncols {
            self.data.swap(a * self.ncols + c, b * self.ncols + c);
        }
    }

    /// Integer entries, if every entry is an integer.
    pub fn int_entries(&self) -> Option<Vec<Vec<i64>>> {
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(self.ncols);
            for j in 0..self.ncols {
                let e = &self[(i, j)];
                if !e.is_integer() {
                    return None;
                }
                row.push(i64::try_from(e.to_integer()).ok()?);
            }
            rows.push(row);
        }
        Some(rows)
    }

    /// Parse the plain text form: rows separated by `;`, entries separated
    /// by whitespace, each entry an integer or `p/q`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut rows = Vec::new();
        for row_text in text.split(';') {
            let row_text = row_text.trim();
            if row_text.is_empty() {
                continue;
            }
            let row = row_text
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        Self::from_rows(rows)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.ncols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

fn parse_rational(tok: &str) -> Result<Rational, Error> {
    let mk_err = || Error::Parse(format!("bad rational {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| mk_err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(tok).map_err(|_| mk_err())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Symmetric quadratic form backed by a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: RatMatrix,
}

impl QuadraticForm {
    /// Wrap a symmetric matrix.
    pub fn new(matrix: RatMatrix) -> Result<Self, Error> {
        if !matrix.is_symmetric() {
            return Err(Error::Dimension("quadratic form needs a symmetric matrix".into()));
        }
        Ok(QuadraticForm { matrix })
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Order of the form.
    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    /// Evaluate `x^T M x` on an integer vector.
    pub fn eval_int(&self, x: &[i64]) -> Rational {
        let v: Vec<Rational> = x.iter().map(|&n| rat(n)).collect();
        self.eval(&v)
    }

    /// Evaluate `x^T M x` on a rational vector.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.order(), "vector length mismatch");
        let mut acc = Rational::zero();
        for i in 0..self.order() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.order() {
                if x[j].is_zero() {
                    continue;
                }
                acc += &self.matrix[(i, j)] * &x[i] * &x[j];
            }
        }
        acc
    }

    /// The form of the inverse matrix.
    pub fn inverse_form(&self) -> Result<QuadraticForm, Error> {
        QuadraticForm::new(self.matrix.inverse()?)
    }

    /// Positive definiteness via Sylvester's criterion, exactly.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.order();
        for k in 1..=n {
            let mut minor = RatMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    minor[(i, j)] = self.matrix[(i, j)].clone();
                }
            }
            match minor.det() {
                Ok(d) if d.is_positive() => {}
                _ => return false,
            }
        }
        true
    }
}
