//! Exact rational arithmetic and dense linear algebra.
//!
//! Every sign decision made elsewhere in the crate goes through these
//! routines, so nothing is ever rounded. Solves and determinants use
//! fraction-free (Bareiss) elimination on integer rows: each row is first
//! cleared of denominators, which leaves the solution unchanged and scales
//! the determinant by a known factor.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RatVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"` or `"a/b"`; a sign is only allowed on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(1, 1, format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(b) => {
            if b.starts_with(['-', '+']) {
                return Err(Error::parse(
                    1,
                    s.find('/').unwrap() + 2,
                    format!("sign on denominator in {s:?}"),
                ));
            }
            b.parse().map_err(|_| {
                Error::parse(1, s.find('/').unwrap() + 2, format!("bad denominator in {s:?}"))
            })?
        }
    };
    if den.is_zero() {
        return Err(Error::parse(1, 1, format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::InvalidArgument("matrix must be nonempty".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<RatVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on the given row and column index lists (0-based).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<RatMatrix> {
        require_square(self)?;
        let n = self.rows;
        let mut out = RatMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let x = rat_solve(self, &e)?;
            for (i, xi) in x.into_iter().enumerate() {
                out[(i, j)] = xi;
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

fn require_square(a: &RatMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: a.cols,
        });
    }
    Ok(())
}

/// Clears denominators row by row. Returns the integer rows together with
/// the product of the row multipliers.
fn integer_rows(a: &RatMatrix, b: Option<&[Rational]>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..a.rows)
        .map(|i| {
            let row = a.row(i);
            let extra = b.map(|b| &b[i]);
            let lcm = row
                .iter()
                .chain(extra)
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter()
                .chain(extra)
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    (rows, scale)
}

/// Bareiss forward elimination over the first `n` columns of `m`.
///
/// On success `m` is upper triangular in those columns and the returned
/// sign is the parity of the row swaps. Fails with the (1-based) column in
/// which no pivot could be found.
fn bareiss(m: &mut [Vec<BigInt>], n: usize) -> std::result::Result<i32, usize> {
    let width = m.first().map_or(0, Vec::len);
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Err(k + 1);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..width {
                let v = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                // exact by Sylvester's identity
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    Ok(sign)
}

/// Fraction-free Gauss-Jordan elimination of the augmented system `[A | b]`.
///
/// Afterwards every diagonal entry equals `±det(A)` (scaled) and row `i`
/// is zero off the diagonal in the first `n` columns.
fn bareiss_jordan(m: &mut [Vec<BigInt>], n: usize) -> std::result::Result<(), usize> {
    let width = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Err(k + 1);
        };
        m.swap(p, k);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = std::mem::take(&mut row[k]);
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[k].clone();
    }
    Ok(())
}

/// Solves `A x = b` exactly.
pub fn rat_solve(a: &RatMatrix, b: &[Rational]) -> Result<RatVector> {
    require_square(a)?;
    let n = a.rows;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let (mut m, _) = integer_rows(a, Some(b));
    bareiss_jordan(&mut m, n).map_err(|column| Error::Singular { column })?;
    Ok(m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            let rhs = row.pop().expect("augmented column");
            Rational::new(rhs, row.swap_remove(i))
        })
        .collect())
}

/// Exact determinant.
pub fn rat_det(a: &RatMatrix) -> Result<Rational> {
    require_square(a)?;
    let n = a.rows;
    let (mut m, scale) = integer_rows(a, None);
    match bareiss(&mut m, n) {
        Ok(sign) => {
            let d = m[n - 1][n - 1].clone();
            let d = if sign < 0 { -d } else { d };
            Ok(Rational::new(d, scale))
        }
        Err(_) => Ok(Rational::zero()),
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
