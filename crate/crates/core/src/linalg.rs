//! Dense exact vectors and matrices with explicit dimensions.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::Rational;

/// Dense vector of rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RVec(pub Vec<Rational>);

impl RVec {
    pub fn zeros(n: usize) -> Self {
        RVec(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RVec(v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &RVec) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc += a * b;
        }
        acc
    }

    pub fn scale(&self, t: &Rational) -> RVec {
        RVec(self.0.iter().map(|x| x * t).collect())
    }

    pub fn check_dim(&self, n: usize) -> Result<(), Error> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: n,
                got: self.dim(),
            })
        }
    }

    /// Scale so the first nonzero entry has absolute value 1; positive
    /// factor only, so the direction of a ray or inequality is preserved.
    /// Returns the zero vector unchanged.
    pub fn normalize_leading(&self) -> RVec {
        match self.0.iter().find(|x| !x.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let f = lead.abs().recip();
                self.scale(&f)
            }
        }
    }

    pub fn concat(&self, other: &RVec) -> RVec {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        RVec(v)
    }
}

impl fmt::Debug for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for RVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RVec {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &RVec {
    type Output = RVec;
    fn add(self, rhs: &RVec) -> RVec {
        assert_eq!(self.dim(), rhs.dim(), "add: dimension mismatch");
        RVec(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &RVec {
    type Output = RVec;
    fn sub(self, rhs: &RVec) -> RVec {
        assert_eq!(self.dim(), rhs.dim(), "sub: dimension mismatch");
        RVec(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &RVec {
    type Output = RVec;
    fn neg(self) -> RVec {
        RVec(self.0.iter().map(|x| -x).collect())
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RMat {
    rows: Vec<RVec>,
}

impl RMat {
    pub fn from_rows(rows: Vec<RVec>) -> Result<Self, Error> {
        if let Some(first) = rows.first() {
            let n = first.dim();
            for r in &rows {
                r.check_dim(n)?;
            }
        }
        Ok(RMat { rows })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        RMat {
            rows: rows.iter().map(|r| RVec::from_ints(r)).collect(),
        }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        RMat {
            rows: vec![RVec::zeros(n); m],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.dim())
    }

    pub fn row(&self, i: usize) -> &RVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[RVec] {
        &self.rows
    }

    pub fn col(&self, j: usize) -> RVec {
        RVec(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> RMat {
        let m = self.nrows();
        let n = self.ncols();
        let mut t = RMat::zeros(n, m);
        for i in 0..m {
            for j in 0..n {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RVec) -> RVec {
        assert_eq!(self.ncols(), v.dim(), "mul_vec: dimension mismatch");
        RVec(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// A^T v without forming the transpose.
    pub fn tr_mul_vec(&self, v: &RVec) -> RVec {
        assert_eq!(self.nrows(), v.dim(), "tr_mul_vec: dimension mismatch");
        let mut out = RVec::zeros(self.ncols());
        for (r, vi) in self.rows.iter().zip(v.0.iter()) {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.ncols() {
                out[j] += &r[j] * vi;
            }
        }
        out
    }

    /// Row-echelon rank by exact Gaussian elimination.
    #[allow(clippy::needless_range_loop)] // pivot row is read while others are written
    pub fn rank(&self) -> usize {
        let mut a = self.rows.clone();
        let m = a.len();
        let n = self.ncols();
        let mut rank = 0;
        for col in 0..n {
            if rank >= m {
                break;
            }
            let pivot = (rank..m).find(|&i| !a[i][col].is_zero());
            let Some(p) = pivot else { continue };
            a.swap(rank, p);
            let inv = a[rank][col].recip();
            for i in 0..m {
                if i != rank && !a[i][col].is_zero() {
                    let f = &a[i][col] * &inv;
                    for j in col..n {
                        let delta = &a[rank][j] * &f;
                        a[i][j] = &a[i][j] - &delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

impl Mul<&RVec> for &RMat {
    type Output = RVec;
    fn mul(self, v: &RVec) -> RVec {
        self.mul_vec(v)
    }
}

/// Solve the square system `A x = b` exactly. Returns `None` when `A` is
/// singular or the system is inconsistent.
#[allow(clippy::needless_range_loop)] // pivot row is read while others are written
pub fn solve_square(a: &RMat, b: &RVec) -> Option<RVec> {
    let n = a.nrows();
    if a.ncols() != n || b.dim() != n {
        return None;
    }
    // augmented elimination
    let mut aug: Vec<RVec> = a
        .rows()
        .iter()
        .zip(b.0.iter())
        .map(|(r, bi)| {
            let mut row = r.0.clone();
            row.push(bi.clone());
            RVec(row)
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for j in col..=n {
            aug[col][j] = &aug[col][j] * &inv;
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in col..=n {
                    let delta = &aug[col][j] * &f;
                    aug[i][j] = &aug[i][j] - &delta;
                }
            }
        }
    }
    Some(RVec(aug.iter().map(|r| r[n].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_2x2() {
        let a = RMat::from_int_rows(&[&[2, 1], &[1, -1]]);
        let b = RVec::from_ints(&[5, 1]);
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x, RVec::from_ints(&[2, 1]));
    }

    #[test]
    fn singular_detected() {
        let a = RMat::from_int_rows(&[&[1, 2], &[2, 4]]);
        let b = RVec::from_ints(&[1, 2]);
        assert!(solve_square(&a, &b).is_none());
    }

    #[test]
    fn rank_works() {
        let a = RMat::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(RMat::identity(4).rank(), 4);
    }
}
