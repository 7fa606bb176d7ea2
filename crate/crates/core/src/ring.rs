//! A minimal ring interface shared by scalars, Laurent polynomials,
//! fractions and Novikov series, and dense matrices over any such ring.

use std::fmt;

use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// Ring operations on values that carry their own context (field, rank,
/// window), so that `zero_like`/`one_like` can rebuild constants.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Products with `self` are exactly zero and may be skipped. Truncated
    /// values override this: their zero still bounds the product's window.
    fn annihilates(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Two-sided inverse when the element is a unit and the inverse is
    /// computable; `None` otherwise.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.rank(), self.field())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.rank(), self.field())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(LaurentPoly::monomial(m.neg(), c.inv()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeError {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "incompatible shapes {}x{} and {}x{}",
            self.left.0, self.left.1, self.right.0, self.right.1
        )
    }
}

impl std::error::Error for ShapeError {}

/// Dense row-major matrix. `zero` is a prototype so that empty shapes still
/// know their ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<R>>,
    zero: R,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, proto: &R) -> Self {
        let zero = proto.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![vec![zero.clone(); cols]; rows],
            zero,
        }
    }

    pub fn identity(n: usize, proto: &R) -> Self {
        let mut m = Self::zeros(n, n, proto);
        for i in 0..n {
            m.data[i][i] = proto.one_like();
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<R>>, proto: &R) -> Result<Self, ShapeError> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            let got_cols = data.first().map(|r| r.len()).unwrap_or(0);
            return Err(ShapeError {
                left: (rows, cols),
                right: (data.len(), got_cols),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            zero: proto.zero_like(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn proto(&self) -> &R {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i]
    }

    pub fn data(&self) -> &[Vec<R>] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn checked_mul(&self, other: &Matrix<R>) -> Result<Matrix<R>, ShapeError> {
        if self.cols != other.rows {
            return Err(ShapeError {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.annihilates() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.annihilates() {
                        out.data[i][j] = out.data[i][j].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix<R>) -> Result<Matrix<R>, ShapeError> {
        self.zip(other, |a, b| a.plus(b))
    }

    pub fn checked_sub(&self, other: &Matrix<R>) -> Result<Matrix<R>, ShapeError> {
        self.zip(other, |a, b| a.minus(b))
    }

    fn zip<F: Fn(&R, &R) -> R>(&self, other: &Matrix<R>, f: F) -> Result<Matrix<R>, ShapeError> {
        if self.shape() != other.shape() {
            return Err(ShapeError {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        })
    }

    pub fn transpose(&self) -> Matrix<R> {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            zero: self.zero.clone(),
        }
    }

    /// Entrywise image under a ring map; `proto` fixes the target ring.
    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, proto: &S, f: F) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect(),
            zero: proto.zero_like(),
        }
    }

    pub fn without_row(&self, i: usize) -> Matrix<R> {
        let mut data = self.data.clone();
        data.remove(i);
        Matrix {
            rows: self.rows - 1,
            cols: self.cols,
            data,
            zero: self.zero.clone(),
        }
    }

    pub fn without_col(&self, j: usize) -> Matrix<R> {
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.remove(j);
                r
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols - 1,
            data,
            zero: self.zero.clone(),
        }
    }

    /// Block matrix whose `(i, j)` block is `blocks[i][j]`; all blocks in a
    /// block row share a row count and all blocks in a block column share a
    /// column count.
    pub fn from_blocks(blocks: &[Vec<Matrix<R>>], row_sizes: &[usize], col_sizes: &[usize], proto: &R) -> Matrix<R> {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Matrix::zeros(rows, cols, proto);
        let mut r0 = 0;
        for (bi, rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, cs) in col_sizes.iter().enumerate() {
                let b = &blocks[bi][bj];
                debug_assert_eq!(b.shape(), (*rs, *cs));
                for i in 0..*rs {
                    for j in 0..*cs {
                        out.data[r0 + i][c0 + j] = b.data[i][j].clone();
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    pub fn block_diag(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        let proto = a.zero.clone();
        let z1 = Matrix::zeros(a.rows, b.cols, &proto);
        let z2 = Matrix::zeros(b.rows, a.cols, &proto);
        Matrix::from_blocks(
            &[vec![a.clone(), z1], vec![z2, b.clone()]],
            &[a.rows, b.rows],
            &[a.cols, b.cols],
            &proto,
        )
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    #[test]
    fn matrix_product_and_transpose() {
        let q = FieldSpec::Rationals;
        let t = LaurentPoly::var(1, q, 0);
        let one = LaurentPoly::one(1, q);
        let a = Matrix::from_rows(1, 2, vec![vec![t.clone(), one.clone()]], &one).unwrap();
        let p = a.checked_mul(&a.transpose()).unwrap();
        assert_eq!(p.get(0, 0), &(&(&t * &t) + &one));
        assert!(a.checked_mul(&a).is_err());
        let i = Matrix::identity(2, &one);
        assert_eq!(a.checked_mul(&i).unwrap(), a);
        let e = Matrix::zeros(0, 3, &one);
        assert_eq!(e.transpose().checked_mul(&e).unwrap(), Matrix::zeros(3, 3, &one));
    }

    #[test]
    fn laurent_units() {
        let f = FieldSpec::PrimeField(5);
        let u = LaurentPoly::parse("3*t^-2", &["t"], f).unwrap();
        assert!(u.times(&u.unit_inverse().unwrap()).is_one());
        assert!(LaurentPoly::parse("1+t", &["t"], f).unwrap().unit_inverse().is_none());
    }

    #[test]
    fn block_diag_shapes() {
        let one = FieldSpec::Rationals.one();
        let a = Matrix::identity(1, &one);
        let b = Matrix::zeros(2, 1, &one);
        let d = Matrix::block_diag(&a, &b);
        assert_eq!(d.shape(), (3, 2));
        assert!(d.get(0, 0).is_one());
        assert!(d.without_row(0).is_zero());
    }
}
