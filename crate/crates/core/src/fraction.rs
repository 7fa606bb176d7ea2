//! The fraction field of F[ℤⁿ], and fraction-free linear algebra over the
//! Laurent ring.

use std::fmt;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, Monomial};
use crate::ring::{Matrix, Ring};
use crate::scalar::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FractionError {
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `num/den` with `den ≠ 0`. The denominator's lexicographically smallest
/// term is `1·x^0`; in one variable the pair is coprime, otherwise common
/// factors are only removed when one side divides the other.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Fraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, FractionError> {
        if den.is_zero() {
            return Err(FractionError::DivisionByZero);
        }
        if num.rank() != den.rank() {
            return Err(LaurentError::RankMismatch(num.rank(), den.rank()).into());
        }
        if num.field() != den.field() {
            return Err(LaurentError::FieldMismatch(num.field(), den.field()).into());
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        let (rank, field) = (den.rank(), den.field());
        if num.is_zero() {
            return Fraction {
                num,
                den: LaurentPoly::one(rank, field),
            };
        }
        let (mut num, mut den) = (num, den);
        if rank == 1 {
            let g = num.univariate_gcd(&den).unwrap();
            if !g.is_one() {
                num = num.exact_div(&g).unwrap().unwrap();
                den = den.exact_div(&g).unwrap().unwrap();
            }
        } else if !den.is_unit() {
            if let Some(q) = num.exact_div(&den).unwrap() {
                num = q;
                den = LaurentPoly::one(rank, field);
            } else if let Some(q) = den.exact_div(&num).unwrap() {
                den = q;
                num = LaurentPoly::one(rank, field);
            }
        }
        let (den_n, unit) = den.normalize_unit();
        if let Some((m, c)) = unit {
            num = num.shift(&m.neg()).scale(&c.inv().unwrap());
        }
        Fraction { num, den: den_n }
    }

    pub fn from_poly(f: LaurentPoly) -> Self {
        let den = LaurentPoly::one(f.rank(), f.field());
        Fraction { num: f, den }
    }

    pub fn zero(rank: usize, field: FieldSpec) -> Self {
        Self::from_poly(LaurentPoly::zero(rank, field))
    }

    pub fn one(rank: usize, field: FieldSpec) -> Self {
        Self::from_poly(LaurentPoly::one(rank, field))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn checked_add(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        if self.den == other.den {
            return Fraction::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        Fraction::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_sub(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        Fraction::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn inv(&self) -> Result<Fraction, FractionError> {
        if self.is_zero() {
            return Err(FractionError::DivisionByZero);
        }
        Fraction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Fraction {}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for Fraction {
    fn zero_like(&self) -> Self {
        Fraction::zero(self.rank(), self.field())
    }
    fn one_like(&self) -> Self {
        Fraction::one(self.rank(), self.field())
    }
    fn is_zero(&self) -> bool {
        Fraction::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("fractions over one ring")
    }
    fn minus(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("fractions over one ring")
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("fractions over one ring")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

fn pivot_weight(p: &LaurentPoly) -> usize {
    p.num_terms()
}

/// Rank over the fraction field, by fraction-free elimination.
pub fn laurent_rank(m: &Matrix<LaurentPoly>) -> usize {
    let mut a: Vec<Vec<LaurentPoly>> = m.data().to_vec();
    let (rows, cols) = m.shape();
    let mut prev: Option<LaurentPoly> = None;
    let mut rank = 0;
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut live_rows: Vec<usize> = (0..rows).collect();
    while !live_rows.is_empty() && !live_cols.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, &r) in live_rows.iter().enumerate() {
            for (ci, &c) in live_cols.iter().enumerate() {
                if !a[r][c].is_zero() {
                    let w = pivot_weight(&a[r][c]);
                    if best.is_none_or(|(_, _, bw)| w < bw) {
                        best = Some((ri, ci, w));
                    }
                }
            }
        }
        let Some((ri, ci, _)) = best else { break };
        let pr = live_rows.remove(ri);
        let pc = live_cols.remove(ci);
        let piv = a[pr][pc].clone();
        for &r in &live_rows {
            for &c in &live_cols {
                let v = &(&piv * &a[r][c]) - &(&a[r][pc] * &a[pr][c]);
                a[r][c] = match &prev {
                    Some(d) => v.exact_div(d).unwrap().expect("Bareiss division is exact"),
                    None => v,
                };
            }
        }
        prev = Some(piv);
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn laurent_det(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let proto = m.proto();
    if n == 0 {
        return proto.one_like();
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.data().to_vec();
    let mut negate = false;
    let mut prev = proto.one_like();
    for k in 0..n {
        let best = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| pivot_weight(&a[r][k]));
        let Some(p) = best else { return proto.zero_like() };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = &(&a[k][k] * &a[r][c]) - &(&a[r][k] * &a[k][c]);
                a[r][c] = v.exact_div(&prev).unwrap().expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    if negate {
        -&a[n - 1][n - 1]
    } else {
        a[n - 1][n - 1].clone()
    }
}

/// Adjugate and determinant, with `M·adj(M) = det(M)·I`.
pub fn laurent_adjugate(m: &Matrix<LaurentPoly>) -> (Matrix<LaurentPoly>, LaurentPoly) {
    let n = m.rows();
    let det = laurent_det(m);
    let mut adj = Matrix::zeros(n, n, m.proto());
    if n == 1 {
        adj.set(0, 0, m.proto().one_like());
        return (adj, det);
    }
    for i in 0..n {
        for j in 0..n {
            let minor = m.without_row(j).without_col(i);
            let c = laurent_det(&minor);
            adj.set(i, j, if (i + j) % 2 == 1 { -&c } else { c });
        }
    }
    (adj, det)
}

/// Rank of a matrix of fractions: clears denominators row by row.
pub fn fraction_rank(m: &Matrix<Fraction>) -> usize {
    let proto = LaurentPoly::zero(m.proto().rank(), m.proto().field());
    let mut cleared = Matrix::zeros(m.rows(), m.cols(), &proto);
    for i in 0..m.rows() {
        let mut l = proto.one_like();
        for x in m.row(i) {
            if !x.den().is_one() && l.exact_div(x.den()).unwrap().is_none() {
                l = &l * x.den();
            }
        }
        for (j, x) in m.row(i).iter().enumerate() {
            let scale = l.exact_div(x.den()).unwrap().unwrap();
            cleared.set(i, j, x.num() * &scale);
        }
    }
    laurent_rank(&cleared)
}

/// The monomial `x^e`.
pub fn monomial_poly(e: &[i64], field: FieldSpec) -> LaurentPoly {
    LaurentPoly::monomial(Monomial(e.to_vec()), field.one())
}
