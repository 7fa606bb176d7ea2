//! Bi-invariant total orders on ℤⁿ given by integer weight matrices, and the
//! integral characters that approximate them on finite sets.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, LatticeError, Sublattice};
use crate::laurent::{LaurentError, LaurentPoly, Monomial};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("rank mismatch: order on ℤ^{expected}, element of ℤ^{got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight rows do not span ℚ^{0}")]
    Degenerate(usize),
    #[error("points are not strictly increasing under the order (position {0})")]
    NotSorted(usize),
    #[error("factor bases do not form a ℤ-basis")]
    NotUnimodular,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `x < y` iff the first row `r` with `r·x ≠ r·y` has `r·x < r·y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrder", into = "RawOrder")]
pub struct MatrixOrder {
    rank: usize,
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawOrder {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawOrder> for MatrixOrder {
    type Error = OrderError;
    fn try_from(raw: RawOrder) -> Result<Self, OrderError> {
        let rank = raw.rows.first().map(|r| r.len()).unwrap_or(0);
        MatrixOrder::new(rank, raw.rows)
    }
}

impl From<MatrixOrder> for RawOrder {
    fn from(o: MatrixOrder) -> Self {
        RawOrder { rows: o.rows }
    }
}

impl MatrixOrder {
    pub fn new(rank: usize, rows: Vec<Vec<i64>>) -> Result<Self, OrderError> {
        for r in &rows {
            if r.len() != rank {
                return Err(OrderError::RankMismatch {
                    expected: rank,
                    got: r.len(),
                });
            }
        }
        if lattice::integer_rank(&rows, rank) != rank {
            return Err(OrderError::Degenerate(rank));
        }
        Ok(MatrixOrder { rank, rows })
    }

    /// Lexicographic order with every generator positive.
    pub fn lex(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        MatrixOrder { rank, rows }
    }

    /// The opposite order.
    pub fn reversed(&self) -> Self {
        MatrixOrder {
            rank: self.rank,
            rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    fn cmp_vec(&self, x: &[i64], y: &[i64]) -> Ordering {
        for r in &self.rows {
            let a: i64 = r.iter().zip(x).map(|(w, e)| w * e).sum();
            let b: i64 = r.iter().zip(y).map(|(w, e)| w * e).sum();
            match a.cmp(&b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, x: &Monomial, y: &Monomial) -> Result<Ordering, OrderError> {
        for m in [x, y] {
            if m.rank() != self.rank {
                return Err(OrderError::RankMismatch {
                    expected: self.rank,
                    got: m.rank(),
                });
            }
        }
        Ok(self.cmp_vec(&x.0, &y.0))
    }

    /// Comparison without the rank check, for sorting.
    pub fn cmp_monomials(&self, x: &Monomial, y: &Monomial) -> Ordering {
        self.cmp_vec(&x.0, &y.0)
    }

    /// The order-minimal term of `f`.
    pub fn leading_term(&self, f: &LaurentPoly) -> Result<(Monomial, Scalar), OrderError> {
        if f.rank() != self.rank {
            return Err(OrderError::RankMismatch {
                expected: self.rank,
                got: f.rank(),
            });
        }
        f.terms()
            .min_by(|a, b| self.cmp_vec(&a.0 .0, &b.0 .0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(OrderError::Laurent(LaurentError::ZeroPolynomial))
    }

    /// Sorts monomials ascending under this order.
    pub fn sort(&self, pts: &mut [Monomial]) {
        pts.sort_by(|a, b| self.cmp_vec(&a.0, &b.0));
    }

    /// Random order with entries in `[-bound, bound]`: a random first row
    /// (ties are common at small bounds) completed by further random rows.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, rank: usize, bound: i64) -> Self {
        loop {
            let k = rank + rng.gen_range(0..=1);
            let rows: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect())
                .collect();
            if let Ok(o) = MatrixOrder::new(rank, rows) {
                return o;
            }
        }
    }
}

/// An integral character ℤⁿ → ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub weights: Vec<i64>,
}

impl Character {
    pub fn new(weights: Vec<i64>) -> Self {
        Character { weights }
    }

    pub fn zero(rank: usize) -> Self {
        Character {
            weights: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn eval(&self, m: &Monomial) -> i64 {
        m.dot(&self.weights)
    }

    pub fn neg(&self) -> Character {
        Character {
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        lattice::gcd_vec(&self.weights) == 1
    }
}

/// An integral character strictly increasing along `points`, which must be
/// strictly increasing under `order`.
///
/// Splits off the first weight row, recurses on the remaining rows within
/// each block of points tied on that row, and returns `N·row + φ_rest` with
/// the least `N ≥ 1` that keeps every consecutive inequality strict.
pub fn separating_character(order: &MatrixOrder, points: &[Monomial]) -> Result<Character, OrderError> {
    for p in points {
        if p.rank() != order.rank {
            return Err(OrderError::RankMismatch {
                expected: order.rank,
                got: p.rank(),
            });
        }
    }
    for (i, w) in points.windows(2).enumerate() {
        if order.cmp_vec(&w[0].0, &w[1].0) != Ordering::Less {
            return Err(OrderError::NotSorted(i + 1));
        }
    }
    let chains = vec![points.iter().map(|m| m.0.clone()).collect::<Vec<_>>()];
    Ok(Character::new(separate_chains(&order.rows, &chains, order.rank)))
}

fn separate_chains(rows: &[Vec<i64>], chains: &[Vec<Vec<i64>>], rank: usize) -> Vec<i64> {
    let chains: Vec<&Vec<Vec<i64>>> = chains.iter().filter(|c| c.len() > 1).collect();
    if chains.is_empty() || rows.is_empty() {
        return vec![0; rank];
    }
    let row = &rows[0];
    let dot = |v: &Vec<i64>, w: &[i64]| -> i64 { v.iter().zip(w).map(|(a, b)| a * b).sum() };
    let mut sub: Vec<Vec<Vec<i64>>> = Vec::new();
    for chain in &chains {
        let mut run = vec![chain[0].clone()];
        for w in chain.windows(2) {
            if dot(&w[1], row) == dot(&w[0], row) {
                run.push(w[1].clone());
            } else {
                sub.push(std::mem::replace(&mut run, vec![w[1].clone()]));
            }
        }
        sub.push(run);
    }
    let rest = separate_chains(&rows[1..], &sub, rank);
    let mut n: i64 = 1;
    for chain in &chains {
        for w in chain.windows(2) {
            let gap = dot(&w[1], row) - dot(&w[0], row);
            if gap >= 1 {
                let spread = dot(&w[0], &rest) - dot(&w[1], &rest);
                if spread >= 0 {
                    n = n.max(spread / gap + 1);
                }
            }
        }
    }
    row.iter().zip(&rest).map(|(r, k)| n * r + k).collect()
}

/// The order on ℤⁿ induced from an order on a finite-index sublattice:
/// `x < y` iff `m·x < m·y` in `sub`, where `m = [ℤⁿ : sub]`.
///
/// `sub_order` is expressed in the coordinates of `sub`'s stored basis.
pub fn extend_order(sub: &Sublattice, sub_order: &MatrixOrder) -> Result<MatrixOrder, OrderError> {
    sub.require_finite_index()?;
    if sub_order.rank != sub.ambient() {
        return Err(OrderError::RankMismatch {
            expected: sub.ambient(),
            got: sub_order.rank,
        });
    }
    let inv = lattice::rational_inverse(sub.basis()).expect("full-rank basis is invertible");
    let n = sub.ambient();
    // value of row w at x: w · (x B^{-1}) = x · (B^{-1} wᵀ)
    let rows = sub_order
        .rows
        .iter()
        .map(|w| {
            let col: Vec<BigRational> = (0..n)
                .map(|i| {
                    (0..n).fold(BigRational::from_integer(BigInt::from(0)), |acc, j| {
                        acc + &inv[i][j] * BigRational::from_integer(BigInt::from(w[j]))
                    })
                })
                .collect();
            lattice::primitive_integer_vector(&col)
        })
        .collect();
    MatrixOrder::new(n, rows)
}

/// Restriction of an order on ℤⁿ to a full-rank sublattice, in the
/// coordinates of the sublattice's stored basis.
pub fn restrict_order(order: &MatrixOrder, sub: &Sublattice) -> Result<MatrixOrder, OrderError> {
    sub.require_finite_index()?;
    let rows = order
        .rows
        .iter()
        .map(|r| sub.basis().iter().map(|b| b.iter().zip(r).map(|(x, y)| x * y).sum()).collect())
        .collect();
    MatrixOrder::new(sub.rank(), rows)
}

/// The chain of convex subgroups `ℤⁿ = C_0 ⊃ C_1 ⊃ … ⊃ C_k = 0`, where `C_i`
/// is the common kernel of the first rows. Rows that do not shrink the
/// kernel are skipped, so every inclusion is strict and every successive
/// quotient is free.
pub fn convex_flag(order: &MatrixOrder) -> Vec<Sublattice> {
    let n = order.rank;
    let mut flag = vec![Sublattice::full(n)];
    for i in 1..=order.rows.len() {
        let ker = lattice::integer_kernel(&order.rows[..i], n);
        let c = Sublattice::new(n, &ker).unwrap();
        if c.rank() < flag.last().unwrap().rank() {
            flag.push(c);
        }
        if flag.last().unwrap().rank() == 0 {
            break;
        }
    }
    flag
}

/// One summand of a direct-sum splitting: its basis vectors (in ℤⁿ) and an
/// order on it in those coordinates.
#[derive(Clone, Debug)]
pub struct OrderedFactor {
    pub basis: Vec<Vec<i64>>,
    pub order: MatrixOrder,
}

/// Dictionary order on `ℤⁿ = Q_0 ⊕ … ⊕ Q_{m-1}`: compare the `Q_0`
/// components first, then `Q_1`, and so on.
pub fn dictionary_order(rank: usize, factors: &[OrderedFactor]) -> Result<MatrixOrder, OrderError> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for f in factors {
        if f.order.rank != f.basis.len() {
            return Err(OrderError::RankMismatch {
                expected: f.basis.len(),
                got: f.order.rank,
            });
        }
        for b in &f.basis {
            if b.len() != rank {
                return Err(OrderError::RankMismatch {
                    expected: rank,
                    got: b.len(),
                });
            }
        }
        basis.extend(f.basis.iter().cloned());
    }
    if basis.len() != rank {
        return Err(OrderError::NotUnimodular);
    }
    let det = lattice::rational_det(&basis);
    if det != BigRational::from_integer(BigInt::from(1)) && det != BigRational::from_integer(BigInt::from(-1)) {
        return Err(OrderError::NotUnimodular);
    }
    let inv = lattice::rational_inverse(&basis).unwrap();
    let mut rows = Vec::new();
    let mut offset = 0;
    for f in factors {
        let d = f.basis.len();
        for w in &f.order.rows {
            let col: Vec<BigRational> = (0..rank)
                .map(|i| {
                    (0..d).fold(BigRational::from_integer(BigInt::from(0)), |acc, j| {
                        acc + &inv[i][offset + j] * BigRational::from_integer(BigInt::from(w[j]))
                    })
                })
                .collect();
            rows.push(lattice::primitive_integer_vector(&col));
        }
        offset += d;
    }
    MatrixOrder::new(rank, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn m(v: &[i64]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn compare_examples() {
        let lex = MatrixOrder::lex(2);
        assert_eq!(lex.compare(&m(&[0, 5]), &m(&[1, -100])).unwrap(), Ordering::Less);
        assert_eq!(lex.compare(&m(&[3, 3]), &m(&[3, 3])).unwrap(), Ordering::Equal);
        let o = MatrixOrder::new(2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Less);
        assert!(lex.compare(&m(&[1]), &m(&[1, 2])).is_err());
        assert!(MatrixOrder::new(2, vec![vec![1, 1], vec![2, 2]]).is_err());
    }

    #[test]
    fn leading_term_examples() {
        let q = FieldSpec::Rationals;
        let f = LaurentPoly::parse("1 + t", &["t"], q).unwrap();
        assert_eq!(MatrixOrder::lex(1).leading_term(&f).unwrap(), (m(&[0]), q.one()));
        let rev = MatrixOrder::new(1, vec![vec![-1]]).unwrap();
        assert_eq!(rev.leading_term(&f).unwrap(), (m(&[1]), q.one()));
        let g = LaurentPoly::parse("2 + 3*t + 5*t^2", &["t"], q).unwrap();
        assert_eq!(rev.leading_term(&g).unwrap(), (m(&[2]), q.from_i64(5)));
        assert!(rev.leading_term(&LaurentPoly::zero(1, q)).is_err());
    }

    #[test]
    fn separating_character_examples() {
        let lex = MatrixOrder::lex(2);
        assert_eq!(separating_character(&lex, &[m(&[4, 4])]).unwrap(), Character::zero(2));
        let phi = separating_character(&lex, &[m(&[0, 0]), m(&[0, 1]), m(&[1, -5])]).unwrap();
        assert_eq!(phi.weights, vec![7, 1]);
        let one = MatrixOrder::new(1, vec![vec![1]]).unwrap();
        assert_eq!(separating_character(&one, &[m(&[0]), m(&[3])]).unwrap().weights, vec![1]);
        assert_eq!(
            separating_character(&lex, &[m(&[1, 0]), m(&[0, 0])]),
            Err(OrderError::NotSorted(1))
        );
    }

    #[test]
    fn extend_order_examples() {
        let two = Sublattice::scalar(1, 2);
        let std = MatrixOrder::lex(1);
        assert_eq!(extend_order(&two, &std).unwrap(), std);
        assert_eq!(extend_order(&two, &std.reversed()).unwrap(), std.reversed());
        assert!(extend_order(&Sublattice::new(2, &[vec![1, 0]]).unwrap(), &std).is_err());
    }

    #[test]
    fn convex_flag_examples() {
        let flag = convex_flag(&MatrixOrder::lex(2));
        assert_eq!(flag.len(), 3);
        assert_eq!(flag[1], Sublattice::new(2, &[vec![0, 1]]).unwrap());
        assert_eq!(flag[2].rank(), 0);
        let o = MatrixOrder::new(2, vec![vec![1, 2], vec![0, 1]]).unwrap();
        let flag = convex_flag(&o);
        assert_eq!(flag.len(), 3);
        assert_eq!(flag[1], Sublattice::new(2, &[vec![2, -1]]).unwrap());
        assert_eq!(convex_flag(&MatrixOrder::lex(1)).len(), 2);
    }

    #[test]
    fn dictionary_order_examples() {
        let std1 = MatrixOrder::lex(1);
        let e1 = OrderedFactor { basis: vec![vec![1, 0]], order: std1.clone() };
        let e2 = OrderedFactor { basis: vec![vec![0, 1]], order: std1.clone() };
        let lex = dictionary_order(2, &[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(lex, MatrixOrder::lex(2));
        let colex = dictionary_order(2, &[e2, e1]).unwrap();
        assert_eq!(colex.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(lex.compare(&m(&[1, 0]), &m(&[0, 1])).unwrap(), Ordering::Greater);
        let inner = OrderedFactor {
            basis: vec![vec![1, 0, 0], vec![0, 1, 0]],
            order: MatrixOrder::lex(2),
        };
        let last = OrderedFactor { basis: vec![vec![0, 0, 1]], order: std1 };
        assert_eq!(dictionary_order(3, &[inner, last]).unwrap(), MatrixOrder::lex(3));
        let bad = OrderedFactor { basis: vec![vec![2, 0]], order: MatrixOrder::lex(1) };
        let ok = OrderedFactor { basis: vec![vec![0, 1]], order: MatrixOrder::lex(1) };
        assert_eq!(dictionary_order(2, &[bad, ok]), Err(OrderError::NotUnimodular));
    }
}
