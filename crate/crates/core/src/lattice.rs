//! Integer linear algebra on sublattices of ℤⁿ.
//!
//! Sublattices are stored by their row-style Hermite normal form: echelon rows
//! with positive pivots and the entries above each pivot reduced into
//! `[0, pivot)`. For a full-rank sublattice this is upper triangular, and the
//! box `0 ≤ v_i < d_i` of the diagonal is a canonical set of coset
//! representatives for ℤⁿ / L.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::laurent::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector of length {got} in a rank-{expected} lattice")]
    Dimension { expected: usize, got: usize },
    #[error("sublattice is not of finite index")]
    NotFiniteIndex,
    #[error("{0}")]
    Invalid(String),
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("lattice entry exceeds 64 bits")
}

/// A sublattice of ℤⁿ, stored in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient: usize,
    basis: Vec<Vec<i64>>,
}

impl Sublattice {
    /// The sublattice generated by `generators` (any spanning set).
    pub fn new(ambient: usize, generators: &[Vec<i64>]) -> Result<Self, LatticeError> {
        for g in generators {
            if g.len() != ambient {
                return Err(LatticeError::Dimension {
                    expected: ambient,
                    got: g.len(),
                });
            }
        }
        Ok(Sublattice {
            ambient,
            basis: hnf_rows(generators, ambient),
        })
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| i64::from(i == j)).collect())
            .collect();
        Sublattice { ambient, basis }
    }

    pub fn trivial(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: Vec::new(),
        }
    }

    /// `m·ℤⁿ`.
    pub fn scalar(ambient: usize, m: i64) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { m.abs() } else { 0 }).collect())
            .collect();
        Sublattice { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// `[ℤⁿ : L]`, or `None` when infinite.
    pub fn index(&self) -> Option<u64> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            (0..self.ambient)
                .map(|i| self.basis[i][i] as u64)
                .product(),
        )
    }

    pub fn require_finite_index(&self) -> Result<u64, LatticeError> {
        self.index().ok_or(LatticeError::NotFiniteIndex)
    }

    fn pivot_col(row: &[i64]) -> usize {
        row.iter().position(|&x| x != 0).unwrap()
    }

    /// Coordinates of `v` in the stored basis, if `v ∈ L`.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut out = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pc = Self::pivot_col(row);
            let d = row[pc] as i128;
            if rest[pc] % d != 0 {
                return None;
            }
            let q = rest[pc] / d;
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= q * *b as i128;
            }
            out.push(to_i64(q));
        }
        if rest.iter().all(|x| *x == 0) {
            Some(out)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// The point of ℤⁿ with coordinates `c` in the stored basis.
    pub fn from_coords(&self, c: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient];
        for (ci, row) in c.iter().zip(&self.basis) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += ci * b;
            }
        }
        out
    }

    /// Canonical coset representative of `v` (fundamental box of the HNF),
    /// together with the lattice element `v - rep`. Needs full rank.
    pub fn reduce(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        assert!(self.is_full_rank(), "reduce needs a finite-index sublattice");
        let mut rep: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (i, row) in self.basis.iter().enumerate() {
            let d = row[i] as i128;
            let q = Integer::div_floor(&rep[i], &d);
            if q != 0 {
                for (r, b) in rep.iter_mut().zip(row) {
                    *r -= q * *b as i128;
                }
            }
        }
        let rep: Vec<i64> = rep.into_iter().map(to_i64).collect();
        let h = v.iter().zip(&rep).map(|(a, b)| a - b).collect();
        (rep, h)
    }

    /// All canonical coset representatives of ℤⁿ / L in lexicographic order;
    /// the first one is 0.
    pub fn coset_reps(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        self.require_finite_index()?;
        let diag: Vec<i64> = (0..self.ambient).map(|i| self.basis[i][i]).collect();
        let mut out = vec![Vec::new()];
        for d in diag {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in &out {
                for x in 0..d {
                    let mut p: Vec<i64> = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// `(L ⊗ ℚ) ∩ ℤⁿ`.
    pub fn saturation(&self) -> Sublattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let perp = integer_kernel(&self.basis, self.ambient);
        let gens = integer_kernel(&perp, self.ambient);
        Sublattice::new(self.ambient, &gens).unwrap()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    pub fn intersect(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient, other.ambient);
        if self.basis.is_empty() || other.basis.is_empty() {
            return Sublattice::trivial(self.ambient);
        }
        // (a, b) with a·B = b·C; columns of the stacked system are ambient coordinates
        let k = self.basis.len();
        let l = other.basis.len();
        let rows: Vec<Vec<i64>> = (0..self.ambient)
            .map(|j| {
                let mut r: Vec<i64> = self.basis.iter().map(|b| b[j]).collect();
                r.extend(other.basis.iter().map(|c| -c[j]));
                r
            })
            .collect();
        let ker = integer_kernel(&rows, k + l);
        let gens: Vec<Vec<i64>> = ker.iter().map(|v| self.from_coords(&v[..k])).collect();
        Sublattice::new(self.ambient, &gens).unwrap()
    }

    /// Expresses this lattice inside `outer` (which must contain it), giving a
    /// sublattice of ℤ^{rank(outer)} in `outer`'s coordinates.
    pub fn in_coordinates_of(&self, outer: &Sublattice) -> Result<Sublattice, LatticeError> {
        let gens: Option<Vec<Vec<i64>>> = self.basis.iter().map(|b| outer.coords(b)).collect();
        let gens = gens.ok_or_else(|| LatticeError::Invalid("lattice not contained in outer lattice".into()))?;
        Sublattice::new(outer.rank(), &gens)
    }

    /// A basis of a complement of this (saturated) lattice inside `outer`:
    /// vectors `c_1..c_d` such that `basis ∪ {c_j}` is a basis of `outer`.
    /// Returned in ambient coordinates.
    pub fn complement_in(&self, outer: &Sublattice) -> Result<Vec<Vec<i64>>, LatticeError> {
        let inner = self.in_coordinates_of(outer)?;
        let d = outer.rank();
        if !inner.is_saturated() {
            return Err(LatticeError::Invalid("quotient is not torsion-free".into()));
        }
        let b: Vec<Vec<i128>> = inner
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let red = column_reduce(&b, d);
        // rows of V^{-1} beyond the rank complete the inner basis
        Ok(red.v_inv[inner.rank()..]
            .iter()
            .map(|row| outer.from_coords(&row.iter().map(|&x| to_i64(x)).collect::<Vec<_>>()))
            .collect())
    }
}

/// Row-style Hermite normal form; zero rows are dropped.
pub fn hnf_rows(gens: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = gens
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at rows >= r
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if m[i][c] != 0 && best.map(|b| m[i][c].abs() < m[b][c].abs()).unwrap_or(true) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let q = Integer::div_floor(&m[i][c], &m[r][c]);
                    for j in 0..ncols {
                        m[i][j] -= q * m[r][j];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && m[r][c] != 0 {
            if m[r][c] < 0 {
                for x in m[r].iter_mut() {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = Integer::div_floor(&m[i][c], &m[r][c]);
                if q != 0 {
                    for j in 0..ncols {
                        m[i][j] -= q * m[r][j];
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m.into_iter().map(|row| row.into_iter().map(to_i64).collect()).collect()
}

pub(crate) struct ColumnReduction {
    pub rank: usize,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

/// Unimodular column reduction `A·V = [echelon | 0]`, tracking `V` and `V⁻¹`.
pub(crate) fn column_reduce(a: &[Vec<i128>], ncols: usize) -> ColumnReduction {
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let ident = |n: usize| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
    };
    let mut v = ident(ncols);
    let mut w = ident(ncols);
    let mut c = 0;
    for row in 0..a.len() {
        if c >= ncols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in c..ncols {
                if a[row][j] != 0 && best.map(|b| a[row][j].abs() < a[row][b].abs()).unwrap_or(true) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            if b != c {
                for r in a.iter_mut() {
                    r.swap(b, c);
                }
                for r in v.iter_mut() {
                    r.swap(b, c);
                }
                w.swap(b, c);
            }
            let mut done = true;
            for j in c + 1..ncols {
                if a[row][j] != 0 {
                    let q = Integer::div_floor(&a[row][j], &a[row][c]);
                    // col_j -= q col_c
                    for r in a.iter_mut() {
                        r[j] -= q * r[c];
                    }
                    for r in v.iter_mut() {
                        r[j] -= q * r[c];
                    }
                    // inverse: row_c += q row_j
                    for k in 0..ncols {
                        w[c][k] += q * w[j][k];
                    }
                    if a[row][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[row][c] != 0 {
            c += 1;
        }
    }
    ColumnReduction { rank: c, v, v_inv: w }
}

/// Basis of `{x ∈ ℤ^ncols : A x = 0}` (always saturated).
pub fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let a: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let red = column_reduce(&a, ncols);
    (red.rank..ncols)
        .map(|j| red.v.iter().map(|row| to_i64(row[j])).collect())
        .collect()
}

pub fn integer_rank(a: &[Vec<i64>], ncols: usize) -> usize {
    let a: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    column_reduce(&a, ncols).rank
}

/// Inverse of a square integer matrix over ℚ.
pub fn rational_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Clears denominators of a rational vector by a positive factor and divides
/// by the gcd of the result.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<i64> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().expect("weight exceeds 64 bits")
        })
        .collect()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

/// The monomial `x^v` for a lattice vector.
pub fn monomial(v: &[i64]) -> Monomial {
    Monomial(v.to_vec())
}

pub fn rational_det(a: &[Vec<i64>]) -> BigRational {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn hnf_and_index() {
        let l = Sublattice::new(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.index(), Some(2));
        assert!(l.contains(&[3, 1]));
        assert!(!l.contains(&[1, 0]));
        assert_eq!(l.coset_reps().unwrap(), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn reduce_lands_in_box() {
        let l = Sublattice::new(2, &[vec![2, 1], vec![0, 3]]).unwrap();
        for x in -5..5 {
            for y in -5..5 {
                let (rep, h) = l.reduce(&[x, y]);
                assert!(l.contains(&h));
                assert!(l.coset_reps().unwrap().contains(&rep));
            }
        }
    }

    #[test]
    fn kernel_and_saturation() {
        let k = integer_kernel(&[vec![1, 2]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0] + 2 * k[0][1], 0);
        assert_eq!(gcd_vec(&k[0]).abs(), 1);
        let l = Sublattice::new(2, &[vec![2, 4]]).unwrap();
        assert!(!l.is_saturated());
        assert_eq!(l.saturation(), Sublattice::new(2, &[vec![1, 2]]).unwrap());
    }

    #[test]
    fn intersection() {
        let a = Sublattice::scalar(2, 2);
        let b = Sublattice::new(2, &[vec![1, 1], vec![0, 3]]).unwrap();
        let c = a.intersect(&b);
        assert_eq!(c.index(), Some(12));
        assert!(a.contains_lattice(&c) && b.contains_lattice(&c));
    }

    #[test]
    fn complement_completes_a_basis() {
        let inner = Sublattice::new(3, &[vec![1, 2, 3]]).unwrap();
        let comp = inner.complement_in(&Sublattice::full(3)).unwrap();
        let mut all = inner.basis().to_vec();
        all.extend(comp);
        assert_eq!(rational_det(&all).abs(), BigRational::one());
        assert!(Sublattice::new(2, &[vec![2, 0]])
            .unwrap()
            .complement_in(&Sublattice::full(2))
            .is_err());
    }
}
