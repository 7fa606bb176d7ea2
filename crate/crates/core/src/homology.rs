//! Finite free chain complexes, Betti numbers over the fraction field,
//! Smith normal form over division rings, and Novikov homology verdicts.
//!
//! Novikov homology over F G^ψ is decided by Gaussian cancellation of unit
//! entries. An entry is a unit of F G^ψ exactly when its ψ-leading slab is a
//! single monomial. Cancelling `u` at `(i, j)` of `A_k` replaces the rest of
//! `A_k` by the Schur complement scaled by `u`, deletes row `j` of `A_{k+1}`
//! and column `i` of `A_{k-1}`; the result is isomorphic over F G^ψ.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::crossed::{regular_matrix, to_sub_coordinates, CosetSection, CrossedError};
use crate::fraction::{laurent_det, laurent_rank, Fraction};
use crate::lattice::{self, Sublattice};
use crate::laurent::{LaurentPoly, Monomial};
use crate::orders::Character;
use crate::ring::{Matrix, Ring};
use crate::series::NovikovSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("differential A_{k} has shape {got:?}, expected {expected:?}")]
    Shape {
        k: usize,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("A_{0}·A_{1} is not zero", k - 1, k)]
    NotAComplex { k: usize },
    #[error("the zero character has no Novikov ring")]
    ZeroCharacter,
    #[error("character has rank {got}, complex is over ℤ^{expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("no unit pivot within window {window}")]
    NoUnitPivot { window: i64 },
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
}

/// `0 ← C_0 ← C_1 ← … ← C_N` with `C_k` free of rank `n_k` and `A_k` an
/// `n_{k-1} × n_k` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeChainComplex<R: Ring> {
    proto: R,
    ranks: Vec<usize>,
    diffs: Vec<Matrix<R>>,
}

impl<R: Ring> FreeChainComplex<R> {
    /// `diffs[k-1]` is `A_k`; checks shapes and `A_{k-1}·A_k = 0`.
    pub fn new(proto: &R, ranks: Vec<usize>, diffs: Vec<Matrix<R>>) -> Result<Self, HomologyError> {
        for (idx, a) in diffs.iter().enumerate() {
            let k = idx + 1;
            let expected = (ranks.get(k - 1).copied().unwrap_or(0), ranks.get(k).copied().unwrap_or(0));
            if a.shape() != expected || k >= ranks.len() {
                return Err(HomologyError::Shape { k, expected, got: a.shape() });
            }
        }
        if diffs.len() + 1 < ranks.len() {
            let k = diffs.len() + 1;
            return Err(HomologyError::Shape {
                k,
                expected: (ranks[k - 1], ranks[k]),
                got: (0, 0),
            });
        }
        for k in 2..=diffs.len() {
            let prod = diffs[k - 2].checked_mul(&diffs[k - 1]).expect("shapes checked");
            if !prod.is_zero() {
                return Err(HomologyError::NotAComplex { k });
            }
        }
        Ok(FreeChainComplex {
            proto: proto.zero_like(),
            ranks,
            diffs,
        })
    }

    /// For callers whose construction already guarantees `d² = 0`.
    pub(crate) fn from_parts_unchecked(proto: &R, ranks: Vec<usize>, diffs: Vec<Matrix<R>>) -> Self {
        FreeChainComplex {
            proto: proto.zero_like(),
            ranks,
            diffs,
        }
    }

    pub fn proto(&self) -> &R {
        &self.proto
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `N`, the top degree.
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// `A_k` for `1 ≤ k ≤ N`.
    pub fn diff(&self, k: usize) -> &Matrix<R> {
        &self.diffs[k - 1]
    }

    pub fn diffs(&self) -> &[Matrix<R>] {
        &self.diffs
    }

    /// Degreewise direct sum; the shorter complex is padded with zeros.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let len = self.ranks.len().max(other.ranks.len());
        let r = |c: &Self, k: usize| c.ranks.get(k).copied().unwrap_or(0);
        let ranks: Vec<usize> = (0..len).map(|k| r(self, k) + r(other, k)).collect();
        let pick = |c: &Self, k: usize| {
            if k <= c.diffs.len() {
                c.diffs[k - 1].clone()
            } else {
                Matrix::zeros(r(c, k - 1), r(c, k), &self.proto)
            }
        };
        let diffs = (1..len).map(|k| Matrix::block_diag(&pick(self, k), &pick(other, k))).collect();
        FreeChainComplex {
            proto: self.proto.clone(),
            ranks,
            diffs,
        }
    }

    /// Applies a ring homomorphism to every entry.
    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, proto: &S, f: F) -> FreeChainComplex<S> {
        FreeChainComplex {
            proto: proto.zero_like(),
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|a| a.map(proto, &f)).collect(),
        }
    }
}

pub type LaurentComplex = FreeChainComplex<LaurentPoly>;

impl LaurentComplex {
    pub fn rank(&self) -> usize {
        self.proto.rank()
    }

    pub fn field(&self) -> crate::scalar::FieldSpec {
        self.proto.field()
    }
}

fn rank_of(c: &LaurentComplex, k: usize) -> usize {
    if k == 0 || k > c.diffs.len() {
        0
    } else {
        laurent_rank(&c.diffs[k - 1])
    }
}

/// `b_k = n_k − rank A_k − rank A_{k+1}` over Frac(F[ℤⁿ]).
pub fn betti_over_fractions(c: &LaurentComplex) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=c.ranks.len()).map(|k| rank_of(c, k)).collect();
    (0..c.ranks.len()).map(|k| c.ranks[k] - ranks[k] - ranks[k + 1]).collect()
}

/// `P·M·Q = D` with `D` holding `rank` leading ones on its diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<R: Ring> {
    pub p: Matrix<R>,
    pub d: Matrix<R>,
    pub q: Matrix<R>,
    pub rank: usize,
}

/// Smith normal form over a division ring, pivoting only on entries for
/// which `pivot_key` returns `Some`; the smallest key wins, ties go to the
/// first entry in row-major order. Fails with `NoUnitPivot` when nonzero
/// entries remain but none is admissible.
pub fn smith_normal_form<R: Ring, K: Ord, F: Fn(&R) -> Option<K>>(
    m: &Matrix<R>,
    pivot_key: F,
    window: i64,
) -> Result<SmithForm<R>, HomologyError> {
    let (rows, cols) = m.shape();
    let proto = m.proto().clone();
    let mut a = m.clone();
    let mut p = Matrix::identity(rows, &proto);
    let mut q = Matrix::identity(cols, &proto);
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best: Option<(K, usize, usize)> = None;
        let mut any_nonzero = false;
        for i in rank..rows {
            for j in rank..cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                any_nonzero = true;
                if let Some(k) = pivot_key(x) {
                    if best.as_ref().is_none_or(|(bk, _, _)| k < *bk) {
                        best = Some((k, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            if any_nonzero {
                return Err(HomologyError::NoUnitPivot { window });
            }
            break;
        };
        swap_rows(&mut a, rank, pi);
        swap_rows(&mut p, rank, pi);
        swap_cols(&mut a, rank, pj);
        swap_cols(&mut q, rank, pj);
        let inv = a.get(rank, rank).unit_inverse().ok_or(HomologyError::NoUnitPivot { window })?;
        scale_row(&mut a, rank, &inv);
        scale_row(&mut p, rank, &inv);
        for i in 0..rows {
            if i != rank && !a.get(i, rank).is_zero() {
                let f = a.get(i, rank).clone();
                add_row_multiple(&mut a, i, rank, &f);
                add_row_multiple(&mut p, i, rank, &f);
            }
        }
        for j in 0..cols {
            if j != rank && !a.get(rank, j).is_zero() {
                let f = a.get(rank, j).clone();
                add_col_multiple(&mut a, j, rank, &f);
                add_col_multiple(&mut q, j, rank, &f);
            }
        }
        rank += 1;
    }
    let mut d = Matrix::zeros(rows, cols, &proto);
    for i in 0..rank {
        d.set(i, i, proto.one_like());
    }
    Ok(SmithForm { p, d, q, rank })
}

fn swap_rows<R: Ring>(m: &mut Matrix<R>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols<R: Ring>(m: &mut Matrix<R>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn scale_row<R: Ring>(m: &mut Matrix<R>, r: usize, s: &R) {
    for j in 0..m.cols() {
        let v = s.times(m.get(r, j));
        m.set(r, j, v);
    }
}

// row_i -= f · row_src
fn add_row_multiple<R: Ring>(m: &mut Matrix<R>, i: usize, src: usize, f: &R) {
    for j in 0..m.cols() {
        let v = m.get(i, j).minus(&f.times(m.get(src, j)));
        m.set(i, j, v);
    }
}

// col_j -= f · col_src
fn add_col_multiple<R: Ring>(m: &mut Matrix<R>, j: usize, src: usize, f: &R) {
    for i in 0..m.rows() {
        let v = m.get(i, j).minus(&m.get(i, src).times(f));
        m.set(i, j, v);
    }
}

/// Smith normal form over Frac(F[ℤⁿ]), pivoting on the entry with the
/// fewest terms.
pub fn smith_over_fractions(m: &Matrix<Fraction>) -> SmithForm<Fraction> {
    smith_normal_form(m, |x: &Fraction| Some(x.num().num_terms() + x.den().num_terms()), 0)
        .expect("every nonzero fraction is a unit")
}

/// Smith normal form over a Novikov window, pivoting on unit-leading entries
/// of minimal valuation.
pub fn smith_over_novikov(m: &Matrix<NovikovSeries>, window: i64) -> Result<SmithForm<NovikovSeries>, HomologyError> {
    smith_normal_form(
        m,
        |x: &NovikovSeries| match x.leading_slab() {
            Ok((v, slab)) if slab.is_unit() => Some(v),
            _ => None,
        },
        window,
    )
}

/// Why a Novikov homology group is known to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The fraction-field Betti number is positive, and it bounds the
    /// Novikov rank from below.
    FractionBetti { betti: usize },
    /// `H_i` is the cokernel of a square residual matrix whose determinant
    /// has a non-monomial leading slab, so the matrix is not invertible.
    DeterminantSlab { degree: i64, slab: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DegreeStatus {
    VanishesExactly,
    /// Free of the given rank within the stated window.
    FreeOfRank { rank: usize, window: i64 },
    Nonvanishing { witness: Witness },
    Inconclusive { window: i64 },
}

impl DegreeStatus {
    pub fn vanishes(&self) -> bool {
        matches!(self, DegreeStatus::VanishesExactly)
    }

    /// The Novikov rank when it is determined.
    pub fn known_rank(&self) -> Option<usize> {
        match self {
            DegreeStatus::VanishesExactly => Some(0),
            DegreeStatus::FreeOfRank { rank, .. } => Some(*rank),
            _ => None,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, DegreeStatus::Inconclusive { .. })
    }
}

impl fmt::Display for DegreeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeStatus::VanishesExactly => write!(f, "vanishes"),
            DegreeStatus::FreeOfRank { rank, window } => write!(f, "free of rank {rank} within window {window}"),
            DegreeStatus::Nonvanishing { witness: Witness::FractionBetti { betti } } => {
                write!(f, "nonvanishing (fraction Betti {betti})")
            }
            DegreeStatus::Nonvanishing {
                witness: Witness::DeterminantSlab { slab, .. },
            } => write!(f, "nonvanishing (determinant slab {slab} is not a unit)"),
            DegreeStatus::Inconclusive { window } => write!(f, "inconclusive at window {window}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberVerdict {
    pub psi: Vec<i64>,
    pub degree_bound: usize,
    pub statuses: Vec<DegreeStatus>,
    /// Ranks of the complex left after cancelling unit entries.
    pub residual_ranks: Vec<usize>,
}

impl FiberVerdict {
    pub fn all_vanish(&self) -> bool {
        self.statuses.iter().all(DegreeStatus::vanishes)
    }

    pub fn has_inconclusive(&self) -> bool {
        self.statuses.iter().any(DegreeStatus::is_inconclusive)
    }
}

fn is_unit_for(f: &LaurentPoly, psi: &Character) -> Option<i64> {
    let (v, slab) = f.min_face(&psi.weights)?;
    slab.is_unit().then_some(v)
}

struct Residual {
    ranks: Vec<usize>,
    // diffs[k] = A_k for k = 1..=len, index k-1
    diffs: Vec<Vec<Vec<LaurentPoly>>>,
}

fn cancel_units(c: &LaurentComplex, psi: &Character, upto: usize) -> Residual {
    let top = upto.min(c.top());
    let mut ranks: Vec<usize> = c.ranks[..=top.min(c.top())].to_vec();
    let mut diffs: Vec<Vec<Vec<LaurentPoly>>> = (1..=top).map(|k| c.diff(k).data().to_vec()).collect();
    loop {
        let mut best: Option<(i64, usize, usize, usize)> = None;
        for k in 1..=top {
            for (i, row) in diffs[k - 1].iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if let Some(v) = is_unit_for(x, psi) {
                        if best.is_none_or(|(bv, ..)| v < bv) {
                            best = Some((v, k, i, j));
                        }
                    }
                }
            }
        }
        let Some((_, k, i, j)) = best else { break };
        let a = &diffs[k - 1];
        let u = a[i][j].clone();
        let mut next = Vec::with_capacity(a.len().saturating_sub(1));
        for (r, row) in a.iter().enumerate() {
            if r == i {
                continue;
            }
            let mut new_row = Vec::with_capacity(row.len().saturating_sub(1));
            for (cc, x) in row.iter().enumerate() {
                if cc == j {
                    continue;
                }
                new_row.push(&(&u * x) - &(&row[j] * &a[i][cc]));
            }
            next.push(new_row);
        }
        diffs[k - 1] = next;
        if k < top {
            diffs[k].remove(j);
        }
        if k >= 2 {
            for row in diffs[k - 2].iter_mut() {
                row.remove(i);
            }
        }
        ranks[k] -= 1;
        ranks[k - 1] -= 1;
    }
    Residual { ranks, diffs }
}

fn residual_is_zero(res: &Residual, k: usize) -> bool {
    if k == 0 || k > res.diffs.len() {
        return true;
    }
    res.diffs[k - 1].iter().flatten().all(LaurentPoly::is_zero)
}

/// Novikov homology over F G^ψ in degrees `0..=n`, decided exactly.
///
/// After cancelling unit entries, degree `i` is classified by its residual
/// rank `c_i`, the residual differentials around it, and the fraction-field
/// Betti number `b_i`. `window` is only reported in `FreeOfRank`.
pub fn novikov_homology(c: &LaurentComplex, psi: &Character, n: usize, window: i64) -> Result<FiberVerdict, HomologyError> {
    if psi.rank() != c.rank() {
        return Err(HomologyError::RankMismatch {
            expected: c.rank(),
            got: psi.rank(),
        });
    }
    if psi.is_zero() {
        return Err(HomologyError::ZeroCharacter);
    }
    let betti = betti_over_fractions(c);
    let res = cancel_units(c, psi, n + 1);
    let mut statuses = Vec::with_capacity(n + 1);
    let mut residual_ranks = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ci = res.ranks.get(i).copied().unwrap_or(0);
        residual_ranks.push(ci);
        let b = betti.get(i).copied().unwrap_or(0);
        let below_zero = residual_is_zero(&res, i);
        let above_zero = residual_is_zero(&res, i + 1);
        let status = if ci == 0 {
            DegreeStatus::VanishesExactly
        } else if below_zero && above_zero {
            DegreeStatus::FreeOfRank { rank: ci, window }
        } else if b > 0 {
            DegreeStatus::Nonvanishing {
                witness: Witness::FractionBetti { betti: b },
            }
        } else if above_zero {
            // rank A_i = c_i, so A_i is injective over the domain F G^ψ
            DegreeStatus::VanishesExactly
        } else if below_zero && res.ranks[i + 1] == ci {
            let a = &res.diffs[i];
            let proto = c.proto();
            let m = Matrix::from_rows(ci, ci, a.clone(), proto).expect("square residual");
            let det = laurent_det(&m);
            let (v, slab) = det.min_face(&psi.weights).expect("b_i = 0 forces det ≠ 0");
            if slab.is_unit() {
                DegreeStatus::VanishesExactly
            } else {
                DegreeStatus::Nonvanishing {
                    witness: Witness::DeterminantSlab {
                        degree: v,
                        slab: slab.to_string(),
                    },
                }
            }
        } else if below_zero && maximal_minor_is_unit(&res.diffs[i], ci, psi) {
            DegreeStatus::VanishesExactly
        } else {
            DegreeStatus::Inconclusive { window }
        };
        statuses.push(status);
    }
    Ok(FiberVerdict {
        psi: psi.weights.clone(),
        degree_bound: n,
        statuses,
        residual_ranks,
    })
}

// a c×m matrix with a unit c×c minor is surjective
fn maximal_minor_is_unit(a: &[Vec<LaurentPoly>], c: usize, psi: &Character) -> bool {
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    if m < c || m > 12 {
        return false;
    }
    let proto = a[0][0].zero_like();
    let mut cols: Vec<usize> = (0..c).collect();
    loop {
        let rows: Vec<Vec<LaurentPoly>> = a.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        let det = laurent_det(&Matrix::from_rows(c, c, rows, &proto).unwrap());
        if det.min_face(&psi.weights).is_some_and(|(_, s)| s.is_unit()) {
            return true;
        }
        // next c-combination of 0..m
        let mut i = c;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if cols[i] < m - c + i {
                cols[i] += 1;
                for j in i + 1..c {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The same verdict computed in Novikov-series arithmetic: unit-pivot
/// elimination with true inverses, then the residual determinant as a
/// series. Residual zeros are certified by the fraction-field rank count.
pub fn novikov_homology_windowed(c: &LaurentComplex, psi: &Character, n: usize, window: i64) -> Result<FiberVerdict, HomologyError> {
    if psi.rank() != c.rank() {
        return Err(HomologyError::RankMismatch {
            expected: c.rank(),
            got: psi.rank(),
        });
    }
    if psi.is_zero() {
        return Err(HomologyError::ZeroCharacter);
    }
    let betti = betti_over_fractions(c);
    let top = (n + 1).min(c.top());
    let mut ranks: Vec<usize> = c.ranks[..=top].to_vec();
    let mut diffs: Vec<Vec<Vec<NovikovSeries>>> = (1..=top)
        .map(|k| {
            c.diff(k)
                .data()
                .iter()
                .map(|row| row.iter().map(|x| NovikovSeries::from_poly(x, psi, window).unwrap()).collect())
                .collect()
        })
        .collect();
    let unit_key = |x: &NovikovSeries| match x.leading_slab() {
        Ok((v, slab)) if slab.is_unit() => Some(v),
        _ => None,
    };
    loop {
        let mut best: Option<(i64, usize, usize, usize)> = None;
        for k in 1..=top {
            for (i, row) in diffs[k - 1].iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if let Some(v) = unit_key(x) {
                        if best.is_none_or(|(bv, ..)| v < bv) {
                            best = Some((v, k, i, j));
                        }
                    }
                }
            }
        }
        let Some((_, k, i, j)) = best else { break };
        let a = &diffs[k - 1];
        let uinv = a[i][j].unit_inverse().ok_or(HomologyError::NoUnitPivot { window })?;
        let mut next = Vec::new();
        for (r, row) in a.iter().enumerate() {
            if r == i {
                continue;
            }
            let factor = row[j].times(&uinv);
            let new_row = row
                .iter()
                .enumerate()
                .filter(|(cc, _)| *cc != j)
                .map(|(cc, x)| x.minus(&factor.times(&a[i][cc])))
                .collect();
            next.push(new_row);
        }
        diffs[k - 1] = next;
        if k < top {
            diffs[k].remove(j);
        }
        if k >= 2 {
            for row in diffs[k - 2].iter_mut() {
                row.remove(i);
            }
        }
        ranks[k] -= 1;
        ranks[k - 1] -= 1;
    }
    let zero_at = |k: usize| k == 0 || k > diffs.len() || diffs[k - 1].iter().flatten().all(|x| x.is_zero());
    // rank over the fraction field is preserved by the elimination
    let frac_rank = |k: usize| rank_of(c, k);
    let mut statuses = Vec::new();
    let mut residual_ranks = Vec::new();
    for i in 0..=n {
        let ci = ranks.get(i).copied().unwrap_or(0);
        residual_ranks.push(ci);
        let b = betti.get(i).copied().unwrap_or(0);
        let eliminated_below = c.ranks.get(i).copied().unwrap_or(0) - ci;
        let status = if ci == 0 {
            DegreeStatus::VanishesExactly
        } else if b > 0 {
            if zero_at(i) && zero_at(i + 1) && frac_rank(i) + frac_rank(i + 1) == eliminated_below {
                DegreeStatus::FreeOfRank { rank: ci, window }
            } else {
                DegreeStatus::Nonvanishing {
                    witness: Witness::FractionBetti { betti: b },
                }
            }
        } else if i + 1 > top || (zero_at(i + 1) && frac_rank(i + 1) == c.ranks[i + 1] - ranks[i + 1]) {
            DegreeStatus::VanishesExactly
        } else if zero_at(i) && ranks[i + 1] == ci {
            match series_det(&diffs[i]) {
                Some(det) if !det.is_zero() => {
                    let (v, slab) = det.leading_slab().unwrap();
                    if slab.is_unit() {
                        DegreeStatus::VanishesExactly
                    } else {
                        DegreeStatus::Nonvanishing {
                            witness: Witness::DeterminantSlab {
                                degree: v,
                                slab: slab.to_string(),
                            },
                        }
                    }
                }
                _ => DegreeStatus::Inconclusive { window },
            }
        } else {
            DegreeStatus::Inconclusive { window }
        };
        statuses.push(status);
    }
    Ok(FiberVerdict {
        psi: psi.weights.clone(),
        degree_bound: n,
        statuses,
        residual_ranks,
    })
}

// Laplace expansion; residual blocks are small
fn series_det(a: &[Vec<NovikovSeries>]) -> Option<NovikovSeries> {
    let n = a.len();
    if n == 0 || n > 6 {
        return None;
    }
    if n == 1 {
        return Some(a[0][0].clone());
    }
    let mut acc: Option<NovikovSeries> = None;
    for j in 0..n {
        let minor: Vec<Vec<NovikovSeries>> = a[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a[0][j].times(&series_det(&minor)?);
        let term = if j % 2 == 1 { term.negated() } else { term };
        acc = Some(match acc {
            None => term,
            Some(s) => s.plus(&term),
        });
    }
    acc
}

/// Novikov verdicts for `ψ` and `−ψ`; `fibered` holds when both vanish in
/// every degree `≤ n`, i.e. the complex is of type FP_n over F[ker ψ].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberingReport {
    pub psi: Vec<i64>,
    pub degree_bound: usize,
    pub plus: FiberVerdict,
    pub minus: FiberVerdict,
    pub fibered: bool,
}

impl FiberingReport {
    pub fn has_inconclusive(&self) -> bool {
        self.plus.has_inconclusive() || self.minus.has_inconclusive()
    }
}

pub fn fibering_check(c: &LaurentComplex, psi: &Character, n: usize, window: i64) -> Result<FiberingReport, HomologyError> {
    let plus = novikov_homology(c, psi, n, window)?;
    let minus = novikov_homology(c, &psi.neg(), n, window)?;
    let fibered = plus.all_vanish() && minus.all_vanish();
    Ok(FiberingReport {
        psi: psi.weights.clone(),
        degree_bound: n,
        plus,
        minus,
        fibered,
    })
}

/// All primitive integer vectors in `[-k, k]^n`, in lexicographic order.
pub fn primitive_rays(n: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-k; n];
    if n == 0 {
        return out;
    }
    loop {
        if lattice::gcd_vec(&v) == 1 {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < k {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = -k;
                }
                break;
            }
        }
    }
}

/// `novikov_homology` along each ray (one-sided), computed in parallel and
/// keyed by ray.
pub fn bns_cone_sample(
    c: &LaurentComplex,
    n: usize,
    rays: &[Vec<i64>],
    window: i64,
) -> Result<BTreeMap<Vec<i64>, FiberVerdict>, HomologyError> {
    for r in rays {
        if lattice::gcd_vec(r) != 1 {
            return Err(HomologyError::ZeroCharacter);
        }
    }
    let results: Vec<Result<(Vec<i64>, FiberVerdict), HomologyError>> = rays
        .par_iter()
        .map(|r| novikov_homology(c, &Character::new(r.clone()), n, window).map(|v| (r.clone(), v)))
        .collect();
    results.into_iter().collect()
}

/// Restriction of scalars to `F[H]`: every entry becomes its `m×m` regular
/// matrix, rewritten in the coordinates of `H`'s basis.
pub fn restrict_to_sublattice(c: &LaurentComplex, section: &CosetSection) -> LaurentComplex {
    let sub = section.sublattice();
    let m = section.index();
    let proto = LaurentPoly::zero(sub.rank(), c.field());
    let diffs = c
        .diffs
        .iter()
        .map(|a| {
            let blocks: Vec<Vec<Matrix<LaurentPoly>>> = (0..a.rows())
                .map(|i| {
                    (0..a.cols())
                        .map(|j| {
                            regular_matrix(a.get(i, j), section)
                                .map(&proto, |x| to_sub_coordinates(x, sub).expect("entries lie in H"))
                        })
                        .collect()
                })
                .collect();
            Matrix::from_blocks(&blocks, &vec![m; a.rows()], &vec![m; a.cols()], &proto)
        })
        .collect();
    FreeChainComplex {
        proto,
        ranks: c.ranks.iter().map(|r| r * m).collect(),
        diffs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VcReport {
    pub index: usize,
    pub psi: Vec<i64>,
    pub fraction_betti: Vec<usize>,
    pub expected: Vec<usize>,
    pub plus_ranks: Vec<Option<usize>>,
    pub minus_ranks: Vec<Option<usize>>,
    pub holds: bool,
}

/// Compares the Novikov ranks of the restriction to `H` along `±ψ` (ψ in
/// `H`-coordinates) with `[ℤⁿ:H]·b_i` over the fraction field.
pub fn vc_rank_check(c: &LaurentComplex, h: &Sublattice, psi: &Character, window: i64) -> Result<VcReport, HomologyError> {
    let section = CosetSection::standard(h)?;
    let m = section.index();
    let restricted = restrict_to_sublattice(c, &section);
    let betti = betti_over_fractions(c);
    let n = c.top();
    let plus = novikov_homology(&restricted, psi, n, window)?;
    let minus = novikov_homology(&restricted, &psi.neg(), n, window)?;
    let expected: Vec<usize> = betti.iter().map(|b| m * b).collect();
    let plus_ranks: Vec<Option<usize>> = plus.statuses.iter().map(DegreeStatus::known_rank).collect();
    let minus_ranks: Vec<Option<usize>> = minus.statuses.iter().map(DegreeStatus::known_rank).collect();
    let holds = expected
        .iter()
        .zip(plus_ranks.iter().zip(&minus_ranks))
        .all(|(e, (p, q))| *p == Some(*e) && *q == Some(*e));
    Ok(VcReport {
        index: m,
        psi: psi.weights.clone(),
        fraction_betti: betti,
        expected,
        plus_ranks,
        minus_ranks,
        holds,
    })
}

/// A one-differential complex `C_1 → C_0`.
pub fn single_map_complex(a: Matrix<LaurentPoly>) -> LaurentComplex {
    let proto = a.proto().clone();
    FreeChainComplex::new(&proto, vec![a.rows(), a.cols()], vec![a]).expect("one map is a complex")
}

/// `x^e − 1`.
pub fn monomial_minus_one(e: &[i64], field: crate::scalar::FieldSpec) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(Monomial(e.to_vec()), field.one());
    p.add_term(Monomial::zero(e.len()), field.from_i64(-1));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn p(s: &str, f: FieldSpec) -> LaurentPoly {
        LaurentPoly::parse(s, &["t", "s"], f).unwrap()
    }

    fn p1(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &["t"], FieldSpec::Rationals).unwrap()
    }

    fn circle() -> LaurentComplex {
        let one = p1("1");
        single_map_complex(Matrix::from_rows(1, 1, vec![vec![p1("t-1")]], &one).unwrap())
    }

    fn zero_diff() -> LaurentComplex {
        single_map_complex(Matrix::zeros(1, 1, &p1("1")))
    }

    fn koszul(f: FieldSpec) -> LaurentComplex {
        let one = p("1", f);
        let a1 = Matrix::from_rows(1, 2, vec![vec![p("t-1", f), p("s-1", f)]], &one).unwrap();
        let a2 = Matrix::from_rows(2, 1, vec![vec![p("s-1", f)], vec![p("1-t", f)]], &one).unwrap();
        FreeChainComplex::new(&one, vec![1, 2, 1], vec![a1, a2]).unwrap()
    }

    #[test]
    fn complex_validation() {
        let one = p1("1");
        let a1 = Matrix::from_rows(1, 1, vec![vec![p1("t-1")]], &one).unwrap();
        let a2 = Matrix::from_rows(1, 1, vec![vec![p1("1")]], &one).unwrap();
        assert_eq!(
            FreeChainComplex::new(&one, vec![1, 1, 1], vec![a1.clone(), a2]),
            Err(HomologyError::NotAComplex { k: 2 })
        );
        assert!(matches!(
            FreeChainComplex::new(&one, vec![2, 1], vec![a1]),
            Err(HomologyError::Shape { .. })
        ));
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_over_fractions(&circle()), vec![0, 0]);
        assert_eq!(betti_over_fractions(&zero_diff()), vec![1, 1]);
        assert_eq!(betti_over_fractions(&koszul(FieldSpec::Rationals)), vec![0, 0, 0]);
    }

    #[test]
    fn smith_examples() {
        let q = FieldSpec::Rationals;
        let fr = |s: &str| Fraction::from_poly(p(s, q));
        let one = fr("1");
        let m = Matrix::from_rows(1, 2, vec![vec![fr("t-1"), fr("s-1")]], &one).unwrap();
        let snf = smith_over_fractions(&m);
        assert_eq!(snf.rank, 1);
        let back = snf.p.checked_mul(&m).unwrap().checked_mul(&snf.q).unwrap();
        assert_eq!(back, snf.d);
        let z = Matrix::zeros(2, 2, &one);
        assert_eq!(smith_over_fractions(&z).rank, 0);
        let single = Matrix::from_rows(1, 1, vec![vec![Fraction::from_poly(p1("t-1"))]], &Fraction::one(1, q)).unwrap();
        assert_eq!(smith_over_fractions(&single).d, Matrix::identity(1, &Fraction::one(1, q)));
    }

    #[test]
    fn novikov_examples() {
        for sign in [1, -1] {
            let v = novikov_homology(&circle(), &Character::new(vec![sign]), 1, 8).unwrap();
            assert!(v.all_vanish());
        }
        let f2 = FieldSpec::PrimeField(2);
        let one = p("1", f2);
        let c = single_map_complex(Matrix::from_rows(1, 1, vec![vec![p("t-1-s", f2)]], &one).unwrap());
        let v = novikov_homology(&c, &Character::new(vec![1, 0]), 1, 8).unwrap();
        assert_eq!(
            v.statuses[0],
            DegreeStatus::Nonvanishing {
                witness: Witness::DeterminantSlab {
                    degree: 0,
                    slab: p("1+s", f2).to_string()
                }
            }
        );
        assert!(novikov_homology(&c, &Character::new(vec![1, 1]), 1, 8).unwrap().all_vanish());
        let v = novikov_homology(&zero_diff(), &Character::new(vec![1]), 1, 8).unwrap();
        assert_eq!(v.statuses, vec![DegreeStatus::FreeOfRank { rank: 1, window: 8 }; 2]);
    }

    #[test]
    fn bns_sample_of_a_triangle() {
        let f2 = FieldSpec::PrimeField(2);
        let one = p("1", f2);
        let c = single_map_complex(Matrix::from_rows(1, 1, vec![vec![p("t-1-s", f2)]], &one).unwrap());
        let rays = primitive_rays(2, 3);
        let out = bns_cone_sample(&c, 1, &rays, 8).unwrap();
        let bad: Vec<Vec<i64>> = out.iter().filter(|(_, v)| !v.all_vanish()).map(|(r, _)| r.clone()).collect();
        assert_eq!(bad, vec![vec![-1, -1], vec![0, 1], vec![1, 0]]);
        let k = bns_cone_sample(&koszul(f2), 1, &rays, 8).unwrap();
        assert!(k.values().all(FiberVerdict::all_vanish));
    }

    #[test]
    fn windowed_route_agrees_on_fixtures() {
        let q = FieldSpec::Rationals;
        let one = p("1", q);
        let m = Matrix::from_rows(2, 2, vec![vec![p("1+s", q), p("1-s", q)], vec![p("1-s", q), p("1+s", q)]], &one).unwrap();
        let c = single_map_complex(m);
        let psi = Character::new(vec![1, 0]);
        let exact = novikov_homology(&c, &psi, 1, 8).unwrap();
        let windowed = novikov_homology_windowed(&c, &psi, 1, 8).unwrap();
        assert!(exact.all_vanish());
        assert_eq!(exact.statuses, windowed.statuses);
    }

    #[test]
    fn vc_rank_examples() {
        for (m, c) in [(2, zero_diff()), (2, circle()), (3, circle().direct_sum(&zero_diff()))] {
            let h = Sublattice::scalar(1, m);
            let r = vc_rank_check(&c, &h, &Character::new(vec![1]), 12).unwrap();
            assert!(r.holds, "{r:?}");
        }
        let r = vc_rank_check(&zero_diff(), &Sublattice::scalar(1, 2), &Character::new(vec![1]), 12).unwrap();
        assert_eq!(r.plus_ranks, vec![Some(2), Some(2)]);
    }
}
