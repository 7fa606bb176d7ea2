//! Homology of finite lattice quotients: specialization of a complex over
//! F[ℤⁿ] at ℤⁿ/L, normalized Betti numbers, and tower envelopes.
//!
//! All quantities are tower-relative: only the covers listed in a
//! `QuotientTower` are sampled.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::crossed::{CosetSection, CrossedError};
use crate::homology::{betti_over_fractions, restrict_to_sublattice, FreeChainComplex, LaurentComplex};
use crate::lattice::{LatticeError, Sublattice};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::ring::Matrix;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("invalid tower: {0}")]
    BadTower(String),
    #[error("sublattice of ℤ^{got} used with a complex over ℤ^{expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `L_1 ⊇ L_2 ⊇ …`, full rank with strictly increasing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTower {
    levels: Vec<Sublattice>,
}

impl QuotientTower {
    pub fn new(levels: Vec<Sublattice>) -> Result<Self, GrowthError> {
        if levels.is_empty() {
            return Err(GrowthError::BadTower("no levels".into()));
        }
        let n = levels[0].ambient();
        for (j, l) in levels.iter().enumerate() {
            if l.ambient() != n {
                return Err(GrowthError::BadTower(format!("level {j} lives in ℤ^{}", l.ambient())));
            }
            l.require_finite_index()?;
        }
        for (j, w) in levels.windows(2).enumerate() {
            if !w[0].contains_lattice(&w[1]) {
                return Err(GrowthError::BadTower(format!("level {} is not contained in level {j}", j + 1)));
            }
            if w[1].index() <= w[0].index() {
                return Err(GrowthError::BadTower(format!("index does not grow at level {}", j + 1)));
            }
        }
        Ok(QuotientTower { levels })
    }

    /// `L_j = m_j·ℤⁿ`.
    pub fn diagonal(ambient: usize, ms: &[i64]) -> Result<Self, GrowthError> {
        for &m in ms {
            if m < 1 {
                return Err(GrowthError::BadTower(format!("scale {m} is not positive")));
            }
        }
        Self::new(ms.iter().map(|&m| Sublattice::scalar(ambient, m)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.levels[0].ambient()
    }

    pub fn levels(&self) -> &[Sublattice] {
        &self.levels
    }

    pub fn indices(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.index().unwrap()).collect()
    }
}

/// The regular representation of `F[ℤⁿ/L]` applied entrywise: each entry
/// becomes an `m×m` scalar block, `m = [ℤⁿ:L]`. Column `h` of the block of
/// `f` is `Σ_g f_g·e_{[g+h]}`.
pub fn specialize(c: &LaurentComplex, l: &Sublattice) -> Result<FreeChainComplex<Scalar>, GrowthError> {
    if l.ambient() != c.rank() {
        return Err(GrowthError::RankMismatch {
            expected: c.rank(),
            got: l.ambient(),
        });
    }
    l.require_finite_index()?;
    let section = CosetSection::standard(l)?;
    let m = section.index();
    let field = c.field();
    let proto = field.zero();
    let diffs: Vec<Matrix<Scalar>> = c
        .diffs()
        .iter()
        .map(|a| {
            let mut out = Matrix::zeros(a.rows() * m, a.cols() * m, &proto);
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    for (g, coef) in a.get(i, j).terms() {
                        for h in 0..m {
                            let shifted: Vec<i64> = g.0.iter().zip(section.rep(h)).map(|(x, y)| x + y).collect();
                            let r = i * m + section.coset_of(&shifted);
                            let col = j * m + h;
                            let v = out.get(r, col).add(coef);
                            out.set(r, col, v);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let ranks = c.ranks().iter().map(|r| r * m).collect();
    // d² = 0 is inherited from the ring homomorphism F[ℤⁿ] → F[ℤⁿ/L]
    Ok(FreeChainComplex::from_parts_unchecked(&proto, ranks, diffs))
}

/// Rank over a field by sparse elimination against an echelon basis keyed
/// by pivot column.
pub fn scalar_rank(m: &Matrix<Scalar>) -> usize {
    let mut basis: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for i in 0..m.rows() {
        let mut row: BTreeMap<usize, Scalar> = m
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        while let Some((&lead, lc)) = row.iter().next() {
            match basis.get(&lead) {
                Some(p) => {
                    let f = lc.clone();
                    for (j, x) in p {
                        let v = row.get(j).cloned().unwrap_or_else(|| x.field().zero()).sub(&f.mul(x));
                        if v.is_zero() {
                            row.remove(j);
                        } else {
                            row.insert(*j, v);
                        }
                    }
                }
                None => {
                    let inv = lc.inv().expect("nonzero field element");
                    let normalized = row.into_iter().map(|(j, x)| (j, x.mul(&inv))).collect();
                    basis.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Betti numbers of a complex of finite-dimensional vector spaces.
pub fn scalar_betti(c: &FreeChainComplex<Scalar>) -> Vec<usize> {
    let n = c.ranks().len();
    let rk: Vec<usize> = (0..=n)
        .map(|k| if k == 0 || k >= n { 0 } else { scalar_rank(c.diff(k)) })
        .collect();
    (0..n).map(|k| c.ranks()[k] - rk[k] - rk[k + 1]).collect()
}

fn ratio(b: usize, m: u64) -> BigRational {
    BigRational::new(BigInt::from(b), BigInt::from(m))
}

/// `b_k(C ⊗ F[ℤⁿ/L]) / [ℤⁿ:L]` over `field`.
pub fn normalized_betti(c: &LaurentComplex, l: &Sublattice, field: FieldSpec) -> Result<Vec<BigRational>, GrowthError> {
    let cf = to_field(c, field)?;
    let b = scalar_betti(&specialize(&cf, l)?);
    let m = l.require_finite_index()?;
    Ok(b.into_iter().map(|x| ratio(x, m)).collect())
}

/// Reduces the coefficients of a complex into `field`.
pub fn to_field(c: &LaurentComplex, field: FieldSpec) -> Result<LaurentComplex, GrowthError> {
    if c.field() == field {
        return Ok(c.clone());
    }
    for a in c.diffs() {
        for x in a.data().iter().flatten() {
            x.to_field(field)?;
        }
    }
    let proto = LaurentPoly::zero(c.rank(), field);
    Ok(c.map(&proto, |x| x.to_field(field).expect("checked above")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelBetti {
    pub index: u64,
    pub betti: Vec<usize>,
    #[serde(serialize_with = "ser_ratios")]
    pub normalized: Vec<BigRational>,
}

fn ser_ratios<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

fn ser_ratio_rows<S: serde::Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let r: Vec<String> = row.iter().map(ToString::to_string).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

/// Betti numbers at every level of the tower, computed in parallel and
/// returned in tower order.
pub fn tower_betti(c: &LaurentComplex, tower: &QuotientTower, field: FieldSpec) -> Result<Vec<LevelBetti>, GrowthError> {
    if tower.ambient() != c.rank() {
        return Err(GrowthError::RankMismatch {
            expected: c.rank(),
            got: tower.ambient(),
        });
    }
    let cf = to_field(c, field)?;
    tower
        .levels()
        .par_iter()
        .map(|l| {
            let m = l.index().unwrap();
            let betti = scalar_betti(&specialize(&cf, l)?);
            let normalized = betti.iter().map(|&b| ratio(b, m)).collect();
            Ok(LevelBetti { index: m, betti, normalized })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LuckReport {
    pub levels: Vec<LevelBetti>,
    pub fraction_betti: Vec<usize>,
    #[serde(serialize_with = "ser_ratio_scalar")]
    pub tolerance: BigRational,
    /// Normalized Betti numbers never increase along the tower.
    pub monotone: bool,
    /// Every term is at least the fraction-field Betti number.
    pub bounded_below: bool,
    /// The last term is within `tolerance` of the fraction-field value.
    pub limit_consistent: bool,
}

impl LuckReport {
    pub fn holds(&self) -> bool {
        self.monotone && self.bounded_below && self.limit_consistent
    }
}

fn ser_ratio_scalar<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Normalized Betti numbers along the tower compared with the Betti
/// numbers over Frac(F[ℤⁿ]).
pub fn luck_approx_check(
    c: &LaurentComplex,
    tower: &QuotientTower,
    field: FieldSpec,
    tolerance: &BigRational,
) -> Result<LuckReport, GrowthError> {
    let levels = tower_betti(c, tower, field)?;
    let fraction_betti = betti_over_fractions(&to_field(c, field)?);
    let frac: Vec<BigRational> = fraction_betti.iter().map(|&b| ratio(b, 1)).collect();
    let monotone = levels
        .windows(2)
        .all(|w| w[0].normalized.iter().zip(&w[1].normalized).all(|(a, b)| b <= a));
    let bounded_below = levels.iter().all(|l| l.normalized.iter().zip(&frac).all(|(a, f)| a >= f));
    let last = &levels.last().unwrap().normalized;
    let limit_consistent = last.iter().zip(&frac).all(|(a, f)| (a - f).abs() <= *tolerance);
    Ok(LuckReport {
        levels,
        fraction_betti,
        tolerance: tolerance.clone(),
        monotone,
        bounded_below,
        limit_consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub field: String,
    pub levels: Vec<LevelBetti>,
    /// `upper[j][k] = max_{j' ≥ j}` of the normalized `b_k` at level `j'`.
    #[serde(serialize_with = "ser_ratio_rows")]
    pub upper: Vec<Vec<BigRational>>,
    /// `lower[j][k] = min_{j' ≥ j}` of the same.
    #[serde(serialize_with = "ser_ratio_rows")]
    pub lower: Vec<Vec<BigRational>>,
    /// Degrees whose envelopes differ at the last level.
    pub gaps: Vec<usize>,
    /// For each nested pair `(j, j+1)`: specializing at `L_{j+1}` equals
    /// restricting to `F[L_j]` first and then specializing.
    pub multiplicative: Vec<bool>,
}

impl GrowthReport {
    pub fn envelopes_ordered(&self) -> bool {
        self.upper
            .iter()
            .zip(&self.lower)
            .all(|(u, l)| u.iter().zip(l).all(|(a, b)| a >= b && *b >= BigRational::zero()))
    }
}

/// Tail envelopes of normalized Betti numbers along the tower, with the
/// exact cover-multiplicativity check on consecutive levels.
pub fn growth_estimate(c: &LaurentComplex, tower: &QuotientTower, field: FieldSpec) -> Result<GrowthReport, GrowthError> {
    let levels = tower_betti(c, tower, field)?;
    let deg = c.ranks().len();
    let len = levels.len();
    let mut upper = vec![Vec::new(); len];
    let mut lower = vec![Vec::new(); len];
    for j in (0..len).rev() {
        let cur = &levels[j].normalized;
        if j + 1 == len {
            upper[j] = cur.clone();
            lower[j] = cur.clone();
        } else {
            upper[j] = (0..deg).map(|k| cur[k].clone().max(upper[j + 1][k].clone())).collect();
            lower[j] = (0..deg).map(|k| cur[k].clone().min(lower[j + 1][k].clone())).collect();
        }
    }
    let gaps = (0..deg).filter(|&k| upper[len - 1][k] != lower[len - 1][k]).collect();
    let cf = to_field(c, field)?;
    let multiplicative = tower
        .levels()
        .windows(2)
        .zip(levels.windows(2))
        .map(|(w, lb)| cover_multiplicative(&cf, &w[0], &w[1], &lb[1].betti))
        .collect::<Result<Vec<bool>, GrowthError>>()?;
    Ok(GrowthReport {
        field: field.to_string(),
        levels,
        upper,
        lower,
        gaps,
        multiplicative,
    })
}

fn cover_multiplicative(c: &LaurentComplex, outer: &Sublattice, inner: &Sublattice, direct: &[usize]) -> Result<bool, GrowthError> {
    let section = CosetSection::standard(outer)?;
    let restricted = restrict_to_sublattice(c, &section);
    let inner_local = inner.in_coordinates_of(outer)?;
    let b = scalar_betti(&specialize(&restricted, &inner_local)?);
    Ok(b == direct)
}

/// `1/m` for the last index of a tower.
pub fn inverse_last_index(tower: &QuotientTower) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(*tower.indices().last().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::single_map_complex;

    fn p1(s: &str, f: FieldSpec) -> LaurentPoly {
        LaurentPoly::parse(s, &["t"], f).unwrap()
    }

    fn one_by_one(s: &str, f: FieldSpec) -> LaurentComplex {
        let one = p1("1", f);
        single_map_complex(Matrix::from_rows(1, 1, vec![vec![p1(s, f)]], &one).unwrap())
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn specialize_circle() {
        let c = one_by_one("t-1", FieldSpec::Rationals);
        for m in 1..6 {
            let s = specialize(&c, &Sublattice::scalar(1, m)).unwrap();
            assert_eq!(scalar_rank(s.diff(1)), (m - 1) as usize);
        }
        let u = one_by_one("t", FieldSpec::Rationals);
        let s = specialize(&u, &Sublattice::scalar(1, 4)).unwrap();
        assert_eq!(scalar_rank(s.diff(1)), 4);
        let z = specialize(&one_by_one("0", FieldSpec::Rationals), &Sublattice::scalar(1, 3)).unwrap();
        assert!(z.diff(1).is_zero());
    }

    #[test]
    fn normalized_examples() {
        let c = one_by_one("t-1", FieldSpec::Rationals);
        assert_eq!(
            normalized_betti(&c, &Sublattice::scalar(1, 5), FieldSpec::Rationals).unwrap(),
            vec![q(1, 5), q(1, 5)]
        );
        assert_eq!(
            normalized_betti(&c, &Sublattice::scalar(1, 2), FieldSpec::PrimeField(2)).unwrap()[0],
            q(1, 2)
        );
    }

    #[test]
    fn tower_validation() {
        assert!(QuotientTower::diagonal(1, &[2, 4, 8]).is_ok());
        assert!(matches!(QuotientTower::diagonal(1, &[2, 3]), Err(GrowthError::BadTower(_))));
        assert!(matches!(QuotientTower::diagonal(1, &[4, 2]), Err(GrowthError::BadTower(_))));
        assert!(QuotientTower::new(vec![]).is_err());
    }

    #[test]
    fn growth_of_circle_plus_zero() {
        let c = one_by_one("t-1", FieldSpec::Rationals).direct_sum(&one_by_one("0", FieldSpec::Rationals));
        let tower = QuotientTower::diagonal(1, &[2, 4, 8]).unwrap();
        let r = growth_estimate(&c, &tower, FieldSpec::Rationals).unwrap();
        assert_eq!(r.levels[2].normalized, vec![q(9, 8), q(9, 8)]);
        assert_eq!(r.upper[0], vec![q(3, 2), q(3, 2)]);
        assert!(r.multiplicative.iter().all(|&b| b));
        assert!(r.envelopes_ordered());
    }
}
