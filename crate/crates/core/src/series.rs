//! Truncated elements of the Novikov ring F G^φ for G = ℤⁿ.
//!
//! A [`NovikovSeries`] stores every term of φ-degree at most `complete_to`
//! and nothing above it. Each operation derives the completeness bound of its
//! result from those of its operands; a bound is never guessed.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, Monomial};
use crate::orders::{separating_character, Character, MatrixOrder, OrderError};
use crate::ring::Ring;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("characters differ: {0:?} vs {1:?}")]
    CharacterMismatch(Vec<i64>, Vec<i64>),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("zero input")]
    ZeroInput,
    #[error("leading slab {0} is not a unit")]
    NonUnitLeading(LaurentPoly),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid window: min_degree {min} > complete_to {max}")]
    BadWindow { min: i64, max: i64 },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Degree range `[min_degree, complete_to]`; no term of the represented
/// element lies below `min_degree` and all terms up to `complete_to` are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub min_degree: i64,
    pub complete_to: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    rank: usize,
    field: FieldSpec,
    character: Character,
    window: Window,
    terms: BTreeMap<Monomial, Scalar>,
}

/// The terms of `f` of minimal φ-degree.
pub fn leading_slab(f: &LaurentPoly, phi: &Character) -> Result<LaurentPoly, SeriesError> {
    if f.rank() != phi.rank() {
        return Err(SeriesError::RankMismatch(f.rank(), phi.rank()));
    }
    f.min_face(&phi.weights).map(|(_, s)| s).ok_or(SeriesError::ZeroInput)
}

impl NovikovSeries {
    pub fn new(
        rank: usize,
        field: FieldSpec,
        character: Character,
        window: Window,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, SeriesError> {
        if window.min_degree > window.complete_to {
            return Err(SeriesError::BadWindow {
                min: window.min_degree,
                max: window.complete_to,
            });
        }
        if character.rank() != rank {
            return Err(SeriesError::RankMismatch(rank, character.rank()));
        }
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if m.rank() != rank {
                return Err(SeriesError::RankMismatch(rank, m.rank()));
            }
            if c.field() != field {
                return Err(SeriesError::FieldMismatch(field, c.field()));
            }
            let d = character.eval(&m);
            if d < window.min_degree {
                return Err(SeriesError::BadWindow {
                    min: window.min_degree,
                    max: d,
                });
            }
            if d <= window.complete_to && !c.is_zero() {
                map.insert(m, c);
            }
        }
        Ok(NovikovSeries {
            rank,
            field,
            character,
            window,
            terms: map,
        })
    }

    /// The exact element `f`, known up to degree `complete_to`.
    pub fn from_poly(f: &LaurentPoly, phi: &Character, complete_to: i64) -> Result<Self, SeriesError> {
        if f.rank() != phi.rank() {
            return Err(SeriesError::RankMismatch(f.rank(), phi.rank()));
        }
        let min = f
            .terms()
            .map(|(m, _)| phi.eval(m))
            .min()
            .unwrap_or(complete_to)
            .min(complete_to);
        let window = Window {
            min_degree: min,
            complete_to,
        };
        Self::new(
            f.rank(),
            f.field(),
            phi.clone(),
            window,
            f.terms().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn zero(rank: usize, field: FieldSpec, phi: &Character, complete_to: i64) -> Self {
        NovikovSeries {
            rank,
            field,
            character: phi.clone(),
            window: Window {
                min_degree: complete_to,
                complete_to,
            },
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, field: FieldSpec, phi: &Character, complete_to: i64) -> Self {
        Self::from_poly(&LaurentPoly::one(rank, field), phi, complete_to).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn complete_to(&self) -> i64 {
        self.window.complete_to
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        self.character.eval(m)
    }

    /// Zero on the whole window.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree of the represented element: the lowest stored degree,
    /// or `complete_to + 1` when nothing is stored.
    pub fn valuation(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| self.character.eval(m))
            .min()
            .unwrap_or(self.window.complete_to + 1)
    }

    /// The stored terms as a Laurent polynomial.
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.rank, self.field, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// The terms of degree exactly `d`, provided `d ≤ complete_to`.
    pub fn slab(&self, d: i64) -> Option<LaurentPoly> {
        if d > self.window.complete_to {
            return None;
        }
        Some(LaurentPoly::from_terms(
            self.rank,
            self.field,
            self.terms
                .iter()
                .filter(|(m, _)| self.character.eval(m) == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    /// The lowest nonzero slab and its degree.
    pub fn leading_slab(&self) -> Result<(i64, LaurentPoly), SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroInput);
        }
        let v = self.valuation();
        Ok((v, self.slab(v).unwrap()))
    }

    /// Forgets terms above `t`; `t` must not exceed the current bound.
    pub fn truncate(&self, t: i64) -> NovikovSeries {
        let t = t.min(self.window.complete_to);
        let mut out = self.clone();
        out.terms.retain(|m, _| self.character.eval(m) <= t);
        out.window.complete_to = t;
        out.window.min_degree = out.window.min_degree.min(t);
        out
    }

    /// Whether `self` and `other` agree on every slab of degree ≤ `d`;
    /// `false` if either is not known that far.
    pub fn agrees_up_to(&self, other: &NovikovSeries, d: i64) -> bool {
        if self.character != other.character || self.complete_to() < d || other.complete_to() < d {
            return false;
        }
        let a = self.terms.iter().filter(|(m, _)| self.character.eval(m) <= d);
        let b = other.terms.iter().filter(|(m, _)| other.character.eval(m) <= d);
        a.eq(b)
    }

    fn check(&self, other: &NovikovSeries) -> Result<(), SeriesError> {
        if self.rank != other.rank {
            return Err(SeriesError::RankMismatch(self.rank, other.rank));
        }
        if self.field != other.field {
            return Err(SeriesError::FieldMismatch(self.field, other.field));
        }
        if self.character != other.character {
            return Err(SeriesError::CharacterMismatch(
                self.character.weights.clone(),
                other.character.weights.clone(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &NovikovSeries) -> Result<NovikovSeries, SeriesError> {
        self.check(other)?;
        let t = self.complete_to().min(other.complete_to());
        let mut p = self.truncate(t).to_poly();
        for (m, c) in other.terms() {
            if self.character.eval(m) <= t {
                p.add_term(m.clone(), c.clone());
            }
        }
        let window = Window {
            min_degree: self.window.min_degree.min(other.window.min_degree),
            complete_to: t,
        };
        Ok(self.with_terms(window, p))
    }

    pub fn checked_sub(&self, other: &NovikovSeries) -> Result<NovikovSeries, SeriesError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> NovikovSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    /// Product; known up to `min(T_a + v_b, T_b + v_a)` where `v` is the
    /// valuation.
    pub fn checked_mul(&self, other: &NovikovSeries) -> Result<NovikovSeries, SeriesError> {
        self.check(other)?;
        let t = (self.complete_to() + other.valuation()).min(other.complete_to() + self.valuation());
        let window = Window {
            min_degree: self.window.min_degree + other.window.min_degree,
            complete_to: t,
        };
        let p = truncated_product(&self.character, self.rank, self.field, &self.terms, &other.terms, t);
        Ok(self.with_terms(window, p))
    }

    /// Product with an exact Laurent polynomial.
    pub fn mul_poly(&self, f: &LaurentPoly) -> Result<NovikovSeries, SeriesError> {
        if f.rank() != self.rank {
            return Err(SeriesError::RankMismatch(self.rank, f.rank()));
        }
        if f.field() != self.field {
            return Err(SeriesError::FieldMismatch(self.field, f.field()));
        }
        if f.is_zero() {
            return Ok(NovikovSeries::zero(self.rank, self.field, &self.character, self.complete_to()));
        }
        let lo = f.terms().map(|(m, _)| self.character.eval(m)).min().unwrap();
        let t = self.complete_to() + lo;
        let window = Window {
            min_degree: self.window.min_degree + lo,
            complete_to: t,
        };
        let fm: BTreeMap<Monomial, Scalar> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let p = truncated_product(&self.character, self.rank, self.field, &self.terms, &fm, t);
        Ok(self.with_terms(window, p))
    }

    pub fn scale(&self, c: &Scalar) -> NovikovSeries {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    /// Multiplication by the monomial `x^g`.
    pub fn shift(&self, g: &Monomial) -> NovikovSeries {
        let d = self.character.eval(g);
        NovikovSeries {
            rank: self.rank,
            field: self.field,
            character: self.character.clone(),
            window: Window {
                min_degree: self.window.min_degree + d,
                complete_to: self.window.complete_to + d,
            },
            terms: self.terms.iter().map(|(m, c)| (m.add(g), c.clone())).collect(),
        }
    }

    /// Keeps the terms accepted by `keep`; the window is unchanged.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> NovikovSeries {
        let mut out = self.clone();
        out.terms.retain(|m, _| keep(m));
        out
    }

    fn with_terms(&self, window: Window, p: LaurentPoly) -> NovikovSeries {
        let window = Window {
            min_degree: window.min_degree.min(window.complete_to),
            complete_to: window.complete_to,
        };
        NovikovSeries {
            rank: self.rank,
            field: self.field,
            character: self.character.clone(),
            window,
            terms: p.into_terms(),
        }
    }
}

fn truncated_product(
    phi: &Character,
    rank: usize,
    field: FieldSpec,
    a: &BTreeMap<Monomial, Scalar>,
    b: &BTreeMap<Monomial, Scalar>,
    t: i64,
) -> LaurentPoly {
    let bd: Vec<(i64, &Monomial, &Scalar)> = b.iter().map(|(m, c)| (phi.eval(m), m, c)).collect();
    let mut p = LaurentPoly::zero(rank, field);
    for (ma, ca) in a {
        let da = phi.eval(ma);
        for (db, mb, cb) in &bd {
            if da + db <= t {
                p.add_term(ma.add(mb), ca.mul(cb));
            }
        }
    }
    p
}

/// Inverse of `f`, known up to `min(T, T_f − 2v)` where `v` is the
/// valuation of `f`.
///
/// Writes `f = c·x^g·(1 − P)` with every term of `P` of positive degree and
/// sums `1 + P + P² + …` slab by slab.
pub fn nov_invert(f: &NovikovSeries, t: i64) -> Result<NovikovSeries, SeriesError> {
    let (v, slab) = f.leading_slab()?;
    let (g, c) = match slab.as_monomial() {
        Some((g, c)) => (g.clone(), c.clone()),
        None => return Err(SeriesError::NonUnitLeading(slab)),
    };
    let cinv = c.inv().unwrap();
    let target = t.min(f.complete_to() - 2 * v);
    // P = 1 − c⁻¹x^{−g} f, known up to T_f − v
    let normalized = f.shift(&g.neg()).scale(&cinv);
    let tp = normalized.complete_to();
    let mut p = normalized.neg().to_poly();
    p.add_term(Monomial::zero(f.rank), f.field.one());
    let pm: BTreeMap<Monomial, Scalar> = p.into_terms();
    let horizon = target + v;
    let one: BTreeMap<Monomial, Scalar> = [(Monomial::zero(f.rank), f.field.one())].into_iter().collect();
    let mut sum = one.clone();
    if horizon >= 1 {
        for _ in 0..horizon {
            let mut next = truncated_product(&f.character, f.rank, f.field, &pm, &sum, horizon);
            next.add_term(Monomial::zero(f.rank), f.field.one());
            sum = next.into_terms();
        }
    }
    debug_assert!(horizon <= tp);
    let geometric = NovikovSeries {
        rank: f.rank,
        field: f.field,
        character: f.character.clone(),
        window: Window {
            min_degree: 0.min(horizon),
            complete_to: horizon,
        },
        terms: sum.into_iter().filter(|(m, _)| f.character.eval(m) <= horizon).collect(),
    };
    Ok(geometric.shift(&g.neg()).scale(&cinv))
}

/// Inverse of the exact element `f` in F G^φ, known up to `t`.
pub fn invert_poly(f: &LaurentPoly, phi: &Character, t: i64) -> Result<NovikovSeries, SeriesError> {
    let slab = leading_slab(f, phi)?;
    let v = phi.eval(slab.terms().next().unwrap().0);
    let series = NovikovSeries::from_poly(f, phi, (t + 2 * v).max(v))?;
    let inv = nov_invert(&series, t)?;
    Ok(inv.truncate(t))
}

/// Expansion of `x/y` along the character that separates the support of
/// `y` under `order`, known up to `t`.
pub fn expand_fraction(x: &LaurentPoly, y: &LaurentPoly, order: &MatrixOrder, t: i64) -> Result<NovikovSeries, SeriesError> {
    if y.is_zero() {
        return Err(SeriesError::ZeroDenominator);
    }
    if x.rank() != y.rank() {
        return Err(SeriesError::RankMismatch(x.rank(), y.rank()));
    }
    let mut support = y.support();
    order.sort(&mut support);
    let phi = separating_character(order, &support)?;
    if x.is_zero() {
        return Ok(NovikovSeries::zero(x.rank(), x.field(), &phi, t));
    }
    let lo = x.terms().map(|(m, _)| phi.eval(m)).min().unwrap();
    let inv = invert_poly(y, &phi, t - lo)?;
    Ok(inv.mul_poly(x)?.truncate(t))
}

impl Ring for NovikovSeries {
    fn zero_like(&self) -> Self {
        NovikovSeries::zero(self.rank, self.field, &self.character, self.complete_to())
    }
    fn one_like(&self) -> Self {
        NovikovSeries::one(self.rank, self.field, &self.character, self.complete_to())
    }
    fn is_zero(&self) -> bool {
        NovikovSeries::is_zero(self)
    }
    fn annihilates(&self) -> bool {
        false
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("series operands must share ring and character")
    }
    fn minus(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("series operands must share ring and character")
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("series operands must share ring and character")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn unit_inverse(&self) -> Option<Self> {
        nov_invert(self, self.complete_to()).ok()
    }
}
