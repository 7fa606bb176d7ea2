//! Lattice chains, the leading-coefficient operator ℓ, unit certificates
//! along a chain, and the transport of fractions to finite-index sublattices.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::crossed::{regular_matrix, CosetSection, CrossedError};
use crate::fraction::{laurent_adjugate, Fraction, FractionError};
use crate::lattice::{self, LatticeError, Sublattice};
use crate::laurent::{LaurentPoly, Monomial};
use crate::orders::{dictionary_order, separating_character, Character, MatrixOrder, OrderError, OrderedFactor};
use crate::ring::Matrix;
use crate::series::{invert_poly, NovikovSeries, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewFieldError {
    #[error("zero input")]
    ZeroInput,
    #[error("invalid chain: {0}")]
    BadChain(String),
    #[error("level {level} out of range for a chain of length {len}")]
    BadLevel { level: usize, len: usize },
    #[error("element is not supported on K_{0}")]
    NotSupported(usize),
    #[error("no unit certificate: {0} is not a monomial at the end of the chain")]
    NonUnit(LaurentPoly),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// `ℤⁿ = K_0 ⊃ K_1 ⊃ … ⊃ K_r = 0` with each `K_{i+1}` saturated in `K_i`,
/// and optional companions `K_i ⊆ H_i` of finite index in ℤⁿ with `H_i/K_i`
/// free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeChain {
    levels: Vec<Sublattice>,
    companions: Option<Vec<Sublattice>>,
    // complement of K_{i+1} in K_i, and the inverse of [complement; K_{i+1}]
    // in K_i-coordinates
    splittings: Vec<Splitting>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Splitting {
    complement: Vec<Vec<i64>>,
    inverse: Vec<Vec<BigRational>>,
}

impl LatticeChain {
    pub fn new(levels: Vec<Sublattice>, companions: Option<Vec<Sublattice>>) -> Result<Self, SkewFieldError> {
        let first = levels.first().ok_or_else(|| SkewFieldError::BadChain("empty chain".into()))?;
        let n = first.ambient();
        if first.rank() != n || first.index() != Some(1) {
            return Err(SkewFieldError::BadChain("K_0 must be the whole lattice".into()));
        }
        if levels.last().unwrap().rank() != 0 {
            return Err(SkewFieldError::BadChain("the chain must end at 0".into()));
        }
        let mut splittings = Vec::new();
        for (i, w) in levels.windows(2).enumerate() {
            if w[1].ambient() != n {
                return Err(SkewFieldError::BadChain(format!("K_{} has the wrong ambient rank", i + 1)));
            }
            if !w[0].contains_lattice(&w[1]) {
                return Err(SkewFieldError::BadChain(format!("K_{} is not contained in K_{i}", i + 1)));
            }
            if w[0].intersect(&w[1].saturation()) != w[1] {
                return Err(SkewFieldError::BadChain(format!("K_{i}/K_{} is not torsion-free", i + 1)));
            }
            let complement = w[1].complement_in(&w[0])?;
            let mut full: Vec<Vec<i64>> = complement.iter().map(|c| w[0].coords(c).unwrap()).collect();
            full.extend(w[1].basis().iter().map(|b| w[0].coords(b).unwrap()));
            let inverse = if full.is_empty() {
                Vec::new()
            } else {
                lattice::rational_inverse(&full).ok_or_else(|| SkewFieldError::BadChain("degenerate splitting".into()))?
            };
            splittings.push(Splitting { complement, inverse });
        }
        if let Some(hs) = &companions {
            if hs.len() != levels.len() {
                return Err(SkewFieldError::BadChain("one companion per level is required".into()));
            }
            for (i, (h, k)) in hs.iter().zip(&levels).enumerate() {
                h.require_finite_index()?;
                if !h.contains_lattice(k) || h.intersect(&k.saturation()) != *k {
                    return Err(SkewFieldError::BadChain(format!("H_{i}/K_{i} is not free")));
                }
            }
        }
        Ok(LatticeChain {
            levels,
            companions,
            splittings,
        })
    }

    /// Chain from nested generating sets, `K_0 = ℤⁿ` and `K_r = 0` appended
    /// when missing.
    pub fn from_generators(ambient: usize, gens: &[Vec<Vec<i64>>]) -> Result<Self, SkewFieldError> {
        let mut levels = Vec::new();
        for g in gens {
            levels.push(Sublattice::new(ambient, g)?);
        }
        if levels.first().is_none_or(|k| k.rank() != ambient) {
            levels.insert(0, Sublattice::full(ambient));
        }
        if levels.last().unwrap().rank() != 0 {
            levels.push(Sublattice::trivial(ambient));
        }
        Self::new(levels, None)
    }

    pub fn ambient(&self) -> usize {
        self.levels[0].ambient()
    }

    /// `r`, the number of steps.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Sublattice] {
        &self.levels
    }

    pub fn companions(&self) -> Option<&[Sublattice]> {
        self.companions.as_deref()
    }

    /// Basis of the chosen complement of `K_{i+1}` in `K_i`, ambient
    /// coordinates.
    pub fn complement(&self, i: usize) -> &[Vec<i64>] {
        &self.splittings[i].complement
    }

    /// Coordinates of `m ∈ K_i` in `K_i/K_{i+1}` w.r.t. the complement.
    pub fn project(&self, i: usize, m: &[i64]) -> Option<Vec<i64>> {
        let c = self.levels[i].coords(m)?;
        let sp = &self.splittings[i];
        let k = sp.complement.len();
        let out = (0..k)
            .map(|j| {
                let v = (0..c.len()).fold(BigRational::zero(), |acc, r| {
                    acc + BigRational::from_integer(BigInt::from(c[r])) * &sp.inverse[r][j]
                });
                v.to_integer().to_i64().unwrap()
            })
            .collect();
        Some(out)
    }

    /// `Σ v_j c_j`, the section of the quotient point `v`.
    pub fn lift(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let n = self.ambient();
        let mut out = vec![0; n];
        for (vj, c) in v.iter().zip(&self.splittings[i].complement) {
            for a in 0..n {
                out[a] += vj * c[a];
            }
        }
        out
    }

    /// The dictionary order that compares `K_0/K_1` first (lexicographically
    /// in complement coordinates), then `K_1/K_2`, and so on.
    pub fn dictionary_order(&self) -> Result<MatrixOrder, SkewFieldError> {
        let factors: Vec<OrderedFactor> = self
            .splittings
            .iter()
            .filter(|s| !s.complement.is_empty())
            .map(|s| OrderedFactor {
                basis: s.complement.clone(),
                order: MatrixOrder::lex(s.complement.len()),
            })
            .collect();
        Ok(dictionary_order(self.ambient(), &factors)?)
    }
}

/// `ℓ(f)` at level `i`: the fibers of `f` over the vertices of its image in
/// `K_i/K_{i+1}`, each shifted into `K_{i+1}` by the section of its vertex.
///
/// `f` is first shifted so that its lexicographically smallest exponent is
/// `0`; it must then be supported on `K_i`.
pub fn leading_coefficients(f: &LaurentPoly, chain: &LatticeChain, level: usize) -> Result<BTreeSet<LaurentPoly>, SkewFieldError> {
    if f.is_zero() {
        return Err(SkewFieldError::ZeroInput);
    }
    if level >= chain.depth() {
        return Err(SkewFieldError::BadLevel {
            level,
            len: chain.depth(),
        });
    }
    let base = f.terms().next().unwrap().0.clone();
    let g = f.shift(&base.neg());
    let mut projected: Vec<(Vec<i64>, Monomial)> = Vec::with_capacity(g.num_terms());
    for (m, _) in g.terms() {
        let p = chain.project(level, &m.0).ok_or(SkewFieldError::NotSupported(level))?;
        projected.push((p, m.clone()));
    }
    let mut points: Vec<Vec<i64>> = projected.iter().map(|(p, _)| p.clone()).collect();
    points.sort();
    points.dedup();
    let vertices: Vec<Vec<i64>> = crate::polytope::vertex_indices(&points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect();
    let mut out = BTreeSet::new();
    for v in vertices {
        let s = Monomial(chain.lift(level, &v));
        let fiber = g.filter_terms(|m, _| projected.iter().any(|(p, mm)| mm == m && *p == v));
        out.insert(fiber.shift(&s.neg()));
    }
    Ok(out)
}

/// One node of a unit certificate: a non-monomial node carries the level at
/// which ℓ was applied and one child per leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertNode {
    pub element: String,
    pub level: Option<usize>,
    pub children: Vec<CertNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCertificate {
    pub depth: usize,
    pub root: CertNode,
}

/// Iterates ℓ down the chain until every branch ends in a monomial.
pub fn invariant_unit_certify(f: &LaurentPoly, chain: &LatticeChain) -> Result<UnitCertificate, SkewFieldError> {
    if f.is_zero() {
        return Err(SkewFieldError::ZeroInput);
    }
    let names = crate::laurent::default_var_names(f.rank());
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let (root, depth) = certify_node(f, chain, 0, &names)?;
    Ok(UnitCertificate { depth, root })
}

fn certify_node(f: &LaurentPoly, chain: &LatticeChain, level: usize, names: &[&str]) -> Result<(CertNode, usize), SkewFieldError> {
    let element = f.display_with(names);
    if f.is_unit() {
        return Ok((
            CertNode {
                element,
                level: None,
                children: Vec::new(),
            },
            0,
        ));
    }
    // a non-monomial can only survive while the chain has levels left
    let mut lvl = level;
    let mut coeffs = None;
    while lvl < chain.depth() {
        let l = leading_coefficients(f, chain, lvl)?;
        if l.len() == 1 && l.iter().next().unwrap().num_terms() == f.num_terms() {
            // f lies in a single K_{lvl+1}-coset: ℓ is f itself up to a shift
            lvl += 1;
            continue;
        }
        coeffs = Some(l);
        break;
    }
    let Some(coeffs) = coeffs else {
        return Err(SkewFieldError::NonUnit(f.clone()));
    };
    let mut children = Vec::new();
    let mut depth = 0;
    for c in &coeffs {
        let (node, d) = certify_node(c, chain, lvl + 1, names)?;
        depth = depth.max(d);
        children.push(node);
    }
    Ok((
        CertNode {
            element,
            level: Some(lvl),
            children,
        },
        depth + 1,
    ))
}

/// Inverse of `f` in the Novikov ring of the character that separates the
/// support of `f` under the chain's dictionary order, known up to `t`.
pub fn chain_inverse(f: &LaurentPoly, chain: &LatticeChain, t: i64) -> Result<(Character, NovikovSeries), SkewFieldError> {
    if f.is_zero() {
        return Err(SkewFieldError::ZeroInput);
    }
    let order = chain.dictionary_order()?;
    let mut support = f.support();
    order.sort(&mut support);
    let phi = separating_character(&order, &support)?;
    let inv = invert_poly(f, &phi, t)?;
    Ok((phi, inv))
}

/// `f = num/den` as an `m×m` matrix over the fractions of `F[H]`:
/// `M(num)·adj(M(den))/det(M(den))`, entries in ambient coordinates.
pub fn transport_finite_index(f: &Fraction, section: &CosetSection) -> Result<Matrix<Fraction>, SkewFieldError> {
    let mn = regular_matrix(f.num(), section);
    let md = regular_matrix(f.den(), section);
    let (adj, det) = laurent_adjugate(&md);
    if det.is_zero() {
        return Err(FractionError::DivisionByZero.into());
    }
    let prod = mn.checked_mul(&adj).expect("square matrices of one size");
    let proto = Fraction::zero(f.rank(), f.field());
    let mut out = Matrix::zeros(prod.rows(), prod.cols(), &proto);
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            out.set(i, j, Fraction::new(prod.get(i, j).clone(), det.clone())?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &["t", "s"], FieldSpec::Rationals).unwrap()
    }

    fn p1(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &["t"], FieldSpec::Rationals).unwrap()
    }

    fn s_chain() -> LatticeChain {
        LatticeChain::from_generators(2, &[vec![vec![0, 1]]]).unwrap()
    }

    #[test]
    fn chain_validation() {
        assert_eq!(s_chain().depth(), 2);
        let bad = LatticeChain::new(
            vec![
                Sublattice::full(2),
                Sublattice::new(2, &[vec![0, 2]]).unwrap(),
                Sublattice::trivial(2),
            ],
            None,
        );
        assert!(matches!(bad, Err(SkewFieldError::BadChain(_))));
        assert!(LatticeChain::new(vec![Sublattice::full(1)], None).is_err());
    }

    #[test]
    fn leading_coefficient_examples() {
        let c = s_chain();
        let l = leading_coefficients(&p("1 + t + s*t"), &c, 0).unwrap();
        assert_eq!(l, [p("1"), p("1+s")].into_iter().collect());
        let l = leading_coefficients(&p("3*t^2*s"), &c, 0).unwrap();
        assert_eq!(l, [p("3")].into_iter().collect());
        let one = LatticeChain::from_generators(1, &[]).unwrap();
        let l = leading_coefficients(&p1("1 + t + t^2"), &one, 0).unwrap();
        assert_eq!(l, [p1("1")].into_iter().collect());
        assert_eq!(leading_coefficients(&p("0"), &c, 0), Err(SkewFieldError::ZeroInput));
    }

    #[test]
    fn certificates() {
        let c = s_chain();
        let cert = invariant_unit_certify(&p("t - 1 - s"), &c).unwrap();
        assert_eq!(cert.depth, 2);
        assert_eq!(invariant_unit_certify(&p("5"), &c).unwrap().depth, 0);
        assert_eq!(invariant_unit_certify(&p("0"), &c), Err(SkewFieldError::ZeroInput));
        let (phi, inv) = chain_inverse(&p("t - 1 - s"), &c, 10).unwrap();
        let one = NovikovSeries::one(2, FieldSpec::Rationals, &phi, 10);
        assert!(inv.mul_poly(&p("t - 1 - s")).unwrap().agrees_up_to(&one, 10));
    }

    #[test]
    fn transport_examples() {
        let sec = CosetSection::standard(&Sublattice::scalar(1, 2)).unwrap();
        let f = Fraction::new(p1("1"), p1("1-t")).unwrap();
        let m = transport_finite_index(&f, &sec).unwrap();
        let a = Fraction::new(p1("1"), p1("1-t^2")).unwrap();
        let b = Fraction::new(p1("t^2"), p1("1-t^2")).unwrap();
        assert_eq!(m.get(0, 0), &a);
        assert_eq!(m.get(0, 1), &b);
        assert_eq!(m.get(1, 0), &a);
        assert_eq!(m.get(1, 1), &a);
        let t = transport_finite_index(&Fraction::from_poly(p1("t")), &sec).unwrap();
        assert_eq!(t.get(0, 1), &Fraction::from_poly(p1("t^2")));
        assert_eq!(t.get(1, 0), &Fraction::from_poly(p1("1")));
        let id = transport_finite_index(&Fraction::one(1, FieldSpec::Rationals), &sec).unwrap();
        assert_eq!(id, Matrix::identity(2, &Fraction::one(1, FieldSpec::Rationals)));
    }
}
