//! Crossed products R*Q over finite groups Q given by multiplication tables,
//! and the regrouping of F[ℤⁿ] as F[H]*(ℤⁿ/H) for full-rank sublattices H.

use std::fmt;

use thiserror::Error;

use crate::lattice::{LatticeError, Sublattice};
use crate::laurent::{LaurentPoly, Monomial};
use crate::ring::{Matrix, Ring};
use crate::scalar::FieldSpec;
use crate::series::NovikovSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("invalid group table: {0}")]
    BadGroup(String),
    #[error("structure tables have the wrong size for |Q| = {0}")]
    StructureShape(usize),
    #[error("element has {got} components, group has order {expected}")]
    ElementShape { expected: usize, got: usize },
    #[error("section is invalid: {0}")]
    BadSection(String),
    #[error("{0}")]
    NotInvertible(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A finite group on `0..n` with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self, CrossedError> {
        let n = mul.len();
        if n == 0 || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(CrossedError::BadGroup("table is not n×n over 0..n".into()));
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(CrossedError::BadGroup("0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(CrossedError::BadGroup(format!("{a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(CrossedError::BadGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(GroupTable { mul, inv })
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(mul).unwrap()
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

/// A ring automorphism of `R`.
pub trait Automorphism<R>: Clone + fmt::Debug + Send + Sync {
    fn apply(&self, r: &R) -> R;
    fn inverse(&self) -> Self;
}

/// `x^e ↦ x^{eA}` for a unimodular integer matrix `A`, extended F-linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAutomorphism {
    matrix: Vec<Vec<i64>>,
}

impl MonomialAutomorphism {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self, CrossedError> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(CrossedError::NotInvertible("matrix is not square".into()));
        }
        let det = crate::lattice::rational_det(&matrix);
        let one = num_rational::BigRational::from_integer(1.into());
        if det != one && det != -one {
            return Err(CrossedError::NotInvertible("matrix is not unimodular".into()));
        }
        Ok(MonomialAutomorphism { matrix })
    }

    pub fn identity(n: usize) -> Self {
        MonomialAutomorphism {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    fn image(&self, e: &[i64]) -> Vec<i64> {
        let n = self.matrix.len();
        (0..n).map(|j| (0..n).map(|i| e[i] * self.matrix[i][j]).sum()).collect()
    }
}

impl Automorphism<LaurentPoly> for MonomialAutomorphism {
    fn apply(&self, r: &LaurentPoly) -> LaurentPoly {
        r.map_exponents(r.rank(), |m| Monomial(self.image(&m.0)))
    }

    fn inverse(&self) -> Self {
        let inv = crate::lattice::rational_inverse(&self.matrix).expect("unimodular");
        let matrix = inv
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect())
            .collect();
        MonomialAutomorphism { matrix }
    }
}

/// Structure functions of a crossed product `R*Q`: the product of `r·q` and
/// `r'·q'` is `r·τ(q)(r')·μ(q,q')` at `qq'`.
#[derive(Clone, Debug)]
pub struct CrossedStructure<R: Ring, A: Automorphism<R>> {
    group: GroupTable,
    tau: Vec<A>,
    mu: Vec<Vec<R>>,
    probes: Vec<R>,
}

/// The first failed structure identity, with the group elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `τ(q)∘τ(q') ≠ c(μ(q,q'))∘τ(qq')`, detected on probe `probe`.
    TwistComposition { q: usize, q2: usize, probe: usize },
    /// `μ(q,q')·μ(qq',q'') ≠ τ(q)(μ(q',q''))·μ(q,q'q'')`.
    Cocycle { q: usize, q2: usize, q3: usize },
    /// `μ(1,1) ≠ μ(1,q)`.
    Normalization { q: usize },
    /// `τ(1) ≠ c(μ(1,1))` on probe `probe`.
    IdentityTwist { probe: usize },
    /// `μ(q,q')` is not a unit.
    NonUnit { q: usize, q2: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TwistComposition { q, q2, probe } => {
                write!(f, "twist composition fails at ({q},{q2}) on probe {probe}")
            }
            Violation::Cocycle { q, q2, q3 } => write!(f, "cocycle identity fails at ({q},{q2},{q3})"),
            Violation::Normalization { q } => write!(f, "mu(1,1) != mu(1,{q})"),
            Violation::IdentityTwist { probe } => write!(f, "tau(1) is not conjugation by mu(1,1) on probe {probe}"),
            Violation::NonUnit { q, q2 } => write!(f, "mu({q},{q2}) is not a unit"),
        }
    }
}

/// An element `Σ_q r_q·q` of `R*Q`, stored densely by group index.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedElement<R: Ring> {
    pub coeffs: Vec<R>,
}

impl<R: Ring, A: Automorphism<R>> CrossedStructure<R, A> {
    /// `probes` must generate `R` as a ring over its scalars; automorphisms
    /// are compared on them.
    pub fn new(group: GroupTable, tau: Vec<A>, mu: Vec<Vec<R>>, probes: Vec<R>) -> Result<Self, CrossedError> {
        let n = group.order();
        if tau.len() != n || mu.len() != n || mu.iter().any(|r| r.len() != n) {
            return Err(CrossedError::StructureShape(n));
        }
        Ok(CrossedStructure { group, tau, mu, probes })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn tau(&self, q: usize) -> &A {
        &self.tau[q]
    }

    pub fn mu(&self, q: usize, q2: usize) -> &R {
        &self.mu[q][q2]
    }

    /// Overwrites one cocycle value; used to build corrupted fixtures.
    pub fn set_mu(&mut self, q: usize, q2: usize, value: R) {
        self.mu[q][q2] = value;
    }

    fn conj(u: &R, r: &R) -> Option<R> {
        Some(u.times(r).times(&u.unit_inverse()?))
    }

    /// Checks every structure identity on all pairs and triples; returns the
    /// first violation in index order.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.group.order();
        for q in 0..n {
            for q2 in 0..n {
                if self.mu[q][q2].unit_inverse().is_none() {
                    return Err(Violation::NonUnit { q, q2 });
                }
            }
        }
        for q in 0..n {
            if self.mu[0][0] != self.mu[0][q] {
                return Err(Violation::Normalization { q });
            }
        }
        for (k, p) in self.probes.iter().enumerate() {
            let lhs = self.tau[0].apply(p);
            let rhs = Self::conj(&self.mu[0][0], p).unwrap();
            if lhs != rhs {
                return Err(Violation::IdentityTwist { probe: k });
            }
        }
        for q in 0..n {
            for q2 in 0..n {
                let qq = self.group.mul(q, q2);
                for (k, p) in self.probes.iter().enumerate() {
                    let lhs = self.tau[q].apply(&self.tau[q2].apply(p));
                    let rhs = Self::conj(&self.mu[q][q2], &self.tau[qq].apply(p)).unwrap();
                    if lhs != rhs {
                        return Err(Violation::TwistComposition { q, q2, probe: k });
                    }
                }
            }
        }
        for q in 0..n {
            for q2 in 0..n {
                for q3 in 0..n {
                    let a = self.group.mul(q, q2);
                    let b = self.group.mul(q2, q3);
                    let lhs = self.mu[q][q2].times(&self.mu[a][q3]);
                    let rhs = self.tau[q].apply(&self.mu[q2][q3]).times(&self.mu[q][b]);
                    if lhs != rhs {
                        return Err(Violation::Cocycle { q, q2, q3 });
                    }
                }
            }
        }
        Ok(())
    }

    fn proto(&self) -> &R {
        &self.mu[0][0]
    }

    pub fn zero(&self) -> CrossedElement<R> {
        CrossedElement {
            coeffs: vec![self.proto().zero_like(); self.group.order()],
        }
    }

    /// `r·q`.
    pub fn homogeneous(&self, r: R, q: usize) -> CrossedElement<R> {
        let mut e = self.zero();
        e.coeffs[q] = r;
        e
    }

    /// The identity `μ(1,1)⁻¹·1`.
    pub fn one(&self) -> CrossedElement<R> {
        self.homogeneous(self.mu[0][0].unit_inverse().expect("mu(1,1) is a unit"), 0)
    }

    fn check(&self, a: &CrossedElement<R>) -> Result<(), CrossedError> {
        if a.coeffs.len() != self.group.order() {
            return Err(CrossedError::ElementShape {
                expected: self.group.order(),
                got: a.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &CrossedElement<R>, b: &CrossedElement<R>) -> Result<CrossedElement<R>, CrossedError> {
        self.check(a)?;
        self.check(b)?;
        Ok(CrossedElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.plus(y)).collect(),
        })
    }

    /// Convolution product.
    pub fn mul(&self, a: &CrossedElement<R>, b: &CrossedElement<R>) -> Result<CrossedElement<R>, CrossedError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (q, r) in a.coeffs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (q2, r2) in b.coeffs.iter().enumerate() {
                if r2.is_zero() {
                    continue;
                }
                let qq = self.group.mul(q, q2);
                let term = r.times(&self.tau[q].apply(r2)).times(&self.mu[q][q2]);
                out.coeffs[qq] = out.coeffs[qq].plus(&term);
            }
        }
        Ok(out)
    }

    /// Inverse of `u·q` for a unit `u`:
    /// `τ(q)⁻¹(u⁻¹·μ(1,1)⁻¹·μ(q,q⁻¹)⁻¹)·q⁻¹`.
    pub fn homogeneous_inverse(&self, u: &R, q: usize) -> Result<CrossedElement<R>, CrossedError> {
        let uinv = u
            .unit_inverse()
            .ok_or_else(|| CrossedError::NotInvertible("coefficient is not a unit".into()))?;
        let qi = self.group.inv(q);
        let m11 = self.mu[0][0].unit_inverse().unwrap();
        let mq = self.mu[q][qi].unit_inverse().unwrap();
        let v = self.tau[q].inverse().apply(&uinv.times(&m11).times(&mq));
        Ok(self.homogeneous(v, qi))
    }
}

/// Representatives of `ℤⁿ/H`, one per coset, with `0` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSection {
    sub: Sublattice,
    reps: Vec<Vec<i64>>,
    canonical: Vec<Vec<i64>>,
}

impl CosetSection {
    /// Representatives in the fundamental box of the Hermite basis of `H`.
    pub fn standard(sub: &Sublattice) -> Result<Self, CrossedError> {
        let reps = sub.coset_reps()?;
        Ok(CosetSection {
            sub: sub.clone(),
            canonical: reps.clone(),
            reps,
        })
    }

    /// An explicit section; `reps[0]` must be `0` and the list must hit
    /// every coset exactly once.
    pub fn new(sub: &Sublattice, reps: Vec<Vec<i64>>) -> Result<Self, CrossedError> {
        let m = sub.require_finite_index()? as usize;
        if reps.len() != m {
            return Err(CrossedError::BadSection(format!("{} representatives for index {m}", reps.len())));
        }
        if reps[0].iter().any(|&x| x != 0) {
            return Err(CrossedError::BadSection("first representative must be 0".into()));
        }
        let canonical: Vec<Vec<i64>> = reps.iter().map(|r| sub.reduce(r).0).collect();
        let mut sorted = canonical.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != m {
            return Err(CrossedError::BadSection("two representatives share a coset".into()));
        }
        Ok(CosetSection {
            sub: sub.clone(),
            reps,
            canonical,
        })
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sub
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<i64>] {
        &self.reps
    }

    pub fn rep(&self, g: usize) -> &[i64] {
        &self.reps[g]
    }

    /// The coset index of `v`.
    pub fn coset_of(&self, v: &[i64]) -> usize {
        let c = self.sub.reduce(v).0;
        self.canonical.iter().position(|r| *r == c).expect("section covers every coset")
    }

    /// The group table of `ℤⁿ/H` in section order.
    pub fn group(&self) -> GroupTable {
        let m = self.index();
        let mul = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        let s: Vec<i64> = self.reps[a].iter().zip(&self.reps[b]).map(|(x, y)| x + y).collect();
                        self.coset_of(&s)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(mul).expect("quotient of ℤⁿ is a group")
    }

    /// `s_a + s_b − s_{a+b}`, an element of `H`.
    pub fn cocycle_exponent(&self, a: usize, b: usize) -> Vec<i64> {
        let s: Vec<i64> = self.reps[a].iter().zip(&self.reps[b]).map(|(x, y)| x + y).collect();
        let c = self.coset_of(&s);
        s.iter().zip(&self.reps[c]).map(|(x, y)| x - y).collect()
    }
}

/// `F[ℤⁿ] = F[H]*(ℤⁿ/H)`: `τ = id` and `μ(a,b) = x^{s_a+s_b−s_{a+b}}`, with
/// `F[H]` kept in ambient coordinates.
pub fn lattice_quotient_structure(
    section: &CosetSection,
    field: FieldSpec,
) -> CrossedStructure<LaurentPoly, MonomialAutomorphism> {
    let n = section.sublattice().ambient();
    let m = section.index();
    let group = section.group();
    let tau = vec![MonomialAutomorphism::identity(n); m];
    let mu = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| LaurentPoly::monomial(Monomial(section.cocycle_exponent(a, b)), field.one()))
                .collect()
        })
        .collect();
    let probes = section
        .sublattice()
        .basis()
        .iter()
        .map(|h| LaurentPoly::monomial(Monomial(h.clone()), field.one()))
        .collect();
    CrossedStructure::new(group, tau, mu, probes).unwrap()
}

/// `F[t^±]*(ℤ/2)` with the generator acting by `t ↦ t⁻¹` and `μ ≡ 1`.
pub fn dihedral_structure(field: FieldSpec) -> CrossedStructure<LaurentPoly, MonomialAutomorphism> {
    let group = GroupTable::cyclic(2);
    let tau = vec![MonomialAutomorphism::identity(1), MonomialAutomorphism::new(vec![vec![-1]]).unwrap()];
    let one = LaurentPoly::one(1, field);
    let mu = vec![vec![one.clone(), one.clone()], vec![one.clone(), one]];
    CrossedStructure::new(group, tau, mu, vec![LaurentPoly::var(1, field, 0)]).unwrap()
}

/// The components `f^g` with `f = Σ_g f^g·x^{s_g}` and each `f^g` supported
/// on `H`.
pub fn regroup(f: &LaurentPoly, section: &CosetSection) -> Vec<LaurentPoly> {
    let mut parts = vec![LaurentPoly::zero(f.rank(), f.field()); section.index()];
    for (m, c) in f.terms() {
        let g = section.coset_of(&m.0);
        let e: Vec<i64> = m.0.iter().zip(section.rep(g)).map(|(x, y)| x - y).collect();
        parts[g].add_term(Monomial(e), c.clone());
    }
    parts
}

/// Inverse of [`regroup`].
pub fn unregroup(parts: &[LaurentPoly], section: &CosetSection) -> LaurentPoly {
    let mut out = LaurentPoly::zero(parts[0].rank(), parts[0].field());
    for (g, p) in parts.iter().enumerate() {
        out = &out + &p.shift(&Monomial(section.rep(g).to_vec()));
    }
    out
}

/// [`regroup`] for series; each component keeps the character and its
/// window shifts with the representative.
pub fn regroup_series(f: &NovikovSeries, section: &CosetSection) -> Vec<NovikovSeries> {
    (0..section.index())
        .map(|g| {
            f.filter_terms(|m| section.coset_of(&m.0) == g)
                .shift(&Monomial(section.rep(g).iter().map(|x| -x).collect()))
        })
        .collect()
}

/// Matrix of right multiplication by `f` on the free `F[H]`-module with basis
/// `{x^{s_g}}`, in column convention: column `g` holds the coordinates of
/// `x^{s_g}·f`, so `M[g+h][g] = f^h·μ(g,h)`.
pub fn regular_matrix(f: &LaurentPoly, section: &CosetSection) -> Matrix<LaurentPoly> {
    let parts = regroup(f, section);
    let group = section.group();
    let m = section.index();
    let mut out = Matrix::zeros(m, m, f);
    for g in 0..m {
        for (h, part) in parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let row = group.mul(g, h);
            let entry = part.shift(&Monomial(section.cocycle_exponent(g, h)));
            out.set(row, g, entry);
        }
    }
    out
}

/// [`regular_matrix`] for series; entries are series on `H`.
pub fn regular_matrix_series(f: &NovikovSeries, section: &CosetSection) -> Matrix<NovikovSeries> {
    let parts = regroup_series(f, section);
    let group = section.group();
    let m = section.index();
    let mut out = Matrix::zeros(m, m, f);
    for g in 0..m {
        for (h, part) in parts.iter().enumerate() {
            let row = group.mul(g, h);
            out.set(row, g, part.shift(&Monomial(section.cocycle_exponent(g, h))));
        }
    }
    out
}

/// Rewrites a polynomial supported on `H` in the coordinates of `H`'s
/// stored basis.
pub fn to_sub_coordinates(f: &LaurentPoly, sub: &Sublattice) -> Option<LaurentPoly> {
    let mut terms = Vec::with_capacity(f.num_terms());
    for (m, c) in f.terms() {
        terms.push((Monomial(sub.coords(&m.0)?), c.clone()));
    }
    Some(LaurentPoly::from_terms(sub.rank(), f.field(), terms))
}

/// Inverse of [`to_sub_coordinates`].
pub fn from_sub_coordinates(f: &LaurentPoly, sub: &Sublattice) -> LaurentPoly {
    f.map_exponents(sub.ambient(), |m| Monomial(sub.from_coords(&m.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn p1(s: &str, f: FieldSpec) -> LaurentPoly {
        LaurentPoly::parse(s, &["t"], f).unwrap()
    }

    #[test]
    fn dihedral_products() {
        let s = dihedral_structure(q());
        assert_eq!(s.validate(), Ok(()));
        let t = p1("t", q());
        let ts = s.homogeneous(t.clone(), 1);
        let sq = s.mul(&ts, &ts).unwrap();
        assert_eq!(sq, s.one());
        let a = CrossedElement {
            coeffs: vec![p1("1+t", q()), p1("t^-2", q())],
        };
        assert_eq!(s.mul(&s.one(), &a).unwrap(), a);
        assert_eq!(s.mul(&a, &s.one()).unwrap(), a);
        let u = p1("3*t^2", q());
        let inv = s.homogeneous_inverse(&u, 1).unwrap();
        let us = s.homogeneous(u, 1);
        assert_eq!(s.mul(&us, &inv).unwrap(), s.one());
        assert_eq!(s.mul(&inv, &us).unwrap(), s.one());
    }

    #[test]
    fn corrupted_cocycle_is_caught() {
        let mut s = dihedral_structure(q());
        s.set_mu(1, 1, p1("t", q()));
        assert_eq!(s.validate(), Err(Violation::Cocycle { q: 1, q2: 1, q3: 1 }));
    }

    #[test]
    fn regular_matrices() {
        let h = Sublattice::scalar(1, 2);
        let sec = CosetSection::standard(&h).unwrap();
        assert_eq!(sec.reps(), &[vec![0], vec![1]]);
        let m = regular_matrix(&p1("t", q()), &sec);
        let expect = Matrix::from_rows(
            2,
            2,
            vec![vec![p1("0", q()), p1("t^2", q())], vec![p1("1", q()), p1("0", q())]],
            &p1("0", q()),
        )
        .unwrap();
        assert_eq!(m, expect);
        let t2 = Matrix::identity(2, &p1("1", q())).map(&p1("0", q()), |x| x * &p1("t^2", q()));
        assert_eq!(m.checked_mul(&m).unwrap(), t2);
        assert_eq!(regular_matrix(&p1("1", q()), &sec), Matrix::identity(2, &p1("1", q())));
        let f2 = FieldSpec::PrimeField(2);
        let m = regular_matrix(&p1("1+t", f2), &sec);
        assert_eq!(m.get(0, 0), &p1("1", f2));
        assert_eq!(m.get(0, 1), &p1("t^2", f2));
        assert_eq!(m.get(1, 0), &p1("1", f2));
        assert_eq!(m.get(1, 1), &p1("1", f2));
    }

    #[test]
    fn regroup_round_trip_and_structure() {
        let h = Sublattice::new(2, &[vec![2, 1], vec![0, 2]]).unwrap();
        let sec = CosetSection::standard(&h).unwrap();
        assert_eq!(sec.index(), 4);
        let s = lattice_quotient_structure(&sec, q());
        assert_eq!(s.validate(), Ok(()));
        let f = LaurentPoly::parse("1 + t + 2*s^-1 - t^3*s", &["t", "s"], q()).unwrap();
        let g = LaurentPoly::parse("t*s - 3 + s^2", &["t", "s"], q()).unwrap();
        assert_eq!(unregroup(&regroup(&f, &sec), &sec), f);
        let lhs = regroup(&(&f * &g), &sec);
        let rhs = s
            .mul(
                &CrossedElement { coeffs: regroup(&f, &sec) },
                &CrossedElement { coeffs: regroup(&g, &sec) },
            )
            .unwrap();
        assert_eq!(lhs, rhs.coeffs);
    }

    #[test]
    fn explicit_sections() {
        let h = Sublattice::scalar(1, 3);
        let sec = CosetSection::new(&h, vec![vec![0], vec![-1], vec![4]]).unwrap();
        assert_eq!(sec.coset_of(&[2]), 1);
        assert_eq!(lattice_quotient_structure(&sec, q()).validate(), Ok(()));
        assert!(CosetSection::new(&h, vec![vec![0], vec![3], vec![1]]).is_err());
        assert!(CosetSection::new(&h, vec![vec![1], vec![2], vec![3]]).is_err());
    }
}
