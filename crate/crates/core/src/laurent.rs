//! The Laurent ring F[ℤⁿ]: sparse exact polynomials with integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::polytope;
use crate::scalar::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A group element of ℤⁿ, written multiplicatively as a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn zero(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(a, w)| a * w).sum()
    }
}

impl From<Vec<i64>> for Monomial {
    fn from(v: Vec<i64>) -> Self {
        Monomial(v)
    }
}

/// An element of F[ℤⁿ]. Terms are kept in lexicographic exponent order and
/// zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl LaurentPoly {
    pub fn zero(rank: usize, field: FieldSpec) -> Self {
        LaurentPoly {
            rank,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, field: FieldSpec) -> Self {
        Self::constant(rank, field.one())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::monomial(Monomial::zero(rank), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = LaurentPoly::zero(m.rank(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `x_i`, the i-th generator.
    pub fn var(rank: usize, field: FieldSpec, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(Monomial(e), field.one())
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(rank: usize, field: FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = LaurentPoly::zero(rank, field);
        for (m, c) in terms {
            debug_assert_eq!(m.rank(), rank);
            p.add_term(m, c);
        }
        p
    }

    /// Small-integer convenience constructor.
    pub fn from_int_terms(rank: usize, field: FieldSpec, terms: &[(&[i64], i64)]) -> Self {
        Self::from_terms(
            rank,
            field,
            terms.iter().map(|(e, c)| (Monomial(e.to_vec()), field.from_i64(*c))),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_zero() && c.is_one()).unwrap()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// `Some((m, c))` when the polynomial is the single term `c·x^m`, i.e. a unit.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    fn check(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.rank != other.rank {
            return Err(LaurentError::RankMismatch(self.rank, other.rank));
        }
        if self.field != other.field {
            return Err(LaurentError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        let mut out = LaurentPoly::zero(self.rank, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank, self.field);
        }
        LaurentPoly {
            rank: self.rank,
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    /// Multiplication by the group element `x^m`.
    pub fn shift(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            field: self.field,
            terms: self.terms.iter().map(|(k, v)| (k.add(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.rank, self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Applies an exponent map to every term; the image rank may differ.
    pub fn map_exponents<F>(&self, new_rank: usize, f: F) -> LaurentPoly
    where
        F: Fn(&Monomial) -> Monomial,
    {
        LaurentPoly::from_terms(
            new_rank,
            self.field,
            self.terms.iter().map(|(m, c)| (f(m), c.clone())),
        )
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms<F>(&self, keep: F) -> LaurentPoly
    where
        F: Fn(&Monomial, &Scalar) -> bool,
    {
        LaurentPoly {
            rank: self.rank,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the coefficients in another field (ℚ → 𝔽_p reduces).
    pub fn to_field(&self, target: FieldSpec) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero(self.rank, target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.to_field(target)?);
        }
        Ok(out)
    }

    /// Componentwise minimum and maximum exponents; `None` for zero.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for m in it {
            for i in 0..self.rank {
                lo[i] = lo[i].min(m.0[i]);
                hi[i] = hi[i].max(m.0[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact division in the Laurent ring: `Some(q)` with `q·divisor = self`,
    /// or `None` when `divisor` does not divide.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Option<LaurentPoly>, LaurentError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Ok(Some(self.shift(&m.neg()).scale(&c.inv().unwrap())));
        }
        // Degrees in each coordinate add under multiplication, so the quotient
        // support lives in this box.
        let (plo, phi) = self.bounding_box().unwrap();
        let (dlo, dhi) = divisor.bounding_box().unwrap();
        let lo: Vec<i64> = plo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = phi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Ok(None);
        }
        let (dmin, dcoeff) = divisor.terms.iter().next().unwrap();
        let dinv = dcoeff.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.rank, self.field);
        while let Some((rmin, rc)) = rem.terms.iter().next() {
            let qm = rmin.sub(dmin);
            if qm.0.iter().zip(lo.iter().zip(&hi)).any(|(e, (a, b))| e < a || e > b) {
                return Ok(None);
            }
            let qc = rc.mul(&dinv);
            for (m, c) in &divisor.terms {
                rem.add_term(m.add(&qm), c.mul(&qc).neg());
            }
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Greatest common divisor in F[t^±] (rank 1 only), normalized so that
    /// its lowest term is `1·t^0`.
    pub fn univariate_gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check(other)?;
        assert_eq!(self.rank, 1, "univariate_gcd needs rank 1");
        let mut a = to_dense(self);
        let mut b = to_dense(other);
        while !b.is_empty() {
            let r = dense_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Ok(LaurentPoly::zero(1, self.field));
        }
        let lead_inv = a.last().unwrap().inv().unwrap();
        let g = LaurentPoly::from_terms(
            1,
            self.field,
            a.iter()
                .enumerate()
                .map(|(i, c)| (Monomial(vec![i as i64]), c.mul(&lead_inv))),
        );
        Ok(g.normalize_unit().0)
    }

    /// Divides out a unit `c·x^m` so the lexicographically smallest term
    /// becomes `1·x^0`. Returns the normalized polynomial and the unit removed.
    pub fn normalize_unit(&self) -> (LaurentPoly, Option<(Monomial, Scalar)>) {
        match self.terms.iter().next() {
            None => (self.clone(), None),
            Some((m, c)) => {
                let (m, c) = (m.clone(), c.clone());
                let inv = c.inv().unwrap();
                (self.shift(&m.neg()).scale(&inv), Some((m, c)))
            }
        }
    }

    /// Vertices of the Newton polytope, i.e. the support points that are
    /// order-minimal for some total order on ℤⁿ.
    pub fn newton_vertices(&self) -> Result<Vec<Monomial>, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let pts: Vec<Vec<i64>> = self.terms.keys().map(|m| m.0.clone()).collect();
        Ok(polytope::vertex_indices(&pts)
            .into_iter()
            .map(|i| Monomial(pts[i].clone()))
            .collect())
    }

    /// Terms whose exponent minimizes `weights·m`, and that minimum.
    pub fn min_face(&self, weights: &[i64]) -> Option<(i64, LaurentPoly)> {
        let min = self.terms.keys().map(|m| m.dot(weights)).min()?;
        Some((min, self.filter_terms(|m, _| m.dot(weights) == min)))
    }

    /// Parses expressions like `t - 1 - 2*s^-1*t^3` with the given variable
    /// names. Coefficients may be integers or fractions `a/b`.
    pub fn parse(text: &str, vars: &[&str], field: FieldSpec) -> Result<LaurentPoly, LaurentError> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
            field,
        }
        .parse_sum()
    }

    /// Renders the polynomial using the supplied variable names.
    pub fn display_with(&self, vars: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(j, e)| {
                    let name = vars.get(j).map(|s| s.to_string()).unwrap_or(format!("x{j}"));
                    if *e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let (neg, abs) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Default variable names: `t, s, u` for small ranks, `x0, x1, …` otherwise.
pub fn default_var_names(rank: usize) -> Vec<String> {
    if rank <= 3 {
        ["t", "s", "u"][..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (0..rank).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.rank);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

fn to_dense(p: &LaurentPoly) -> Vec<Scalar> {
    if p.is_zero() {
        return Vec::new();
    }
    let (lo, hi) = p.bounding_box().unwrap();
    let mut v = vec![p.field.zero(); (hi[0] - lo[0] + 1) as usize];
    for (m, c) in &p.terms {
        v[(m.0[0] - lo[0]) as usize] = c.clone();
    }
    v
}

fn dense_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap().mul(&lead_inv);
        let off = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[off + i] = r[off + i].sub(&bc.mul(&c));
        }
        r.pop();
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    r
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&self.field.from_i64(-1))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    field: FieldSpec,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> LaurentError {
        LaurentError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| LaurentError::Parse {
                pos: start,
                msg: "expected integer".into(),
            })
    }

    fn parse_sum(&mut self) -> Result<LaurentPoly, LaurentError> {
        let rank = self.vars.len();
        let mut acc = LaurentPoly::zero(rank, self.field);
        let mut sign = 1i64;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let term = self.parse_term()?;
            acc = &acc + &term.scale(&self.field.from_i64(sign));
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            }
        }
    }

    fn parse_term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let rank = self.vars.len();
        let mut coeff = self.field.one();
        let mut exps = vec![0i64; rank];
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    let mut d = BigInt::from(1);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        d = self.integer()?;
                    }
                    coeff = coeff.mul(&self.field.from_ratio(&n, &d)?);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| LaurentError::Parse {
                            pos: start,
                            msg: format!("unknown variable `{name}`"),
                        })?;
                    let mut e = 1i64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let n = self.integer()?;
                        e = i64::try_from(n).map_err(|_| self.err("exponent out of range"))?;
                    }
                    exps[idx] += e;
                }
                Some(b'(') if first => {
                    self.pos += 1;
                    return Err(self.err("parentheses are not supported"));
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            first = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok(LaurentPoly::monomial(Monomial(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn p(text: &str, vars: &[&str], f: FieldSpec) -> LaurentPoly {
        LaurentPoly::parse(text, vars, f).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("1 + t", &["t"], q());
        let b = p("1 - t", &["t"], q());
        assert_eq!(&a * &b, p("1 - t^2", &["t"], q()));
    }

    #[test]
    fn frobenius_over_f2() {
        let f2 = FieldSpec::PrimeField(2);
        let a = p("1 + t", &["t"], f2);
        assert_eq!(&a * &a, p("1 + t^2", &["t"], f2));
    }

    #[test]
    fn identity_product() {
        let a = p("1 + s + t", &["t", "s"], q());
        assert_eq!(&a * &LaurentPoly::one(2, q()), a);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = LaurentPoly::one(1, q());
        let b = LaurentPoly::one(2, q());
        assert_eq!(a.checked_mul(&b), Err(LaurentError::RankMismatch(1, 2)));
        let c = LaurentPoly::one(1, FieldSpec::PrimeField(3));
        assert!(matches!(a.checked_add(&c), Err(LaurentError::FieldMismatch(..))));
    }

    #[test]
    fn exact_division() {
        let vars = ["t", "s"];
        let a = p("t - 1 - s", &vars, q());
        let b = p("2 + s^-1*t^3 - s", &vars, q());
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), Some(b.clone()));
        assert_eq!(prod.exact_div(&b).unwrap(), Some(a.clone()));
        let c = p("1 + t + s", &vars, q());
        assert_eq!(prod.exact_div(&c).unwrap(), None);
        assert_eq!(a.exact_div(&LaurentPoly::zero(2, q())), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn gcd_in_one_variable() {
        let vars = ["t"];
        let a = p("t^-2 - 1", &vars, q());
        let b = p("t^3 - t^2", &vars, q());
        let g = a.univariate_gcd(&b).unwrap();
        assert_eq!(g, p("1 - t", &vars, q()).normalize_unit().0);
    }

    #[test]
    fn newton_vertices_examples() {
        let vars = ["t", "s"];
        let single = p("3*t^2*s^-1", &vars, q());
        assert_eq!(single.newton_vertices().unwrap(), vec![Monomial(vec![2, -1])]);
        let square = p("1 + t + s + t*s", &vars, q());
        assert_eq!(square.newton_vertices().unwrap().len(), 4);
        let line = p("1 + t + t^2", &vars, q());
        assert_eq!(
            line.newton_vertices().unwrap(),
            vec![Monomial(vec![0, 0]), Monomial(vec![2, 0])]
        );
        assert_eq!(
            LaurentPoly::zero(2, q()).newton_vertices(),
            Err(LaurentError::ZeroPolynomial)
        );
    }

    #[test]
    fn parse_and_display() {
        let vars = ["t", "s"];
        let a = p("-2*t^-1*s + 1/3 - s^2", &vars, q());
        let back = p(&a.display_with(&vars), &vars, q());
        assert_eq!(a, back);
        assert!(LaurentPoly::parse("t + y", &vars, q()).is_err());
        assert!(LaurentPoly::parse("t +", &vars, q()).is_err());
    }
}
