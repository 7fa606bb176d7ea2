//! Small complexes, presentations and random generators shared by the
//! self-test, the command line and the test suites.

use rand::Rng;

use crate::homology::{single_map_complex, FreeChainComplex, LaurentComplex};
use crate::laurent::{LaurentPoly, Monomial};
use crate::presentation::Presentation;
use crate::ring::Matrix;
use crate::scalar::FieldSpec;

pub const TREFOIL: &str = "<a, b | a b a B A B>";
pub const FIGURE_EIGHT: &str = "<a, b | A b a B a b A B a B>";
pub const TORUS: &str = "<a, b | a b A B>";
/// `F₂ → ℤ` killing `b`.
pub const FREE_KILLED: &str = "<a, b | >\na -> 1\nb -> 0\n";

fn parse(s: &str, vars: &[&str], field: FieldSpec) -> LaurentPoly {
    LaurentPoly::parse(s, vars, field).expect("fixture polynomial")
}

/// `0 ← F[t^±] ←(t−1)− F[t^±] ← 0`.
pub fn circle(field: FieldSpec) -> LaurentComplex {
    let one = parse("1", &["t"], field);
    single_map_complex(Matrix::from_rows(1, 1, vec![vec![parse("t-1", &["t"], field)]], &one).unwrap())
}

/// Ranks `(1, 1)` with `A_1 = 0`.
pub fn zero_differential(field: FieldSpec, rank: usize) -> LaurentComplex {
    single_map_complex(Matrix::zeros(1, 1, &LaurentPoly::zero(rank, field)))
}

/// The Koszul complex of ℤ², ranks `(1, 2, 1)`.
pub fn koszul(field: FieldSpec) -> LaurentComplex {
    let v = |s: &str| parse(s, &["t", "s"], field);
    let one = v("1");
    let a1 = Matrix::from_rows(1, 2, vec![vec![v("t-1"), v("s-1")]], &one).unwrap();
    let a2 = Matrix::from_rows(2, 1, vec![vec![v("s-1")], vec![v("1-t")]], &one).unwrap();
    FreeChainComplex::new(&one, vec![1, 2, 1], vec![a1, a2]).unwrap()
}

/// The one-matrix complex `[t − 1 − s]` over ℤ².
pub fn triangle(field: FieldSpec) -> LaurentComplex {
    let one = parse("1", &["t", "s"], field);
    single_map_complex(Matrix::from_rows(1, 1, vec![vec![parse("t-1-s", &["t", "s"], field)]], &one).unwrap())
}

pub fn fox(text: &str, field: FieldSpec) -> LaurentComplex {
    Presentation::parse(text)
        .expect("fixture presentation")
        .fox_complex(field)
        .expect("fixture complex")
}

/// A nonzero coefficient in `[-bound, bound]`.
pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, bound: i64) -> crate::scalar::Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-bound..=bound));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `terms` terms with exponents in `[-bound, bound]^rank`; possibly
/// zero only when `terms == 0`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, rank: usize, field: FieldSpec, terms: usize, bound: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(rank, field);
    while p.num_terms() < terms {
        let e: Vec<i64> = (0..rank).map(|_| rng.gen_range(-bound..=bound)).collect();
        if p.coeff(&Monomial(e.clone())).is_zero() {
            p.add_term(Monomial(e), random_coeff(rng, field, 4));
        }
    }
    p
}

/// A product of random elementary matrices and sign flips.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return u;
    }
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-1..=1);
        for c in 0..n {
            u[i][c] += k * u[j][c];
        }
    }
    for row in u.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    u
}

/// A primitive vector with entries in `[-bound, bound]`.
pub fn random_primitive<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if crate::lattice::gcd_vec(&v) == 1 {
            return v;
        }
    }
}
