//! Exact convex-hull vertex detection for finite lattice point sets.
//!
//! A point `p` of a finite set `S` is a vertex of `conv(S)` iff it is not a
//! convex combination of `S \ {p}`. That membership question is a small linear
//! feasibility problem which we settle with a phase-one simplex over
//! `BigRational` using Bland's rule, so the answer is exact and the pivoting
//! terminates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Indices of the points of `points` that are vertices of their convex hull.
///
/// Duplicated points are treated as a single point: only the first copy can be
/// reported.
pub fn vertex_indices(points: &[Vec<i64>]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            continue;
        }
        let others: Vec<&Vec<i64>> = points.iter().filter(|q| *q != p).collect();
        if others.is_empty() || !in_convex_hull(p, &others) {
            out.push(i);
        }
    }
    out
}

/// Whether `p` lies in the convex hull of `others` (exact).
pub fn in_convex_hull(p: &[i64], others: &[&Vec<i64>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let dim = p.len();
    // Σ λ_q (q - p) = 0, Σ λ_q = 1, λ ≥ 0
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        rows.push(
            others
                .iter()
                .map(|q| BigRational::from_integer(BigInt::from(q[d] - p[d])))
                .collect(),
        );
        rhs.push(BigRational::zero());
    }
    rows.push(vec![BigRational::one(); others.len()]);
    rhs.push(BigRational::one());
    feasible(rows, rhs)
}

/// Phase-one simplex: is `{x ≥ 0 : A x = b}` nonempty?
fn feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = a.len();
    let n = a[0].len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    // tableau columns: n structural, m artificial
    let width = n + m;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the phase-one objective (sum of artificials), kept as
    // "minimize": cost_j = -Σ_i t[i][j] for structural columns
    loop {
        let mut cost = vec![BigRational::zero(); width];
        for j in 0..width {
            let c_j = if j >= n { BigRational::one() } else { BigRational::zero() };
            let mut z = BigRational::zero();
            for i in 0..m {
                if basis[i] >= n {
                    z += &t[i][j];
                }
            }
            cost[j] = c_j - z;
        }
        // Bland: smallest index with negative reduced cost
        let entering = (0..width).find(|&j| cost[j].is_negative() && !basis.contains(&j));
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let ratio = &b[i] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let piv = t[r][e].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &piv;
        }
        b[r] = &b[r] / &piv;
        for i in 0..m {
            if i != r && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..width {
                    let d = &f * &t[r][j];
                    t[i][j] -= d;
                }
                let d = &f * &b[r];
                b[i] -= d;
            }
        }
        basis[r] = e;
    }
    (0..m).all(|i| basis[i] < n || b[i].is_zero())
}
