use novfiber::fixtures::{self, random_poly};
use novfiber::fraction::Fraction;
use novfiber::homology::{
    betti_over_fractions, fibering_check, novikov_homology, novikov_homology_windowed, single_map_complex, smith_over_fractions,
    vc_rank_check, DegreeStatus, LaurentComplex,
};
use novfiber::lattice::Sublattice;
use novfiber::laurent::{LaurentPoly, Monomial};
use novfiber::orders::Character;
use novfiber::ring::Matrix;
use novfiber::scalar::FieldSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::PrimeField(2);

/// The part of a status both routes must agree on.
fn shape(s: &DegreeStatus) -> (&'static str, Option<usize>) {
    match s {
        DegreeStatus::VanishesExactly => ("vanishes", Some(0)),
        DegreeStatus::FreeOfRank { rank, .. } => ("free", Some(*rank)),
        DegreeStatus::Nonvanishing { .. } => ("nonvanishing", None),
        DegreeStatus::Inconclusive { .. } => ("inconclusive", None),
    }
}

fn random_entry(rng: &mut ChaCha8Rng, field: FieldSpec) -> LaurentPoly {
    match rng.gen_range(0..6) {
        0 => LaurentPoly::zero(2, field),
        1 => {
            let e = Monomial(vec![rng.gen_range(-1..=1), rng.gen_range(-1..=1)]);
            LaurentPoly::monomial(e, field.one())
        }
        _ => {
            let terms = rng.gen_range(1..=3);
            random_poly(rng, 2, field, terms, 1)
        }
    }
}

#[test]
fn exact_and_windowed_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut conclusive = 0;
    for trial in 0..200 {
        let field = if trial % 2 == 0 { Q } else { F2 };
        let k = if trial < 100 { 1 } else { 2 };
        let data: Vec<Vec<LaurentPoly>> = (0..k).map(|_| (0..k).map(|_| random_entry(&mut rng, field)).collect()).collect();
        let c = single_map_complex(Matrix::from_rows(k, k, data, &LaurentPoly::zero(2, field)).unwrap());
        let psi = Character::new(fixtures::random_primitive(&mut rng, 2, 2));
        let exact = novikov_homology(&c, &psi, 1, 16).unwrap();
        let windowed = novikov_homology_windowed(&c, &psi, 1, 16).unwrap();
        let a: Vec<_> = exact.statuses.iter().map(shape).collect();
        let b: Vec<_> = windowed.statuses.iter().map(shape).collect();
        assert_eq!(a, b, "trial {trial}: {:?} along {:?}", c.diff(1), psi.weights);
        if !exact.has_inconclusive() {
            conclusive += 1;
        }
    }
    assert_eq!(conclusive, 200);
}

fn fixture_complexes() -> Vec<(&'static str, LaurentComplex)> {
    let mut out = Vec::new();
    for field in [Q, F2] {
        out.push(("circle", fixtures::circle(field)));
        out.push(("zero differential", fixtures::zero_differential(field, 1)));
        out.push(("koszul", fixtures::koszul(field)));
        out.push(("triangle", fixtures::triangle(field)));
        out.push(("trefoil", fixtures::fox(fixtures::TREFOIL, field)));
        out.push(("figure-eight", fixtures::fox(fixtures::FIGURE_EIGHT, field)));
        out.push(("torus", fixtures::fox(fixtures::TORUS, field)));
        out.push(("free group", fixtures::fox(fixtures::FREE_KILLED, field)));
    }
    out
}

/// Two-sided Novikov vanishing forces the fraction-field Betti number to vanish.
#[test]
fn two_sided_vanishing_kills_fraction_betti() {
    let mut two_sided = 0;
    for (name, c) in fixture_complexes() {
        let betti = betti_over_fractions(&c);
        for ray in novfiber::homology::primitive_rays(c.rank(), 2) {
            let rep = fibering_check(&c, &Character::new(ray.clone()), c.top(), 12).unwrap();
            for (i, (p, m)) in rep.plus.statuses.iter().zip(&rep.minus.statuses).enumerate() {
                if p.vanishes() && m.vanishes() {
                    two_sided += 1;
                    assert_eq!(betti[i], 0, "{name} along {ray:?}, degree {i}");
                }
                if betti[i] > 0 {
                    assert!(!p.vanishes() && !m.vanishes(), "{name} along {ray:?}, degree {i}");
                }
            }
        }
    }
    assert!(two_sided > 0);
}

#[test]
fn smith_factorizations_multiply_out() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..60 {
        let field = if trial % 3 == 0 { F2 } else { Q };
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let data: Vec<Vec<Fraction>> = (0..r)
            .map(|_| (0..c).map(|_| Fraction::from_poly(random_entry(&mut rng, field))).collect())
            .collect();
        let m = Matrix::from_rows(r, c, data, &Fraction::zero(2, field)).unwrap();
        let snf = smith_over_fractions(&m);
        let pmq = snf.p.checked_mul(&m).unwrap().checked_mul(&snf.q).unwrap();
        assert_eq!(pmq, snf.d, "trial {trial}");
        for i in 0..r {
            for j in 0..c {
                let expected = if i == j && i < snf.rank { Fraction::one(2, field) } else { Fraction::zero(2, field) };
                assert_eq!(snf.d.get(i, j), &expected);
            }
        }
        assert_eq!(snf.rank, novfiber::fraction::fraction_rank(&m));
    }
}

#[test]
fn virtual_rank_formula_on_fixtures() {
    let diagonal_h = Sublattice::new(2, &[vec![1, 1], vec![0, 2]]).unwrap();
    let in_coordinates = |h: &Sublattice, psi: &[i64]| -> Vec<i64> {
        h.basis().iter().map(|b| b.iter().zip(psi).map(|(x, y)| x * y).sum()).collect()
    };
    let cases: Vec<(LaurentComplex, Sublattice, Vec<i64>)> = vec![
        (fixtures::zero_differential(Q, 1), Sublattice::scalar(1, 2), vec![1]),
        (fixtures::circle(Q), Sublattice::scalar(1, 2), vec![1]),
        (fixtures::circle(Q).direct_sum(&fixtures::zero_differential(Q, 1)), Sublattice::scalar(1, 2), vec![1]),
        (fixtures::circle(F2), Sublattice::scalar(1, 3), vec![1]),
        (fixtures::koszul(Q), Sublattice::new(2, &[vec![2, 0], vec![0, 1]]).unwrap(), vec![1, 1]),
        // ψ = (1, 2) on ℤ² isolates a term of t − 1 − s from both sides
        (fixtures::triangle(Q), diagonal_h.clone(), in_coordinates(&diagonal_h, &[1, 2])),
        (fixtures::fox(fixtures::FIGURE_EIGHT, Q), Sublattice::scalar(1, 2), vec![1]),
    ];
    for (c, h, psi) in cases {
        let rep = vc_rank_check(&c, &h, &Character::new(psi), 12).unwrap();
        assert!(rep.holds, "{rep:?}");
    }
    let sum = vc_rank_check(
        &fixtures::circle(Q).direct_sum(&fixtures::zero_differential(Q, 1)),
        &Sublattice::scalar(1, 2),
        &Character::new(vec![1]),
        12,
    )
    .unwrap();
    assert_eq!(sum.plus_ranks, vec![Some(2), Some(2)]);
}

#[test]
fn free_group_kernel_is_not_finitely_generated() {
    for field in [Q, F2] {
        let c = fixtures::fox(fixtures::FREE_KILLED, field);
        let rep = fibering_check(&c, &Character::new(vec![1]), 1, 8).unwrap();
        assert!(!rep.fibered);
        assert_eq!(rep.plus.statuses[1].known_rank(), Some(1));
        assert_eq!(rep.minus.statuses[1].known_rank(), Some(1));
    }
}
