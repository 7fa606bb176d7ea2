use std::cmp::Ordering;

use novfiber::crossed::{lattice_quotient_structure, regroup, regular_matrix, regular_matrix_series, unregroup, CosetSection, CrossedElement};
use novfiber::fixtures;
use novfiber::growth::QuotientTower;
use novfiber::homology::single_map_complex;
use novfiber::io::{read_chain, read_complex, read_poly, read_tower, write_chain, write_complex, write_poly, write_tower, RingSpec};
use novfiber::lattice::Sublattice;
use novfiber::laurent::{LaurentPoly, Monomial};
use novfiber::orders::{extend_order, restrict_order, Character, MatrixOrder};
use novfiber::presentation::Presentation;
use novfiber::ring::Matrix;
use novfiber::scalar::FieldSpec;
use novfiber::series::{expand_fraction, invert_poly, nov_invert, NovikovSeries};
use novfiber::skewfield::LatticeChain;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::PrimeField(2);
const F5: FieldSpec = FieldSpec::PrimeField(5);

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(F2), Just(F5)]
}

fn poly(rank: usize, field: FieldSpec, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, rank), -4i64..=4), 0..=max_terms).prop_map(move |terms| {
        LaurentPoly::from_terms(rank, field, terms.into_iter().map(|(e, c)| (Monomial(e), field.from_i64(c))))
    })
}

fn nonzero_poly(rank: usize, field: FieldSpec, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(rank, field, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn character(rank: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(-3i64..=3, rank)
        .prop_filter("nonzero", |w| w.iter().any(|&x| x != 0))
        .prop_map(Character::new)
}

/// `f` whose minimal `φ`-slab is a single term.
fn unit_leading(rank: usize, field: FieldSpec) -> impl Strategy<Value = (LaurentPoly, Character)> {
    (character(rank), nonzero_poly(rank, field, 5)).prop_filter_map("leading slab is a monomial", |(phi, f)| {
        f.min_face(&phi.weights).filter(|(_, s)| s.is_unit()).map(|_| (f, phi))
    })
}

fn triples(f: FieldSpec) -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
    (poly(2, f, 4), poly(2, f, 4), poly(2, f, 4))
}

fn ring_axioms(f: &LaurentPoly, g: &LaurentPoly, h: &LaurentPoly) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&(f * g) * h), &(f * &(g * h)));
    prop_assert_eq!(&(f * &(g + h)), &(&(f * g) + &(f * h)));
    prop_assert_eq!(&(&(f + g) * h), &(&(f * h) + &(g * h)));
    prop_assert_eq!(&(f * g), &(g * f));
    prop_assert_eq!(&(&(f + g) - g), f);
    if !f.is_zero() && !g.is_zero() {
        prop_assert!(!(f * g).is_zero());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms_over_q((f, g, h) in triples(Q)) {
        ring_axioms(&f, &g, &h)?;
    }

    #[test]
    fn ring_axioms_over_f2((f, g, h) in triples(F2)) {
        ring_axioms(&f, &g, &h)?;
    }

    #[test]
    fn ring_axioms_over_f5((f, g, h) in triples(F5)) {
        ring_axioms(&f, &g, &h)?;
    }
}

/// Newton vertices are exactly the points that are minimal under some order.
#[test]
fn newton_vertices_are_order_minima() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let terms = rand::Rng::gen_range(&mut rng, 1..=7);
        let f = fixtures::random_poly(&mut rng, 2, Q, terms, 2);
        let mut minima: Vec<Monomial> = (0..1000)
            .map(|_| MatrixOrder::random(&mut rng, 2, 1000).leading_term(&f).unwrap().0)
            .collect();
        minima.sort();
        minima.dedup();
        let mut vertices = f.newton_vertices().unwrap();
        vertices.sort();
        assert_eq!(minima, vertices, "{f}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// A product never claims completeness beyond what the exact product confirms.
    #[test]
    fn series_windows_are_sound(
        (f, g) in field().prop_flat_map(|k| (poly(2, k, 5), poly(2, k, 5))),
        phi in character(2),
        a in -4i64..8,
        b in -4i64..8,
    ) {
        let s = NovikovSeries::from_poly(&f, &phi, a).unwrap();
        let t = NovikovSeries::from_poly(&g, &phi, b).unwrap();
        let exact = |p: &LaurentPoly| NovikovSeries::from_poly(p, &phi, 1000).unwrap();
        let prod = s.checked_mul(&t).unwrap();
        prop_assert!(prod.agrees_up_to(&exact(&(&f * &g)), prod.complete_to()));
        let sum = s.checked_add(&t).unwrap();
        prop_assert!(sum.agrees_up_to(&exact(&(&f + &g)), sum.complete_to()));
        let scaled = s.mul_poly(&g).unwrap();
        prop_assert!(scaled.agrees_up_to(&exact(&(&f * &g)), scaled.complete_to()));
    }

    #[test]
    fn inverses_are_exact_through_their_window(
        (f, phi) in field().prop_flat_map(|k| prop_oneof![unit_leading(1, k), unit_leading(2, k)]),
        t in prop_oneof![Just(3i64), Just(8i64)],
        a in 0i64..6,
    ) {
        let (v, _) = f.min_face(&phi.weights).unwrap();
        let inv = invert_poly(&f, &phi, t - v).unwrap();
        prop_assert!(inv.complete_to() >= t - v);
        let low = (&f * &inv.to_poly()).filter_terms(|m, _| phi.eval(m) <= t);
        prop_assert!(low.is_one(), "f·f⁻¹ = {} through {}", low, t);
        // inverting a truncation reports a window the full inverse confirms
        let truncated = NovikovSeries::from_poly(&f, &phi, v + a).unwrap();
        let inv = nov_invert(&truncated, t).unwrap();
        let reference = invert_poly(&f, &phi, inv.complete_to() + 4).unwrap();
        prop_assert!(inv.agrees_up_to(&reference, inv.complete_to()));
    }

    #[test]
    fn fraction_expansions_multiply_back(
        (x, y) in field().prop_flat_map(|k| (poly(2, k, 3), nonzero_poly(2, k, 4))),
        seeds in (any::<u64>(), any::<u64>()),
    ) {
        let o1 = MatrixOrder::random(&mut ChaCha8Rng::seed_from_u64(seeds.0), 2, 3);
        let o2 = MatrixOrder::random(&mut ChaCha8Rng::seed_from_u64(seeds.1), 2, 3);
        let e1 = expand_fraction(&x, &y, &o1, 6).unwrap();
        let e2 = expand_fraction(&x, &y, &o2, 6).unwrap();
        for e in [&e1, &e2] {
            let back = e.mul_poly(&y).unwrap();
            prop_assert!(back.agrees_up_to(&NovikovSeries::from_poly(&x, e.character(), 1000).unwrap(), back.complete_to()));
        }
        if e1.character() == e2.character() {
            prop_assert!(e1.agrees_up_to(&e2, e1.complete_to().min(e2.complete_to())));
        }
    }

    /// Extending an order from `{a + b even}` and restricting back is the identity.
    #[test]
    fn extend_then_restrict(seed in any::<u64>(), pairs in prop::collection::vec((prop::collection::vec(-6i64..=6, 2), prop::collection::vec(-6i64..=6, 2)), 100)) {
        let l = Sublattice::new(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        let sub_order = MatrixOrder::random(&mut ChaCha8Rng::seed_from_u64(seed), 2, 4);
        let ext = extend_order(&l, &sub_order).unwrap();
        let back = restrict_order(&ext, &l).unwrap();
        for (x, y) in pairs {
            let (mx, my) = (Monomial(x.clone()), Monomial(y.clone()));
            let expected = sub_order.cmp_monomials(&mx, &my);
            prop_assert_eq!(back.cmp_monomials(&mx, &my), expected);
            let (ax, ay) = (Monomial(l.from_coords(&x)), Monomial(l.from_coords(&y)));
            prop_assert_eq!(ext.cmp_monomials(&ax, &ay), expected);
        }
    }
}

fn index_four_sections() -> Vec<CosetSection> {
    [
        vec![vec![4, 0], vec![0, 1]],
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![2, 1], vec![0, 2]],
        vec![vec![1, 1], vec![0, 4]],
    ]
    .iter()
    .map(|b| CosetSection::standard(&Sublattice::new(2, b).unwrap()).unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn regrouping_is_a_ring_isomorphism(
        (f, g) in field().prop_flat_map(|k| (poly(2, k, 5), poly(2, k, 5))),
        which in 0usize..4,
    ) {
        let section = &index_four_sections()[which];
        prop_assert_eq!(section.index(), 4);
        let s = lattice_quotient_structure(section, f.field());
        prop_assert_eq!(unregroup(&regroup(&f, section), section), f.clone());
        let lhs = regroup(&(&f * &g), section);
        let rhs = s
            .mul(&CrossedElement { coeffs: regroup(&f, section) }, &CrossedElement { coeffs: regroup(&g, section) })
            .unwrap();
        prop_assert_eq!(lhs, rhs.coeffs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regular_matrices_are_multiplicative(
        (f, g) in field().prop_flat_map(|k| (poly(2, k, 4), poly(2, k, 4))),
        which in 0usize..4,
    ) {
        let section = &index_four_sections()[which];
        let one = LaurentPoly::one(2, f.field());
        prop_assert_eq!(regular_matrix(&one, section), Matrix::identity(4, &one));
        let mf = regular_matrix(&f, section);
        let mg = regular_matrix(&g, section);
        prop_assert_eq!(regular_matrix(&(&f * &g), section), mf.checked_mul(&mg).unwrap());
    }

    /// Expanding an inverse and then regrouping inverts the regrouped element.
    #[test]
    fn regrouped_expansion_inverts_regular_matrix(
        (f, phi) in field().prop_flat_map(|k| unit_leading(2, k)),
        which in 0usize..4,
    ) {
        let section = &index_four_sections()[which];
        // representative and cocycle shifts move windows by at most 7R; v is the valuation of f
        let r = section.reps().iter().map(|g| phi.eval(&Monomial(g.clone())).abs()).max().unwrap();
        let (v, _) = f.min_face(&phi.weights).unwrap();
        let inv = invert_poly(&f, &phi, 8 * r + 2 * v.abs()).unwrap();
        let m_inv = regular_matrix_series(&inv, section);
        let proto = NovikovSeries::zero(2, f.field(), &phi, 1000);
        let m_f = regular_matrix(&f, section).map(&proto, |x| NovikovSeries::from_poly(x, &phi, 1000).unwrap());
        let prod = m_inv.checked_mul(&m_f).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let entry = prod.get(i, j);
                let expected = if i == j {
                    NovikovSeries::one(2, f.field(), &phi, 1000)
                } else {
                    NovikovSeries::zero(2, f.field(), &phi, 1000)
                };
                prop_assert!(entry.agrees_up_to(&expected, entry.complete_to()), "entry ({}, {}) = {:?}", i, j, entry);
                prop_assert!(entry.complete_to() >= 0);
            }
        }
    }
}

fn letter_word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "A", "B", "C"]), 1..6).prop_map(|w| w.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn poly_files_round_trip(p in field().prop_flat_map(|k| poly(2, k, 6))) {
        let ring = RingSpec::new(p.field(), 2);
        let once = write_poly(&p, &ring);
        let (q, ring2) = read_poly(&once).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(write_poly(&q, &ring2), once);
    }

    #[test]
    fn complex_files_round_trip(entries in field().prop_flat_map(|k| prop::collection::vec(poly(2, k, 4), 1..4))) {
        let k = entries.len();
        let proto = LaurentPoly::zero(2, entries[0].field());
        let c = single_map_complex(Matrix::from_rows(1, k, vec![entries], &proto).unwrap());
        let ring = RingSpec::new(c.field(), 2);
        let once = write_complex(&c, &ring);
        let (c2, ring2) = read_complex(&once).unwrap();
        prop_assert_eq!(&c2, &c);
        prop_assert_eq!(write_complex(&c2, &ring2), once);
    }

    #[test]
    fn presentations_round_trip(relators in prop::collection::vec(letter_word(), 0..3)) {
        let text = format!("<a, b, c | {}>", relators.join(", "));
        let p = Presentation::parse(&text).unwrap();
        let printed = p.to_string();
        let again = Presentation::parse(&printed).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn chain_and_tower_files_round_trip(seed in any::<u64>(), m in 2i64..4, steps in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = fixtures::random_unimodular(&mut rng, 3);
        let levels = vec![u[1..].to_vec(), u[2..].to_vec()];
        let chain = LatticeChain::from_generators(3, &levels).unwrap();
        let text = write_chain(&chain);
        let chain2 = read_chain(&text).unwrap();
        prop_assert_eq!(&chain2, &chain);
        prop_assert_eq!(write_chain(&chain2), text);

        let ms: Vec<i64> = (1..=steps as u32).map(|k| m.pow(k)).collect();
        let tower = QuotientTower::diagonal(2, &ms).unwrap();
        let text = write_tower(&tower);
        let tower2 = read_tower(&text, 2).unwrap();
        prop_assert_eq!(&tower2, &tower);
        prop_assert_eq!(write_tower(&tower2), text);
    }
}

#[test]
fn random_orders_are_total_on_small_boxes() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let o = MatrixOrder::random(&mut rng, 2, 3);
        for a in -2..=2 {
            for b in -2..=2 {
                let x = Monomial(vec![a, b]);
                assert_eq!(o.cmp_monomials(&x, &x), Ordering::Equal);
                let y = Monomial(vec![b, a]);
                if x != y {
                    assert_ne!(o.cmp_monomials(&x, &y), Ordering::Equal);
                    assert_eq!(o.cmp_monomials(&x, &y), o.cmp_monomials(&y, &x).reverse());
                }
            }
        }
    }
}
