use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vknot_core::based_matrix::{self, BasedMatrix, Flavor};
use vknot_core::diagram::{ComponentOrder, Framing, GaussDiagram, Kind, Move, MoveOptions};
use vknot_core::formal_sum::{compare, fingerprint_projection};
use vknot_core::harness::random_diagram_with;
use vknot_core::invariants::{self, Invariant, InvariantValue};
use vknot_core::{LaurentPolynomial, Verdict};

fn kinds() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Closed), Just(Kind::Long)]
}

fn framings() -> impl Strategy<Value = Framing> {
    prop_oneof![Just(Framing::Framed), Just(Framing::Unframed)]
}

fn diagram(kind: Kind, framing: Framing, max: usize, flat: bool) -> impl Strategy<Value = GaussDiagram> {
    (0..=max, any::<u64>())
        .prop_map(move |(n, seed)| random_diagram_with(&mut ChaCha8Rng::seed_from_u64(seed), kind, framing, n, flat))
}

fn any_diagram(max: usize) -> impl Strategy<Value = GaussDiagram> {
    (kinds(), framings()).prop_flat_map(move |(k, f)| diagram(k, f, max, false))
}

fn poly(v: InvariantValue) -> LaurentPolynomial {
    match v {
        InvariantValue::Poly(p) => p,
        InvariantValue::Sum(_) => panic!("expected a polynomial"),
    }
}

fn polys() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-4i32..5, -3i64..4), 0..5)
        .prop_map(|terms| terms.into_iter().map(|(e, c)| LaurentPolynomial::monomial(c, e)).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_form_round_trips(d in any_diagram(7)) {
        let again: GaussDiagram = d.to_string().parse().unwrap();
        prop_assert_eq!(&again, &d);
        prop_assert_eq!(again.to_string(), d.to_string());
    }

    #[test]
    fn moves_keep_diagrams_valid_and_invert(d in any_diagram(6), pick in any::<prop::sample::Index>()) {
        let moves = d.legal_moves(MoveOptions { additions: true, crossing_changes: true });
        prop_assume!(!moves.is_empty());
        let m = moves[pick.index(moves.len())];
        let after = d.apply_move(&m).unwrap();
        prop_assert!(after.validate().is_ok());
        let back = after.apply_move(&m.inverse(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn flat_singular_moves_invert(d in (kinds(), framings()).prop_flat_map(|(k, f)| diagram(k, f, 6, true)),
                                  g in any::<prop::sample::Index>(), pick in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let d = d.glue(g.index(d.num_arrows())).unwrap();
        let moves = d.legal_moves(MoveOptions::default());
        prop_assume!(!moves.is_empty());
        let m = moves[pick.index(moves.len())];
        let after = d.apply_move(&m).unwrap();
        prop_assert!(after.validate().is_ok());
        prop_assert_eq!(after.apply_move(&m.inverse(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn smoothing_drops_one_arrow(d in any_diagram(7), c in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let t = d.smooth(c.index(d.num_arrows())).unwrap();
        prop_assert_eq!(t.arrows().len(), d.num_arrows() - 1);
        prop_assert_eq!(t.lens()[0] + t.lens()[1], d.num_slots() - 2);
        prop_assert!(t.validate().is_ok());
    }

    #[test]
    fn crossing_changes_keep_pt_mod2(d in any_diagram(7), c in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let e = d.apply_move(&Move::CrossingChange { arrow: c.index(d.num_arrows()) }).unwrap();
        prop_assert_eq!(invariants::pt_mod2(&e).unwrap(), invariants::pt_mod2(&d).unwrap());
    }

    #[test]
    fn long_pt_equals_closure_and_ignores_basepoint(d in framings().prop_flat_map(|f| diagram(Kind::Long, f, 7, false)),
                                                     shift in -20i64..20) {
        let p = invariants::pt(&d).unwrap();
        prop_assert_eq!(invariants::pt(&d.closure().unwrap()).unwrap(), p.clone());
        prop_assert_eq!(invariants::pt(&d.move_basepoint(shift).unwrap()).unwrap(), p);
        let m = based_matrix::build(&d.flatten()).unwrap();
        prop_assert_eq!(based_matrix::build(&d.move_basepoint(shift).unwrap().flatten()).unwrap(), m);
    }

    #[test]
    fn connected_sum_adds_polynomials(f in framings(), a in any::<u64>(), b in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(a ^ b.rotate_left(7));
        let x = random_diagram_with(&mut rng, Kind::Long, f, (a % 6) as usize, false);
        let y = random_diagram_with(&mut rng, Kind::Long, f, (b % 6) as usize, false);
        let s = x.connected_sum(&y).unwrap();
        prop_assert_eq!(invariants::pt(&s).unwrap(), invariants::pt(&x).unwrap() + invariants::pt(&y).unwrap());
        prop_assert_eq!(
            invariants::pt_ordered(&s).unwrap(),
            invariants::pt_ordered(&x).unwrap() + invariants::pt_ordered(&y).unwrap()
        );
    }

    #[test]
    fn framed_first_derivative_is_a_monomial(d in kinds().prop_flat_map(|k| diagram(k, Framing::Framed, 7, false)),
                                             c in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let g = d.glue(c.index(d.num_arrows())).unwrap();
        let v = poly(invariants::vassiliev_extend(Invariant::Pt, &g).unwrap());
        let terms: Vec<(i32, i64)> = v.terms().collect();
        prop_assert_eq!(terms.len(), 1);
        prop_assert!(terms[0].0 >= 0 && terms[0].1 == 2);
        prop_assert_eq!(v, invariants::pt_derivative(&g).unwrap());
    }

    #[test]
    fn unframed_first_derivative_vanishes_at_one(d in kinds().prop_flat_map(|k| diagram(k, Framing::Unframed, 7, false)),
                                                c in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let g = d.glue(c.index(d.num_arrows())).unwrap();
        let v = poly(invariants::vassiliev_extend(Invariant::Pt, &g).unwrap());
        prop_assert_eq!(v.eval_one(), 0);
        prop_assert_eq!(v, invariants::pt_derivative(&g).unwrap());
    }

    #[test]
    fn unframed_bracket_is_even_at_one(d in kinds().prop_flat_map(|k| diagram(k, Framing::Unframed, 8, false)),
                                       c in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let t = d.smooth(c.index(d.num_arrows())).unwrap();
        prop_assert_eq!(invariants::bracket_b_mod2(&t).unwrap().eval_one() % 2, 0);
    }

    #[test]
    fn bracket_flips_sign_with_component_order(d in any_diagram(7), c in any::<prop::sample::Index>()) {
        prop_assume!(d.num_arrows() > 0);
        let t = d.smooth(c.index(d.num_arrows())).unwrap();
        let right = invariants::bracket_b(&t, ComponentOrder::RightFirst).unwrap();
        let second = invariants::bracket_b(&t, ComponentOrder::RightSecond).unwrap();
        prop_assert_eq!(second, right.scale(-1));
    }

    #[test]
    fn glued_kink_gives_annihilating_double_point(d in kinds().prop_flat_map(|k| diagram(k, Framing::Unframed, 7, false))) {
        let g = d.add_glued_kink().unwrap();
        prop_assert_eq!(g.singular_arrows().len(), 1);
        let m = based_matrix::build(&g.flatten()).unwrap();
        prop_assert!(m.is_annihilating_row(m.n() - 1));
    }

    #[test]
    fn invariants_compare_equal_to_themselves(d in any_diagram(6)) {
        let s = invariants::smoothing_invariant(&d).unwrap();
        prop_assert_eq!(compare(&s, &s), Verdict::Equal);
        let g = invariants::glueing_invariant(&d).unwrap();
        prop_assert_eq!(compare(&g, &g), Verdict::Equal);
        prop_assert_eq!(fingerprint_projection(&s), invariants::smoothing_fingerprints(&d).unwrap());
        prop_assert_eq!(fingerprint_projection(&g), invariants::glueing_fingerprints(&d).unwrap());
    }

    #[test]
    fn matrices_are_skew_and_canonical_forms_are_stable(
        d in (kinds(), framings()).prop_flat_map(|(k, f)| diagram(k, f, 7, true)),
        seed in any::<u64>(),
    ) {
        let m = based_matrix::build(&d).unwrap();
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.entry(i, j), -m.entry(j, i));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mid: Vec<usize> = m.middle().collect();
        for i in (1..mid.len()).rev() {
            mid.swap(i, rng.gen_range(0..=i));
        }
        let mut perm = vec![0];
        perm.extend(mid);
        perm.extend(m.d_index());
        let p = m.permuted(&perm);
        prop_assert_eq!(p.canonical_form(), m.canonical_form());
        prop_assert_eq!(m.canonical_form().canonical_form(), m.canonical_form());
        prop_assert_eq!(BasedMatrix::from_json(&m.to_json()).unwrap(), m.clone());
        prop_assert_eq!(m.flavor(), if d.framing() == Framing::Framed { Flavor::Framed } else { Flavor::Unframed });
    }

    #[test]
    fn polynomial_ring_laws(a in polys(), b in polys(), c in polys()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, LaurentPolynomial::zero());
        prop_assert_eq!((&a + &b).reduce_mod2(), (&a.reduce_mod2() + &b.reduce_mod2()).reduce_mod2());
        let again: String = a.to_string();
        prop_assert_eq!(again, a.clone().to_string());
    }
}
