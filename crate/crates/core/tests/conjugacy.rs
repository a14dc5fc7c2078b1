mod common;

use common::{random_pl, random_terrain_pl, samples};
use ordaut_core::rational::{int, rat};
use ordaut_core::{
    affine_bridge, color_sequence, conjugate_on_component, conjugate_on_fixed, orbit_locate, solve_conjugacy,
    solve_conjugacy_with, support_decompose, verify_pointwise, Automorphism, Color, ExtendedRational,
    FixedBridge, LocateMode, PlAutomorphism, Rational, TerrainElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ExtendedRational::{Finite, NegInf, PosInf};

fn shift(c: i64) -> PlAutomorphism {
    PlAutomorphism::translation(int(c))
}

fn random_rationals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-500..=500), rng.gen_range(1..=50))).collect()
}

fn conjugate_back(h: &Automorphism, g: &PlAutomorphism) -> Automorphism {
    h.inverse().then(&g.clone().into()).then(h)
}

#[test]
fn bridge_examples() {
    let b = affine_bridge(int(0), int(1), int(0), int(1)).unwrap();
    assert_eq!(b.eval(&rat(1, 2)), rat(1, 2));
    let b = affine_bridge(int(0), int(2), int(0), int(1)).unwrap();
    assert_eq!(b.eval(&int(1)), rat(1, 2));
    let b = affine_bridge(int(0), int(1), int(1), int(2)).unwrap();
    for q in [rat(0, 1), rat(1, 3), rat(-7, 2)] {
        assert_eq!(b.eval(&q), &q + int(1));
    }
    assert!(affine_bridge(int(1), int(1), int(0), int(1)).is_err());
    assert!(affine_bridge(int(0), int(1), int(2), int(1)).is_err());
}

#[test]
fn orbit_examples() {
    let s: Automorphism = shift(1).into();
    let dbl: Automorphism = PlAutomorphism::affine(int(2), int(0)).into();
    for mode in [LocateMode::Linear, LocateMode::FastForward] {
        assert_eq!(orbit_locate(&s, &int(0), &rat(7, 2), mode).unwrap().index, 3);
        assert_eq!(orbit_locate(&s, &int(0), &int(0), mode).unwrap().index, 0);
        let loc = orbit_locate(&dbl, &int(1), &int(100), mode).unwrap();
        assert_eq!((loc.index, loc.lower, loc.upper), (6, int(64), int(128)));
    }
}

#[test]
fn orbit_bracket_on_negative_component() {
    // t ↦ t - 1: α·g^(i+1) <= γ < α·g^i.
    let g: Automorphism = shift(-1).into();
    for mode in [LocateMode::Linear, LocateMode::FastForward] {
        let loc = orbit_locate(&g, &int(0), &rat(-5, 2), mode).unwrap();
        assert_eq!((loc.index, loc.lower, loc.upper), (2, int(-3), int(-2)));
        let loc = orbit_locate(&g, &int(0), &rat(5, 2), mode).unwrap();
        assert_eq!((loc.index, loc.lower, loc.upper), (-3, int(2), int(3)));
    }
}

#[test]
fn component_example_by_hand() {
    let line = TerrainElement::new(Color::Pos, NegInf, PosInf);
    let (g, f): (Automorphism, Automorphism) = (shift(2).into(), shift(1).into());
    let x = conjugate_on_component(&g, &f, &line, &line, &int(0), &int(0)).unwrap();
    assert_eq!(x.eval(&int(3)).unwrap(), rat(3, 2));
    // On [2i, 2i+2): (γ - 2i)/2 + i.
    for k in -30..30 {
        let gamma = rat(k, 5);
        let i = (gamma.clone() / int(2)).floor();
        assert_eq!(x.eval(&gamma).unwrap(), (&gamma - &i * int(2)) / int(2) + &i);
    }
    for delta in [int(0), rat(1, 2), rat(-5, 4)] {
        let back = x.eval_inverse(&delta).unwrap();
        assert_eq!(x.eval(&g.eval(&back)).unwrap(), f.eval(&delta));
    }
    let same = conjugate_on_component(&f, &f, &line, &line, &int(0), &int(0)).unwrap();
    for k in -20..20 {
        assert_eq!(same.eval(&rat(k, 3)).unwrap(), rat(k, 3));
    }
}

#[test]
fn component_rejects_mismatches() {
    let pos = TerrainElement::new(Color::Pos, NegInf, PosInf);
    let neg = TerrainElement::new(Color::Neg, NegInf, PosInf);
    let bounded = TerrainElement::new(Color::Pos, Finite(int(0)), Finite(int(1)));
    let g: Automorphism = shift(1).into();
    assert!(conjugate_on_component(&g, &g, &pos, &neg, &int(0), &int(0)).is_err());
    assert!(conjugate_on_component(&g, &g, &bounded, &pos, &int(5), &int(0)).is_err());
}

#[test]
fn fixed_examples() {
    let line = TerrainElement::new(Color::Fixed, NegInf, PosInf);
    assert_eq!(conjugate_on_fixed(&line, &line).unwrap(), FixedBridge::Identity);
    let a = TerrainElement::new(Color::Fixed, NegInf, Finite(int(2)));
    let b = TerrainElement::new(Color::Fixed, NegInf, Finite(int(5)));
    assert_eq!(conjugate_on_fixed(&a, &b).unwrap().eval(&int(-1)), int(2));
    let a = TerrainElement::new(Color::Fixed, Finite(int(0)), Finite(int(1)));
    let b = TerrainElement::new(Color::Fixed, Finite(int(0)), Finite(int(4)));
    let m = conjugate_on_fixed(&a, &b).unwrap();
    assert_eq!(m.eval(&rat(1, 3)), rat(4, 3));
    assert_eq!(m.eval(&int(1)), int(4));
    assert!(conjugate_on_fixed(&line, &a).is_err());
}

#[test]
fn solver_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = random_rationals(&mut rng, 100);
    let g = shift(2);
    let h = solve_conjugacy(&g, &g).unwrap().into();
    assert!(verify_pointwise(&conjugate_back(&h, &g), &g.clone().into(), &pts));
    let f = shift(1);
    let h = solve_conjugacy(&g, &f).unwrap().into();
    assert!(verify_pointwise(&conjugate_back(&h, &g), &f.into(), &pts));
    assert!(solve_conjugacy(&shift(1), &shift(-1)).is_none());
}

#[test]
fn verify_examples() {
    let id = Automorphism::identity();
    assert!(verify_pointwise(&id, &id, &[int(1), rat(-2, 3)]));
    assert!(!verify_pointwise(&shift(1).into(), &shift(2).into(), &[int(0)]));
}

#[test]
fn conjugators_are_sound_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..40 {
        let g = if round % 2 == 0 { random_pl(&mut rng) } else { random_terrain_pl(&mut rng) };
        let h0 = random_pl(&mut rng);
        let f = h0.inverse().then(&g).then(&h0);
        let pts = samples(&[&g, &f]);
        let lin: Automorphism = solve_conjugacy(&g, &f).expect("conjugates by construction").into();
        let ff: Automorphism = solve_conjugacy_with(&g, &f, LocateMode::FastForward).unwrap().into();
        assert!(verify_pointwise(&conjugate_back(&lin, &g), &f.clone().into(), &pts), "round {round}");
        assert!(verify_pointwise(&lin, &ff, &pts));
        for w in pts.windows(2) {
            assert!(lin.eval(&w[0]) < lin.eval(&w[1]));
        }
        for q in &pts {
            assert_eq!(&lin.eval_inverse(&lin.eval(q)), q);
            assert_eq!(&lin.eval(&lin.eval_inverse(q)), q);
        }
    }
}

#[test]
fn decision_matches_colors() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..60 {
        let g = random_terrain_pl(&mut rng);
        let f = random_terrain_pl(&mut rng);
        let same = color_sequence(&support_decompose(&g)) == color_sequence(&support_decompose(&f));
        match solve_conjugacy(&g, &f) {
            Some(h) => {
                assert!(same);
                yes += 1;
                let pts = samples(&[&g, &f]);
                assert!(verify_pointwise(&conjugate_back(&h.into(), &g), &f.into(), &pts));
            }
            None => {
                assert!(!same);
                no += 1;
            }
        }
    }
    assert!(yes > 0 && no > 0);
}
