mod common;

use common::{pl_strategy, sequence_strategy};
use ordaut_core::rational::{int, rat};
use ordaut_core::{
    color_sequence, enumerate_color_sequences, is_isomorphic, realize, support_decompose, validate, Color,
    ColorSequence, ExtendedRational, Knot, PlAutomorphism, Terrain, TerrainElement,
};
use proptest::prelude::*;

use ExtendedRational::{Finite, NegInf, PosInf};

// Independent count: every string over the three colors without "00".
fn brute_count(n: usize) -> usize {
    let mut count = 0;
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let digits: Vec<usize> = (0..n)
            .map(|_| {
                let d = c % 3;
                c /= 3;
                d
            })
            .collect();
        if !digits.windows(2).any(|w| w[0] == 0 && w[1] == 0) {
            count += 1;
        }
    }
    count
}

fn seq(s: &str) -> ColorSequence {
    s.parse().unwrap()
}

#[test]
fn class_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_color_sequences(n).len()).collect();
    assert_eq!(counts, vec![3, 8, 22, 60]);
    assert_eq!(counts[3], brute_count(4));
}

#[test]
fn count_recurrence() {
    let a: Vec<usize> = (0..=8).map(|n| enumerate_color_sequences(n).len()).collect();
    for n in 3..=8 {
        assert_eq!(a[n], 2 * a[n - 1] + 2 * a[n - 2], "n = {n}");
        assert_eq!(a[n], brute_count(n));
    }
}

#[test]
fn enumeration_is_sorted_and_legal() {
    let all = enumerate_color_sequences(3);
    let strings: Vec<String> = all.iter().map(|s| s.to_string()).collect();
    let mut sorted = strings.clone();
    sorted.sort();
    assert_eq!(strings, sorted);
    assert!(strings.iter().all(|s| !s.contains("00")));
}

#[test]
fn decomposition_examples() {
    let id = support_decompose(&PlAutomorphism::identity());
    assert_eq!(id.elements, vec![TerrainElement::new(Color::Fixed, NegInf, PosInf)]);
    let up = support_decompose(&PlAutomorphism::translation(int(1)));
    assert_eq!(up.elements, vec![TerrainElement::new(Color::Pos, NegInf, PosInf)]);
    assert_eq!(color_sequence(&support_decompose(&PlAutomorphism::translation(int(-1)))).to_string(), "-");

    let bump = PlAutomorphism::new(
        vec![Knot::new(int(0), int(0)), Knot::new(rat(1, 3), rat(2, 3)), Knot::new(int(1), int(1))],
        int(1),
        int(1),
    )
    .unwrap();
    let t = support_decompose(&bump);
    assert_eq!(
        t.elements,
        vec![
            TerrainElement::new(Color::Fixed, NegInf, Finite(int(0))),
            TerrainElement::new(Color::Pos, Finite(int(0)), Finite(int(1))),
            TerrainElement::new(Color::Fixed, Finite(int(1)), PosInf),
        ]
    );
    // Displacement-sign oracle on a grid.
    for k in -20..=20 {
        let q = rat(k, 16);
        let d = bump.eval(&q) - &q;
        let inside = q > int(0) && q < int(1);
        assert_eq!(d > int(0), inside, "at {q}");
    }
}

#[test]
fn isolated_fixed_points_are_boundaries() {
    // t ↦ 2t fixes only 0.
    let t = support_decompose(&PlAutomorphism::affine(int(2), int(0)));
    assert_eq!(color_sequence(&t).to_string(), "-+");
    assert_eq!(t.elements[0].hi, Finite(int(0)));
}

#[test]
fn isomorphism_examples() {
    let a = support_decompose(&PlAutomorphism::translation(int(1)));
    let b = support_decompose(&PlAutomorphism::translation(int(2)));
    let c = support_decompose(&PlAutomorphism::translation(int(-1)));
    assert!(is_isomorphic(&a, &a));
    assert!(is_isomorphic(&a, &b));
    assert!(!is_isomorphic(&a, &c));
}

#[test]
fn realize_examples() {
    assert!(realize(&seq("0")).unwrap().is_identity());
    assert_eq!(color_sequence(&support_decompose(&realize(&seq("+")).unwrap())).to_string(), "+");
    let g = realize(&seq("+0-")).unwrap();
    let t = support_decompose(&g);
    assert_eq!(color_sequence(&t).to_string(), "+0-");
    assert_eq!(t.elements[0].hi, Finite(int(1)));
    assert_eq!(t.elements[1], TerrainElement::new(Color::Fixed, Finite(int(1)), Finite(int(2))));
    let bad = "0+00".parse::<ColorSequence>();
    assert!(bad.map_or(true, |s| realize(&s).is_err()));
}

#[test]
fn unicode_minus_accepted() {
    assert_eq!(seq("+0\u{2212}"), seq("+0-"));
}

#[test]
fn realization_roundtrip_all() {
    for n in 1..=4 {
        for s in enumerate_color_sequences(n) {
            let g = realize(&s).unwrap();
            assert_eq!(color_sequence(&support_decompose(&g)), s);
        }
    }
}

#[test]
fn validate_rejects_bad_terrains() {
    assert!(validate(&support_decompose(&PlAutomorphism::identity())));
    let two_fixed = Terrain::new(vec![
        TerrainElement::new(Color::Fixed, NegInf, Finite(int(0))),
        TerrainElement::new(Color::Fixed, Finite(int(0)), PosInf),
    ]);
    assert!(!validate(&two_fixed));
    let gap = Terrain::new(vec![
        TerrainElement::new(Color::Pos, NegInf, Finite(int(0))),
        TerrainElement::new(Color::Neg, Finite(int(1)), PosInf),
    ]);
    assert!(!validate(&gap));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decomposition_is_valid(g in pl_strategy()) {
        prop_assert!(validate(&support_decompose(&g)));
    }

    #[test]
    fn component_signs(g in pl_strategy()) {
        for e in support_decompose(&g).elements {
            let q = e.anchor();
            let d = g.eval(&q) - &q;
            match e.color {
                Color::Pos => prop_assert!(d > int(0)),
                Color::Neg => prop_assert!(d < int(0)),
                Color::Fixed => prop_assert!(d == int(0)),
            }
        }
    }

    #[test]
    fn colors_are_conjugation_invariant(g in pl_strategy(), h in pl_strategy()) {
        let conj = h.inverse().then(&g).then(&h);
        prop_assert_eq!(color_sequence(&support_decompose(&conj)), color_sequence(&support_decompose(&g)));
    }

    #[test]
    fn conjugated_realizations_keep_colors(s in sequence_strategy(), h in pl_strategy()) {
        let g = h.inverse().then(&realize(&s).unwrap()).then(&h);
        let t = support_decompose(&g);
        prop_assert!(validate(&t));
        prop_assert_eq!(color_sequence(&t), s);
    }
}
