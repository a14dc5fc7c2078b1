#![allow(dead_code)]

use ordaut_core::rational::{int, rat};
use ordaut_core::{
    enumerate_color_sequences, realize, support_decompose, ColorSequence, ExtendedRational, Knot, PlAutomorphism,
    Rational,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const SLOPES: [(i64, i64); 5] = [(1, 2), (2, 3), (1, 1), (3, 2), (2, 1)];
const GAPS: [(i64, i64); 5] = [(1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];

fn pick(table: &[(i64, i64)], i: usize) -> Rational {
    let (n, d) = table[i % table.len()];
    rat(n, d)
}

/// PL map from small index data: start point, then gap indices per knot.
pub fn pl_from_indices(x0: i64, y0: i64, gaps: &[(usize, usize)], left: usize, right: usize) -> PlAutomorphism {
    let left = pick(&SLOPES, left);
    let right = pick(&SLOPES, right);
    if gaps.is_empty() {
        // Globally affine with a single slope.
        return PlAutomorphism::affine(left, rat(y0 - x0, 2));
    }
    let mut x = rat(x0, 2);
    let mut y = rat(y0, 2);
    let mut knots = vec![Knot::new(x.clone(), y.clone())];
    for &(dx, dy) in &gaps[1..] {
        x += pick(&GAPS, dx);
        y += pick(&GAPS, dy);
        knots.push(Knot::new(x.clone(), y.clone()));
    }
    PlAutomorphism::new(knots, left, right).expect("increasing knots and positive slopes")
}

pub fn random_pl<R: Rng>(rng: &mut R) -> PlAutomorphism {
    let n = rng.gen_range(0..=4);
    let gaps: Vec<(usize, usize)> = (0..n).map(|_| (rng.gen_range(0..5), rng.gen_range(0..5))).collect();
    pl_from_indices(rng.gen_range(-6..=6), rng.gen_range(-6..=6), &gaps, rng.gen_range(0..5), rng.gen_range(0..5))
}

/// Conjugate of a slot realization, so fixed intervals and mixed signs occur.
pub fn random_terrain_pl<R: Rng>(rng: &mut R) -> PlAutomorphism {
    let n = rng.gen_range(1..=5);
    let seqs = enumerate_color_sequences(n);
    let s = seqs.choose(rng).unwrap();
    let h = random_pl(rng);
    h.inverse().then(&realize(s).unwrap()).then(&h)
}

pub fn pl_strategy() -> impl Strategy<Value = PlAutomorphism> {
    (-6i64..=6, -6i64..=6, prop::collection::vec((0usize..5, 0usize..5), 0..=4), 0usize..5, 0usize..5)
        .prop_map(|(x0, y0, gaps, l, r)| pl_from_indices(x0, y0, &gaps, l, r))
}

pub fn sequence_strategy() -> impl Strategy<Value = ColorSequence> {
    (1usize..=4).prop_flat_map(|n| {
        let all = enumerate_color_sequences(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// A grid of small-denominator rationals plus points close to every terrain
/// boundary of the given maps.
pub fn samples(maps: &[&PlAutomorphism]) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in [1i64, 2, 3, 7] {
        for k in -12..=12 {
            out.push(rat(k * 3, d));
        }
    }
    for g in maps {
        for e in &support_decompose(g).elements {
            for end in [&e.lo, &e.hi] {
                if let ExtendedRational::Finite(b) = end {
                    for j in [3u32, 10, 24] {
                        let eps = rat(1, 1i64 << j);
                        out.push(b + &eps);
                        out.push(b - &eps);
                    }
                }
            }
            out.push(e.anchor());
        }
    }
    out.push(int(0));
    out.sort();
    out.dedup();
    out
}
