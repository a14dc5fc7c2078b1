//! Seeded random inputs: PL maps, terrains and reduced words.

use ordaut_core::rational::rat;
use ordaut_core::{enumerate_color_sequences, realize, ColorSequence, Knot, Letter, PlAutomorphism, Rational, Word};
use rand::seq::SliceRandom;
use rand::Rng;

const SLOPES: [(i64, i64); 7] = [(1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1)];

fn slope<R: Rng>(rng: &mut R) -> Rational {
    let (n, d) = *SLOPES.choose(rng).unwrap();
    rat(n, d)
}

fn gap<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=8), rng.gen_range(1..=4))
}

/// A PL map with up to `max_knots` knots near the origin and small slopes.
pub fn random_pl<R: Rng>(rng: &mut R, max_knots: usize) -> PlAutomorphism {
    let n = rng.gen_range(0..=max_knots);
    if n == 0 {
        return PlAutomorphism::affine(slope(rng), rat(rng.gen_range(-8..=8), 2));
    }
    let mut x = rat(rng.gen_range(-12..=12), 2);
    let mut y = &x + rat(rng.gen_range(-6..=6), 2);
    let mut knots = vec![Knot::new(x.clone(), y.clone())];
    for _ in 1..n {
        x += gap(rng);
        y += gap(rng);
        knots.push(Knot::new(x.clone(), y.clone()));
    }
    PlAutomorphism::new(knots, slope(rng), slope(rng)).expect("increasing knots and positive slopes")
}

pub fn random_sequence<R: Rng>(rng: &mut R, max_len: usize) -> ColorSequence {
    let n = rng.gen_range(1..=max_len);
    enumerate_color_sequences(n).choose(rng).unwrap().clone()
}

/// `h⁻¹ s h` for a realized color sequence `s` and a random PL `h`; the
/// terrain has the colors of `s`, including fixed intervals.
pub fn random_terrain_pl<R: Rng>(rng: &mut R, max_len: usize) -> PlAutomorphism {
    let s = realize(&random_sequence(rng, max_len)).expect("enumerated sequences are terrains");
    let h = random_pl(rng, 3);
    h.inverse().then(&s).then(&h)
}

/// A reduced word of length `1..=max_len` in the variables `2..2+vars`.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize, vars: u32) -> Word {
    let len = rng.gen_range(1..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(2..2 + vars), if rng.gen_bool(0.5) { 1 } else { -1 });
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::new(letters).expect("no cancelling neighbours")
}
