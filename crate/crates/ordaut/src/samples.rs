//! Deterministic rational sample sets for pointwise verification.

use std::collections::BTreeSet;

use ordaut_core::rational::rat;
use ordaut_core::{support_decompose, ExtendedRational, PlAutomorphism, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SAMPLES: usize = 257;

/// Points that exercise every case branch of the constructions: element
/// anchors and midpoints, boundary points and points just beside them.
pub fn structural_points(maps: &[&PlAutomorphism]) -> Vec<Rational> {
    let mut out = Vec::new();
    for g in maps {
        for e in &support_decompose(g).elements {
            out.push(e.anchor());
            for end in [&e.lo, &e.hi] {
                if let ExtendedRational::Finite(b) = end {
                    out.push(b.clone());
                    for k in [2u32, 6, 12, 20] {
                        let eps = rat(1, 1 << k);
                        out.push(b + &eps);
                        out.push(b - &eps);
                    }
                }
            }
        }
    }
    out
}

/// `p/q` with `q <= 6`, in order of increasing height, inside `[-12, 12]`.
fn small_denominators() -> impl Iterator<Item = Rational> {
    (1..=6i64).flat_map(|q| (-12 * q..=12 * q).map(move |p| rat(p, q)))
}

/// `n` distinct sorted rationals: structural points of `maps` first (up to
/// half of the budget), then small-denominator points (up to three quarters),
/// then seeded random fractions.
pub fn sample_set(maps: &[&PlAutomorphism], n: usize, seed: u64) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for q in structural_points(maps) {
        if set.len() >= n / 2 {
            break;
        }
        set.insert(q);
    }
    let grid_budget = (3 * n) / 4;
    for q in small_denominators() {
        if set.len() >= grid_budget {
            break;
        }
        set.insert(q);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while set.len() < n {
        let d = rng.gen_range(1..=97i64);
        set.insert(rat(rng.gen_range(-40 * d..=40 * d), d));
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordaut_core::rational::int;
    use ordaut_core::{realize, Knot};

    #[test]
    fn exact_size_and_deterministic() {
        let g = realize(&"+0-".parse().unwrap()).unwrap();
        let a = sample_set(&[&g], DEFAULT_SAMPLES, 0);
        assert_eq!(a.len(), DEFAULT_SAMPLES);
        assert_eq!(a, sample_set(&[&g], DEFAULT_SAMPLES, 0));
        assert_ne!(a, sample_set(&[&g], DEFAULT_SAMPLES, 1));
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn includes_boundary_neighbours() {
        let bump = PlAutomorphism::new(
            vec![Knot::new(int(0), int(0)), Knot::new(rat(1, 3), rat(2, 3)), Knot::new(int(1), int(1))],
            int(1),
            int(1),
        )
        .unwrap();
        let a = sample_set(&[&bump], 64, 3);
        assert!(a.contains(&rat(1, 1 << 20)));
        assert!(a.contains(&(int(1) - rat(1, 4))));
        assert!(a.contains(&rat(1, 2)));
    }
}
