//! Piecewise-affine order automorphisms with finitely many knots.
//!
//! A map is stored as its knots plus the slopes of the two unbounded tails.
//! Between consecutive knots the map interpolates affinely; outside the knot
//! range it continues with the tail slope through the extreme knot. Strictly
//! increasing knots and positive tail slopes make every stored value a
//! continuous increasing bijection of the line.
//!
//! Values are kept in a normal form: knots collinear with their neighbours are
//! dropped, the identity has no knots, and any other globally affine map keeps
//! the single knot `(0, f(0))`. Structural equality is therefore equality of
//! maps.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::rational::{is_positive, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Knot {
    pub x: Rational,
    pub y: Rational,
}

impl Knot {
    pub fn new(x: Rational, y: Rational) -> Self {
        Knot { x, y }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PlError {
    #[error("knot x-coordinates must be strictly increasing (at knot {0})")]
    NonIncreasingX(usize),
    #[error("knot y-coordinates must be strictly increasing (at knot {0})")]
    NonIncreasingY(usize),
    #[error("tail slopes must be positive")]
    NonPositiveSlope,
    #[error("an empty knot list denotes the identity and requires unit tail slopes")]
    SlopedIdentity,
}

/// Piecewise-affine increasing bijection of the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlAutomorphism {
    knots: Vec<Knot>,
    left_slope: Rational,
    right_slope: Rational,
}

impl PlAutomorphism {
    /// Validates and canonicalizes.
    pub fn new(knots: Vec<Knot>, left_slope: Rational, right_slope: Rational) -> Result<Self, PlError> {
        if !is_positive(&left_slope) || !is_positive(&right_slope) {
            return Err(PlError::NonPositiveSlope);
        }
        if knots.is_empty() && (!left_slope.is_one() || !right_slope.is_one()) {
            return Err(PlError::SlopedIdentity);
        }
        for (i, w) in knots.windows(2).enumerate() {
            if w[0].x >= w[1].x {
                return Err(PlError::NonIncreasingX(i + 1));
            }
            if w[0].y >= w[1].y {
                return Err(PlError::NonIncreasingY(i + 1));
            }
        }
        Ok(Self::canonical(knots, left_slope, right_slope))
    }

    pub fn identity() -> Self {
        PlAutomorphism { knots: Vec::new(), left_slope: Rational::one(), right_slope: Rational::one() }
    }

    /// `t ↦ t + c`.
    pub fn translation(c: Rational) -> Self {
        Self::affine(Rational::one(), c)
    }

    /// `t ↦ a·t + b` for `a > 0`. Panics on a non-positive slope.
    pub fn affine(a: Rational, b: Rational) -> Self {
        assert!(is_positive(&a), "affine map needs a positive slope");
        let knots = alloc::vec![Knot::new(Rational::zero(), b)];
        Self::canonical(knots, a.clone(), a)
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn left_slope(&self) -> &Rational {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Rational {
        &self.right_slope
    }

    pub fn is_identity(&self) -> bool {
        self.knots.is_empty()
    }

    // Assumes strictly increasing knots and positive slopes.
    fn canonical(knots: Vec<Knot>, left_slope: Rational, right_slope: Rational) -> Self {
        let n = knots.len();
        if n == 0 {
            return PlAutomorphism { knots, left_slope, right_slope };
        }
        let mut slopes = Vec::with_capacity(n + 1);
        slopes.push(left_slope.clone());
        for w in knots.windows(2) {
            slopes.push((&w[1].y - &w[0].y) / (&w[1].x - &w[0].x));
        }
        slopes.push(right_slope.clone());
        let kept: Vec<Knot> = knots
            .iter()
            .enumerate()
            .filter(|(i, _)| slopes[*i] != slopes[*i + 1])
            .map(|(_, k)| k.clone())
            .collect();
        if !kept.is_empty() {
            return PlAutomorphism { knots: kept, left_slope, right_slope };
        }
        // Globally affine: t ↦ s·t + b with b = y0 - s·x0.
        let s = left_slope;
        let b = &knots[0].y - &s * &knots[0].x;
        if s.is_one() && b.is_zero() {
            Self::identity()
        } else {
            PlAutomorphism { knots: alloc::vec![Knot::new(Rational::zero(), b)], left_slope: s.clone(), right_slope: s }
        }
    }

    /// Image of `t`.
    pub fn eval(&self, t: &Rational) -> Rational {
        interpolate(&self.knots, &self.left_slope, &self.right_slope, t, false)
    }

    /// Preimage of `t`.
    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        interpolate(&self.knots, &self.left_slope, &self.right_slope, t, true)
    }

    /// Knots with coordinates swapped and reciprocal tail slopes.
    pub fn inverse(&self) -> Self {
        Self::canonical(
            self.knots.iter().map(|k| Knot::new(k.y.clone(), k.x.clone())).collect(),
            self.left_slope.recip(),
            self.right_slope.recip(),
        )
    }

    /// Left-to-right composition: the map `t ↦ other(self(t))`.
    pub fn then(&self, other: &PlAutomorphism) -> PlAutomorphism {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        let mut xs: Vec<Rational> = self.knots.iter().map(|k| k.x.clone()).collect();
        xs.extend(other.knots.iter().map(|k| self.eval_inverse(&k.x)));
        xs.sort();
        xs.dedup();
        let knots = xs
            .into_iter()
            .map(|x| {
                let y = other.eval(&self.eval(&x));
                Knot::new(x, y)
            })
            .collect();
        Self::canonical(knots, &self.left_slope * &other.left_slope, &self.right_slope * &other.right_slope)
    }

    /// `n`-fold left-to-right composition; negative `n` composes the inverse.
    pub fn power(&self, n: i64) -> PlAutomorphism {
        if n < 0 {
            return self.inverse().power(n.unsigned_abs() as i64);
        }
        let mut result = PlAutomorphism::identity();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.then(&base);
            }
        }
        result
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &PlAutomorphism) -> PlAutomorphism {
        self.envelope(other, Ordering::Less)
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &PlAutomorphism) -> PlAutomorphism {
        self.envelope(other, Ordering::Greater)
    }

    fn envelope(&self, other: &PlAutomorphism, keep: Ordering) -> PlAutomorphism {
        let mut xs: Vec<Rational> =
            self.knots.iter().chain(other.knots.iter()).map(|k| k.x.clone()).collect();
        xs.sort();
        xs.dedup();
        if xs.is_empty() {
            return self.clone();
        }
        let gap = |t: &Rational| self.eval(t) - other.eval(t);
        let mut crossings = Vec::new();
        // Each region between consecutive breakpoints carries an affine gap.
        let first = &xs[0];
        let d0 = gap(first);
        let tail = &self.left_slope - &other.left_slope;
        if !tail.is_zero() {
            let r = first - &d0 / &tail;
            if &r < first {
                crossings.push(r);
            }
        }
        for w in xs.windows(2) {
            let (da, db) = (gap(&w[0]), gap(&w[1]));
            if (is_positive(&da) && is_positive(&-&db)) || (is_positive(&-&da) && is_positive(&db)) {
                crossings.push(&w[0] + &da * (&w[1] - &w[0]) / (&da - &db));
            }
        }
        let last = &xs[xs.len() - 1];
        let dn = gap(last);
        let tail = &self.right_slope - &other.right_slope;
        if !tail.is_zero() {
            let r = last - &dn / &tail;
            if &r > last {
                crossings.push(r);
            }
        }
        xs.extend(crossings);
        xs.sort();
        xs.dedup();

        let pick = |a: Rational, b: Rational| if a.cmp(&b) == keep { a } else { b };
        let knots: Vec<Knot> = xs
            .iter()
            .map(|x| Knot::new(x.clone(), pick(self.eval(x), other.eval(x))))
            .collect();
        let one = Rational::one();
        let probe_l = &xs[0] - &one;
        let left = if self.eval(&probe_l).cmp(&other.eval(&probe_l)) == keep {
            self.left_slope.clone()
        } else {
            other.left_slope.clone()
        };
        let probe_r = &xs[xs.len() - 1] + &one;
        let right = if self.eval(&probe_r).cmp(&other.eval(&probe_r)) == keep {
            self.right_slope.clone()
        } else {
            other.right_slope.clone()
        };
        Self::canonical(knots, left, right)
    }

    /// Conjugate by `t ↦ -t`: the map `t ↦ -f(-t)`.
    pub fn mirror(&self) -> PlAutomorphism {
        Self::canonical(
            self.knots.iter().rev().map(|k| Knot::new(-&k.x, -&k.y)).collect(),
            self.right_slope.clone(),
            self.left_slope.clone(),
        )
    }
}

/// Normal-form comparison of the induced maps.
pub fn equals_pl(f: &PlAutomorphism, g: &PlAutomorphism) -> bool {
    f == g
}

fn interpolate(knots: &[Knot], left: &Rational, right: &Rational, t: &Rational, inverse: bool) -> Rational {
    if knots.is_empty() {
        return t.clone();
    }
    let (src, dst): (fn(&Knot) -> &Rational, fn(&Knot) -> &Rational) =
        if inverse { (|k| &k.y, |k| &k.x) } else { (|k| &k.x, |k| &k.y) };
    let idx = knots.partition_point(|k| src(k) <= t);
    if idx == 0 {
        let k = &knots[0];
        let dx = t - src(k);
        return if inverse { dst(k) + dx / left } else { dst(k) + dx * left };
    }
    let a = &knots[idx - 1];
    if src(a) == t {
        return dst(a).clone();
    }
    if idx == knots.len() {
        let dx = t - src(a);
        return if inverse { dst(a) + dx / right } else { dst(a) + dx * right };
    }
    let b = &knots[idx];
    dst(a) + (t - src(a)) * (dst(b) - dst(a)) / (src(b) - src(a))
}
