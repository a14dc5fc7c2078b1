//! Support decomposition and the terrain invariant.
//!
//! The terrain of a map lists, left to right, its positive and negative
//! support components together with its nontrivial maximal intervals of fixed
//! points. Isolated fixed points separating two components are boundaries,
//! not elements. For a PL map the terrain is finite and its elements cover
//! the line, so two finite terrains are isomorphic exactly when their color
//! sequences agree: the first element is always unbounded below and the last
//! unbounded above, so position and color determine the interval shapes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::pl::{Knot, PlAutomorphism};
use crate::rational::{int, midpoint, rat, ExtendedRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Pos,
    Neg,
    Fixed,
}

impl Color {
    pub fn symbol(self) -> char {
        match self {
            Color::Pos => '+',
            Color::Neg => '-',
            Color::Fixed => '0',
        }
    }

    pub fn from_symbol(c: char) -> Option<Color> {
        match c {
            '+' => Some(Color::Pos),
            '-' | '−' => Some(Color::Neg),
            '0' => Some(Color::Fixed),
            _ => None,
        }
    }

    pub fn is_component(self) -> bool {
        self != Color::Fixed
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TerrainElement {
    pub color: Color,
    pub lo: ExtendedRational,
    pub hi: ExtendedRational,
}

impl TerrainElement {
    pub fn new(color: Color, lo: ExtendedRational, hi: ExtendedRational) -> Self {
        TerrainElement { color, lo, hi }
    }

    /// Membership with the element's own topology: components are open,
    /// fixed intervals are closed at finite endpoints.
    pub fn contains(&self, t: &Rational) -> bool {
        if self.color == Color::Fixed {
            self.lo <= *t && self.hi >= *t
        } else {
            self.lo < *t && self.hi > *t
        }
    }

    /// Deterministic interior point: the midpoint of a bounded element, one
    /// unit inside a half-line, `0` for the whole line.
    pub fn anchor(&self) -> Rational {
        match (&self.lo, &self.hi) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => midpoint(a, b),
            (ExtendedRational::Finite(a), _) => a + Rational::one(),
            (_, ExtendedRational::Finite(b)) => b - Rational::one(),
            _ => Rational::zero(),
        }
    }

    /// Image under `t ↦ -t`.
    pub fn mirror(&self) -> Self {
        TerrainElement { color: self.color, lo: self.hi.negate(), hi: self.lo.negate() }
    }
}

/// Where a point sits relative to a terrain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Inside element `k` (fixed elements include their finite endpoints).
    Inside(usize),
    /// The isolated fixed point between components `k` and `k + 1`.
    Boundary(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Terrain {
    pub elements: Vec<TerrainElement>,
}

impl Terrain {
    pub fn new(elements: Vec<TerrainElement>) -> Self {
        Terrain { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Locates `t`; requires a covering terrain (see [`validate`]).
    pub fn place(&self, t: &Rational) -> Placement {
        let k = self.elements.partition_point(|e| e.hi <= *t);
        let e = &self.elements[k];
        if e.lo < *t || k == 0 {
            return Placement::Inside(k);
        }
        if e.color == Color::Fixed {
            Placement::Inside(k)
        } else if self.elements[k - 1].color == Color::Fixed {
            Placement::Inside(k - 1)
        } else {
            Placement::Boundary(k - 1)
        }
    }

    /// Right endpoint of element `k`, which must be finite.
    pub fn boundary(&self, k: usize) -> &Rational {
        self.elements[k].hi.finite().expect("interior boundary is finite")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TerrainError {
    #[error("a terrain has at least one element")]
    Empty,
    #[error("unknown color symbol `{0}`")]
    BadSymbol(char),
    #[error("adjacent fixed elements at positions {0} and {1}")]
    AdjacentFixed(usize, usize),
}

/// Colors of a terrain in order. Displays as e.g. `+0-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSequence(pub Vec<Color>);

impl ColorSequence {
    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks nonemptiness and the absence of two adjacent `0`s.
    pub fn check(&self) -> Result<(), TerrainError> {
        if self.0.is_empty() {
            return Err(TerrainError::Empty);
        }
        for (i, w) in self.0.windows(2).enumerate() {
            if w[0] == Color::Fixed && w[1] == Color::Fixed {
                return Err(TerrainError::AdjacentFixed(i, i + 1));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl FromStr for ColorSequence {
    type Err = TerrainError;

    /// Parses the symbols only; use [`ColorSequence::check`] for the terrain rule.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| Color::from_symbol(c).ok_or(TerrainError::BadSymbol(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(ColorSequence)
    }
}

/// The zero set of a piecewise-affine displacement, as sorted disjoint closed
/// intervals (possibly degenerate, possibly unbounded).
fn zero_set(g: &PlAutomorphism) -> Vec<(ExtendedRational, ExtendedRational)> {
    use ExtendedRational::{Finite, NegInf, PosInf};

    let knots = g.knots();
    let mut zeros: Vec<(ExtendedRational, ExtendedRational)> = Vec::new();
    let disp = |k: &Knot| &k.y - &k.x;
    let one = Rational::one();

    // Left tail: d(t) = d(x0) + (s - 1)(t - x0) for t <= x0.
    let k0 = &knots[0];
    let d0 = disp(k0);
    let c = g.left_slope() - &one;
    if c.is_zero() {
        if d0.is_zero() {
            zeros.push((NegInf, Finite(k0.x.clone())));
        }
    } else {
        let r = &k0.x - &d0 / &c;
        if r <= k0.x {
            zeros.push((Finite(r.clone()), Finite(r)));
        }
    }
    for w in knots.windows(2) {
        let (da, db) = (disp(&w[0]), disp(&w[1]));
        if da.is_zero() && db.is_zero() {
            zeros.push((Finite(w[0].x.clone()), Finite(w[1].x.clone())));
        } else if da.is_zero() {
            zeros.push((Finite(w[0].x.clone()), Finite(w[0].x.clone())));
        } else if db.is_zero() {
            zeros.push((Finite(w[1].x.clone()), Finite(w[1].x.clone())));
        } else if da.is_positive() != db.is_positive() {
            let r = &w[0].x + &da * (&w[1].x - &w[0].x) / (&da - &db);
            zeros.push((Finite(r.clone()), Finite(r)));
        }
    }
    let kn = &knots[knots.len() - 1];
    let dn = disp(kn);
    let c = g.right_slope() - &one;
    if c.is_zero() {
        if dn.is_zero() {
            zeros.push((Finite(kn.x.clone()), PosInf));
        }
    } else {
        let r = &kn.x - &dn / &c;
        if r >= kn.x {
            zeros.push((Finite(r.clone()), Finite(r)));
        }
    }

    zeros.sort();
    let mut merged: Vec<(ExtendedRational, ExtendedRational)> = Vec::new();
    for (lo, hi) in zeros {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

fn probe(lo: &ExtendedRational, hi: &ExtendedRational) -> Rational {
    TerrainElement::new(Color::Pos, lo.clone(), hi.clone()).anchor()
}

/// Full ordered terrain of a PL map.
pub fn support_decompose(g: &PlAutomorphism) -> Terrain {
    use ExtendedRational::{NegInf, PosInf};

    if g.is_identity() {
        return Terrain::new(alloc::vec![TerrainElement::new(Color::Fixed, NegInf, PosInf)]);
    }
    let sign = |lo: &ExtendedRational, hi: &ExtendedRational| {
        let t = probe(lo, hi);
        if g.eval(&t) > t {
            Color::Pos
        } else {
            Color::Neg
        }
    };
    let mut elements = Vec::new();
    let mut cursor = NegInf;
    for (lo, hi) in zero_set(g) {
        if lo > cursor {
            let color = sign(&cursor, &lo);
            elements.push(TerrainElement::new(color, cursor.clone(), lo.clone()));
        }
        if lo < hi {
            elements.push(TerrainElement::new(Color::Fixed, lo, hi.clone()));
        }
        cursor = hi;
    }
    if cursor < PosInf {
        let color = sign(&cursor, &PosInf);
        elements.push(TerrainElement::new(color, cursor, PosInf));
    }
    Terrain::new(elements)
}

pub fn color_sequence(t: &Terrain) -> ColorSequence {
    ColorSequence(t.elements.iter().map(|e| e.color).collect())
}

/// Finite terrains are isomorphic iff their color sequences agree.
pub fn is_isomorphic(a: &Terrain, b: &Terrain) -> bool {
    color_sequence(a) == color_sequence(b)
}

/// Every length-`n` color sequence without two adjacent `0`s, sorted by the
/// symbol order `+ < - < 0`.
pub fn enumerate_color_sequences(n: usize) -> Vec<ColorSequence> {
    const ALPHABET: [Color; 3] = [Color::Pos, Color::Neg, Color::Fixed];
    let mut out: Vec<Vec<Color>> = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for prefix in &out {
            for &c in &ALPHABET {
                if c == Color::Fixed && prefix.last() == Some(&Color::Fixed) {
                    continue;
                }
                let mut s = prefix.clone();
                s.push(c);
                next.push(s);
            }
        }
        out = next;
    }
    if n == 0 {
        return Vec::new();
    }
    out.into_iter().map(ColorSequence).collect()
}

/// A PL map whose terrain has the given color sequence.
///
/// Element `k` of `m` occupies the slot `(k-1, k)` of the partition of the
/// line at `1, …, m-1`; the outer slots are unbounded. Components get a tent
/// (bounded slot) or a tail with slope `1/2` or `2` (unbounded slot).
pub fn realize(s: &ColorSequence) -> Result<PlAutomorphism, TerrainError> {
    s.check()?;
    let colors = s.colors();
    let m = colors.len();
    if m == 1 {
        return Ok(match colors[0] {
            Color::Pos => PlAutomorphism::translation(int(1)),
            Color::Neg => PlAutomorphism::translation(int(-1)),
            Color::Fixed => PlAutomorphism::identity(),
        });
    }
    let mut knots = Vec::new();
    for b in 1..m as i64 {
        if b > 1 {
            let mid = rat(2 * b - 1, 2);
            let lift = match colors[b as usize - 1] {
                Color::Pos => rat(1, 4),
                Color::Neg => rat(-1, 4),
                Color::Fixed => Rational::zero(),
            };
            knots.push(Knot::new(mid.clone(), mid + lift));
        }
        knots.push(Knot::new(int(b), int(b)));
    }
    let left = match colors[0] {
        Color::Pos => rat(1, 2),
        Color::Neg => int(2),
        Color::Fixed => int(1),
    };
    let right = match colors[m - 1] {
        Color::Pos => int(2),
        Color::Neg => rat(1, 2),
        Color::Fixed => int(1),
    };
    Ok(PlAutomorphism::new(knots, left, right).expect("slot realization is increasing"))
}

/// Checks every terrain invariant: nonempty, ordered and contiguous cover of
/// the line, nondegenerate elements, no adjacent fixed elements.
pub fn validate(t: &Terrain) -> bool {
    let es = &t.elements;
    let Some(first) = es.first() else { return false };
    if first.lo != ExtendedRational::NegInf || es[es.len() - 1].hi != ExtendedRational::PosInf {
        return false;
    }
    if es.iter().any(|e| e.lo >= e.hi) {
        return false;
    }
    es.windows(2).all(|w| w[0].hi == w[1].lo && !(w[0].color == Color::Fixed && w[1].color == Color::Fixed))
}

impl fmt::Display for Terrain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|e| alloc::format!("{}({}, {})", e.color, e.lo, e.hi))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
