//! Conjugacy decision and effective conjugators.
//!
//! Given PL maps `g` and `f` with equal color sequences, the conjugator `h`
//! with `f = h⁻¹ g h` is assembled element by element: the `k`-th terrain
//! element of `g` is sent onto the `k`-th element of `f`. On a support
//! component, `h` is the orbit-equivariant extension of an affine bridge
//! between one orbit block of `g` and one of `f`; on a fixed interval it is
//! affine or a translation. The resulting map has infinitely many affine
//! pieces accumulating at component ends, so it is returned as a procedure.
//!
//! Conventions: the source component always belongs to `g` and the target to
//! `f`, the bridge maps `[α, α·g)` onto `[β, β·f)`, and `f = x⁻¹ g x` holds
//! on the target.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::automorphism::{Automorphism, ProceduralAutomorphism};
use crate::orbit::{Dynamics, LocateMode, OrbitError};
use crate::pl::PlAutomorphism;
use crate::rational::{ExtendedRational, Rational};
use crate::terrain::{color_sequence, support_decompose, Color, Placement, Terrain, TerrainElement};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConjugacyError {
    #[error("degenerate interval: need {0} < {1}")]
    Degenerate(Rational, Rational),
    #[error("elements have different colors")]
    ColorMismatch,
    #[error("expected support components, got a fixed interval")]
    NotComponent,
    #[error("fixed intervals have different shapes")]
    ShapeMismatch,
    #[error("anchor {0} is not inside its component")]
    BadAnchor(Rational),
    #[error("point {0} lies outside the source interval")]
    OutOfDomain(Rational),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// The increasing affine map sending `[source_lo, source_hi)` onto
/// `[target_lo, target_hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineBridge {
    pub source_lo: Rational,
    pub source_hi: Rational,
    pub target_lo: Rational,
    pub target_hi: Rational,
    slope: Rational,
}

impl AffineBridge {
    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (t - &self.source_lo) * &self.slope + &self.target_lo
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        (t - &self.target_lo) / &self.slope + &self.source_lo
    }
}

pub fn affine_bridge(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<AffineBridge, ConjugacyError> {
    if a >= b {
        return Err(ConjugacyError::Degenerate(a, b));
    }
    if c >= d {
        return Err(ConjugacyError::Degenerate(c, d));
    }
    let slope = (&d - &c) / (&b - &a);
    Ok(AffineBridge { source_lo: a, source_hi: b, target_lo: c, target_hi: d, slope })
}

/// Conjugator from a component `I` of `g` onto a same-colored component `J`
/// of `f`, anchored at `α ∈ I` and `β ∈ J`.
///
/// On the block of index `i`, `γ ↦ γ·g^(-i)·ψ·f^i`.
#[derive(Clone, Debug)]
pub struct ComponentConjugator {
    g: Dynamics,
    f: Dynamics,
    source: TerrainElement,
    target: TerrainElement,
    alpha: Rational,
    beta: Rational,
    psi: AffineBridge,
    source_locator: Option<Dynamics>,
}

impl ComponentConjugator {
    pub fn new(
        g: Dynamics,
        f: Dynamics,
        source: TerrainElement,
        target: TerrainElement,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Self, ConjugacyError> {
        if source.color != target.color {
            return Err(ConjugacyError::ColorMismatch);
        }
        if !source.color.is_component() {
            return Err(ConjugacyError::NotComponent);
        }
        if !source.contains(&alpha) {
            return Err(ConjugacyError::BadAnchor(alpha));
        }
        if !target.contains(&beta) {
            return Err(ConjugacyError::BadAnchor(beta));
        }
        let (ag, bf) = (g.eval(&alpha), f.eval(&beta));
        // Positive: [α, α·g) → [β, β·f). Negative: [α·g, α) → [β·f, β).
        let psi = if source.color == Color::Pos {
            affine_bridge(alpha.clone(), ag, beta.clone(), bf)?
        } else {
            affine_bridge(ag, alpha.clone(), bf, beta.clone())?
        };
        Ok(ComponentConjugator { g, f, source, target, alpha, beta, psi, source_locator: None })
    }

    /// Locate source points with `locator` instead of `g`. Only valid when
    /// `locator` and `g` have the same orbit through `α`.
    pub fn with_source_locator(mut self, locator: Dynamics) -> Self {
        self.source_locator = Some(locator);
        self
    }

    pub fn bridge(&self) -> &AffineBridge {
        &self.psi
    }

    pub fn source(&self) -> &TerrainElement {
        &self.source
    }

    pub fn target(&self) -> &TerrainElement {
        &self.target
    }

    pub fn eval(&self, gamma: &Rational) -> Result<Rational, ConjugacyError> {
        if !self.source.contains(gamma) {
            return Err(ConjugacyError::OutOfDomain(gamma.clone()));
        }
        let i = self.source_locator.as_ref().unwrap_or(&self.g).locate(&self.alpha, gamma)?.index;
        let t = self.g.step(gamma, -i);
        Ok(self.f.step(&self.psi.eval(&t), i))
    }

    pub fn eval_inverse(&self, delta: &Rational) -> Result<Rational, ConjugacyError> {
        if !self.target.contains(delta) {
            return Err(ConjugacyError::OutOfDomain(delta.clone()));
        }
        let i = self.f.locate(&self.beta, delta)?.index;
        let t = self.f.step(delta, -i);
        Ok(self.g.step(&self.psi.eval_inverse(&t), i))
    }
}

/// Component conjugator with linear orbit location.
pub fn conjugate_on_component(
    g: &Automorphism,
    f: &Automorphism,
    source: &TerrainElement,
    target: &TerrainElement,
    alpha: &Rational,
    beta: &Rational,
) -> Result<ComponentConjugator, ConjugacyError> {
    ComponentConjugator::new(
        Dynamics::linear(g.clone()),
        Dynamics::linear(f.clone()),
        source.clone(),
        target.clone(),
        alpha.clone(),
        beta.clone(),
    )
}

/// Map between two nontrivial maximal fixed intervals of the same shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedBridge {
    /// Bounded `[a1, a2] → [b1, b2]`.
    Affine(AffineBridge),
    /// Half-lines, aligned at their finite endpoint: `t ↦ t + shift`.
    Translate(Rational),
    /// The whole line.
    Identity,
}

impl FixedBridge {
    pub fn eval(&self, t: &Rational) -> Rational {
        match self {
            FixedBridge::Affine(b) => b.eval(t),
            FixedBridge::Translate(c) => t + c,
            FixedBridge::Identity => t.clone(),
        }
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        match self {
            FixedBridge::Affine(b) => b.eval_inverse(t),
            FixedBridge::Translate(c) => t - c,
            FixedBridge::Identity => t.clone(),
        }
    }
}

pub fn conjugate_on_fixed(source: &TerrainElement, target: &TerrainElement) -> Result<FixedBridge, ConjugacyError> {
    use ExtendedRational::{Finite, NegInf, PosInf};

    if source.color != Color::Fixed || target.color != Color::Fixed {
        return Err(ConjugacyError::ColorMismatch);
    }
    match (&source.lo, &source.hi, &target.lo, &target.hi) {
        (Finite(a1), Finite(a2), Finite(b1), Finite(b2)) => {
            Ok(FixedBridge::Affine(affine_bridge(a1.clone(), a2.clone(), b1.clone(), b2.clone())?))
        }
        (NegInf, Finite(a2), NegInf, Finite(b2)) => Ok(FixedBridge::Translate(b2 - a2)),
        (Finite(a1), PosInf, Finite(b1), PosInf) => Ok(FixedBridge::Translate(b1 - a1)),
        (NegInf, PosInf, NegInf, PosInf) => Ok(FixedBridge::Identity),
        _ => Err(ConjugacyError::ShapeMismatch),
    }
}

#[derive(Clone, Debug)]
enum Piece {
    Component(ComponentConjugator),
    Fixed(FixedBridge),
}

/// Conjugator `h` with `f = h⁻¹ g h`, stitched from per-element maps.
#[derive(Clone, Debug)]
pub struct Conjugator {
    source: Terrain,
    target: Terrain,
    pieces: Vec<Piece>,
}

impl Conjugator {
    /// `None` iff the color sequences of `g` and `f` differ.
    pub fn build(g: &PlAutomorphism, f: &PlAutomorphism, mode: LocateMode) -> Option<Conjugator> {
        let source = support_decompose(g);
        let target = support_decompose(f);
        if color_sequence(&source) != color_sequence(&target) {
            return None;
        }
        let g_dyn = Dynamics::with_mode(&g.clone().into(), mode).expect("PL map supports every mode");
        let f_dyn = Dynamics::with_mode(&f.clone().into(), mode).expect("PL map supports every mode");
        let pieces = source
            .elements
            .iter()
            .zip(&target.elements)
            .map(|(i, j)| {
                if i.color.is_component() {
                    let (alpha, beta) = (i.anchor(), j.anchor());
                    ComponentConjugator::new(g_dyn.clone(), f_dyn.clone(), i.clone(), j.clone(), alpha, beta)
                        .map(Piece::Component)
                } else {
                    conjugate_on_fixed(i, j).map(Piece::Fixed)
                }
                .expect("equal color sequences pair compatible elements")
            })
            .collect();
        Some(Conjugator { source, target, pieces })
    }

    pub fn source_terrain(&self) -> &Terrain {
        &self.source
    }

    pub fn target_terrain(&self) -> &Terrain {
        &self.target
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        match self.source.place(t) {
            Placement::Boundary(k) => self.target.boundary(k).clone(),
            Placement::Inside(k) => match &self.pieces[k] {
                Piece::Component(c) => c.eval(t).expect("point placed inside its component"),
                Piece::Fixed(b) => b.eval(t),
            },
        }
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        match self.target.place(t) {
            Placement::Boundary(k) => self.source.boundary(k).clone(),
            Placement::Inside(k) => match &self.pieces[k] {
                Piece::Component(c) => c.eval_inverse(t).expect("point placed inside its component"),
                Piece::Fixed(b) => b.eval_inverse(t),
            },
        }
    }

    pub fn into_procedural(self) -> ProceduralAutomorphism {
        let shared = Arc::new(self);
        let back = shared.clone();
        ProceduralAutomorphism::from_fns("conjugator", move |t| shared.eval(t), move |t| back.eval_inverse(t))
    }
}

/// Conjugator `h` with `f = h⁻¹ g h`, or `None` when the terrains differ.
pub fn solve_conjugacy(g: &PlAutomorphism, f: &PlAutomorphism) -> Option<ProceduralAutomorphism> {
    solve_conjugacy_with(g, f, LocateMode::Linear)
}

pub fn solve_conjugacy_with(g: &PlAutomorphism, f: &PlAutomorphism, mode: LocateMode) -> Option<ProceduralAutomorphism> {
    Conjugator::build(g, f, mode).map(Conjugator::into_procedural)
}

/// Exact agreement of two maps on every sample.
pub fn verify_pointwise(lhs: &Automorphism, rhs: &Automorphism, samples: &[Rational]) -> bool {
    samples.iter().all(|q| lhs.eval(q) == rhs.eval(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::vec;
    use ExtendedRational::{Finite, NegInf, PosInf};

    fn shift(c: i64) -> PlAutomorphism {
        PlAutomorphism::translation(int(c))
    }

    fn line(color: Color) -> TerrainElement {
        TerrainElement::new(color, NegInf, PosInf)
    }

    #[test]
    fn bridges() {
        let b = affine_bridge(int(0), int(1), int(0), int(1)).unwrap();
        assert_eq!(b.eval(&rat(1, 2)), rat(1, 2));
        let b = affine_bridge(int(0), int(2), int(0), int(1)).unwrap();
        assert_eq!(b.eval(&int(1)), rat(1, 2));
        let b = affine_bridge(int(0), int(1), int(1), int(2)).unwrap();
        assert_eq!(b.eval(&rat(1, 3)), rat(4, 3));
        assert_eq!(b.eval_inverse(&rat(4, 3)), rat(1, 3));
        assert_eq!(affine_bridge(int(1), int(1), int(0), int(1)), Err(ConjugacyError::Degenerate(int(1), int(1))));
        assert!(affine_bridge(int(0), int(1), int(2), int(1)).is_err());
    }

    #[test]
    fn component_identity_case() {
        let g: Automorphism = shift(1).into();
        let x = conjugate_on_component(&g, &g, &line(Color::Pos), &line(Color::Pos), &int(0), &int(0)).unwrap();
        for t in [rat(-7, 3), int(0), rat(5, 2), int(11)] {
            assert_eq!(x.eval(&t).unwrap(), t);
        }
    }

    #[test]
    fn component_halving_example() {
        let g: Automorphism = shift(2).into();
        let f: Automorphism = shift(1).into();
        let x = conjugate_on_component(&g, &f, &line(Color::Pos), &line(Color::Pos), &int(0), &int(0)).unwrap();
        assert_eq!(x.eval(&int(3)).unwrap(), rat(3, 2));
        // δ·x⁻¹·g·x = δ·f.
        for d in [int(0), rat(1, 2), rat(-5, 4)] {
            let y = x.eval(&g.eval(&x.eval_inverse(&d).unwrap())).unwrap();
            assert_eq!(y, f.eval(&d));
        }
    }

    #[test]
    fn component_rejects_outside() {
        let bump = crate::terrain::realize(&"0+0".parse().unwrap()).unwrap();
        let t = support_decompose(&bump);
        let g: Automorphism = bump.into();
        let x = conjugate_on_component(&g, &g, &t.elements[1], &t.elements[1], &rat(3, 2), &rat(3, 2)).unwrap();
        assert_eq!(x.eval(&int(5)), Err(ConjugacyError::OutOfDomain(int(5))));
        assert!(matches!(
            conjugate_on_component(&g, &g, &t.elements[0], &t.elements[0], &int(0), &int(0)),
            Err(ConjugacyError::NotComponent)
        ));
    }

    #[test]
    fn fixed_cases() {
        assert_eq!(conjugate_on_fixed(&line(Color::Fixed), &line(Color::Fixed)), Ok(FixedBridge::Identity));
        let i = TerrainElement::new(Color::Fixed, NegInf, Finite(int(2)));
        let j = TerrainElement::new(Color::Fixed, NegInf, Finite(int(5)));
        assert_eq!(conjugate_on_fixed(&i, &j), Ok(FixedBridge::Translate(int(3))));
        let i = TerrainElement::new(Color::Fixed, Finite(int(0)), Finite(int(1)));
        let j = TerrainElement::new(Color::Fixed, Finite(int(0)), Finite(int(4)));
        let b = conjugate_on_fixed(&i, &j).unwrap();
        assert_eq!(b.eval(&rat(1, 2)), int(2));
        assert_eq!(b.eval(&int(1)), int(4));
        let k = TerrainElement::new(Color::Fixed, Finite(int(0)), PosInf);
        assert_eq!(conjugate_on_fixed(&i, &k), Err(ConjugacyError::ShapeMismatch));
    }

    #[test]
    fn solve_examples() {
        let samples: Vec<Rational> = (-20..20).map(|k| rat(k, 3)).collect();
        for (g, f) in [(shift(1), shift(1)), (shift(2), shift(1))] {
            let h: Automorphism = solve_conjugacy(&g, &f).unwrap().into();
            let lhs = h.inverse().then(&g.clone().into()).then(&h);
            assert!(verify_pointwise(&lhs, &f.into(), &samples));
        }
        assert!(solve_conjugacy(&shift(1), &shift(-1)).is_none());
    }

    #[test]
    fn verify_examples() {
        let id = Automorphism::identity();
        assert!(verify_pointwise(&id, &id, &[int(1), rat(2, 7)]));
        assert!(!verify_pointwise(&shift(1).into(), &shift(2).into(), &[int(0)]));
        assert!(verify_pointwise(&id, &shift(1).into(), &[]));
    }

    #[test]
    fn boundaries_map_to_boundaries() {
        let g = PlAutomorphism::affine(int(2), int(0));
        let f = PlAutomorphism::affine(int(3), int(-10)); // fixes 5
        let c = Conjugator::build(&g, &f, LocateMode::Linear).unwrap();
        assert_eq!(c.eval(&int(0)), int(5));
        assert_eq!(c.eval_inverse(&int(5)), int(0));
        let samples = vec![int(-9), int(-1), rat(1, 9), int(4), int(1000)];
        let h: Automorphism = c.into_procedural().into();
        let lhs = h.inverse().then(&g.into()).then(&h);
        assert!(verify_pointwise(&lhs, &f.into(), &samples));
    }
}
