//! The one-variable, two-parameter equations `x^e1 · g · x^e2 = f`.
//!
//! For `e1 = e2 = 1` every pair `(f, g)` has a solution. With `p = f g` and
//! `q = g f` (left to right), `f` carries each component `I` of `p` onto the
//! corresponding component `I·f` of `q`. On a positive component pick
//! `α ∈ I` and `β` strictly between `α·g⁻¹` and `α·f`; with the affine
//! `ψ: [α, β·g) → [β, α·f)`, the solution on `I` is
//!
//! ```text
//! γ·x = γ·p^-i · ψ · q^i                 if α·p^i   <= γ < β·g·p^i
//! γ·x = γ·p^-i · g⁻¹ · ψ⁻¹ · f · q^i     if β·g·p^i <= γ < α·p^(i+1)
//! ```
//!
//! Negative components are solved in the mirror image `t ↦ -t`, where they
//! become positive. Off the support of `p`, `x = f`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::automorphism::{Automorphism, ProceduralAutomorphism};
use crate::conjugacy::{affine_bridge, solve_conjugacy, AffineBridge};
use crate::orbit::Dynamics;
use crate::pl::PlAutomorphism;
use crate::rational::{midpoint, Rational};
use crate::terrain::{support_decompose, Color, Placement, Terrain, TerrainElement};

/// Exponent of the variable in a two-sided equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Plus,
    Minus,
}

impl Exponent {
    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(Exponent::Plus),
            -1 => Some(Exponent::Minus),
            _ => None,
        }
    }
}

/// Solution data on one positive component `I` of `p = f g`.
#[derive(Clone, Debug)]
struct XgxPiece {
    f: PlAutomorphism,
    g: PlAutomorphism,
    p: Dynamics,
    q: Dynamics,
    alpha: Rational,
    beta: Rational,
    /// `β·g`, the case split inside the block `[α, α·p)`.
    split: Rational,
    /// `α·f`, the case split inside the block `[β, β·q)`.
    split_inv: Rational,
    psi: AffineBridge,
}

impl XgxPiece {
    fn new(f: PlAutomorphism, g: PlAutomorphism, element: &TerrainElement) -> Self {
        debug_assert_eq!(element.color, Color::Pos);
        let p = f.then(&g);
        let q = g.then(&f);
        let alpha = element.anchor();
        let af = f.eval(&alpha);
        let beta = midpoint(&g.eval_inverse(&alpha), &af);
        let split = g.eval(&beta);
        let psi = affine_bridge(alpha.clone(), split.clone(), beta.clone(), af.clone())
            .expect("α < β·g and β < α·f on a positive component");
        XgxPiece {
            f,
            g,
            p: Dynamics::linear(p.into()),
            q: Dynamics::linear(q.into()),
            alpha,
            beta,
            split,
            split_inv: af,
            psi,
        }
    }

    fn eval(&self, gamma: &Rational) -> Rational {
        let i = self.p.locate(&self.alpha, gamma).expect("point inside the component").index;
        let t = self.p.step(gamma, -i);
        let s = if t < self.split {
            self.psi.eval(&t)
        } else {
            self.f.eval(&self.psi.eval_inverse(&self.g.eval_inverse(&t)))
        };
        self.q.step(&s, i)
    }

    fn eval_inverse(&self, delta: &Rational) -> Rational {
        let i = self.q.locate(&self.beta, delta).expect("point inside the component").index;
        let s = self.q.step(delta, -i);
        let t = if s < self.split_inv {
            self.psi.eval_inverse(&s)
        } else {
            self.g.eval(&self.psi.eval(&self.f.eval_inverse(&s)))
        };
        self.p.step(&t, i)
    }
}

#[derive(Clone, Debug)]
enum Region {
    Direct(XgxPiece),
    /// Solved for the mirrored parameters; `x(t) = -x̃(-t)`.
    Mirrored(XgxPiece),
    Fixed,
}

#[derive(Debug)]
struct XgxSolution {
    f: PlAutomorphism,
    terrain: Terrain,
    regions: Vec<Region>,
}

impl XgxSolution {
    fn eval(&self, t: &Rational) -> Rational {
        match self.terrain.place(t) {
            Placement::Inside(k) => match &self.regions[k] {
                Region::Direct(piece) => piece.eval(t),
                Region::Mirrored(piece) => -piece.eval(&-t),
                Region::Fixed => self.f.eval(t),
            },
            Placement::Boundary(_) => self.f.eval(t),
        }
    }

    fn eval_inverse(&self, t: &Rational) -> Rational {
        // f maps each element of T(fg) onto the matching element of T(gf).
        let pre = self.f.eval_inverse(t);
        match self.terrain.place(&pre) {
            Placement::Inside(k) => match &self.regions[k] {
                Region::Direct(piece) => piece.eval_inverse(t),
                Region::Mirrored(piece) => -piece.eval_inverse(&-t),
                Region::Fixed => pre,
            },
            Placement::Boundary(_) => pre,
        }
    }
}

/// `x` with `x · g · x = f` (left to right).
pub fn solve_xgx(g: &PlAutomorphism, f: &PlAutomorphism) -> ProceduralAutomorphism {
    let p = f.then(g);
    let terrain = support_decompose(&p);
    let (fm, gm) = (f.mirror(), g.mirror());
    let regions = terrain
        .elements
        .iter()
        .map(|e| match e.color {
            Color::Pos => Region::Direct(XgxPiece::new(f.clone(), g.clone(), e)),
            Color::Neg => {
                // A negative component of p is a positive one of the mirrored p.
                let mirrored = TerrainElement { color: Color::Pos, ..e.mirror() };
                Region::Mirrored(XgxPiece::new(fm.clone(), gm.clone(), &mirrored))
            }
            Color::Fixed => Region::Fixed,
        })
        .collect();
    let sol = Arc::new(XgxSolution { f: f.clone(), terrain, regions });
    let back = sol.clone();
    ProceduralAutomorphism::from_fns("xgx", move |t| sol.eval(t), move |t| back.eval_inverse(t))
}

/// Solves `x^e1 · g · x^e2 = f`; `None` when `e1 = -e2` and the terrains of
/// `g` and `f` differ.
pub fn solve_two_sided(g: &PlAutomorphism, f: &PlAutomorphism, e1: Exponent, e2: Exponent) -> Option<Automorphism> {
    use Exponent::{Minus, Plus};
    match (e1, e2) {
        // x⁻¹ g x = f: x is the conjugator.
        (Minus, Plus) => solve_conjugacy(g, f).map(Automorphism::from),
        // x g x⁻¹ = f: x⁻¹ is the conjugator.
        (Plus, Minus) => solve_conjugacy(g, f).map(|h| Automorphism::from(h.inverse())),
        (Plus, Plus) => Some(solve_xgx(g, f).into()),
        // x⁻¹ g x⁻¹ = f  ⇔  x f x = g.
        (Minus, Minus) => Some(solve_xgx(f, g).into()),
    }
}
