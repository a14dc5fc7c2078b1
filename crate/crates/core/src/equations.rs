//! One-parameter word equations `w(x_2, …, x_n) = g`.
//!
//! On each support component of `g` the anchor orbit `β_i = α·g^i` is cut
//! into `m` equal parts (`m` the word length), giving grid points
//! `γ_{i,0} = β_i < … < γ_{i,m} = β_{i+1}` (reversed on negative
//! components). The `j`-th letter `x_v^ε` forces `γ_{i,j-1}·x_v^ε = γ_{i,j}`,
//! and `x_v` interpolates between its forced points, affinely in the orbit
//! chart of the component. The word then sends every `β_i` to `β_{i+1}`,
//! hence has the same anchor orbit as `g`, and a component conjugator `y`
//! with `g = y⁻¹ w y` turns the trial assignment into a solution
//! `x_v ↦ y⁻¹ x_v y`. Variables are the identity on fixed points of `g`.
//!
//! The forced points of a variable are only increasing when the word is
//! cyclically reduced. A reduced word `w = u⁻¹ c u` is therefore solved for
//! its cyclic core `c` first and the solution conjugated by `u`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::automorphism::{Automorphism, ProceduralAutomorphism};
use crate::orbit::{Dynamics, LocateMode};
use crate::pl::{Knot, PlAutomorphism};
use crate::rational::{int, Rational};
use crate::terrain::{support_decompose, Color, Placement, Terrain};
use crate::word::{evaluate_letters, Letter, Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EquationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("forced points of variable {0} are not increasing")]
    Inconsistent(u32),
    #[error("roots are defined for n >= 1")]
    ZeroRoot,
}

/// Solution maps keyed by variable index.
#[derive(Clone, Debug, Default)]
pub struct Assignment(BTreeMap<u32, Automorphism>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn insert(&mut self, var: u32, value: Automorphism) {
        self.0.insert(var, value);
    }

    pub fn get(&self, var: u32) -> Option<&Automorphism> {
        self.0.get(&var)
    }

    /// Assigned value, identity when unassigned.
    pub fn value(&self, var: u32) -> Automorphism {
        self.0.get(&var).cloned().unwrap_or_else(Automorphism::identity)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Automorphism)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, w: &Word) -> Automorphism {
        w.evaluate(|v| self.value(v))
    }
}

/// Forced points of one variable in grid-index space: pairs
/// `(domain, image)` with the domain offset in `0..m`, repeated with period
/// `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Interpolant {
    period: i64,
    pairs: Vec<(i64, i64)>,
}

impl Interpolant {
    fn for_variable(letters: &[Letter], var: u32) -> Result<Self, EquationError> {
        let m = letters.len() as i64;
        let mut pairs = Vec::new();
        for (pos, l) in letters.iter().enumerate().filter(|(_, l)| l.var == var) {
            let j = pos as i64 + 1;
            let (d, e) = if l.exp > 0 { (j - 1, j) } else { (j, j - 1) };
            pairs.push((d, e));
        }
        Self::normalized(m, pairs).ok_or(EquationError::Inconsistent(var))
    }

    fn normalized(period: i64, pairs: Vec<(i64, i64)>) -> Option<Self> {
        let mut pairs: Vec<(i64, i64)> = pairs
            .into_iter()
            .map(|(d, e)| {
                let r = d.rem_euclid(period);
                (r, e - (d - r))
            })
            .collect();
        pairs.sort();
        let ok = pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
            && pairs.last().map(|l| l.1) < pairs.first().map(|f| f.1 + period);
        ok.then_some(Interpolant { period, pairs })
    }

    /// Domain/image pairs whose domain index is in blocks `lo..=hi`.
    fn unrolled(&self, lo: i64, hi: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        (lo..=hi).flat_map(move |b| self.pairs.iter().map(move |&(d, e)| (b * self.period + d, b * self.period + e)))
    }

    /// The interpolating map, exact on blocks `lo..=hi`.
    fn window(&self, lo: i64, hi: i64) -> PlAutomorphism {
        let knots = self.unrolled(lo, hi).map(|(d, e)| Knot::new(int(d), int(e))).collect();
        PlAutomorphism::new(knots, int(1), int(1)).expect("normalized pairs are increasing")
    }
}

/// One support component of `g`, read in its orbit chart.
///
/// `h` is `g` on positive components and `g⁻¹` on negative ones, so `h` moves
/// every point of the component up. With `β_i = α·h^i`, the chart coordinate
/// of `γ ∈ [β_i, β_{i+1})` is `i·m + m·(γ - β_i)/(β_{i+1} - β_i)`; grid points
/// are the integers. Trial maps are affine between forced points in chart
/// coordinates and commute with the shift by `m`, and so does their product
/// `k`, which sends `β_i` to `β_{i+1}`. The conjugator `y` with `h = y⁻¹ k y`
/// is `γ ↦ γ·k^(-i)·h^i` on block `i`, and in the chart `k^(-i)` restricted to
/// block `i` is the `i`-th iterate of `D(u) = k⁻¹(u) + m` on `[0, m]`.
#[derive(Clone, Debug)]
struct Chart {
    h: Dynamics,
    alpha: Rational,
    width: Rational,
    m: i64,
    drift: PlAutomorphism,
    maps: BTreeMap<u32, PlAutomorphism>,
}

impl Chart {
    fn new(h: Dynamics, alpha: Rational, letters: &[Letter]) -> Result<Self, EquationError> {
        let m = letters.len() as i64;
        let mut maps = BTreeMap::new();
        for l in letters {
            if !maps.contains_key(&l.var) {
                // Each letter moves a point by at most one grid unit, so a
                // word of length m starting in [-m, 0] stays inside [-2m, m].
                maps.insert(l.var, Interpolant::for_variable(letters, l.var)?.window(-3, 3));
            }
        }
        let k = letters.iter().fold(PlAutomorphism::identity(), |acc, l| {
            let a = &maps[&l.var];
            if l.exp > 0 {
                acc.then(a)
            } else {
                acc.then(&a.inverse())
            }
        });
        let drift = block_map(&k.inverse().then(&PlAutomorphism::translation(int(m))), m);
        let width = h.eval(&alpha) - &alpha;
        Ok(Chart { h, alpha, width, m, drift, maps })
    }

    /// Chart coordinate of `γ·y⁻¹`.
    fn pull(&self, gamma: &Rational) -> Rational {
        let n = self.h.locate(&self.alpha, gamma).expect("point inside the component").index;
        let t = self.h.step(gamma, -n);
        let c = (t - &self.alpha) * int(self.m) / &self.width;
        iterate(&self.drift, &c, -n) + int(n * self.m)
    }

    /// `γ·y` for the point `γ` at chart coordinate `r`.
    fn push(&self, r: &Rational) -> Rational {
        let m = int(self.m);
        let i = (r / &m).floor();
        let s0 = r - &i * &m;
        let i = i.to_integer().to_i64().expect("orbit index fits in i64");
        let u = iterate(&self.drift, &s0, i);
        self.h.step(&(&self.alpha + u * &self.width / &m), i)
    }

    /// `γ·y⁻¹·x_v^(±1)·y`.
    fn eval(&self, var: u32, gamma: &Rational, inverse: bool) -> Rational {
        let r = self.pull(gamma);
        let map = &self.maps[&var];
        let m = int(self.m);
        let b = (&r / &m).floor() * &m;
        let r0 = &r - &b;
        let moved = if inverse { map.eval_inverse(&r0) } else { map.eval(&r0) };
        self.push(&(moved + b))
    }
}

/// `d` on `[0, m]`, the identity elsewhere.
fn block_map(d: &PlAutomorphism, m: i64) -> PlAutomorphism {
    debug_assert_eq!(d.eval(&int(0)), int(0));
    debug_assert_eq!(d.eval(&int(m)), int(m));
    let mut knots = alloc::vec![Knot::new(int(0), int(0))];
    knots.extend(d.knots().iter().filter(|k| k.x > int(0) && k.x < int(m)).cloned());
    knots.push(Knot::new(int(m), int(m)));
    PlAutomorphism::new(knots, int(1), int(1)).expect("block map is increasing")
}

fn iterate(d: &PlAutomorphism, s: &Rational, n: i64) -> Rational {
    let mut x = s.clone();
    for _ in 0..n.unsigned_abs() {
        x = if n > 0 { d.eval(&x) } else { d.eval_inverse(&x) };
    }
    x
}

/// Solution for one variable: chart evaluation on components, identity off
/// the support.
fn solution_map(terrain: Arc<Terrain>, charts: Arc<Vec<Option<Chart>>>, var: u32) -> Automorphism {
    let (t1, c1) = (terrain.clone(), charts.clone());
    let apply = move |terrain: &Terrain, charts: &[Option<Chart>], t: &Rational, inverse: bool| match terrain.place(t) {
        Placement::Inside(k) => match &charts[k] {
            Some(c) => c.eval(var, t, inverse),
            None => t.clone(),
        },
        Placement::Boundary(_) => t.clone(),
    };
    Automorphism::Procedural(ProceduralAutomorphism::from_fns(
        alloc::format!("word-solution(x{var})"),
        move |t| apply(&terrain, &charts, t, false),
        move |t| apply(&t1, &c1, t, true),
    ))
}

/// Solves `w(x_2, …, x_n) = g`; every variable of `w` is assigned.
pub fn solve_word(w: &Word, g: &PlAutomorphism) -> Result<Assignment, EquationError> {
    let vars = w.variables();
    let mut out = Assignment::new();
    if g.is_identity() {
        for v in vars {
            out.insert(v, Automorphism::identity());
        }
        return Ok(out);
    }
    let (u, core) = w.cyclic_reduction();
    let g_auto: Automorphism = g.clone().into();

    let mut trial = Assignment::new();
    if core.len() == 1 {
        let l = core[0];
        trial.insert(l.var, if l.exp > 0 { g_auto.clone() } else { g_auto.inverse() });
    } else {
        let terrain = Arc::new(support_decompose(g));
        let up = Dynamics::with_mode(&g_auto, LocateMode::FastForward).expect("PL map");
        let down = Dynamics::with_mode(&g_auto.inverse(), LocateMode::FastForward).expect("PL map");
        // On a negative component solve w⁻¹ = g⁻¹, where g⁻¹ moves points up.
        let reversed: Vec<Letter> = core.iter().rev().map(|l| l.inverse()).collect();
        let mut charts = Vec::with_capacity(terrain.len());
        for e in &terrain.elements {
            charts.push(match e.color {
                Color::Pos => Some(Chart::new(up.clone(), e.anchor(), &core)?),
                Color::Neg => Some(Chart::new(down.clone(), e.anchor(), &reversed)?),
                Color::Fixed => None,
            });
        }
        let charts = Arc::new(charts);
        for v in core.iter().map(|l| l.var).collect::<BTreeSet<_>>() {
            trial.insert(v, solution_map(terrain.clone(), charts.clone(), v));
        }
    }
    for v in &vars {
        if trial.get(*v).is_none() {
            trial.insert(*v, Automorphism::identity());
        }
    }
    if u.is_empty() {
        return Ok(trial);
    }
    // w = u⁻¹ c u with c(trial) = g: conjugating every variable by u(trial)⁻¹
    // gives w(out) = u(trial)·w(trial)·u(trial)⁻¹ = g.
    let z = evaluate_letters(&u, |v| trial.value(v));
    let z_inv = z.inverse();
    for (v, a) in trial.iter() {
        out.insert(*v, z.then(a).then(&z_inv));
    }
    Ok(out)
}

/// `(x, y)` with `x⁻¹ y⁻¹ x y = g`.
pub fn commutator_decomposition(g: &PlAutomorphism) -> (Automorphism, Automorphism) {
    let a = solve_word(&Word::commutator(2, 3), g).expect("commutator word is cyclically reduced");
    (a.value(2), a.value(3))
}

/// `x` with `x^n = g`.
pub fn nth_root(g: &PlAutomorphism, n: usize) -> Result<Automorphism, EquationError> {
    if n == 0 {
        return Err(EquationError::ZeroRoot);
    }
    if n == 1 {
        return Ok(g.clone().into());
    }
    let a = solve_word(&Word::power(2, n), g)?;
    Ok(a.value(2))
}
