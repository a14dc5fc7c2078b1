//! Exact order-preserving bijections of the line and the effective procedures
//! built on them: terrain analysis, conjugacy testing with explicit
//! conjugators, one-parameter word equations, and the equation `x g x = f`.
//!
//! Maps compose **left to right** throughout the crate: `f.then(&g)` is the
//! map `t ↦ g(f(t))`, and a word `x y` applied to `t` evaluates `x` first.
//! Points are exact rationals, so every identity the solvers promise can be
//! checked with zero tolerance by [`verify_pointwise`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod automorphism;
pub mod conjugacy;
pub mod equations;
pub mod oracle;
pub mod orbit;
pub mod pl;
pub mod rational;
pub mod terrain;
pub mod word;
pub mod xgx;

pub use automorphism::{Automorphism, EvalFn, ProceduralAutomorphism};
pub use conjugacy::{
    affine_bridge, conjugate_on_component, conjugate_on_fixed, solve_conjugacy,
    solve_conjugacy_with, verify_pointwise, AffineBridge, ComponentConjugator, ConjugacyError,
    Conjugator, FixedBridge,
};
pub use equations::{commutator_decomposition, nth_root, solve_word, Assignment, EquationError};
pub use oracle::{build_cache, measure_locate, wrap, CostReport, FastForwardCache, InstrumentedOracle};
pub use orbit::{orbit_locate, Dynamics, LocateMode, OrbitError, OrbitLocation};
pub use pl::{equals_pl, Knot, PlAutomorphism, PlError};
pub use rational::{ExtendedRational, Rational};
pub use terrain::{
    color_sequence, enumerate_color_sequences, is_isomorphic, realize, support_decompose,
    validate, Color, ColorSequence, Terrain, TerrainElement, TerrainError,
};
pub use word::{validate_word, Letter, Word, WordError};
pub use xgx::{solve_two_sided, solve_xgx, Exponent};
