//! Black-box instrumentation.
//!
//! Parameters of an equation are only ever queried by evaluation. An
//! [`InstrumentedOracle`] counts those queries without changing any result,
//! and a [`FastForwardCache`] realizes the model in which evaluating `g^n`
//! costs one step regardless of `n`.

use alloc::boxed::Box;
use alloc::sync::Arc;
use core::sync::atomic::{AtomicU64, Ordering};

use once_cell::race::OnceBox;

use crate::automorphism::{Automorphism, ProceduralAutomorphism};
use crate::orbit::{Dynamics, LocateMode, OrbitError};
use crate::pl::PlAutomorphism;
use crate::rational::Rational;
use crate::terrain::support_decompose;

#[derive(Debug, Default)]
struct Counters {
    forward: AtomicU64,
    inverse: AtomicU64,
}

/// Transparent evaluation counter around an automorphism.
#[derive(Clone, Debug)]
pub struct InstrumentedOracle {
    inner: Automorphism,
    counters: Arc<Counters>,
}

impl InstrumentedOracle {
    pub fn new(inner: Automorphism) -> Self {
        InstrumentedOracle { inner, counters: Arc::new(Counters::default()) }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.counters.forward.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(t)
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        self.counters.inverse.fetch_add(1, Ordering::Relaxed);
        self.inner.eval_inverse(t)
    }

    pub fn forward_count(&self) -> u64 {
        self.counters.forward.load(Ordering::Relaxed)
    }

    pub fn inverse_count(&self) -> u64 {
        self.counters.inverse.load(Ordering::Relaxed)
    }

    pub fn total(&self) -> u64 {
        self.forward_count() + self.inverse_count()
    }

    /// Starts a new session.
    pub fn reset(&self) {
        self.counters.forward.store(0, Ordering::Relaxed);
        self.counters.inverse.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &Automorphism {
        &self.inner
    }

    /// A procedural handle whose evaluations feed this oracle's counters.
    pub fn as_automorphism(&self) -> Automorphism {
        let (a, b) = (self.clone(), self.clone());
        Automorphism::Procedural(ProceduralAutomorphism::from_fns(
            alloc::format!("oracle({})", self.inner.description()),
            move |t| a.eval(t),
            move |t| b.eval_inverse(t),
        ))
    }
}

pub fn wrap(f: Automorphism) -> InstrumentedOracle {
    InstrumentedOracle::new(f)
}

/// Number of power-of-two slots; `g^(2^63)` is the largest cacheable power.
pub const CACHE_SLOTS: usize = 64;

/// Lazily filled table of `g^(2^k)` and `g^(-2^k)` by repeated squaring.
///
/// Knot counts of `g^n` grow with `n` for maps with bounded components, so
/// slots are only computed when a query reaches them.
pub struct FastForwardCache {
    forward: Box<[OnceBox<PlAutomorphism>]>,
    backward: Box<[OnceBox<PlAutomorphism>]>,
    steps: AtomicU64,
}

impl core::fmt::Debug for FastForwardCache {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FastForwardCache")
            .field("depth", &self.depth())
            .field("steps", &self.steps())
            .finish()
    }
}

impl FastForwardCache {
    pub fn new(base: PlAutomorphism) -> Self {
        let slots = || (0..CACHE_SLOTS).map(|_| OnceBox::new()).collect::<Box<[_]>>();
        let forward = slots();
        let backward = slots();
        let inv = base.inverse();
        let _ = forward[0].set(Box::new(base));
        let _ = backward[0].set(Box::new(inv));
        FastForwardCache { forward, backward, steps: AtomicU64::new(0) }
    }

    pub fn base(&self) -> &PlAutomorphism {
        self.power2(0, true)
    }

    /// Number of filled forward slots.
    pub fn depth(&self) -> usize {
        self.forward.iter().take_while(|s| s.get().is_some()).count()
    }

    /// `g^(2^k)` (or its inverse when `forward` is false). Panics for
    /// `k >= CACHE_SLOTS`.
    pub fn power2(&self, k: usize, forward: bool) -> &PlAutomorphism {
        let slots = if forward { &self.forward } else { &self.backward };
        if let Some(p) = slots[k].get() {
            return p;
        }
        let prev = self.power2(k - 1, forward);
        slots[k].get_or_init(|| Box::new(prev.then(prev)))
    }

    /// One fast-forward step: `p · g^(±2^k)`.
    pub fn jump(&self, p: &Rational, k: usize, forward: bool) -> Rational {
        self.steps.fetch_add(1, Ordering::Relaxed);
        self.power2(k, forward).eval(p)
    }

    /// `p · g^n`, one step per set bit of `|n|`.
    pub fn apply(&self, p: &Rational, n: i64) -> Rational {
        let forward = n >= 0;
        let mut e = n.unsigned_abs();
        let mut x = p.clone();
        let mut k = 0;
        while e > 0 {
            if e & 1 == 1 {
                x = self.jump(&x, k, forward);
            }
            e >>= 1;
            k += 1;
        }
        x
    }

    pub fn steps(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    pub fn reset_steps(&self) {
        self.steps.store(0, Ordering::Relaxed);
    }
}

/// Cache with slots `0..=depth` filled eagerly.
pub fn build_cache(g: &PlAutomorphism, depth: usize) -> FastForwardCache {
    let cache = FastForwardCache::new(g.clone());
    for k in 0..=depth.min(CACHE_SLOTS - 1) {
        cache.power2(k, true);
        cache.power2(k, false);
    }
    cache
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostReport {
    pub mode: LocateMode,
    pub index: i64,
    pub oracle_calls: u64,
    pub ff_steps: u64,
}

/// Runs orbit location under instrumentation and reports its cost.
///
/// Linear mode counts oracle evaluations of `g`; fast-forward mode counts
/// cache steps and makes no direct oracle calls.
pub fn measure_locate(
    g: &PlAutomorphism,
    alpha: &Rational,
    gamma: &Rational,
    mode: LocateMode,
) -> Result<CostReport, OrbitError> {
    // Checked on the PL form so the walk below never runs out of its component.
    let terrain = support_decompose(g);
    if let Some(e) = terrain.elements.iter().find(|e| e.contains(alpha)) {
        if e.color.is_component() && !e.contains(gamma) {
            return Err(OrbitError::OutsideComponent(gamma.clone()));
        }
    }
    match mode {
        LocateMode::Linear => {
            let oracle = wrap(g.clone().into());
            let dynamics = Dynamics::linear(oracle.as_automorphism());
            let loc = dynamics.locate(alpha, gamma)?;
            Ok(CostReport { mode, index: loc.index, oracle_calls: oracle.total(), ff_steps: 0 })
        }
        LocateMode::FastForward => {
            let cache = Arc::new(FastForwardCache::new(g.clone()));
            let dynamics = Dynamics::fast_forward(cache.clone());
            let loc = dynamics.locate(alpha, gamma)?;
            Ok(CostReport { mode, index: loc.index, oracle_calls: 0, ff_steps: cache.steps() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn wrap_counts() {
        let o = wrap(Automorphism::identity());
        assert_eq!(o.eval(&int(3)), int(3));
        assert_eq!(o.forward_count(), 1);
        o.eval(&int(1));
        o.eval_inverse(&int(1));
        assert_eq!((o.forward_count(), o.inverse_count()), (2, 1));
        o.reset();
        assert_eq!(o.total(), 0);
    }

    #[test]
    fn shared_counters_through_handle() {
        let o = wrap(PlAutomorphism::translation(int(1)).into());
        let h = o.as_automorphism();
        assert_eq!(h.eval(&int(0)), int(1));
        assert_eq!(h.eval_inverse(&int(0)), int(-1));
        assert_eq!((o.forward_count(), o.inverse_count()), (1, 1));
    }

    #[test]
    fn cache_powers() {
        let g = PlAutomorphism::translation(int(1));
        let c = build_cache(&g, 0);
        assert_eq!(c.depth(), 1);
        let c = build_cache(&g, 4);
        for k in 0..=4 {
            assert_eq!(c.power2(k, true), &PlAutomorphism::translation(int(1 << k)));
            assert_eq!(c.power2(k, false), &PlAutomorphism::translation(int(-(1 << k))));
        }
        assert_eq!(c.jump(&int(0), 3, true), g.power(8).eval(&int(0)));
        assert_eq!(c.apply(&int(0), 11), int(11));
        assert_eq!(c.apply(&int(0), -6), int(-6));
    }

    #[test]
    fn cache_grows_on_demand() {
        let c = FastForwardCache::new(PlAutomorphism::affine(int(2), int(0)));
        assert_eq!(c.depth(), 1);
        assert_eq!(c.jump(&int(1), 5, true), int(1 << 32));
        assert_eq!(c.depth(), 6);
    }

    #[test]
    fn measure_rejects_other_components() {
        // 2t has components (-inf, 0) and (0, +inf).
        let g = PlAutomorphism::affine(int(2), int(0));
        for mode in [LocateMode::Linear, LocateMode::FastForward] {
            assert_eq!(measure_locate(&g, &int(1), &int(-1), mode), Err(OrbitError::OutsideComponent(int(-1))));
            assert_eq!(measure_locate(&g, &int(1), &int(1024), mode).map(|r| r.index), Ok(10));
        }
    }
}
