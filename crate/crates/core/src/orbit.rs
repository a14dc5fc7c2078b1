//! Locating a point in the orbit partition of a support component.
//!
//! A positive component `I` of `g` with anchor `α` is the disjoint union of
//! the blocks `[α·g^i, α·g^(i+1))`; a negative one of `[α·g^(i+1), α·g^i)`.
//! Location returns the block index of a query point, either by walking the
//! orbit one evaluation at a time or, in the fast-forward model, by doubling
//! followed by a nested binary search over cached powers `g^(2^k)`.

use alloc::sync::Arc;

use crate::automorphism::Automorphism;
use crate::oracle::{FastForwardCache, CACHE_SLOTS};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocateMode {
    Linear,
    FastForward,
}

impl LocateMode {
    pub fn name(self) -> &'static str {
        match self {
            LocateMode::Linear => "linear",
            LocateMode::FastForward => "fast_forward",
        }
    }
}

/// Block `index` of the orbit partition with `lower <= γ < upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLocation {
    pub index: i64,
    pub lower: Rational,
    pub upper: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("anchor {0} is a fixed point; the query is not in its component")]
    FixedPoint(Rational),
    #[error("orbit walk exceeded {0} steps; the query is probably outside the anchor's component")]
    BudgetExhausted(u64),
    #[error("{0} is not in the support component of the anchor")]
    OutsideComponent(Rational),
    #[error("fast-forward location needs a PL map")]
    NeedsPl,
}

/// Default cap on linear orbit steps.
pub const DEFAULT_STEP_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug)]
enum Engine {
    Linear(Automorphism),
    FastForward(Arc<FastForwardCache>),
}

/// A map together with the strategy used to iterate it.
#[derive(Clone, Debug)]
pub struct Dynamics {
    engine: Engine,
    budget: u64,
}

impl Dynamics {
    pub fn linear(map: Automorphism) -> Self {
        Dynamics { engine: Engine::Linear(map), budget: DEFAULT_STEP_BUDGET }
    }

    pub fn fast_forward(cache: Arc<FastForwardCache>) -> Self {
        Dynamics { engine: Engine::FastForward(cache), budget: DEFAULT_STEP_BUDGET }
    }

    pub fn with_mode(map: &Automorphism, mode: LocateMode) -> Result<Self, OrbitError> {
        match mode {
            LocateMode::Linear => Ok(Self::linear(map.clone())),
            LocateMode::FastForward => {
                let pl = map.as_pl().ok_or(OrbitError::NeedsPl)?;
                Ok(Self::fast_forward(Arc::new(FastForwardCache::new(pl.clone()))))
            }
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn mode(&self) -> LocateMode {
        match self.engine {
            Engine::Linear(_) => LocateMode::Linear,
            Engine::FastForward(_) => LocateMode::FastForward,
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.step(t, 1)
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        self.step(t, -1)
    }

    /// `p · g^n`.
    pub fn step(&self, p: &Rational, n: i64) -> Rational {
        match &self.engine {
            Engine::Linear(g) => {
                let mut x = p.clone();
                for _ in 0..n.unsigned_abs() {
                    x = if n > 0 { g.eval(&x) } else { g.eval_inverse(&x) };
                }
                x
            }
            Engine::FastForward(c) => c.apply(p, n),
        }
    }

    // One application of g (up) or g^-1 (down), or of g^(±2^k) when fast-forwarding.
    fn hop(&self, p: &Rational, k: usize, forward: bool) -> Rational {
        match &self.engine {
            Engine::Linear(g) => {
                debug_assert_eq!(k, 0);
                if forward {
                    g.eval(p)
                } else {
                    g.eval_inverse(p)
                }
            }
            Engine::FastForward(c) => c.jump(p, k, forward),
        }
    }

    /// Block of `gamma` in the orbit partition anchored at `alpha`.
    ///
    /// The caller guarantees that `gamma` lies in the support component of
    /// `alpha`; otherwise the walk stops at a fixed anchor or at the budget.
    pub fn locate(&self, alpha: &Rational, gamma: &Rational) -> Result<OrbitLocation, OrbitError> {
        let a1 = self.hop(alpha, 0, true);
        if &a1 == alpha {
            return Err(OrbitError::FixedPoint(alpha.clone()));
        }
        // Walk along h = g on positive components and h = g^-1 on negative ones.
        let up = a1 > *alpha;
        let first = if up { Some(a1) } else { None };
        let (j, lower, upper) = match self.engine {
            Engine::Linear(_) => self.walk_linear(alpha, gamma, up, first)?,
            Engine::FastForward(_) => self.walk_doubling(alpha, gamma, up, first)?,
        };
        Ok(if up {
            OrbitLocation { index: j, lower, upper }
        } else {
            // α·h^j <= γ < α·h^(j+1) reads α·g^(i+1) <= γ < α·g^i with i = -j-1.
            OrbitLocation { index: -j - 1, lower, upper }
        })
    }

    // Returns j with α·h^j <= γ < α·h^(j+1).
    fn walk_linear(
        &self,
        alpha: &Rational,
        gamma: &Rational,
        up: bool,
        first: Option<Rational>,
    ) -> Result<(i64, Rational, Rational), OrbitError> {
        let mut steps = 0u64;
        if gamma >= alpha {
            let mut p = alpha.clone();
            let mut next = first.unwrap_or_else(|| self.hop(alpha, 0, up));
            let mut j = 0i64;
            while &next <= gamma {
                steps += 1;
                if steps > self.budget {
                    return Err(OrbitError::BudgetExhausted(self.budget));
                }
                let after = self.hop(&next, 0, up);
                if after == next {
                    return Err(OrbitError::FixedPoint(next));
                }
                p = next;
                next = after;
                j += 1;
            }
            Ok((j, p, next))
        } else {
            let mut q = alpha.clone();
            let mut j = 0i64;
            loop {
                steps += 1;
                if steps > self.budget {
                    return Err(OrbitError::BudgetExhausted(self.budget));
                }
                let p = self.hop(&q, 0, !up);
                if p == q {
                    return Err(OrbitError::FixedPoint(p));
                }
                j -= 1;
                if &p <= gamma {
                    return Ok((j, p, q));
                }
                q = p;
            }
        }
    }

    // Doubling then nested binary search, O(log |j|) cache steps.
    fn walk_doubling(
        &self,
        alpha: &Rational,
        gamma: &Rational,
        up: bool,
        first: Option<Rational>,
    ) -> Result<(i64, Rational, Rational), OrbitError> {
        let too_deep = || OrbitError::BudgetExhausted(1 << (CACHE_SLOTS - 2));
        if gamma >= alpha {
            // Largest c >= 0 with α·h^c <= γ.
            let a1 = first.unwrap_or_else(|| self.hop(alpha, 0, up));
            if &a1 > gamma {
                return Ok((0, alpha.clone(), a1));
            }
            let mut n = 0usize;
            let mut low = a1;
            loop {
                if n + 1 >= CACHE_SLOTS - 1 {
                    return Err(too_deep());
                }
                let next = self.hop(alpha, n + 1, up);
                if &next > gamma {
                    break;
                }
                low = next;
                n += 1;
            }
            let mut c: i64 = 1 << n;
            for k in (0..n).rev() {
                let cand = self.hop(&low, k, up);
                if &cand <= gamma {
                    low = cand;
                    c += 1 << k;
                }
            }
            let upper = self.hop(&low, 0, up);
            Ok((c, low, upper))
        } else {
            // Largest c >= 0 with α·h^-c > γ; then j = -(c+1).
            let b1 = self.hop(alpha, 0, !up);
            if &b1 <= gamma {
                return Ok((-1, b1, alpha.clone()));
            }
            let mut n = 0usize;
            let mut high = b1;
            loop {
                if n + 1 >= CACHE_SLOTS - 1 {
                    return Err(too_deep());
                }
                let next = self.hop(alpha, n + 1, !up);
                if &next <= gamma {
                    break;
                }
                high = next;
                n += 1;
            }
            let mut c: i64 = 1 << n;
            for k in (0..n).rev() {
                let cand = self.hop(&high, k, !up);
                if &cand > gamma {
                    high = cand;
                    c += 1 << k;
                }
            }
            let lower = self.hop(&high, 0, !up);
            Ok((-(c + 1), lower, high))
        }
    }
}

/// Locates `gamma` in the orbit partition of `g` anchored at `alpha`.
pub fn orbit_locate(
    g: &Automorphism,
    alpha: &Rational,
    gamma: &Rational,
    mode: LocateMode,
) -> Result<OrbitLocation, OrbitError> {
    Dynamics::with_mode(g, mode)?.locate(alpha, gamma)
}
