//! A uniform handle over exact PL maps and lazily evaluated procedural maps.

use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::pl::PlAutomorphism;
use crate::rational::Rational;

/// Shared evaluation procedure.
pub type EvalFn = Arc<dyn Fn(&Rational) -> Rational + Send + Sync>;

/// An increasing bijection given by a forward and a backward procedure.
///
/// The two procedures must be mutually inverse on every rational. The
/// description records which construction produced the value.
#[derive(Clone)]
pub struct ProceduralAutomorphism {
    forward: EvalFn,
    backward: EvalFn,
    description: String,
}

impl ProceduralAutomorphism {
    pub fn new(description: impl Into<String>, forward: EvalFn, backward: EvalFn) -> Self {
        ProceduralAutomorphism { forward, backward, description: description.into() }
    }

    pub fn from_fns<F, B>(description: impl Into<String>, forward: F, backward: B) -> Self
    where
        F: Fn(&Rational) -> Rational + Send + Sync + 'static,
        B: Fn(&Rational) -> Rational + Send + Sync + 'static,
    {
        Self::new(description, Arc::new(forward), Arc::new(backward))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (self.forward)(t)
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        (self.backward)(t)
    }

    pub fn inverse(&self) -> Self {
        ProceduralAutomorphism {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            description: alloc::format!("inverse({})", self.description),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for ProceduralAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProceduralAutomorphism").field("description", &self.description).finish()
    }
}

#[derive(Clone, Debug)]
pub enum Automorphism {
    Pl(PlAutomorphism),
    Procedural(ProceduralAutomorphism),
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism::Pl(PlAutomorphism::identity())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        match self {
            Automorphism::Pl(f) => f.eval(t),
            Automorphism::Procedural(f) => f.eval(t),
        }
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        match self {
            Automorphism::Pl(f) => f.eval_inverse(t),
            Automorphism::Procedural(f) => f.eval_inverse(t),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Automorphism::Pl(f) => Automorphism::Pl(f.inverse()),
            Automorphism::Procedural(f) => Automorphism::Procedural(f.inverse()),
        }
    }

    pub fn as_pl(&self) -> Option<&PlAutomorphism> {
        match self {
            Automorphism::Pl(f) => Some(f),
            Automorphism::Procedural(_) => None,
        }
    }

    pub fn description(&self) -> String {
        match self {
            Automorphism::Pl(f) if f.is_identity() => "identity".into(),
            Automorphism::Pl(_) => "pl".into(),
            Automorphism::Procedural(p) => p.description().into(),
        }
    }

    /// Left-to-right composition `t ↦ other(self(t))`. Stays PL when both are.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        match (self, other) {
            (Automorphism::Pl(f), Automorphism::Pl(g)) => Automorphism::Pl(f.then(g)),
            _ => {
                let (a, b) = (self.clone(), other.clone());
                let (c, d) = (self.clone(), other.clone());
                let desc = alloc::format!("{}·{}", self.description(), other.description());
                Automorphism::Procedural(ProceduralAutomorphism::from_fns(
                    desc,
                    move |t| b.eval(&a.eval(t)),
                    move |t| c.eval_inverse(&d.eval_inverse(t)),
                ))
            }
        }
    }

    /// `n`-fold composition; negative `n` composes the inverse.
    pub fn power(&self, n: i64) -> Automorphism {
        match self {
            Automorphism::Pl(f) => Automorphism::Pl(f.power(n)),
            Automorphism::Procedural(p) => {
                let (a, b) = (p.clone(), p.clone());
                let apply = move |f: &ProceduralAutomorphism, t: &Rational, k: i64| {
                    let mut x = t.clone();
                    for _ in 0..k.unsigned_abs() {
                        x = if k > 0 { f.eval(&x) } else { f.eval_inverse(&x) };
                    }
                    x
                };
                Automorphism::Procedural(ProceduralAutomorphism::from_fns(
                    alloc::format!("({})^{}", p.description(), n),
                    move |t| apply(&a, t, n),
                    move |t| apply(&b, t, -n),
                ))
            }
        }
    }
}

impl From<PlAutomorphism> for Automorphism {
    fn from(f: PlAutomorphism) -> Self {
        Automorphism::Pl(f)
    }
}

impl From<ProceduralAutomorphism> for Automorphism {
    fn from(f: ProceduralAutomorphism) -> Self {
        Automorphism::Procedural(f)
    }
}

pub fn eval(f: &Automorphism, t: &Rational) -> Rational {
    f.eval(t)
}

pub fn inverse(f: &Automorphism) -> Automorphism {
    f.inverse()
}

/// `compose(f, g)` applies `f` first, then `g`.
pub fn compose(f: &Automorphism, g: &Automorphism) -> Automorphism {
    f.then(g)
}

pub fn power(f: &Automorphism, n: i64) -> Automorphism {
    f.power(n)
}
