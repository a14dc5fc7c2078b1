//! Reduced group words in variables `x_2, x_3, …`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::automorphism::Automorphism;

/// One letter `x_var^exp` with `exp = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub var: u32,
    pub exp: i8,
}

impl Letter {
    pub fn new(var: u32, exp: i8) -> Self {
        Letter { var, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { var: self.var, exp: -self.exp }
    }

    fn cancels(self, next: Letter) -> bool {
        self.var == next.var && self.exp == -next.exp
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("a word needs at least one letter")]
    Empty,
    #[error("letter {0} has exponent {1}; only ±1 is allowed")]
    BadExponent(usize, i8),
    #[error("letter {0} uses variable {1}; variables are numbered from 2")]
    BadVariable(usize, u32),
    #[error("letters {0} and {1} cancel; the word is not reduced")]
    NotReduced(usize, usize),
}

fn check(letters: &[Letter]) -> Result<(), WordError> {
    if letters.is_empty() {
        return Err(WordError::Empty);
    }
    for (i, l) in letters.iter().enumerate() {
        if l.exp != 1 && l.exp != -1 {
            return Err(WordError::BadExponent(i, l.exp));
        }
        if l.var < 2 {
            return Err(WordError::BadVariable(i, l.var));
        }
    }
    for (i, w) in letters.windows(2).enumerate() {
        if w[0].cancels(w[1]) {
            return Err(WordError::NotReduced(i, i + 1));
        }
    }
    Ok(())
}

/// True iff the letters form a nonempty reduced word.
pub fn validate_word(letters: &[Letter]) -> bool {
    check(letters).is_ok()
}

/// A nonempty reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        check(&letters)?;
        Ok(Word { letters })
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: u32, y: u32) -> Self {
        Word::new(alloc::vec![Letter::new(x, -1), Letter::new(y, -1), Letter::new(x, 1), Letter::new(y, 1)])
            .expect("distinct variables give a reduced commutator")
    }

    /// `x^n` for `n >= 1`.
    pub fn power(x: u32, n: usize) -> Self {
        Word::new(alloc::vec![Letter::new(x, 1); n]).expect("positive power is reduced")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.letters.iter().map(|l| l.var).collect()
    }

    /// Splits `w = u⁻¹ c u` with `c` cyclically reduced; returns `(u, c)` as
    /// letter lists. `c` is nonempty for every reduced word.
    pub fn cyclic_reduction(&self) -> (Vec<Letter>, Vec<Letter>) {
        let n = self.letters.len();
        let mut r = 0;
        while 2 * (r + 1) < n + 1 && self.letters[r].cancels(self.letters[n - 1 - r]) {
            r += 1;
        }
        (self.letters[n - r..].to_vec(), self.letters[r..n - r].to_vec())
    }

    /// Left-to-right product of the assigned maps.
    pub fn evaluate(&self, assign: impl Fn(u32) -> Automorphism) -> Automorphism {
        evaluate_letters(&self.letters, assign)
    }
}

pub(crate) fn evaluate_letters(letters: &[Letter], assign: impl Fn(u32) -> Automorphism) -> Automorphism {
    let mut acc: Option<Automorphism> = None;
    for l in letters {
        let a = assign(l.var);
        let a = if l.exp > 0 { a } else { a.inverse() };
        acc = Some(match acc {
            None => a,
            Some(prev) => prev.then(&a),
        });
    }
    acc.unwrap_or_else(Automorphism::identity)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp > 0 {
                write!(f, "x{}", l.var)?;
            } else {
                write!(f, "x{}^-1", l.var)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn validation() {
        assert!(validate_word(&[Letter::new(2, 1)]));
        assert!(!validate_word(&[Letter::new(2, 1), Letter::new(2, -1)]));
        assert!(validate_word(Word::commutator(2, 3).letters()));
        assert!(!validate_word(&[]));
        assert_eq!(Word::new(vec![Letter::new(2, 2)]), Err(WordError::BadExponent(0, 2)));
        assert_eq!(Word::new(vec![Letter::new(1, 1)]), Err(WordError::BadVariable(0, 1)));
    }

    #[test]
    fn cyclic_reduction_splits() {
        let w = Word::new(vec![Letter::new(2, 1), Letter::new(3, 1), Letter::new(2, -1)]).unwrap();
        let (u, c) = w.cyclic_reduction();
        assert_eq!(u, vec![Letter::new(2, -1)]);
        assert_eq!(c, vec![Letter::new(3, 1)]);
        let w = Word::commutator(2, 3);
        let (u, c) = w.cyclic_reduction();
        assert!(u.is_empty());
        assert_eq!(c, w.letters());
        let w = Word::new(vec![Letter::new(2, 1), Letter::new(3, 1), Letter::new(4, 1), Letter::new(3, -1), Letter::new(2, -1)])
            .unwrap();
        let (u, c) = w.cyclic_reduction();
        assert_eq!(u, vec![Letter::new(3, -1), Letter::new(2, -1)]);
        assert_eq!(c, vec![Letter::new(4, 1)]);
        assert_eq!(w.to_string(), "x2 x3 x4 x3^-1 x2^-1");
    }
}
