use std::fmt;
use std::ops::Mul;

use serde::Serialize;

/// One syllable `x_gen^exp` of a word; `exp` is never zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word in a free group, stored run-length encoded.
///
/// Adjacent syllables never share a generator, so two reduced words are
/// equal as group elements exactly when they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// The generator `x_gen`.
    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter { gen, exp: 1 }] }
    }

    /// `x_gen^exp`; the identity when `exp == 0`.
    pub fn power_of(gen: usize, exp: i64) -> Self {
        Word::from_letters([(gen, exp)])
    }

    /// Builds a word from `(generator, exponent)` pairs, freely reducing.
    pub fn from_letters<I: IntoIterator<Item = (usize, i64)>>(letters: I) -> Self {
        let mut w = Word::identity();
        for (gen, exp) in letters {
            w.push(gen, exp);
        }
        w
    }

    pub(crate) fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(Letter { gen, exp }),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length counted in unit letters `x_i^{±1}`.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Unit letters `(gen, ±1)` from left to right.
    pub fn unit_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|l| std::iter::repeat_n((l.gen, l.exp.signum()), l.exp.unsigned_abs() as usize))
    }

    /// Net exponent of `gen` in the word.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.exp).sum()
    }

    /// Largest generator index occurring, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for l in &other.letters {
            out.push(l.gen, l.exp);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, exp: -l.exp })
                .collect(),
        }
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.multiply(other)
            .multiply(&self.inverse())
            .multiply(&other.inverse())
    }

    /// Renders the word with the given generator names, e.g. `x y^-2`.
    /// The identity renders as `1`.
    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.gen) {
                Some(name) => write!(f, "{}", name.as_ref())?,
                None => write!(f, "x{}", l.gen + 1)?,
            }
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = &[];
        WordDisplay { word: self, names }.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> Word {
        Word::generator(i)
    }

    #[test]
    fn multiply_by_inverse_is_identity() {
        assert!(x(0).multiply(&x(0).inverse()).is_identity());
    }

    #[test]
    fn self_commutator_is_trivial() {
        assert!(x(0).commutator(&x(0)).is_identity());
    }

    #[test]
    fn commutator_square_has_eight_letters() {
        let c = x(0).commutator(&x(1));
        let c2 = c.power(2);
        assert_eq!(c2.len(), 8);
        assert_eq!(
            c2,
            Word::from_letters([(0, 1), (1, 1), (0, -1), (1, -1), (0, 1), (1, 1), (0, -1), (1, -1)])
        );
    }

    #[test]
    fn run_length_merging() {
        let w = Word::from_letters([(0, 2), (0, 3), (1, 1), (1, -1), (0, -5)]);
        assert!(w.is_identity());
        let w = Word::from_letters([(2, 7), (1, 1)]);
        assert_eq!(w.letters().len(), 2);
        assert_eq!(w.len(), 8);
        assert_eq!(w.exponent_sum(2), 7);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..3, -2i64..=2), 0..12).prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn group_laws(u in arb_word(), v in arb_word(), w in arb_word()) {
            prop_assert!(u.multiply(&u.inverse()).is_identity());
            prop_assert_eq!(u.inverse().inverse(), u.clone());
            prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
            prop_assert_eq!(u.multiply(&v).inverse(), v.inverse().multiply(&u.inverse()));
        }

        #[test]
        fn stored_form_is_reduced(u in arb_word(), v in arb_word()) {
            let w = u.multiply(&v);
            for pair in w.letters().windows(2) {
                prop_assert_ne!(pair[0].gen, pair[1].gen);
            }
            prop_assert!(w.letters().iter().all(|l| l.exp != 0));
        }
    }
}
