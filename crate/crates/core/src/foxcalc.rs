//! Fox free differential calculus on the rational group ring of a free group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::matrix::IntMatrix;
use crate::{Error, FinitePresentation, Result, Word, Q};

/// A finite rational combination of free-group words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, Q>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_terms([(w, Q::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.multiply(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (u.multiply(w), c.clone())))
    }

    pub fn augmentation(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        RingDisplay { e: self, names }
    }
}

struct RingDisplay<'a, S> {
    e: &'a GroupRingElement,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for RingDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.e.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, w.display_with(self.names))?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = &[];
        RingDisplay { e: self, names }.fmt(f)
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, rank: n });
    }
    Ok(())
}

/// The Fox derivative `d_i(w)` for a word over `n` generators.
///
/// Scans the unit letters of `w`: an occurrence of `x_i` contributes the
/// prefix before it, an occurrence of `x_i^-1` contributes minus the prefix
/// up to and including it.
pub fn fox_derivative(n: usize, i: usize, w: &Word) -> Result<GroupRingElement> {
    check_index(i, n)?;
    if let Some(g) = w.max_generator() {
        check_index(g, n)?;
    }
    Ok(fox_unchecked(i, w))
}

fn fox_unchecked(i: usize, w: &Word) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for (gen, sign) in w.unit_letters() {
        if gen == i && sign > 0 {
            out.add_term(prefix.clone(), Q::one());
        }
        prefix.push(gen, sign);
        if gen == i && sign < 0 {
            out.add_term(prefix.clone(), -Q::one());
        }
    }
    out
}

/// Linear extension of `d_i` to the group ring.
pub fn fox_derivative_element(n: usize, i: usize, e: &GroupRingElement) -> Result<GroupRingElement> {
    check_index(i, n)?;
    let mut out = GroupRingElement::zero();
    for (w, c) in e.terms() {
        if let Some(g) = w.max_generator() {
            check_index(g, n)?;
        }
        out = out.add(&fox_unchecked(i, w).scale(c));
    }
    Ok(out)
}

/// The iterated derivative `d_I = d_{i_1} o ... o d_{i_s}`; the last index
/// is applied first.
pub fn fox_iterated(n: usize, multi: &[usize], w: &Word) -> Result<GroupRingElement> {
    let mut e = GroupRingElement::from_word(w.clone());
    for &i in multi.iter().rev() {
        e = fox_derivative_element(n, i, &e)?;
    }
    Ok(e)
}

/// `eps_I(w)`, the augmentation of the iterated Fox derivative.
pub fn epsilon_multi(n: usize, multi: &[usize], w: &Word) -> Result<Q> {
    if multi.is_empty() {
        return Err(Error::InvalidArgument("multi-index must be nonempty".into()));
    }
    Ok(fox_iterated(n, multi, w)?.augmentation())
}

/// The `m x n` matrix of exponent sums `eps_i(r_k)`.
pub fn jacobian(p: &FinitePresentation) -> IntMatrix {
    let n = p.num_generators();
    let mut j = IntMatrix::zeros(p.num_relators(), n);
    for (k, r) in p.relators().iter().enumerate() {
        for l in r.letters() {
            j[(k, l.gen)] += l.exp;
        }
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{seifert_presentation, surface_presentation};
    use crate::qi;

    fn x(i: usize) -> Word {
        Word::generator(i)
    }

    fn w(letters: &[(usize, i64)]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(GroupRingElement::one().augmentation(), qi(1));
        let e = GroupRingElement::from_terms([(x(0), qi(3)), (x(1), qi(-3))]);
        assert_eq!(e.augmentation(), qi(0));
        let d = fox_derivative(2, 0, &w(&[(0, 1), (1, 1), (0, -1)])).unwrap();
        assert_eq!(
            d,
            GroupRingElement::from_terms([
                (Word::identity(), qi(1)),
                (w(&[(0, 1), (1, 1), (0, -1)]), qi(-1)),
            ])
        );
        assert_eq!(d.augmentation(), qi(0));
    }

    #[test]
    fn basic_derivatives() {
        assert_eq!(fox_derivative(1, 0, &x(0)).unwrap(), GroupRingElement::one());
        assert_eq!(
            fox_derivative(1, 0, &x(0).inverse()).unwrap(),
            GroupRingElement::from_terms([(x(0).inverse(), qi(-1))])
        );
        let c = x(0).commutator(&x(1));
        assert_eq!(
            fox_derivative(2, 0, &c).unwrap(),
            GroupRingElement::from_terms([
                (Word::identity(), qi(1)),
                (w(&[(0, 1), (1, 1), (0, -1)]), qi(-1)),
            ])
        );
        assert_eq!(
            fox_derivative(2, 1, &c).unwrap(),
            GroupRingElement::from_terms([(x(0), qi(1)), (c.clone(), qi(-1))])
        );
        assert!(matches!(fox_derivative(2, 2, &c), Err(Error::GeneratorOutOfRange { .. })));
        assert!(fox_derivative(1, 0, &c).is_err());
    }

    #[test]
    fn iterated_augmentations() {
        for k in -4..=4 {
            assert_eq!(epsilon_multi(1, &[0], &Word::power_of(0, k)).unwrap(), qi(k));
        }
        let c = x(0).commutator(&x(1));
        assert_eq!(epsilon_multi(2, &[0, 1], &c).unwrap(), qi(1));
        assert_eq!(epsilon_multi(2, &[1, 0], &c).unwrap(), qi(-1));
        assert_eq!(epsilon_multi(2, &[0], &c).unwrap(), qi(0));
        // eps_{(1,1)}(x^k) = k(k-1)/2
        assert_eq!(epsilon_multi(1, &[0, 0], &Word::power_of(0, 5)).unwrap(), qi(10));
        assert_eq!(epsilon_multi(1, &[0, 0], &Word::power_of(0, -2)).unwrap(), qi(3));
        assert!(epsilon_multi(2, &[], &c).is_err());
    }

    #[test]
    fn jacobians() {
        let j = jacobian(&surface_presentation(2).unwrap());
        assert_eq!((j.nrows(), j.ncols()), (1, 4));
        assert!(j.is_zero());
        let p = FinitePresentation::with_default_names(1, vec![Word::power_of(0, 3)]).unwrap();
        assert_eq!(jacobian(&p).to_rows(), vec![vec![3]]);

        // gens x1, y1, z1, h
        let p = seifert_presentation(1, &[(2, 1)], 0).unwrap();
        assert_eq!(
            jacobian(&p).to_rows(),
            vec![
                vec![0, 0, 1, 0],
                vec![0, 0, 2, 1],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
            ]
        );
    }

    #[test]
    fn jacobian_matches_fox_route() {
        let p = seifert_presentation(2, &[(3, 2), (5, -1)], 4).unwrap();
        let j = jacobian(&p);
        for (k, r) in p.relators().iter().enumerate() {
            for i in 0..p.num_generators() {
                let e = fox_derivative(p.num_generators(), i, r).unwrap().augmentation();
                assert_eq!(e, qi(j[(k, i)]));
            }
        }
    }
}
