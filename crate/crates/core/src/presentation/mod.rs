//! Free-group words, finite presentations, the text format and the
//! standard families of presentations.

mod families;
mod parse;
mod word;

use std::fmt;

use serde::Serialize;

pub use families::{
    borromean_presentation, seifert_euler, seifert_presentation, surface_presentation,
    whitehead_presentation, SeifertData,
};
pub use parse::parse_presentation;
pub use word::{Letter, Word};

use crate::{Error, Result};

/// A finite presentation `<x_0, ..., x_{n-1} | r_0, ..., r_{m-1}>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinitePresentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    /// Validates generator names and relator indices.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("a presentation needs at least one generator".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= names.len() {
                    return Err(Error::GeneratorOutOfRange { index: g, rank: names.len() });
                }
            }
        }
        Ok(FinitePresentation { names, relators })
    }

    /// Generators named `x1, ..., xn`.
    pub fn with_default_names(n: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Indices of relators that freely reduce to the identity.
    pub fn trivial_relators(&self) -> Vec<usize> {
        (0..self.relators.len())
            .filter(|&k| self.relators[k].is_identity())
            .collect()
    }

    /// True when every relator has all exponent sums zero.
    pub fn is_commutator_relators(&self) -> bool {
        self.relators
            .iter()
            .all(|r| (0..self.num_generators()).all(|i| r.exponent_sum(i) == 0))
    }

    /// A copy with the relators permuted: relator `k` of the result is
    /// relator `order[k]` of `self`.
    pub fn with_relator_order(&self, order: &[usize]) -> Result<Self> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.relators.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("not a permutation of the relators".into()));
        }
        Ok(FinitePresentation {
            names: self.names.clone(),
            relators: order.iter().map(|&k| self.relators[k].clone()).collect(),
        })
    }

    /// Text in the input format; parsing it gives back an equal presentation.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.names.join(", "))?;
        writeln!(f, "rels:")?;
        for r in &self.relators {
            writeln!(f, "{}", r.display_with(&self.names))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_out_of_range_relators() {
        let r = Word::generator(3);
        assert_eq!(
            FinitePresentation::with_default_names(2, vec![r]),
            Err(Error::GeneratorOutOfRange { index: 3, rank: 2 })
        );
    }

    #[test]
    fn relator_reordering() {
        let p = borromean_presentation();
        let q = p.with_relator_order(&[1, 0]).unwrap();
        assert_eq!(q.relators()[0], p.relators()[1]);
        assert!(p.with_relator_order(&[0, 0]).is_err());
    }

    fn arb_presentation() -> impl Strategy<Value = FinitePresentation> {
        let word = prop::collection::vec((0usize..3, -3i64..=3), 0..10).prop_map(Word::from_letters);
        prop::collection::vec(word, 0..4)
            .prop_map(|rels| FinitePresentation::with_default_names(3, rels).unwrap())
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_presentation()) {
            let text = p.canonical_text();
            let back = parse_presentation(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.canonical_text(), text);
        }
    }
}
