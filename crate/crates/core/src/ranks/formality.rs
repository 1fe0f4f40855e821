//! Graded-formality verdicts.

use serde::Serialize;

use super::mild::anick_mild_search;
use crate::freelie::{holonomy_presentation, initial_form_lie_dims};
use crate::ncseries::{weight, Weight};
use crate::{Error, FinitePresentation, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FormalityVerdict {
    /// Established for all degrees.
    Holds { reason: String },
    /// Holonomy and associated graded dimensions agree through `degree`.
    HoldsThrough { degree: usize },
    /// The dimensions differ at `degree`: not graded-formal.
    Fails { degree: usize, holonomy: usize, graded: usize },
    Unknown { reason: String },
}

impl FormalityVerdict {
    /// `Some(true)` for holds (to any degree), `Some(false)` for fails.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            FormalityVerdict::Holds { .. } | FormalityVerdict::HoldsThrough { .. } => Some(true),
            FormalityVerdict::Fails { .. } => Some(false),
            FormalityVerdict::Unknown { .. } => None,
        }
    }
}

/// A one-relator group is graded-formal exactly when its relator has weight
/// at most 2.
pub fn one_relator_graded_formality(p: &FinitePresentation) -> Result<bool> {
    if p.num_relators() != 1 {
        return Err(Error::InvalidArgument(format!("expected one relator, found {}", p.num_relators())));
    }
    match weight(&p.relators()[0], 3) {
        Weight::Finite(w) => Ok(w <= 2),
        Weight::ExceedsCap => Ok(false),
        Weight::Infinite => Err(Error::TrivialRelator { relator: 0 }),
    }
}

/// Compares holonomy dimensions with those of `L(G)` through degree `N`.
/// Meaningful when `gr(G) = L(G)`, which holds for one-relator
/// presentations and whenever the highest-monomial test certifies
/// mildness; otherwise the verdict is unknown.
pub fn graded_formality_compare(p: &FinitePresentation, max_degree: usize, cap: usize) -> Result<FormalityVerdict> {
    if p.num_relators() != 1 && !anick_mild_search(p, cap)?.is_certified() {
        return Ok(FormalityVerdict::Unknown {
            reason: "mildness not certified, so gr(G) is not known to equal L(G)".into(),
        });
    }
    let graded = initial_form_lie_dims(p, max_degree, cap)?;
    let holonomy = holonomy_presentation(p).lie_dims(max_degree);
    Ok(compare_dims(&holonomy, &graded))
}

/// Verdict from two dimension tables indexed by degree `1..=N`.
pub fn compare_dims(holonomy: &[usize], graded: &[usize]) -> FormalityVerdict {
    match holonomy.iter().zip(graded).position(|(h, g)| h != g) {
        Some(i) => FormalityVerdict::Fails { degree: i + 1, holonomy: holonomy[i], graded: graded[i] },
        None => FormalityVerdict::HoldsThrough { degree: holonomy.len().min(graded.len()) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{borromean_presentation, surface_presentation, whitehead_presentation};
    use crate::Word;

    fn x(i: usize) -> Word {
        Word::generator(i)
    }

    #[test]
    fn one_relator() {
        let omega3 = FinitePresentation::with_default_names(2, vec![x(0).commutator(&x(0).commutator(&x(1)))]).unwrap();
        assert!(!one_relator_graded_formality(&omega3).unwrap());
        let mixed = FinitePresentation::with_default_names(5, vec![
            x(0).commutator(&x(1)).multiply(&x(2).commutator(&x(3).commutator(&x(4)))),
        ])
        .unwrap();
        assert!(one_relator_graded_formality(&mixed).unwrap());
        assert!(one_relator_graded_formality(&surface_presentation(3).unwrap()).unwrap());
        assert!(one_relator_graded_formality(&borromean_presentation()).is_err());
    }

    #[test]
    fn comparisons() {
        assert_eq!(
            graded_formality_compare(&borromean_presentation(), 4, 16).unwrap(),
            FormalityVerdict::Fails { degree: 3, holonomy: 8, graded: 6 }
        );
        assert_eq!(
            graded_formality_compare(&whitehead_presentation(), 5, 16).unwrap(),
            FormalityVerdict::Fails { degree: 4, holonomy: 3, graded: 2 }
        );
        assert_eq!(
            graded_formality_compare(&surface_presentation(2).unwrap(), 5, 16).unwrap(),
            FormalityVerdict::HoldsThrough { degree: 5 }
        );
        let r = x(0).commutator(&x(1));
        let twice = FinitePresentation::with_default_names(2, vec![r.clone(), r]).unwrap();
        assert!(matches!(graded_formality_compare(&twice, 3, 16).unwrap(), FormalityVerdict::Unknown { .. }));
    }
}
