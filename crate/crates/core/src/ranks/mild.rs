//! Anick's mildness tests: the Hilbert-series criterion, checked degree by
//! degree, and the highest-monomial sufficient condition.

use serde::Serialize;

use super::hilbert::HilbertSeries;
use crate::freelie::enveloping_dims;
use crate::ncseries::{initial_forms, Tensor};
use crate::{Error, FinitePresentation, Result, Q, Z};

/// Outcome of comparing `Hilb(U(L(G)))` with `(1 - nt + sum t^w_i)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NumericMildness {
    /// The series agree through `degree`; evidence, not proof.
    ConsistentTo { degree: usize },
    /// The series differ at `degree`; the presentation is not mild.
    NotMild {
        degree: usize,
        #[serde(serialize_with = "as_string")]
        expected: Z,
        actual: usize,
    },
}

fn as_string<S: serde::Serializer>(z: &Z, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&z.to_string())
}

/// The series `(1 - nt + sum_i t^{w_i})^{-1}` through degree `N`.
pub fn mild_series(n: usize, weights: &[usize], max_degree: usize) -> HilbertSeries {
    let mut terms = vec![(0, Q::from_integer(1.into())), (1, -Q::from_integer(n.into()))];
    terms.extend(weights.iter().map(|&w| (w, Q::from_integer(1.into()))));
    HilbertSeries::polynomial(terms, max_degree)
        .inverse()
        .expect("constant term is 1")
}

/// Numeric mildness test through degree `N`.
pub fn anick_mild_numeric(p: &FinitePresentation, max_degree: usize, cap: usize) -> Result<NumericMildness> {
    let n = p.num_generators();
    let forms = initial_forms(p, cap)?;
    let weights: Vec<usize> = forms.iter().map(Tensor::degree).collect();
    let expected = mild_series(n, &weights, max_degree);
    let actual = enveloping_dims(n, &forms, max_degree)?;
    for (k, &a) in actual.iter().enumerate() {
        let e = expected.coefficient(k);
        if e != Q::from_integer(a.into()) {
            return Ok(NumericMildness::NotMild { degree: k, expected: e.to_integer(), actual: a });
        }
    }
    Ok(NumericMildness::ConsistentTo { degree: max_degree })
}

/// Outcome of the highest-monomial test under one generator ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CombinatorialMildness {
    Certified { ordering: Vec<usize>, highest_terms: Vec<Vec<usize>> },
    /// The sufficient condition failed; mildness is undecided.
    Inconclusive { ordering: Vec<usize>, highest_terms: Vec<Vec<usize>>, reason: String },
}

impl CombinatorialMildness {
    pub fn is_certified(&self) -> bool {
        matches!(self, CombinatorialMildness::Certified { .. })
    }

    pub fn highest_terms(&self) -> &[Vec<usize>] {
        match self {
            CombinatorialMildness::Certified { highest_terms, .. }
            | CombinatorialMildness::Inconclusive { highest_terms, .. } => highest_terms,
        }
    }
}

/// The lexicographically highest monomial of `t` when `ordering` lists the
/// generators from largest to smallest.
pub fn highest_term(t: &Tensor, ordering: &[usize]) -> Option<Vec<usize>> {
    let rank = rank_of(ordering, t.num_vars());
    t.terms()
        .map(|(m, _)| m)
        .min_by(|a, b| a.iter().map(|&g| rank[g]).cmp(b.iter().map(|&g| rank[g])))
        .cloned()
}

fn rank_of(ordering: &[usize], n: usize) -> Vec<usize> {
    let mut rank = vec![usize::MAX; n];
    for (pos, &g) in ordering.iter().enumerate() {
        rank[g] = pos;
    }
    rank
}

fn is_submonomial(small: &[usize], big: &[usize]) -> bool {
    small.len() <= big.len() && big.windows(small.len()).any(|w| w == small)
}

/// A nonempty suffix of `a` equal to a prefix of `b`, other than `a == b`
/// matching as a whole.
fn overlaps(a: &[usize], b: &[usize]) -> bool {
    (1..=a.len().min(b.len()))
        .filter(|&l| !(l == a.len() && l == b.len()))
        .any(|l| a[a.len() - l..] == b[..l])
}

fn check_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if ordering.len() != n {
        return Err(Error::InvalidArgument(format!("ordering has {} entries, expected {n}", ordering.len())));
    }
    for &g in ordering {
        if g >= n || seen[g] {
            return Err(Error::InvalidArgument("ordering is not a permutation of the generators".into()));
        }
        seen[g] = true;
    }
    Ok(())
}

fn judge(forms: &[Tensor], ordering: &[usize]) -> CombinatorialMildness {
    let tops: Vec<Option<Vec<usize>>> = forms.iter().map(|t| highest_term(t, ordering)).collect();
    let ordering = ordering.to_vec();
    if let Some(i) = tops.iter().position(Option::is_none) {
        return CombinatorialMildness::Inconclusive {
            ordering,
            highest_terms: Vec::new(),
            reason: format!("initial form of relator {i} is zero"),
        };
    }
    let w: Vec<Vec<usize>> = tops.into_iter().flatten().collect();
    let fail = |reason: String| CombinatorialMildness::Inconclusive {
        ordering: ordering.clone(),
        highest_terms: w.clone(),
        reason,
    };
    for i in 0..w.len() {
        for j in 0..w.len() {
            if i != j && is_submonomial(&w[i], &w[j]) {
                return fail(format!("highest term of relator {i} is a submonomial of relator {j}"));
            }
        }
    }
    for i in 0..w.len() {
        for j in 0..w.len() {
            if overlaps(&w[i], &w[j]) {
                return fail(format!("highest term of relator {i} overlaps relator {j}"));
            }
        }
    }
    CombinatorialMildness::Certified { ordering, highest_terms: w }
}

/// Highest-monomial test under `ordering` (largest generator first).
pub fn anick_mild_combinatorial(p: &FinitePresentation, ordering: &[usize], cap: usize) -> Result<CombinatorialMildness> {
    check_ordering(p.num_generators(), ordering)?;
    Ok(judge(&initial_forms(p, cap)?, ordering))
}

/// Largest generator count for which [`anick_mild_search`] tries every
/// ordering.
pub const EXHAUSTIVE_ORDERING_LIMIT: usize = 6;

/// Tries all orderings when `n <= 6` (the natural one otherwise) and returns
/// the first certifying one, or the natural ordering's inconclusive result.
pub fn anick_mild_search(p: &FinitePresentation, cap: usize) -> Result<CombinatorialMildness> {
    let n = p.num_generators();
    let forms = initial_forms(p, cap)?;
    let mut ordering: Vec<usize> = (0..n).collect();
    let first = judge(&forms, &ordering);
    if first.is_certified() || n > EXHAUSTIVE_ORDERING_LIMIT {
        return Ok(first);
    }
    while next_permutation(&mut ordering) {
        let v = judge(&forms, &ordering);
        if v.is_certified() {
            return Ok(v);
        }
    }
    Ok(first)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{borromean_presentation, surface_presentation, whitehead_presentation};
    use crate::Word;

    fn x(i: usize) -> Word {
        Word::generator(i)
    }

    fn quadrelation() -> FinitePresentation {
        FinitePresentation::with_default_names(4, vec![
            x(1).commutator(&x(2)),
            x(0).commutator(&x(3)),
            x(0).commutator(&x(2)).multiply(&x(1).commutator(&x(3))),
        ])
        .unwrap()
    }

    #[test]
    fn series() {
        let s = mild_series(4, &[2], 5);
        assert_eq!(s, HilbertSeries::from_integers([1, 4, 15, 56, 209, 780], 5));
    }

    #[test]
    fn numeric() {
        for p in [surface_presentation(2).unwrap(), whitehead_presentation(), quadrelation(), borromean_presentation()] {
            assert_eq!(anick_mild_numeric(&p, 5, 16).unwrap(), NumericMildness::ConsistentTo { degree: 5 });
        }
        let bad = FinitePresentation::with_default_names(3, vec![x(2), x(2).multiply(&x(0).commutator(&x(1)))]).unwrap();
        assert_eq!(
            anick_mild_numeric(&bad, 4, 16).unwrap(),
            NumericMildness::NotMild { degree: 1, expected: Z::from(1), actual: 2 }
        );
    }

    #[test]
    fn quadrelation_terms() {
        let v = anick_mild_combinatorial(&quadrelation(), &[0, 1, 2, 3], 16).unwrap();
        assert!(v.is_certified());
        assert_eq!(v.highest_terms(), &[vec![1, 2], vec![0, 3], vec![0, 2]]);
    }

    #[test]
    fn borromean_orderings() {
        let p = borromean_presentation();
        let v = anick_mild_combinatorial(&p, &[1, 0, 2], 16).unwrap();
        assert!(v.is_certified(), "{v:?}");
        assert!(anick_mild_search(&p, 16).unwrap().is_certified());
    }

    #[test]
    fn inconclusive_cases() {
        let r = x(0).commutator(&x(1));
        let twice = FinitePresentation::with_default_names(2, vec![r.clone(), r]).unwrap();
        let v = anick_mild_search(&twice, 16).unwrap();
        assert!(!v.is_certified());
        assert!(!overlaps(&[0, 1], &[0, 1]));
        assert!(overlaps(&[0, 1, 0], &[0, 1, 0]));
        assert!(overlaps(&[0, 1], &[1, 2]));
        assert!(anick_mild_combinatorial(&twice, &[0, 0], 16).is_err());
    }

    #[test]
    fn permutations() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, vec![2, 1, 0]);
    }
}
