//! Rank reports: formula tables reconciled against linear algebra, plus
//! mildness and formality verdicts.

use num::Zero;
use serde::{Serialize, Serializer};

use super::formality::{compare_dims, one_relator_graded_formality, FormalityVerdict};
use super::formulas::{
    chen_free_ranks, labute_one_relator_ranks, one_relator_chen_series, series_ranks, surface_chen_ranks,
    surface_lcs, witt, witt_ranks,
};
use super::mild::{anick_mild_numeric, anick_mild_search, CombinatorialMildness, NumericMildness};
use crate::freelie::{holonomy_presentation, initial_form_lie_dims, link_holonomy, linking_graph_connected, HolonomyPresentation};
use crate::matrix::IntMatrix;
use crate::ncseries::{weight, Weight, DEFAULT_WEIGHT_CAP};
use crate::presentation::{surface_presentation, SeifertData};
use crate::{Error, FinitePresentation, Result, Z};

/// Where a rank value came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    Formula { name: String },
    LinearAlgebra,
    /// A formula and linear algebra, checked equal.
    Both { formula: String },
    /// Copied from another table by a structural identity.
    Transferred { from: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub degree: usize,
    #[serde(serialize_with = "as_string")]
    pub value: Z,
    pub source: Source,
}

fn as_string<S: Serializer>(z: &Z, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&z.to_string())
}

/// Ranks for degrees `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RankTable {
    pub entries: Vec<RankEntry>,
}

impl RankTable {
    pub fn from_formula(name: &str, values: Vec<Z>) -> Self {
        let entries = values
            .into_iter()
            .enumerate()
            .map(|(i, value)| RankEntry { degree: i + 1, value, source: Source::Formula { name: name.into() } })
            .collect();
        RankTable { entries }
    }

    pub fn from_linear_algebra(values: &[usize]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, &v)| RankEntry { degree: i + 1, value: Z::from(v), source: Source::LinearAlgebra })
            .collect();
        RankTable { entries }
    }

    /// The formula table, each entry checked against the computed value.
    pub fn reconciled(table: &str, formula_name: &str, formula: Vec<Z>, computed: &[usize]) -> Result<Self> {
        if formula.len() != computed.len() {
            return Err(Error::ShapeMismatch(format!(
                "{table}: formula has {} degrees, linear algebra {}",
                formula.len(),
                computed.len()
            )));
        }
        let mut entries = Vec::with_capacity(formula.len());
        for (i, (f, &c)) in formula.into_iter().zip(computed).enumerate() {
            if f != Z::from(c) {
                return Err(Error::RankMismatch {
                    table: table.into(),
                    degree: i + 1,
                    formula: f.to_string(),
                    computed: c.to_string(),
                });
            }
            entries.push(RankEntry { degree: i + 1, value: f, source: Source::Both { formula: formula_name.into() } });
        }
        Ok(RankTable { entries })
    }

    /// The same values, marked as transferred from `from`.
    pub fn transferred(&self, from: &str, reason: &str) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| RankEntry {
                degree: e.degree,
                value: e.value.clone(),
                source: Source::Transferred { from: from.into(), reason: reason.into() },
            })
            .collect();
        RankTable { entries }
    }

    pub fn values(&self) -> Vec<Z> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }

    /// Value at degree `k`, if present.
    pub fn value(&self, k: usize) -> Option<&Z> {
        self.entries.get(k.wrapping_sub(1)).map(|e| &e.value)
    }

    fn as_usizes(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|e| usize::try_from(&e.value).expect("rank fits in usize"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Mildness {
    Proved { reason: String },
    RefutedNumerically {
        degree: usize,
        #[serde(serialize_with = "as_string")]
        expected: Z,
        actual: usize,
    },
    /// The Hilbert-series criterion holds through `degree`.
    EvidenceTo { degree: usize },
    Unknown { reason: String },
}

/// LCS ranks `phi`, holonomy ranks `phi_bar`, Chen ranks `theta` and
/// holonomy Chen ranks `theta_bar` through degree `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub max_degree: usize,
    pub phi: Option<RankTable>,
    pub phi_bar: Option<RankTable>,
    pub theta: Option<RankTable>,
    pub theta_bar: Option<RankTable>,
    pub mildness: Mildness,
    pub formality: FormalityVerdict,
    pub notes: Vec<String>,
}

impl RankReport {
    /// Assembles a report; every table must cover degrees `1..=N`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        max_degree: usize,
        phi: Option<RankTable>,
        phi_bar: Option<RankTable>,
        theta: Option<RankTable>,
        theta_bar: Option<RankTable>,
        mildness: Mildness,
        formality: FormalityVerdict,
        notes: Vec<String>,
    ) -> Self {
        for t in [&phi, &phi_bar, &theta, &theta_bar].into_iter().flatten() {
            assert_eq!(t.entries.len(), max_degree, "rank table does not cover 1..=N");
        }
        RankReport { max_degree, phi, phi_bar, theta, theta_bar, mildness, formality, notes }
    }
}

fn check_degree(max_degree: usize) -> Result<()> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
    }
    Ok(())
}

/// Ranks of the free group of rank `n`.
pub fn free_rank_report(n: usize, max_degree: usize) -> Result<RankReport> {
    check_degree(max_degree)?;
    let h = HolonomyPresentation::free(n);
    let phi_bar = RankTable::reconciled("phi_bar", "witt", witt_ranks(n, max_degree), &h.lie_dims(max_degree))?;
    let theta_bar = RankTable::reconciled(
        "theta_bar",
        "chen-free",
        chen_free_ranks(n, max_degree),
        &h.solvable_quotient_dims(2, max_degree),
    )?;
    Ok(RankReport::new(
        max_degree,
        Some(phi_bar.transferred("phi_bar", "free groups are 1-formal")),
        Some(phi_bar),
        Some(theta_bar.transferred("theta_bar", "free groups are 1-formal")),
        Some(theta_bar),
        Mildness::Proved { reason: "no relators".into() },
        FormalityVerdict::Holds { reason: "free groups are 1-formal".into() },
        Vec::new(),
    ))
}

/// Ranks of the genus-`g` surface group.
pub fn surface_rank_report(g: usize, max_degree: usize) -> Result<RankReport> {
    check_degree(max_degree)?;
    let p = surface_presentation(g)?;
    let h = holonomy_presentation(&p);
    let lcs = surface_lcs(g, max_degree);
    let phi_bar = RankTable::reconciled("phi_bar", "surface-lcs", lcs.clone(), &h.lie_dims(max_degree))?;
    let graded = initial_form_lie_dims(&p, max_degree, DEFAULT_WEIGHT_CAP)?;
    let phi = RankTable::reconciled("phi", "surface-lcs", lcs, &graded)?;
    let chen = surface_chen_ranks(g, max_degree);
    assert_eq!(
        chen,
        series_ranks(&one_relator_chen_series(2 * g, true, max_degree)),
        "surface chen ranks disagree with the one-relator chen series"
    );
    let theta_bar =
        RankTable::reconciled("theta_bar", "surface-chen", chen, &h.solvable_quotient_dims(2, max_degree))?;
    let formality = compare_dims(&phi_bar.as_usizes(), &phi.as_usizes());
    Ok(RankReport::new(
        max_degree,
        Some(phi),
        Some(phi_bar),
        Some(theta_bar.transferred("theta_bar", "surface groups are 1-formal")),
        Some(theta_bar),
        Mildness::Proved { reason: "one relator".into() },
        formality,
        Vec::new(),
    ))
}

/// Ranks of a Seifert fibered space group, branching on whether the Euler
/// number vanishes.
pub fn seifert_rank_report(g: usize, pairs: &[(i64, i64)], b: i64, max_degree: usize) -> Result<RankReport> {
    check_degree(max_degree)?;
    let data = SeifertData::new(g, pairs.to_vec(), b)?;
    let e = data.euler();
    let h = holonomy_presentation(&data.presentation());
    let n = max_degree;
    let lcs = surface_lcs(g, n);
    let chen = surface_chen_ranks(g, n);
    let with_head = |head: &[Z], tail: &[Z]| -> Vec<Z> {
        head.iter().chain(tail.iter().skip(head.len())).take(n).cloned().collect()
    };
    let lie = h.lie_dims(n);
    let solv = h.solvable_quotient_dims(2, n);
    let mut notes = vec![format!("euler number {e}")];
    let (phi, phi_bar, theta, theta_bar) = if e.is_zero() {
        notes.push("e = 0: product of the surface group with Z".into());
        let top = Z::from(2 * g + 1);
        let phi_vals = with_head(std::slice::from_ref(&top), &lcs);
        let theta_vals = with_head(&[top], &chen);
        let phi_bar = RankTable::reconciled("phi_bar", "seifert-lcs", phi_vals.clone(), &lie)?;
        let theta_bar = RankTable::reconciled("theta_bar", "seifert-chen", theta_vals.clone(), &solv)?;
        (
            RankTable::from_formula("seifert-lcs", phi_vals),
            phi_bar,
            RankTable::from_formula("seifert-chen", theta_vals),
            theta_bar,
        )
    } else {
        notes.push("e != 0: holonomy Lie algebra is free on 2g generators".into());
        let head = [Z::from(2 * g), Z::from(g * (2 * g).saturating_sub(1))];
        let phi_bar = RankTable::reconciled("phi_bar", "witt", witt_ranks(2 * g, n), &lie)?;
        let theta_bar = RankTable::reconciled("theta_bar", "chen-free", chen_free_ranks(2 * g, n), &solv)?;
        (
            RankTable::from_formula("seifert-lcs", with_head(&head, &lcs)),
            phi_bar,
            RankTable::from_formula("seifert-chen", with_head(&head, &chen)),
            theta_bar,
        )
    };
    let formality = compare_dims(&phi_bar.as_usizes(), &phi.as_usizes());
    Ok(RankReport::new(
        n,
        Some(phi),
        Some(phi_bar),
        Some(theta),
        Some(theta_bar),
        Mildness::Unknown { reason: "not examined for Seifert presentations".into() },
        formality,
        notes,
    ))
}

/// Ranks of a link group from its linking matrix.
pub fn link_rank_report(l: &IntMatrix, max_degree: usize) -> Result<RankReport> {
    check_degree(max_degree)?;
    let h = link_holonomy(l)?;
    let n = l.nrows();
    let lie = h.lie_dims(max_degree);
    let solv = h.solvable_quotient_dims(2, max_degree);
    let unimodular = n >= 2 && (0..n).all(|i| (0..n).all(|j| i == j || l[(i, j)].abs() == 1));
    let (phi_bar, theta_bar) = if unimodular {
        let head = |v: Vec<Z>| -> Vec<Z> { std::iter::once(Z::from(n)).chain(v.into_iter().skip(1)).collect() };
        (
            RankTable::reconciled("phi_bar", "murasugi", head(witt_ranks(n - 1, max_degree)), &lie)?,
            RankTable::reconciled("theta_bar", "murasugi-chen", head(chen_free_ranks(n - 1, max_degree)), &solv)?,
        )
    } else {
        (RankTable::from_linear_algebra(&lie), RankTable::from_linear_algebra(&solv))
    };
    let connected = linking_graph_connected(l);
    let mut notes = Vec::new();
    let (phi, theta, formality) = if connected {
        let reason = "connected linking graph";
        (
            Some(phi_bar.transferred("phi_bar", reason)),
            Some(theta_bar.transferred("theta_bar", reason)),
            FormalityVerdict::Holds { reason: reason.into() },
        )
    } else {
        notes.push("linking graph is disconnected: phi and theta are not determined".into());
        (None, None, FormalityVerdict::Unknown { reason: "linking graph is disconnected".into() })
    };
    Ok(RankReport::new(
        max_degree,
        phi,
        Some(phi_bar),
        theta,
        Some(theta_bar),
        Mildness::Unknown { reason: "no group presentation given".into() },
        formality,
        notes,
    ))
}

/// Ranks of an arbitrary presentation: holonomy tables by linear algebra,
/// LCS ranks when the presentation is known to be mild.
pub fn presentation_rank_report(p: &FinitePresentation, max_degree: usize, cap: usize) -> Result<RankReport> {
    check_degree(max_degree)?;
    let h = holonomy_presentation(p);
    let phi_bar = RankTable::from_linear_algebra(&h.lie_dims(max_degree));
    let theta_bar = RankTable::from_linear_algebra(&h.solvable_quotient_dims(2, max_degree));
    let mut notes = Vec::new();
    let one_relator = p.num_relators() == 1;
    let (mildness, phi) = if one_relator {
        let omega = match weight(&p.relators()[0], cap) {
            Weight::Finite(w) => w,
            Weight::Infinite => return Err(Error::TrivialRelator { relator: 0 }),
            Weight::ExceedsCap => return Err(Error::WeightExceedsCap { relator: 0, cap }),
        };
        let graded = initial_form_lie_dims(p, max_degree, cap)?;
        let phi = if p.num_generators() >= 2 {
            RankTable::reconciled("phi", "labute", labute_one_relator_ranks(p.num_generators(), omega, max_degree)?, &graded)?
        } else {
            RankTable::from_linear_algebra(&graded)
        };
        (Mildness::Proved { reason: "one relator".into() }, Some(phi))
    } else {
        match anick_mild_search(p, cap)? {
            CombinatorialMildness::Certified { ordering, .. } => {
                let names: Vec<&str> = ordering.iter().map(|&g| p.generator_names()[g].as_str()).collect();
                let graded = initial_form_lie_dims(p, max_degree, cap)?;
                (
                    Mildness::Proved { reason: format!("highest-monomial test with order {}", names.join(" > ")) },
                    Some(RankTable::from_linear_algebra(&graded)),
                )
            }
            CombinatorialMildness::Inconclusive { reason, .. } => {
                notes.push(format!("highest-monomial test inconclusive: {reason}"));
                let m = match anick_mild_numeric(p, max_degree, cap)? {
                    NumericMildness::ConsistentTo { degree } => Mildness::EvidenceTo { degree },
                    NumericMildness::NotMild { degree, expected, actual } => {
                        Mildness::RefutedNumerically { degree, expected, actual }
                    }
                };
                (m, None)
            }
        }
    };
    let mut formality = match &phi {
        Some(t) => compare_dims(&phi_bar.as_usizes(), &t.as_usizes()),
        None => FormalityVerdict::Unknown { reason: "gr(G) not determined".into() },
    };
    if one_relator {
        formality = match (one_relator_graded_formality(p)?, formality) {
            (true, _) => FormalityVerdict::Holds { reason: "one relator of weight at most 2".into() },
            (false, FormalityVerdict::HoldsThrough { .. }) => {
                let n = p.num_generators();
                let omega = weight(&p.relators()[0], cap).finite().expect("weight checked above");
                let graded = if n >= 2 {
                    labute_one_relator_ranks(n, omega, omega)?[omega - 1].clone()
                } else {
                    Z::zero()
                };
                let free = witt(n, omega);
                FormalityVerdict::Fails {
                    degree: omega,
                    holonomy: usize::try_from(&free).expect("rank fits in usize"),
                    graded: usize::try_from(&graded).expect("rank fits in usize"),
                }
            }
            (false, v) => v,
        };
    }
    if !one_relator && h.b == p.num_generators() && h.is_free() {
        notes.push("holonomy Lie algebra is free".into());
    }
    Ok(RankReport::new(max_degree, phi, Some(phi_bar), None, Some(theta_bar), mildness, formality, notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{borromean_presentation, whitehead_presentation};
    use crate::Word;

    fn zs(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn reconcile_mismatch() {
        let err = RankTable::reconciled("phi", "f", zs(&[2, 1]), &[2, 0]).unwrap_err();
        assert_eq!(
            err,
            Error::RankMismatch { table: "phi".into(), degree: 2, formula: "1".into(), computed: "0".into() }
        );
        assert!(RankTable::reconciled("phi", "f", zs(&[2]), &[2, 0]).is_err());
    }

    #[test]
    fn free_and_surface() {
        let f = free_rank_report(2, 5).unwrap();
        assert_eq!(f.phi_bar.unwrap().values(), zs(&[2, 1, 2, 3, 6]));
        assert_eq!(f.theta.unwrap().values(), zs(&[2, 1, 2, 3, 4]));
        let s = surface_rank_report(2, 5).unwrap();
        assert_eq!(s.theta_bar.unwrap().values(), zs(&[4, 5, 16, 35, 64]));
        assert_eq!(s.formality, FormalityVerdict::HoldsThrough { degree: 5 });
    }

    #[test]
    fn seifert_branches() {
        let r = seifert_rank_report(1, &[(2, 1)], 0, 4).unwrap();
        assert_eq!(r.phi_bar.as_ref().unwrap().values(), zs(&[2, 1, 2, 3]));
        assert_eq!(r.phi.as_ref().unwrap().values(), zs(&[2, 1, 0, 0]));
        assert_eq!(r.formality, FormalityVerdict::Fails { degree: 3, holonomy: 2, graded: 0 });
        let z = seifert_rank_report(1, &[(2, 1), (2, 1)], -1, 4).unwrap();
        assert_eq!(z.phi.unwrap().values(), zs(&[3, 0, 0, 0]));
        assert_eq!(z.formality, FormalityVerdict::HoldsThrough { degree: 4 });
    }

    #[test]
    fn links() {
        let hopf = IntMatrix::from_rows(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let r = link_rank_report(&hopf, 4).unwrap();
        assert_eq!(r.phi.unwrap().values(), zs(&[2, 0, 0, 0]));
        let tri = IntMatrix::from_rows(3, vec![vec![0, 1, -1], vec![1, 0, 1], vec![-1, 1, 0]]).unwrap();
        let r = link_rank_report(&tri, 5).unwrap();
        assert_eq!(r.phi_bar.unwrap().values(), zs(&[3, 1, 2, 3, 6]));
        assert_eq!(r.theta_bar.unwrap().values(), zs(&[3, 1, 2, 3, 4]));
        let split = IntMatrix::from_rows(3, vec![vec![0; 3]; 3]).unwrap();
        let r = link_rank_report(&split, 3).unwrap();
        assert!(r.phi.is_none());
        assert_eq!(r.phi_bar.unwrap().values(), zs(&[3, 3, 8]));
    }

    #[test]
    fn presentations() {
        let w = presentation_rank_report(&whitehead_presentation(), 5, 16).unwrap();
        assert_eq!(w.phi.unwrap().values(), zs(&[2, 1, 2, 2, 4]));
        assert_eq!(w.formality, FormalityVerdict::Fails { degree: 4, holonomy: 3, graded: 2 });
        let b = presentation_rank_report(&borromean_presentation(), 4, 16).unwrap();
        assert!(matches!(b.mildness, Mildness::Proved { .. }));
        assert_eq!(b.formality, FormalityVerdict::Fails { degree: 3, holonomy: 8, graded: 6 });
        let x = Word::generator;
        let omega5 = FinitePresentation::with_default_names(
            2,
            vec![x(0).commutator(&x(0).commutator(&x(0).commutator(&x(0).commutator(&x(1)))))],
        )
        .unwrap();
        let r = presentation_rank_report(&omega5, 3, 16).unwrap();
        assert_eq!(r.formality, FormalityVerdict::Fails { degree: 5, holonomy: 6, graded: 5 });
        let bad = FinitePresentation::with_default_names(3, vec![x(2), x(2).multiply(&x(0).commutator(&x(1)))]).unwrap();
        let r = presentation_rank_report(&bad, 3, 16).unwrap();
        assert!(matches!(r.mildness, Mildness::RefutedNumerically { degree: 1, .. }));
    }
}
