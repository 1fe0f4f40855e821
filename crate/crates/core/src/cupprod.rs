//! Cup products `H^1 x H^1 -> H^2` of the presentation 2-complex.

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::echelon::{echelon_approximation, EchelonData};
use crate::foxcalc::epsilon_multi;
use crate::matrix::{IntMatrix, QMatrix};
use crate::ncseries::kappa;
use crate::{Error, FinitePresentation, Result};

/// Structure constants `u_i u_j = sum_k c^k[i][j] beta_k` in the basis of
/// non-pivot generators and the `H_2` relator classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupStructure {
    pub b: usize,
    /// Relator indices (of the echelon approximation) labelling `H_2`.
    pub labels: Vec<usize>,
    pub matrices: Vec<QMatrix>,
}

impl CupStructure {
    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(|m| m.is_zero())
    }

    /// Rank of the dual map `H_2 -> Lambda^2 H_1`: the matrices stacked as
    /// vectors indexed by pairs `i < j`.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<_>> = self
            .matrices
            .iter()
            .map(|m| {
                let mut v = Vec::new();
                for i in 0..self.b {
                    for j in i + 1..self.b {
                        v.push(m[(i, j)].clone());
                    }
                }
                v
            })
            .collect();
        crate::linalg::rational_rank(&rows)
    }

    /// Dimension of the kernel of `Lambda^2 H^1 -> H^2`.
    pub fn kernel_dim(&self) -> usize {
        self.b * self.b.saturating_sub(1) / 2 - self.rank()
    }
}

/// Cup products read off from the degree-2 coefficients of `kappa(w_k)`.
pub fn cup_structure(p: &FinitePresentation) -> CupStructure {
    cup_structure_from_echelon(&echelon_approximation(p))
}

pub fn cup_structure_from_echelon(e: &EchelonData) -> CupStructure {
    let b = e.b;
    let matrices = e
        .h2_basis
        .par_iter()
        .map(|&k| {
            let s = kappa(&e.ge.relators()[k], &e.proj, 2).expect("projection matches the presentation");
            let mut m = QMatrix::zeros(b, b);
            for (key, c) in s.terms() {
                if key.len() == 2 {
                    m[(key[0], key[1])] = c.clone();
                }
            }
            debug_assert!(m.is_antisymmetric());
            m
        })
        .collect();
    CupStructure { b, labels: e.h2_basis.clone(), matrices }
}

/// Integral cup products `eps_{ij}(r_k)` of a commutator-relators
/// presentation, computed with Fox calculus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralCupStructure {
    pub b: usize,
    pub matrices: Vec<IntMatrix>,
}

impl IntegralCupStructure {
    pub fn to_rational(&self) -> CupStructure {
        CupStructure {
            b: self.b,
            labels: (0..self.matrices.len()).collect(),
            matrices: self.matrices.iter().map(|m| m.to_rational()).collect(),
        }
    }
}

pub fn cup_structure_integral(p: &FinitePresentation) -> Result<IntegralCupStructure> {
    let n = p.num_generators();
    for (k, r) in p.relators().iter().enumerate() {
        if (0..n).any(|i| r.exponent_sum(i) != 0) {
            return Err(Error::NotCommutatorRelator { relator: k });
        }
    }
    let matrices = p
        .relators()
        .par_iter()
        .map(|r| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let e = epsilon_multi(n, &[i, j], r).expect("indices in range");
                    debug_assert!(e.is_integer());
                    if !e.is_zero() {
                        m[(i, j)] = i64::try_from(e.to_integer()).expect("cup constant fits i64");
                    }
                }
            }
            m
        })
        .collect();
    Ok(IntegralCupStructure { b: n, matrices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{borromean_presentation, seifert_presentation, surface_presentation};
    use crate::{qi, Word};

    fn symplectic(g: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            m[(2 * i, 2 * i + 1)] = 1;
            m[(2 * i + 1, 2 * i)] = -1;
        }
        m
    }

    #[test]
    fn torus() {
        let c = cup_structure(&surface_presentation(1).unwrap());
        assert_eq!(c.b, 2);
        assert_eq!(c.matrices, vec![QMatrix::from_int_rows(2, vec![vec![0, 1], vec![-1, 0]]).unwrap()]);
        assert_eq!(c.kernel_dim(), 0);
    }

    #[test]
    fn surfaces_integral() {
        for g in 1..=3 {
            let p = surface_presentation(g).unwrap();
            let ci = cup_structure_integral(&p).unwrap();
            assert_eq!(ci.matrices, vec![symplectic(g)]);
            assert_eq!(ci.to_rational(), cup_structure(&p));
        }
    }

    #[test]
    fn borromean_vanishes() {
        let c = cup_structure(&borromean_presentation());
        assert_eq!(c.matrices.len(), 2);
        assert!(c.is_zero());
        assert_eq!(c.kernel_dim(), 3);
    }

    #[test]
    fn weight_three_relator_has_no_cup_product() {
        let x = Word::generator(0);
        let y = Word::generator(1);
        let p = FinitePresentation::with_default_names(2, vec![x.commutator(&x.commutator(&y))]).unwrap();
        let ci = cup_structure_integral(&p).unwrap();
        assert!(ci.matrices[0].is_zero());
    }

    #[test]
    fn link_style_relators() {
        // [x1,x2]^2 [x1,x3]^-1 [x2,x3]^3
        let x = |i| Word::generator(i);
        let r = x(0)
            .commutator(&x(1))
            .power(2)
            .multiply(&x(0).commutator(&x(2)).power(-1))
            .multiply(&x(1).commutator(&x(2)).power(3));
        let p = FinitePresentation::with_default_names(3, vec![r]).unwrap();
        let m = &cup_structure_integral(&p).unwrap().matrices[0];
        assert_eq!((m[(0, 1)], m[(0, 2)], m[(1, 2)]), (2, -1, 3));
        assert_eq!((m[(1, 0)], m[(2, 0)], m[(2, 1)]), (-2, 1, -3));
    }

    #[test]
    fn non_commutator_relator_rejected() {
        let p = FinitePresentation::with_default_names(1, vec![Word::power_of(0, 2)]).unwrap();
        assert_eq!(cup_structure_integral(&p), Err(Error::NotCommutatorRelator { relator: 0 }));
    }

    #[test]
    fn seifert_euler_zero() {
        // gens x1, y1, z1, z2, h; H_1 basis x1, y1, h
        let p = seifert_presentation(1, &[(2, 1), (2, 1)], -1).unwrap();
        let c = cup_structure(&p);
        assert_eq!(c.b, 3);
        for m in &c.matrices {
            assert!(m.is_antisymmetric());
        }
        // products span x1^y1, x1^h and y1^h
        assert_eq!(c.rank(), 3);
        let has = |i: usize, j: usize| c.matrices.iter().any(|m| m[(i, j)] != qi(0));
        assert!(has(0, 1) && has(0, 2) && has(1, 2));
    }

    #[test]
    fn kernel_is_independent_of_relator_order() {
        let p = seifert_presentation(2, &[(2, 1), (3, 1), (6, 1)], -1).unwrap();
        let base = cup_structure(&p).kernel_dim();
        let m = p.num_relators();
        let reversed: Vec<usize> = (0..m).rev().collect();
        let rotated: Vec<usize> = (1..m).chain([0]).collect();
        for order in [reversed, rotated] {
            let q = p.with_relator_order(&order).unwrap();
            assert_eq!(cup_structure(&q).kernel_dim(), base);
        }
    }
}
