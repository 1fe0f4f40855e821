//! Holonomy Lie algebras of presentations and links, and the initial-form
//! Lie algebra `L(G)`.

use num::Zero;
use serde::Serialize;

use super::algebra::{FreeLieAlgebra, LieElement};
use super::envelope::enveloping_dims;
use super::ideal::{ideal_spans, quotient_dims, solvable_quotient_dims};
use crate::cupprod::cup_structure_from_echelon;
use crate::echelon::echelon_approximation;
use crate::matrix::{IntMatrix, QMatrix};
use crate::ncseries::{initial_forms, Tensor};
use crate::{Error, FinitePresentation, Result, Word, Q};

/// A quadratic presentation of a Lie algebra: generators `y_0, ..., y_{b-1}`
/// and relations `sum_{i<j} c[i][j] [y_i, y_j]` given by antisymmetric
/// matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HolonomyPresentation {
    pub b: usize,
    pub generator_names: Vec<String>,
    pub relations: Vec<QMatrix>,
    /// Relations that vanished identically and were dropped.
    pub dropped_zero: usize,
}

impl HolonomyPresentation {
    pub fn new(generator_names: Vec<String>, relations: Vec<QMatrix>) -> Result<Self> {
        let b = generator_names.len();
        for m in &relations {
            if m.nrows() != b || m.ncols() != b {
                return Err(Error::ShapeMismatch(format!(
                    "relation matrix is {}x{}, expected {b}x{b}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if !m.is_antisymmetric() {
                return Err(Error::InvalidArgument("relation matrix is not antisymmetric".into()));
            }
        }
        Ok(HolonomyPresentation { b, generator_names, relations, dropped_zero: 0 })
    }

    /// The free Lie algebra on `b` generators.
    pub fn free(b: usize) -> Self {
        HolonomyPresentation {
            b,
            generator_names: (1..=b).map(|i| format!("y{i}")).collect(),
            relations: Vec::new(),
            dropped_zero: 0,
        }
    }

    pub fn is_free(&self) -> bool {
        self.relations.iter().all(|m| m.is_zero())
    }

    /// Relations as degree-2 Lie elements of `alg`.
    pub fn lie_relations(&self, alg: &FreeLieAlgebra) -> Vec<LieElement> {
        self.relations
            .iter()
            .map(|m| {
                let mut coords = Vec::new();
                for i in 0..self.b {
                    for j in i + 1..self.b {
                        if !m[(i, j)].is_zero() {
                            let idx = alg.basis().index_of(&[i, j]).expect("i < j is Lyndon");
                            coords.push((idx, m[(i, j)].clone()));
                        }
                    }
                }
                LieElement::homogeneous(2, coords)
            })
            .collect()
    }

    /// Relations as degree-2 tensors `sum c[i][j] y_i y_j`.
    pub fn tensor_relations(&self) -> Vec<Tensor> {
        self.relations
            .iter()
            .map(|m| {
                let mut terms = Vec::new();
                for i in 0..self.b {
                    for j in 0..self.b {
                        if !m[(i, j)].is_zero() {
                            terms.push((vec![i, j], m[(i, j)].clone()));
                        }
                    }
                }
                Tensor::from_terms(self.b, 2, terms).expect("indices within b")
            })
            .collect()
    }

    /// Graded dimensions of the Lie algebra, degrees `1..=N`.
    pub fn lie_dims(&self, max_degree: usize) -> Vec<usize> {
        let alg = FreeLieAlgebra::new(self.b, max_degree);
        let rels = self.lie_relations(&alg);
        quotient_dims(&alg, &ideal_spans(&alg, &rels))
    }

    /// Dimensions of `h / h^(i)`, degrees `1..=N`.
    pub fn solvable_quotient_dims(&self, i: usize, max_degree: usize) -> Vec<usize> {
        let alg = FreeLieAlgebra::new(self.b, max_degree);
        let rels = self.lie_relations(&alg);
        solvable_quotient_dims(&alg, &rels, i)
    }

    /// Dimensions of the universal enveloping algebra, degrees `0..=N`.
    pub fn enveloping_dims(&self, max_degree: usize) -> Vec<usize> {
        enveloping_dims(self.b, &self.tensor_relations(), max_degree)
            .expect("relations live in b variables")
    }
}

/// The holonomy Lie algebra of a presentation: generators are the `H_1`
/// basis of the echelon approximation, relations are the nonzero cup
/// product matrices.
pub fn holonomy_presentation(p: &FinitePresentation) -> HolonomyPresentation {
    let e = echelon_approximation(p);
    let cup = cup_structure_from_echelon(&e);
    let names: Vec<String> = e
        .h1_basis
        .iter()
        .map(|&g| p.generator_names()[g].clone())
        .collect();
    let total = cup.matrices.len();
    let relations: Vec<QMatrix> = cup.matrices.into_iter().filter(|m| !m.is_zero()).collect();
    HolonomyPresentation {
        b: e.b,
        generator_names: names,
        dropped_zero: total - relations.len(),
        relations,
    }
}

/// The holonomy Lie algebra of a link with linking matrix `l`: relations
/// `sum_j l[i][j] [y_i, y_j]` for `i = 0, ..., n-2`.
pub fn link_holonomy(l: &IntMatrix) -> Result<HolonomyPresentation> {
    let n = l.nrows();
    if l.ncols() != n {
        return Err(Error::ShapeMismatch("linking matrix must be square".into()));
    }
    for i in 0..n {
        if l[(i, i)] != 0 {
            return Err(Error::InvalidArgument("linking matrix must have zero diagonal".into()));
        }
        for j in 0..n {
            if l[(i, j)] != l[(j, i)] {
                return Err(Error::InvalidArgument("linking matrix must be symmetric".into()));
            }
        }
    }
    let relations = (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = QMatrix::zeros(n, n);
            for j in 0..n {
                if j != i && l[(i, j)] != 0 {
                    m[(i, j)] = Q::from_integer(l[(i, j)].into());
                    m[(j, i)] = -Q::from_integer(l[(i, j)].into());
                }
            }
            m
        })
        .collect();
    HolonomyPresentation::new((1..=n).map(|i| format!("y{i}")).collect(), relations)
}

/// True when the graph with an edge `i - j` for each nonzero `l[i][j]` is
/// connected.
pub fn linking_graph_connected(l: &IntMatrix) -> bool {
    let n = l.nrows();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && l[(i, j)] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Initial forms of the relators as Lie elements in the generators `x`.
pub fn initial_form_relations(p: &FinitePresentation, alg: &FreeLieAlgebra, cap: usize) -> Result<Vec<LieElement>> {
    initial_forms(p, cap)?
        .iter()
        .filter(|t| t.degree() <= alg.max_degree())
        .map(|t| alg.lie_from_primitive_tensor(t))
        .collect()
}

/// Graded dimensions of `L(G) = lie(x) / ideal(initial forms)`, degrees
/// `1..=N`.
pub fn initial_form_lie_dims(p: &FinitePresentation, max_degree: usize, cap: usize) -> Result<Vec<usize>> {
    let alg = FreeLieAlgebra::new(p.num_generators(), max_degree);
    let rels = initial_form_relations(p, &alg, cap)?;
    Ok(quotient_dims(&alg, &ideal_spans(&alg, &rels)))
}

/// The commutator-relators group `<x | prod_{i<j} [x_i, x_j]^{c_ijk}>` of a
/// list of antisymmetric integer matrices.
pub fn group_from_quadratic_lie(relations: &[QMatrix]) -> Result<FinitePresentation> {
    let Some(first) = relations.first() else {
        return Err(Error::InvalidArgument("at least one relation matrix is needed".into()));
    };
    let n = first.nrows();
    let mut relators = Vec::with_capacity(relations.len());
    for m in relations {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::ShapeMismatch("relation matrices differ in size".into()));
        }
        if !m.is_antisymmetric() {
            return Err(Error::InvalidArgument("relation matrix is not antisymmetric".into()));
        }
        let c = m.to_integer()?;
        let mut r = Word::identity();
        for i in 0..n {
            for j in i + 1..n {
                if c[(i, j)] != 0 {
                    r = r.multiply(&Word::generator(i).commutator(&Word::generator(j)).power(c[(i, j)]));
                }
            }
        }
        relators.push(r);
    }
    FinitePresentation::with_default_names(n, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{borromean_presentation, seifert_presentation, surface_presentation, whitehead_presentation};
    use crate::qi;

    fn imat(rows: Vec<Vec<i64>>) -> IntMatrix {
        let n = rows.len();
        IntMatrix::from_rows(n, rows).unwrap()
    }

    #[test]
    fn borromean_is_free() {
        let h = holonomy_presentation(&borromean_presentation());
        assert_eq!(h.b, 3);
        assert!(h.relations.is_empty());
        assert_eq!(h.dropped_zero, 2);
        assert_eq!(h.lie_dims(5), vec![3, 3, 8, 18, 48]);
    }

    #[test]
    fn one_relator_weight_one() {
        // <x1, x2, x3 | x1 x2^2 x3^-1 [x2, x3]>
        let x = Word::generator;
        let r = x(0).multiply(&Word::power_of(1, 2)).multiply(&x(2).inverse()).multiply(&x(1).commutator(&x(2)));
        let p = FinitePresentation::with_default_names(3, vec![r]).unwrap();
        let h = holonomy_presentation(&p);
        assert_eq!(h.b, 2);
        assert!(h.is_free());
    }

    #[test]
    fn seifert_nonzero_euler_is_free() {
        let p = seifert_presentation(2, &[(2, 1)], 0).unwrap();
        let h = holonomy_presentation(&p);
        assert_eq!(h.b, 4);
        assert!(h.is_free());
    }

    #[test]
    fn links() {
        let h = link_holonomy(&imat(vec![vec![0; 3]; 3])).unwrap();
        assert_eq!(h.relations.len(), 2);
        assert!(h.is_free());
        let hopf = link_holonomy(&imat(vec![vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(hopf.relations, vec![QMatrix::from_int_rows(2, vec![vec![0, 1], vec![-1, 0]]).unwrap()]);
        let chain = link_holonomy(&imat(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]])).unwrap();
        let r2 = &chain.relations[1];
        // [y2, y1] + [y2, y3]
        assert_eq!((r2[(0, 1)].clone(), r2[(1, 2)].clone(), r2[(0, 2)].clone()), (qi(-1), qi(1), qi(0)));
        assert!(link_holonomy(&imat(vec![vec![0, 1], vec![2, 0]])).is_err());
        assert!(link_holonomy(&imat(vec![vec![1, 0], vec![0, 0]])).is_err());
        assert!(linking_graph_connected(&imat(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]])));
        assert!(!linking_graph_connected(&imat(vec![vec![0; 3]; 3])));
    }

    #[test]
    fn initial_form_dims() {
        let x = Word::generator;
        let torus = FinitePresentation::with_default_names(2, vec![x(0).commutator(&x(1))]).unwrap();
        assert_eq!(initial_form_lie_dims(&torus, 5, 16).unwrap(), vec![2, 0, 0, 0, 0]);
        assert_eq!(initial_form_lie_dims(&whitehead_presentation(), 6, 16).unwrap(), vec![2, 1, 2, 2, 4, 5]);
        assert_eq!(initial_form_lie_dims(&borromean_presentation(), 5, 16).unwrap(), vec![3, 3, 6, 12, 30]);
        let trivial = FinitePresentation::with_default_names(1, vec![Word::identity()]).unwrap();
        assert_eq!(initial_form_lie_dims(&trivial, 3, 16), Err(Error::TrivialRelator { relator: 0 }));
    }

    #[test]
    fn quadratic_round_trip() {
        let sym = QMatrix::from_int_rows(4, vec![
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ])
        .unwrap();
        let p = group_from_quadratic_lie(std::slice::from_ref(&sym)).unwrap();
        assert_eq!(p.relators(), surface_presentation(2).unwrap().relators());
        assert_eq!(holonomy_presentation(&p).relations, vec![sym]);
        let half = QMatrix::from_rows(2, vec![vec![qi(0), crate::q(1, 2)], vec![crate::q(-1, 2), qi(0)]]).unwrap();
        assert!(matches!(group_from_quadratic_lie(&[half]), Err(Error::NotInteger(_))));
    }

    #[test]
    fn surface_pbw() {
        let h = holonomy_presentation(&surface_presentation(2).unwrap());
        let lie = h.lie_dims(5);
        let env = h.enveloping_dims(5);
        assert_eq!(env, vec![1, 4, 15, 56, 209, 780]);
        assert!(super::super::envelope::pbw_check(&lie, &env, 5));
    }
}
