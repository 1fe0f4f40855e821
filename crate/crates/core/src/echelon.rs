//! Hermite normal form of the Fox Jacobian and the echelon approximation of
//! a presentation.

use num::{Signed, Zero};
use serde::Serialize;

use crate::foxcalc::jacobian;
use crate::matrix::{IntMatrix, QMatrix};
use crate::ncseries::ProjectionMatrix;
use crate::{FinitePresentation, Word, Q};

/// `H = C J` with `C` unimodular and `H` in Hermite normal form.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, and the
/// zero rows of `H` come last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularReduction {
    pub c: IntMatrix,
    pub h: IntMatrix,
    pub pivot_cols: Vec<usize>,
}

impl UnimodularReduction {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

fn sub_multiple(h: &mut IntMatrix, c: &mut IntMatrix, dst: usize, src: usize, q: i64) {
    h.sub_row_multiple(dst, src, q);
    c.sub_row_multiple(dst, src, q);
}

/// Row-style Hermite normal form with the unimodular transform.
pub fn hermite_normal_form(j: &IntMatrix) -> UnimodularReduction {
    let m = j.nrows();
    let n = j.ncols();
    let mut h = j.clone();
    let mut c = IntMatrix::identity(m);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| h[(i, col)] != 0)
                .min_by_key(|&i| (h[(i, col)].unsigned_abs(), i));
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            c.swap_rows(r, best);
            let p = h[(r, col)];
            let mut done = true;
            for i in r + 1..m {
                let v = h[(i, col)];
                if v != 0 {
                    sub_multiple(&mut h, &mut c, i, r, v / p);
                    if h[(i, col)] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(r, col)] == 0 {
            continue;
        }
        if h[(r, col)] < 0 {
            h.negate_row(r);
            c.negate_row(r);
        }
        let p = h[(r, col)];
        for i in 0..r {
            let q = h[(i, col)].div_euclid(p);
            sub_multiple(&mut h, &mut c, i, r, q);
        }
        pivot_cols.push(col);
        r += 1;
    }
    let red = UnimodularReduction { c, h, pivot_cols };
    debug_assert!(check_reduction(j, &red));
    red
}

/// Checks `det C = +-1`, `H = C J` and the Hermite shape.
pub fn check_reduction(j: &IntMatrix, red: &UnimodularReduction) -> bool {
    let det = red.c.determinant().expect("C is square");
    if det.abs() != num::BigInt::from(1) {
        return false;
    }
    if red.c.mul(j).ok().as_ref() != Some(&red.h) {
        return false;
    }
    let h = &red.h;
    let d = red.rank();
    if red.pivot_cols.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for (t, &p) in red.pivot_cols.iter().enumerate() {
        if h[(t, p)] <= 0 || (0..p).any(|col| h[(t, col)] != 0) {
            return false;
        }
        if (t + 1..h.nrows()).any(|i| h[(i, p)] != 0) {
            return false;
        }
        if (0..t).any(|i| h[(i, p)] < 0 || h[(i, p)] >= h[(t, p)]) {
            return false;
        }
    }
    (d..h.nrows()).all(|i| h.row(i).iter().all(|&x| x == 0))
}

/// The projection `x_s -> sum_i a[i][s] y_i` onto `H_1(G; Q)` in the basis
/// of non-pivot generators.
///
/// Non-pivot generators map to their own basis vector. A pivot generator
/// `x_p` of pivot row `t` is solved from `sum_c H[t][c] x_c = 0`, working
/// from the last pivot row upwards.
pub fn projection_matrix(red: &UnimodularReduction) -> ProjectionMatrix {
    let n = red.h.ncols();
    let h1 = non_pivot_columns(n, &red.pivot_cols);
    let b = h1.len();
    let mut cols: Vec<Vec<Q>> = vec![vec![Q::zero(); b]; n];
    for (j, &p) in h1.iter().enumerate() {
        cols[p][j] = Q::from_integer(1.into());
    }
    for (t, &p) in red.pivot_cols.iter().enumerate().rev() {
        let pivot = Q::from_integer(red.h[(t, p)].into());
        let mut acc = vec![Q::zero(); b];
        for col in p + 1..n {
            let coef = red.h[(t, col)];
            if coef == 0 {
                continue;
            }
            let coef = Q::from_integer(coef.into());
            for (a, x) in acc.iter_mut().zip(&cols[col]) {
                *a += &coef * x;
            }
        }
        cols[p] = acc.into_iter().map(|a| -a / &pivot).collect();
    }
    let rows: Vec<Vec<Q>> = (0..b).map(|i| (0..n).map(|s| cols[s][i].clone()).collect()).collect();
    ProjectionMatrix::new(QMatrix::from_rows(n, rows).expect("rows have n entries"))
}

fn non_pivot_columns(n: usize, pivots: &[usize]) -> Vec<usize> {
    (0..n).filter(|c| !pivots.contains(c)).collect()
}

/// The echelon approximation `G_e` of a presentation together with the
/// transferred homology bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EchelonData {
    /// Same generators, relators `w_k = r_0^{C[k][0]} ... r_{m-1}^{C[k][m-1]}`.
    pub ge: FinitePresentation,
    pub reduction: UnimodularReduction,
    /// First Betti number `n - d`.
    pub b: usize,
    /// Generators whose classes form the basis of `H_1`.
    pub h1_basis: Vec<usize>,
    /// Relators `d, ..., m-1` of `G_e`, whose classes span `H_2` of the
    /// presentation complex.
    pub h2_basis: Vec<usize>,
    pub proj: ProjectionMatrix,
}

impl EchelonData {
    pub fn rank(&self) -> usize {
        self.reduction.rank()
    }
}

pub fn echelon_approximation(p: &FinitePresentation) -> EchelonData {
    let j = jacobian(p);
    let red = hermite_normal_form(&j);
    let m = p.num_relators();
    let n = p.num_generators();
    let d = red.rank();

    let relators: Vec<Word> = (0..m)
        .map(|k| {
            let mut w = Word::identity();
            for (l, r) in p.relators().iter().enumerate() {
                let e = red.c[(k, l)];
                if e != 0 {
                    w = w.multiply(&r.power(e));
                }
            }
            w
        })
        .collect();
    let ge = FinitePresentation::new(p.generator_names().to_vec(), relators)
        .expect("same generators as the input");
    assert_eq!(jacobian(&ge), red.h, "Jacobian of the echelon approximation must equal H");

    let proj = projection_matrix(&red);
    EchelonData {
        ge,
        b: n - d,
        h1_basis: non_pivot_columns(n, &red.pivot_cols),
        h2_basis: (d..m).collect(),
        proj,
        reduction: red,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{seifert_presentation, surface_presentation};
    use crate::{q, qi};

    fn mat(cols: usize, rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let red = hermite_normal_form(&IntMatrix::identity(3));
        assert_eq!(red.c, IntMatrix::identity(3));
        assert_eq!(red.h, IntMatrix::identity(3));
        let z = IntMatrix::zeros(2, 3);
        let red = hermite_normal_form(&z);
        assert_eq!(red.c, IntMatrix::identity(2));
        assert!(red.h.is_zero());
        assert_eq!(red.rank(), 0);
    }

    #[test]
    fn small_hermite() {
        let j = mat(2, vec![vec![2, 4], vec![1, 3]]);
        let red = hermite_normal_form(&j);
        assert!(check_reduction(&j, &red));
        assert_eq!(red.h[(0, 0)], 1);
        assert_eq!(red.pivot_cols, vec![0, 1]);
        // H is the Hermite form of a determinant-2 lattice: [[1,1],[0,2]]
        assert_eq!(red.h.to_rows(), vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn projection_examples() {
        let red = hermite_normal_form(&IntMatrix::zeros(1, 3));
        assert_eq!(projection_matrix(&red), ProjectionMatrix::identity(3));
        let red = hermite_normal_form(&mat(2, vec![vec![1, 1]]));
        let proj = projection_matrix(&red);
        assert_eq!(proj.matrix().to_rows(), vec![vec![qi(-1), qi(1)]]);
    }

    #[test]
    fn commutator_relators_are_already_echelon() {
        let p = surface_presentation(2).unwrap();
        let e = echelon_approximation(&p);
        assert_eq!(e.reduction.c, IntMatrix::identity(1));
        assert_eq!(e.ge, p);
        assert_eq!(e.b, 4);
        assert_eq!(e.proj, ProjectionMatrix::identity(4));
        assert_eq!(e.h2_basis, vec![0]);
    }

    #[test]
    fn cyclic_group() {
        let p = FinitePresentation::with_default_names(1, vec![Word::power_of(0, 3)]).unwrap();
        let e = echelon_approximation(&p);
        assert_eq!((e.rank(), e.b), (1, 0));
        assert!(e.h1_basis.is_empty() && e.h2_basis.is_empty());
    }

    #[test]
    fn seifert_projection_when_euler_vanishes() {
        // e = -b - 1/2 - 1/2 = 0 with b = -1; gens x1, y1, z1, z2, h
        let p = seifert_presentation(1, &[(2, 1), (2, 1)], -1).unwrap();
        let e = echelon_approximation(&p);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.h1_basis, vec![0, 1, 4]);
        let want = vec![
            vec![qi(1), qi(0), qi(0), qi(0), qi(0)],
            vec![qi(0), qi(1), qi(0), qi(0), qi(0)],
            vec![qi(0), qi(0), q(-1, 2), q(-1, 2), qi(1)],
        ];
        assert_eq!(e.proj.matrix().to_rows(), want);

        let p = seifert_presentation(2, &[(3, 2), (5, -2), (7, 3)], 0).unwrap();
        let e = echelon_approximation(&p);
        let a = e.proj.matrix();
        assert_eq!(e.b, 4);
        assert_eq!(e.h1_basis, vec![0, 1, 2, 3]);
        assert!((0..4).all(|i| a[(i, 7)].is_zero()));
        let p = seifert_presentation(1, &[(3, 1), (3, 2)], -1).unwrap();
        let e = echelon_approximation(&p);
        let a = e.proj.matrix();
        assert_eq!((a[(2, 2)].clone(), a[(2, 3)].clone()), (q(-1, 3), q(-2, 3)));
    }

    #[test]
    fn seifert_jacobian_rank() {
        for (g, pairs, b) in [
            (1usize, vec![(2i64, 1i64)], 0i64),
            (2, vec![(2, 1), (2, -1)], 0),
            (1, vec![(2, 1), (3, 1), (6, 1)], -1),
            (0, vec![(2, 1), (3, 1)], -1),
        ] {
            let p = seifert_presentation(g, &pairs, b).unwrap();
            let e = crate::presentation::seifert_euler(&pairs, b);
            let s = pairs.len();
            let d = echelon_approximation(&p).rank();
            assert_eq!(d, if e.is_zero() { s } else { s + 1 });
        }
    }
}
