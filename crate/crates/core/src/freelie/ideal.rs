//! Graded Lie ideals, derived subalgebras and quotient dimensions.

use rayon::prelude::*;

use super::algebra::{integer_coords, FreeLieAlgebra, LieElement};
use crate::linalg::{make_primitive, Echelon, SparseVec};
use crate::Z;

/// Per-degree row spaces inside the Lyndon coordinate spaces of degrees
/// `1..=N`, stored in echelon form.
#[derive(Clone, Debug)]
pub struct GradedIdealSpan {
    spans: Vec<Echelon>,
}

impl GradedIdealSpan {
    pub fn zero(max_degree: usize) -> Self {
        GradedIdealSpan { spans: vec![Echelon::new(); max_degree] }
    }

    pub fn max_degree(&self) -> usize {
        self.spans.len()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.spans[k - 1].rank()
    }

    /// Ranks for degrees `1..=N`.
    pub fn ranks(&self) -> Vec<usize> {
        self.spans.iter().map(|e| e.rank()).collect()
    }

    pub fn span(&self, k: usize) -> &Echelon {
        &self.spans[k - 1]
    }

    pub fn contains(&self, k: usize, v: &SparseVec) -> bool {
        self.spans[k - 1].contains(v)
    }

    /// Degree-wise sum of two spans.
    pub fn sum(&self, other: &GradedIdealSpan) -> GradedIdealSpan {
        let spans = self
            .spans
            .iter()
            .zip(&other.spans)
            .map(|(a, b)| {
                let mut e = a.clone();
                for r in b.rows() {
                    e.insert(r.clone());
                }
                e
            })
            .collect();
        GradedIdealSpan { spans }
    }
}

/// Homogeneous integer generators `(degree, coordinates)` of a Lie element
/// list; rational coordinates are scaled, which does not change spans.
fn integer_generators(generators: &[LieElement], max_degree: usize) -> Vec<Vec<SparseVec>> {
    let mut by_degree = vec![Vec::new(); max_degree];
    for g in generators {
        for k in g.degrees() {
            if k == 0 || k > max_degree {
                continue;
            }
            let (mut coords, _) = integer_coords(&g.component(k));
            coords.sort_by_key(|(i, _)| *i);
            make_primitive(&mut coords);
            by_degree[k - 1].push(coords);
        }
    }
    by_degree
}

/// The Lie ideal generated by homogeneous components of `generators`,
/// degree by degree: `I_k = gens_k + sum_i [y_i, I_{k-1}]`.
pub fn ideal_spans(alg: &FreeLieAlgebra, generators: &[LieElement]) -> GradedIdealSpan {
    let n_max = alg.max_degree();
    let b = alg.num_generators();
    let gens = integer_generators(generators, n_max);
    let mut spans: Vec<Echelon> = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let mut rows = gens[k - 1].clone();
        if k >= 2 && spans[k - 2].rank() > 0 {
            let table = alg.ad_table(k - 1);
            let prev = spans[k - 2].rows();
            let bracketed: Vec<SparseVec> = prev
                .par_iter()
                .flat_map_iter(|row| (0..b).map(move |i| apply_ad(table, row, i)))
                .collect();
            rows.extend(bracketed);
        }
        spans.push(Echelon::from_rows(rows));
    }
    GradedIdealSpan { spans }
}

fn apply_ad(table: &[Vec<SparseVec>], row: &SparseVec, i: usize) -> SparseVec {
    let mut acc: std::collections::BTreeMap<usize, Z> = std::collections::BTreeMap::new();
    for (a, c) in row {
        for (j, x) in &table[*a][i] {
            *acc.entry(*j).or_insert_with(|| Z::from(0)) += c * x;
        }
    }
    acc.into_iter().filter(|(_, c)| c != &Z::from(0)).collect()
}

/// `dim L_k - rank span_k` for `k = 1..=N`.
pub fn quotient_dims(alg: &FreeLieAlgebra, spans: &GradedIdealSpan) -> Vec<usize> {
    (1..=spans.max_degree()).map(|k| alg.dim(k) - spans.rank(k)).collect()
}

/// Graded pieces of the `i`-th derived subalgebra `L^(i)` of the free Lie
/// algebra: `L^(0) = L`, `L^(i)_k = sum_{p+q=k} [L^(i-1)_p, L^(i-1)_q]`.
pub fn derived_subalgebra_spans(alg: &FreeLieAlgebra, i: usize) -> GradedIdealSpan {
    let n_max = alg.max_degree();
    let mut level: Vec<Echelon> = (1..=n_max).map(|k| full_span(alg.dim(k))).collect();
    for _ in 0..i {
        level = derived_step(alg, &level);
    }
    GradedIdealSpan { spans: level }
}

fn full_span(dim: usize) -> Echelon {
    let mut e = Echelon::new();
    for a in 0..dim {
        e.insert_fresh(vec![(a, Z::from(1))]);
    }
    e
}

fn derived_step(alg: &FreeLieAlgebra, prev: &[Echelon]) -> Vec<Echelon> {
    let n_max = alg.max_degree();
    let mut out = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let mut pairs: Vec<(usize, usize, usize, usize)> = Vec::new();
        for p in 1..=k / 2 {
            let q = k - p;
            let (rp, rq) = (prev[p - 1].rank(), prev[q - 1].rank());
            for a in 0..rp {
                let start = if p == q { a + 1 } else { 0 };
                for c in start..rq {
                    pairs.push((p, a, q, c));
                }
            }
        }
        let rows: Vec<SparseVec> = pairs
            .par_iter()
            .map(|&(p, a, q, c)| {
                alg.bracket_coords(&prev[p - 1].rows()[a], p, &prev[q - 1].rows()[c], q)
            })
            .filter(|r| !r.is_empty())
            .collect();
        out.push(Echelon::from_rows(rows));
    }
    out
}

/// Dimensions of `L / (I + L^(i))` where `I` is the ideal generated by
/// `relations`.
pub fn solvable_quotient_dims(alg: &FreeLieAlgebra, relations: &[LieElement], i: usize) -> Vec<usize> {
    let ideal = ideal_spans(alg, relations);
    let derived = derived_subalgebra_spans(alg, i);
    quotient_dims(alg, &ideal.sum(&derived))
}
