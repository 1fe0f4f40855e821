//! Exact linear algebra over `Z` and `Q`.
//!
//! Two independent routes are provided:
//!
//! * [`Echelon`]: an incremental sparse row echelon form over the integers.
//!   Rows are kept primitive (content divided out) and each new row is
//!   reduced fraction-free against the existing pivots. This carries the
//!   heavy graded-span computations.
//! * [`bareiss_rank`] / [`bareiss_determinant`]: dense Bareiss elimination
//!   for small matrices and test oracles.

use std::collections::HashMap;

use num::{Integer, One, Signed, Zero};

use crate::{Q, Z};

/// Sparse integer vector: `(column, value)` pairs, strictly increasing
/// columns, no zero values.
pub type SparseVec = Vec<(usize, Z)>;

/// Divides out the content and makes the leading entry positive.
pub fn make_primitive(v: &mut SparseVec) {
    let Some((_, lead)) = v.first() else { return };
    let negate = lead.is_negative();
    let mut g = Z::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if g.is_one() && !negate {
        return;
    }
    if negate {
        g = -g;
    }
    for (_, x) in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// `ca * a - cb * b`, merged column-wise.
fn combine(a: &SparseVec, ca: &Z, b: &SparseVec, cb: &Z) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(cb * &b[j].1)));
            j += 1;
        } else {
            let x = ca * &a[i].1 - cb * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Converts a rational sparse vector to a primitive integer one.
pub fn clear_denominators(v: &[(usize, Q)]) -> SparseVec {
    let mut l = Z::one();
    for (_, x) in v {
        l = l.lcm(x.denom());
    }
    let mut out: SparseVec = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, x.numer() * (&l / x.denom())))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    make_primitive(&mut out);
    out
}

/// Incremental row echelon form of sparse integer rows.
///
/// Every stored row has a distinct leading column. Rows are primitive.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon form of a batch of rows; sparse rows are inserted first to
    /// keep the pivot rows sparse.
    pub fn from_rows(mut rows: Vec<SparseVec>) -> Self {
        rows.sort_by_key(|r| r.len());
        let mut e = Echelon::new();
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// Reduces `v` until its leading column is not a pivot column. The
    /// result is empty exactly when `v` lies in the row span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|(_, x)| !x.is_zero());
        loop {
            let Some((lead_col, lead)) = v.first() else { return v };
            let Some(&idx) = self.pivots.get(lead_col) else {
                make_primitive(&mut v);
                return v;
            };
            let row = &self.rows[idx];
            let p = &row[0].1;
            let g = lead.gcd(p);
            let cv = p / &g;
            let cr = lead / &g;
            v = combine(&v, &cv, row, &cr);
            make_primitive(&mut v);
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts a row; returns `true` if it raised the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.pivots.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Inserts a row whose leading column is known not to be a pivot yet.
    pub fn insert_fresh(&mut self, mut v: SparseVec) {
        v.retain(|(_, x)| !x.is_zero());
        if v.is_empty() {
            return;
        }
        debug_assert!(!self.pivots.contains_key(&v[0].0));
        make_primitive(&mut v);
        self.pivots.insert(v[0].0, self.rows.len());
        self.rows.push(v);
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }
}

/// Rank of a dense integer matrix by Bareiss elimination.
pub fn bareiss_rank(mut m: Vec<Vec<Z>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = Z::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = Z::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<Z>>) -> Z {
    let n = m.len();
    if n == 0 {
        return Z::one();
    }
    let mut prev = Z::one();
    let mut sign = Z::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return Z::zero() };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank over `Q` of a dense rational matrix.
pub fn rational_rank(rows: &[Vec<Q>]) -> usize {
    let int_rows: Vec<Vec<Z>> = rows
        .iter()
        .map(|row| {
            let mut l = Z::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    bareiss_rank(int_rows)
}

/// Sparse form of a dense integer row.
pub fn sparse_from_dense(row: &[Z]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c, x.clone()))
        .collect()
}
