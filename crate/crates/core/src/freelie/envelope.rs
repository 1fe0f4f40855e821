//! Graded dimensions of quotients of the tensor algebra, and the
//! Poincaré-Birkhoff-Witt consistency check.

use num::{One, Zero};

use super::lyndon::encode;
use crate::linalg::{clear_denominators, Echelon, SparseVec};
use crate::ncseries::Tensor;
use crate::{Error, Result, Z};

/// Dimensions of `T(V) / (two-sided ideal of relations)` for degrees
/// `0..=N`, with `dim V = b`.
///
/// The ideal in degree `k` is `R_k + V I_{k-1} + I_{k-1} V`. Rows of
/// `V I_{k-1}` have distinct leading words and enter the echelon form
/// directly; the rest are reduced.
pub fn enveloping_dims(b: usize, relations: &[Tensor], max_degree: usize) -> Result<Vec<usize>> {
    for r in relations {
        if r.num_vars() != b {
            return Err(Error::ShapeMismatch(format!(
                "relation in {} variables, expected {b}",
                r.num_vars()
            )));
        }
    }
    let mut dims = vec![1usize];
    let mut prev = Echelon::new();
    for k in 1..=max_degree {
        let full = (b as u64)
            .checked_pow(k as u32)
            .filter(|&v| v <= usize::MAX as u64)
            .ok_or_else(|| Error::InvalidArgument(format!("{b}^{k} tensor coordinates overflow")))?
            as usize;
        let shift = (b as u64).pow(k as u32 - 1) as usize;
        let mut cur = Echelon::new();
        for i in 0..b {
            for row in prev.rows() {
                cur.insert_fresh(row.iter().map(|(c, x)| (i * shift + c, x.clone())).collect());
            }
        }
        let mut pending: Vec<SparseVec> = Vec::new();
        for row in prev.rows() {
            for i in 0..b {
                pending.push(row.iter().map(|(c, x)| (c * b + i, x.clone())).collect());
            }
        }
        for r in relations.iter().filter(|r| r.degree() == k && !r.is_zero()) {
            let coded: Vec<(usize, crate::Q)> =
                r.terms().map(|(m, c)| (encode(m, b) as usize, c.clone())).collect();
            pending.push(clear_denominators(&coded));
        }
        pending.sort_by_key(|r| r.len());
        for row in pending {
            cur.insert(row);
        }
        dims.push(full - cur.rank());
        prev = cur;
    }
    Ok(dims)
}

fn binomial(n: u64, k: u64) -> Z {
    let mut acc = Z::one();
    for i in 0..k {
        acc = acc * Z::from(n - i) / Z::from(i + 1);
    }
    acc
}

/// Coefficients `0..=N` of `prod_k (1 - t^k)^{-d_k}`; `lie_dims[k-1] = d_k`.
pub fn pbw_series(lie_dims: &[usize], max_degree: usize) -> Vec<Z> {
    let mut series = vec![Z::zero(); max_degree + 1];
    series[0] = Z::one();
    for (idx, &d) in lie_dims.iter().enumerate() {
        let k = idx + 1;
        if d == 0 || k > max_degree {
            continue;
        }
        // (1 - t^k)^{-d} = sum_j binom(d + j - 1, j) t^{kj}
        let factor: Vec<(usize, Z)> = (0..=max_degree / k)
            .map(|j| (k * j, binomial((d + j) as u64 - 1, j as u64)))
            .collect();
        let mut next = vec![Z::zero(); max_degree + 1];
        for (a, x) in series.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (shift, c) in &factor {
                if a + shift > max_degree {
                    break;
                }
                next[a + shift] += x * c;
            }
        }
        series = next;
    }
    series
}

/// First degree where `env_dims` disagrees with the PBW product of
/// `lie_dims`, if any.
pub fn pbw_first_mismatch(lie_dims: &[usize], env_dims: &[usize], max_degree: usize) -> Option<usize> {
    let expected = pbw_series(lie_dims, max_degree);
    (0..=max_degree).find(|&k| {
        env_dims.get(k).map(|&a| Z::from(a)).as_ref() != Some(&expected[k])
    })
}

/// True when the enveloping-algebra dimensions match the Lie dimensions
/// through degree `N`.
pub fn pbw_check(lie_dims: &[usize], env_dims: &[usize], max_degree: usize) -> bool {
    pbw_first_mismatch(lie_dims, env_dims, max_degree).is_none()
}
