//! Closed-form rank formulas: Witt, Labute, Chen and surface groups.

use num::{One, Signed, Zero};

use super::hilbert::{binomial, HilbertSeries};
use crate::{Error, Result, Q, Z};

/// The Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(k: usize) -> impl Iterator<Item = usize> {
    (1..=k).filter(move |d| k.is_multiple_of(*d))
}

/// Dimension of the degree-`k` part of the free Lie algebra on `b`
/// generators.
pub fn witt(b: usize, k: usize) -> Z {
    assert!(k >= 1, "witt is defined for k >= 1");
    let sum: Z = divisors(k)
        .map(|d| Z::from(moebius(d as u64)) * num::pow(Z::from(b), k / d))
        .sum();
    sum / Z::from(k)
}

/// `witt(b, k)` for `k = 1..=N`.
pub fn witt_ranks(b: usize, max_degree: usize) -> Vec<Z> {
    (1..=max_degree).map(|k| witt(b, k)).collect()
}

fn labute_inner(n: usize, e: usize, d: usize) -> Q {
    let mut acc = Q::zero();
    for i in 0..=d / e {
        let m = d + i - e * i;
        let term = Q::new(Z::from(d), Z::from(m)) * Q::from_integer(binomial(m, i) * num::pow(Z::from(n), d - e * i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// LCS ranks `phi_1..phi_N` of a one-relator group on `n` generators whose
/// relator has weight `e`.
pub fn labute_one_relator_ranks(n: usize, e: usize, max_degree: usize) -> Result<Vec<Z>> {
    if n < 2 || e < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and e >= 1, got n = {n}, e = {e}")));
    }
    (1..=max_degree)
        .map(|k| {
            let sum: Q = divisors(k)
                .map(|d| labute_inner(n, e, d) * Q::from_integer(moebius((k / d) as u64).into()))
                .sum();
            let phi = sum / Q::from_integer(k.into());
            assert!(phi.is_integer() && !phi.is_negative(), "rank {phi} at degree {k} is not a nonnegative integer");
            Ok(phi.to_integer())
        })
        .collect()
}

/// Chen ranks of the free group of rank `n`: `(k-1) C(n+k-2, k)` for
/// `k >= 2`, and `n` for `k = 1`.
pub fn chen_free(n: usize, k: usize) -> Z {
    match k {
        0 => panic!("chen ranks start at k = 1"),
        1 => Z::from(n),
        _ if n == 0 => Z::zero(),
        _ => Z::from(k - 1) * binomial(n + k - 2, k),
    }
}

pub fn chen_free_ranks(n: usize, max_degree: usize) -> Vec<Z> {
    (1..=max_degree).map(|k| chen_free(n, k)).collect()
}

/// LCS ranks of the genus-`g` surface group, `k = 1..=N`.
pub fn surface_lcs(g: usize, max_degree: usize) -> Vec<Z> {
    if g == 0 {
        return vec![Z::zero(); max_degree];
    }
    labute_one_relator_ranks(2 * g, 2, max_degree).expect("2g >= 2")
}

/// Chen rank `theta_k` of the genus-`g` surface group.
pub fn surface_chen(g: usize, k: usize) -> Z {
    match k {
        0 => panic!("chen ranks start at k = 1"),
        _ if g == 0 => Z::zero(),
        1 => Z::from(2 * g),
        2 => Z::from(2 * g * g - g - 1),
        _ => Z::from(k - 1) * binomial(2 * g + k - 2, k) - binomial(2 * g + k - 3, k - 2),
    }
}

pub fn surface_chen_ranks(g: usize, max_degree: usize) -> Vec<Z> {
    (1..=max_degree).map(|k| surface_chen(g, k)).collect()
}

/// Hilbert series of the Chen Lie algebra of a 1-formal one-relator group
/// on `n` generators: `1 + nt - (1 - nt + t^2)/(1-t)^n` when the relator is
/// a commutator, `1 + (n-1)t - (1 - (n-1)t)/(1-t)^{n-1}` otherwise.
pub fn one_relator_chen_series(n: usize, is_commutator: bool, max_degree: usize) -> HilbertSeries {
    let qn = |x: i64| Q::from_integer(x.into());
    let (m, numerator) = if is_commutator {
        (n, HilbertSeries::polynomial([(0, Q::one()), (1, -qn(n as i64)), (2, Q::one())], max_degree))
    } else {
        let m = n.saturating_sub(1);
        (m, HilbertSeries::polynomial([(0, Q::one()), (1, -qn(m as i64))], max_degree))
    };
    let head = HilbertSeries::polynomial([(0, Q::one()), (1, qn(m as i64))], max_degree);
    head.sub(&numerator.mul(&HilbertSeries::geometric_power(m, max_degree)))
}

/// Ranks `1..=N` read off a series whose coefficients are integers.
pub fn series_ranks(s: &HilbertSeries) -> Vec<Z> {
    s.integer_coefficients().expect("integral series")[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::lyndon_basis;

    fn zs(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn moebius_values() {
        let got: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn witt_matches_lyndon_count() {
        for b in 1..=4 {
            let dims = lyndon_basis(b, 7).dims();
            for k in 1..=7 {
                assert_eq!(witt(b, k), Z::from(dims[k - 1]), "b = {b}, k = {k}");
            }
        }
        assert_eq!(witt_ranks(3, 6), zs(&[3, 3, 8, 18, 48, 116]));
    }

    #[test]
    fn labute_basic() {
        assert_eq!(labute_one_relator_ranks(2, 2, 6).unwrap(), zs(&[2, 0, 0, 0, 0, 0]));
        // weight 1: free on n - 1 generators
        assert_eq!(labute_one_relator_ranks(3, 1, 6).unwrap(), witt_ranks(2, 6));
        // large weight: free through degree e - 1, then one fewer
        let w = labute_one_relator_ranks(2, 4, 6).unwrap();
        assert_eq!(w, zs(&[2, 1, 2, 2, 4, 5]));
        assert!(labute_one_relator_ranks(1, 2, 3).is_err());
    }

    #[test]
    fn chen_values() {
        assert_eq!(chen_free(2, 3), Z::from(2));
        assert_eq!(chen_free_ranks(2, 6), zs(&[2, 1, 2, 3, 4, 5]));
        assert_eq!(chen_free_ranks(3, 4), zs(&[3, 3, 8, 15]));
        for g in 0..=4 {
            assert_eq!(surface_chen(g, 2), Z::from((2 * g * g) as i64 - g as i64 - 1).max(Z::zero()));
        }
        assert_eq!(surface_chen_ranks(1, 5), zs(&[2, 0, 0, 0, 0]));
        assert_eq!(surface_lcs(0, 3), zs(&[0, 0, 0]));
    }

    #[test]
    fn chen_series_branches() {
        for g in 1..=3 {
            let s = one_relator_chen_series(2 * g, true, 7);
            assert_eq!(s.coefficient(0), Q::zero());
            assert_eq!(series_ranks(&s), surface_chen_ranks(g, 7), "g = {g}");
        }
        for n in 2..=5 {
            let s = series_ranks(&one_relator_chen_series(n, false, 6));
            assert_eq!(s, chen_free_ranks(n - 1, 6));
        }
    }
}
