//! Truncated Hilbert series with exact rational coefficients.

use std::fmt;

use num::{One, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result, Q, Z};

/// A power series in `t` truncated after degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    coeffs: Vec<Q>,
}

impl HilbertSeries {
    pub fn zero(max_degree: usize) -> Self {
        HilbertSeries { coeffs: vec![Q::zero(); max_degree + 1] }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.coeffs[0] = Q::one();
        s
    }

    /// Series with the given low-order coefficients, padded with zeros or
    /// truncated to degree `N`.
    pub fn from_coeffs(coeffs: Vec<Q>, max_degree: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(max_degree + 1, Q::zero());
        HilbertSeries { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I, max_degree: usize) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(|c| Q::from_integer(c.into())).collect(), max_degree)
    }

    /// `sum_k dims[k] t^k`, with `dims[0]` the constant term.
    pub fn from_dims(dims: &[usize], max_degree: usize) -> Self {
        Self::from_coeffs(dims.iter().map(|&d| Q::from_integer(d.into())).collect(), max_degree)
    }

    /// The polynomial `sum c t^k` over `(k, c)` pairs; terms above `N` drop.
    pub fn polynomial<I: IntoIterator<Item = (usize, Q)>>(terms: I, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        for (k, c) in terms {
            if k <= max_degree {
                s.coeffs[k] += c;
            }
        }
        s
    }

    /// `(1 - t)^{-n}`.
    pub fn geometric_power(n: usize, max_degree: usize) -> Self {
        let coeffs = (0..=max_degree)
            .map(|j| if n == 0 { Q::from_integer((j == 0).into()) } else { Q::from_integer(binomial(n + j - 1, j)) })
            .collect();
        HilbertSeries { coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficients as integers; `None` if any is fractional.
    pub fn integer_coefficients(&self) -> Option<Vec<Z>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), max_degree)
    }

    fn common(&self, other: &Self) -> usize {
        self.max_degree().min(other.max_degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        HilbertSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        HilbertSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        HilbertSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut coeffs = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        HilbertSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::InvalidArgument("series with zero constant term is not invertible".into()));
        }
        let inv0 = c0.recip();
        let n = self.max_degree();
        let mut out = vec![Q::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Q::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &inv0;
        }
        Ok(HilbertSeries { coeffs: out })
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} t")?,
                _ => write!(f, "{c} t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.max_degree() + 1)
    }
}

impl Serialize for HilbertSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> Z {
    if k > n {
        return Z::zero();
    }
    let k = k.min(n - k);
    let mut acc = Z::one();
    for i in 0..k {
        acc = acc * Z::from(n - i) / Z::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    #[test]
    fn inverse_of_quadratic() {
        // 1 / (1 - 4t + t^2)
        let d = HilbertSeries::from_integers([1, -4, 1], 5);
        let inv = d.inverse().unwrap();
        assert_eq!(inv, HilbertSeries::from_integers([1, 4, 15, 56, 209, 780], 5));
        assert_eq!(inv.mul(&d), HilbertSeries::one(5));
        assert!(HilbertSeries::from_integers([0, 1], 3).inverse().is_err());
    }

    #[test]
    fn geometric() {
        let g = HilbertSeries::geometric_power(3, 4);
        assert_eq!(g, HilbertSeries::from_integers([1, 3, 6, 10, 15], 4));
        let back = HilbertSeries::from_integers([1, -3, 3, -1], 4).mul(&g);
        assert_eq!(back, HilbertSeries::one(4));
        assert_eq!(HilbertSeries::geometric_power(0, 2), HilbertSeries::one(2));
    }

    #[test]
    fn arithmetic_and_display() {
        let a = HilbertSeries::polynomial([(0, qi(1)), (2, crate::q(1, 2)), (9, qi(7))], 3);
        assert_eq!(a.coefficient(2), crate::q(1, 2));
        assert_eq!(a.to_string(), "1 + 1/2 t^2 + O(t^4)");
        assert_eq!(a.add(&a).sub(&a), a);
        assert!(a.integer_coefficients().is_none());
        assert_eq!(a.scale(&qi(2)).integer_coefficients().unwrap()[2], Z::from(1));
        assert_eq!(binomial(5, 2), Z::from(10));
        assert_eq!(binomial(2, 5), Z::from(0));
    }
}
