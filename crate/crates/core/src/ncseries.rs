//! Truncated noncommutative power series over `Q`, the Magnus expansion,
//! the relative expansion `kappa`, relator weights and initial forms.
//!
//! Monomials are multi-indices: `[i, j]` stands for `x_i x_j`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::matrix::QMatrix;
use crate::{Error, FinitePresentation, Result, Word, Q};

fn add_into(map: &mut BTreeMap<Vec<usize>, Q>, key: Vec<usize>, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A power series in `num_vars` noncommuting variables, exact modulo
/// monomials of length greater than `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    num_vars: usize,
    order: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

impl TruncatedSeries {
    pub fn zero(num_vars: usize, order: usize) -> Self {
        TruncatedSeries { num_vars, order, coeffs: BTreeMap::new() }
    }

    pub fn one(num_vars: usize, order: usize) -> Self {
        Self::constant(num_vars, order, Q::one())
    }

    pub fn constant(num_vars: usize, order: usize, c: Q) -> Self {
        let mut s = Self::zero(num_vars, order);
        add_into(&mut s.coeffs, Vec::new(), c);
        s
    }

    /// The single variable `x_i`.
    pub fn variable(num_vars: usize, order: usize, i: usize) -> Result<Self> {
        Self::from_terms(num_vars, order, [(vec![i], Q::one())])
    }

    /// Builds a series; monomials longer than `order` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Q)>>(
        num_vars: usize,
        order: usize,
        terms: I,
    ) -> Result<Self> {
        let mut s = Self::zero(num_vars, order);
        for (key, c) in terms {
            if let Some(&bad) = key.iter().find(|&&i| i >= num_vars) {
                return Err(Error::GeneratorOutOfRange { index: bad, rank: num_vars });
            }
            if key.len() <= order {
                add_into(&mut s.coeffs, key, c);
            }
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, multi: &[usize]) -> Q {
        self.coeffs.get(multi).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.order != other.order {
            return Err(Error::ShapeMismatch(format!(
                "series in {} variables to order {} vs {} variables to order {}",
                self.num_vars, self.order, other.num_vars, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.num_vars, self.order);
        for (k, x) in &self.coeffs {
            add_into(&mut out.coeffs, k.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut by_len: Vec<Vec<(&Vec<usize>, &Q)>> = vec![Vec::new(); self.order + 1];
        for (k, c) in &other.coeffs {
            by_len[k.len()].push((k, c));
        }
        let mut out = Self::zero(self.num_vars, self.order);
        for (a, ca) in &self.coeffs {
            for bucket in &by_len[..=self.order - a.len()] {
                for (b, cb) in bucket {
                    let mut key = Vec::with_capacity(a.len() + b.len());
                    key.extend_from_slice(a);
                    key.extend_from_slice(b);
                    add_into(&mut out.coeffs, key, ca * *cb);
                }
            }
        }
        out
    }

    /// `self^e` for `e >= 0` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.num_vars, self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Inverse of a series with constant term 1: `sum_k (1 - s)^k`.
    pub fn inverse_unipotent(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::InvalidArgument("series must have constant term 1".into()));
        }
        let one = Self::one(self.num_vars, self.order);
        let nil = one.sub(self)?;
        let mut term = one.clone();
        let mut out = one;
        for _ in 0..self.order {
            term = term.mul_unchecked(&nil);
            if term.is_zero() {
                break;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// The homogeneous degree-`k` part.
    pub fn component(&self, k: usize) -> Tensor {
        Tensor {
            num_vars: self.num_vars,
            degree: k,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.len() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest degree `>= 1` with a nonzero coefficient.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|k| k.len()).filter(|&l| l > 0).min()
    }

    /// Applies the substitution `x_s -> sum_i a[i][s] y_i` monomial by
    /// monomial, giving a series in `a.b()` variables.
    pub fn substitute(&self, a: &ProjectionMatrix) -> Result<Self> {
        if a.n() != self.num_vars {
            return Err(Error::ShapeMismatch(format!(
                "projection has {} columns, series has {} variables",
                a.n(),
                self.num_vars
            )));
        }
        let forms: Vec<Vec<(usize, Q)>> = (0..a.n()).map(|s| a.image(s)).collect();
        let mut out = Self::zero(a.b(), self.order);
        for (m, c) in &self.coeffs {
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::with_capacity(m.len()), c.clone())];
            for &s in m {
                let mut next = Vec::with_capacity(partial.len() * forms[s].len());
                for (key, x) in &partial {
                    for (i, a_is) in &forms[s] {
                        let mut k2 = key.clone();
                        k2.push(*i);
                        next.push((k2, x * a_is));
                    }
                }
                partial = next;
            }
            for (key, x) in partial {
                add_into(&mut out.coeffs, key, x);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)?;
        write!(f, " + O({})", self.order + 1)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &BTreeMap<Vec<usize>, Q>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    for (n, (m, c)) in coeffs.iter().enumerate() {
        if n > 0 {
            write!(f, " + ")?;
        }
        write!(f, "{c}")?;
        for i in m {
            write!(f, "*x{}", i + 1)?;
        }
    }
    Ok(())
}

/// A homogeneous element of the tensor algebra: every monomial has length
/// `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    num_vars: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

impl Tensor {
    pub fn zero(num_vars: usize, degree: usize) -> Self {
        Tensor { num_vars, degree, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Q)>>(
        num_vars: usize,
        degree: usize,
        terms: I,
    ) -> Result<Self> {
        let mut t = Self::zero(num_vars, degree);
        for (key, c) in terms {
            if key.len() != degree {
                return Err(Error::ShapeMismatch(format!(
                    "monomial of length {} in a degree-{degree} tensor",
                    key.len()
                )));
            }
            if let Some(&bad) = key.iter().find(|&&i| i >= num_vars) {
                return Err(Error::GeneratorOutOfRange { index: bad, rank: num_vars });
            }
            add_into(&mut t.coeffs, key, c);
        }
        Ok(t)
    }

    /// The monomial `x_{m_1} ... x_{m_k}` with coefficient 1.
    pub fn monomial(num_vars: usize, m: &[usize]) -> Result<Self> {
        Self::from_terms(num_vars, m.len(), [(m.to_vec(), Q::one())])
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, m: &[usize]) -> Q {
        self.coeffs.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.degree != other.degree {
            return Err(Error::ShapeMismatch("tensors of different shape".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.num_vars, self.degree);
        for (k, x) in &self.coeffs {
            add_into(&mut out.coeffs, k.clone(), x * c);
        }
        out
    }

    /// Concatenation product; degrees add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(Error::ShapeMismatch("tensors over different alphabets".into()));
        }
        let mut out = Self::zero(self.num_vars, self.degree + other.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut key = a.clone();
                key.extend_from_slice(b);
                add_into(&mut out.coeffs, key, ca * cb);
            }
        }
        Ok(out)
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// The substitution `x_s -> sum_i a[i][s] y_i` on a homogeneous tensor.
    pub fn substitute(&self, a: &ProjectionMatrix) -> Result<Self> {
        let mut s = TruncatedSeries::zero(self.num_vars, self.degree);
        s.coeffs = self.coeffs.clone();
        Ok(s.substitute(a)?.component(self.degree))
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl Serialize for Tensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(Vec<usize>, String)> =
            self.coeffs.iter().map(|(k, c)| (k.clone(), c.to_string())).collect();
        terms.serialize(s)
    }
}

/// The `b x n` matrix of a linear map `x_s -> sum_i a[i][s] y_i` from the
/// abelianization of the free group onto `Q^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectionMatrix {
    a: QMatrix,
}

impl ProjectionMatrix {
    pub fn new(a: QMatrix) -> Self {
        ProjectionMatrix { a }
    }

    pub fn identity(n: usize) -> Self {
        ProjectionMatrix { a: QMatrix::identity(n) }
    }

    pub fn b(&self) -> usize {
        self.a.nrows()
    }

    pub fn n(&self) -> usize {
        self.a.ncols()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.a
    }

    pub fn entry(&self, i: usize, s: usize) -> &Q {
        &self.a[(i, s)]
    }

    /// Nonzero coordinates of the image of `x_s`.
    pub fn image(&self, s: usize) -> Vec<(usize, Q)> {
        (0..self.b())
            .filter(|&i| !self.a[(i, s)].is_zero())
            .map(|i| (i, self.a[(i, s)].clone()))
            .collect()
    }
}

/// The Magnus expansion `M(w)` in `n` variables, truncated at degree `order`.
///
/// Each syllable `x_i^e` is expanded as `(1 + x_i)^e`, computed by
/// repeated squaring of `1 + x_i` or of its inverse.
pub fn magnus(n: usize, w: &Word, order: usize) -> Result<TruncatedSeries> {
    kappa(w, &ProjectionMatrix::identity(n), order)
}

/// The relative expansion `kappa(w)`: the ring map `x_s -> 1 + sum_i
/// a[i][s] y_i`, evaluated letter by letter.
pub fn kappa(w: &Word, a: &ProjectionMatrix, order: usize) -> Result<TruncatedSeries> {
    if let Some(g) = w.max_generator() {
        if g >= a.n() {
            return Err(Error::ShapeMismatch(format!(
                "word uses generator {g} but the projection has {} columns",
                a.n()
            )));
        }
    }
    let b = a.b();
    let mut result = TruncatedSeries::one(b, order);
    let mut cache: BTreeMap<(usize, i64), TruncatedSeries> = BTreeMap::new();
    for l in w.letters() {
        let factor = match cache.get(&(l.gen, l.exp)) {
            Some(f) => f.clone(),
            None => {
                let f = letter_power(a, l.gen, l.exp, order)?;
                cache.insert((l.gen, l.exp), f.clone());
                f
            }
        };
        result = result.mul_unchecked(&factor);
    }
    Ok(result)
}

fn letter_power(a: &ProjectionMatrix, s: usize, e: i64, order: usize) -> Result<TruncatedSeries> {
    let b = a.b();
    let mut base = TruncatedSeries::one(b, order);
    for (i, c) in a.image(s) {
        if order >= 1 {
            add_into(&mut base.coeffs, vec![i], c);
        }
    }
    if e < 0 {
        base = base.inverse_unipotent()?;
    }
    Ok(base.pow(e.unsigned_abs()))
}

/// `kappa(w)` computed the other way round: classical Magnus expansion first,
/// then the linear substitution.
pub fn kappa_by_substitution(w: &Word, a: &ProjectionMatrix, order: usize) -> Result<TruncatedSeries> {
    magnus(a.n(), w, order)?.substitute(a)
}

/// The coefficient `kappa(w)_I`.
pub fn kappa_coeff(w: &Word, a: &ProjectionMatrix, multi: &[usize]) -> Result<Q> {
    if let Some(&bad) = multi.iter().find(|&&i| i >= a.b()) {
        return Err(Error::GeneratorOutOfRange { index: bad, rank: a.b() });
    }
    Ok(kappa(w, a, multi.len())?.coefficient(multi))
}

/// The homogeneous degree-`k` part of `kappa(w)`.
pub fn kappa_k(w: &Word, a: &ProjectionMatrix, k: usize) -> Result<Tensor> {
    Ok(kappa(w, a, k)?.component(k))
}

/// The weight of a word: the lowest degree of a nonzero term of `M(w) - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    Finite(usize),
    /// All coefficients vanish through the cap.
    ExceedsCap,
    /// The identity word.
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<usize> {
        match self {
            Weight::Finite(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::ExceedsCap => write!(f, "exceeds cap"),
            Weight::Infinite => write!(f, "infinite"),
        }
    }
}

/// Default search depth for [`weight`].
pub const DEFAULT_WEIGHT_CAP: usize = 16;

/// Weight of `w` by iterative deepening up to `cap`.
pub fn weight(w: &Word, cap: usize) -> Weight {
    weight_and_form(w, cap).0
}

fn weight_and_form(w: &Word, cap: usize) -> (Weight, Option<Tensor>) {
    if w.is_identity() {
        return (Weight::Infinite, None);
    }
    let n = w.max_generator().map_or(0, |g| g + 1);
    let a = ProjectionMatrix::identity(n);
    for order in 1..=cap {
        let m = kappa(w, &a, order).expect("identity projection fits the word");
        if let Some(d) = m.lowest_positive_degree() {
            return (Weight::Finite(d), Some(m.component(d)));
        }
    }
    (Weight::ExceedsCap, None)
}

/// The initial form of `w` in `n` variables: the degree-`weight(w)` part of
/// `M(w) - 1`.
pub fn initial_form(n: usize, w: &Word, cap: usize) -> Result<Tensor> {
    if let Some(g) = w.max_generator() {
        if g >= n {
            return Err(Error::GeneratorOutOfRange { index: g, rank: n });
        }
    }
    match weight_and_form(w, cap) {
        (Weight::Finite(_), Some(t)) => Ok(Tensor { num_vars: n, ..t }),
        (Weight::Infinite, _) => Err(Error::IdentityWord),
        _ => Err(Error::WordWeightExceedsCap { cap }),
    }
}

/// Weights of all relators of `p`.
pub fn relator_weights(p: &FinitePresentation, cap: usize) -> Vec<Weight> {
    p.relators().iter().map(|r| weight(r, cap)).collect()
}

/// Initial forms of all relators, with errors naming the offending relator.
pub fn initial_forms(p: &FinitePresentation, cap: usize) -> Result<Vec<Tensor>> {
    p.relators()
        .iter()
        .enumerate()
        .map(|(k, r)| {
            initial_form(p.num_generators(), r, cap).map_err(|e| match e {
                Error::IdentityWord => Error::TrivialRelator { relator: k },
                Error::WordWeightExceedsCap { cap } => Error::WeightExceedsCap { relator: k, cap },
                other => other,
            })
        })
        .collect()
}
