//! The free Lie algebra on `b` generators in Lyndon coordinates, embedded in
//! the tensor algebra.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::lyndon::{decode, encode, standard_split, LyndonBasis};
use crate::linalg::SparseVec;
use crate::ncseries::Tensor;
use crate::{Error, Result, Q, Z};

/// Sparse homogeneous tensor keyed by word code.
pub(crate) type CodedTensor = BTreeMap<u64, Z>;

fn add_coded(t: &mut CodedTensor, code: u64, c: Z) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(code) {
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

/// A Lie element: for each degree, sparse coordinates over the Lyndon basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct LieElement {
    #[serde(serialize_with = "serialize_components")]
    components: BTreeMap<usize, BTreeMap<usize, Q>>,
}

fn serialize_components<S: serde::Serializer>(
    c: &BTreeMap<usize, BTreeMap<usize, Q>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: BTreeMap<usize, BTreeMap<usize, String>> = c
        .iter()
        .map(|(k, m)| (*k, m.iter().map(|(i, q)| (*i, q.to_string())).collect()))
        .collect();
    serde::Serialize::serialize(&v, s)
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Homogeneous element of degree `k` with the given Lyndon coordinates.
    pub fn homogeneous<I: IntoIterator<Item = (usize, Q)>>(k: usize, coords: I) -> Self {
        let mut e = Self::zero();
        for (i, c) in coords {
            e.add_coordinate(k, i, c);
        }
        e
    }

    fn add_coordinate(&mut self, k: usize, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let comp = self.components.entry(k).or_default();
        let slot = comp.entry(i).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            comp.remove(&i);
            if comp.is_empty() {
                self.components.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn max_degree(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    /// Coordinates of the degree-`k` component.
    pub fn component(&self, k: usize) -> Vec<(usize, Q)> {
        self.components
            .get(&k)
            .map(|m| m.iter().map(|(i, c)| (*i, c.clone())).collect())
            .unwrap_or_default()
    }

    pub fn coordinate(&self, k: usize, i: usize) -> Q {
        self.components
            .get(&k)
            .and_then(|m| m.get(&i))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &other.components {
            for (i, c) in m {
                out.add_coordinate(*k, *i, c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (k, m) in &self.components {
            for (i, x) in m {
                out.add_coordinate(*k, *i, x * c);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }
}

/// The free Lie algebra on `b` generators, truncated at degree `N`.
///
/// Bracketings of Lyndon words and the `ad` tables are computed lazily per
/// degree and cached; the structure can be shared between threads.
#[derive(Debug)]
pub struct FreeLieAlgebra {
    basis: LyndonBasis,
    expansions: Vec<OnceLock<Vec<CodedTensor>>>,
    ad_tables: Vec<OnceLock<Vec<Vec<SparseVec>>>>,
}

impl FreeLieAlgebra {
    pub fn new(b: usize, max_degree: usize) -> Self {
        FreeLieAlgebra {
            basis: LyndonBasis::new(b, max_degree),
            expansions: (0..max_degree).map(|_| OnceLock::new()).collect(),
            ad_tables: (0..max_degree).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn basis(&self) -> &LyndonBasis {
        &self.basis
    }

    pub fn num_generators(&self) -> usize {
        self.basis.num_generators()
    }

    pub fn max_degree(&self) -> usize {
        self.basis.max_degree()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis.dim(k)
    }

    /// The generator `y_i`.
    pub fn generator(&self, i: usize) -> Result<LieElement> {
        if i >= self.num_generators() {
            return Err(Error::GeneratorOutOfRange { index: i, rank: self.num_generators() });
        }
        Ok(LieElement::homogeneous(1, [(i, Q::one())]))
    }

    /// The basis element of the Lyndon word `w`.
    pub fn lyndon_element(&self, w: &[usize]) -> Result<LieElement> {
        let idx = self
            .basis
            .index_of(w)
            .ok_or_else(|| Error::InvalidArgument(format!("{w:?} is not a Lyndon word in range")))?;
        Ok(LieElement::homogeneous(w.len(), [(idx, Q::one())]))
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.max_degree() {
            return Err(Error::DegreeOverflow { degree: k, max: self.max_degree() });
        }
        Ok(())
    }

    /// Tensor expansions of the standard bracketings at degree `k`.
    pub(crate) fn expansions(&self, k: usize) -> &[CodedTensor] {
        self.expansions[k - 1].get_or_init(|| {
            let b = self.num_generators();
            self.basis
                .words(k)
                .iter()
                .map(|w| {
                    if k == 1 {
                        let mut t = CodedTensor::new();
                        t.insert(w[0] as u64, Z::one());
                        return t;
                    }
                    let s = standard_split(w);
                    let u = &self.expansions(s)[self.basis.index_of(&w[..s]).expect("Lyndon prefix")];
                    let v = &self.expansions(k - s)[self.basis.index_of(&w[s..]).expect("Lyndon suffix")];
                    coded_commutator(u, s, v, k - s, b)
                })
                .collect()
        })
    }

    /// `ad_{y_i}` on the degree-`k` basis: entry `[a][i]` holds the Lyndon
    /// coordinates of `[y_i, P_a]` in degree `k + 1`.
    pub(crate) fn ad_table(&self, k: usize) -> &[Vec<SparseVec>] {
        self.ad_tables[k - 1].get_or_init(|| {
            let b = self.num_generators();
            let exps = self.expansions(k);
            self.expansions(k + 1);
            exps.par_iter()
                .map(|p| {
                    (0..b)
                        .map(|i| {
                            let mut y = CodedTensor::new();
                            y.insert(i as u64, Z::one());
                            let t = coded_commutator(&y, 1, p, k, b);
                            self.coded_to_lyndon(t, k + 1).expect("brackets are Lie elements")
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Lyndon coordinates of a Lie tensor, by peeling off the smallest word
    /// of the support: for a Lyndon word `w` the bracketing is `w` plus
    /// lexicographically larger words.
    pub(crate) fn coded_to_lyndon(&self, mut t: CodedTensor, k: usize) -> Result<SparseVec> {
        let mut out = SparseVec::new();
        let exps = self.expansions(k);
        while let Some((&code, c)) = t.iter().next() {
            let c = c.clone();
            let idx = self.basis.index_of_code(k, code).ok_or(Error::NonPrimitive)?;
            for (wc, x) in &exps[idx] {
                add_coded(&mut t, *wc, -(&c * x));
            }
            out.push((idx, c));
        }
        Ok(out)
    }

    /// Tensor expansion of integer Lyndon coordinates.
    pub(crate) fn lyndon_to_coded(&self, coords: &[(usize, Z)], k: usize) -> CodedTensor {
        let exps = self.expansions(k);
        let mut t = CodedTensor::new();
        for (idx, c) in coords {
            for (wc, x) in &exps[*idx] {
                add_coded(&mut t, *wc, c * x);
            }
        }
        t
    }

    /// Bracket of two homogeneous integer coordinate vectors.
    pub(crate) fn bracket_coords(&self, a: &[(usize, Z)], p: usize, bv: &[(usize, Z)], q: usize) -> SparseVec {
        let b = self.num_generators();
        let ta = self.lyndon_to_coded(a, p);
        let tb = self.lyndon_to_coded(bv, q);
        let t = coded_commutator(&ta, p, &tb, q, b);
        self.coded_to_lyndon(t, p + q).expect("brackets are Lie elements")
    }

    /// The image of a Lie element in the tensor algebra, degree `k` part.
    pub fn embed(&self, e: &LieElement, k: usize) -> Result<Tensor> {
        self.check_degree(k)?;
        let b = self.num_generators();
        let exps = self.expansions(k);
        let mut acc: BTreeMap<u64, Q> = BTreeMap::new();
        for (idx, c) in e.component(k) {
            for (wc, x) in &exps[idx] {
                let slot = acc.entry(*wc).or_insert_with(Q::zero);
                *slot += &c * Q::from_integer(x.clone());
            }
        }
        Tensor::from_terms(
            b,
            k,
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(code, c)| (decode(code, b, k), c)),
        )
    }

    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> Result<LieElement> {
        let mut out = LieElement::zero();
        for p in u.degrees() {
            for q in v.degrees() {
                self.check_degree(p + q)?;
                let (ua, du) = integer_coords(&u.component(p));
                let (va, dv) = integer_coords(&v.component(q));
                let coords = self.bracket_coords(&ua, p, &va, q);
                let denom = Q::from_integer(du * dv);
                for (i, c) in coords {
                    out.add_coordinate(p + q, i, Q::from_integer(c) / &denom);
                }
            }
        }
        Ok(out)
    }

    /// True when `t` is fixed, up to the factor `deg t`, by the left-normed
    /// bracketing map `x_{i1} ... x_{ik} -> [...[x_{i1}, x_{i2}], ..., x_{ik}]`.
    /// This holds exactly for Lie elements.
    pub fn is_primitive(&self, t: &Tensor) -> bool {
        let k = t.degree();
        if k == 0 {
            return t.is_zero();
        }
        let b = t.num_vars();
        let mut acc: BTreeMap<u64, Q> = BTreeMap::new();
        for (m, c) in t.terms() {
            for (code, x) in left_normed(m, b) {
                let slot = acc.entry(code).or_insert_with(Q::zero);
                *slot += c * Q::from_integer(Z::from(x));
            }
        }
        let kq = Q::from_integer(Z::from(k as u64));
        let mut scaled: BTreeMap<u64, Q> = BTreeMap::new();
        for (m, c) in t.terms() {
            scaled.insert(encode(m, b), c * &kq);
        }
        acc.retain(|_, c| !c.is_zero());
        acc == scaled
    }

    /// The Lie element whose tensor image is the primitive tensor `t`.
    pub fn lie_from_primitive_tensor(&self, t: &Tensor) -> Result<LieElement> {
        if t.num_vars() != self.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "tensor in {} variables for a Lie algebra on {} generators",
                t.num_vars(),
                self.num_generators()
            )));
        }
        let k = t.degree();
        self.check_degree(k)?;
        if !self.is_primitive(t) {
            return Err(Error::NonPrimitive);
        }
        let b = self.num_generators();
        let rational: Vec<(u64, Q)> = t.terms().map(|(m, c)| (encode(m, b), c.clone())).collect();
        let mut denom = Z::one();
        for (_, c) in &rational {
            denom = num::Integer::lcm(&denom, c.denom());
        }
        let coded: CodedTensor = rational
            .iter()
            .map(|(code, c)| (*code, c.numer() * (&denom / c.denom())))
            .collect();
        let coords = self.coded_to_lyndon(coded, k)?;
        let dq = Q::from_integer(denom);
        Ok(LieElement::homogeneous(
            k,
            coords.into_iter().map(|(i, c)| (i, Q::from_integer(c) / &dq)),
        ))
    }
}

/// Clears denominators of rational coordinates: returns integer coordinates
/// and the common denominator.
pub(crate) fn integer_coords(v: &[(usize, Q)]) -> (SparseVec, Z) {
    let mut denom = Z::one();
    for (_, c) in v {
        denom = num::Integer::lcm(&denom, c.denom());
    }
    let coords = v
        .iter()
        .map(|(i, c)| (*i, c.numer() * (&denom / c.denom())))
        .collect();
    (coords, denom)
}

/// `u v - v u` for homogeneous coded tensors of degrees `p` and `q`.
pub(crate) fn coded_commutator(u: &CodedTensor, p: usize, v: &CodedTensor, q: usize, b: usize) -> CodedTensor {
    let sp = (b as u64).pow(p as u32);
    let sq = (b as u64).pow(q as u32);
    let mut out = CodedTensor::new();
    for (cu, a) in u {
        for (cv, x) in v {
            let prod = a * x;
            add_coded(&mut out, cu * sq + cv, prod.clone());
            add_coded(&mut out, cv * sp + cu, -prod);
        }
    }
    out
}

/// Expansion of the left-normed bracket of a monomial: `(code, coefficient)`.
fn left_normed(m: &[usize], b: usize) -> Vec<(u64, i64)> {
    let mut terms: Vec<(u64, i64)> = vec![(m[0] as u64, 1)];
    let mut len = 1u32;
    for &a in &m[1..] {
        let shift = (b as u64).pow(len);
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (code, c) in &terms {
            next.push((code * b as u64 + a as u64, *c));
            next.push((a as u64 * shift + code, -c));
        }
        terms = next;
        len += 1;
    }
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qi;

    fn tensor(b: usize, terms: &[(&[usize], i64)]) -> Tensor {
        let k = terms[0].0.len();
        Tensor::from_terms(b, k, terms.iter().map(|(m, c)| (m.to_vec(), qi(*c)))).unwrap()
    }

    #[test]
    fn bracket_basics() {
        let l = FreeLieAlgebra::new(3, 4);
        let y: Vec<LieElement> = (0..3).map(|i| l.generator(i).unwrap()).collect();
        assert!(l.bracket(&y[0], &y[0]).unwrap().is_zero());
        let a = l.bracket(&y[0], &y[1]).unwrap();
        let b = l.bracket(&y[1], &y[0]).unwrap();
        assert!(a.add(&b).is_zero());
        assert_eq!(a, l.lyndon_element(&[0, 1]).unwrap());
        let jac = l
            .bracket(&y[0], &l.bracket(&y[1], &y[2]).unwrap())
            .unwrap()
            .add(&l.bracket(&y[1], &l.bracket(&y[2], &y[0]).unwrap()).unwrap())
            .add(&l.bracket(&y[2], &l.bracket(&y[0], &y[1]).unwrap()).unwrap());
        assert!(jac.is_zero());
        let deep = l.bracket(&y[0], &l.bracket(&y[0], &l.bracket(&y[0], &y[1]).unwrap()).unwrap()).unwrap();
        assert!(matches!(l.bracket(&deep, &y[1]), Err(Error::DegreeOverflow { degree: 5, max: 4 })));
    }

    #[test]
    fn tensor_conversion() {
        let l = FreeLieAlgebra::new(2, 4);
        let t = tensor(2, &[(&[0, 1], 1), (&[1, 0], -1)]);
        assert_eq!(l.lie_from_primitive_tensor(&t).unwrap(), l.lyndon_element(&[0, 1]).unwrap());
        let sym = tensor(2, &[(&[0, 1], 1), (&[1, 0], 1)]);
        assert_eq!(l.lie_from_primitive_tensor(&sym), Err(Error::NonPrimitive));
        assert!(!l.is_primitive(&sym));

        // [x,[y,[x,y]]] expanded by hand
        let x = Tensor::monomial(2, &[0]).unwrap();
        let y = Tensor::monomial(2, &[1]).unwrap();
        let t = x.commutator(&y.commutator(&x.commutator(&y).unwrap()).unwrap()).unwrap();
        let e = l.lie_from_primitive_tensor(&t).unwrap();
        assert_eq!(l.embed(&e, 4).unwrap(), t);
        let ex = l.generator(0).unwrap();
        let ey = l.generator(1).unwrap();
        let direct = l.bracket(&ex, &l.bracket(&ey, &l.bracket(&ex, &ey).unwrap()).unwrap()).unwrap();
        assert_eq!(e, direct);
    }

    #[test]
    fn embedding_is_injective_on_basis() {
        let l = FreeLieAlgebra::new(3, 5);
        for k in 1..=5 {
            for (i, w) in l.basis().words(k).iter().enumerate() {
                let e = LieElement::homogeneous(k, [(i, qi(1))]);
                let t = l.embed(&e, k).unwrap();
                assert_eq!(t.coefficient(w), qi(1));
                assert!(t.terms().all(|(m, _)| m >= w));
                assert_eq!(l.lie_from_primitive_tensor(&t).unwrap(), e);
            }
        }
    }

    #[test]
    fn rational_coordinates() {
        let l = FreeLieAlgebra::new(2, 3);
        let half = LieElement::homogeneous(1, [(0, crate::q(1, 2))]);
        let y = l.generator(1).unwrap();
        let br = l.bracket(&half, &y).unwrap();
        assert_eq!(br.coordinate(2, 0), crate::q(1, 2));
    }
}
