use num::Integer;
use serde::Serialize;

use super::{parse_presentation, FinitePresentation, Word};
use crate::{q, qi, Error, Result, Q};

/// `<x1, y1, ..., xg, yg | [x1, y1] ... [xg, yg]>`.
pub fn surface_presentation(g: usize) -> Result<FinitePresentation> {
    if g < 1 {
        return Err(Error::InvalidArgument("surface genus must be at least 1".into()));
    }
    let mut names = Vec::with_capacity(2 * g);
    let mut rel = Word::identity();
    for i in 0..g {
        names.push(format!("x{}", i + 1));
        names.push(format!("y{}", i + 1));
        rel = rel.multiply(&Word::generator(2 * i).commutator(&Word::generator(2 * i + 1)));
    }
    FinitePresentation::new(names, vec![rel])
}

/// Seifert invariants: base genus, exceptional fibers `(alpha, beta)` and
/// the obstruction `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub g: usize,
    pub pairs: Vec<(i64, i64)>,
    pub b: i64,
}

impl SeifertData {
    pub fn new(g: usize, pairs: Vec<(i64, i64)>, b: i64) -> Result<Self> {
        for &(alpha, beta) in &pairs {
            if alpha < 2 {
                return Err(Error::InvalidArgument(format!(
                    "fiber multiplicity {alpha} must be at least 2"
                )));
            }
            if alpha.gcd(&beta) != 1 {
                return Err(Error::InvalidArgument(format!(
                    "fiber pair ({alpha}, {beta}) is not coprime"
                )));
            }
        }
        Ok(SeifertData { g, pairs, b })
    }

    pub fn euler(&self) -> Q {
        seifert_euler(&self.pairs, self.b)
    }

    pub fn presentation(&self) -> FinitePresentation {
        build_seifert(self)
    }
}

/// `e = -b - sum beta_j / alpha_j`.
pub fn seifert_euler(pairs: &[(i64, i64)], b: i64) -> Q {
    let mut e = qi(-b);
    for &(alpha, beta) in pairs {
        e -= q(beta, alpha);
    }
    e
}

/// Generators `x1, y1, ..., xg, yg, z1, ..., zs, h`. Relators, in order: the
/// long relator `[x1,y1]...[xg,yg] z1...zs h^-b`, the torsion relators
/// `zj^alpha_j h^beta_j`, then `[xi,h]`, `[yi,h]` for each `i` and `[zj,h]`.
pub fn seifert_presentation(g: usize, pairs: &[(i64, i64)], b: i64) -> Result<FinitePresentation> {
    Ok(SeifertData::new(g, pairs.to_vec(), b)?.presentation())
}

fn build_seifert(data: &SeifertData) -> FinitePresentation {
    let g = data.g;
    let s = data.pairs.len();
    let mut names = Vec::with_capacity(2 * g + s + 1);
    for i in 1..=g {
        names.push(format!("x{i}"));
        names.push(format!("y{i}"));
    }
    for j in 1..=s {
        names.push(format!("z{j}"));
    }
    names.push("h".to_string());
    let z = |j: usize| 2 * g + j;
    let h = 2 * g + s;
    let hw = Word::generator(h);

    let mut long = Word::identity();
    for i in 0..g {
        long = long.multiply(&Word::generator(2 * i).commutator(&Word::generator(2 * i + 1)));
    }
    for j in 0..s {
        long = long.multiply(&Word::generator(z(j)));
    }
    long = long.multiply(&Word::power_of(h, -data.b));

    let mut relators = vec![long];
    for (j, &(alpha, beta)) in data.pairs.iter().enumerate() {
        relators.push(Word::from_letters([(z(j), alpha), (h, beta)]));
    }
    for i in 0..g {
        relators.push(Word::generator(2 * i).commutator(&hw));
        relators.push(Word::generator(2 * i + 1).commutator(&hw));
    }
    for j in 0..s {
        relators.push(Word::generator(z(j)).commutator(&hw));
    }
    FinitePresentation::new(names, relators).expect("seifert presentation is well formed")
}

/// The Borromean rings: `<x, y, z | [x,[y,z]], [z,[y,x]]>`.
pub fn borromean_presentation() -> FinitePresentation {
    parse_presentation("gens: x, y, z\nrels:\n[x, [y, z]]\n[z, [y, x]]\n")
        .expect("fixture parses")
}

/// The Whitehead link, one relator of length 16 and weight 4.
pub fn whitehead_presentation() -> FinitePresentation {
    parse_presentation(
        "gens: x, y\nrels:\nx^-1 y^-1 x y x^-1 y x y^-1 x y x^-1 y^-1 x y^-1 x^-1 y\n",
    )
    .expect("fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_relator_lengths() {
        let t = surface_presentation(1).unwrap();
        assert_eq!(t.canonical_text(), "gens: x1, y1\nrels:\nx1 y1 x1^-1 y1^-1\n");
        for g in 1..=4 {
            let p = surface_presentation(g).unwrap();
            assert_eq!(p.num_generators(), 2 * g);
            assert_eq!(p.relators().len(), 1);
            assert_eq!(p.relators()[0].len(), 4 * g);
            assert!(p.is_commutator_relators());
        }
        assert!(surface_presentation(0).is_err());
    }

    #[test]
    fn seifert_shapes() {
        let p = seifert_presentation(1, &[], 0).unwrap();
        assert_eq!(p.generator_names(), ["x1", "y1", "h"]);
        let x = Word::generator(0);
        let y = Word::generator(1);
        let h = Word::generator(2);
        assert_eq!(p.relators(), [x.commutator(&y), x.commutator(&h), y.commutator(&h)]);

        let p = seifert_presentation(0, &[(2, 1), (3, 1)], -1).unwrap();
        assert_eq!(p.generator_names(), ["z1", "z2", "h"]);
        assert_eq!(p.relators().len(), 5);
        assert_eq!(p.relators()[0], Word::from_letters([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(p.relators()[1], Word::from_letters([(0, 2), (2, 1)]));

        assert!(seifert_presentation(1, &[(4, 2)], 0).is_err());
        assert!(seifert_presentation(1, &[(1, 1)], 0).is_err());
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(seifert_euler(&[], 0), qi(0));
        assert_eq!(seifert_euler(&[(2, 1)], 0), q(-1, 2));
        assert_eq!(seifert_euler(&[(2, 1), (3, 2)], 1), q(-13, 6));
        assert_eq!(seifert_euler(&[(2, 1), (2, -1)], 0), qi(0));
    }

    #[test]
    fn fixtures() {
        assert_eq!(whitehead_presentation().relators()[0].len(), 16);
        let b = borromean_presentation();
        assert_eq!(b.relators().len(), 2);
        assert!(b.is_commutator_relators());
    }
}
