//! Lyndon words and their standard bracketings.

use serde::Serialize;

/// All Lyndon words of length `1..=max_len` over `b` letters, grouped by
/// length, each group in lexicographic order (Duval's algorithm).
pub fn lyndon_words(b: usize, max_len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new(); max_len];
    if b == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out[w.len() - 1].push(w.clone());
        // extend periodically to max_len, then increment the last letter
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == b - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    for group in &mut out {
        group.sort();
    }
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// The standard factorization `w = u v` of a Lyndon word of length at
/// least 2: `v` is the longest proper suffix that is Lyndon. Returns the
/// split position.
pub fn standard_split(w: &[usize]) -> usize {
    debug_assert!(w.len() >= 2);
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("the last letter is Lyndon")
}

/// Word code `sum_p w[p] b^(k-1-p)`; for fixed length numeric order is
/// lexicographic order.
pub fn encode(w: &[usize], b: usize) -> u64 {
    w.iter().fold(0u64, |acc, &c| acc * b as u64 + c as u64)
}

pub fn decode(mut code: u64, b: usize, len: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    for p in (0..len).rev() {
        w[p] = (code % b as u64) as usize;
        code /= b as u64;
    }
    w
}

/// Lyndon words by degree, with their codes for lookup.
#[derive(Clone, Debug, Serialize)]
pub struct LyndonBasis {
    b: usize,
    max_degree: usize,
    words: Vec<Vec<Vec<usize>>>,
    #[serde(skip)]
    codes: Vec<Vec<u64>>,
}

impl LyndonBasis {
    pub fn new(b: usize, max_degree: usize) -> Self {
        let words = lyndon_words(b, max_degree);
        let codes = words
            .iter()
            .map(|g| g.iter().map(|w| encode(w, b)).collect())
            .collect();
        LyndonBasis { b, max_degree, words, codes }
    }

    pub fn num_generators(&self) -> usize {
        self.b
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Lyndon words of length `k` in lexicographic order.
    pub fn words(&self, k: usize) -> &[Vec<usize>] {
        &self.words[k - 1]
    }

    pub fn dim(&self, k: usize) -> usize {
        if k == 0 || k > self.max_degree {
            return 0;
        }
        self.words[k - 1].len()
    }

    /// Counts for degrees `1..=max_degree`.
    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(|g| g.len()).collect()
    }

    pub fn code(&self, k: usize, idx: usize) -> u64 {
        self.codes[k - 1][idx]
    }

    /// Position of the word with the given code among the Lyndon words of
    /// length `k`.
    pub fn index_of_code(&self, k: usize, code: u64) -> Option<usize> {
        self.codes[k - 1].binary_search(&code).ok()
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        if w.is_empty() || w.len() > self.max_degree {
            return None;
        }
        self.index_of_code(w.len(), encode(w, self.b))
    }

    /// Bracketed form of a Lyndon word, e.g. `[x1,[x1,x2]]`.
    pub fn bracketing(&self, w: &[usize], names: &[String]) -> String {
        if w.len() == 1 {
            return names.get(w[0]).cloned().unwrap_or_else(|| format!("y{}", w[0] + 1));
        }
        let s = standard_split(w);
        format!("[{},{}]", self.bracketing(&w[..s], names), self.bracketing(&w[s..], names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(b: usize, k: usize) -> Vec<Vec<usize>> {
        let total = (b as u64).pow(k as u32);
        (0..total).map(|c| decode(c, b, k)).filter(|w| is_lyndon(w)).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(LyndonBasis::new(2, 3).dims(), vec![2, 1, 2]);
        assert_eq!(LyndonBasis::new(1, 3).dims(), vec![1, 0, 0]);
        assert_eq!(LyndonBasis::new(3, 2).dims(), vec![3, 3]);
        let l = LyndonBasis::new(2, 3);
        assert_eq!(l.words(2), [vec![0, 1]]);
        assert_eq!(l.words(3), [vec![0, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn duval_matches_brute_force() {
        for b in 1..=4 {
            let l = lyndon_words(b, 6);
            for k in 1..=6 {
                assert_eq!(l[k - 1], brute_force(b, k), "b={b} k={k}");
            }
        }
    }

    #[test]
    fn standard_factorizations() {
        assert_eq!(standard_split(&[0, 1]), 1);
        assert_eq!(standard_split(&[0, 0, 1]), 1);
        assert_eq!(standard_split(&[0, 1, 1]), 2);
        assert_eq!(standard_split(&[0, 0, 1, 0, 1]), 3);
        let l = LyndonBasis::new(2, 5);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(l.bracketing(&[0, 0, 1, 0, 1], &names), "[[x,[x,y]],[x,y]]");
    }

    #[test]
    fn codes_round_trip() {
        let w = vec![2, 0, 1, 2];
        assert_eq!(decode(encode(&w, 3), 3, 4), w);
        let l = LyndonBasis::new(3, 4);
        for (i, w) in l.words(4).iter().enumerate() {
            assert_eq!(l.index_of(w), Some(i));
        }
        assert_eq!(l.index_of(&[1, 0]), None);
    }
}
