//! Lyndon words and their standard bracketings.

use std::fmt;

/// Letters are 0-based simple-root indices.
pub type Word = Vec<u8>;

/// Strictly smaller than every proper suffix.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < &w[k..])
}

/// `w = uv` with `v` the longest proper Lyndon suffix. `None` for letters.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&k| is_lyndon(&w[k..])).map(|k| w.split_at(k))
}

/// All Lyndon words with letter multiplicities `content`, lexicographically
/// sorted.
pub fn lyndon_words(content: &[i64]) -> Vec<Word> {
    let mut letters: Word = Vec::new();
    for (i, &c) in content.iter().enumerate() {
        letters.extend(std::iter::repeat_n(i as u8, c.max(0) as usize));
    }
    if letters.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    loop {
        if is_lyndon(&letters) {
            out.push(letters.clone());
        }
        if !next_permutation(&mut letters) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Bracketing of a Lyndon word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LieTree {
    Letter(u8),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn of_word(w: &[u8]) -> LieTree {
        match standard_factorization(w) {
            None => LieTree::Letter(w[0]),
            Some((u, v)) => LieTree::Bracket(Box::new(Self::of_word(u)), Box::new(Self::of_word(v))),
        }
    }

    /// Letter multiplicities.
    pub fn content(&self, rank: usize) -> Vec<i64> {
        let mut c = vec![0; rank];
        self.add_content(&mut c);
        c
    }

    fn add_content(&self, c: &mut [i64]) {
        match self {
            LieTree::Letter(i) => c[*i as usize] += 1,
            LieTree::Bracket(a, b) => {
                a.add_content(c);
                b.add_content(c);
            }
        }
    }
}

impl fmt::Display for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieTree::Letter(i) => write!(f, "{}", i + 1),
            LieTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
