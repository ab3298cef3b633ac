//! The free Lie algebra on `f_1..f_n`, realized inside the free associative
//! algebra. Lie elements are stored in Lyndon coordinates.

use std::collections::{BTreeMap, HashMap};

use super::lyndon::{standard_factorization, Word};
use crate::rational::Q;

/// Noncommutative polynomial in the letters.
pub type Assoc = BTreeMap<Word, Q>;

/// Coordinates with respect to the Lyndon bracketings `P_w`.
pub type LieCoords = BTreeMap<Word, Q>;

fn add_term(p: &mut Assoc, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let v = e.get() + &c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

pub fn commutator(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, x) in a {
        for (v, y) in b {
            let c = x * y;
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            add_term(&mut out, uv, c.clone());
            let mut vu = v.clone();
            vu.extend_from_slice(u);
            add_term(&mut out, vu, -c);
        }
    }
    out
}

/// Memoized expansions of Lyndon bracketings.
#[derive(Default)]
pub struct FreeLie {
    expansions: HashMap<Word, Assoc>,
}

impl FreeLie {
    pub fn new() -> Self {
        Self::default()
    }

    /// `P_w` as a polynomial; its lex-smallest word is `w` with coefficient 1.
    pub fn expand(&mut self, w: &[u8]) -> Assoc {
        if let Some(p) = self.expansions.get(w) {
            return p.clone();
        }
        let p = match standard_factorization(w) {
            None => Assoc::from([(w.to_vec(), Q::one())]),
            Some((u, v)) => {
                let (pu, pv) = (self.expand(u), self.expand(v));
                commutator(&pu, &pv)
            }
        };
        self.expansions.insert(w.to_vec(), p.clone());
        p
    }

    pub fn expand_coords(&mut self, x: &LieCoords) -> Assoc {
        let mut out = Assoc::new();
        for (w, c) in x {
            for (u, d) in self.expand(w) {
                add_term(&mut out, u, c * &d);
            }
        }
        out
    }

    /// Inverse of [`Self::expand_coords`] on Lie polynomials.
    ///
    /// Panics if `p` is not a Lie polynomial.
    pub fn decompose(&mut self, mut p: Assoc) -> LieCoords {
        let mut out = LieCoords::new();
        while let Some((w, c)) = p.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let pw = self.expand(&w);
            assert!(pw.keys().next() == Some(&w), "not a Lie polynomial: leading word {w:?}");
            for (u, d) in pw {
                add_term(&mut p, u, -(&c * &d));
            }
            out.insert(w, c);
        }
        out
    }

    pub fn bracket(&mut self, x: &LieCoords, y: &LieCoords) -> LieCoords {
        let (a, b) = (self.expand_coords(x), self.expand_coords(y));
        self.decompose(commutator(&a, &b))
    }

    /// `[f_k, x]`.
    pub fn ad_letter(&mut self, k: u8, x: &LieCoords) -> LieCoords {
        let letter = LieCoords::from([(vec![k], Q::one())]);
        self.bracket(&letter, x)
    }
}

/// `[e_i, x]` on the associative expansion of a Lie element of degree ≥ 2,
/// where `[e_i, f_j] = δ_ij h_i` and `[h_i, f_j] = −A[i][j] f_j`.
pub fn raise_assoc(p: &Assoc, i: u8, a: &[Vec<i64>]) -> Assoc {
    let row = &a[i as usize];
    let mut out = Assoc::new();
    for (w, c) in p {
        let mut suffix = 0i64;
        for t in (0..w.len()).rev() {
            if w[t] == i && suffix != 0 {
                let mut v = w.clone();
                v.remove(t);
                add_term(&mut out, v, c * &Q::from_int(-suffix));
            }
            suffix += row[w[t] as usize];
        }
    }
    out
}
