//! PBW monomials in enveloping algebras of graded subalgebras of `n⁻`, and
//! left multiplication in `U(n⁻)` by straightening.

use std::collections::{BTreeMap, HashMap};

use super::{GradedLie, RootId};
use crate::cartan::{is_nonneg, sub_offsets, Offset};
use crate::error::Result;
use crate::rational::Q;

/// Non-decreasing sequence of root-vector ids.
pub type Monomial = Vec<RootId>;

/// Sparse element of `U(n⁻)` in the PBW basis.
pub type PbwVec = BTreeMap<Monomial, Q>;

/// All monomials over `ids` of total weight `β`, in lexicographic order.
pub fn pbw_monomials(lie: &GradedLie, ids: &[RootId], beta: &[i64]) -> Vec<Monomial> {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    enumerate(lie, &sorted, 0, beta.to_vec(), &mut vec![], &mut out);
    out
}

fn enumerate(
    lie: &GradedLie,
    ids: &[RootId],
    start: usize,
    rest: Offset,
    prefix: &mut Monomial,
    out: &mut Vec<Monomial>,
) {
    if rest.iter().all(|&x| x == 0) {
        out.push(prefix.clone());
        return;
    }
    for k in start..ids.len() {
        let next = sub_offsets(&rest, lie.weight(ids[k]));
        if is_nonneg(&next) {
            prefix.push(ids[k]);
            enumerate(lie, ids, k, next, prefix, out);
            prefix.pop();
        }
    }
}

pub fn monomial_weight(lie: &GradedLie, m: &[RootId]) -> Offset {
    let mut w = vec![0; lie.rank()];
    for &x in m {
        for (a, b) in w.iter_mut().zip(lie.weight(x)) {
            *a += b;
        }
    }
    w
}

pub(crate) fn add_into(acc: &mut PbwVec, m: Monomial, c: Q) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
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

/// Memoized left multiplication. Ids are ordered by height first, so a
/// bracket always sorts after both of its arguments.
pub struct Straightener<'a> {
    lie: &'a GradedLie,
    cache: HashMap<(RootId, Monomial), PbwVec>,
}

impl<'a> Straightener<'a> {
    pub fn new(lie: &'a GradedLie) -> Self {
        Straightener { lie, cache: HashMap::new() }
    }

    /// `y · m`.
    pub fn mul(&mut self, y: RootId, m: &[RootId]) -> Result<PbwVec> {
        if m.is_empty() || y <= m[0] {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(y);
            v.extend_from_slice(m);
            return Ok(PbwVec::from([(v, Q::one())]));
        }
        let key = (y, m.to_vec());
        if let Some(r) = self.cache.get(&key) {
            return Ok(r.clone());
        }
        let (m0, rest) = (m[0], &m[1..]);
        let mut out = PbwVec::new();
        for (n, c) in self.mul(y, rest)? {
            let mut v = Vec::with_capacity(n.len() + 1);
            v.push(m0);
            v.extend(n);
            add_into(&mut out, v, c);
        }
        for (z, c) in self.lie.bracket(y, m0)? {
            for (n, d) in self.mul(z, rest)? {
                add_into(&mut out, n, &c * &d);
            }
        }
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    /// `x_1 ⋯ x_k · v`.
    pub fn left_mul_word(&mut self, word: &[RootId], v: &PbwVec) -> Result<PbwVec> {
        let mut cur = v.clone();
        for &x in word.iter().rev() {
            let mut next = PbwVec::new();
            for (m, c) in &cur {
                for (n, d) in self.mul(x, m)? {
                    add_into(&mut next, n, c * &d);
                }
            }
            cur = next;
        }
        Ok(cur)
    }
}
