//! Oracles that share no code with the engine beyond the input matrix.

#![allow(dead_code)]

pub mod props;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Lattice = Vec<i64>;
type Series = BTreeMap<Lattice, i64>;

fn ht(b: &[i64]) -> i64 {
    b.iter().sum()
}

/// Non-zero `β ∈ Z_{≥0}^n` with `ht β ≤ h`, by height then lex.
pub fn candidates(n: usize, h: i64) -> Vec<Lattice> {
    let mut out = vec![vec![0; n]];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|b| {
                let room = h - ht(&b);
                (0..=room).map(move |k| {
                    let mut c = b.clone();
                    c[i] = k;
                    c
                })
            })
            .collect();
    }
    out.retain(|b| ht(b) > 0);
    out.sort_by(|a, b| ht(a).cmp(&ht(b)).then_with(|| a.cmp(b)));
    out
}

/// `Σ_w ε(w) e^{wρ−ρ}` as `ν = ρ − wρ ↦ ε(w)`, for `ht ν ≤ h`.
fn weyl_alternant(a: &[Vec<i64>], h: i64) -> Series {
    let n = a.len();
    let mut seen: BTreeMap<Lattice, i64> = BTreeMap::from([(vec![0; n], 1)]);
    let mut frontier = vec![vec![0i64; n]];
    while let Some(nu) = frontier.pop() {
        let sign = seen[&nu];
        for i in 0..n {
            let pairing: i64 = 1 - (0..n).map(|j| a[i][j] * nu[j]).sum::<i64>();
            if pairing <= 0 {
                continue;
            }
            let mut next = nu.clone();
            next[i] += pairing;
            if ht(&next) <= h && !seen.contains_key(&next) {
                seen.insert(next.clone(), -sign);
                frontier.push(next);
            }
        }
    }
    seen
}

fn binomial(m: i64, k: i64) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (m - t) / (t + 1))
}

fn mul_truncated(p: &Series, q: &Series, h: i64) -> Series {
    let mut out = Series::new();
    for (a, x) in p {
        for (b, y) in q {
            let c: Lattice = a.iter().zip(b).map(|(s, t)| s + t).collect();
            if ht(&c) <= h {
                *out.entry(c).or_insert(0) += x * y;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Root multiplicities read off `∏_{α>0} (1 − e^{−α})^{m(α)} = Σ_w ε(w) e^{wρ−ρ}`.
pub fn denominator_multiplicities(a: &[Vec<i64>], h: i64) -> BTreeMap<Lattice, i64> {
    let n = a.len();
    let rhs = weyl_alternant(a, h);
    let mut product: Series = Series::from([(vec![0; n], 1)]);
    let mut mults = BTreeMap::new();
    for level in 1..=h {
        let layer: Vec<Lattice> = candidates(n, h).into_iter().filter(|b| ht(b) == level).collect();
        for b in &layer {
            let m = product.get(b).copied().unwrap_or(0) - rhs.get(b).copied().unwrap_or(0);
            assert!(m >= 0, "negative multiplicity at {b:?}");
            mults.insert(b.clone(), m);
        }
        for b in &layer {
            let m = mults[b];
            if m == 0 {
                continue;
            }
            let mut factor = Series::new();
            for k in 0..=m {
                let c: Lattice = b.iter().map(|x| x * k).collect();
                if ht(&c) <= h {
                    factor.insert(c, if k % 2 == 0 { 1 } else { -1 } * binomial(m, k));
                }
            }
            product = mul_truncated(&product, &factor, h);
        }
    }
    mults
}

/// Aperiodic necklaces of content `β`, counted by enumerating every word.
pub fn necklace_count(beta: &[i64]) -> usize {
    let len = ht(beta) as usize;
    if len == 0 {
        return 0;
    }
    let mut words = Vec::new();
    let mut cur = Vec::with_capacity(len);
    let mut left = beta.to_vec();
    fn rec(left: &mut Vec<i64>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, len: usize) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, out, len);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, &mut words, len);
    let primitive =
        |w: &[usize]| (1..len).all(|r| !len.is_multiple_of(r) || (0..len).any(|k| w[k] != w[(k + r) % len]));
    let classes: BTreeSet<Vec<usize>> = words
        .iter()
        .filter(|w| primitive(w))
        .map(|w| (0..len).map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>()).min().expect("non-empty"))
        .collect();
    classes.len()
}

/// Coefficients of `∏_γ (1 − e^{−γ})^{−m(γ)}` up to height `h`.
pub fn kostant_series(roots: &[(Lattice, usize)], n: usize, h: i64) -> BTreeMap<Lattice, u64> {
    let mut c: BTreeMap<Lattice, u64> = BTreeMap::from([(vec![0; n], 1)]);
    let all = candidates(n, h);
    for (g, m) in roots {
        for _ in 0..*m {
            for b in &all {
                let prev: Lattice = b.iter().zip(g).map(|(x, y)| x - y).collect();
                if prev.iter().all(|&x| x >= 0) {
                    let add = c.get(&prev).copied().unwrap_or(0);
                    *c.entry(b.clone()).or_insert(0) += add;
                }
            }
        }
    }
    c
}

/// sl3 Kostant partition count by direct enumeration over `{α1, α2, α1+α2}`.
pub fn sl3_kostant(beta: &[i64]) -> usize {
    (0..=beta[0].min(beta[1])).filter(|z| beta[0] - z >= 0 && beta[1] - z >= 0).count()
}

fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                let (src, dst) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, s) in dst[c..].iter_mut().zip(&src[c..]) {
                    *d -= &f * s;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim L(λ)_{λ−β}` as the rank of the contravariant form on all words
/// `f_{i1}⋯f_{ik} v`, computed from `⟨f_i u, w⟩ = ⟨u, e_i w⟩`.
pub struct ShapovalovOracle {
    a: Vec<Vec<i64>>,
    lambda: Vec<BigRational>,
    words: HashMap<Lattice, Vec<Vec<usize>>>,
    grams: HashMap<Lattice, Vec<Vec<BigRational>>>,
}

impl ShapovalovOracle {
    pub fn new(a: &[Vec<i64>], lambda: &[i64]) -> Self {
        let lambda = lambda.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        ShapovalovOracle { a: a.to_vec(), lambda, words: HashMap::new(), grams: HashMap::new() }
    }

    fn words(&mut self, beta: &[i64]) -> Vec<Vec<usize>> {
        if let Some(w) = self.words.get(beta) {
            return w.clone();
        }
        let out = if ht(beta) == 0 {
            vec![vec![]]
        } else {
            let mut out = Vec::new();
            for i in 0..beta.len() {
                if beta[i] > 0 {
                    let mut lower = beta.to_vec();
                    lower[i] -= 1;
                    for w in self.words(&lower) {
                        let mut v = vec![i];
                        v.extend(w);
                        out.push(v);
                    }
                }
            }
            out
        };
        self.words.insert(beta.to_vec(), out.clone());
        out
    }

    /// `e_i` applied to a word, as pairs (shorter word, scalar).
    fn raise(&self, i: usize, w: &[usize]) -> Vec<(Vec<usize>, BigRational)> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            if w[p] != i {
                continue;
            }
            let shift: i64 = w[p + 1..].iter().map(|&j| self.a[i][j]).sum();
            let s = &self.lambda[i] - BigRational::from_integer(BigInt::from(shift));
            if !s.is_zero() {
                let mut v = w[..p].to_vec();
                v.extend_from_slice(&w[p + 1..]);
                out.push((v, s));
            }
        }
        out
    }

    fn gram(&mut self, beta: &[i64]) -> Vec<Vec<BigRational>> {
        if let Some(g) = self.grams.get(beta) {
            return g.clone();
        }
        let words = self.words(beta);
        let g = if ht(beta) == 0 {
            vec![vec![BigRational::one()]]
        } else {
            let mut g = vec![vec![BigRational::zero(); words.len()]; words.len()];
            let mut lower_data = HashMap::new();
            for i in (0..beta.len()).filter(|&i| beta[i] > 0) {
                let mut lower = beta.to_vec();
                lower[i] -= 1;
                let lw = self.words(&lower);
                let index: HashMap<Vec<usize>, usize> = lw.into_iter().enumerate().map(|(k, w)| (w, k)).collect();
                lower_data.insert(i, (index, self.gram(&lower)));
            }
            for (r, u) in words.iter().enumerate() {
                let (index, lg) = &lower_data[&u[0]];
                let ur = index[&u[1..]];
                for (c, w) in words.iter().enumerate() {
                    let mut acc = BigRational::zero();
                    for (v, s) in self.raise(u[0], w) {
                        acc += &s * &lg[ur][index[&v]];
                    }
                    g[r][c] = acc;
                }
            }
            g
        };
        self.grams.insert(beta.to_vec(), g.clone());
        g
    }

    pub fn gram_is_symmetric(&mut self, beta: &[i64]) -> bool {
        let g = self.gram(beta);
        (0..g.len()).all(|r| (0..g.len()).all(|c| g[r][c] == g[c][r]))
    }

    pub fn simple_dim(&mut self, beta: &[i64]) -> usize {
        rank_q(self.gram(beta))
    }
}
