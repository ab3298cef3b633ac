//! The negative nilpotent part of a Kac–Moody algebra up to a height cutoff,
//! presented as the free Lie algebra modulo the Serre ideal.

pub mod free_lie;
pub mod lyndon;
pub mod pbw;
pub mod tables;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cartan::{height, offset_cmp, sub_offsets, unit, CartanDatum, Offset, ParabolicType, RootDatum};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::Q;
use free_lie::{raise_assoc, Assoc, FreeLie, LieCoords};
use lyndon::{lyndon_words, LieTree, Word};

/// Index of a root vector `F_{β,a}` in the global basis.
pub type RootId = usize;

/// Sparse combination of root vectors.
pub type LieVec = Vec<(RootId, Q)>;

/// Graded piece of the Serre ideal in RREF, with columns indexed by the
/// Lyndon words of the degree in reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPiece {
    pub rows: Vec<Vec<(usize, Q)>>,
    pub pivots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSpace {
    pub beta: Offset,
    /// All Lyndon words of content `β`, sorted.
    pub lyndon: Vec<Word>,
    pub ideal: IdealPiece,
    /// Surviving words, sorted; `F_{β,a}` is the bracketing of `basis[a]`.
    pub basis: Vec<Word>,
}

impl RootSpace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a free Lie element of degree `β` in the quotient basis.
    pub fn reduce(&self, x: &LieCoords) -> Vec<Q> {
        let n = self.lyndon.len();
        let col = |w: &Word| n - 1 - self.lyndon.binary_search(w).expect("word of this content");
        let mut v = vec![Q::zero(); n];
        for (w, c) in x {
            v[col(w)] = c.clone();
        }
        for (row, &p) in self.ideal.rows.iter().zip(&self.ideal.pivots) {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, r) in row {
                v[*j] -= &(&f * r);
            }
        }
        self.basis.iter().map(|w| v[col(w)].clone()).collect()
    }
}

/// Result of `[e_i, F]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Raised {
    /// A multiple of `α_i^∨`.
    Coroot(Q),
    Roots(LieVec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootVector {
    pub beta: Offset,
    pub word: Word,
}

/// Construction limits.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_free_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_free_dim: 400_000 }
    }
}

/// `n⁻` up to height `H` with its structure constants. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLie {
    datum: CartanDatum,
    cutoff: usize,
    spaces: BTreeMap<Offset, RootSpace>,
    roots: Vec<RootVector>,
    first_id: BTreeMap<Offset, RootId>,
    brackets: HashMap<(RootId, RootId), LieVec>,
    raises: Vec<Vec<Option<Raised>>>,
    trees: Vec<LieTree>,
}

pub fn build_graded_lie(datum: &CartanDatum, cutoff: usize) -> Result<GradedLie> {
    build_graded_lie_with(datum, cutoff, Budget::default())
}

pub fn build_graded_lie_with(datum: &CartanDatum, cutoff: usize, budget: Budget) -> Result<GradedLie> {
    let mut fl = FreeLie::new();
    let mut spaces: BTreeMap<Offset, RootSpace> = BTreeMap::new();
    let mut free_total = 0usize;
    for beta in datum.root_candidates(cutoff) {
        let lyndon = lyndon_words(&beta);
        free_total += lyndon.len();
        if free_total > budget.max_free_dim {
            return Err(Error::BudgetExceeded(format!(
                "free Lie algebra dimension exceeds {} below height {cutoff}",
                budget.max_free_dim
            )));
        }
        let space = if height(&beta) == 1 {
            RootSpace {
                beta: beta.clone(),
                basis: lyndon.clone(),
                lyndon,
                ideal: IdealPiece { rows: vec![], pivots: vec![] },
            }
        } else {
            serre_piece(datum, &beta, lyndon, &spaces, &mut fl)
        };
        spaces.insert(beta, space);
    }
    assemble(datum.clone(), cutoff, spaces, &mut fl)
}

fn serre_element(a: &[Vec<i64>], i: usize, j: usize, fl: &mut FreeLie) -> LieCoords {
    let mut x = LieCoords::from([(vec![j as u8], Q::one())]);
    for _ in 0..(1 - a[i][j]) {
        x = fl.ad_letter(i as u8, &x);
    }
    x
}

/// The ideal at `β` is spanned by Serre elements of content `β` and by
/// `[f_k, v]` for `v` in the ideal at `β − e_k`.
fn serre_piece(
    datum: &CartanDatum,
    beta: &[i64],
    lyndon: Vec<Word>,
    below: &BTreeMap<Offset, RootSpace>,
    fl: &mut FreeLie,
) -> RootSpace {
    let n = datum.rank();
    let ncols = lyndon.len();
    let full = || IdealPiece { rows: (0..ncols).map(|c| vec![(c, Q::one())]).collect(), pivots: (0..ncols).collect() };
    let preds: Vec<(usize, &RootSpace)> = (0..n)
        .filter(|&k| beta[k] > 0)
        .filter_map(|k| below.get(&sub_offsets(beta, &unit(n, k))).map(|s| (k, s)))
        .collect();
    if ncols == 0 || preds.iter().all(|(_, s)| s.multiplicity() == 0) {
        return RootSpace { beta: beta.to_vec(), lyndon, ideal: full(), basis: vec![] };
    }
    let a = datum.matrix();
    let mut generators: Vec<LieCoords> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut content = vec![0i64; n];
            content[i] += 1 - a[i][j];
            content[j] += 1;
            if content == beta {
                generators.push(serre_element(a, i, j, fl));
            }
        }
    }
    for (k, pred) in preds {
        let m = pred.lyndon.len();
        for (row, _) in pred.ideal.rows.iter().zip(&pred.ideal.pivots) {
            let v: LieCoords = row.iter().map(|(c, q)| (pred.lyndon[m - 1 - c].clone(), q.clone())).collect();
            generators.push(fl.ad_letter(k as u8, &v));
        }
    }
    let col = |w: &Word| ncols - 1 - lyndon.binary_search(w).expect("word of this content");
    let mut mat = Mat::zeros(generators.len(), ncols);
    for (r, g) in generators.iter().enumerate() {
        for (w, c) in g {
            mat.set(r, col(w), c.clone());
        }
    }
    let rref = mat.rref();
    let rows = (0..rref.pivots.len())
        .map(|r| {
            rref.reduced.row(r).iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(j, q)| (j, q.clone())).collect()
        })
        .collect();
    let basis = lyndon.iter().filter(|w| !rref.pivots.contains(&col(w))).cloned().collect();
    RootSpace { beta: beta.to_vec(), lyndon, ideal: IdealPiece { rows, pivots: rref.pivots }, basis }
}

fn assemble(
    datum: CartanDatum,
    cutoff: usize,
    spaces: BTreeMap<Offset, RootSpace>,
    fl: &mut FreeLie,
) -> Result<GradedLie> {
    let mut order: Vec<&RootSpace> = spaces.values().filter(|s| s.multiplicity() > 0).collect();
    order.sort_by(|a, b| offset_cmp(&a.beta, &b.beta));
    let mut roots = Vec::new();
    let mut first_id = BTreeMap::new();
    for s in order {
        first_id.insert(s.beta.clone(), roots.len());
        for w in &s.basis {
            roots.push(RootVector { beta: s.beta.clone(), word: w.clone() });
        }
    }
    let trees = roots.iter().map(|r| LieTree::of_word(&r.word)).collect();
    let mut g = GradedLie { datum, cutoff, spaces, roots, first_id, brackets: HashMap::new(), raises: vec![], trees };
    let ids = g.roots.len();
    for x in 0..ids {
        for y in x + 1..ids {
            if let Some(v) = g.derive_bracket(x, y, fl) {
                g.brackets.insert((x, y), v);
            }
        }
    }
    let rank = g.datum.rank();
    g.raises = (0..rank).map(|i| (0..ids).map(|x| g.derive_raise(i, x, fl)).collect()).collect();
    Ok(g)
}

impl GradedLie {
    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn spaces(&self) -> &BTreeMap<Offset, RootSpace> {
        &self.spaces
    }

    pub fn multiplicity(&self, beta: &[i64]) -> usize {
        self.spaces.get(beta).map_or(0, RootSpace::multiplicity)
    }

    pub fn root_datum(&self) -> RootDatum {
        RootDatum {
            cutoff: self.cutoff,
            multiplicities: self.spaces.iter().map(|(b, s)| (b.clone(), s.multiplicity())).collect(),
        }
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, id: RootId) -> &RootVector {
        &self.roots[id]
    }

    pub fn tree(&self, id: RootId) -> &LieTree {
        &self.trees[id]
    }

    pub fn weight(&self, id: RootId) -> &Offset {
        &self.roots[id].beta
    }

    /// Ids of the basis of `g_{−β}`.
    pub fn ids_of(&self, beta: &[i64]) -> std::ops::Range<RootId> {
        match self.first_id.get(beta) {
            Some(&s) => s..s + self.multiplicity(beta),
            None => 0..0,
        }
    }

    /// The Chevalley generator `f_i`.
    pub fn simple_id(&self, i: usize) -> RootId {
        self.first_id[&unit(self.rank(), i)]
    }

    /// Ids whose root lies in `ZΞ` (the negative part of `l_Ξ`).
    pub fn levi_ids(&self, xi: &ParabolicType) -> Vec<RootId> {
        (0..self.roots.len()).filter(|&x| xi.supports(&self.roots[x].beta)).collect()
    }

    /// Ids whose root lies in `ZΨ` but not in `ZΞ` (the negative part of
    /// `u_Ξ ∩ l_Ψ`).
    pub fn nilradical_ids(&self, xi: &ParabolicType, psi: &ParabolicType) -> Vec<RootId> {
        (0..self.roots.len())
            .filter(|&x| psi.supports(&self.roots[x].beta) && !xi.supports(&self.roots[x].beta))
            .collect()
    }

    /// Whether every root of height `h` is known: either `h` is within the
    /// cutoff or the algebra has no roots at the cutoff (hence none above).
    pub fn covers_height(&self, h: i64) -> bool {
        h <= self.cutoff as i64 || self.roots.last().is_none_or(|r| height(&r.beta) < self.cutoff as i64)
    }

    fn require_height(&self, beta: &[i64]) -> Result<()> {
        if !self.covers_height(height(beta)) {
            Err(Error::TruncationOverflow { offset: beta.to_vec(), height: height(beta), cutoff: self.cutoff })
        } else {
            Ok(())
        }
    }

    /// `[F_x, F_y]` in the root-vector basis.
    pub fn bracket(&self, x: RootId, y: RootId) -> Result<LieVec> {
        let beta: Offset = self.roots[x].beta.iter().zip(&self.roots[y].beta).map(|(a, b)| a + b).collect();
        self.require_height(&beta)?;
        Ok(match x.cmp(&y) {
            std::cmp::Ordering::Equal => vec![],
            std::cmp::Ordering::Less => self.brackets.get(&(x, y)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => {
                self.brackets.get(&(y, x)).map(|v| v.iter().map(|(k, c)| (*k, -c)).collect()).unwrap_or_default()
            }
        })
    }

    /// `[e_i, F_x]`.
    pub fn raise(&self, i: usize, x: RootId) -> Option<&Raised> {
        self.raises[i][x].as_ref()
    }

    /// Sign `ε` with `τ(F_x) = ε E_x`, where `E_x` is the same bracketing in
    /// the `e_i`.
    pub fn tau_sign(&self, x: RootId) -> Q {
        if self.roots[x].word.len() % 2 == 1 {
            Q::one()
        } else {
            -Q::one()
        }
    }

    fn to_lie_vec(&self, beta: &[i64], coords: Vec<Q>) -> LieVec {
        let start = self.first_id.get(beta).copied().unwrap_or(0);
        coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (start + a, c)).collect()
    }

    fn derive_bracket(&self, x: RootId, y: RootId, fl: &mut FreeLie) -> Option<LieVec> {
        let beta: Offset = self.roots[x].beta.iter().zip(&self.roots[y].beta).map(|(a, b)| a + b).collect();
        let space = self.spaces.get(&beta)?;
        if space.multiplicity() == 0 {
            return None;
        }
        let px = LieCoords::from([(self.roots[x].word.clone(), Q::one())]);
        let py = LieCoords::from([(self.roots[y].word.clone(), Q::one())]);
        let v = self.to_lie_vec(&beta, space.reduce(&fl.bracket(&px, &py)));
        (!v.is_empty()).then_some(v)
    }

    fn derive_raise(&self, i: usize, x: RootId, fl: &mut FreeLie) -> Option<Raised> {
        let beta = &self.roots[x].beta;
        if beta[i] == 0 {
            return None;
        }
        if height(beta) == 1 {
            return Some(Raised::Coroot(Q::one()));
        }
        let target = sub_offsets(beta, &unit(self.rank(), i));
        let space = self.spaces.get(&target)?;
        if space.multiplicity() == 0 {
            return None;
        }
        let p: Assoc = fl.expand(&self.roots[x].word);
        let raised = fl.decompose(raise_assoc(&p, i as u8, self.datum.matrix()));
        let v = self.to_lie_vec(&target, space.reduce(&raised));
        (!v.is_empty()).then_some(Raised::Roots(v))
    }

    /// Recomputes a stored bracket entry from the free Lie algebra and the
    /// stored ideal rows.
    pub fn rederive_bracket(&self, x: RootId, y: RootId) -> LieVec {
        let mut fl = FreeLie::new();
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let v = self.derive_bracket(a, b, &mut fl).unwrap_or_default();
        if x < y {
            v
        } else {
            v.into_iter().map(|(k, c)| (k, -c)).collect()
        }
    }

    pub fn rederive_raise(&self, i: usize, x: RootId) -> Option<Raised> {
        self.derive_raise(i, x, &mut FreeLie::new())
    }

    /// Stored bracket entries `(x, y)` with `x < y`, sorted.
    pub fn bracket_entries(&self) -> Vec<((RootId, RootId), &LieVec)> {
        let mut v: Vec<_> = self.brackets.iter().map(|(k, v)| (*k, v)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub(crate) fn from_parts(
        datum: CartanDatum,
        cutoff: usize,
        spaces: BTreeMap<Offset, RootSpace>,
        brackets: HashMap<(RootId, RootId), LieVec>,
        raise_entries: Vec<(usize, RootId, Raised)>,
    ) -> Result<GradedLie> {
        let mut order: Vec<&RootSpace> = spaces.values().filter(|s| s.multiplicity() > 0).collect();
        order.sort_by(|a, b| offset_cmp(&a.beta, &b.beta));
        let mut roots = Vec::new();
        let mut first_id = BTreeMap::new();
        for s in order {
            first_id.insert(s.beta.clone(), roots.len());
            for w in &s.basis {
                roots.push(RootVector { beta: s.beta.clone(), word: w.clone() });
            }
        }
        let mut raises = vec![vec![None; roots.len()]; datum.rank()];
        for (i, x, r) in raise_entries {
            if i >= datum.rank() || x >= roots.len() {
                return Err(Error::Parse(format!("raising entry ({i}, {x}) out of range")));
            }
            raises[i][x] = Some(r);
        }
        if brackets.keys().any(|&(x, y)| x >= y || y >= roots.len()) {
            return Err(Error::Parse("bracket entry out of range".into()));
        }
        let trees = roots.iter().map(|r| LieTree::of_word(&r.word)).collect();
        Ok(GradedLie { datum, cutoff, spaces, roots, first_id, brackets, raises, trees })
    }

    pub(crate) fn raises_table(&self) -> &[Vec<Option<Raised>>] {
        &self.raises
    }

    /// Bracket of two general elements.
    pub fn bracket_vec(&self, x: &LieVec, y: &LieVec) -> Result<LieVec> {
        let mut acc: BTreeMap<RootId, Q> = BTreeMap::new();
        for (a, c) in x {
            for (b, d) in y {
                for (k, e) in self.bracket(*a, *b)? {
                    *acc.entry(k).or_insert_with(Q::zero) += &(&(c * d) * &e);
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}
