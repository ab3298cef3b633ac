//! Truncated weight modules over `g` or a Levi subalgebra `l_Ξ`, their maps,
//! and the standard constructions on them.

mod highest;
mod induced;
mod ops;
mod window;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

pub use highest::*;
pub use induced::*;
pub use ops::*;
pub use window::Window;

use crate::cartan::{add_offsets, coroot_eval, sub_offsets, unit, Offset, ParabolicType, Weight};
use crate::error::{Error, Result};
use crate::gla::lyndon::LieTree;
use crate::gla::{GradedLie, RootId};
use crate::linalg::Mat;
use crate::rational::Q;

/// Per-generator, per-offset action matrices.
pub type ActionTable = Vec<BTreeMap<Offset, Mat>>;

/// A weight module on a window. Only generators in `active` act; `h` acts on
/// the space at offset `β` by the coroot evaluations of `λ_base − β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    lie: Arc<GradedLie>,
    evals: Vec<Q>,
    active: ParabolicType,
    window: Window,
    dims: BTreeMap<Offset, usize>,
    /// `e[i][β] : V_β → V_{β−e_i}`.
    e: ActionTable,
    /// `f[i][β] : V_β → V_{β+e_i}`.
    f: ActionTable,
}

impl WeightModule {
    pub fn new(
        lie: Arc<GradedLie>,
        evals: Vec<Q>,
        active: ParabolicType,
        window: Window,
        dims: BTreeMap<Offset, usize>,
        e: ActionTable,
        f: ActionTable,
    ) -> Result<Self> {
        let n = lie.rank();
        if evals.len() != n || active.rank() != n || e.len() != n || f.len() != n {
            return Err(Error::DimensionMismatch("module data does not match the rank".into()));
        }
        let dims: BTreeMap<Offset, usize> =
            window.iter().map(|b| (b.clone(), dims.get(b).copied().unwrap_or(0))).collect();
        let m = WeightModule { lie, evals, active, window, dims, e, f };
        for i in 0..n {
            for (b, mat) in &m.e[i] {
                let t = sub_offsets(b, &unit(n, i));
                if mat.shape() != (m.dim(&t), m.dim(b)) || !m.active.contains(i) {
                    return Err(Error::DimensionMismatch(format!("e_{i} at {b:?}")));
                }
            }
            for (b, mat) in &m.f[i] {
                let t = add_offsets(b, &unit(n, i));
                if mat.shape() != (m.dim(&t), m.dim(b)) || !m.active.contains(i) {
                    return Err(Error::DimensionMismatch(format!("f_{i} at {b:?}")));
                }
            }
        }
        Ok(m.pruned())
    }

    fn pruned(mut self) -> Self {
        for table in self.e.iter_mut().chain(self.f.iter_mut()) {
            table.retain(|_, m| !m.is_empty() && !m.is_zero());
        }
        self
    }

    /// The zero module on an empty window.
    pub fn zero(lie: Arc<GradedLie>, evals: Vec<Q>, active: ParabolicType) -> Self {
        let n = lie.rank();
        WeightModule {
            lie,
            evals,
            active,
            window: Window::empty(),
            dims: BTreeMap::new(),
            e: vec![BTreeMap::new(); n],
            f: vec![BTreeMap::new(); n],
        }
    }

    pub fn lie(&self) -> &Arc<GradedLie> {
        &self.lie
    }

    pub fn rank(&self) -> usize {
        self.lie.rank()
    }

    pub fn evals(&self) -> &[Q] {
        &self.evals
    }

    pub fn active(&self) -> &ParabolicType {
        &self.active
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn dims(&self) -> &BTreeMap<Offset, usize> {
        &self.dims
    }

    pub fn dim(&self, beta: &[i64]) -> usize {
        self.dims.get(beta).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn weight_at(&self, beta: &[i64]) -> Weight {
        Weight { evals: self.evals.clone(), offset: beta.to_vec() }
    }

    /// Eigenvalue of `h_i` on the space at `β`.
    pub fn h_eval(&self, i: usize, beta: &[i64]) -> Q {
        coroot_eval(self.lie.datum(), &self.weight_at(beta), i)
    }

    pub fn e_table(&self) -> &ActionTable {
        &self.e
    }

    pub fn f_table(&self) -> &ActionTable {
        &self.f
    }

    /// `e_i` at `β` as a dense matrix (zero when absent).
    pub fn e_mat(&self, i: usize, beta: &[i64]) -> Mat {
        let t = sub_offsets(beta, &unit(self.rank(), i));
        self.e[i].get(beta).cloned().unwrap_or_else(|| Mat::zeros(self.dim(&t), self.dim(beta)))
    }

    pub fn f_mat(&self, i: usize, beta: &[i64]) -> Mat {
        let t = add_offsets(beta, &unit(self.rank(), i));
        self.f[i].get(beta).cloned().unwrap_or_else(|| Mat::zeros(self.dim(&t), self.dim(beta)))
    }

    pub fn same_frame(&self, other: &WeightModule) -> Result<()> {
        if self.evals != other.evals {
            return Err(Error::BaseMismatch);
        }
        if self.lie.cutoff() != other.lie.cutoff() {
            return Err(Error::HeightMismatch(self.lie.cutoff(), other.lie.cutoff()));
        }
        if self.lie.datum() != other.lie.datum() {
            return Err(Error::DimensionMismatch("modules over different algebras".into()));
        }
        Ok(())
    }

    /// Relation checks on the safe core: `[e_i, f_j] = δ_ij h_i` and the
    /// Serre relations among the `e`'s and among the `f`'s, wherever every
    /// intermediate space is in-window. Returns the first failure.
    pub fn check_relations(&self) -> std::result::Result<(), String> {
        let n = self.rank();
        let a = self.lie.datum().matrix();
        let act: Vec<usize> = self.active.iter().collect();
        for beta in self.window.safe_core(&self.active) {
            let d = self.dim(&beta);
            if d == 0 {
                continue;
            }
            for &i in &act {
                for &j in &act {
                    let up = sub_offsets(&add_offsets(&beta, &unit(n, j)), &unit(n, i));
                    let down = sub_offsets(&beta, &unit(n, i));
                    let ef = self.e_mat(i, &add_offsets(&beta, &unit(n, j))).mul(&self.f_mat(j, &beta));
                    let fe = if self.window.contains(&down) {
                        self.f_mat(j, &down).mul(&self.e_mat(i, &beta))
                    } else {
                        Mat::zeros(self.dim(&up), d)
                    };
                    let mut lhs = ef.sub(&fe);
                    if i == j {
                        lhs = lhs.sub(&Mat::identity(d).scale(&self.h_eval(i, &beta)));
                    }
                    if !lhs.is_zero() {
                        return Err(format!("[e_{i}, f_{j}] fails at {beta:?}"));
                    }
                }
            }
            for &i in &act {
                for &j in &act {
                    if i == j {
                        continue;
                    }
                    let k = (1 - a[i][j]) as usize;
                    let mut word = vec![i; k];
                    word.push(j);
                    if !self.serre_holds(&word, &beta, true) {
                        return Err(format!("lowering Serre relation ({i},{j}) fails at {beta:?}"));
                    }
                    if !self.serre_holds(&word, &beta, false) {
                        return Err(format!("raising Serre relation ({i},{j}) fails at {beta:?}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_k (−1)^k C(N,k) x_i^{N−k} x_j x_i^k = 0` at `β`. Lowering checks are
    /// skipped when a partial product leaves the window; raising past the
    /// window is zero.
    fn serre_holds(&self, word: &[usize], beta: &[i64], lowering: bool) -> bool {
        let n = self.rank();
        let (i, j) = (word[0], word[word.len() - 1]);
        let big = word.len() - 1;
        let step = |b: &Offset, g: usize| -> Offset {
            if lowering {
                add_offsets(b, &unit(n, g))
            } else {
                sub_offsets(b, &unit(n, g))
            }
        };
        let mut fin = beta.to_vec();
        for &g in word {
            fin = step(&fin, g);
        }
        if !self.window.contains(&fin) {
            return true;
        }
        let mut total = Mat::zeros(self.dim(&fin), self.dim(beta));
        let mut binom = Q::one();
        for k in 0..=big {
            let mut seq = vec![i; k];
            seq.push(j);
            seq.extend(std::iter::repeat_n(i, big - k));
            let mut cur = beta.to_vec();
            let mut m = Some(Mat::identity(self.dim(beta)));
            for &g in &seq {
                let next = step(&cur, g);
                if !self.window.contains(&next) {
                    if lowering {
                        return true;
                    }
                    m = None;
                    break;
                }
                let a = if lowering { self.f_mat(g, &cur) } else { self.e_mat(g, &cur) };
                m = m.map(|m| a.mul(&m));
                cur = next;
            }
            if let Some(m) = m {
                let c = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
                total = total.add(&m.scale(&c));
            }
            binom = &(&binom * &Q::from_int((big - k) as i64)) / &Q::from_int((k + 1) as i64);
        }
        total.is_zero()
    }
}

/// Memoized root-vector operators on a module, assembled as nested
/// commutators of generator matrices along Lyndon bracketings.
pub struct RootOps<'a> {
    module: &'a WeightModule,
    cache: HashMap<(LieTree, Offset, bool), Mat>,
}

impl<'a> RootOps<'a> {
    pub fn new(module: &'a WeightModule) -> Self {
        RootOps { module, cache: HashMap::new() }
    }

    pub fn module(&self) -> &WeightModule {
        self.module
    }

    /// `F_x` at `β`: `V_β → V_{β+wt(x)}`.
    pub fn lower(&mut self, x: RootId, beta: &[i64]) -> Mat {
        let t = self.module.lie.tree(x).clone();
        self.tree_op(&t, beta, true)
    }

    /// `E_x` at `β`: `V_β → V_{β−wt(x)}`.
    pub fn raise(&mut self, x: RootId, beta: &[i64]) -> Mat {
        let t = self.module.lie.tree(x).clone();
        self.tree_op(&t, beta, false)
    }

    /// `τ(F_x) = ε E_x` at `β`.
    pub fn tau(&mut self, x: RootId, beta: &[i64]) -> Mat {
        let s = self.module.lie.tau_sign(x);
        self.raise(x, beta).scale(&s)
    }

    fn shift(&self, beta: &[i64], t: &LieTree, lowering: bool) -> Offset {
        let c = t.content(self.module.rank());
        if lowering {
            add_offsets(beta, &c)
        } else {
            sub_offsets(beta, &c)
        }
    }

    fn tree_op(&mut self, t: &LieTree, beta: &[i64], lowering: bool) -> Mat {
        let key = (t.clone(), beta.to_vec(), lowering);
        if let Some(m) = self.cache.get(&key) {
            return m.clone();
        }
        let target = self.shift(beta, t, lowering);
        let m = if !self.module.window.contains(beta) || !self.module.window.contains(&target) {
            Mat::zeros(self.module.dim(&target), self.module.dim(beta))
        } else {
            match t {
                LieTree::Letter(i) => {
                    let i = *i as usize;
                    if lowering {
                        self.module.f_mat(i, beta)
                    } else {
                        self.module.e_mat(i, beta)
                    }
                }
                LieTree::Bracket(a, b) => {
                    let mid_b = self.shift(beta, b, lowering);
                    let mid_a = self.shift(beta, a, lowering);
                    let ab = self.tree_op(a, &mid_b, lowering).mul(&self.tree_op(b, beta, lowering));
                    let ba = self.tree_op(b, &mid_a, lowering).mul(&self.tree_op(a, beta, lowering));
                    ab.sub(&ba)
                }
            }
        };
        self.cache.insert(key, m.clone());
        m
    }
}

/// An offset-preserving linear map between two modules on the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    /// `blocks[β] : source_β → target_β`; absent blocks are zero.
    pub blocks: BTreeMap<Offset, Mat>,
    pub source_dims: BTreeMap<Offset, usize>,
    pub target_dims: BTreeMap<Offset, usize>,
}

impl ModuleMap {
    pub fn block(&self, beta: &[i64]) -> Mat {
        let s = self.source_dims.get(beta).copied().unwrap_or(0);
        let t = self.target_dims.get(beta).copied().unwrap_or(0);
        self.blocks.get(beta).cloned().unwrap_or_else(|| Mat::zeros(t, s))
    }

    pub fn identity(m: &WeightModule) -> Self {
        ModuleMap {
            blocks: m.dims.iter().map(|(b, &d)| (b.clone(), Mat::identity(d))).collect(),
            source_dims: m.dims.clone(),
            target_dims: m.dims.clone(),
        }
    }

    pub fn zero(source: &WeightModule, target: &WeightModule) -> Self {
        ModuleMap { blocks: BTreeMap::new(), source_dims: source.dims.clone(), target_dims: target.dims.clone() }
    }

    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        let blocks = first.source_dims.keys().map(|b| (b.clone(), self.block(b).mul(&first.block(b)))).collect();
        ModuleMap { blocks, source_dims: first.source_dims.clone(), target_dims: self.target_dims.clone() }
    }

    pub fn rank_at(&self, beta: &[i64]) -> usize {
        self.block(beta).rank()
    }

    pub fn is_injective_at(&self, beta: &[i64]) -> bool {
        self.rank_at(beta) == self.source_dims.get(beta).copied().unwrap_or(0)
    }

    pub fn is_surjective_at(&self, beta: &[i64]) -> bool {
        self.rank_at(beta) == self.target_dims.get(beta).copied().unwrap_or(0)
    }

    /// Commutes with every active generator on the source's safe core.
    pub fn is_equivariant(&self, source: &WeightModule, target: &WeightModule) -> bool {
        self.equivariance_failure(source, target).is_none()
    }

    pub fn equivariance_failure(&self, source: &WeightModule, target: &WeightModule) -> Option<String> {
        let n = source.rank();
        let active: Vec<usize> = source.active.iter().filter(|&i| target.active.contains(i)).collect();
        for beta in source.window.safe_core(&source.active) {
            for &i in &active {
                let down = sub_offsets(&beta, &unit(n, i));
                if source.window.contains(&down) && target.window.contains(&down) {
                    let l = self.block(&down).mul(&source.e_mat(i, &beta));
                    let r = target.e_mat(i, &beta).mul(&self.block(&beta));
                    if l != r {
                        return Some(format!("e_{i} at {beta:?}"));
                    }
                }
                let up = add_offsets(&beta, &unit(n, i));
                if target.window.contains(&up) {
                    let l = self.block(&up).mul(&source.f_mat(i, &beta));
                    let r = target.f_mat(i, &beta).mul(&self.block(&beta));
                    if l != r {
                        return Some(format!("f_{i} at {beta:?}"));
                    }
                }
            }
        }
        None
    }
}

/// `0 → A → B → C → 0` given by two maps.
#[derive(Debug, Clone)]
pub struct ShortExactSeq {
    pub sub: WeightModule,
    pub middle: WeightModule,
    pub quotient: WeightModule,
    pub inj: ModuleMap,
    pub surj: ModuleMap,
}

/// Per-offset exactness of a three-term sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetExactness {
    pub offset: Offset,
    pub injective: bool,
    pub image_is_kernel: bool,
    pub surjective: bool,
}

impl ShortExactSeq {
    pub fn exactness_at(&self, beta: &[i64]) -> OffsetExactness {
        let i = self.inj.block(beta);
        let s = self.surj.block(beta);
        let a = self.sub.dim(beta);
        let b = self.middle.dim(beta);
        let c = self.quotient.dim(beta);
        let ri = i.rank();
        let rs = s.rank();
        let composite_zero = i.is_empty() || s.is_empty() || s.mul(&i).is_zero();
        OffsetExactness {
            offset: beta.to_vec(),
            injective: ri == a,
            image_is_kernel: composite_zero && ri == b - rs,
            surjective: rs == c,
        }
    }

    pub fn is_exact_at(&self, beta: &[i64]) -> bool {
        let e = self.exactness_at(beta);
        e.injective && e.image_is_kernel && e.surjective
    }
}
