//! The PBW induction engine: `U(l_Ψ) ⊗_{U(p_Ξ ∩ l_Ψ)} N` on a window, with
//! `N` an `l_Ξ`-module inflated by letting the nilradical act by zero.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{RootOps, WeightModule, Window};
use crate::cartan::{add_offsets, coroot_eval, height, is_nonneg, sub_offsets, unit, Offset, ParabolicType, Weight};
use crate::error::{Error, Result};
use crate::gla::pbw::{add_into, monomial_weight, pbw_monomials, Monomial, PbwVec, Straightener};
use crate::gla::{GradedLie, Raised, RootId};
use crate::linalg::Mat;
use crate::rational::Q;

/// Basis label `X ⊗ n_b`.
pub type IndLabel = (Monomial, usize);

/// An induced module with its PBW labelling.
#[derive(Debug, Clone)]
pub struct Induced {
    pub module: WeightModule,
    pub inner: WeightModule,
    pub xi: ParabolicType,
    pub psi: ParabolicType,
    pub basis: BTreeMap<Offset, Vec<IndLabel>>,
}

impl Induced {
    /// Positions of the `1 ⊗ N` layer at `β`.
    pub fn layer_positions(&self, beta: &[i64]) -> Vec<usize> {
        self.basis
            .get(beta)
            .map_or(vec![], |v| v.iter().enumerate().filter(|(_, l)| l.0.is_empty()).map(|(k, _)| k).collect())
    }

    /// The layer inclusion `N_β → Ind_β`, `n ↦ 1 ⊗ n`.
    pub fn layer_map(&self, beta: &[i64]) -> Mat {
        let d = self.inner.dim(beta);
        let mut m = Mat::zeros(self.module.dim(beta), d);
        if let Some(labels) = self.basis.get(beta) {
            for (k, (x, b)) in labels.iter().enumerate() {
                if x.is_empty() {
                    m.set(k, *b, Q::one());
                }
            }
        }
        m
    }

    pub fn index_of(&self, beta: &[i64], label: &IndLabel) -> Option<usize> {
        self.basis.get(beta)?.iter().position(|l| l == label)
    }
}

/// Vector in an induced module at a fixed total offset, by monomial.
type IndVec = BTreeMap<Monomial, Vec<Q>>;

fn axpy(acc: &mut IndVec, m: Monomial, c: &Q, v: &[Q]) {
    if c.is_zero() || v.iter().all(Q::is_zero) {
        return;
    }
    let e = acc.entry(m).or_insert_with(|| vec![Q::zero(); v.len()]);
    for (a, b) in e.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += &(c * b);
        }
    }
}

struct Engine<'a> {
    lie: &'a GradedLie,
    xi: &'a ParabolicType,
    inner: &'a WeightModule,
    ops: RootOps<'a>,
    pbw: Straightener<'a>,
}

impl<'a> Engine<'a> {
    fn in_levi(&self, x: RootId) -> bool {
        self.xi.supports(self.lie.weight(x))
    }

    fn inner_offset(&self, total: &[i64], x: &[RootId]) -> Offset {
        sub_offsets(total, &monomial_weight(self.lie, x))
    }

    /// `x_1 ⋯ x_k · (Σ Z ⊗ v_Z)`.
    fn left_mul(&mut self, prefix: &[RootId], v: &IndVec) -> Result<IndVec> {
        let mut out = IndVec::new();
        for (z, vec) in v {
            let p = self.pbw.left_mul_word(prefix, &PbwVec::from([(z.clone(), Q::one())]))?;
            for (m, c) in p {
                axpy(&mut out, m, &c, vec);
            }
        }
        Ok(out)
    }

    /// `z · (X ⊗ n)` for `z` in the negative part of `l_Ξ`; `n` lives at `δ`.
    fn act_levi(&mut self, z: RootId, x: &[RootId], delta: &[i64], n: &[Q]) -> Result<IndVec> {
        let mut out = IndVec::new();
        for m in 0..x.len() {
            for (y, c) in self.lie.bracket(z, x[m])? {
                let tail = PbwVec::from([(x[m + 1..].to_vec(), Q::one())]);
                let mut prod = PbwVec::new();
                for (t, d) in tail {
                    for (u, e) in self.pbw.mul(y, &t)? {
                        add_into(&mut prod, u, &d * &e);
                    }
                }
                let full = self.pbw.left_mul_word(&x[..m], &prod)?;
                for (u, e) in full {
                    axpy(&mut out, u, &(&c * &e), n);
                }
            }
        }
        let zn = self.ops.lower(z, delta).mul_vec(n);
        axpy(&mut out, x.to_vec(), &Q::one(), &zn);
        Ok(out)
    }

    /// `f_i · (X ⊗ n)`, `i ∈ Ψ`.
    fn act_f(&mut self, i: usize, x: &[RootId], delta: &[i64], n: &[Q]) -> Result<IndVec> {
        let fi = self.lie.simple_id(i);
        if self.xi.contains(i) {
            return self.act_levi(fi, x, delta, n);
        }
        let mut out = IndVec::new();
        for (m, c) in self.pbw.mul(fi, x)? {
            axpy(&mut out, m, &c, n);
        }
        Ok(out)
    }

    /// `e_i · (X ⊗ n)`, `i ∈ Ψ`.
    fn act_e(&mut self, i: usize, x: &[RootId], delta: &[i64], n: &[Q]) -> Result<IndVec> {
        let mut out = IndVec::new();
        for m in 0..x.len() {
            let Some(r) = self.lie.raise(i, x[m]).cloned() else { continue };
            let tail: Monomial = x[m + 1..].to_vec();
            match r {
                Raised::Coroot(c) => {
                    let w = add_offsets(delta, &monomial_weight(self.lie, &tail));
                    let ev =
                        coroot_eval(self.lie.datum(), &Weight { evals: self.inner.evals().to_vec(), offset: w }, i);
                    let mut rest = x[..m].to_vec();
                    rest.extend_from_slice(&tail);
                    axpy(&mut out, rest, &(&c * &ev), n);
                }
                Raised::Roots(v) => {
                    for (y, c) in v {
                        let part = if self.in_levi(y) {
                            self.act_levi(y, &tail, delta, n)?
                        } else {
                            let mut p = IndVec::new();
                            for (u, d) in self.pbw.mul(y, &tail)? {
                                axpy(&mut p, u, &d, n);
                            }
                            p
                        };
                        for (u, w) in self.left_mul(&x[..m], &part)? {
                            axpy(&mut out, u, &c, &w);
                        }
                    }
                }
            }
        }
        if self.xi.contains(i) {
            let en = self.inner.e_mat(i, delta).mul_vec(n);
            axpy(&mut out, x.to_vec(), &Q::one(), &en);
        }
        Ok(out)
    }
}

/// Induces `inner` (an `l_Ξ`-module) to an `l_Ψ`-module on `window`.
///
/// Basis at `β`: pairs `(X, b)` with `X` a PBW monomial over the roots of
/// `ZΨ \ ZΞ` and `b` a basis index of `inner` at `β − wt(X)`.
pub fn induce(inner: &WeightModule, xi: &ParabolicType, psi: &ParabolicType, window: &Window) -> Result<Induced> {
    let lie: &GradedLie = inner.lie();
    let rank = lie.rank();
    if inner.active() != xi {
        return Err(Error::DimensionMismatch("inner module must be a module over the Levi of Ξ".into()));
    }
    if !xi.is_subset(psi) {
        return Err(Error::DimensionMismatch("Ξ must be contained in Ψ".into()));
    }
    let u_ids = lie.nilradical_ids(xi, psi);
    let inner_support: Vec<Offset> = inner.dims().iter().filter(|(_, &d)| d > 0).map(|(b, _)| b.clone()).collect();
    let mut mono_cache: HashMap<Offset, Vec<Monomial>> = HashMap::new();
    let mut basis: BTreeMap<Offset, Vec<IndLabel>> = BTreeMap::new();
    for beta in window.ordered() {
        let mut labels = Vec::new();
        for delta in &inner_support {
            let gamma = sub_offsets(&beta, delta);
            if !is_nonneg(&gamma) || !psi.supports(&gamma) {
                continue;
            }
            if !lie.covers_height(height(&gamma)) {
                return Err(Error::TruncationOverflow {
                    offset: beta.clone(),
                    height: height(&gamma),
                    cutoff: lie.cutoff(),
                });
            }
            let monos = mono_cache.entry(gamma.clone()).or_insert_with(|| pbw_monomials(lie, &u_ids, &gamma));
            for x in monos.iter() {
                for b in 0..inner.dim(delta) {
                    labels.push((x.clone(), b));
                }
            }
        }
        labels.sort();
        basis.insert(beta, labels);
    }
    let index: BTreeMap<Offset, HashMap<IndLabel, usize>> =
        basis.iter().map(|(b, ls)| (b.clone(), ls.iter().enumerate().map(|(k, l)| (l.clone(), k)).collect())).collect();
    let mut eng = Engine { lie, xi, inner, ops: RootOps::new(inner), pbw: Straightener::new(lie) };
    let mut e = vec![BTreeMap::new(); rank];
    let mut f = vec![BTreeMap::new(); rank];
    let to_matrix = |target: &Offset, columns: Vec<IndVec>, eng: &Engine| -> Result<Mat> {
        let idx = &index[target];
        let mut m = Mat::zeros(idx.len(), columns.len());
        for (col, v) in columns.into_iter().enumerate() {
            for (x, vec) in v {
                for (b, c) in vec.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let Some(&row) = idx.get(&(x.clone(), b)) else {
                        let delta = eng.inner_offset(target, &x);
                        return Err(Error::DimensionMismatch(format!(
                            "induced term lands outside the inner window at {delta:?}"
                        )));
                    };
                    m.add_at(row, col, c);
                }
            }
        }
        Ok(m)
    };
    for (beta, labels) in &basis {
        if labels.is_empty() {
            continue;
        }
        for i in psi.iter() {
            let down = sub_offsets(beta, &unit(rank, i));
            if window.contains(&down) {
                let mut cols = Vec::with_capacity(labels.len());
                for (x, b) in labels {
                    let delta = eng.inner_offset(beta, x);
                    let mut n = vec![Q::zero(); inner.dim(&delta)];
                    n[*b] = Q::one();
                    cols.push(eng.act_e(i, x, &delta, &n)?);
                }
                e[i].insert(beta.clone(), to_matrix(&down, cols, &eng)?);
            }
            let up = add_offsets(beta, &unit(rank, i));
            if window.contains(&up) {
                let mut cols = Vec::with_capacity(labels.len());
                for (x, b) in labels {
                    let delta = eng.inner_offset(beta, x);
                    let mut n = vec![Q::zero(); inner.dim(&delta)];
                    n[*b] = Q::one();
                    cols.push(eng.act_f(i, x, &delta, &n)?);
                }
                f[i].insert(beta.clone(), to_matrix(&up, cols, &eng)?);
            }
        }
    }
    let dims = basis.iter().map(|(b, l)| (b.clone(), l.len())).collect();
    let module =
        WeightModule::new(Arc::clone(inner.lie()), inner.evals().to_vec(), psi.clone(), window.clone(), dims, e, f)?;
    Ok(Induced { module, inner: inner.clone(), xi: xi.clone(), psi: psi.clone(), basis })
}

/// The pairing block at `β`: entry `((Y, d), (X, b))` is the coefficient of
/// `1 ⊗ n_d` in `τ(Y) · (X ⊗ n_b)`, with `τ(y_1)` applied first.
pub fn tau_pairing(ind: &Induced, beta: &[i64]) -> Mat {
    let mut ops = RootOps::new(&ind.module);
    tau_pairing_block(ind, beta, &mut ops)
}

pub fn tau_pairing_block(ind: &Induced, beta: &[i64], ops: &mut RootOps) -> Mat {
    let labels = ind.basis.get(beta).cloned().unwrap_or_default();
    let cols = labels.len();
    let mut out = Mat::zeros(cols, cols);
    let lie = ind.module.lie().clone();
    let mut by_mono: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
    for (row, (y, d)) in labels.iter().enumerate() {
        by_mono.entry(y.clone()).or_default().push((row, *d));
    }
    for (y, rows) in by_mono {
        let mut cur = beta.to_vec();
        let mut m = Mat::identity(cols);
        for &x in &y {
            m = ops.tau(x, &cur).mul(&m);
            cur = sub_offsets(&cur, lie.weight(x));
        }
        let layer: HashMap<usize, usize> = ind
            .basis
            .get(&cur)
            .map(|ls| ls.iter().enumerate().filter(|(_, l)| l.0.is_empty()).map(|(k, l)| (l.1, k)).collect())
            .unwrap_or_default();
        for (row, d) in rows {
            if let Some(&k) = layer.get(&d) {
                for c in 0..cols {
                    let v = m.get(k, c);
                    if !v.is_zero() {
                        out.set(row, c, v.clone());
                    }
                }
            }
        }
    }
    out
}
