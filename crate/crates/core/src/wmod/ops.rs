use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{ModuleMap, WeightModule};
use crate::cartan::{add_offsets, offset_cmp, sub_offsets, unit, Offset};
use crate::error::{Error, Result};
use crate::linalg::{quotient_map, span_contains, Mat};
use crate::rational::Q;

/// Offset → dimension over the whole window.
pub type Character = BTreeMap<Offset, usize>;

pub fn character(m: &WeightModule) -> Character {
    m.dims().clone()
}

/// Transposed actions: `e_i ↦ f_i^T`, `f_i ↦ e_i^T`.
pub fn restricted_dual(m: &WeightModule) -> WeightModule {
    let n = m.rank();
    let mut e = vec![BTreeMap::new(); n];
    let mut f = vec![BTreeMap::new(); n];
    for i in m.active().iter() {
        for (b, mat) in &m.f_table()[i] {
            e[i].insert(add_offsets(b, &unit(n, i)), mat.transpose());
        }
        for (b, mat) in &m.e_table()[i] {
            f[i].insert(sub_offsets(b, &unit(n, i)), mat.transpose());
        }
    }
    WeightModule::new(
        Arc::clone(m.lie()),
        m.evals().to_vec(),
        m.active().clone(),
        m.window().clone(),
        m.dims().clone(),
        e,
        f,
    )
    .expect("transposed shapes are consistent")
}

/// `φ^∨`, blockwise transpose, from the dual of the target to the dual of
/// the source.
pub fn dual_map(phi: &ModuleMap) -> ModuleMap {
    ModuleMap {
        blocks: phi.blocks.iter().map(|(b, m)| (b.clone(), m.transpose())).collect(),
        source_dims: phi.target_dims.clone(),
        target_dims: phi.source_dims.clone(),
    }
}

pub fn direct_sum(a: &WeightModule, b: &WeightModule) -> Result<WeightModule> {
    a.same_frame(b)?;
    if a.active() != b.active() {
        return Err(Error::DimensionMismatch("summands act through different subalgebras".into()));
    }
    let n = a.rank();
    let window = a.window().union(b.window());
    let dims: BTreeMap<Offset, usize> = window.iter().map(|o| (o.clone(), a.dim(o) + b.dim(o))).collect();
    let diag = |x: Mat, y: Mat| -> Mat {
        let mut m = Mat::zeros(x.rows() + y.rows(), x.cols() + y.cols());
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                m.set(i, j, x.get(i, j).clone());
            }
        }
        for i in 0..y.rows() {
            for j in 0..y.cols() {
                m.set(x.rows() + i, x.cols() + j, y.get(i, j).clone());
            }
        }
        m
    };
    let mut e = vec![BTreeMap::new(); n];
    let mut f = vec![BTreeMap::new(); n];
    for i in a.active().iter() {
        for o in window.iter() {
            let down = sub_offsets(o, &unit(n, i));
            if window.contains(&down) {
                e[i].insert(o.clone(), diag(a.e_mat(i, o), b.e_mat(i, o)));
            }
            let up = add_offsets(o, &unit(n, i));
            if window.contains(&up) {
                f[i].insert(o.clone(), diag(a.f_mat(i, o), b.f_mat(i, o)));
            }
        }
    }
    WeightModule::new(Arc::clone(a.lie()), a.evals().to_vec(), a.active().clone(), window, dims, e, f)
}

/// `∩_i ker e_i` at `β` over the active generators, as columns.
pub fn singular_vectors(m: &WeightModule, beta: &[i64]) -> Mat {
    let d = m.dim(beta);
    let mut stacked = Mat::zeros(0, d);
    for i in m.active().iter() {
        stacked = stacked.vstack(&m.e_mat(i, beta));
    }
    stacked.kernel()
}

/// A graded subspace given by column bases.
pub type Subspace = BTreeMap<Offset, Mat>;

pub fn inclusion(m: &WeightModule, sub: &Subspace) -> ModuleMap {
    ModuleMap {
        blocks: sub.iter().filter(|(_, b)| b.cols() > 0).map(|(o, b)| (o.clone(), b.clone())).collect(),
        source_dims: m.window().iter().map(|o| (o.clone(), sub.get(o).map_or(0, Mat::cols))).collect(),
        target_dims: m.dims().clone(),
    }
}

/// The image of an inclusion map as a subspace of its target.
pub fn image_subspace(phi: &ModuleMap) -> Subspace {
    phi.target_dims
        .iter()
        .map(|(o, &d)| {
            let b = phi.block(o);
            (o.clone(), if b.cols() == 0 { Mat::zeros(d, 0) } else { b.column_basis() })
        })
        .collect()
}

/// Smallest in-window subspace closed under the active generators and
/// containing the given weight vectors. Window-relative: lowering past the
/// window is dropped.
pub fn submodule_generated(m: &WeightModule, vectors: &[(Offset, Vec<Q>)]) -> ModuleMap {
    let n = m.rank();
    let mut sub: Subspace = m.window().iter().map(|o| (o.clone(), Mat::zeros(m.dim(o), 0))).collect();
    let mut dirty: BTreeSet<Offset> = BTreeSet::new();
    let extend = |sub: &mut Subspace, o: &Offset, cols: Mat, dirty: &mut BTreeSet<Offset>| {
        let cur = &sub[o];
        if cols.cols() == 0 || span_contains(cur, &cols) {
            return;
        }
        let joined = cur.hstack(&cols).column_basis();
        sub.insert(o.clone(), joined);
        dirty.insert(o.clone());
    };
    for (o, v) in vectors {
        if m.window().contains(o) && v.len() == m.dim(o) {
            let col = Mat::from_columns(v.len(), std::slice::from_ref(v));
            extend(&mut sub, o, col, &mut dirty);
        }
    }
    while let Some(o) = dirty.iter().min_by(|a, b| offset_cmp(a, b)).cloned() {
        dirty.remove(&o);
        let basis = sub[&o].clone();
        for i in m.active().iter() {
            let down = sub_offsets(&o, &unit(n, i));
            if m.window().contains(&down) {
                extend(&mut sub, &down, m.e_mat(i, &o).mul(&basis), &mut dirty);
            }
            let up = add_offsets(&o, &unit(n, i));
            if m.window().contains(&up) {
                extend(&mut sub, &up, m.f_mat(i, &o).mul(&basis), &mut dirty);
            }
        }
    }
    inclusion(m, &sub)
}

/// The action restricted to an action-closed subspace.
pub fn restrict(m: &WeightModule, sub: &Subspace) -> Result<WeightModule> {
    let n = m.rank();
    let basis = |o: &Offset| sub.get(o).cloned().unwrap_or_else(|| Mat::zeros(m.dim(o), 0));
    let mut e = vec![BTreeMap::new(); n];
    let mut f = vec![BTreeMap::new(); n];
    for i in m.active().iter() {
        for (tables, out, sign) in [(m.e_table(), &mut e, -1i64), (m.f_table(), &mut f, 1)] {
            for (o, a) in &tables[i] {
                let t = add_offsets(o, &unit(n, i).iter().map(|x| x * sign).collect::<Vec<_>>());
                let (bs, bt) = (basis(o), basis(&t));
                if bs.cols() == 0 || bt.cols() == 0 {
                    if bs.cols() > 0 && !a.mul(&bs).is_zero() {
                        return Err(Error::NotActionClosed { offset: o.clone() });
                    }
                    continue;
                }
                let img = a.mul(&bs);
                let x = bt.solve(&img).ok_or_else(|| Error::NotActionClosed { offset: o.clone() })?;
                out[i].insert(o.clone(), x);
            }
        }
    }
    let dims = m.window().iter().map(|o| (o.clone(), basis(o).cols())).collect();
    WeightModule::new(Arc::clone(m.lie()), m.evals().to_vec(), m.active().clone(), m.window().clone(), dims, e, f)
}

/// `M / sub` with its projection.
pub fn quotient(m: &WeightModule, sub: &Subspace) -> Result<(WeightModule, ModuleMap)> {
    let n = m.rank();
    let qmaps: BTreeMap<Offset, _> = m
        .window()
        .iter()
        .map(|o| (o.clone(), quotient_map(m.dim(o), &sub.get(o).cloned().unwrap_or_else(|| Mat::zeros(m.dim(o), 0)))))
        .collect();
    let mut e = vec![BTreeMap::new(); n];
    let mut f = vec![BTreeMap::new(); n];
    for i in m.active().iter() {
        for (tables, out, sign) in [(m.e_table(), &mut e, -1i64), (m.f_table(), &mut f, 1)] {
            for (o, a) in &tables[i] {
                let t = add_offsets(o, &unit(n, i).iter().map(|x| x * sign).collect::<Vec<_>>());
                let qt = &qmaps[&t];
                if let Some(s) = sub.get(o) {
                    if s.cols() > 0 && !qt.projection.mul(&a.mul(s)).is_zero() {
                        return Err(Error::NotActionClosed { offset: o.clone() });
                    }
                }
                out[i].insert(o.clone(), qt.projection.mul(a).mul(&qmaps[o].section));
            }
        }
    }
    let dims: BTreeMap<Offset, usize> = qmaps.iter().map(|(o, q)| (o.clone(), q.projection.rows())).collect();
    let proj = ModuleMap {
        blocks: qmaps.iter().map(|(o, q)| (o.clone(), q.projection.clone())).collect(),
        source_dims: m.dims().clone(),
        target_dims: dims.clone(),
    };
    let q =
        WeightModule::new(Arc::clone(m.lie()), m.evals().to_vec(), m.active().clone(), m.window().clone(), dims, e, f)?;
    Ok((q, proj))
}

/// Largest submodule avoiding the top space for a module generated in
/// degree `top`: `K_top = 0` and `K_β = {v : e_i v ∈ K_{β−e_i} for all i}`.
pub fn max_proper_submodule(m: &WeightModule, top: &[i64]) -> Subspace {
    let n = m.rank();
    let mut k: Subspace = BTreeMap::new();
    let mut proj: BTreeMap<Offset, Mat> = BTreeMap::new();
    for o in m.window().ordered() {
        let d = m.dim(&o);
        let basis = if o == top {
            Mat::zeros(d, 0)
        } else {
            let mut stacked = Mat::zeros(0, d);
            for i in m.active().iter() {
                let down = sub_offsets(&o, &unit(n, i));
                if let Some(p) = proj.get(&down) {
                    stacked = stacked.vstack(&p.mul(&m.e_mat(i, &o)));
                }
            }
            stacked.kernel()
        };
        proj.insert(o.clone(), quotient_map(d, &basis).projection);
        k.insert(o, basis);
    }
    k
}

pub fn subspace_dims(sub: &Subspace) -> Character {
    sub.iter().map(|(o, b)| (o.clone(), b.cols())).collect()
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Subspace {
    let keys: BTreeSet<&Offset> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .map(|o| {
            let x = a.get(o);
            let y = b.get(o);
            let m = match (x, y) {
                (Some(x), Some(y)) => x.hstack(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!("key from one side"),
            };
            let m = if m.cols() == 0 { m } else { m.column_basis() };
            (o.clone(), m)
        })
        .collect()
}

pub fn subspaces_equal(a: &Subspace, b: &Subspace, offsets: &[Offset]) -> bool {
    offsets.iter().all(|o| {
        let (x, y) = (a.get(o), b.get(o));
        let dx = x.map_or(0, Mat::cols);
        let dy = y.map_or(0, Mat::cols);
        dx == dy && (dx == 0 || span_contains(x.expect("nonzero"), y.expect("nonzero")))
    })
}

/// Coroot evaluations of the weight at `β`.
pub fn weight_evals(m: &WeightModule, beta: &[i64]) -> Vec<Q> {
    (0..m.rank()).map(|i| m.h_eval(i, beta)).collect()
}
