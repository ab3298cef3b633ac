//! Parabolic restriction and induction on windowed modules, and the image of
//! the canonical map `Ind_! → Ind_*`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::cartan::{height, is_nonneg, sub_offsets, Offset, ParabolicType};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::wmod::{
    inclusion, induce, quotient, restrict, restricted_dual, tau_pairing_block, Induced, ModuleMap, RootOps, Subspace,
    WeightModule, Window,
};

/// `U(g) ⊗_{U(p⁺_Ξ)} N`.
pub fn ind_shriek(n: &WeightModule, xi: &ParabolicType, window: &Window) -> Result<Induced> {
    induce(n, xi, &ParabolicType::full(n.rank()), window)
}

/// Coinduction on the window, as `D(Ind_!(D N))`. Its basis at `β` is dual
/// to the labels of `Ind_!(D N)`, which coincide with those of `Ind_!(N)`.
pub fn ind_star_trunc(n: &WeightModule, xi: &ParabolicType, window: &Window) -> Result<WeightModule> {
    Ok(restricted_dual(&ind_shriek(&restricted_dual(n), xi, window)?.module))
}

/// `Ind_!(N) → Ind_*(N)`: entry `((Y,d),(X,b))` is the `1 ⊗ n_d`
/// coefficient of `τ(Y)(X ⊗ n_b)`.
pub fn canonical_map(shriek: &Induced) -> ModuleMap {
    let offsets: Vec<Offset> = shriek.module.window().ordered();
    let blocks: Vec<(Offset, Mat)> = offsets
        .par_iter()
        .map(|o| {
            let mut ops = RootOps::new(&shriek.module);
            (o.clone(), tau_pairing_block(shriek, o, &mut ops))
        })
        .collect();
    ModuleMap {
        blocks: blocks.into_iter().collect(),
        source_dims: shriek.module.dims().clone(),
        target_dims: shriek.module.dims().clone(),
    }
}

/// `Ind_{Ξ,!*}(N)` with the maps it factors through.
#[derive(Debug, Clone)]
pub struct MinimalInduction {
    pub shriek: Induced,
    pub star: WeightModule,
    pub canonical: ModuleMap,
    pub module: WeightModule,
    /// `Ind_! ↠ Ind_{!*}`, the reduced row echelon form of each block.
    pub projection: ModuleMap,
    /// `Ind_{!*} ↪ Ind_*`, the pivot columns of each block.
    pub inclusion: ModuleMap,
    /// Section of the projection through the pivot coordinates.
    pub section: BTreeMap<Offset, Mat>,
}

pub fn ind_minimal(n: &WeightModule, xi: &ParabolicType, window: &Window) -> Result<MinimalInduction> {
    let shriek = ind_shriek(n, xi, window)?;
    let star = ind_star_trunc(n, xi, window)?;
    Ok(minimal_from_parts(shriek, star))
}

fn minimal_from_parts(shriek: Induced, star: WeightModule) -> MinimalInduction {
    let canonical = canonical_map(&shriek);
    let src = &shriek.module;
    let mut proj = BTreeMap::new();
    let mut incl = BTreeMap::new();
    let mut section = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for o in src.window().iter() {
        let c = canonical.block(o);
        let r = c.rref();
        let k = r.pivots.len();
        let mut s = Mat::zeros(c.cols(), k);
        for (j, &p) in r.pivots.iter().enumerate() {
            s.set(p, j, crate::Q::one());
        }
        incl.insert(o.clone(), c.select_columns(&r.pivots));
        proj.insert(o.clone(), r.reduced);
        section.insert(o.clone(), s);
        dims.insert(o.clone(), k);
    }
    let conj = |table: &crate::wmod::ActionTable, sign: i64| -> crate::wmod::ActionTable {
        table
            .iter()
            .enumerate()
            .map(|(i, per)| {
                per.iter()
                    .map(|(o, a)| {
                        let mut t = o.clone();
                        t[i] += sign;
                        (o.clone(), proj[&t].mul(a).mul(&section[o]))
                    })
                    .collect()
            })
            .collect()
    };
    let e = conj(src.e_table(), -1);
    let f = conj(src.f_table(), 1);
    let module = WeightModule::new(
        Arc::clone(src.lie()),
        src.evals().to_vec(),
        src.active().clone(),
        src.window().clone(),
        dims.clone(),
        e,
        f,
    )
    .expect("image blocks have consistent shapes");
    let projection = ModuleMap { blocks: proj, source_dims: src.dims().clone(), target_dims: dims.clone() };
    let inclusion = ModuleMap { blocks: incl, source_dims: dims, target_dims: star.dims().clone() };
    MinimalInduction { shriek, star, canonical, module, projection, inclusion, section }
}

impl MinimalInduction {
    /// `N_β → Ind_{!*}(N)_β` through the `1 ⊗ N` layer.
    pub fn layer_map(&self, beta: &[i64]) -> Mat {
        self.projection.block(beta).mul(&self.shriek.layer_map(beta))
    }
}

/// `J⁻¹(N) = ker(Ind_! → Ind_*)`.
pub fn j_minus(m: &MinimalInduction) -> ModuleMap {
    inclusion(&m.shriek.module, &j_minus_subspace(m))
}

pub fn j_minus_subspace(m: &MinimalInduction) -> Subspace {
    m.shriek.module.window().iter().map(|o| (o.clone(), m.canonical.block(o).kernel())).collect()
}

/// `J¹(N) = coker(Ind_! → Ind_*)` with its projection from `Ind_*`.
pub fn j_plus(m: &MinimalInduction) -> Result<(WeightModule, ModuleMap)> {
    let image: Subspace = m.star.window().iter().map(|o| (o.clone(), m.inclusion.block(o))).collect();
    quotient(&m.star, &image)
}

/// `Ind_!(φ)`: `X ⊗ n ↦ X ⊗ φ(n)`.
pub fn ind_shriek_map(phi: &ModuleMap, source: &Induced, target: &Induced) -> ModuleMap {
    let lie = source.module.lie();
    let mut blocks = BTreeMap::new();
    for (o, labels) in &source.basis {
        let mut m = Mat::zeros(target.module.dim(o), labels.len());
        for (c, (x, b)) in labels.iter().enumerate() {
            let delta = sub_offsets(o, &crate::gla::pbw::monomial_weight(lie, x));
            let block = phi.block(&delta);
            for r in 0..block.rows() {
                let v = block.get(r, *b);
                if v.is_zero() {
                    continue;
                }
                let row = target.index_of(o, &(x.clone(), r)).expect("same monomials on both sides");
                m.set(row, c, v.clone());
            }
        }
        blocks.insert(o.clone(), m);
    }
    ModuleMap { blocks, source_dims: source.module.dims().clone(), target_dims: target.module.dims().clone() }
}

/// `Ind_{!*}(φ)`, induced on images.
pub fn ind_minimal_map(phi: &ModuleMap, source: &MinimalInduction, target: &MinimalInduction) -> ModuleMap {
    let full = ind_shriek_map(phi, &source.shriek, &target.shriek);
    let blocks = source
        .module
        .dims()
        .keys()
        .map(|o| (o.clone(), target.projection.block(o).mul(&full.block(o)).mul(&source.section[o])))
        .collect();
    ModuleMap { blocks, source_dims: source.module.dims().clone(), target_dims: target.module.dims().clone() }
}

/// Which restriction functor produced a [`Restriction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionKind {
    Shriek,
    Star,
    Intermediate,
}

/// An `l_Ξ`-module cut out of a `g`-module, with the coordinates that
/// identify it inside (or as a quotient of) the ambient weight spaces.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub kind: RestrictionKind,
    pub module: WeightModule,
    /// Columns spanning the invariants; for `Star`, empty.
    invariants: BTreeMap<Offset, Mat>,
    /// Projection onto coinvariants; for `Shriek`, empty.
    projection: BTreeMap<Offset, Mat>,
    /// Offsets where some nilradical source falls outside the window.
    pub boundary: Vec<Offset>,
}

impl Restriction {
    /// Coordinates of ambient vectors `v ∈ M_β` (as columns) in the
    /// restriction, or `None` when `v` does not lie in the invariants.
    pub fn coords(&self, beta: &[i64], v: &Mat) -> Option<Mat> {
        match self.kind {
            RestrictionKind::Shriek => solve_in(&self.invariants[beta], v),
            RestrictionKind::Star => Some(self.projection[beta].mul(v)),
            RestrictionKind::Intermediate => solve_in(&self.invariants[beta], &self.projection[beta].mul(v)),
        }
    }

    /// The map `N → Res(M)` induced by `ψ : N → M`.
    pub fn pull(&self, psi: &ModuleMap) -> Option<ModuleMap> {
        let mut blocks = BTreeMap::new();
        for (o, &d) in &psi.source_dims {
            if d == 0 || self.module.dim(o) == 0 {
                continue;
            }
            blocks.insert(o.clone(), self.coords(o, &psi.block(o))?);
        }
        Some(ModuleMap { blocks, source_dims: psi.source_dims.clone(), target_dims: self.module.dims().clone() })
    }
}

/// `Res^!(φ) : Res^!(A) → Res^!(B)`; `None` unless both are invariants.
pub fn res_shriek_map(phi: &ModuleMap, source: &Restriction, target: &Restriction) -> Option<ModuleMap> {
    if source.kind != RestrictionKind::Shriek || target.kind != RestrictionKind::Shriek {
        return None;
    }
    let blocks = source.invariants.iter().map(|(o, k)| (o.clone(), phi.block(o).mul(k))).collect();
    let through = ModuleMap { blocks, source_dims: source.module.dims().clone(), target_dims: phi.target_dims.clone() };
    target.pull(&through)
}

/// `Ind_!(sub) ⊂ Ind_!(N)` for a graded subspace of `N`.
pub fn induced_subspace(ind: &Induced, sub: &Subspace) -> Subspace {
    let lie = ind.module.lie();
    ind.basis
        .iter()
        .map(|(o, labels)| {
            let mut cols: Vec<Vec<crate::Q>> = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for (x, _) in labels {
                if !seen.insert(x) {
                    continue;
                }
                let delta = sub_offsets(o, &crate::gla::pbw::monomial_weight(lie, x));
                let Some(b) = sub.get(&delta) else { continue };
                for c in 0..b.cols() {
                    let mut v = vec![crate::Q::zero(); labels.len()];
                    for r in 0..b.rows() {
                        if let Some(row) = ind.index_of(o, &(x.clone(), r)) {
                            v[row] = b.get(r, c).clone();
                        }
                    }
                    cols.push(v);
                }
            }
            (o.clone(), Mat::from_columns(labels.len(), &cols))
        })
        .collect()
}

fn solve_in(basis: &Mat, v: &Mat) -> Option<Mat> {
    if basis.cols() == 0 {
        return v.is_zero().then(|| Mat::zeros(0, v.cols()));
    }
    basis.solve(v)
}

/// `M` viewed through `l_Ξ` only.
pub fn levi_part(m: &WeightModule, xi: &ParabolicType) -> WeightModule {
    let keep = |t: &crate::wmod::ActionTable| -> crate::wmod::ActionTable {
        t.iter().enumerate().map(|(i, per)| if xi.contains(i) { per.clone() } else { BTreeMap::new() }).collect()
    };
    WeightModule::new(
        Arc::clone(m.lie()),
        m.evals().to_vec(),
        xi.clone(),
        m.window().clone(),
        m.dims().clone(),
        keep(m.e_table()),
        keep(m.f_table()),
    )
    .expect("dropping generators keeps shapes")
}

fn nilradical(m: &WeightModule, xi: &ParabolicType) -> Result<Vec<crate::gla::RootId>> {
    let lie = m.lie();
    let reach = m.window().max_height() - m.window().iter().map(|b| height(b)).min().unwrap_or(0);
    if !lie.covers_height(reach) {
        let top = m.window().ordered().into_iter().last().unwrap_or_default();
        return Err(Error::TruncationOverflow { offset: top, height: reach, cutoff: lie.cutoff() });
    }
    Ok(lie.nilradical_ids(xi, &ParabolicType::full(m.rank())))
}

fn boundary(m: &WeightModule, roots: &[crate::gla::RootId]) -> Vec<Offset> {
    let lie = m.lie();
    let w = m.window();
    w.ordered()
        .into_iter()
        .filter(|b| {
            roots.iter().any(|&x| {
                let s = sub_offsets(b, lie.weight(x));
                !w.contains(&s) && w.iter().any(|t| is_nonneg(&sub_offsets(&s, t)))
            })
        })
        .collect()
}

fn invariants(m: &WeightModule, roots: &[crate::gla::RootId]) -> BTreeMap<Offset, Mat> {
    let lie = m.lie();
    let mut ops = RootOps::new(m);
    let mut out = BTreeMap::new();
    for o in m.window().ordered() {
        let d = m.dim(&o);
        let mut stacked = Mat::zeros(0, d);
        for &x in roots {
            let t = sub_offsets(&o, lie.weight(x));
            if m.window().contains(&t) && m.dim(&t) > 0 {
                stacked = stacked.vstack(&ops.raise(x, &o));
            }
        }
        out.insert(o, stacked.kernel());
    }
    out
}

fn coinvariant_images(m: &WeightModule, roots: &[crate::gla::RootId]) -> Subspace {
    let lie = m.lie();
    let mut ops = RootOps::new(m);
    let mut out = BTreeMap::new();
    for o in m.window().ordered() {
        let mut span = Mat::zeros(m.dim(&o), 0);
        for &x in roots {
            let s = sub_offsets(&o, lie.weight(x));
            if m.window().contains(&s) && m.dim(&s) > 0 {
                span = span.hstack(&ops.lower(x, &s));
            }
        }
        let span = if span.cols() == 0 { span } else { span.column_basis() };
        out.insert(o, span);
    }
    out
}

/// `Res^!_Ξ(M)`: vectors killed by every `u⁺_Ξ` root vector.
pub fn res_shriek(m: &WeightModule, xi: &ParabolicType) -> Result<Restriction> {
    let roots = nilradical(m, xi)?;
    let inv = invariants(m, &roots);
    let module = restrict(&levi_part(m, xi), &inv)?;
    Ok(Restriction {
        kind: RestrictionKind::Shriek,
        module,
        invariants: inv,
        projection: BTreeMap::new(),
        boundary: boundary(m, &roots),
    })
}

/// `Res^*_Ξ(M)`: the quotient by the images of `u⁻_Ξ` root vectors.
pub fn res_star(m: &WeightModule, xi: &ParabolicType) -> Result<Restriction> {
    let roots = nilradical(m, xi)?;
    let images = coinvariant_images(m, &roots);
    let (module, proj) = quotient(&levi_part(m, xi), &images)?;
    Ok(Restriction {
        kind: RestrictionKind::Star,
        module,
        invariants: BTreeMap::new(),
        projection: proj.blocks,
        boundary: boundary(m, &roots),
    })
}

/// `Res^{!*}_Ξ(M)`: the image of `Res^! → M → Res^*`.
pub fn res_intermediate(m: &WeightModule, xi: &ParabolicType) -> Result<Restriction> {
    let roots = nilradical(m, xi)?;
    let inv = invariants(m, &roots);
    let images = coinvariant_images(m, &roots);
    let (coinv, proj) = quotient(&levi_part(m, xi), &images)?;
    let mut image: Subspace = BTreeMap::new();
    let mut projection = BTreeMap::new();
    for o in m.window().iter() {
        let p = proj.block(o);
        let k = &inv[o];
        let im = if k.cols() == 0 || p.rows() == 0 { Mat::zeros(p.rows(), 0) } else { p.mul(k) };
        let im = if im.cols() == 0 { im } else { im.column_basis() };
        image.insert(o.clone(), im);
        projection.insert(o.clone(), p);
    }
    let module = restrict(&coinv, &image)?;
    Ok(Restriction {
        kind: RestrictionKind::Intermediate,
        module,
        invariants: image,
        projection,
        boundary: boundary(m, &roots),
    })
}

/// Outcome of comparing `N` with `Res(Ind(N))` through a layer map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub isomorphic: bool,
    pub equivariant: bool,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.isomorphic && self.equivariant
    }
}

/// Checks that `ψ : N → M` descends to an equivariant isomorphism
/// `N ≅ res` on every offset of `N`.
pub fn check_identity(n: &WeightModule, psi: &ModuleMap, res: &Restriction) -> IdentityCheck {
    let mut failures = Vec::new();
    let Some(phi) = res.pull(psi) else {
        return IdentityCheck {
            isomorphic: false,
            equivariant: false,
            failures: vec!["layer leaves the restriction".into()],
        };
    };
    for o in n.window().ordered() {
        let (a, b) = (n.dim(&o), res.module.dim(&o));
        if a != b || phi.rank_at(&o) != a {
            failures.push(format!("{o:?}: dim {a} vs {b}, rank {}", phi.rank_at(&o)));
        }
    }
    let isomorphic = failures.is_empty();
    let equivariant = match phi.equivariance_failure(n, &res.module) {
        None => true,
        Some(s) => {
            failures.push(s);
            false
        }
    };
    IdentityCheck { isomorphic, equivariant, failures }
}

/// The four functor identities on one fixture.
#[derive(Debug, Clone)]
pub struct FunctorIdentities {
    pub star_of_shriek: IdentityCheck,
    pub shriek_of_star: IdentityCheck,
    pub shriek_of_minimal: IdentityCheck,
    pub star_of_minimal: IdentityCheck,
    pub intermediate_of_minimal: IdentityCheck,
}

impl FunctorIdentities {
    pub fn all(&self) -> [(&'static str, &IdentityCheck); 5] {
        [
            ("res*.ind!", &self.star_of_shriek),
            ("res!.ind*", &self.shriek_of_star),
            ("res!.ind!*", &self.shriek_of_minimal),
            ("res*.ind!*", &self.star_of_minimal),
            ("res!*.ind!*", &self.intermediate_of_minimal),
        ]
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|(_, c)| c.passed())
    }
}

pub fn functor_identities(n: &WeightModule, xi: &ParabolicType, window: &Window) -> Result<FunctorIdentities> {
    let mi = ind_minimal(n, xi, window)?;
    let layer = |f: &dyn Fn(&[i64]) -> Mat, target: &WeightModule| ModuleMap {
        blocks: n.window().iter().map(|o| (o.clone(), f(o))).collect(),
        source_dims: n.dims().clone(),
        target_dims: target.dims().clone(),
    };
    let into_shriek = layer(&|o| mi.shriek.layer_map(o), &mi.shriek.module);
    let into_star = layer(&|o| mi.canonical.block(o).mul(&mi.shriek.layer_map(o)), &mi.star);
    let into_min = layer(&|o| mi.layer_map(o), &mi.module);
    Ok(FunctorIdentities {
        star_of_shriek: check_identity(n, &into_shriek, &res_star(&mi.shriek.module, xi)?),
        shriek_of_star: check_identity(n, &into_star, &res_shriek(&mi.star, xi)?),
        shriek_of_minimal: check_identity(n, &into_min, &res_shriek(&mi.module, xi)?),
        star_of_minimal: check_identity(n, &into_min, &res_star(&mi.module, xi)?),
        intermediate_of_minimal: check_identity(n, &into_min, &res_intermediate(&mi.module, xi)?),
    })
}
