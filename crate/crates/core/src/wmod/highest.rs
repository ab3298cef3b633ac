use std::collections::BTreeMap;
use std::sync::Arc;

use super::{
    induce, max_proper_submodule, quotient, restricted_dual, tau_pairing, Induced, ModuleMap, RootOps, Subspace,
    WeightModule, Window,
};
use crate::cartan::{add_offsets, Offset, ParabolicType, Weight};
use crate::error::{Error, Result};
use crate::gla::GradedLie;
use crate::linalg::Mat;
use crate::rational::Q;

/// The one-dimensional `h`-module of weight `λ`.
pub fn line(lie: &Arc<GradedLie>, lambda: &Weight) -> WeightModule {
    let n = lie.rank();
    WeightModule::new(
        Arc::clone(lie),
        lambda.evals.clone(),
        ParabolicType::empty(n),
        Window::point(&lambda.offset),
        BTreeMap::from([(lambda.offset.clone(), 1)]),
        vec![BTreeMap::new(); n],
        vec![BTreeMap::new(); n],
    )
    .expect("a line is a valid module")
}

/// `M_Ψ(λ)` on `window` (offsets not below `λ` carry the zero space).
pub fn verma(lie: &Arc<GradedLie>, lambda: &Weight, psi: &ParabolicType, window: &Window) -> Result<Induced> {
    induce(&line(lie, lambda), &ParabolicType::empty(lie.rank()), psi, window)
}

/// Shapovalov Gram matrix of a Verma module at `β`.
pub fn contravariant_gram(verma: &Induced, beta: &[i64]) -> Mat {
    tau_pairing(verma, beta)
}

/// `N(λ)`: the kernels of the Gram blocks.
pub fn radical_subspace(verma: &Induced) -> Subspace {
    let mut ops = RootOps::new(&verma.module);
    verma.module.window().iter().map(|o| (o.clone(), super::tau_pairing_block(verma, o, &mut ops).kernel())).collect()
}

pub fn radical_submodule(verma: &Induced) -> ModuleMap {
    super::inclusion(&verma.module, &radical_subspace(verma))
}

/// `L_Ψ(λ) = M_Ψ(λ)/N(λ)`.
pub fn simple(lie: &Arc<GradedLie>, lambda: &Weight, psi: &ParabolicType, window: &Window) -> Result<WeightModule> {
    Ok(simple_with_projection(lie, lambda, psi, window)?.0)
}

pub fn simple_with_projection(
    lie: &Arc<GradedLie>,
    lambda: &Weight,
    psi: &ParabolicType,
    window: &Window,
) -> Result<(WeightModule, ModuleMap, Induced)> {
    let v = verma(lie, lambda, psi, window)?;
    let (q, p) = quotient(&v.module, &radical_subspace(&v))?;
    Ok((q, p, v))
}

/// In-window coVerma module `M_Ψ(λ)^∨`.
pub fn coverma_trunc(
    lie: &Arc<GradedLie>,
    lambda: &Weight,
    psi: &ParabolicType,
    window: &Window,
) -> Result<WeightModule> {
    Ok(restricted_dual(&verma(lie, lambda, psi, window)?.module))
}

/// Highest weights (as offsets) with multiplicities, by peeling simple
/// characters in height order.
pub fn composition_factors(m: &WeightModule) -> Result<Vec<(Offset, usize)>> {
    let mut residual: BTreeMap<Offset, i64> = m.dims().iter().map(|(o, &d)| (o.clone(), d as i64)).collect();
    let mut out = Vec::new();
    for o in m.window().ordered() {
        let r = residual[&o];
        if r < 0 {
            return Err(Error::NegativeMultiplicity { offset: o, value: r });
        }
        if r == 0 {
            continue;
        }
        let l = simple(m.lie(), &m.weight_at(&o), m.active(), &m.window().below(&o))?;
        for (g, &d) in l.dims() {
            *residual.get_mut(g).expect("subwindow") -= r * d as i64;
        }
        out.push((o, r as usize));
    }
    Ok(out)
}

/// The map `M_Ψ(μ) → target` sending the top vector to `v ∈ target_β`,
/// where `μ` is the weight at `β`. The image of `X v_μ` is computed as
/// `x_1(x_2(⋯ x_k v))`.
pub fn hom_from_verma(target: &WeightModule, beta: &[i64], v: &[Q]) -> Result<(Induced, ModuleMap)> {
    let lie = target.lie();
    let source = verma(lie, &target.weight_at(beta), target.active(), target.window())?;
    let mut ops = RootOps::new(target);
    let mut blocks = BTreeMap::new();
    for (o, labels) in &source.basis {
        let mut m = Mat::zeros(target.dim(o), labels.len());
        for (c, (x, _)) in labels.iter().enumerate() {
            let mut cur = beta.to_vec();
            let mut w = v.to_vec();
            for &y in x.iter().rev() {
                w = ops.lower(y, &cur).mul_vec(&w);
                cur = add_offsets(&cur, lie.weight(y));
            }
            debug_assert_eq!(&cur, o);
            for (r, q) in w.into_iter().enumerate() {
                m.set(r, c, q);
            }
        }
        blocks.insert(o.clone(), m);
    }
    let map = ModuleMap { blocks, source_dims: source.module.dims().clone(), target_dims: target.dims().clone() };
    Ok((source, map))
}

/// Whether `L(λ)` (the quotient of a highest weight module by its maximal
/// proper submodule) is reached: convenience for highest weight modules.
pub fn simple_quotient(m: &WeightModule, top: &[i64]) -> Result<(WeightModule, ModuleMap)> {
    quotient(m, &max_proper_submodule(m, top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::presets;
    use crate::gla::build_graded_lie;
    use crate::wmod::{character, singular_vectors};

    fn sl2(h: usize) -> Arc<GradedLie> {
        Arc::new(build_graded_lie(&presets::a1(), h).unwrap())
    }

    fn full(n: usize) -> ParabolicType {
        ParabolicType::full(n)
    }

    #[test]
    fn sl2_verma_raising_closed_form() {
        let lie = sl2(6);
        for m in [-3i64, 0, 2, 5] {
            let v = verma(&lie, &Weight::from_ints(&[m]), &full(1), &Window::boxed(&[0], 6)).unwrap();
            v.module.check_relations().unwrap();
            for k in 1..=6i64 {
                let e = v.module.e_mat(0, &[k]);
                assert_eq!(e.get(0, 0), &Q::from_int(k * (m - k + 1)));
            }
        }
    }

    #[test]
    fn sl2_gram_is_falling_factorial() {
        let lie = sl2(5);
        let m = 3i64;
        let v = verma(&lie, &Weight::from_ints(&[m]), &full(1), &Window::boxed(&[0], 5)).unwrap();
        for k in 0..=5i64 {
            let expect: i64 = (1..=k).product::<i64>() * (0..k).map(|j| m - j).product::<i64>();
            assert_eq!(contravariant_gram(&v, &[k]).get(0, 0), &Q::from_int(expect));
        }
    }

    #[test]
    fn sl2_simple_and_factors() {
        let lie = sl2(5);
        let w = Window::boxed(&[0], 5);
        let l = simple(&lie, &Weight::from_ints(&[2]), &full(1), &w).unwrap();
        let dims: Vec<usize> = (0..=5).map(|k| l.dim(&[k])).collect();
        assert_eq!(dims, [1, 1, 1, 0, 0, 0]);
        let v = verma(&lie, &Weight::from_ints(&[2]), &full(1), &w).unwrap();
        assert_eq!(composition_factors(&v.module).unwrap(), vec![(vec![0], 1), (vec![3], 1)]);
        let (q, _) = simple_quotient(&v.module, &[0]).unwrap();
        assert_eq!(character(&q), character(&l));
    }

    #[test]
    fn sl3_verma_kostant_dims() {
        let lie = Arc::new(build_graded_lie(&presets::a2(), 6).unwrap());
        let lam = Weight::new(vec![Q::new(1, 2), Q::new(-1, 3)]);
        let v = verma(&lie, &lam, &full(2), &Window::boxed(&[0, 0], 3)).unwrap();
        v.module.check_relations().unwrap();
        for a in 0..=3i64 {
            for b in 0..=3i64 {
                assert_eq!(v.module.dim(&[a, b]), a.min(b) as usize + 1);
            }
        }
        let dual = restricted_dual(&v.module);
        dual.check_relations().unwrap();
    }

    #[test]
    fn singular_vector_gives_embedding() {
        let lie = sl2(6);
        let w = Window::boxed(&[0], 6);
        let v = verma(&lie, &Weight::from_ints(&[2]), &full(1), &w).unwrap();
        let s = singular_vectors(&v.module, &[3]);
        assert_eq!(s.cols(), 1);
        let (src, phi) = hom_from_verma(&v.module, &[3], &s.column(0)).unwrap();
        assert!(phi.is_equivariant(&src.module, &v.module));
        for k in 3..=6 {
            assert!(phi.is_injective_at(&[k]));
        }
    }
}
