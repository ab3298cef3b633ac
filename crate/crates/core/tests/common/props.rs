//! Property checks shared by the proptest suite and the acceptance run.
//! Each returns `Err` with a location on the first violation.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use minind_core::cartan::{add_offsets, presets, sub_offsets, CartanDatum, Offset, ParabolicType, Weight};
use minind_core::gla::{build_graded_lie, GradedLie, LieVec, RootId};
use minind_core::linalg::{intersect, span_contains, Mat};
use minind_core::pind::{ind_minimal, ind_minimal_map, j_minus_subspace, res_shriek};
use minind_core::wmod::{
    contravariant_gram, direct_sum, image_subspace, inclusion, quotient, restrict, simple, singular_vectors,
    submodule_generated, verma, Induced, ModuleMap, RootOps, WeightModule, Window,
};
use minind_core::Q;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

pub fn lie(d: &CartanDatum, h: usize) -> Arc<GradedLie> {
    Arc::new(build_graded_lie(d, h).unwrap())
}

pub struct GramFixture {
    pub verma: Induced,
    pub grams: BTreeMap<Offset, Mat>,
    pub offsets: Vec<Offset>,
}

pub fn gram_fixtures() -> &'static [GramFixture] {
    static F: OnceLock<Vec<GramFixture>> = OnceLock::new();
    F.get_or_init(|| {
        let cases = [
            (presets::a2(), Weight::new(vec![Q::new(1, 2), Q::from_int(-2)]), 4),
            (presets::affine_a1(), Weight::from_ints(&[1, -1]), 3),
            (presets::b2(), Weight::from_ints(&[2, 1]), 3),
        ];
        cases
            .into_iter()
            .map(|(d, lam, depth)| {
                let n = d.rank();
                let g = lie(&d, n * depth as usize);
                let w = Window::boxed(&vec![0; n], depth);
                let verma = verma(&g, &lam, &ParabolicType::full(n), &w).unwrap();
                let grams = w.iter().map(|o| (o.clone(), contravariant_gram(&verma, o))).collect();
                let offsets = w.ordered().into_iter().filter(|o| verma.module.dim(o) > 0).collect();
                GramFixture { verma, grams, offsets }
            })
            .collect()
    })
}

/// Symmetry of one Gram entry and `F_x^T G_{β+x} = G_β τ(F_x)` at `β`.
pub fn gram_sample(f: usize, o: usize, a: usize, b: usize, x: usize) -> Check {
    let fx = &gram_fixtures()[f % 3];
    let beta = &fx.offsets[o % fx.offsets.len()];
    let g = &fx.grams[beta];
    let (a, b) = (a % g.rows(), b % g.rows());
    ensure!(g.get(a, b) == g.get(b, a), "Gram asymmetric at {beta:?} ({a}, {b})");
    let m = &fx.verma.module;
    let x = x % m.lie().num_roots();
    let up = add_offsets(beta, m.lie().weight(x));
    if let Some(g_up) = fx.grams.get(&up) {
        let mut ops = RootOps::new(m);
        let lhs = ops.lower(x, beta).transpose().mul(g_up);
        ensure!(lhs == g.mul(&ops.tau(x, &up)), "contravariance fails at {beta:?} for root {x}");
    }
    Ok(())
}

/// `τ([F_x, F_y]) = [τ F_y, τ F_x]` at `β`.
pub fn tau_sample(f: usize, o: usize, x: usize, y: usize) -> Check {
    let fx = &gram_fixtures()[f % 3];
    let m = &fx.verma.module;
    let lie = m.lie();
    let (x, y) = (x % lie.num_roots(), y % lie.num_roots());
    let beta = &fx.offsets[o % fx.offsets.len()];
    let Ok(c) = lie.bracket(x, y) else { return Ok(()) };
    let mut ops = RootOps::new(m);
    let (bx, by) = (sub_offsets(beta, lie.weight(x)), sub_offsets(beta, lie.weight(y)));
    let mut lhs = Mat::zeros(m.dim(&sub_offsets(&bx, lie.weight(y))), m.dim(beta));
    for (z, k) in &c {
        lhs = lhs.add(&ops.tau(*z, beta).scale(k));
    }
    let rhs = ops.tau(y, &bx).mul(&ops.tau(x, beta)).sub(&ops.tau(x, &by).mul(&ops.tau(y, beta)));
    ensure!(lhs == rhs, "τ is not an anti-homomorphism on ({x}, {y}) at {beta:?}");
    Ok(())
}

fn lie_vec_sum(parts: &[LieVec]) -> BTreeMap<RootId, Q> {
    let mut out: BTreeMap<RootId, Q> = BTreeMap::new();
    for v in parts {
        for (k, c) in v {
            let e = out.entry(*k).or_insert_with(Q::zero);
            *e = &*e + c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Jacobi on every ordered triple of root vectors of total height `≤ 5`.
pub fn jacobi_all() -> Check {
    for d in
        [presets::a2(), presets::b2(), presets::g2(), presets::affine_a1(), presets::affine_a2(), presets::affine_d4()]
    {
        let g = lie(&d, 5);
        let ht = |r: RootId| g.weight(r).iter().sum::<i64>();
        let br =
            |a: RootId, b: RootId, c: RootId| g.bracket_vec(&vec![(a, Q::one())], &g.bracket(b, c).unwrap()).unwrap();
        for x in 0..g.num_roots() {
            for y in 0..g.num_roots() {
                for z in 0..g.num_roots() {
                    if ht(x) + ht(y) + ht(z) > 5 {
                        continue;
                    }
                    let s = lie_vec_sum(&[br(x, y, z), br(y, z, x), br(z, x, y)]);
                    ensure!(s.is_empty(), "Jacobi fails for {:?} on ({x}, {y}, {z})", d.matrix());
                }
            }
        }
    }
    Ok(())
}

/// Levi modules the induction checks run over: Verma and simple, on
/// `{sl2, sl3, affine sl2}` with several parabolic types, depth 2.
pub fn induced_fixtures() -> Vec<(WeightModule, ParabolicType, Window)> {
    let p = |n: usize, v: &[usize]| ParabolicType::new(n, v.iter().copied()).unwrap();
    let cases: Vec<(CartanDatum, Vec<ParabolicType>, Vec<Weight>)> = vec![
        (presets::a1(), vec![p(1, &[]), p(1, &[0])], vec![Weight::from_ints(&[2]), Weight::from_ints(&[-3])]),
        (
            presets::a2(),
            vec![p(2, &[]), p(2, &[0]), p(2, &[0, 1])],
            vec![Weight::from_ints(&[1, 1]), Weight::from_ints(&[-1, -1]), Weight::from_ints(&[0, 2])],
        ),
        (
            presets::affine_a1(),
            vec![p(2, &[]), p(2, &[1])],
            vec![Weight::from_ints(&[-2, 1]), Weight::from_ints(&[1, 1])],
        ),
    ];
    let mut out = Vec::new();
    for (d, xis, weights) in cases {
        let n = d.rank();
        let g = lie(&d, 2 * n);
        let w = Window::boxed(&vec![0; n], 2);
        for xi in &xis {
            for lam in &weights {
                out.push((verma(&g, lam, xi, &w).unwrap().module, xi.clone(), w.clone()));
                out.push((simple(&g, lam, xi, &w).unwrap(), xi.clone(), w.clone()));
            }
        }
    }
    out
}

/// `J⁻¹` is a submodule with zero layer coordinates, maximal among those
/// meeting the layer trivially; the layer lands inside `Ind_{!*}`.
pub fn j_minus_properties(nm: &WeightModule, xi: &ParabolicType, w: &Window) -> Check {
    let mi = ind_minimal(nm, xi, w).map_err(|e| e.to_string())?;
    let jm = j_minus_subspace(&mi);
    let shriek = &mi.shriek;
    restrict(&shriek.module, &jm).map_err(|e| format!("J⁻¹ is not a submodule: {e}"))?;
    let gens: Vec<(Offset, Vec<Q>)> =
        w.iter().flat_map(|b| (0..jm[b].cols()).map(|c| (b.clone(), jm[b].column(c))).collect::<Vec<_>>()).collect();
    for o in w.iter() {
        let k = &jm[o];
        for r in shriek.layer_positions(o) {
            ensure!(k.row(r).iter().all(Q::is_zero), "J⁻¹ has a layer coordinate at {o:?}");
        }
        let layer = shriek.layer_map(o);
        ensure!(intersect(k, &layer).cols() == 0, "J⁻¹ meets the layer at {o:?}");
        let image = mi.canonical.block(o).mul(&layer);
        ensure!(image.is_zero() || span_contains(&mi.inclusion.block(o), &image), "layer leaves Ind_!* at {o:?}");

        let dim = shriek.module.dim(o);
        let outside = (0..dim)
            .map(|c| Mat::identity(dim).column(c))
            .find(|v| !span_contains(k, &Mat::from_columns(dim, std::slice::from_ref(v))));
        if let Some(e) = outside {
            let mut more = gens.clone();
            more.push((o.clone(), e));
            let bigger = image_subspace(&submodule_generated(&shriek.module, &more));
            let meets = w.iter().any(|b| intersect(&bigger[b], &shriek.layer_map(b)).cols() > 0);
            ensure!(meets, "J⁻¹ is not maximal at {o:?}");
        }
    }
    Ok(())
}

/// `N → Res^!(Ind_!(N))` is injective.
pub fn unit_injective(nm: &WeightModule, xi: &ParabolicType, w: &Window) -> Check {
    let mi = ind_minimal(nm, xi, w).map_err(|e| e.to_string())?;
    let r = res_shriek(&mi.shriek.module, xi).map_err(|e| e.to_string())?;
    for o in nm.window().iter() {
        let coords = r.coords(o, &mi.shriek.layer_map(o)).ok_or(format!("layer outside the invariants at {o:?}"))?;
        ensure!(coords.rank() == nm.dim(o), "unit not injective at {o:?}");
    }
    Ok(())
}

/// `Ind_{!*}` of a Levi simple has no singular vectors below the top in the safe core.
pub fn induced_simple_has_no_lower_singular(d: &CartanDatum, xi: &ParabolicType, lam: &Weight, depth: i64) -> Check {
    let n = d.rank();
    let g = lie(d, n * depth as usize);
    let w = Window::boxed(&vec![0; n], depth);
    let mi = ind_minimal(&simple(&g, lam, xi, &w).unwrap(), xi, &w).map_err(|e| e.to_string())?;
    for o in w.safe_core(&ParabolicType::full(n)) {
        ensure!(o == lam.offset || singular_vectors(&mi.module, &o).cols() == 0, "singular vector at {o:?}");
    }
    Ok(())
}

fn random_submodule(m: &WeightModule, rng: &mut ChaCha8Rng) -> ModuleMap {
    let offsets: Vec<Offset> = m.window().ordered().into_iter().filter(|o| m.dim(o) > 0).collect();
    let o = offsets[rng.gen_range(1..offsets.len())].clone();
    let v: Vec<Q> = (0..m.dim(&o)).map(|_| Q::from_int(rng.gen_range(-2..=2))).collect();
    submodule_generated(m, &[(o, v)])
}

/// `Ind_{!*}` keeps `count` random injections `S ↪ N` and surjections
/// `N ↠ N/S` per-offset injective and surjective.
pub fn transport_pairs(rng: &mut ChaCha8Rng, count: usize) -> Check {
    let g = lie(&presets::a2(), 6);
    let w = Window::boxed(&[0, 0], 3);
    let xi = ParabolicType::new(2, [0]).unwrap();
    let lam = Weight::from_ints(&[1, 0]);
    let parts: Vec<WeightModule> = [[0, 0], [1, 0], [0, 1]]
        .iter()
        .map(|o| verma(&g, &lam.with_offset(o.to_vec()), &xi, &w).unwrap().module)
        .collect();
    let big = direct_sum(&direct_sum(&parts[0], &parts[1]).unwrap(), &parts[2]).unwrap();
    let target = ind_minimal(&big, &xi, &w).unwrap();
    let mut tested = 0;
    while tested < count {
        let sub_space = image_subspace(&random_submodule(&big, rng));
        if sub_space.values().all(|b| b.cols() == 0) {
            continue;
        }
        let sub = restrict(&big, &sub_space).map_err(|e| e.to_string())?;
        let (q, proj) = quotient(&big, &sub_space).map_err(|e| e.to_string())?;
        let a = ind_minimal(&sub, &xi, &w).map_err(|e| e.to_string())?;
        let c = ind_minimal(&q, &xi, &w).map_err(|e| e.to_string())?;
        let inj = ind_minimal_map(&inclusion(&big, &sub_space), &a, &target);
        let surj = ind_minimal_map(&proj, &target, &c);
        ensure!(inj.is_equivariant(&a.module, &target.module), "induced injection is not equivariant");
        ensure!(surj.is_equivariant(&target.module, &c.module), "induced surjection is not equivariant");
        for o in w.iter() {
            ensure!(inj.is_injective_at(o), "injection lost at {o:?}");
            ensure!(surj.is_surjective_at(o), "surjection lost at {o:?}");
        }
        tested += 1;
    }
    Ok(())
}
