//! Checks built on the induction functors: exactness transport, joyful
//! weights, minimal-type extensions, annihilator inclusions and the affine
//! highest-weight-vector computations.

use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{coroot_eval, dot_reflect, dot_word, is_nonneg, sub_offsets, unit, Offset, ParabolicType, Weight};
use crate::error::{Error, Result};
use crate::gla::GradedLie;
use crate::linalg::{span_contains, Mat};
use crate::pind::{
    ind_minimal, ind_minimal_map, ind_shriek_map, induced_subspace, j_minus_subspace, res_shriek, res_shriek_map,
    MinimalInduction,
};
use crate::rational::Q;
use crate::wmod::{
    character, composition_factors, direct_sum, hom_from_verma, inclusion, max_proper_submodule, quotient,
    radical_subspace, restrict, simple, simple_with_projection, singular_vectors, submodule_generated, subspace_dims,
    subspace_sum, subspaces_equal, verma, Character, ModuleMap, OffsetExactness, ShortExactSeq, WeightModule, Window,
};

/// Per-offset exactness with the verdict taken over the core offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub offsets: Vec<ExactRow>,
    /// Offsets checked but excluded from the verdict.
    pub boundary: Vec<Offset>,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactRow {
    pub offset: Offset,
    pub injective: bool,
    pub image_is_kernel: bool,
    pub surjective: bool,
}

impl From<OffsetExactness> for ExactRow {
    fn from(e: OffsetExactness) -> Self {
        ExactRow {
            offset: e.offset,
            injective: e.injective,
            image_is_kernel: e.image_is_kernel,
            surjective: e.surjective,
        }
    }
}

impl ExactnessReport {
    fn of(ses: &ShortExactSeq, core: &[Offset]) -> Self {
        let mut offsets = Vec::new();
        let mut boundary = Vec::new();
        let mut verdict = true;
        for o in ses.middle.window().ordered() {
            let row: ExactRow = ses.exactness_at(&o).into();
            let ok = row.injective && row.image_is_kernel && row.surjective;
            if core.contains(&o) {
                verdict &= ok;
            } else {
                boundary.push(o);
            }
            offsets.push(row);
        }
        ExactnessReport { offsets, boundary, verdict }
    }
}

fn is_strictly_above(beta: &[i64], top: &[i64]) -> bool {
    let d = sub_offsets(top, beta);
    is_nonneg(&d) && d.iter().any(|&x| x != 0)
}

/// Whether `m` is simple with highest weight at `top` in-window.
fn is_simple_highest(m: &WeightModule, top: &[i64]) -> bool {
    let gen = submodule_generated(m, &[(top.to_vec(), vec![Q::one()])]);
    m.dim(top) == 1
        && m.window().iter().all(|o| gen.block(o).cols() == m.dim(o))
        && max_proper_submodule(m, top).values().all(|k| k.cols() == 0)
}

/// Restricts `0 → M₁ → M₂ → L(λ) → 0` along `Ξ` with `Res^!`.
pub fn check_res_exact(ses: &ShortExactSeq, lambda_top: &[i64], xi: &ParabolicType) -> Result<ExactnessReport> {
    if let Some((o, _)) = ses.sub.dims().iter().find(|(o, &d)| d > 0 && is_strictly_above(o, lambda_top)) {
        return Err(Error::HypothesisFailed(format!("submodule has weight above the quotient top at offset {o:?}")));
    }
    if !is_simple_highest(&ses.quotient, lambda_top) {
        return Err(Error::HypothesisFailed("quotient is not simple with the given top".into()));
    }
    let rs = res_shriek(&ses.sub, xi)?;
    let rm = res_shriek(&ses.middle, xi)?;
    let rq = res_shriek(&ses.quotient, xi)?;
    let missing = || Error::HypothesisFailed("restricted map leaves the invariants".into());
    let inj = res_shriek_map(&ses.inj, &rs, &rm).ok_or_else(missing)?;
    let surj = res_shriek_map(&ses.surj, &rm, &rq).ok_or_else(missing)?;
    let mut boundary: Vec<Offset> = rs.boundary.iter().chain(&rm.boundary).chain(&rq.boundary).cloned().collect();
    boundary.sort();
    boundary.dedup();
    let core: Vec<Offset> = ses.middle.window().ordered().into_iter().filter(|o| !boundary.contains(o)).collect();
    let restricted = ShortExactSeq { sub: rs.module, middle: rm.module, quotient: rq.module, inj, surj };
    Ok(ExactnessReport::of(&restricted, &core))
}

fn require_integral(lie: &GradedLie, lambda: &Weight) -> Result<()> {
    if lambda.is_integral(lie.datum()) {
        Ok(())
    } else {
        Err(Error::HypothesisFailed("weight is not integral on every coroot".into()))
    }
}

/// One offset of a joyfulness comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoyfulRow {
    pub offset: Offset,
    pub radical: usize,
    pub j_minus: usize,
    pub induced_radical: usize,
    pub sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoyfulReport {
    pub holds: bool,
    pub rows: Vec<JoyfulRow>,
    pub boundary: Vec<Offset>,
}

/// Compares `N(λ)` with `J⁻¹(M_Ξ(λ)) + Ind_!(N_Ξ(λ))` inside
/// `Ind_!(M_Ξ(λ)) = M(λ)`.
pub fn joyful_check(
    lie: &Arc<GradedLie>,
    lambda: &Weight,
    xi: &ParabolicType,
    window: &Window,
) -> Result<JoyfulReport> {
    require_integral(lie, lambda)?;
    let mx = verma(lie, lambda, xi, window)?;
    let n_xi = radical_subspace(&mx);
    let mi = ind_minimal(&mx.module, xi, window)?;
    let radical = max_proper_submodule(&mi.shriek.module, &lambda.offset);
    let jm = j_minus_subspace(&mi);
    let ind = induced_subspace(&mi.shriek, &n_xi);
    let sum = subspace_sum(&jm, &ind);
    let core = window.safe_core(&ParabolicType::full(lie.rank()));
    let (rd, jd, id, sd) = (subspace_dims(&radical), subspace_dims(&jm), subspace_dims(&ind), subspace_dims(&sum));
    let rows = window
        .ordered()
        .into_iter()
        .map(|o| JoyfulRow { radical: rd[&o], j_minus: jd[&o], induced_radical: id[&o], sum: sd[&o], offset: o })
        .collect();
    let boundary = window.ordered().into_iter().filter(|o| !core.contains(o)).collect();
    Ok(JoyfulReport { holds: subspaces_equal(&radical, &sum, &core), rows, boundary })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjRow {
    pub offset: Offset,
    pub source: usize,
    pub target: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingSurjReport {
    pub holds: bool,
    pub rows: Vec<SurjRow>,
}

/// Per-offset rank of `J⁻¹(A) → J⁻¹(B)` induced by `φ : A → B`.
fn j_minus_rows(phi: &ModuleMap, a: &MinimalInduction, b: &MinimalInduction) -> (bool, Vec<SurjRow>) {
    let full = ind_shriek_map(phi, &a.shriek, &b.shriek);
    let (ka, kb) = (j_minus_subspace(a), j_minus_subspace(b));
    let mut ok = true;
    let mut rows = Vec::new();
    for o in a.shriek.module.window().ordered() {
        let image = full.block(&o).mul(&ka[&o]);
        let inside = image.cols() == 0 || image.is_zero() || span_contains(&kb[&o], &image);
        let rank = image.rank();
        ok &= inside && rank == kb[&o].cols();
        rows.push(SurjRow { source: ka[&o].cols(), target: kb[&o].cols(), rank, offset: o });
    }
    (ok, rows)
}

/// Surjectivity of `J⁻¹(M_Ξ(λ)) → J⁻¹(L_Ξ(λ))`, for joyful `λ`.
pub fn check_sing_surj(
    lie: &Arc<GradedLie>,
    lambda: &Weight,
    xi: &ParabolicType,
    window: &Window,
) -> Result<SingSurjReport> {
    if !joyful_check(lie, lambda, xi, window)?.holds {
        return Err(Error::HypothesisFailed("weight is not joyful for this parabolic type".into()));
    }
    let (l, p, v) = simple_with_projection(lie, lambda, xi, window)?;
    let a = ind_minimal(&v.module, xi, window)?;
    let b = ind_minimal(&l, xi, window)?;
    let (holds, rows) = j_minus_rows(&p, &a, &b);
    Ok(SingSurjReport { holds, rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransportReport {
    pub exactness: ExactnessReport,
    /// Surjectivity of `J⁻¹(middle) → J⁻¹(quotient)`.
    pub j_minus_surjective: bool,
    /// `Res^!` of the induced sequence is identified with the original.
    pub restriction_recovers: bool,
    #[serde(skip)]
    pub induced: ShortExactSeq,
}

/// Applies `Ind_{Ξ,!*}` to `0 → L_Ξ(μ) → Q → L_Ξ(λ) → 0`.
pub fn transport_ses_through_ind_minimal(
    ses: &ShortExactSeq,
    xi: &ParabolicType,
    window: &Window,
    mu_top: &[i64],
    lambda_top: &[i64],
) -> Result<TransportReport> {
    let lie = ses.middle.lie();
    let diff = sub_offsets(lambda_top, mu_top);
    if is_nonneg(&diff) && xi.supports(&diff) {
        return Err(Error::HypothesisFailed("μ − λ lies in the positive cone of Ξ".into()));
    }
    let lambda = ses.quotient.weight_at(lambda_top);
    if !joyful_check(lie, &lambda, xi, window)?.holds {
        return Err(Error::HypothesisFailed("quotient weight is not joyful".into()));
    }
    let a = ind_minimal(&ses.sub, xi, window)?;
    let b = ind_minimal(&ses.middle, xi, window)?;
    let c = ind_minimal(&ses.quotient, xi, window)?;
    let induced = ShortExactSeq {
        inj: ind_minimal_map(&ses.inj, &a, &b),
        surj: ind_minimal_map(&ses.surj, &b, &c),
        sub: a.module.clone(),
        middle: b.module.clone(),
        quotient: c.module.clone(),
    };
    let core = window.safe_core(&ParabolicType::full(lie.rank()));
    let exactness = ExactnessReport::of(&induced, &core);
    let (j_minus_surjective, _) = j_minus_rows(&ses.surj, &b, &c);
    let restriction_recovers = restriction_recovers(ses, &[&a, &b, &c], &induced, xi)?;
    Ok(TransportReport { exactness, j_minus_surjective, restriction_recovers, induced })
}

/// `Res^!` of the induced sequence, compared with the original through the
/// layer maps: each term is identified and both squares commute.
fn restriction_recovers(
    ses: &ShortExactSeq,
    terms: &[&MinimalInduction; 3],
    induced: &ShortExactSeq,
    xi: &ParabolicType,
) -> Result<bool> {
    let originals = [&ses.sub, &ses.middle, &ses.quotient];
    let mut res = Vec::new();
    let mut ids = Vec::new();
    for (t, n) in terms.iter().zip(originals) {
        let r = res_shriek(&t.module, xi)?;
        let layer = ModuleMap {
            blocks: n.window().iter().map(|o| (o.clone(), t.layer_map(o))).collect(),
            source_dims: n.dims().clone(),
            target_dims: t.module.dims().clone(),
        };
        let Some(id) = r.pull(&layer) else { return Ok(false) };
        if n.window().iter().any(|o| id.rank_at(o) != n.dim(o) || r.module.dim(o) != n.dim(o)) {
            return Ok(false);
        }
        res.push(r);
        ids.push(id);
    }
    let (Some(ri), Some(rs)) =
        (res_shriek_map(&induced.inj, &res[0], &res[1]), res_shriek_map(&induced.surj, &res[1], &res[2]))
    else {
        return Ok(false);
    };
    Ok(ses.middle.window().iter().all(|o| {
        ri.block(o).mul(&ids[0].block(o)) == ids[1].block(o).mul(&ses.inj.block(o))
            && rs.block(o).mul(&ids[1].block(o)) == ids[2].block(o).mul(&ses.surj.block(o))
    }))
}

/// `0 → A → A ⊕ B → B → 0`.
pub fn split_sequence(a: &WeightModule, b: &WeightModule) -> Result<ShortExactSeq> {
    let middle = direct_sum(a, b)?;
    let mut inj = std::collections::BTreeMap::new();
    let mut surj = std::collections::BTreeMap::new();
    for o in middle.window().iter() {
        let (da, db) = (a.dim(o), b.dim(o));
        inj.insert(o.clone(), Mat::identity(da).vstack(&Mat::zeros(db, da)));
        surj.insert(o.clone(), Mat::zeros(db, da).hstack(&Mat::identity(db)));
    }
    Ok(ShortExactSeq {
        inj: ModuleMap { blocks: inj, source_dims: a.dims().clone(), target_dims: middle.dims().clone() },
        surj: ModuleMap { blocks: surj, source_dims: middle.dims().clone(), target_dims: b.dims().clone() },
        sub: a.clone(),
        quotient: b.clone(),
        middle,
    })
}

/// The quotient presentation `0 → K → M → M/K → 0` of a highest weight
/// module by its maximal proper submodule.
pub fn radical_sequence(m: &WeightModule, top: &[i64]) -> Result<ShortExactSeq> {
    let k = max_proper_submodule(m, top);
    let sub = restrict(m, &k)?;
    let inj = inclusion(m, &k);
    let (q, surj) = quotient(m, &k)?;
    Ok(ShortExactSeq { sub, middle: m.clone(), quotient: q, inj, surj })
}

/// Evidence that `0 → L(s_i·λ) → Ind_{α_i,!*}(M_{α_i}(λ)) → L(λ) → 0` is
/// a non-split extension in-window.
#[derive(Debug, Clone, Serialize)]
pub struct NonSplitCertificate {
    pub top: Offset,
    pub sub_top: Offset,
    pub factors: Vec<(Offset, usize)>,
    pub middle: Character,
    pub generated: Character,
    pub exact: bool,
    /// Singular vectors of the middle at the sub's top lie in the sub.
    pub singular_inside_sub: bool,
    #[serde(skip)]
    pub ses: ShortExactSeq,
}

impl NonSplitCertificate {
    pub fn holds(&self) -> bool {
        self.exact && self.singular_inside_sub && self.generated == self.middle && self.factors.len() == 2
    }
}

pub fn minimal_type_sequence(
    lie: &Arc<GradedLie>,
    i: usize,
    lambda: &Weight,
    window: &Window,
) -> Result<NonSplitCertificate> {
    let datum = lie.datum();
    datum.check_index(i)?;
    let n = coroot_eval(datum, lambda, i)
        .to_i64()
        .filter(|&n| n >= 0)
        .ok_or_else(|| Error::HypothesisFailed(format!("coroot {i} must pair with λ to a non-negative integer")))?;
    let xi = ParabolicType::new(lie.rank(), [i])?;
    let top = lambda.offset.clone();
    let sub_top = dot_reflect(datum, lambda, i).expect("integral pairing").offset;
    debug_assert_eq!(sub_top[i] - top[i], n + 1);
    let retry = |what: String| Error::CharacterMismatch(format!("{what}; retry with a window of twice the depth"));
    if !window.contains(&sub_top) {
        return Err(retry(format!("the sub top {sub_top:?} lies outside the window")));
    }
    let mx = verma(lie, lambda, &xi, window)?;
    let mi = ind_minimal(&mx.module, &xi, window)?;
    let middle = mi.module;
    let factors = composition_factors(&middle)?;
    let expected = vec![(top.clone(), 1), (sub_top.clone(), 1)];
    if factors != expected {
        return Err(retry(format!("composition factors {factors:?}, expected {expected:?}")));
    }
    let full = ParabolicType::full(lie.rank());
    let l_top = simple(lie, lambda, &full, window)?;
    let l_sub = simple(lie, &lambda.with_offset(sub_top.clone()), &full, window)?;
    let sum: Character = window.iter().map(|o| (o.clone(), l_top.dim(o) + l_sub.dim(o))).collect();
    if character(&middle) != sum {
        return Err(retry("middle character differs from the sum of the two simple characters".into()));
    }
    let ses = radical_sequence(&middle, &top)?;
    if character(&ses.sub) != character(&l_sub) || character(&ses.quotient) != character(&l_top) {
        return Err(retry("sub or quotient character differs from the simple one".into()));
    }
    let generated = character_of(&submodule_generated(&middle, &[(top.clone(), vec![Q::one()])]));
    let exact = window.iter().all(|o| ses.is_exact_at(o));
    let sing = singular_vectors(&middle, &sub_top);
    let sub_basis = ses.inj.block(&sub_top);
    let singular_inside_sub = sing.cols() == 0 || (sub_basis.cols() > 0 && span_contains(&sub_basis, &sing));
    Ok(NonSplitCertificate {
        top,
        sub_top,
        factors,
        middle: character(&middle),
        generated,
        exact,
        singular_inside_sub,
        ses,
    })
}

fn character_of(phi: &ModuleMap) -> Character {
    phi.source_dims.clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorWitness {
    pub injective: bool,
    pub source_top: Offset,
    pub target_top: Offset,
    pub ranks: Vec<(Offset, usize, usize)>,
}

/// `Ind_{!*}(M_Ξ(λ)) → Ind_{!*}(M_Ξ(w·λ))` induced by the embedding of
/// Verma modules, for `λ` anti-dominant integral on `Ξ` and `w ∈ W_Ξ`.
pub fn annihilator_inclusion_witness(
    lie: &Arc<GradedLie>,
    lambda: &Weight,
    xi: &ParabolicType,
    word: &[usize],
    window: &Window,
) -> Result<AnnihilatorWitness> {
    let datum = lie.datum();
    if !datum.is_finite_type(xi) {
        return Err(Error::HypothesisFailed("Ξ is not of finite type".into()));
    }
    for a in xi.iter() {
        let s = coroot_eval(datum, lambda, a) + Q::one();
        if !s.is_integer() || s.is_positive() {
            return Err(Error::HypothesisFailed(format!("⟨λ+ρ, α_{a}^∨⟩ = {s} is not a non-positive integer")));
        }
    }
    if let Some(&a) = word.iter().find(|&&a| !xi.contains(a)) {
        return Err(Error::HypothesisFailed(format!("reflection {a} is not in the Weyl group of Ξ")));
    }
    let w_lambda = dot_word(datum, lambda, word).expect("integral on Ξ");
    if !window.contains(&w_lambda.offset) || !window.contains(&lambda.offset) {
        return Err(Error::HypothesisFailed("window must contain both highest weights".into()));
    }
    let target = verma(lie, &w_lambda, xi, window)?.module;
    let sing = singular_vectors(&target, &lambda.offset);
    if sing.cols() == 0 {
        return Err(Error::HypothesisFailed("no singular vector of weight λ in the target".into()));
    }
    let (source, phi) = hom_from_verma(&target, &lambda.offset, &sing.column(0))?;
    let a = ind_minimal(&source.module, xi, window)?;
    let b = ind_minimal(&target, xi, window)?;
    let induced = ind_minimal_map(&phi, &a, &b);
    let ranks: Vec<(Offset, usize, usize)> =
        window.ordered().into_iter().map(|o| (o.clone(), a.module.dim(&o), induced.rank_at(&o))).collect();
    let injective = ranks.iter().all(|(_, d, r)| d == r);
    Ok(AnnihilatorWitness { injective, source_top: lambda.offset.clone(), target_top: w_lambda.offset, ranks })
}

/// `w·λ = w'·λ + k α_j`, words applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DotEquality {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub root: usize,
    pub coefficient: i64,
}

impl DotEquality {
    pub fn new(lhs: &[usize], rhs: &[usize], root: usize, coefficient: i64) -> Self {
        DotEquality { lhs: lhs.to_vec(), rhs: rhs.to_vec(), root, coefficient }
    }

    pub fn holds(&self, datum: &crate::cartan::CartanDatum, lambda: &Weight) -> bool {
        let (Some(l), Some(r)) = (dot_word(datum, lambda, &self.lhs), dot_word(datum, lambda, &self.rhs)) else {
            return false;
        };
        let mut shifted = r.offset.clone();
        shifted[self.root] -= self.coefficient;
        l.offset == shifted
    }
}

/// The dot-action chain through `−Λ_4` for affine `E_8`.
pub fn e8_dot_chain() -> Vec<DotEquality> {
    vec![
        DotEquality::new(&[], &[2], 2, 1),
        DotEquality::new(&[], &[3], 3, 1),
        DotEquality::new(&[3], &[1, 3], 1, 2),
        DotEquality::new(&[], &[5], 5, 1),
        DotEquality::new(&[5], &[6, 5], 6, 2),
        DotEquality::new(&[6, 5], &[7, 6, 5], 7, 3),
        DotEquality::new(&[7, 6, 5], &[8, 7, 6, 5], 8, 4),
        DotEquality::new(&[8, 7, 6, 5], &[0, 8, 7, 6, 5], 0, 5),
    ]
}

/// `−Λ_2 = s_k·(−Λ_2) + α_k` around the trivalent node of affine `D_4`.
pub fn d4_dot_chain() -> Vec<DotEquality> {
    [0, 1, 3, 4].iter().map(|&k| DotEquality::new(&[], &[k], k, 1)).collect()
}

/// `−Λ_k` as a weight.
pub fn negative_fundamental(rank: usize, k: usize) -> Weight {
    let mut evals = vec![Q::zero(); rank];
    evals[k] = Q::from_int(-1);
    Weight::new(evals)
}

/// One generator's highest-weight-vector computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub index: usize,
    /// `e_j f_i (1 ⊗ v) = 0` for all `j ≠ i`.
    pub mixed_vanish: bool,
    /// `e_i f_i (1 ⊗ v) = c (1 ⊗ v)`.
    pub scalar: Option<Q>,
    pub expected_scalar: Q,
    /// `f_i · v̄ = 0` in `Ind_{!*}`.
    pub vanishes_in_minimal: bool,
}

impl GeneratorCheck {
    pub fn passed(&self) -> bool {
        self.mixed_vanish
            && self.scalar.as_ref() == Some(&self.expected_scalar)
            && self.vanishes_in_minimal == self.expected_scalar.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineReport {
    pub xi: Vec<usize>,
    pub generators: Vec<GeneratorCheck>,
    pub dot_chain: Vec<(DotEquality, bool)>,
    pub minimal_dims: Vec<(Offset, usize)>,
}

impl AffineReport {
    pub fn passed(&self) -> bool {
        self.generators.iter().all(GeneratorCheck::passed) && self.dot_chain.iter().all(|(_, ok)| *ok)
    }
}

/// Inside `Ind_{α_k,!}(M_{α_k}(λ))`, checks `f_i (1 ⊗ v)` for every
/// `i ≠ k` and whether it survives in `Ind_{!*}`.
pub fn affine_example_checks(
    lie: &Arc<GradedLie>,
    lambda: &Weight,
    k: usize,
    window: &Window,
    chain: &[DotEquality],
) -> Result<AffineReport> {
    let datum = lie.datum();
    let n = lie.rank();
    let xi = ParabolicType::new(n, [k])?;
    let mx = verma(lie, lambda, &xi, window)?;
    let mi = ind_minimal(&mx.module, &xi, window)?;
    let m = &mi.shriek.module;
    let top = &lambda.offset;
    let v0 = mi.shriek.layer_map(top);
    let mut generators = Vec::new();
    for i in (0..n).filter(|&i| i != k) {
        let up = crate::cartan::add_offsets(top, &unit(n, i));
        let w = m.f_mat(i, top).mul(&v0);
        let mixed_vanish = (0..n).filter(|&j| j != i).all(|j| {
            let t = sub_offsets(&up, &unit(n, j));
            !m.window().contains(&t) || m.e_mat(j, &up).mul(&w).is_zero()
        });
        let back = m.e_mat(i, &up).mul(&w);
        let scalar = solve_scalar(&back, &v0);
        let vanishes_in_minimal = mi.projection.block(&up).mul(&w).is_zero();
        generators.push(GeneratorCheck {
            index: i,
            mixed_vanish,
            scalar,
            expected_scalar: coroot_eval(datum, lambda, i),
            vanishes_in_minimal,
        });
    }
    let dot_chain = chain.iter().map(|d| (d.clone(), d.holds(datum, lambda))).collect();
    let minimal_dims = window.ordered().into_iter().map(|o| (o.clone(), mi.module.dim(&o))).collect();
    Ok(AffineReport { xi: vec![k], generators, dot_chain, minimal_dims })
}

/// `c` with `a = c b` for a nonzero column `b`.
fn solve_scalar(a: &Mat, b: &Mat) -> Option<Q> {
    b.solve(a).filter(|x| x.rows() == 1).map(|x| x.get(0, 0).clone())
}
