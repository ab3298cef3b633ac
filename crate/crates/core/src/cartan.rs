//! Generalized Cartan matrices, weights, the dot action and parabolic types.
//!
//! Convention: `A[i][j] = ⟨α_j, α_i^∨⟩`. Indices are 0-based internally;
//! human-facing labels are stored on the datum.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

/// A root-lattice offset `β`, read as `−Σ β_i α_i` relative to a base.
pub type Offset = Vec<i64>;

pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

/// Height first, then descending lexicographic order, so that for rank 2 the
/// sequence reads `(1,0), (0,1), (2,0), (1,1), (0,2)`.
pub fn offset_cmp(a: &[i64], b: &[i64]) -> Ordering {
    height(a).cmp(&height(b)).then_with(|| b.cmp(a))
}

pub fn unit(n: usize, i: usize) -> Offset {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn add_offsets(a: &[i64], b: &[i64]) -> Offset {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_offsets(a: &[i64], b: &[i64]) -> Offset {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_nonneg(a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
}

/// A validated symmetrizable generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanDatum {
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    labels: Vec<String>,
}

/// Validates `matrix` and computes its minimal positive symmetrizer.
pub fn load_cartan(matrix: &[Vec<i64>]) -> Result<CartanDatum> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::NotGcm { row: 0, col: 0, reason: "empty matrix".into() });
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotGcm { row: i, col: row.len(), reason: "matrix is not square".into() });
        }
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i == j && x != 2 {
                return Err(Error::NotGcm { row: i, col: j, reason: format!("diagonal entry {x} is not 2") });
            }
            if i != j && x > 0 {
                return Err(Error::NotGcm { row: i, col: j, reason: format!("off-diagonal entry {x} is positive") });
            }
            if i != j && (x == 0) != (matrix[j][i] == 0) {
                return Err(Error::NotGcm { row: i, col: j, reason: "zero pattern is not symmetric".into() });
            }
        }
    }
    let d = symmetrizer(matrix)?;
    Ok(CartanDatum { a: matrix.to_vec(), d, labels: (1..=n).map(|i| i.to_string()).collect() })
}

/// Minimal positive integral `d` with `d_i A_ij = d_j A_ji`, per connected
/// component of the Dynkin graph.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Q::one());
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().expect("assigned");
            for j in 0..n {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                let want = &di * &Q::new(a[i][j], a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(want);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(dj) if *dj != want => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
        let (mut num_gcd, mut den_lcm) = (0i64, 1i64);
        for &c in &component {
            let (p, q) = d[c].as_ref().expect("assigned").numer_denom_strings();
            let (p, q): (i64, i64) = (p.parse().expect("small"), q.parse().expect("small"));
            num_gcd = num_gcd.gcd(&p);
            den_lcm = den_lcm.lcm(&q);
        }
        let scale = Q::new(den_lcm, num_gcd);
        for &c in &component {
            d[c] = Some(&scale * d[c].as_ref().expect("assigned"));
        }
    }
    Ok(d.into_iter().map(|x| x.and_then(|q| q.to_i64()).expect("integral")).collect())
}

impl CartanDatum {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::Parse(format!("expected {} labels, got {}", self.rank(), labels.len())));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Parse("labels are not distinct".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label.trim())
            .ok_or_else(|| Error::Parse(format!("unknown simple-root label {label:?}")))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// `⟨Σ β_j α_j, α_i^∨⟩`.
    pub fn root_pairing(&self, beta: &[i64], i: usize) -> i64 {
        self.a[i].iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    /// Symmetric bilinear form `(α_i, α_j) = d_i A_ij` on root-lattice vectors.
    pub fn root_form(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter()
            .zip(&self.d)
            .zip(&self.a)
            .map(|((xi, di), row)| xi * di * row.iter().zip(y).map(|(a, yj)| a * yj).sum::<i64>())
            .sum()
    }

    /// Whether the principal block on `xi` is positive definite after
    /// symmetrization (leading principal minors test).
    pub fn is_finite_type(&self, xi: &ParabolicType) -> bool {
        let idx: Vec<usize> = xi.iter().collect();
        (1..=idx.len()).all(|k| {
            let block: Vec<Vec<i64>> =
                idx[..k].iter().map(|&i| idx[..k].iter().map(|&j| self.d[i] * self.a[i][j]).collect()).collect();
            crate::linalg::Mat::from_i64(&block).determinant().is_positive()
        })
    }

    pub fn root_candidates(&self, cutoff: usize) -> Vec<Offset> {
        enumerate_root_candidates(self.rank(), cutoff)
    }
}

/// All nonzero `β ∈ Z^n_{≥0}` with height at most `cutoff`, ordered by
/// [`offset_cmp`].
pub fn enumerate_root_candidates(n: usize, cutoff: usize) -> Vec<Offset> {
    let mut out = Vec::new();
    for h in 1..=cutoff as i64 {
        compositions(n, h, &mut vec![], &mut out);
    }
    out
}

fn compositions(n: usize, h: i64, prefix: &mut Vec<i64>, out: &mut Vec<Offset>) {
    if prefix.len() + 1 == n {
        prefix.push(h);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=h).rev() {
        prefix.push(first);
        compositions(n, h - first, prefix, out);
        prefix.pop();
    }
}

/// A subset `Ξ` of simple-root indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicType {
    rank: usize,
    members: BTreeSet<usize>,
}

impl ParabolicType {
    pub fn new(rank: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for i in members {
            if i >= rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
            if !set.insert(i) {
                return Err(Error::Parse(format!("duplicate index {i} in parabolic type")));
            }
        }
        Ok(ParabolicType { rank, members: set })
    }

    pub fn empty(rank: usize) -> Self {
        ParabolicType { rank, members: BTreeSet::new() }
    }

    pub fn full(rank: usize) -> Self {
        ParabolicType { rank, members: (0..rank).collect() }
    }

    /// Parses a comma-separated list of labels.
    pub fn parse(datum: &CartanDatum, text: &str) -> Result<Self> {
        let idx = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| datum.label_index(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(datum.rank(), idx)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.rank
    }

    pub fn complement(&self) -> ParabolicType {
        ParabolicType { rank: self.rank, members: (0..self.rank).filter(|i| !self.contains(*i)).collect() }
    }

    /// `β ∈ ZΞ`.
    pub fn supports(&self, beta: &[i64]) -> bool {
        beta.iter().enumerate().all(|(i, &b)| b == 0 || self.contains(i))
    }

    pub fn is_subset(&self, other: &ParabolicType) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// `μ = λ_base − Σ offset_i α_i`, with the base recorded through its coroot
/// evaluations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub evals: Vec<Q>,
    pub offset: Offset,
}

impl Weight {
    pub fn new(evals: Vec<Q>) -> Self {
        let n = evals.len();
        Weight { evals, offset: vec![0; n] }
    }

    pub fn from_ints(evals: &[i64]) -> Self {
        Self::new(evals.iter().map(|&x| Q::from_int(x)).collect())
    }

    pub fn rho(n: usize) -> Self {
        Self::new(vec![Q::one(); n])
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Q::zero(); n])
    }

    pub fn rank(&self) -> usize {
        self.evals.len()
    }

    pub fn with_offset(&self, offset: Offset) -> Self {
        Weight { evals: self.evals.clone(), offset }
    }

    /// `μ − Σ β_i α_i`.
    pub fn lower(&self, beta: &[i64]) -> Self {
        self.with_offset(add_offsets(&self.offset, beta))
    }

    pub fn same_base(&self, other: &Weight) -> bool {
        self.evals == other.evals
    }

    fn require_same_base(&self, other: &Weight) -> Result<()> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    /// The same weight re-expressed with its offset absorbed into the base.
    pub fn rebased(&self, datum: &CartanDatum) -> Weight {
        Weight::new((0..self.rank()).map(|i| coroot_eval(datum, self, i)).collect())
    }

    pub fn is_integral(&self, datum: &CartanDatum) -> bool {
        (0..self.rank()).all(|i| coroot_eval(datum, self, i).is_integer())
    }
}

pub fn coroot_eval(datum: &CartanDatum, mu: &Weight, i: usize) -> Q {
    &mu.evals[i] - &Q::from_int(datum.root_pairing(&mu.offset, i))
}

/// `s_i·μ = μ − ⟨μ+ρ, α_i^∨⟩ α_i`. Defined for integral `⟨μ+ρ, α_i^∨⟩`
/// only, since offsets are integral; returns `None` otherwise.
pub fn dot_reflect(datum: &CartanDatum, mu: &Weight, i: usize) -> Option<Weight> {
    let k = (coroot_eval(datum, mu, i) + Q::one()).to_i64()?;
    let mut offset = mu.offset.clone();
    offset[i] += k;
    Some(mu.with_offset(offset))
}

/// Applies `s_{w_1} s_{w_2} ⋯ s_{w_k}` with the rightmost letter first.
pub fn dot_word(datum: &CartanDatum, mu: &Weight, word: &[usize]) -> Option<Weight> {
    word.iter().rev().try_fold(mu.clone(), |w, &i| dot_reflect(datum, &w, i))
}

/// `μ ≤ ν` iff `μ.offset − ν.offset ∈ Z^n_{≥0}`.
pub fn weight_leq(mu: &Weight, nu: &Weight) -> Result<bool> {
    mu.require_same_base(nu)?;
    Ok(is_nonneg(&sub_offsets(&mu.offset, &nu.offset)))
}

pub fn in_xi_coset(mu: &Weight, nu: &Weight, xi: &ParabolicType) -> Result<bool> {
    mu.require_same_base(nu)?;
    Ok(xi.supports(&sub_offsets(&mu.offset, &nu.offset)))
}

/// Root multiplicities up to a height cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub cutoff: usize,
    pub multiplicities: BTreeMap<Offset, usize>,
}

impl RootDatum {
    pub fn multiplicity(&self, beta: &[i64]) -> usize {
        self.multiplicities.get(beta).copied().unwrap_or(0)
    }

    /// Roots with positive multiplicity, in [`offset_cmp`] order.
    pub fn roots(&self) -> Vec<(Offset, usize)> {
        let mut v: Vec<(Offset, usize)> =
            self.multiplicities.iter().filter(|(_, &m)| m > 0).map(|(b, &m)| (b.clone(), m)).collect();
        v.sort_by(|a, b| offset_cmp(&a.0, &b.0));
        v
    }
}

/// Input file shape for a Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcmFile {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GcmFile {
    pub fn into_datum(self) -> Result<CartanDatum> {
        let d = load_cartan(&self.cartan)?;
        match self.labels {
            Some(l) => d.with_labels(l),
            None => Ok(d),
        }
    }

    pub fn from_datum(d: &CartanDatum) -> Self {
        GcmFile { cartan: d.matrix().to_vec(), labels: Some(d.labels().to_vec()) }
    }
}

pub fn parse_gcm_json(text: &str) -> Result<CartanDatum> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let file: GcmFile = if value.is_array() {
        GcmFile { cartan: serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?, labels: None }
    } else {
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?
    };
    file.into_datum()
}

/// Text form of a weight: rationals as canonical strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightLiteral {
    pub evals: Vec<Q>,
    #[serde(default)]
    pub offset: Option<Offset>,
}

pub fn parse_weight_json(text: &str, rank: usize) -> Result<Weight> {
    let lit: WeightLiteral = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let offset = lit.offset.unwrap_or_else(|| vec![0; lit.evals.len()]);
    if lit.evals.len() != rank || offset.len() != rank {
        return Err(Error::Parse(format!("weight must have {rank} evaluations and offsets")));
    }
    Ok(Weight { evals: lit.evals, offset })
}

pub fn weight_to_json(w: &Weight) -> String {
    serde_json::to_string(w).expect("weights serialize")
}

pub mod presets {
    //! Standard Cartan matrices. Affine types use Bourbaki labels `0..ℓ`.

    use super::*;

    fn labelled(m: Vec<Vec<i64>>, labels: std::ops::RangeInclusive<usize>) -> CartanDatum {
        load_cartan(&m)
            .and_then(|d| d.with_labels(labels.map(|i| i.to_string()).collect()))
            .expect("preset is a valid GCM")
    }

    pub fn a1() -> CartanDatum {
        load_cartan(&[vec![2]]).expect("valid")
    }

    pub fn a2() -> CartanDatum {
        load_cartan(&[vec![2, -1], vec![-1, 2]]).expect("valid")
    }

    pub fn b2() -> CartanDatum {
        load_cartan(&[vec![2, -2], vec![-1, 2]]).expect("valid")
    }

    pub fn g2() -> CartanDatum {
        load_cartan(&[vec![2, -1], vec![-3, 2]]).expect("valid")
    }

    pub fn affine_a1() -> CartanDatum {
        labelled(vec![vec![2, -2], vec![-2, 2]], 0..=1)
    }

    pub fn affine_a2() -> CartanDatum {
        labelled(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 0..=2)
    }

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in edges {
            m[i][j] = -1;
            m[j][i] = -1;
        }
        m
    }

    /// Node 2 is trivalent, adjacent to 0, 1, 3, 4.
    pub fn affine_d4() -> CartanDatum {
        labelled(from_edges(5, &[(0, 2), (1, 2), (3, 2), (4, 2)]), 0..=4)
    }

    /// Chain 1-3-4-5-6-7-8 with 2 on 4 and 0 on 8.
    pub fn affine_e8() -> CartanDatum {
        let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)];
        labelled(from_edges(9, &edges), 0..=8)
    }

    pub fn by_name(name: &str) -> Option<CartanDatum> {
        Some(match name.to_ascii_lowercase().as_str() {
            "a1" | "sl2" => a1(),
            "a2" | "sl3" => a2(),
            "b2" => b2(),
            "g2" => g2(),
            "a1^(1)" | "affine-a1" | "affine-sl2" => affine_a1(),
            "a2^(1)" | "affine-a2" | "affine-sl3" => affine_a2(),
            "d4^(1)" | "affine-d4" => affine_d4(),
            "e8^(1)" | "affine-e8" => affine_e8(),
            _ => return None,
        })
    }
}
