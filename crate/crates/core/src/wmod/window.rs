use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cartan::{add_offsets, height, is_nonneg, offset_cmp, sub_offsets, unit, Offset, ParabolicType};

/// A finite set of absolute offsets on which a module is computed.
///
/// Windows are assumed convex toward their top: if an offset is present, so
/// is every offset between it and any present offset above it. A raising
/// target outside the window is read as zero, a lowering target outside the
/// window is truncated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    offsets: BTreeSet<Offset>,
}

impl Window {
    pub fn from_offsets(offsets: impl IntoIterator<Item = Offset>) -> Self {
        Window { offsets: offsets.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Window { offsets: BTreeSet::new() }
    }

    pub fn point(top: &[i64]) -> Self {
        Self::from_offsets([top.to_vec()])
    }

    /// `{top + γ : 0 ≤ γ_i ≤ depth}`.
    pub fn boxed(top: &[i64], depth: i64) -> Self {
        let n = top.len();
        let mut out = vec![top.to_vec()];
        for i in 0..n {
            out = out
                .into_iter()
                .flat_map(|b| {
                    (0..=depth)
                        .map(move |k| add_offsets(&b, &(0..n).map(|j| if j == i { k } else { 0 }).collect::<Vec<_>>()))
                })
                .collect();
        }
        Self::from_offsets(out)
    }

    /// `{top + γ : γ ≥ 0, height(γ) ≤ h}`.
    pub fn height_bounded(top: &[i64], h: i64) -> Self {
        let n = top.len();
        let mut out = vec![top.to_vec()];
        let mut frontier = vec![top.to_vec()];
        for _ in 0..h {
            let mut next = BTreeSet::new();
            for b in &frontier {
                for i in 0..n {
                    next.insert(add_offsets(b, &unit(n, i)));
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        Self::from_offsets(out)
    }

    /// `{top + γ : γ ∈ Z_{≥0}Ξ, top + γ ≤ β for some β in self}`: the part of
    /// the window an `l_Ξ`-module with top `top` must cover.
    pub fn levi_shadow(&self, top: &[i64], xi: &ParabolicType) -> Window {
        let n = top.len();
        let mut bound = vec![0i64; n];
        for b in &self.offsets {
            for i in xi.iter() {
                bound[i] = bound[i].max(b[i] - top[i]);
            }
        }
        let mut out = vec![top.to_vec()];
        for i in xi.iter() {
            out = out
                .into_iter()
                .flat_map(|b| {
                    (0..=bound[i].max(0))
                        .map(move |k| add_offsets(&b, &unit(n, i).iter().map(|x| x * k).collect::<Vec<_>>()))
                })
                .collect();
        }
        Window::from_offsets(out.into_iter().filter(|d| self.offsets.iter().any(|b| is_nonneg(&sub_offsets(b, d)))))
    }

    /// Offsets `β ≥ top`.
    pub fn below(&self, top: &[i64]) -> Window {
        Window::from_offsets(self.offsets.iter().filter(|b| is_nonneg(&sub_offsets(b, top))).cloned())
    }

    pub fn contains(&self, beta: &[i64]) -> bool {
        self.offsets.contains(beta)
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Offsets in height-then-lex order.
    pub fn ordered(&self) -> Vec<Offset> {
        let mut v: Vec<Offset> = self.offsets.iter().cloned().collect();
        v.sort_by(|a, b| offset_cmp(a, b));
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = &Offset> {
        self.offsets.iter()
    }

    pub fn max_height(&self) -> i64 {
        self.offsets.iter().map(|b| height(b)).max().unwrap_or(0)
    }

    /// Offsets whose lowering neighbours along `active` all lie in the window.
    pub fn safe_core(&self, active: &ParabolicType) -> Vec<Offset> {
        let n = active.rank();
        self.ordered()
            .into_iter()
            .filter(|b| active.iter().all(|j| self.contains(&add_offsets(b, &unit(n, j)))))
            .collect()
    }

    pub fn union(&self, other: &Window) -> Window {
        Window { offsets: self.offsets.union(&other.offsets).cloned().collect() }
    }

    pub fn intersection(&self, other: &Window) -> Window {
        Window { offsets: self.offsets.intersection(&other.offsets).cloned().collect() }
    }
}
