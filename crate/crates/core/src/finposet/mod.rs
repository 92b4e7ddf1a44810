//! Finite posets viewed as finite topological spaces.
//!
//! A [`Poset`] stores its strict order as two bit matrices (strict up-sets and
//! strict down-sets). Every element carries an opaque `usize` label that
//! survives passing to subposets, so a core or an `X_n` term can always be
//! traced back to the element of the original space it came from.

mod complex;
mod dot;
mod iso;
mod lattice;
mod oracle;

pub use complex::{euler_char, order_complex};
pub use dot::hasse_dot;
pub use iso::{poset_iso, same_homotopy_type};
pub use lattice::{
    i_op, invariant_core, is_atomic, is_coatomic, is_reduced_lattice, s_op, stage_family,
    steps_to_contract, xn_sequence,
};
pub use oracle::{min_changes_oracle, DEFAULT_ORACLE_LIMIT};

use std::collections::HashSet;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    labels: Vec<usize>,
    action: Option<Vec<Vec<u32>>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| self.up[i].iter().map(move |j| (i, j)))
            .collect();
        f.debug_struct("Poset")
            .field("n", &self.len())
            .field("lt", &rel)
            .field("labels", &self.labels)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BeatKind {
    Up,
    Down,
}

/// The order in which beat points were removed while computing a core.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RemovalTrace {
    pub steps: Vec<(usize, BeatKind)>,
}

impl RemovalTrace {
    /// Number of adjacent switches between up and down removals.
    pub fn changes(&self) -> usize {
        self.steps.windows(2).filter(|w| w[0].1 != w[1].1).count()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the trace against `source`, checking that each step removes a
    /// beat point of the correct kind. Returns the remaining subposet.
    pub fn replay(&self, source: &Poset) -> Option<Poset> {
        let mut alive = BitSet::full(source.len());
        for &(label, kind) in &self.steps {
            let i = source.position_of(label)?;
            if !alive.contains(i) || source.beat_kind_in(i, &alive, kind == BeatKind::Down) != Some(kind)
            {
                return None;
            }
            alive.remove(i);
        }
        Some(source.induced(&alive))
    }
}

/// Element scan order used when removing beat points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RemovalPolicy {
    /// Ascending index, preferring down beat points.
    #[default]
    FirstFound,
    /// Descending index, preferring up beat points.
    LastFound,
}

impl Poset {
    /// Builds a poset from strict up-sets (`up[i]` holds every `j` with `i < j`).
    ///
    /// Rejects relations that are not irreflexive and transitive.
    pub fn from_up_sets(up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        for (i, row) in up.iter().enumerate() {
            if row.capacity() != n || row.contains(i) {
                return Err(Error::Construction(format!("relation not irreflexive at {i}")));
            }
            for j in row.iter() {
                if !up[j].is_subset(row) {
                    return Err(Error::Construction(format!(
                        "relation not transitive through {i} < {j}"
                    )));
                }
            }
        }
        Ok(Self::from_up_sets_unchecked(up))
    }

    pub(crate) fn from_up_sets_unchecked(up: Vec<BitSet>) -> Self {
        let n = up.len();
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Self {
            up,
            down,
            labels: (0..n).collect(),
            action: None,
        }
    }

    /// Poset generated by the given `(a, b)` pairs meaning `a < b`; takes the
    /// transitive closure and rejects cycles.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![BitSet::new(n); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Construction(format!("pair ({a}, {b}) out of range")));
            }
            up[a].insert(b);
        }
        // Warshall closure
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if (0..n).any(|i| up[i].contains(i)) {
            return Err(Error::Construction("relation has a cycle".into()));
        }
        Ok(Self::from_up_sets_unchecked(up))
    }

    /// Poset on `0..n` with `i < j ⇔ lt(i, j)`; `lt` must be a strict order.
    pub fn from_fn(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let up = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| lt(i, j))))
            .collect();
        Self::from_up_sets(up)
    }

    pub fn empty() -> Self {
        Self::from_up_sets_unchecked(Vec::new())
    }

    pub fn point() -> Self {
        Self::from_up_sets_unchecked(vec![BitSet::new(1)])
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i < j).expect("chain is a strict order")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |_, _| false).expect("antichain is a strict order")
    }

    /// Replaces the labels; they must be pairwise distinct.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Construction("label count mismatch".into()));
        }
        let distinct: HashSet<_> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Construction("labels are not pairwise distinct".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Attaches a group action given by generator permutations of the elements.
    /// Each permutation must be an order automorphism.
    pub fn with_action(mut self, action: Vec<Vec<u32>>) -> Result<Self> {
        for sigma in &action {
            if sigma.len() != self.len() || !self.is_automorphism(sigma) {
                return Err(Error::Construction(
                    "action permutation does not preserve the order".into(),
                ));
            }
        }
        self.action = Some(action);
        Ok(self)
    }

    pub fn without_action(mut self) -> Self {
        self.action = None;
        self
    }

    pub fn is_automorphism(&self, sigma: &[u32]) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        for &s in sigma {
            if s as usize >= n || std::mem::replace(&mut seen[s as usize], true) {
                return false;
            }
        }
        (0..n).all(|i| {
            let img = BitSet::from_indices(n, self.up[i].iter().map(|j| sigma[j] as usize));
            img == self.up[sigma[i] as usize]
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.up[i].contains(j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    /// Strict up-set of `i`.
    #[inline]
    pub fn up(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// Strict down-set of `i`.
    #[inline]
    pub fn down(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    pub(crate) fn up_eq(&self, i: usize) -> BitSet {
        let mut s = self.up[i].clone();
        s.insert(i);
        s
    }

    pub(crate) fn down_eq(&self, i: usize) -> BitSet {
        let mut s = self.down[i].clone();
        s.insert(i);
        s
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn position_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn action(&self) -> Option<&[Vec<u32>]> {
        self.action.as_deref()
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(BitSet::count).sum()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximum(&self) -> Option<usize> {
        match self.maximal().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn minimum(&self) -> Option<usize> {
        match self.minimal().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// The opposite poset.
    pub fn dual(&self) -> Poset {
        Self {
            up: self.down.clone(),
            down: self.up.clone(),
            labels: self.labels.clone(),
            action: self.action.clone(),
        }
    }

    /// Subposet on `keep`, in increasing index order. The action is carried over
    /// only when `keep` is invariant under it.
    pub fn induced(&self, keep: &BitSet) -> Poset {
        let idx: Vec<usize> = keep.iter().collect();
        let mut pos = vec![u32::MAX; self.len()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k as u32;
        }
        let m = idx.len();
        let up = idx
            .iter()
            .map(|&i| {
                BitSet::from_indices(
                    m,
                    self.up[i].iter().filter(|&j| keep.contains(j)).map(|j| pos[j] as usize),
                )
            })
            .collect();
        let mut sub = Self::from_up_sets_unchecked(up);
        sub.labels = idx.iter().map(|&i| self.labels[i]).collect();
        if let Some(action) = &self.action {
            let invariant = action
                .iter()
                .all(|sigma| idx.iter().all(|&i| keep.contains(sigma[i] as usize)));
            if invariant {
                sub.action = Some(
                    action
                        .iter()
                        .map(|sigma| idx.iter().map(|&i| pos[sigma[i] as usize]).collect())
                        .collect(),
                );
            }
        }
        sub
    }

    /// Elements in a linear extension (every element after everything below it).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count(), i));
        order
    }

    /// Longest chain length minus one.
    pub fn height(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        Ok(*self.levels().iter().max().expect("non-empty"))
    }

    /// For each element, the length of the longest chain ending at it, minus one.
    pub fn levels(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for x in self.linear_extension() {
            h[x] = self.down[x].iter().map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if !self.up[i].intersects(&self.down[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_down_beat(&self, x: usize) -> bool {
        let all = BitSet::full(self.len());
        has_unique_maximal(&self.down[x], &self.up, &all)
    }

    pub fn is_up_beat(&self, x: usize) -> bool {
        let all = BitSet::full(self.len());
        has_unique_maximal(&self.up[x], &self.down, &all)
    }

    /// Beat kind of `x` inside the subposet `alive`, checking the preferred kind first.
    pub(crate) fn beat_kind_in(&self, x: usize, alive: &BitSet, prefer_down: bool) -> Option<BeatKind> {
        let down = || has_unique_maximal(&self.down[x], &self.up, alive);
        let up = || has_unique_maximal(&self.up[x], &self.down, alive);
        if prefer_down {
            if down() {
                Some(BeatKind::Down)
            } else if up() {
                Some(BeatKind::Up)
            } else {
                None
            }
        } else if up() {
            Some(BeatKind::Up)
        } else if down() {
            Some(BeatKind::Down)
        } else {
            None
        }
    }

    pub fn has_beat_point(&self) -> bool {
        (0..self.len()).any(|x| self.is_down_beat(x) || self.is_up_beat(x))
    }

    /// Core under the default removal policy.
    pub fn core(&self) -> (Poset, RemovalTrace) {
        self.core_with(RemovalPolicy::FirstFound)
    }

    /// Removes beat points until none remain. Passes over the elements in the
    /// policy's scan order, removing each element that is a beat point of the
    /// current subposet, until a full pass removes nothing.
    pub fn core_with(&self, policy: RemovalPolicy) -> (Poset, RemovalTrace) {
        let n = self.len();
        let mut alive = BitSet::full(n);
        let mut remaining = n;
        let mut trace = RemovalTrace::default();
        let order: Vec<usize> = match policy {
            RemovalPolicy::FirstFound => (0..n).collect(),
            RemovalPolicy::LastFound => (0..n).rev().collect(),
        };
        let prefer_down = policy == RemovalPolicy::FirstFound;
        loop {
            let mut removed = false;
            for &x in &order {
                if remaining <= 1 {
                    break;
                }
                if !alive.contains(x) {
                    continue;
                }
                if let Some(kind) = self.beat_kind_in(x, &alive, prefer_down) {
                    alive.remove(x);
                    remaining -= 1;
                    trace.steps.push((self.labels[x], kind));
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
        (self.induced(&alive), trace)
    }
}

/// True when `set ∩ alive` has exactly one maximal element with respect to the
/// relation whose strict up-sets are `above`.
fn has_unique_maximal(set: &BitSet, above: &[BitSet], alive: &BitSet) -> bool {
    let mut live = set.clone();
    live.intersect_with(alive);
    let mut found = 0;
    for u in live.iter() {
        if !above[u].intersects(&live) {
            found += 1;
            if found > 1 {
                return false;
            }
        }
    }
    found == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2 minima each below 2 maxima.
    pub(crate) fn bowtie() -> Poset {
        Poset::from_relation(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn construction_validates() {
        let mut up = vec![BitSet::new(3); 3];
        up[0].insert(1);
        up[1].insert(2);
        assert!(Poset::from_up_sets(up.clone()).is_err());
        up[0].insert(2);
        assert!(Poset::from_up_sets(up).is_ok());
        assert!(Poset::from_relation(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::antichain(3).with_labels(vec![1, 1, 2]).is_err());
        assert!(Poset::chain(2).with_action(vec![vec![1, 0]]).is_err());
        assert!(Poset::antichain(2).with_action(vec![vec![1, 0]]).is_ok());
    }

    #[test]
    fn beat_points() {
        let c = Poset::chain(3);
        assert!(c.is_down_beat(2));
        assert!(c.is_up_beat(0));
        let a = Poset::antichain(3);
        assert!((0..3).all(|x| !a.is_down_beat(x) && !a.is_up_beat(x)));
        let b = bowtie();
        assert!(!b.has_beat_point());
    }

    #[test]
    fn heights() {
        assert_eq!(Poset::antichain(4).height().unwrap(), 0);
        assert_eq!(Poset::chain(4).height().unwrap(), 3);
        assert!(matches!(Poset::empty().height(), Err(Error::EmptyPoset)));
    }

    #[test]
    fn core_of_poset_with_maximum_is_point() {
        // three atoms under a top
        let p = Poset::from_relation(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let (core, trace) = p.core();
        assert_eq!(core.len(), 1);
        assert_eq!(trace.steps.len(), 3);
        assert_eq!(trace.replay(&p).unwrap(), core);
    }

    #[test]
    fn core_edge_cases() {
        let (c, t) = Poset::empty().core();
        assert!(c.is_empty() && t.is_empty());
        let (c, t) = bowtie().core();
        assert_eq!(c.len(), 4);
        assert!(t.is_empty());
        let (c, _) = Poset::point().core();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn trace_changes() {
        let t = RemovalTrace {
            steps: vec![
                (0, BeatKind::Up),
                (1, BeatKind::Up),
                (2, BeatKind::Down),
                (3, BeatKind::Up),
            ],
        };
        assert_eq!(t.changes(), 2);
    }

    #[test]
    fn induced_keeps_labels_and_invariant_action() {
        let p = Poset::antichain(3)
            .with_labels(vec![10, 20, 30])
            .unwrap()
            .with_action(vec![vec![1, 0, 2]])
            .unwrap();
        let sub = p.induced(&BitSet::from_indices(3, [0, 1]));
        assert_eq!(sub.labels(), &[10, 20]);
        assert_eq!(sub.action().unwrap(), &[vec![1, 0]]);
        let sub = p.induced(&BitSet::from_indices(3, [0, 2]));
        assert!(sub.action().is_none());
    }

    #[test]
    fn covers_of_chain() {
        assert_eq!(Poset::chain(3).covers(), vec![(0, 1), (1, 2)]);
    }
}
