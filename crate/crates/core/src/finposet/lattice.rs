//! Reduced lattices, the `i`/`s` retractions and contractibility in steps.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::Poset;

/// Minimum of `set` in `x`, if it has one.
fn minimum_of(x: &Poset, set: &BitSet) -> Option<usize> {
    let cand = set.iter().min_by_key(|&c| (x.down(c).count(), c))?;
    let mut rest = set.clone();
    rest.remove(cand);
    rest.is_subset(x.up(cand)).then_some(cand)
}

/// True when every pair with a common upper bound has a supremum.
///
/// For finite posets this is equivalent to the dual condition on infima.
pub fn is_reduced_lattice(x: &Poset) -> bool {
    let n = x.len();
    for a in 0..n {
        for b in a + 1..n {
            if x.comparable(a, b) {
                continue;
            }
            let common = x.up(a).intersection(x.up(b));
            if !common.is_empty() && minimum_of(x, &common).is_none() {
                return false;
            }
        }
    }
    true
}

/// Elements `y` with `y = ⋁ m(y)`, i.e. the upper bounds of the minimal elements
/// below `y` all lie above `y`.
fn join_of_minimals(x: &Poset) -> BitSet {
    let n = x.len();
    let minimal: BitSet = BitSet::from_indices(n, x.minimal());
    let mut out = BitSet::new(n);
    for y in 0..n {
        let mut bounds = BitSet::full(n);
        for a in x.down_eq(y).intersection(&minimal).iter() {
            bounds.intersect_with(&x.up_eq(a));
        }
        if bounds.is_subset(&x.up_eq(y)) {
            out.insert(y);
        }
    }
    out
}

/// Elements `y` with `y = ⋀ M(y)`.
fn meet_of_maximals(x: &Poset) -> BitSet {
    join_of_minimals(&x.dual())
}

/// Every element is the join of the minimal elements below it.
pub fn is_atomic(x: &Poset) -> bool {
    join_of_minimals(x).count() == x.len()
}

/// Every element is the meet of the maximal elements above it.
pub fn is_coatomic(x: &Poset) -> bool {
    meet_of_maximals(x).count() == x.len()
}

fn check_reduced(x: &Poset) -> Result<()> {
    if is_reduced_lattice(x) {
        Ok(())
    } else {
        Err(Error::NotReducedLattice)
    }
}

/// `i(X)`: meets of non-empty lower-bounded sets of maximal elements.
///
/// In a reduced lattice such a meet `y` satisfies `y = ⋀ M(y)`, and conversely
/// every `⋀ M(y)` is such a meet, so `i(X)` is the set of fixed points of the
/// retraction `y ↦ ⋀ M(y)`.
pub fn i_op(x: &Poset) -> Result<Poset> {
    check_reduced(x)?;
    Ok(i_unchecked(x))
}

/// `s(X)`: joins of non-empty upper-bounded sets of minimal elements.
pub fn s_op(x: &Poset) -> Result<Poset> {
    check_reduced(x)?;
    Ok(s_unchecked(x))
}

fn i_unchecked(x: &Poset) -> Poset {
    x.induced(&meet_of_maximals(x))
}

fn s_unchecked(x: &Poset) -> Poset {
    x.induced(&join_of_minimals(x))
}

/// The alternating sequence `X ⊇ i(X) ⊇ si(X) ⊇ …` (or starting with `s` when
/// `X` is coatomic but not atomic), stopped at the first repeated term. The
/// final term is a core of `X`.
pub fn xn_sequence(x: &Poset) -> Result<Vec<Poset>> {
    if x.is_empty() {
        return Err(Error::EmptyPoset);
    }
    check_reduced(x)?;
    let mut apply_i = if is_atomic(x) {
        true
    } else if is_coatomic(x) {
        false
    } else {
        return Err(Error::NeitherAtomicNorCoatomic);
    };
    let mut seq = vec![x.clone()];
    loop {
        let last = seq.last().expect("non-empty");
        let next = if apply_i {
            i_unchecked(last)
        } else {
            s_unchecked(last)
        };
        if next.len() == last.len() {
            return Ok(seq);
        }
        seq.push(next);
        apply_i = !apply_i;
    }
}

/// Least `n` with `X_n` a single point, or `None` when the sequence stabilizes
/// on a larger core (so `X` is not contractible).
pub fn steps_to_contract(x: &Poset) -> Result<Option<usize>> {
    let seq = xn_sequence(x)?;
    Ok(seq.iter().position(|t| t.len() == 1))
}

/// Positions (in the term) of `M_k`: the minimal elements of `X_k` for `k` even,
/// the maximal ones for `k` odd, for a sequence started with `i` on an atomic
/// lattice. Terms past the end of `seq` equal the last one.
pub fn stage_family(seq: &[Poset], k: usize) -> (&Poset, Vec<usize>) {
    let term = &seq[k.min(seq.len() - 1)];
    let members = if k % 2 == 0 {
        term.minimal()
    } else {
        term.maximal()
    };
    (term, members)
}

/// The stabilized term of [`xn_sequence`] together with the induced action.
pub fn invariant_core(x: &Poset) -> Result<Poset> {
    if x.action().is_none() {
        return Err(Error::MissingAction);
    }
    let seq = xn_sequence(x)?;
    let core = seq.into_iter().next_back().expect("non-empty");
    debug_assert!(core.action().is_some(), "i and s preserve the action");
    Ok(core)
}
