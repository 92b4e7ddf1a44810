//! Non-trivial `p`-subgroups and `p`-tori of a group, their posets, and the
//! algebraic side of low-step contractibility.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::finposet::Poset;
use crate::group::{check_prime_divides, intersect_all, Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FamilyKind {
    PSubgroups,
    PTori,
}

/// A conjugation-closed family of non-trivial `p`-subgroups, sorted by
/// `(order, bits)`.
#[derive(Clone, Debug)]
pub struct PSubgroupFamily {
    pub p: usize,
    pub kind: FamilyKind,
    pub members: Vec<Subgroup>,
    index: HashMap<BitSet, usize>,
}

impl PSubgroupFamily {
    fn new(p: usize, kind: FamilyKind, members: Vec<Subgroup>) -> Self {
        let index = members
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i))
            .collect();
        Self {
            p,
            kind,
            members,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.bits()).copied()
    }

    /// Members not properly contained in another member.
    pub fn maximal(&self) -> Vec<Subgroup> {
        self.members
            .iter()
            .filter(|s| {
                !self
                    .members
                    .iter()
                    .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
            })
            .cloned()
            .collect()
    }

    /// Whether conjugating any member by any generator lands in the family.
    pub fn is_g_set(&self, g: &Group) -> bool {
        self.members.iter().all(|s| {
            g.generator_indices()
                .iter()
                .all(|&x| self.position(&g.conjugate(s, x)).is_some())
        })
    }
}

/// Level `k + 1` from level `k`: every `Q⟨x⟩` with `x` in `allowed(Q) \ Q` and
/// `x^p ∈ Q`. `allowed` is the normalizer for arbitrary `p`-subgroups, the
/// centralizer for tori (plus `x` of order `p`).
fn extend_level(
    g: &Group,
    p: usize,
    level: &[Subgroup],
    tori: bool,
) -> Vec<Subgroup> {
    let mut next: Vec<BitSet> = level
        .par_iter()
        .flat_map_iter(|q| {
            let allowed = if tori {
                g.centralizer(q)
            } else {
                g.normalizer(q)
            };
            let mut done = q.bits().clone();
            let mut out = Vec::new();
            for x in allowed.elements() {
                if done.contains(x) {
                    continue;
                }
                if tori && g.element_order(x) != p {
                    continue;
                }
                if !q.contains(g.pow(x, p)) {
                    continue;
                }
                // Q⟨x⟩ = ⋃ Q·x^i since x normalizes Q
                let mut bits = BitSet::new(g.order());
                let mut xi = 0;
                for _ in 0..p {
                    for y in q.elements() {
                        bits.insert(g.mul(y, xi));
                    }
                    xi = g.mul(xi, x);
                }
                done.union_with(&bits);
                out.push(bits);
            }
            out
        })
        .collect();
    next.par_sort_unstable();
    next.dedup();
    next.into_iter().map(Subgroup::from_bits).collect()
}

fn first_level(g: &Group, p: usize) -> Vec<Subgroup> {
    let mut seen = BitSet::new(g.order());
    let mut out = Vec::new();
    for x in 0..g.order() {
        if g.element_order(x) != p || seen.contains(x) {
            continue;
        }
        let c = g.generate(&[x]);
        seen.union_with(c.bits());
        out.push(c);
    }
    out.sort_unstable_by(|a, b| a.bits().cmp(b.bits()));
    out
}

fn enumerate(g: &Group, p: usize, kind: FamilyKind) -> Result<PSubgroupFamily> {
    check_prime_divides(g, p)?;
    let mut members = Vec::new();
    let mut level = first_level(g, p);
    while !level.is_empty() {
        let next = extend_level(g, p, &level, kind == FamilyKind::PTori);
        members.extend(level);
        level = next;
    }
    Ok(PSubgroupFamily::new(p, kind, members))
}

/// All non-trivial subgroups of `p`-power order.
pub fn enumerate_p_subgroups(g: &Group, p: usize) -> Result<PSubgroupFamily> {
    enumerate(g, p, FamilyKind::PSubgroups)
}

/// All non-trivial elementary abelian `p`-subgroups.
pub fn enumerate_p_tori(g: &Group, p: usize) -> Result<PSubgroupFamily> {
    enumerate(g, p, FamilyKind::PTori)
}

/// Inclusion poset on the family, labeled by member position, with the
/// conjugation action of each generator of `g`.
pub fn build_poset(g: &Group, fam: &PSubgroupFamily) -> Poset {
    let m = fam.len();
    let up: Vec<BitSet> = (0..m)
        .into_par_iter()
        .map(|i| {
            let s = &fam.members[i];
            BitSet::from_indices(
                m,
                (i + 1..m).filter(|&j| {
                    let t = &fam.members[j];
                    t.order() > s.order() && s.is_subgroup_of(t)
                }),
            )
        })
        .collect();
    let action: Vec<Vec<u32>> = g
        .generator_indices()
        .iter()
        .map(|&x| {
            fam.members
                .par_iter()
                .map(|s| {
                    fam.position(&g.conjugate(s, x))
                        .expect("family is closed under conjugation") as u32
                })
                .collect()
        })
        .collect();
    Poset::from_up_sets_unchecked(up)
        .with_action(action)
        .expect("conjugation preserves inclusion")
}

/// Maximal elementary abelian `p`-subgroups.
pub fn maximal_tori(g: &Group, p: usize) -> Result<Vec<Subgroup>> {
    Ok(enumerate_p_tori(g, p)?.maximal())
}

/// Whether `G` acts transitively by conjugation on its maximal `p`-tori.
pub fn tori_all_conjugate(g: &Group, p: usize) -> Result<bool> {
    let tori = maximal_tori(g, p)?;
    Ok(single_conjugacy_class(g, &tori))
}

pub(crate) fn single_conjugacy_class(g: &Group, set: &[Subgroup]) -> bool {
    let Some(first) = set.first() else {
        return true;
    };
    let mut orbit = HashSet::from([first.bits().clone()]);
    let mut queue = vec![first.clone()];
    while let Some(s) = queue.pop() {
        for &x in g.generator_indices() {
            let c = g.conjugate(&s, x);
            if orbit.insert(c.bits().clone()) {
                queue.push(c);
            }
        }
    }
    orbit.len() == set.len()
}

/// Non-trivial intersections of non-empty sets of maximal `p`-tori.
#[derive(Clone, Debug)]
pub struct ToriIntersectionFamily {
    pub members: Vec<Subgroup>,
}

impl ToriIntersectionFamily {
    pub fn new(g: &Group, p: usize) -> Result<Self> {
        let tori = maximal_tori(g, p)?;
        Ok(Self::from_maximal(&tori))
    }

    pub fn from_maximal(tori: &[Subgroup]) -> Self {
        let mut seen: HashSet<BitSet> = tori.iter().map(|t| t.bits().clone()).collect();
        let mut members: Vec<Subgroup> = tori.to_vec();
        let mut frontier = members.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for t in tori {
                    let meet = s.intersection(t);
                    if !meet.is_trivial() && seen.insert(meet.bits().clone()) {
                        next.push(meet);
                    }
                }
            }
            members.extend(next.iter().cloned());
            frontier = next;
        }
        members.sort_by(|a, b| (a.order(), a.bits()).cmp(&(b.order(), b.bits())));
        Self { members }
    }
}

/// `p | |C_G(Ω₁(G))|`.
pub fn centralizes_omega1(g: &Group, p: usize) -> Result<bool> {
    check_prime_divides(g, p)?;
    let omega = g.omega1(&g.whole(), p);
    Ok(g.centralizer(&omega).order() % p == 0)
}

/// The intersection of all maximal `p`-tori is non-trivial.
pub fn tori_meet_nontrivial(g: &Group, p: usize) -> Result<bool> {
    let tori = maximal_tori(g, p)?;
    Ok(!intersect_all(g, &tori).is_trivial())
}

/// Algebraic criterion for `A_p(G)` to be contractible in `n ≤ 3` steps.
pub fn step_predicate(g: &Group, p: usize, n: usize) -> Result<bool> {
    if n > 3 {
        return Err(Error::Construction(format!(
            "step predicate is defined for n ≤ 3, got {n}"
        )));
    }
    let tori = enumerate_p_tori(g, p)?;
    Ok(step_predicates_from(g, &tori)[n])
}

/// [`step_predicate`] for `n = 0, 1, 2, 3`, given the `p`-tori of `g`.
pub fn step_predicates_from(g: &Group, tori: &PSubgroupFamily) -> [bool; 4] {
    let p = tori.p;
    let omega = g.omega1(&g.whole(), p);
    let maximal = tori.maximal();
    let by_centralizer = g.centralizer(&omega).order() % p == 0;
    debug_assert_eq!(by_centralizer, !intersect_all(g, &maximal).is_trivial());
    // the last condition is monotone in N, so maximal tori are enough
    let meets = ToriIntersectionFamily::from_maximal(&maximal);
    let three = maximal.iter().any(|n| {
        meets
            .members
            .iter()
            .all(|s| n.bits().intersection_count(s.bits()) > 1)
    });
    [
        omega.order() == p,
        g.is_abelian(&omega),
        by_centralizer,
        three,
    ]
}

/// Algebraic test of "contractible in `n` steps" from the family `M_{n-1}` of
/// the `X_k` sequence of `A_p(G)`: for even `n ≥ 2` the members meet
/// non-trivially, for odd `n` they generate an abelian subgroup. For `n = 0`,
/// `M` is ignored and `A_p(G)` must be a single point.
pub fn stage_family_check(g: &Group, p: usize, n: usize, m: &[Subgroup]) -> Result<bool> {
    check_prime_divides(g, p)?;
    if n == 0 {
        return Ok(enumerate_p_tori(g, p)?.len() == 1);
    }
    stage_check_positive(g, n, m)
}

pub(crate) fn stage_check_positive(g: &Group, n: usize, m: &[Subgroup]) -> Result<bool> {
    debug_assert!(n > 0);
    if m.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n % 2 == 0 {
        Ok(!intersect_all(g, m).is_trivial())
    } else {
        let gens: Vec<usize> = m.iter().flat_map(|s| g.subgroup_generators(s)).collect();
        Ok(g.is_abelian(&g.generate(&gens)))
    }
}

/// `M_{n-1}` as subgroups, read off the `X_k` sequence of the `A_p` poset built
/// from `fam`.
pub fn stage_subgroups(fam: &PSubgroupFamily, seq: &[Poset], k: usize) -> Vec<Subgroup> {
    let (term, pos) = crate::finposet::stage_family(seq, k);
    pos.into_iter()
        .map(|i| fam.members[term.label(i)].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finposet::{i_op, steps_to_contract, xn_sequence};
    use crate::group::DEFAULT_MAX_ORDER;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect();
        Group::closure(n, &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    fn s4() -> Group {
        group(4, &["(1 2)", "(1 2 3 4)"])
    }

    fn d4() -> Group {
        group(4, &["(1 2 3 4)", "(1 3)"])
    }

    fn by_order(fam: &PSubgroupFamily) -> Vec<usize> {
        let mut counts = std::collections::BTreeMap::new();
        for s in &fam.members {
            *counts.entry(s.order()).or_insert(0) += 1;
        }
        counts.into_values().collect()
    }

    /// Brute force: closed subsets of `p`-power order found by closing every
    /// subset of at most two elements (enough for groups whose `p`-subgroups
    /// are 2-generated).
    fn two_generated_p_subgroups(g: &Group, p: usize) -> HashSet<BitSet> {
        let mut out = HashSet::new();
        for a in 0..g.order() {
            for b in a..g.order() {
                let s = g.generate(&[a, b]);
                let o = s.order();
                if o > 1 && crate::group::p_part(o, p) == o {
                    out.insert(s.bits().clone());
                }
            }
        }
        out
    }

    #[test]
    fn s4_two_subgroups() {
        let g = s4();
        let fam = enumerate_p_subgroups(&g, 2).unwrap();
        assert_eq!(fam.len(), 19);
        assert_eq!(by_order(&fam), vec![9, 7, 3]);
        let brute = two_generated_p_subgroups(&g, 2);
        let got: HashSet<BitSet> = fam.members.iter().map(|s| s.bits().clone()).collect();
        assert_eq!(got, brute);
        assert!(fam.is_g_set(&g));
        let x = build_poset(&g, &fam);
        assert_eq!(x.len(), 19);
        assert_eq!(x.height().unwrap(), 2);
    }

    #[test]
    fn s4_tori() {
        let g = s4();
        let fam = enumerate_p_tori(&g, 2).unwrap();
        assert_eq!(by_order(&fam), vec![9, 4]);
        let all = enumerate_p_subgroups(&g, 2).unwrap();
        let filtered: Vec<&Subgroup> = all
            .members
            .iter()
            .filter(|s| g.is_elementary_abelian(s, 2))
            .collect();
        assert_eq!(filtered.len(), fam.len());
        assert!(filtered.iter().all(|s| fam.position(s).is_some()));
        assert_eq!(build_poset(&g, &fam).height().unwrap(), 1);
        assert_eq!(maximal_tori(&g, 2).unwrap().len(), 4);
        assert!(!tori_all_conjugate(&g, 2).unwrap());
    }

    #[test]
    fn small_families() {
        let d = d4();
        assert_eq!(by_order(&enumerate_p_tori(&d, 2).unwrap()), vec![5, 2]);
        assert_eq!(maximal_tori(&d, 2).unwrap().len(), 2);
        let klein = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(enumerate_p_subgroups(&klein, 2).unwrap().len(), 4);
        assert_eq!(enumerate_p_subgroups(&s4(), 3).unwrap().len(), 4);
        let z4 = group(4, &["(1 2 3 4)"]);
        let t = maximal_tori(&z4, 2).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].order(), 2);
        assert!(tori_all_conjugate(&z4, 2).unwrap());
        assert!(matches!(
            enumerate_p_subgroups(&z4, 3),
            Err(Error::PrimeDoesNotDivide { p: 3, order: 4 })
        ));
    }

    #[test]
    fn cyclic_four_is_found() {
        // the order-4 cyclic subgroups of S4 contain no order-2 element outside
        // their unique involution, so extension must allow x with x^p ∈ Q
        let g = s4();
        let fam = enumerate_p_subgroups(&g, 2).unwrap();
        let c = g.index_of(&Perm::parse_cycles("(1 2 3 4)", 4).unwrap()).unwrap();
        assert!(fam.position(&g.generate(&[c])).is_some());
    }

    #[test]
    fn step_predicates() {
        let g = s4();
        assert!(!step_predicate(&g, 2, 2).unwrap());
        assert!(step_predicate(&g, 2, 3).unwrap());
        assert!(!tori_meet_nontrivial(&g, 2).unwrap());
        let z4 = group(4, &["(1 2 3 4)"]);
        assert!(step_predicate(&z4, 2, 0).unwrap());
        let d = d4();
        assert!(!step_predicate(&d, 2, 1).unwrap());
        assert!(step_predicate(&d, 2, 2).unwrap());
        assert!(tori_meet_nontrivial(&d, 2).unwrap());
        assert!(step_predicate(&d, 2, 4).is_err());
    }

    #[test]
    fn s4_sequence_and_stage_check() {
        let g = s4();
        let fam = enumerate_p_tori(&g, 2).unwrap();
        let x = build_poset(&g, &fam);
        let i = i_op(&x).unwrap();
        assert_eq!(i.len(), 7);
        assert_eq!(i.covers().len(), 6);
        let seq = xn_sequence(&x).unwrap();
        assert_eq!(seq.iter().map(Poset::len).collect::<Vec<_>>(), vec![13, 7, 4, 1]);
        assert_eq!(steps_to_contract(&x).unwrap(), Some(3));
        for n in 0..6 {
            let m = stage_subgroups(&fam, &seq, n.max(1) - 1);
            assert_eq!(stage_family_check(&g, 2, n, &m).unwrap(), n >= 3, "n = {n}");
        }
        let meets = ToriIntersectionFamily::new(&g, 2).unwrap();
        let got: HashSet<BitSet> = meets.members.iter().map(|s| s.bits().clone()).collect();
        let want: HashSet<BitSet> = i
            .labels()
            .iter()
            .map(|&l| fam.members[l].bits().clone())
            .collect();
        assert_eq!(got, want);
        assert!(matches!(stage_family_check(&g, 2, 2, &[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn action_is_recorded() {
        let g = s4();
        let fam = enumerate_p_subgroups(&g, 2).unwrap();
        let x = build_poset(&g, &fam);
        assert_eq!(x.action().unwrap().len(), g.generator_indices().len());
        let core = crate::finposet::invariant_core(&build_poset(&g, &enumerate_p_tori(&g, 2).unwrap()))
            .unwrap();
        assert_eq!(core.len(), 1);
        assert_eq!(fam.members.iter().filter(|s| g.is_normal(s)).count(), 1);
    }
}
