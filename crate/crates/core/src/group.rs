//! Finite permutation groups with an indexed element table.
//!
//! Elements are numbered breadth-first from the identity (index 0), applying
//! the generators in input order, so every subgroup bitset and every poset
//! label derived from a group is reproducible across runs.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default bound on the closure size.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Largest order for which the full multiplication table is materialized.
pub const TABLE_LIMIT: usize = 4096;

pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    gen_index: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul_table: Option<Vec<u16>>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of an ambient [`Group`], as a bitset over its element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: BitSet,
    order: usize,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order={}, {:?})", self.order, self.bits)
    }
}

impl Subgroup {
    pub(crate) fn from_bits(bits: BitSet) -> Self {
        let order = bits.count();
        Self { bits, order }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_bits(self.bits.intersection(&other.bits))
    }
}

impl Group {
    /// Closes `gens` under composition. See [`Group::closure_with_table_limit`].
    pub fn closure(degree: usize, gens: &[Perm], max_order: usize) -> Result<Self> {
        Self::closure_with_table_limit(degree, gens, max_order, TABLE_LIMIT)
    }

    pub fn closure_with_table_limit(
        degree: usize,
        gens: &[Perm],
        max_order: usize,
        table_limit: usize,
    ) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let max_order = max_order.max(1);
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        // parent[j] = (i, k): elements[j] = elements[i] * gens[k]
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        // right[i * ngens + k] = index of elements[i] * gens[k]
        let mut right: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (k, g) in gens.iter().enumerate() {
                let prod = elements[head].then(g);
                let j = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= max_order {
                            return Err(Error::OrderLimitExceeded { limit: max_order });
                        }
                        let j = elements.len();
                        index.insert(prod.clone(), j);
                        elements.push(prod);
                        parent.push((head as u32, k as u32));
                        j
                    }
                };
                right.push(j as u32);
            }
            head += 1;
        }

        let n = elements.len();
        let ngens = gens.len();
        let mul_table = (n <= table_limit && n <= u16::MAX as usize + 1).then(|| {
            let mut t = vec![0u16; n * n];
            for i in 0..n {
                let row = i * n;
                t[row] = i as u16;
                for j in 1..n {
                    let (pi, k) = parent[j];
                    let left = t[row + pi as usize] as usize;
                    t[row + j] = right[left * ngens + k as usize] as u16;
                }
            }
            t
        });

        let inverse = elements.iter().map(|e| index[&e.inverse()] as u32).collect();
        let gen_index = gens.iter().map(|g| index[g]).collect();
        let mut group = Self {
            degree,
            generators: gens.to_vec(),
            gen_index,
            elements,
            index,
            mul_table,
            inverse,
            orders: Vec::new(),
        };
        group.orders = (0..n).map(|i| group.compute_order(i) as u32).collect();
        Ok(group)
    }

    fn compute_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the input generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn has_table(&self) -> bool {
        self.mul_table.is_some()
    }

    /// Index of `elements[a] * elements[b]`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: usize, mut k: usize) -> usize {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Smallest `k ≥ 1` with `gᵏ = e`.
    #[inline]
    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i] as usize
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_bits(BitSet::from_indices(self.order(), [0]))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_bits(BitSet::full(self.order()))
    }

    /// Subgroup generated by the given element indices.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut bits = BitSet::new(self.order());
        bits.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &t in gens {
                let z = self.mul(y, t);
                if bits.insert(z) {
                    queue.push(z);
                }
            }
        }
        Subgroup::from_bits(bits)
    }

    /// A small generating set, chosen greedily in element-index order.
    pub fn subgroup_generators(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for x in s.elements() {
            if cur.order() == s.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.generate(&gens);
            }
        }
        gens
    }

    /// `⟨s, extra⟩`.
    pub fn join(&self, s: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = self.subgroup_generators(s);
        gens.extend_from_slice(extra);
        self.generate(&gens)
    }

    /// Checks closure under the multiplication (test and validation helper).
    pub fn is_closed(&self, bits: &BitSet) -> bool {
        if !bits.contains(0) {
            return false;
        }
        let members: Vec<usize> = bits.iter().collect();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| bits.contains(self.mul(a, b))))
    }

    pub fn is_abelian(&self, s: &Subgroup) -> bool {
        let gens = self.subgroup_generators(s);
        gens.iter()
            .enumerate()
            .all(|(k, &a)| gens[k + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Abelian with every non-identity element of order `p`.
    pub fn is_elementary_abelian(&self, s: &Subgroup, p: usize) -> bool {
        s.elements().all(|x| x == 0 || self.element_order(x) == p) && self.is_abelian(s)
    }

    /// `C_G(S)`.
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(s);
        let bits = BitSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| gens.iter().all(|&x| self.commute(g, x))),
        );
        Subgroup::from_bits(bits)
    }

    /// `Z(G)`.
    pub fn center(&self) -> Subgroup {
        let gens = self.gen_index.clone();
        let bits = BitSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| gens.iter().all(|&x| self.commute(g, x))),
        );
        Subgroup::from_bits(bits)
    }

    /// `N_G(S)`.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(s);
        let bits = BitSet::from_indices(
            self.order(),
            (0..self.order()).filter(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g)))),
        );
        Subgroup::from_bits(bits)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let gens = self.subgroup_generators(s);
        self.gen_index
            .iter()
            .all(|&g| gens.iter().all(|&x| s.contains(self.conj(x, g))))
    }

    /// Image of `s` under conjugation by `g`.
    pub fn conjugate(&self, s: &Subgroup, g: usize) -> Subgroup {
        Subgroup {
            bits: BitSet::from_indices(self.order(), s.elements().map(|x| self.conj(x, g))),
            order: s.order(),
        }
    }

    /// `Ω₁(S)`: the subgroup generated by the elements of order exactly `p` in `s`.
    pub fn omega1(&self, s: &Subgroup, p: usize) -> Subgroup {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for x in s.elements() {
            if self.element_order(x) == p && !cur.contains(x) {
                gens.push(x);
                cur = self.generate(&gens);
            }
        }
        cur
    }

    /// Structural dihedral test: `|G| = 2m` with an element `a` of order `m` and an
    /// involution `t ∉ ⟨a⟩` such that `t⁻¹ a t = a⁻¹`. Includes the Klein group (`m = 2`)
    /// and `Z₂` (`m = 1`).
    pub fn is_dihedral(&self) -> bool {
        let n = self.order();
        if n % 2 != 0 {
            return false;
        }
        let m = n / 2;
        if m == 1 {
            return true;
        }
        (0..n).filter(|&a| self.element_order(a) == m).any(|a| {
            let cyc = self.generate(&[a]);
            let a_inv = self.inv(a);
            (0..n).any(|t| {
                !cyc.contains(t) && self.element_order(t) == 2 && self.conj(a, t) == a_inv
            })
        })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut r = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

/// Returns `k` when `n = pᵏ`.
pub fn p_log(n: usize, p: usize) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

pub(crate) fn check_prime_divides(g: &Group, p: usize) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime { p: p as u64 });
    }
    if g.order() % p != 0 {
        return Err(Error::PrimeDoesNotDivide {
            p: p as u64,
            order: g.order(),
        });
    }
    Ok(())
}

/// All Sylow `p`-subgroups, taken as the maximal members of the `p`-subgroup
/// enumeration.
pub fn sylow_subgroups(g: &Group, p: usize) -> Result<Vec<Subgroup>> {
    let fam = crate::plattice::enumerate_p_subgroups(g, p)?;
    let top = p_part(g.order(), p);
    Ok(fam.members.into_iter().filter(|s| s.order() == top).collect())
}

/// `O_p(G)`: the intersection of all Sylow `p`-subgroups.
pub fn o_p(g: &Group, p: usize) -> Result<Subgroup> {
    let syl = sylow_subgroups(g, p)?;
    Ok(intersect_all(g, &syl))
}

pub(crate) fn intersect_all(g: &Group, subs: &[Subgroup]) -> Subgroup {
    let mut bits = BitSet::full(g.order());
    for s in subs {
        bits.intersect_with(s.bits());
    }
    Subgroup::from_bits(bits)
}

/// Fitting subgroup: generated by `O_q(G)` over the primes `q` dividing `|G|`.
pub fn fitting(g: &Group) -> Subgroup {
    let mut gens = Vec::new();
    for q in prime_divisors(g.order()) {
        let oq = o_p(g, q).expect("q divides |G|");
        gens.extend(g.subgroup_generators(&oq));
    }
    g.generate(&gens)
}
