//! Sufficient conditions for `S_p(G) ≃ A_p(G)` and for contractibility of
//! `S_p(G)` to imply that of `A_p(G)`.

use serde::Serialize;

use crate::error::Result;
use crate::finposet::Poset;
use crate::group::{check_prime_divides, is_prime, p_part, sylow_subgroups, Group, Subgroup};
use crate::plattice::{build_poset, enumerate_p_tori, single_conjugacy_class, PSubgroupFamily};

/// Which case of the homotopy-equivalence criterion applies, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquivalenceCase {
    /// `Ω₁(P)` is abelian for every Sylow `P`.
    AbelianOmega1 = 1,
    /// `A_p(G)` is discrete.
    HeightZero = 2,
    Dihedral = 3,
    /// `|G| = p^a q` with `q ≠ p` prime.
    TwoPrimes = 4,
}

/// Which case of the contractibility criterion applies, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContractibilityCase {
    ToriConjugate = 1,
    HeightAtMostOne = 2,
    /// `|G|_p ≤ p³`.
    SmallSylow = 3,
}

/// Every case of the homotopy-equivalence criterion that holds, in case order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub cases: Vec<EquivalenceCase>,
    /// `A_p(G)` is a strong deformation retract of `S_p(G)`, which holds
    /// exactly in the first case.
    pub retract: bool,
}

impl EquivalenceVerdict {
    /// The first matching case.
    pub fn case(&self) -> Option<EquivalenceCase> {
        self.cases.first().copied()
    }
}

/// Every case of the contractibility criterion that holds, in case order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractibilityVerdict {
    pub cases: Vec<ContractibilityCase>,
}

impl ContractibilityVerdict {
    pub fn case(&self) -> Option<ContractibilityCase> {
        self.cases.first().copied()
    }
}

pub(crate) fn omega1_abelian_in_sylows(g: &Group, p: usize, sylows: &[Subgroup]) -> bool {
    sylows.iter().all(|s| g.is_abelian(&g.omega1(s, p)))
}

pub(crate) fn equivalence_from(g: &Group, p: usize, sylows: &[Subgroup], ap: &Poset) -> EquivalenceVerdict {
    let retract = omega1_abelian_in_sylows(g, p, sylows);
    let cofactor = g.order() / p_part(g.order(), p);
    let checks = [
        (EquivalenceCase::AbelianOmega1, retract),
        (EquivalenceCase::HeightZero, ap.height().map_or(true, |h| h == 0)),
        (EquivalenceCase::Dihedral, g.is_dihedral()),
        (EquivalenceCase::TwoPrimes, is_prime(cofactor as u64)),
    ];
    EquivalenceVerdict {
        cases: checks.iter().filter(|c| c.1).map(|c| c.0).collect(),
        retract,
    }
}

pub(crate) fn contractibility_from(g: &Group, p: usize, ap: &Poset, maximal_tori: &[Subgroup]) -> ContractibilityVerdict {
    let checks = [
        (ContractibilityCase::ToriConjugate, single_conjugacy_class(g, maximal_tori)),
        (ContractibilityCase::HeightAtMostOne, ap.height().map_or(true, |h| h <= 1)),
        (ContractibilityCase::SmallSylow, p_part(g.order(), p) <= p * p * p),
    ];
    ContractibilityVerdict {
        cases: checks.iter().filter(|c| c.1).map(|c| c.0).collect(),
    }
}

fn tori_poset(g: &Group, p: usize) -> Result<(PSubgroupFamily, Poset)> {
    let fam = enumerate_p_tori(g, p)?;
    let x = build_poset(g, &fam);
    Ok((fam, x))
}

/// Cases of the criterion for `S_p(G) ≃ A_p(G)`.
pub fn filter_equivalence(g: &Group, p: usize) -> Result<EquivalenceVerdict> {
    check_prime_divides(g, p)?;
    let sylows = sylow_subgroups(g, p)?;
    let (_, ap) = tori_poset(g, p)?;
    Ok(equivalence_from(g, p, &sylows, &ap))
}

/// Cases of the criterion "`S_p(G)` contractible ⇒ `A_p(G)`
/// contractible".
pub fn filter_contractibility(g: &Group, p: usize) -> Result<ContractibilityVerdict> {
    check_prime_divides(g, p)?;
    let (tori, ap) = tori_poset(g, p)?;
    Ok(contractibility_from(g, p, &ap, &tori.maximal()))
}
