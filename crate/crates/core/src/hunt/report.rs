//! Full per-`(G, p)` homotopy reports.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finposet::{euler_char, order_complex, poset_iso, steps_to_contract, xn_sequence, Poset};
use crate::group::{check_prime_divides, intersect_all, p_part, Group, Subgroup, DEFAULT_MAX_ORDER};
use crate::homol::{reduced_homology, HomologySummary};
use crate::plattice::{
    build_poset, enumerate_p_subgroups, enumerate_p_tori, stage_subgroups, step_predicates_from,
    stage_check_positive, PSubgroupFamily,
};

use super::filters::{equivalence_from, contractibility_from, EquivalenceVerdict, ContractibilityVerdict};
use super::parse::GroupFile;

/// Cooperative time budget, checked between pipeline stages.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Self(None)
    }

    pub fn at(t: Instant) -> Self {
        Self(Some(t))
    }

    pub fn after(d: std::time::Duration) -> Self {
        Self(Instant::now().checked_add(d))
    }

    pub fn check(&self) -> Result<()> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub skip_homology: bool,
    pub skip_steps: bool,
    pub max_order: usize,
    pub deadline: Deadline,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            skip_homology: false,
            skip_steps: false,
            max_order: DEFAULT_MAX_ORDER,
            deadline: Deadline::none(),
        }
    }
}

/// Steps needed to contract `A_p(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCount {
    Skipped,
    NotContractible,
    Steps(usize),
}

impl StepCount {
    pub fn steps(self) -> Option<usize> {
        match self {
            StepCount::Steps(n) => Some(n),
            _ => None,
        }
    }
}

impl std::fmt::Display for StepCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepCount::Skipped => f.write_str("skipped"),
            StepCount::NotContractible => f.write_str("none"),
            StepCount::Steps(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    pub name: String,
    pub order: usize,
    pub p: usize,
    pub p_part: usize,
    pub sp_size: usize,
    pub ap_size: usize,
    pub sp_core: usize,
    pub ap_core: usize,
    pub same_homotopy_type: bool,
    pub op_order: usize,
    pub sp_contractible: bool,
    pub ap_contractible: bool,
    pub steps: StepCount,
    pub sp_height: usize,
    pub ap_height: usize,
    /// Algebraic criteria for contractibility of `A_p(G)` in `n = 0..=3` steps.
    pub step_predicates: [bool; 4],
    /// The stage-family test agrees with the computed step count at every `n`
    /// up to one past the end of the sequence; absent when steps are skipped.
    pub stage_check_consistent: Option<bool>,
    pub equivalence: EquivalenceVerdict,
    pub contractibility: ContractibilityVerdict,
    pub euler_sp: i64,
    pub euler_ap: i64,
    pub homology_sp: Option<HomologySummary>,
    pub homology_ap: Option<HomologySummary>,
    /// Neither criterion for equivalence applies and the cores differ.
    pub candidate: bool,
}

impl HomotopyReport {
    /// Names of the report invariants that fail (empty when all hold).
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.sp_contractible != (self.op_order > 1) {
            out.push("Sp contractible iff O_p > 1");
        }
        if self.ap_contractible && !self.sp_contractible {
            out.push("Ap contractible implies Sp contractible");
        }
        if self.equivalence.case().is_some() && !self.same_homotopy_type {
            out.push("an equivalence case implies same homotopy type");
        }
        if self.contractibility.case().is_some() && self.sp_contractible && !self.ap_contractible {
            out.push("a contractibility case and Sp contractible imply Ap contractible");
        }
        if self.euler_sp.rem_euclid(self.p_part as i64) != 1 % self.p_part as i64 {
            out.push("euler characteristic of Sp is 1 mod |G|_p");
        }
        if self.euler_sp != self.euler_ap {
            out.push("Sp and Ap have the same euler characteristic");
        }
        if let (Some(a), Some(b)) = (&self.homology_sp, &self.homology_ap) {
            if a.trimmed() != b.trimmed() {
                out.push("Sp and Ap have the same homology");
            }
        }
        if self.steps != StepCount::Skipped {
            if self.steps.steps().is_some() != self.ap_contractible {
                out.push("steps present iff Ap contractible");
            }
            for n in 0..4 {
                if self.step_predicates[n] != self.steps.steps().is_some_and(|s| s <= n) {
                    out.push("step predicates match the step count");
                    break;
                }
            }
            if self.stage_check_consistent == Some(false) {
                out.push("stage-family test matches the step count");
            }
        }
        out
    }
}

/// The two families and their posets.
#[derive(Clone, Debug)]
pub struct SubgroupPosets {
    pub sp_family: PSubgroupFamily,
    pub ap_family: PSubgroupFamily,
    pub sp: Poset,
    pub ap: Poset,
}

impl SubgroupPosets {
    pub fn new(g: &Group, p: usize) -> Result<Self> {
        Self::with_deadline(g, p, Deadline::none())
    }

    fn with_deadline(g: &Group, p: usize, deadline: Deadline) -> Result<Self> {
        let sp_family = enumerate_p_subgroups(g, p)?;
        deadline.check()?;
        let ap_family = enumerate_p_tori(g, p)?;
        deadline.check()?;
        let sp = build_poset(g, &sp_family);
        deadline.check()?;
        let ap = build_poset(g, &ap_family);
        Ok(Self {
            sp_family,
            ap_family,
            sp,
            ap,
        })
    }

    pub fn sylows(&self, g: &Group) -> Vec<Subgroup> {
        let top = p_part(g.order(), self.sp_family.p);
        self.sp_family
            .members
            .iter()
            .filter(|s| s.order() == top)
            .cloned()
            .collect()
    }
}

pub fn analyze_file(path: &Path, p: usize, opts: &AnalyzeOptions) -> Result<HomotopyReport> {
    let file = GroupFile::load(path)?;
    let g = file.group(opts.max_order)?;
    analyze_group(&file.name, &g, p, opts)
}

pub fn analyze_group(name: &str, g: &Group, p: usize, opts: &AnalyzeOptions) -> Result<HomotopyReport> {
    check_prime_divides(g, p)?;
    let dl = opts.deadline;
    let posets = SubgroupPosets::with_deadline(g, p, dl)?;
    dl.check()?;
    let sylows = posets.sylows(g);
    let op = intersect_all(g, &sylows);
    let maximal = posets.ap_family.maximal();

    let (sp_core, _) = posets.sp.core();
    dl.check()?;
    let (ap_core, _) = posets.ap.core();
    dl.check()?;
    let same = poset_iso(&sp_core, &ap_core).is_some();
    dl.check()?;

    let step_predicates = step_predicates_from(g, &posets.ap_family);
    let (steps, stage_check_consistent) = if opts.skip_steps {
        (StepCount::Skipped, None)
    } else {
        let seq = xn_sequence(&posets.ap)?;
        let steps = steps_to_contract(&posets.ap)?;
        let mut consistent = true;
        for n in 0..=seq.len() {
            let expected = steps.is_some_and(|s| s <= n);
            let got = if n == 0 {
                posets.ap.len() == 1
            } else {
                let m = stage_subgroups(&posets.ap_family, &seq, n - 1);
                stage_check_positive(g, n, &m)?
            };
            consistent &= got == expected;
        }
        let count = steps.map_or(StepCount::NotContractible, StepCount::Steps);
        (count, Some(consistent))
    };
    dl.check()?;

    let (homology_sp, homology_ap) = if opts.skip_homology {
        (None, None)
    } else {
        let hs = reduced_homology(&order_complex(&sp_core))?;
        dl.check()?;
        let ha = reduced_homology(&order_complex(&ap_core))?;
        (Some(hs), Some(ha))
    };
    dl.check()?;

    let equivalence = equivalence_from(g, p, &sylows, &posets.ap);
    let contractibility = contractibility_from(g, p, &posets.ap, &maximal);
    let candidate = equivalence.case().is_none() && !same;
    Ok(HomotopyReport {
        name: name.to_string(),
        order: g.order(),
        p,
        p_part: p_part(g.order(), p),
        sp_size: posets.sp.len(),
        ap_size: posets.ap.len(),
        sp_core: sp_core.len(),
        ap_core: ap_core.len(),
        same_homotopy_type: same,
        op_order: op.order(),
        sp_contractible: sp_core.len() == 1,
        ap_contractible: ap_core.len() == 1,
        steps,
        sp_height: posets.sp.height()?,
        ap_height: posets.ap.height()?,
        step_predicates,
        stage_check_consistent,
        equivalence,
        contractibility,
        euler_sp: euler_char(&posets.sp),
        euler_ap: euler_char(&posets.ap),
        homology_sp,
        homology_ap,
        candidate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hunt::filters::EquivalenceCase;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect();
        Group::closure(n, &gens, 4096).unwrap()
    }

    #[test]
    fn s4_reports() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let r = analyze_group("S4", &g, 2, &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.sp_size, r.ap_size), (19, 13));
        assert_eq!((r.sp_core, r.ap_core), (1, 1));
        assert!(r.same_homotopy_type);
        assert_eq!(r.op_order, 4);
        assert_eq!(r.steps, StepCount::Steps(3));
        assert_eq!(r.step_predicates, [false, false, false, true]);
        assert_eq!(r.stage_check_consistent, Some(true));
        assert_eq!(r.equivalence.case(), Some(EquivalenceCase::TwoPrimes));
        assert!(r.violations().is_empty(), "{:?}", r.violations());
        assert!(!r.candidate);

        let r = analyze_group("S4", &g, 3, &AnalyzeOptions::default()).unwrap();
        assert_eq!((r.sp_size, r.ap_size, r.sp_core, r.ap_core), (4, 4, 4, 4));
        assert!(r.same_homotopy_type);
        assert_eq!(r.steps, StepCount::NotContractible);
        assert_eq!(r.homology_sp.as_ref().unwrap().betti(), vec![3]);
        assert!(r.violations().is_empty(), "{:?}", r.violations());
    }

    #[test]
    fn skipping_and_deadline() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let opts = AnalyzeOptions {
            skip_homology: true,
            skip_steps: true,
            ..AnalyzeOptions::default()
        };
        let r = analyze_group("S4", &g, 2, &opts).unwrap();
        assert_eq!(r.steps, StepCount::Skipped);
        assert!(r.homology_sp.is_none());
        assert!(r.violations().is_empty());
        let expired = AnalyzeOptions {
            deadline: Deadline::at(Instant::now()),
            ..AnalyzeOptions::default()
        };
        assert!(matches!(analyze_group("S4", &g, 2, &expired), Err(Error::Timeout)));
    }
}
