use std::str::FromStr;

use crate::error::{Error, Result};
use crate::finposet::{hasse_dot, i_op, Poset};
use crate::group::Group;
use crate::plattice::PSubgroupFamily;

use super::report::SubgroupPosets;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotKind {
    Sp,
    Ap,
    CoreSp,
    CoreAp,
    IAp,
}

impl FromStr for DotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Sp" => DotKind::Sp,
            "Ap" => DotKind::Ap,
            "core_Sp" => DotKind::CoreSp,
            "core_Ap" => DotKind::CoreAp,
            "i_Ap" => DotKind::IAp,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown poset {other:?}; expected Sp, Ap, core_Sp, core_Ap or i_Ap"
                )))
            }
        })
    }
}

impl DotKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DotKind::Sp => "Sp",
            DotKind::Ap => "Ap",
            DotKind::CoreSp => "core_Sp",
            DotKind::CoreAp => "core_Ap",
            DotKind::IAp => "i_Ap",
        }
    }
}

/// `order=p^k, gens=…` for a family member.
pub fn subgroup_label(g: &Group, fam: &PSubgroupFamily, i: usize) -> String {
    let s = &fam.members[i];
    let k = crate::group::p_log(s.order(), fam.p).unwrap_or(0);
    let gens: Vec<String> = g
        .subgroup_generators(s)
        .into_iter()
        .map(|x| g.element(x).to_string())
        .collect();
    format!("order={}^{}, gens={}", fam.p, k, gens.join(" "))
}

/// The requested poset, whose labels index into the returned family.
pub fn select_poset<'a>(posets: &'a SubgroupPosets, kind: DotKind) -> Result<(Poset, &'a PSubgroupFamily)> {
    Ok(match kind {
        DotKind::Sp => (posets.sp.clone(), &posets.sp_family),
        DotKind::Ap => (posets.ap.clone(), &posets.ap_family),
        DotKind::CoreSp => (posets.sp.core().0, &posets.sp_family),
        DotKind::CoreAp => (posets.ap.core().0, &posets.ap_family),
        DotKind::IAp => (i_op(&posets.ap)?, &posets.ap_family),
    })
}

/// Hasse diagram of one of the subgroup posets of `g`.
pub fn export_dot(name: &str, g: &Group, p: usize, kind: DotKind) -> Result<String> {
    let posets = SubgroupPosets::new(g, p)?;
    let (x, fam) = select_poset(&posets, kind)?;
    let title = format!("{}_{}_p{}", name, kind.as_str(), p);
    Ok(hasse_dot(&x, &title, |i| subgroup_label(g, fam, x.label(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s, n).unwrap()).collect();
        Group::closure(n, &gens, 4096).unwrap()
    }

    #[test]
    fn s4_i_of_tori() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let dot = export_dot("S4", &g, 2, DotKind::IAp).unwrap();
        assert_eq!(dot.matches("[label=").count(), 7);
        assert_eq!(dot.matches("->").count(), 6);
        assert_eq!(dot.matches("order=2^2").count(), 4);
        assert_eq!(dot.matches("order=2^1").count(), 3);
    }

    #[test]
    fn klein_and_point() {
        let v = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let dot = export_dot("V", &v, 2, DotKind::Ap).unwrap();
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches("->").count(), 3);
        let dot = export_dot("V", &v, 2, DotKind::CoreAp).unwrap();
        assert_eq!(dot.matches("[label=").count(), 1);
        assert_eq!(dot.matches("->").count(), 0);
        assert!("bogus".parse::<DotKind>().is_err());
        assert_eq!("i_Ap".parse::<DotKind>().unwrap(), DotKind::IAp);
    }
}
