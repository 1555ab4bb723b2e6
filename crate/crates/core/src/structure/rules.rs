//! Registry of closed-form characterizations of product-loop subsets.
//!
//! Each entry computes one [`SubsetKind`] of `N ⋊_φ H` from `φ` alone and is
//! looked up by name. [`cross_check`] runs every applicable entry against
//! the subset computed from its definition on the product table.

use serde::{Deserialize, Serialize};

use super::{
    commutant_abelian_case, commutant_via_theorem, left_nucleus_group_form,
    left_nucleus_via_theorem, middle_nucleus_via_theorem, right_nucleus_via_theorem,
    StructureError, SubsetKind,
};
use crate::semidirect::ActionHom;
use crate::tables::{Loop, Subset};

pub trait Characterization: Sync {
    fn name(&self) -> &'static str;
    fn target(&self) -> SubsetKind;
    /// Hypotheses on `N` and `H`, for help output.
    fn requires(&self) -> &'static str;
    fn compute(&self, a: &ActionHom) -> Result<Subset, StructureError>;
}

macro_rules! characterization {
    ($ty:ident, $name:literal, $kind:expr, $req:literal, $f:path) => {
        struct $ty;
        impl Characterization for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn target(&self) -> SubsetKind {
                $kind
            }
            fn requires(&self) -> &'static str {
                $req
            }
            fn compute(&self, a: &ActionHom) -> Result<Subset, StructureError> {
                $f(a)
            }
        }
    };
}

characterization!(
    CommutantFixed,
    "commutant-fixed-center",
    SubsetKind::Commutant,
    "N has the left inverse property",
    commutant_via_theorem
);
characterization!(
    CommutantAbelian,
    "commutant-fix-kernel",
    SubsetKind::Commutant,
    "N and H abelian groups",
    commutant_abelian_case
);
characterization!(
    MiddleConditions,
    "middle-nucleus-conditions",
    SubsetKind::MiddleNucleus,
    "none",
    middle_nucleus_via_theorem
);
characterization!(
    RightConditions,
    "right-nucleus-conditions",
    SubsetKind::RightNucleus,
    "none",
    right_nucleus_via_theorem
);
characterization!(
    LeftConditions,
    "left-nucleus-conditions",
    SubsetKind::LeftNucleus,
    "none",
    left_nucleus_via_theorem
);
characterization!(
    LeftAutomorphisms,
    "left-nucleus-automorphisms",
    SubsetKind::LeftNucleus,
    "N a group",
    left_nucleus_group_form
);

static REGISTRY: [&dyn Characterization; 6] = [
    &CommutantFixed,
    &CommutantAbelian,
    &MiddleConditions,
    &RightConditions,
    &LeftConditions,
    &LeftAutomorphisms,
];

pub fn registry() -> &'static [&'static dyn Characterization] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static dyn Characterization> {
    REGISTRY.iter().copied().find(|c| c.name() == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Agree,
    Disagree {
        characterization: Vec<usize>,
        definition: Vec<usize>,
    },
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub target: SubsetKind,
    pub outcome: Outcome,
}

/// Every registered characterization of `a`, compared with the
/// definitional subset of `product`, which must be the product of `a`.
pub fn cross_check(a: &ActionHom, product: &Loop) -> Vec<CrossCheck> {
    REGISTRY
        .iter()
        .map(|c| {
            let outcome = match c.compute(a) {
                Err(e) => Outcome::NotApplicable(e.to_string()),
                Ok(s) => {
                    let d = c.target().compute(product);
                    if s == d {
                        Outcome::Agree
                    } else {
                        Outcome::Disagree {
                            characterization: s.members(),
                            definition: d.members(),
                        }
                    }
                }
            };
            CrossCheck {
                name: c.name().to_string(),
                target: c.target(),
                outcome,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perms::Permutation;
    use crate::semidirect::product;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|c| c.name()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), registry().len());
        assert!(lookup("left-nucleus-conditions").is_some());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn all_agree_on_case_v() {
        let g = Permutation::parse_cycles("(12)", 5).unwrap();
        let a = ActionHom::cyclic(Loop::cyclic(5).unwrap(), 4, &g).unwrap();
        let l = product(&a).unwrap();
        for c in cross_check(&a, &l) {
            assert_eq!(c.outcome, Outcome::Agree, "{}", c.name);
        }
    }

    #[test]
    fn inapplicable_rules_are_reported() {
        let q = product(
            &ActionHom::cyclic(
                Loop::cyclic(5).unwrap(),
                4,
                &Permutation::parse_cycles("(1234)", 5).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let a = ActionHom::trivial(q, Loop::cyclic(2).unwrap()).unwrap();
        let l = product(&a).unwrap();
        let checks = cross_check(&a, &l);
        let na = checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::NotApplicable(_)))
            .count();
        // abelian-case and automorphism form need N to be a group
        assert!(na >= 2);
        assert!(checks
            .iter()
            .all(|c| !matches!(c.outcome, Outcome::Disagree { .. })));
    }
}
