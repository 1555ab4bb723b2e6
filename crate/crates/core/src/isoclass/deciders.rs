//! Interchangeable isomorphism deciders, selectable by name.

use super::classify::Candidate;
use super::criteria::{
    conjugating_automorphism, semidirect_iso_criterion, witness_from_conjugation,
};
use super::{find_isomorphism, IsoError, IsoWitness};

pub trait IsoDecider: Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// A witness mapping `from` onto `to`, or `None` if the decider finds none.
    fn decide(&self, from: &Candidate, to: &Candidate) -> Result<Option<IsoWitness>, IsoError>;
}

/// Invariant-guided backtracking on the product tables.
pub struct Backtrack;

/// Search over `Aut(N) × Aut(H)` for a compatible pair.
pub struct Semidirect;

/// Set-conjugacy of the action images; actions must be faithful.
pub struct Conjugacy;

impl IsoDecider for Backtrack {
    fn name(&self) -> &'static str {
        "backtrack"
    }
    fn describe(&self) -> &'static str {
        "backtracking search on the Cayley tables"
    }
    fn decide(&self, from: &Candidate, to: &Candidate) -> Result<Option<IsoWitness>, IsoError> {
        Ok(find_isomorphism(
            from.table,
            from.profile,
            to.table,
            to.profile,
        ))
    }
}

impl IsoDecider for Semidirect {
    fn name(&self) -> &'static str {
        "semidirect"
    }
    fn describe(&self) -> &'static str {
        "automorphism pair (alpha, beta) intertwining the actions"
    }
    fn decide(&self, from: &Candidate, to: &Candidate) -> Result<Option<IsoWitness>, IsoError> {
        let (Some(a), Some(b)) = (from.action, to.action) else {
            return Err(IsoError::NeedsAction("semidirect"));
        };
        semidirect_iso_criterion(a, b)
    }
}

impl IsoDecider for Conjugacy {
    fn name(&self) -> &'static str {
        "conjugacy"
    }
    fn describe(&self) -> &'static str {
        "conjugacy of faithful action images under Aut(N)"
    }
    fn decide(&self, from: &Candidate, to: &Candidate) -> Result<Option<IsoWitness>, IsoError> {
        let (Some(a), Some(b)) = (from.action, to.action) else {
            return Err(IsoError::NeedsAction("conjugacy"));
        };
        match conjugating_automorphism(a, b)? {
            None => Ok(None),
            Some(alpha) => match witness_from_conjugation(a, b, &alpha) {
                Some(w) => Ok(Some(w)),
                None => Err(IsoError::BadWitness { from: 0, to: 0 }),
            },
        }
    }
}

static REGISTRY: [&dyn IsoDecider; 3] = [&Backtrack, &Semidirect, &Conjugacy];

pub fn registry() -> &'static [&'static dyn IsoDecider] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static dyn IsoDecider, IsoError> {
    REGISTRY
        .iter()
        .copied()
        .find(|d| d.name() == name)
        .ok_or_else(|| IsoError::UnknownDecider(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoclass::classify_actions;
    use crate::perms::enumerate_stabilizer_torsion;
    use crate::semidirect::ActionHom;
    use crate::tables::Loop;

    fn order20() -> Vec<ActionHom> {
        enumerate_stabilizer_torsion(5, 0, 4)
            .unwrap()
            .iter()
            .map(|g| ActionHom::cyclic(Loop::cyclic(5).unwrap(), 4, g).unwrap())
            .collect()
    }

    #[test]
    fn lookup_by_name() {
        for d in registry() {
            assert_eq!(lookup(d.name()).unwrap().name(), d.name());
        }
        assert!(matches!(lookup("x"), Err(IsoError::UnknownDecider(_))));
    }

    #[test]
    fn backtrack_and_semidirect_agree_on_order20() {
        let acts = order20();
        let a = classify_actions(&acts, &Backtrack).unwrap();
        let b = classify_actions(&acts, &Semidirect).unwrap();
        assert_eq!(a.class_count, 7);
        assert_eq!(a.associative_count(), 3);
        let members = |r: &crate::isoclass::IsoClassReport| {
            r.classes
                .iter()
                .map(|c| c.members.clone())
                .collect::<Vec<_>>()
        };
        assert_eq!(members(&a), members(&b));
    }
}
