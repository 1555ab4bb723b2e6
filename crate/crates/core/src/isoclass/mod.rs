//! Loop isomorphism: invariants, witnesses, search and classification.

mod classify;
mod criteria;
pub mod deciders;

pub use classify::{
    classify, classify_actions, classify_with, Candidate, IsoClass, IsoClassReport,
};
pub use criteria::{conjugacy_criterion, conjugating_automorphism, semidirect_iso_criterion};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perms::Permutation;
use crate::semidirect::ActionError;
use crate::structure::{self, StructureError};
use crate::tables::{Loop, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("automorphisms are only enumerated for groups")]
    NotGroup,
    #[error("actions do not share the same {0}")]
    FactorMismatch(&'static str),
    #[error("action has a nontrivial kernel")]
    NontrivialKernel,
    #[error("decider {0} needs the generating actions, not just tables")]
    NeedsAction(&'static str),
    #[error("loops of different orders: {0} and {1}")]
    MixedOrders(usize, usize),
    #[error("witness from {from} to {to} failed verification")]
    BadWitness { from: usize, to: usize },
    #[error("unknown decider {0:?}")]
    UnknownDecider(String),
}

/// Isomorphism invariants of a whole loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub associative: bool,
    pub commutative: bool,
    /// Sizes of `N_λ, N_μ, N_ρ, N, C, Z`.
    pub subset_sizes: [usize; 6],
    pub associating_triples: usize,
    pub commuting_pairs: usize,
    /// Sorted multiset of (left, right) translation cycle types.
    pub translation_types: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Fingerprint {
    /// Compact one-line summary for reports.
    pub fn summary(&self) -> String {
        let s = self.subset_sizes;
        format!(
            "|L|={} assoc={} comm={} N_lambda={} N_mu={} N_rho={} N={} C={} Z={} assoc_triples={} comm_pairs={}",
            self.order,
            self.associative,
            self.commutative,
            s[0],
            s[1],
            s[2],
            s[3],
            s[4],
            s[5],
            self.associating_triples,
            self.commuting_pairs
        )
    }
}

/// Per-element invariants preserved by every isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct ElementInvariant {
    left: Vec<usize>,
    right: Vec<usize>,
    /// Membership bits for `N_λ, N_μ, N_ρ, C`.
    membership: u8,
    commuting: usize,
    associating: [usize; 3],
}

/// Fingerprint plus per-element invariants, computed once per loop.
#[derive(Debug, Clone)]
pub struct Profile {
    fingerprint: Fingerprint,
    elements: Vec<ElementInvariant>,
}

impl Profile {
    pub fn new(l: &Loop) -> Profile {
        let n = l.order();
        let nl = structure::left_nucleus(l);
        let nm = structure::middle_nucleus(l);
        let nr = structure::right_nucleus(l);
        let c = structure::commutant(l);
        let nuc = nl.intersection(&nm).intersection(&nr);
        let z = nuc.intersection(&c);

        let mut assoc = vec![[0usize; 3]; n];
        let mut triples = 0;
        for a in 0..n {
            for b in 0..n {
                let ab = l.mul(a, b);
                for d in 0..n {
                    if l.mul(ab, d) == l.mul(a, l.mul(b, d)) {
                        triples += 1;
                        assoc[a][0] += 1;
                        assoc[b][1] += 1;
                        assoc[d][2] += 1;
                    }
                }
            }
        }
        let types = l.translation_cycle_types();
        let elements: Vec<ElementInvariant> = (0..n)
            .map(|x| ElementInvariant {
                left: types[x].0.clone(),
                right: types[x].1.clone(),
                membership: (nl.contains(x) as u8)
                    | (nm.contains(x) as u8) << 1
                    | (nr.contains(x) as u8) << 2
                    | (c.contains(x) as u8) << 3,
                commuting: (0..n).filter(|&y| l.mul(x, y) == l.mul(y, x)).count(),
                associating: assoc[x],
            })
            .collect();
        let commuting_pairs = elements.iter().map(|e| e.commuting).sum();
        let mut translation_types = types;
        translation_types.sort();
        Profile {
            fingerprint: Fingerprint {
                order: n,
                associative: l.is_associative(),
                commutative: l.is_commutative(),
                subset_sizes: [nl.len(), nm.len(), nr.len(), nuc.len(), c.len(), z.len()],
                associating_triples: triples,
                commuting_pairs,
                translation_types,
            },
            elements,
        }
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }
}

pub fn fingerprint(l: &Loop) -> Fingerprint {
    Profile::new(l).fingerprint
}

/// An isomorphism between two loops, with the automorphism pair it came
/// from when it was built from an action-level criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub mapping: Permutation,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<Permutation>,
}

impl IsoWitness {
    pub fn plain(mapping: Permutation) -> Self {
        IsoWitness {
            mapping,
            alpha: None,
            beta: None,
        }
    }

    /// `mapping(a·b) = mapping(a)·mapping(b)` for all `a, b`, and `mapping(0) = 0`.
    pub fn verify(&self, from: &Loop, to: &Loop) -> bool {
        is_isomorphism(&self.mapping, from, to)
    }
}

pub fn is_isomorphism(f: &Permutation, from: &Loop, to: &Loop) -> bool {
    let n = from.order();
    if to.order() != n || f.degree() != n || f.apply(0) != 0 {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| f.apply(from.mul(a, b)) == to.mul(f.apply(a), f.apply(b))))
}

const UNSET: usize = usize::MAX;

/// Backtracking search for isomorphisms `l1 → l2`.
///
/// Elements are assigned in ascending order, candidate images ascending and
/// restricted to elements with equal local invariants. Each assignment is
/// closed under `f(a·b) := f(a)·f(b)`; any clash with an existing binding,
/// a repeated image or an invariant mismatch prunes the branch.
struct Search<'a> {
    l1: &'a Loop,
    l2: &'a Loop,
    class1: Vec<u32>,
    class2: Vec<u32>,
    f: Vec<usize>,
    finv: Vec<usize>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(l1: &'a Loop, p1: &Profile, l2: &'a Loop, p2: &Profile) -> Self {
        let mut ids: HashMap<&ElementInvariant, u32> = HashMap::new();
        let mut class = |e| {
            let next = ids.len() as u32;
            *ids.entry(e).or_insert(next)
        };
        let class1 = p1.elements.iter().map(&mut class).collect();
        let class2 = p2.elements.iter().map(&mut class).collect();
        let n = l1.order();
        Search {
            l1,
            l2,
            class1,
            class2,
            f: vec![UNSET; n],
            finv: vec![UNSET; n],
            trail: Vec::with_capacity(n),
        }
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.finv[y] != UNSET || self.class1[x] != self.class2[y] {
            return false;
        }
        self.f[x] = y;
        self.finv[y] = x;
        self.trail.push(x);
        true
    }

    fn bind(&mut self, x: usize, y: usize) -> bool {
        let start = self.trail.len();
        if !self.set(x, y) {
            return false;
        }
        let mut next = start;
        while next < self.trail.len() {
            let a = self.trail[next];
            next += 1;
            for j in 0..self.trail.len() {
                let b = self.trail[j];
                for (u, v) in [(a, b), (b, a)] {
                    let c = self.l1.mul(u, v);
                    let t = self.l2.mul(self.f[u], self.f[v]);
                    if self.f[c] == UNSET {
                        if !self.set(c, t) {
                            return false;
                        }
                    } else if self.f[c] != t {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().expect("non-empty");
            self.finv[self.f[x]] = UNSET;
            self.f[x] = UNSET;
        }
    }

    /// Returns true when the search should stop.
    fn run(&mut self, all: bool, out: &mut Vec<Permutation>) -> bool {
        let Some(x) = self.f.iter().position(|&y| y == UNSET) else {
            out.push(Permutation::from_images(self.f.clone()).expect("bijective by construction"));
            return !all;
        };
        for y in 0..self.l2.order() {
            if self.finv[y] != UNSET || self.class1[x] != self.class2[y] {
                continue;
            }
            let save = self.trail.len();
            if self.bind(x, y) && self.run(all, out) {
                return true;
            }
            self.undo(save);
        }
        false
    }

    fn solve(mut self, all: bool) -> Vec<Permutation> {
        let mut out = Vec::new();
        if self.bind(0, 0) {
            self.run(all, &mut out);
        }
        out
    }
}

/// Isomorphism search on precomputed profiles.
pub fn find_isomorphism(l1: &Loop, p1: &Profile, l2: &Loop, p2: &Profile) -> Option<IsoWitness> {
    if p1.fingerprint != p2.fingerprint {
        return None;
    }
    let found = Search::new(l1, p1, l2, p2).solve(false).pop()?;
    let w = IsoWitness::plain(found);
    debug_assert!(w.verify(l1, l2));
    Some(w)
}

pub fn are_isomorphic(l1: &Loop, l2: &Loop) -> Option<IsoWitness> {
    if l1.order() != l2.order() {
        return None;
    }
    find_isomorphism(l1, &Profile::new(l1), l2, &Profile::new(l2))
}

/// All automorphisms of a group, in lexicographic order (identity first).
pub fn automorphisms(g: &Loop) -> Result<Vec<Permutation>, IsoError> {
    if !g.is_group() {
        return Err(IsoError::NotGroup);
    }
    let p = Profile::new(g);
    let mut all = Search::new(g, &p, g, &p).solve(true);
    all.sort();
    Ok(all)
}
