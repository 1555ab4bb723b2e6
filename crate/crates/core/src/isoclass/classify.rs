//! Greedy partition of a loop family into isomorphism classes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::deciders::{Backtrack, IsoDecider};
use super::{Fingerprint, IsoError, IsoWitness, Profile};
use crate::semidirect::{product, ActionHom};
use crate::tables::Loop;

/// One input to a classification run.
#[derive(Debug, Clone, Copy)]
pub struct Candidate<'a> {
    pub table: &'a Loop,
    pub profile: &'a Profile,
    pub action: Option<&'a ActionHom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    /// Least input index in the class.
    pub representative: usize,
    /// Generator of the representative's action in cycle notation, when
    /// the input came from a cyclic action.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
    pub members: Vec<usize>,
    pub fingerprint: Fingerprint,
    pub associative: bool,
    /// `witnesses[i]` maps the representative onto `members[i]`.
    #[serde(skip)]
    pub witnesses: Vec<IsoWitness>,
}

impl IsoClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClassReport {
    pub input_count: usize,
    pub class_count: usize,
    pub classes: Vec<IsoClass>,
}

impl IsoClassReport {
    pub fn associative_count(&self) -> usize {
        self.classes.iter().filter(|c| c.associative).count()
    }

    /// Index of the class containing input `i`.
    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&i))
    }
}

/// Classifies plain tables with the backtracking decider.
pub fn classify(loops: &[Loop]) -> Result<IsoClassReport, IsoError> {
    let profiles: Vec<Profile> = loops.par_iter().map(Profile::new).collect();
    let candidates: Vec<Candidate> = loops
        .iter()
        .zip(&profiles)
        .map(|(table, profile)| Candidate {
            table,
            profile,
            action: None,
        })
        .collect();
    classify_with(&candidates, &Backtrack)
}

/// Builds the products of `actions` and classifies them with `decider`.
pub fn classify_actions(
    actions: &[ActionHom],
    decider: &dyn IsoDecider,
) -> Result<IsoClassReport, IsoError> {
    let loops = actions
        .par_iter()
        .map(product)
        .collect::<Result<Vec<_>, _>>()?;
    let profiles: Vec<Profile> = loops.par_iter().map(Profile::new).collect();
    let candidates: Vec<Candidate> = loops
        .iter()
        .zip(&profiles)
        .zip(actions)
        .map(|((table, profile), a)| Candidate {
            table,
            profile,
            action: Some(a),
        })
        .collect();
    let mut report = classify_with(&candidates, decider)?;
    for class in &mut report.classes {
        let a = &actions[class.representative];
        if a.acting().order() > 1 {
            class.generator = Some(a.phi(1).to_cycle_string());
        }
    }
    Ok(report)
}

/// Greedy classification: inputs are visited in order and joined to the
/// first class in their fingerprint bucket whose representative the
/// decider maps onto them. Buckets are processed in parallel.
pub fn classify_with(
    candidates: &[Candidate],
    decider: &dyn IsoDecider,
) -> Result<IsoClassReport, IsoError> {
    if let Some(first) = candidates.first() {
        let n = first.table.order();
        if let Some(c) = candidates.iter().find(|c| c.table.order() != n) {
            return Err(IsoError::MixedOrders(n, c.table.order()));
        }
    }
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, c) in candidates.iter().enumerate() {
        buckets.entry(c.profile.fingerprint()).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let per_bucket = buckets
        .par_iter()
        .map(|bucket| classify_bucket(candidates, bucket, decider))
        .collect::<Result<Vec<_>, _>>()?;
    let mut classes: Vec<IsoClass> = per_bucket.into_iter().flatten().collect();
    classes.sort_by_key(|c| c.representative);
    Ok(IsoClassReport {
        input_count: candidates.len(),
        class_count: classes.len(),
        classes,
    })
}

fn classify_bucket(
    candidates: &[Candidate],
    bucket: &[usize],
    decider: &dyn IsoDecider,
) -> Result<Vec<IsoClass>, IsoError> {
    let mut classes: Vec<IsoClass> = Vec::new();
    'next: for &i in bucket {
        let c = &candidates[i];
        for class in classes.iter_mut() {
            let r = class.representative;
            if let Some(w) = decider.decide(&candidates[r], c)? {
                if !w.verify(candidates[r].table, c.table) {
                    return Err(IsoError::BadWitness { from: r, to: i });
                }
                class.members.push(i);
                class.witnesses.push(w);
                continue 'next;
            }
        }
        classes.push(IsoClass {
            representative: i,
            generator: None,
            members: vec![i],
            fingerprint: c.profile.fingerprint().clone(),
            associative: c.table.is_associative(),
            witnesses: vec![IsoWitness::plain(crate::perms::Permutation::identity(
                c.table.order(),
            ))],
        });
    }
    Ok(classes)
}
