//! Nuclei, commutant, center and associator subloop of a loop.
//!
//! The subsets computed straight from their definitions on a [`Loop`] are
//! the ground truth. For products `N ⋊_φ H` the same subsets also have
//! closed-form descriptions in terms of `φ`; those live here too and are
//! registered in [`rules`] so they can be cross-checked against the
//! definitions.

pub mod rules;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perms::Permutation;
use crate::semidirect::{ActionError, ActionHom};
use crate::tables::{Loop, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("normal factor lacks the left inverse property")]
    NoLeftInverseProperty,
    #[error("both factors must be abelian groups")]
    NotAbelianGroups,
    #[error("normal factor is not a group")]
    BaseNotGroup,
    #[error("inner map i_{0} is not a bijection")]
    NotBijective(usize),
}

/// The distinguished subsets reported for every loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubsetKind {
    LeftNucleus,
    MiddleNucleus,
    RightNucleus,
    Nucleus,
    Commutant,
    Center,
    Associator,
}

impl SubsetKind {
    pub const ALL: [SubsetKind; 7] = [
        SubsetKind::LeftNucleus,
        SubsetKind::MiddleNucleus,
        SubsetKind::RightNucleus,
        SubsetKind::Nucleus,
        SubsetKind::Commutant,
        SubsetKind::Center,
        SubsetKind::Associator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetKind::LeftNucleus => "N_lambda",
            SubsetKind::MiddleNucleus => "N_mu",
            SubsetKind::RightNucleus => "N_rho",
            SubsetKind::Nucleus => "N",
            SubsetKind::Commutant => "C",
            SubsetKind::Center => "Z",
            SubsetKind::Associator => "A",
        }
    }

    /// The subset computed from its definition.
    pub fn compute(self, l: &Loop) -> Subset {
        match self {
            SubsetKind::LeftNucleus => left_nucleus(l),
            SubsetKind::MiddleNucleus => middle_nucleus(l),
            SubsetKind::RightNucleus => right_nucleus(l),
            SubsetKind::Nucleus => nucleus(l),
            SubsetKind::Commutant => commutant(l),
            SubsetKind::Center => center(l),
            SubsetKind::Associator => associator_subloop(l),
        }
    }
}

fn filter(l: &Loop, pred: impl Fn(usize) -> bool) -> Subset {
    Subset::from_members(l.order(), (0..l.order()).filter(|&a| pred(a))).expect("in range")
}

fn all_pairs(n: usize, pred: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|x| (0..n).all(|y| pred(x, y)))
}

/// `{a : ax = xa for all x}`.
pub fn commutant(l: &Loop) -> Subset {
    filter(l, |a| (0..l.order()).all(|x| l.mul(a, x) == l.mul(x, a)))
}

/// `{a : a·xy = ax·y}`.
pub fn left_nucleus(l: &Loop) -> Subset {
    filter(l, |a| all_pairs(l.order(), |x, y| l.associates(a, x, y)))
}

/// `{a : x·ay = xa·y}`.
pub fn middle_nucleus(l: &Loop) -> Subset {
    filter(l, |a| all_pairs(l.order(), |x, y| l.associates(x, a, y)))
}

/// `{a : x·ya = xy·a}`.
pub fn right_nucleus(l: &Loop) -> Subset {
    filter(l, |a| all_pairs(l.order(), |x, y| l.associates(x, y, a)))
}

pub fn nucleus(l: &Loop) -> Subset {
    left_nucleus(l)
        .intersection(&middle_nucleus(l))
        .intersection(&right_nucleus(l))
}

pub fn center(l: &Loop) -> Subset {
    nucleus(l).intersection(&commutant(l))
}

/// `Fix(φ)`: elements of `N` fixed by every `φ_h`.
pub fn fix_of_action(a: &ActionHom) -> Result<Subset, StructureError> {
    a.require_valid()?;
    let n = a.base();
    Ok(filter(n, |x| a.images().iter().all(|p| p.apply(x) == x)))
}

/// `ker(φ)`: elements of `H` acting as the identity.
pub fn kernel_of_action(a: &ActionHom) -> Result<Subset, StructureError> {
    a.require_valid()?;
    Ok(filter(a.acting(), |h| a.phi(h).is_identity()))
}

/// `i_n : x ↦ n·(x·n⁻¹)` with `n⁻¹` the right inverse of `n`.
pub fn inner_map(l: &Loop, n: usize) -> Result<Permutation, StructureError> {
    let ni = l.right_inverse(n);
    let images = (0..l.order()).map(|x| l.mul(n, l.mul(x, ni))).collect();
    Permutation::from_images(images).map_err(|_| StructureError::NotBijective(n))
}

fn product_subset(a: &ActionHom, pred: impl Fn(usize, usize) -> bool) -> Subset {
    let (nb, nh) = (a.base().order(), a.acting().order());
    let members = (0..nh).flat_map(|y| (0..nb).map(move |x| (x, y)));
    Subset::from_members(
        a.product_order(),
        members
            .filter(|&(x, y)| pred(x, y))
            .map(|(x, y)| a.encode(x, y)),
    )
    .expect("in range")
}

/// Commutant of `N ⋊_φ H` as `{(x,y) : x ∈ Fix(φ), y ∈ Z(H), φ_y = i_{x⁻¹}}`,
/// with `x⁻¹` the left inverse. Needs the left inverse property in `N`.
pub fn commutant_via_theorem(a: &ActionHom) -> Result<Subset, StructureError> {
    a.require_valid()?;
    let n = a.base();
    if !n.has_left_inverse_property() {
        return Err(StructureError::NoLeftInverseProperty);
    }
    let fix = fix_of_action(a)?;
    let z_h = commutant(a.acting());
    let inner: Vec<Permutation> = (0..n.order())
        .map(|x| inner_map(n, n.left_inverse(x)))
        .collect::<Result<_, _>>()?;
    Ok(product_subset(a, |x, y| {
        fix.contains(x) && z_h.contains(y) && *a.phi(y) == inner[x]
    }))
}

/// Commutant as `Fix(φ) × ker(φ)` when `N` and `H` are abelian groups.
pub fn commutant_abelian_case(a: &ActionHom) -> Result<Subset, StructureError> {
    let abelian = |l: &Loop| l.is_group() && l.is_commutative();
    if !abelian(a.base()) || !abelian(a.acting()) {
        return Err(StructureError::NotAbelianGroups);
    }
    let fix = fix_of_action(a)?;
    let ker = kernel_of_action(a)?;
    Ok(product_subset(a, |x, y| fix.contains(x) && ker.contains(y)))
}

/// `(x,y)` with `φ_h(x·φ_y(n)) = φ_h(x)·φ_{hy}(n)` and `φ_h(x) ∈ N_μ(N)`
/// for all `h, n`.
pub fn middle_nucleus_via_theorem(a: &ActionHom) -> Result<Subset, StructureError> {
    a.require_valid()?;
    let (n, h) = (a.base(), a.acting());
    let nm = middle_nucleus(n);
    Ok(product_subset(a, |x, y| {
        (0..h.order()).all(|hh| {
            nm.contains(a.act(hh, x))
                && (0..n.order()).all(|m| {
                    a.act(hh, n.mul(x, a.act(y, m))) == n.mul(a.act(hh, x), a.act(h.mul(hh, y), m))
                })
        })
    }))
}

/// `(x,y)` with `φ_h(n·φ_{h'}(x)) = φ_h(n)·φ_{hh'}(x)` and `φ_h(x) ∈ N_ρ(N)`
/// for all `h, h', n`. The condition does not involve `y`.
pub fn right_nucleus_via_theorem(a: &ActionHom) -> Result<Subset, StructureError> {
    a.require_valid()?;
    let (n, h) = (a.base(), a.acting());
    let nr = right_nucleus(n);
    let ok: Vec<bool> = (0..n.order())
        .map(|x| {
            (0..h.order()).all(|h1| {
                nr.contains(a.act(h1, x))
                    && (0..h.order()).all(|h2| {
                        (0..n.order()).all(|m| {
                            a.act(h1, n.mul(m, a.act(h2, x)))
                                == n.mul(a.act(h1, m), a.act(h.mul(h1, h2), x))
                        })
                    })
            })
        })
        .collect();
    Ok(product_subset(a, |x, _| ok[x]))
}

/// `(x,y)` with `x·φ_y(n·φ_h(n')) = (x·φ_y(n))·φ_{yh}(n')` for all `h, n, n'`.
pub fn left_nucleus_via_theorem(a: &ActionHom) -> Result<Subset, StructureError> {
    a.require_valid()?;
    let (n, h) = (a.base(), a.acting());
    let k = n.order();
    Ok(product_subset(a, |x, y| {
        (0..h.order()).all(|hh| {
            let yh = h.mul(y, hh);
            all_pairs(k, |m1, m2| {
                n.mul(x, a.act(y, n.mul(m1, a.act(hh, m2))))
                    == n.mul(n.mul(x, a.act(y, m1)), a.act(yh, m2))
            })
        })
    }))
}

/// Left nucleus as `{(x,y) : φ_y ∈ Aut(N)}`, valid when `N` is a group.
pub fn left_nucleus_group_form(a: &ActionHom) -> Result<Subset, StructureError> {
    if !a.base().is_group() {
        return Err(StructureError::BaseNotGroup);
    }
    a.require_valid()?;
    let auto: Vec<bool> = (0..a.acting().order())
        .map(|y| a.is_by_automorphisms(y))
        .collect();
    Ok(product_subset(a, |_, y| auto[y]))
}

/// `{(ab·c) \ (a·bc)}`: the elements `u` with `(ab·c)·u = a·bc`.
pub fn associator_elements(l: &Loop) -> Subset {
    let n = l.order();
    let mut mask = 0u64;
    for a in 0..n {
        for b in 0..n {
            let ab = l.mul(a, b);
            for c in 0..n {
                mask |= 1u64 << l.left_div(l.mul(ab, c), l.mul(a, l.mul(b, c)));
            }
        }
    }
    Subset::from_members(n, crate::tables::bits(mask)).expect("in range")
}

/// Smallest normal subloop containing `seed`.
///
/// Grows the generated subloop by the images of its members under the
/// standard generators of the inner mapping group
/// (`T_x`, `L_{x,y}`, `R_{x,y}`) until it stops changing, then confirms
/// normality with [`Loop::is_normal_subloop`].
pub fn normal_closure(l: &Loop, seed: &Subset) -> Subset {
    let n = l.order();
    let mut s = l.subloop_generated(seed.iter());
    loop {
        let mut grown = s.mask();
        for e in s.iter() {
            for x in 0..n {
                // T_x(e) = x \ (e x)
                grown |= 1u64 << l.left_div(x, l.mul(e, x));
                for y in 0..n {
                    // L_{x,y}(e) = (yx) \ (y(xe))
                    grown |= 1u64 << l.left_div(l.mul(y, x), l.mul(y, l.mul(x, e)));
                    // R_{x,y}(e) = ((ex)y) / (xy)
                    grown |= 1u64 << l.right_div(l.mul(x, y), l.mul(l.mul(e, x), y));
                }
            }
        }
        let next = l.subloop_generated(crate::tables::bits(grown));
        if next == s {
            break;
        }
        s = next;
    }
    if l.is_normal_subloop(&s).unwrap_or(false) {
        s
    } else {
        // Inner-mapping invariance and the coset conditions coincide, so this
        // branch is not expected to be reachable.
        l.full_subset()
    }
}

/// Smallest normal subloop with associative quotient.
///
/// Any such subloop contains every `(ab·c) \ (a·bc)`, so it is the normal
/// closure of those elements.
pub fn associator_subloop(l: &Loop) -> Subset {
    normal_closure(l, &associator_elements(l))
}

fn p_adic_exponent(mut k: usize, p: usize) -> usize {
    let mut e = 0;
    while k.is_multiple_of(p) {
        k /= p;
        e += 1;
    }
    e
}

fn element_power(l: &Loop, x: usize, k: usize) -> usize {
    (0..k).fold(0, |acc, _| l.mul(acc, x))
}

/// Invariant factors of a finite abelian group, ascending, each dividing
/// the next.
pub fn invariant_factors(g: &Loop) -> Vec<usize> {
    let n = g.order();
    let primes: Vec<usize> = (2..=n)
        .filter(|&p| n.is_multiple_of(p) && (2..p).all(|d| p % d != 0))
        .collect();
    let mut per_prime: Vec<(usize, Vec<usize>)> = Vec::new();
    for &p in &primes {
        let e = p_adic_exponent(n, p);
        // counts[k] = #{x : x^(p^k) = 1}
        let counts: Vec<usize> = (0..=e)
            .map(|k| {
                let q = p.pow(k as u32);
                (0..n).filter(|&x| element_power(g, x, q) == 0).count()
            })
            .collect();
        // number of cyclic p-parts of exponent >= k
        let at_least: Vec<usize> = (1..=e)
            .map(|k| p_adic_exponent(counts[k] / counts[k - 1], p))
            .collect();
        let parts = at_least.first().copied().unwrap_or(0);
        let mut exps: Vec<usize> = (0..parts)
            .map(|i| at_least.iter().filter(|&&c| c > i).count())
            .collect();
        exps.sort_unstable();
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    (0..width)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, exps)| {
                    let pad = width - exps.len();
                    if i < pad {
                        1
                    } else {
                        p.pow(exps[i - pad] as u32)
                    }
                })
                .product()
        })
        .collect()
}

/// `"Z_10"`, `"Z_3 x Z_3"`, `"trivial"`; non-abelian or non-associative
/// inputs get a descriptive label instead.
pub fn abelian_iso_label(g: &Loop) -> String {
    if g.order() == 1 {
        return "trivial".to_string();
    }
    if !g.is_associative() {
        return "non-associative".to_string();
    }
    if !g.is_commutative() {
        return format!("non-abelian group of order {}", g.order());
    }
    invariant_factors(g)
        .iter()
        .map(|d| format!("Z_{d}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Label of a subset: the loop label when it is a subloop, else its size.
pub fn subset_label(l: &Loop, s: &Subset) -> String {
    match l.restrict(s) {
        Ok(sub) => abelian_iso_label(&sub),
        Err(_) => format!("size {}", s.len()),
    }
}

/// Nuclei, commutant, center and associator subloop of one loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub associative: bool,
    pub commutative: bool,
    pub n_lambda: Subset,
    pub n_mu: Subset,
    pub n_rho: Subset,
    pub nucleus: Subset,
    pub commutant: Subset,
    pub center: Subset,
    /// Smallest normal subloop whose quotient is a group.
    pub associator: Subset,
    pub iso_labels: BTreeMap<String, String>,
}

impl StructureReport {
    pub fn compute(l: &Loop) -> StructureReport {
        let n_lambda = left_nucleus(l);
        let n_mu = middle_nucleus(l);
        let n_rho = right_nucleus(l);
        let nucleus = n_lambda.intersection(&n_mu).intersection(&n_rho);
        let commutant = commutant(l);
        let center = nucleus.intersection(&commutant);
        let associator = associator_subloop(l);
        let mut report = StructureReport {
            order: l.order(),
            associative: l.is_associative(),
            commutative: l.is_commutative(),
            n_lambda,
            n_mu,
            n_rho,
            nucleus,
            commutant,
            center,
            associator,
            iso_labels: BTreeMap::new(),
        };
        for kind in SubsetKind::ALL {
            let label = subset_label(l, report.get(kind));
            report.iso_labels.insert(kind.name().to_string(), label);
        }
        report
    }

    pub fn get(&self, kind: SubsetKind) -> &Subset {
        match kind {
            SubsetKind::LeftNucleus => &self.n_lambda,
            SubsetKind::MiddleNucleus => &self.n_mu,
            SubsetKind::RightNucleus => &self.n_rho,
            SubsetKind::Nucleus => &self.nucleus,
            SubsetKind::Commutant => &self.commutant,
            SubsetKind::Center => &self.center,
            SubsetKind::Associator => &self.associator,
        }
    }

    pub fn label(&self, kind: SubsetKind) -> &str {
        &self.iso_labels[kind.name()]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "order {}  associative {}  commutative {}\n",
            self.order, self.associative, self.commutative
        );
        for kind in SubsetKind::ALL {
            let s = self.get(kind);
            out.push_str(&format!(
                "{:<9} size {:>2}  {:<12} {:?}\n",
                kind.name(),
                s.len(),
                self.label(kind),
                s
            ));
        }
        out.push_str("A is the smallest normal subloop with associative quotient\n");
        out
    }
}
