//! Isomorphism criteria stated on the actions rather than the product tables.

use super::{automorphisms, is_isomorphism, IsoError, IsoWitness};
use crate::perms::Permutation;
use crate::semidirect::{product, ActionHom};
use crate::structure::kernel_of_action;

fn same_factors(a: &ActionHom, b: &ActionHom) -> Result<(), IsoError> {
    if a.base() != b.base() {
        return Err(IsoError::FactorMismatch("N"));
    }
    if a.acting() != b.acting() {
        return Err(IsoError::FactorMismatch("H"));
    }
    if !a.base().is_group() {
        return Err(IsoError::NotGroup);
    }
    a.require_valid()?;
    b.require_valid()?;
    Ok(())
}

fn conjugate(alpha: &Permutation, alpha_inv: &Permutation, p: &Permutation) -> Permutation {
    alpha
        .compose(p)
        .and_then(|q| q.compose(alpha_inv))
        .expect("equal degrees")
}

/// The map `(n, h) ↦ (α(n), β(h))` on product indices.
fn induced_map(a: &ActionHom, alpha: &Permutation, beta: &Permutation) -> Permutation {
    let images = (0..a.product_order())
        .map(|i| {
            let (n, h) = a.decode(i);
            a.encode(alpha.apply(n), beta.apply(h))
        })
        .collect();
    Permutation::from_images(images).expect("product of bijections")
}

/// Searches `α ∈ Aut(N)`, `β ∈ Aut(H)` with `α∘φ_h∘α⁻¹ = ψ_{β(h)}` for all
/// `h`, and returns the first pair together with the induced isomorphism
/// of the products (checked exhaustively).
pub fn semidirect_iso_criterion(
    a: &ActionHom,
    b: &ActionHom,
) -> Result<Option<IsoWitness>, IsoError> {
    same_factors(a, b)?;
    let aut_n = automorphisms(a.base())?;
    let aut_h = automorphisms(a.acting())?;
    let nh = a.acting().order();
    for alpha in &aut_n {
        let alpha_inv = alpha.inverse();
        let conj: Vec<Permutation> = a
            .images()
            .iter()
            .map(|p| conjugate(alpha, &alpha_inv, p))
            .collect();
        for beta in &aut_h {
            if (0..nh).all(|h| conj[h] == *b.phi(beta.apply(h))) {
                let mapping = induced_map(a, alpha, beta);
                let (la, lb) = (product(a)?, product(b)?);
                if !is_isomorphism(&mapping, &la, &lb) {
                    return Err(IsoError::BadWitness { from: 0, to: 0 });
                }
                return Ok(Some(IsoWitness {
                    mapping,
                    alpha: Some(alpha.clone()),
                    beta: Some(beta.clone()),
                }));
            }
        }
    }
    Ok(None)
}

/// The first `α ∈ Aut(N)` with `{α∘φ_h∘α⁻¹} = {ψ_h}` as sets, for actions
/// with trivial kernels.
pub fn conjugating_automorphism(
    a: &ActionHom,
    b: &ActionHom,
) -> Result<Option<Permutation>, IsoError> {
    same_factors(a, b)?;
    for act in [a, b] {
        if kernel_of_action(act)?.len() != 1 {
            return Err(IsoError::NontrivialKernel);
        }
    }
    let mut target: Vec<&Permutation> = b.images().iter().collect();
    target.sort();
    for alpha in automorphisms(a.base())? {
        let alpha_inv = alpha.inverse();
        let mut conj: Vec<Permutation> = a
            .images()
            .iter()
            .map(|p| conjugate(&alpha, &alpha_inv, p))
            .collect();
        conj.sort();
        if conj.iter().eq(target.iter().copied()) {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// Are `φ(H)` and `ψ(H)` conjugate by an automorphism of `N`?
pub fn conjugacy_criterion(a: &ActionHom, b: &ActionHom) -> Result<bool, IsoError> {
    Ok(conjugating_automorphism(a, b)?.is_some())
}

/// From a conjugating `α`, the map `β = ψ⁻¹∘σ∘φ` on `H` and the induced
/// product map. `β` need not be an automorphism of `H`; the caller verifies
/// the result.
pub(crate) fn witness_from_conjugation(
    a: &ActionHom,
    b: &ActionHom,
    alpha: &Permutation,
) -> Option<IsoWitness> {
    let alpha_inv = alpha.inverse();
    let beta_images: Option<Vec<usize>> = a
        .images()
        .iter()
        .map(|p| {
            let c = conjugate(alpha, &alpha_inv, p);
            b.images().iter().position(|q| *q == c)
        })
        .collect();
    let beta = Permutation::from_images(beta_images?).ok()?;
    let mapping = induced_map(a, alpha, &beta);
    Some(IsoWitness {
        mapping,
        alpha: Some(alpha.clone()),
        beta: Some(beta),
    })
}
