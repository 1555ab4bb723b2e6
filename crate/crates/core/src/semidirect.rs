//! Semidirect products `N ⋊_φ H` of a loop `N` by a group `H`.
//!
//! Elements of the product are pairs `(n, h)` stored at index `h·|N| + n`,
//! so the identity `(0, 0)` is index 0 and the block `h·|N| .. (h+1)·|N|` is
//! the coset `N h`. Multiplication is `(n1,h1)(n2,h2) = (n1·φ_{h1}(n2), h1h2)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perms::{PermError, Permutation};
use crate::tables::{CayleyTable, Loop, Subset, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("acting loop is not a group")]
    ActingNotGroup,
    #[error("normal factor is not a group")]
    BaseNotGroup,
    #[error("expected {expected} images (one per element of H), got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image of h = {h} has degree {degree}, expected {expected}")]
    DegreeMismatch {
        h: usize,
        degree: usize,
        expected: usize,
    },
    #[error("generator does not fix the identity")]
    GeneratorMovesIdentity,
    #[error("generator has order {order}, which does not divide {n}")]
    GeneratorOrder { order: usize, n: usize },
    #[error("invalid action: {0}")]
    Invalid(Violation),
    #[error("unknown cyclic group name {0:?} (expected e.g. \"Z9\")")]
    UnknownGroup(String),
    #[error("h index {0} is not an element of H")]
    BadIndex(usize),
    #[error("image key {0:?} is not an element index of H")]
    BadKey(String),
}

/// The first way in which a candidate action fails to be a homomorphism
/// into the stabilizer of the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    IdentityNotTrivial,
    MovesIdentity { h: usize },
    NotHomomorphism { h1: usize, h2: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::IdentityNotTrivial => write!(f, "the identity of H does not act trivially"),
            Violation::MovesIdentity { h } => write!(f, "phi_{h} moves the identity of N"),
            Violation::NotHomomorphism { h1, h2 } => {
                write!(f, "phi_({h1}*{h2}) != phi_{h1} o phi_{h2}")
            }
        }
    }
}

/// A map `h ↦ φ_h` from a group `H` into permutations of a loop `N`.
///
/// Construction only checks shapes; [`ActionHom::validate`] checks the
/// homomorphism conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionHom {
    base: Loop,
    acting: Loop,
    images: Vec<Permutation>,
}

impl ActionHom {
    pub fn new(base: Loop, acting: Loop, images: Vec<Permutation>) -> Result<Self, ActionError> {
        if !acting.is_group() {
            return Err(ActionError::ActingNotGroup);
        }
        if images.len() != acting.order() {
            return Err(ActionError::ImageCount {
                expected: acting.order(),
                got: images.len(),
            });
        }
        if let Some((h, p)) = images
            .iter()
            .enumerate()
            .find(|(_, p)| p.degree() != base.order())
        {
            return Err(ActionError::DegreeMismatch {
                h,
                degree: p.degree(),
                expected: base.order(),
            });
        }
        Ok(ActionHom {
            base,
            acting,
            images,
        })
    }

    pub fn trivial(base: Loop, acting: Loop) -> Result<Self, ActionError> {
        let id = Permutation::identity(base.order());
        let images = vec![id; acting.order()];
        Self::new(base, acting, images)
    }

    /// The action of `Z_n` on `base` sending `k` to `generator^k`.
    pub fn cyclic(base: Loop, n: usize, generator: &Permutation) -> Result<Self, ActionError> {
        if generator.degree() != base.order() {
            return Err(ActionError::DegreeMismatch {
                h: 1,
                degree: generator.degree(),
                expected: base.order(),
            });
        }
        if generator.apply(0) != 0 {
            return Err(ActionError::GeneratorMovesIdentity);
        }
        let order = generator.order();
        if n == 0 || !n.is_multiple_of(order) {
            return Err(ActionError::GeneratorOrder { order, n });
        }
        let images = (0..n).map(|k| generator.power(k as i64)).collect();
        Self::new(base, Loop::cyclic(n)?, images)
    }

    /// The normal factor `N`.
    pub fn base(&self) -> &Loop {
        &self.base
    }

    /// The acting group `H`.
    pub fn acting(&self) -> &Loop {
        &self.acting
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn phi(&self, h: usize) -> &Permutation {
        &self.images[h]
    }

    #[inline]
    pub fn act(&self, h: usize, n: usize) -> usize {
        self.images[h].apply(n)
    }

    pub fn product_order(&self) -> usize {
        self.base.order() * self.acting.order()
    }

    #[inline]
    pub fn encode(&self, n: usize, h: usize) -> usize {
        h * self.base.order() + n
    }

    #[inline]
    pub fn decode(&self, idx: usize) -> (usize, usize) {
        (idx % self.base.order(), idx / self.base.order())
    }

    pub fn validate(&self) -> Result<(), Violation> {
        if !self.images[0].is_identity() {
            return Err(Violation::IdentityNotTrivial);
        }
        if let Some(h) = self.images.iter().position(|p| p.apply(0) != 0) {
            return Err(Violation::MovesIdentity { h });
        }
        let m = self.acting.order();
        for h1 in 0..m {
            for h2 in 0..m {
                let lhs = &self.images[self.acting.mul(h1, h2)];
                let ok = (0..self.base.order())
                    .all(|x| lhs.apply(x) == self.images[h1].apply(self.images[h2].apply(x)));
                if !ok {
                    return Err(Violation::NotHomomorphism { h1, h2 });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub(crate) fn require_valid(&self) -> Result<(), ActionError> {
        self.validate().map_err(ActionError::Invalid)
    }

    /// Is `φ_h` multiplicative on `N`?
    pub fn is_by_automorphisms(&self, h: usize) -> bool {
        let n = self.base.order();
        let p = &self.images[h];
        (0..n).all(|a| {
            (0..n).all(|b| p.apply(self.base.mul(a, b)) == self.base.mul(p.apply(a), p.apply(b)))
        })
    }

    /// `{0} × H` inside the product, as a subset of product indices.
    pub fn acting_copy(&self) -> Subset {
        let k = self.product_order();
        Subset::from_members(k, (0..self.acting.order()).map(|h| self.encode(0, h)))
            .expect("indices are in range")
    }

    /// `N × {0}` inside the product.
    pub fn base_copy(&self) -> Subset {
        let k = self.product_order();
        Subset::from_members(k, 0..self.base.order()).expect("indices are in range")
    }

    pub fn to_file(&self) -> ActionFile {
        ActionFile::Explicit {
            n_table: self.base.table().clone(),
            h_table: self.acting.table().clone(),
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(h, p)| (h.to_string(), p.images().to_vec()))
                .collect(),
        }
    }
}

/// On-disk description of an action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionFile {
    Explicit {
        n_table: CayleyTable,
        h_table: CayleyTable,
        /// Keyed by the decimal index of `h`.
        images: BTreeMap<String, Vec<usize>>,
    },
    Cyclic {
        #[serde(rename = "N")]
        n: String,
        #[serde(rename = "H")]
        h: String,
        generator: String,
    },
}

/// Parses `Z9`, `Z_9` or `z9` into 9.
pub fn parse_cyclic_name(name: &str) -> Result<usize, ActionError> {
    let t = name.trim();
    let digits = t
        .strip_prefix(['Z', 'z'])
        .map(|r| r.strip_prefix('_').unwrap_or(r))
        .ok_or_else(|| ActionError::UnknownGroup(name.to_string()))?;
    digits
        .parse::<usize>()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| ActionError::UnknownGroup(name.to_string()))
}

impl ActionFile {
    pub fn into_action(self) -> Result<ActionHom, ActionError> {
        match self {
            ActionFile::Explicit {
                n_table,
                h_table,
                images,
            } => {
                let base = Loop::new(n_table)?;
                let acting = Loop::new(h_table)?;
                let mut slots: Vec<Option<Permutation>> = vec![None; acting.order()];
                for (key, img) in images {
                    let h = key
                        .trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&h| h < acting.order())
                        .ok_or(ActionError::BadKey(key))?;
                    slots[h] = Some(Permutation::from_images(img)?);
                }
                let got = slots.iter().filter(|s| s.is_some()).count();
                let perms = slots.into_iter().collect::<Option<Vec<_>>>().ok_or(
                    ActionError::ImageCount {
                        expected: acting.order(),
                        got,
                    },
                )?;
                ActionHom::new(base, acting, perms)
            }
            ActionFile::Cyclic { n, h, generator } => {
                let m = parse_cyclic_name(&n)?;
                let k = parse_cyclic_name(&h)?;
                let g = Permutation::parse_cycles(&generator, m)?;
                ActionHom::cyclic(Loop::cyclic(m)?, k, &g)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("action files always serialize")
    }
}

/// The product loop `N ⋊_φ H`.
pub fn product(a: &ActionHom) -> Result<Loop, ActionError> {
    a.require_valid()?;
    let (nb, nh) = (a.base.order(), a.acting.order());
    let t = CayleyTable::from_fn(nb * nh, |x, y| {
        let (n1, h1) = (x % nb, x / nb);
        let (n2, h2) = (y % nb, y / nb);
        a.acting.mul(h1, h2) * nb + a.base.mul(n1, a.act(h1, n2))
    })?;
    Ok(Loop::new(t)?)
}

/// With `N` and `H` groups, the product is a group exactly when every `φ_h`
/// is an automorphism of `N`.
pub fn group_criterion(a: &ActionHom) -> Result<bool, ActionError> {
    if !a.base.is_group() {
        return Err(ActionError::BaseNotGroup);
    }
    a.require_valid()?;
    Ok((0..a.acting.order()).all(|h| a.is_by_automorphisms(h)))
}

/// An element `(n, h)` of `N ⋊ H` as a pair of factor indices.
pub type Pair = (usize, usize);

/// Left and right inverses of `(n, h)` from the closed forms
/// `((φ_{h⁻¹}(n))⁻¹, h⁻¹)` (left inverse taken in `N`) and
/// `(φ_{h⁻¹}(n⁻¹), h⁻¹)` (right inverse taken in `N`).
pub fn pair_inverses(a: &ActionHom, n: usize, h: usize) -> Result<(Pair, Pair), ActionError> {
    a.require_valid()?;
    if n >= a.base.order() || h >= a.acting.order() {
        return Err(ActionError::BadIndex(a.encode(n, h)));
    }
    let hi = a.acting.left_inverse(h);
    let left = (a.base.left_inverse(a.act(hi, n)), hi);
    let right = (a.act(hi, a.base.right_inverse(n)), hi);
    Ok((left, right))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("first subset is not a subloop")]
    NotSubloop,
    #[error("second subset is not a subgroup")]
    NotSubgroup,
    #[error("subsets intersect in more than the identity")]
    NontrivialIntersection,
    #[error("|N|·|H| = {product} but |L| = {order}")]
    OrderMismatch { product: usize, order: usize },
    #[error("elements {0}, {1}, {2} of N ∪ H do not associate")]
    NotAssociating(usize, usize, usize),
    #[error("h(n h⁻¹) = {0} falls outside N")]
    ConjugateOutsideN(usize),
    #[error("element {0} has more than one factorization n·h")]
    NonUniqueFactorization(usize),
    #[error("recovered map is not a valid action: {0}")]
    InvalidAction(String),
    #[error("(n,h) ↦ n·h is not an isomorphism from the rebuilt product")]
    NotIsomorphism,
}

/// An action recovered from an internal factorization, plus the map from
/// the rebuilt product onto the original loop.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub action: ActionHom,
    /// Image under `(n,h) ↦ n·h` of each product index.
    pub bijection: Permutation,
}

/// Recovers `φ_h(n) = h·(n·h⁻¹)` from a loop `L = N H` and checks that
/// `(n,h) ↦ n·h` is an isomorphism `N ⋊_φ H → L`.
///
/// Every triple from `N ∪ H` involving `H` must associate, except
/// `(h, n, n')` with `n, n' ∈ N`.
///
/// Indices of the recovered `N` and `H` follow the increasing order of the
/// members of `nsub` and `hsub`.
pub fn internal_decomposition(
    l: &Loop,
    nsub: &Subset,
    hsub: &Subset,
) -> Result<Decomposition, DecompositionError> {
    if !l.is_subloop(nsub) {
        return Err(DecompositionError::NotSubloop);
    }
    if !l.is_subgroup(hsub) {
        return Err(DecompositionError::NotSubgroup);
    }
    if nsub.intersection(hsub).len() != 1 {
        return Err(DecompositionError::NontrivialIntersection);
    }
    if nsub.len() * hsub.len() != l.order() {
        return Err(DecompositionError::OrderMismatch {
            product: nsub.len() * hsub.len(),
            order: l.order(),
        });
    }
    // Triples inside N need not associate (N is a loop), and neither do
    // `(h, n, n')`: that one associates only when `φ_h` is multiplicative.
    let union: Vec<usize> = Subset::from_mask(l.order(), nsub.mask() | hsub.mask()).members();
    let in_h = |x: usize| hsub.contains(x) && x != 0;
    for &x in &union {
        for &y in &union {
            for &z in &union {
                let required =
                    (in_h(x) || in_h(y) || in_h(z)) && !(in_h(x) && !in_h(y) && !in_h(z));
                if required && !l.associates(x, y, z) {
                    return Err(DecompositionError::NotAssociating(x, y, z));
                }
            }
        }
    }

    let n_members = nsub.members();
    let h_members = hsub.members();
    let mut n_pos = vec![usize::MAX; l.order()];
    for (i, &m) in n_members.iter().enumerate() {
        n_pos[m] = i;
    }
    let base = l.restrict(nsub)?;
    let acting = l.restrict(hsub)?;

    let mut images = Vec::with_capacity(h_members.len());
    for &h in &h_members {
        let h_inv = l.left_inverse(h);
        let mut img = Vec::with_capacity(n_members.len());
        for &n in &n_members {
            let c = l.mul(h, l.mul(n, h_inv));
            match n_pos[c] {
                usize::MAX => return Err(DecompositionError::ConjugateOutsideN(c)),
                p => img.push(p),
            }
        }
        images.push(Permutation::from_images(img).map_err(|_| {
            DecompositionError::InvalidAction("conjugation is not a bijection of N".into())
        })?);
    }
    let action = ActionHom::new(base, acting, images)
        .map_err(|e| DecompositionError::InvalidAction(e.to_string()))?;
    action
        .validate()
        .map_err(|v| DecompositionError::InvalidAction(v.to_string()))?;

    let nb = n_members.len();
    let mut seen = vec![false; l.order()];
    let mut map = vec![0; l.order()];
    for (j, &h) in h_members.iter().enumerate() {
        for (i, &n) in n_members.iter().enumerate() {
            let x = l.mul(n, h);
            if std::mem::replace(&mut seen[x], true) {
                return Err(DecompositionError::NonUniqueFactorization(x));
            }
            map[j * nb + i] = x;
        }
    }
    let bijection = Permutation::from_images(map).expect("checked injective");
    let rebuilt = product(&action).map_err(|e| DecompositionError::InvalidAction(e.to_string()))?;
    let k = l.order();
    for x in 0..k {
        for y in 0..k {
            if bijection.apply(rebuilt.mul(x, y)) != l.mul(bijection.apply(x), bijection.apply(y)) {
                return Err(DecompositionError::NotIsomorphism);
            }
        }
    }
    Ok(Decomposition { action, bijection })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Loop {
        Loop::cyclic(n).unwrap()
    }

    fn cyc(m: usize, h: usize, g: &str) -> ActionHom {
        ActionHom::cyclic(z(m), h, &Permutation::parse_cycles(g, m).unwrap()).unwrap()
    }

    #[test]
    fn trivial_action_is_valid_and_direct() {
        let a = ActionHom::trivial(z(5), z(4)).unwrap();
        assert!(a.is_valid());
        let l = product(&a).unwrap();
        assert_eq!(l.order(), 20);
        assert!(l.is_group() && l.is_commutative());
        assert!(group_criterion(&a).unwrap());
    }

    #[test]
    fn order_three_image_is_not_a_z4_action() {
        let g = Permutation::parse_cycles("(123)", 5).unwrap();
        let images = (0..4).map(|k| g.power(k)).collect();
        let a = ActionHom::new(z(5), z(4), images).unwrap();
        assert_eq!(
            a.validate(),
            Err(Violation::NotHomomorphism { h1: 1, h2: 3 })
        );
        assert!(matches!(product(&a), Err(ActionError::Invalid(_))));
        assert_eq!(
            ActionHom::cyclic(z(5), 4, &g).unwrap_err(),
            ActionError::GeneratorOrder { order: 3, n: 4 }
        );
    }

    #[test]
    fn generator_must_fix_identity() {
        let g = Permutation::parse_cycles("(01)", 5).unwrap();
        assert_eq!(
            ActionHom::cyclic(z(5), 2, &g).unwrap_err(),
            ActionError::GeneratorMovesIdentity
        );
        let a = ActionHom::new(z(5), z(2), vec![Permutation::identity(5), g]).unwrap();
        assert_eq!(a.validate(), Err(Violation::MovesIdentity { h: 1 }));
    }

    #[test]
    fn acting_factor_must_be_group() {
        let q = Loop::new(
            CayleyTable::from_rows(&[
                vec![0, 1, 2, 3, 4],
                vec![1, 0, 3, 4, 2],
                vec![2, 4, 0, 1, 3],
                vec![3, 2, 4, 0, 1],
                vec![4, 3, 1, 2, 0],
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(!q.is_group());
        assert_eq!(
            ActionHom::trivial(z(3), q).unwrap_err(),
            ActionError::ActingNotGroup
        );
    }

    #[test]
    fn product_groups_and_loops() {
        assert!(product(&cyc(5, 4, "(14)(23)")).unwrap().is_group());
        assert!(product(&cyc(5, 4, "(1243)")).unwrap().is_group());
        assert!(!product(&cyc(5, 4, "(1234)")).unwrap().is_group());
        let a = cyc(5, 4, "(12)");
        assert!(!group_criterion(&a).unwrap());
        assert!(!product(&a).unwrap().is_associative());
        assert!(group_criterion(&cyc(5, 4, "(1243)")).unwrap());
    }

    #[test]
    fn group_criterion_needs_group_base() {
        let q = product(&cyc(5, 4, "(1234)")).unwrap();
        let a = ActionHom::trivial(q, z(2)).unwrap();
        assert_eq!(group_criterion(&a), Err(ActionError::BaseNotGroup));
    }

    #[test]
    fn inverse_formulas_at_identity() {
        let a = cyc(5, 4, "(1234)");
        assert_eq!(pair_inverses(&a, 0, 0).unwrap(), ((0, 0), (0, 0)));
        for h in 0..4 {
            let hi = (4 - h) % 4;
            assert_eq!(pair_inverses(&a, 0, h).unwrap(), ((0, hi), (0, hi)));
        }
    }

    #[test]
    fn decomposes_z20() {
        let l = z(20);
        let n = l.subloop_generated([4]);
        let h = l.subloop_generated([5]);
        let d = internal_decomposition(&l, &n, &h).unwrap();
        assert!(d.action.images().iter().all(|p| p.is_identity()));
        assert_eq!(d.action.base(), &z(5));
        assert_eq!(d.action.acting(), &z(4));
    }

    #[test]
    fn decomposes_non_associative_product() {
        let a = cyc(5, 4, "(12)");
        let l = product(&a).unwrap();
        let d = internal_decomposition(&l, &a.base_copy(), &a.acting_copy()).unwrap();
        assert_eq!(d.action.phi(1), a.phi(1));
        assert!(d.bijection.is_identity());
    }

    #[test]
    fn decomposition_hypotheses() {
        let l = z(20);
        let n = l.subloop_generated([4]);
        assert_eq!(
            internal_decomposition(&l, &n, &n).unwrap_err(),
            DecompositionError::NontrivialIntersection
        );
        let h2 = l.subloop_generated([10]);
        assert!(matches!(
            internal_decomposition(&l, &n, &h2),
            Err(DecompositionError::OrderMismatch { .. })
        ));
        let bad = Subset::from_members(20, [0, 1]).unwrap();
        assert_eq!(
            internal_decomposition(&l, &bad, &h2).unwrap_err(),
            DecompositionError::NotSubloop
        );
    }

    #[test]
    fn action_file_forms() {
        let f: ActionFile =
            serde_json::from_str(r#"{"N":"Z9","H":"Z3","generator":"(1,2,3)"}"#).unwrap();
        let a = f.into_action().unwrap();
        assert_eq!(a.product_order(), 27);
        let explicit = a.to_file();
        let text = explicit.to_json();
        let back: ActionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back.into_action().unwrap(), a);
        assert_eq!(parse_cyclic_name("Z_12").unwrap(), 12);
        assert!(parse_cyclic_name("S3").is_err());
    }
}
